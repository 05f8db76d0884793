#pragma once

#include <utility>

namespace rfkit {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

struct SubstrateSpec {
    double eps_r;          // relative permittivity, >= 1
    double h_m;            // dielectric thickness
    double tan_delta;      // loss tangent (reporting only)
    double t_metal_m;      // cladding thickness (reporting only)
    double sigma_s_per_m;  // conductor conductivity (reporting only)
};

void validate_substrate(const SubstrateSpec& sub);

struct MicrostripAnalysis {
    double z0_ohm;
    double eps_eff;
};

/// Quasi-static Hammerstad closed forms, zero metal thickness. u = W/h:
///   eps_eff = (er+1)/2 + (er-1)/2 [(1+12/u)^-1/2 + (u<1 ? 0.04(1-u)^2 : 0)]
///   Z0 = 60/sqrt(ee) ln(8/u + u/4)            (u <= 1)
///      = 120 pi / (sqrt(ee)(u + 1.393 + 0.667 ln(u + 1.444)))   (u > 1)
MicrostripAnalysis analyze_microstrip(double w_m, const SubstrateSpec& sub);

struct MicrostripLine {
    double w_m;
    double z0_ohm;
    double eps_eff;
    double lambda_g_m;  // guided wavelength at f_hz
    double f_hz;        // frequency lambda_g_m refers to
};

/// Width for a target impedance by bisection on W/h in [0.05, 20]
/// (Z0 is strictly decreasing in W). lambda_g is evaluated at f_hz.
MicrostripLine synthesize_width(double z0_target_ohm, const SubstrateSpec& sub,
                                double f_hz);

/// lambda_g = c / (f sqrt(eps_eff))
double guided_wavelength(double f_hz, double eps_eff);

/// Half-wave resonator folded into a U: base + two equal arms.
struct UShapeGeometry {
    double total_length_m;  // lambda_g / 2 along the centerline
    double base_len_m;
    double arm_len_m;       // each arm
    double trace_width_m;
    double bbox_w_m;        // base span + one trace width
    double bbox_h_m;        // arm span + one trace width
};

UShapeGeometry u_fold_geometry(const MicrostripLine& line, double f0_hz,
                               double base_fraction);

/// Bounding box expressed in guided wavelengths: (w/lambda_g, h/lambda_g).
std::pair<double, double> electrical_size(double bbox_w_m, double bbox_h_m,
                                          double lambda_g_m);

} // namespace rfkit
