#include "rfkit/microstrip.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "rfkit/errors.hpp"

namespace rfkit {

void validate_substrate(const SubstrateSpec& sub) {
    if (!(sub.eps_r >= 1.0)) {
        throw domain_error("eps_r must be >= 1, got " + std::to_string(sub.eps_r));
    }
    detail::require_positive(sub.h_m, "h_m");
    if (sub.tan_delta < 0.0) {
        throw domain_error("tan_delta must be >= 0");
    }
    detail::require_positive(sub.t_metal_m, "t_metal_m");
    detail::require_positive(sub.sigma_s_per_m, "sigma_s_per_m");
}

MicrostripAnalysis analyze_microstrip(double w_m, const SubstrateSpec& sub) {
    detail::require_positive(w_m, "w_m");
    validate_substrate(sub);

    const double u = w_m / sub.h_m;
    double filling = std::pow(1.0 + 12.0 / u, -0.5);
    if (u < 1.0) filling += 0.04 * (1.0 - u) * (1.0 - u);
    const double eps_eff = 0.5 * (sub.eps_r + 1.0) + 0.5 * (sub.eps_r - 1.0) * filling;

    double z0;
    if (u <= 1.0) {
        z0 = 60.0 / std::sqrt(eps_eff) * std::log(8.0 / u + 0.25 * u);
    } else {
        z0 = 120.0 * std::numbers::pi /
             (std::sqrt(eps_eff) * (u + 1.393 + 0.667 * std::log(u + 1.444)));
    }
    return {z0, eps_eff};
}

MicrostripLine synthesize_width(double z0_target_ohm, const SubstrateSpec& sub,
                                double f_hz) {
    detail::require_positive(z0_target_ohm, "z0_target_ohm");
    detail::require_positive(f_hz, "f_hz");
    validate_substrate(sub);

    double w_lo = 0.05 * sub.h_m;   // narrow: high impedance
    double w_hi = 20.0 * sub.h_m;   // wide: low impedance
    const double z_at_lo = analyze_microstrip(w_lo, sub).z0_ohm;
    const double z_at_hi = analyze_microstrip(w_hi, sub).z0_ohm;
    if (z0_target_ohm > z_at_lo || z0_target_ohm < z_at_hi) {
        throw no_solution_error(
            "z0_target " + std::to_string(z0_target_ohm) +
            " Ohm outside achievable range [" + std::to_string(z_at_hi) + ", " +
            std::to_string(z_at_lo) + "] Ohm for W/h in [0.05, 20]");
    }

    // Z0 is strictly decreasing in W; bisect until the width bracket is far
    // inside both the 0.01-Ohm and 0.1-um contracts
    while (w_hi - w_lo > 1e-10) {
        const double mid = 0.5 * (w_lo + w_hi);
        if (analyze_microstrip(mid, sub).z0_ohm > z0_target_ohm) {
            w_lo = mid;
        } else {
            w_hi = mid;
        }
    }
    const double w = 0.5 * (w_lo + w_hi);
    const MicrostripAnalysis a = analyze_microstrip(w, sub);

    MicrostripLine line;
    line.w_m = w;
    line.z0_ohm = a.z0_ohm;
    line.eps_eff = a.eps_eff;
    line.f_hz = f_hz;
    line.lambda_g_m = guided_wavelength(f_hz, a.eps_eff);
    return line;
}

double guided_wavelength(double f_hz, double eps_eff) {
    detail::require_positive(f_hz, "f_hz");
    if (!(eps_eff >= 1.0)) {
        throw domain_error("eps_eff must be >= 1, got " + std::to_string(eps_eff));
    }
    return kSpeedOfLight / (f_hz * std::sqrt(eps_eff));
}

UShapeGeometry u_fold_geometry(const MicrostripLine& line, double f0_hz,
                               double base_fraction) {
    detail::require_positive(f0_hz, "f0_hz");
    if (!(base_fraction > 0.0 && base_fraction < 1.0)) {
        throw domain_error("base_fraction must be in (0, 1), got " +
                           std::to_string(base_fraction));
    }
    const double lambda_g = guided_wavelength(f0_hz, line.eps_eff);

    UShapeGeometry geom;
    geom.total_length_m = 0.5 * lambda_g;
    geom.base_len_m = base_fraction * geom.total_length_m;
    geom.arm_len_m = 0.5 * (1.0 - base_fraction) * geom.total_length_m;
    geom.trace_width_m = line.w_m;
    geom.bbox_w_m = geom.base_len_m + line.w_m;
    geom.bbox_h_m = geom.arm_len_m + line.w_m;
    return geom;
}

std::pair<double, double> electrical_size(double bbox_w_m, double bbox_h_m,
                                          double lambda_g_m) {
    detail::require_positive(bbox_w_m, "bbox_w_m");
    detail::require_positive(bbox_h_m, "bbox_h_m");
    detail::require_positive(lambda_g_m, "lambda_g_m");
    return {bbox_w_m / lambda_g_m, bbox_h_m / lambda_g_m};
}

} // namespace rfkit
