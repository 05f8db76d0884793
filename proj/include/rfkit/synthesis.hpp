#pragma once

#include <optional>
#include <vector>

#include "rfkit/netlist.hpp"
#include "rfkit/prototype.hpp"

namespace rfkit {

enum class Topology { SingleBand, DualBand };
enum class CouplingModel { IdealInverter, InductivePi };

/// Designer intent for one bandpass filter.
struct FilterSpec {
    double f0_hz = 0.0;
    double fbw = 0.0;   // fractional bandwidth, e.g. 0.034
    double z0_ohm = 50.0;
    int order = 2;
    double ripple_db = 0.0;
    std::optional<double> return_loss_db;  // set when the ripple was given as a return-loss level
    Topology topology = Topology::SingleBand;
    std::optional<double> q_unloaded;      // absent = lossless
    CouplingModel coupling_model = CouplingModel::IdealInverter;
};

void validate_filter_spec(const FilterSpec& spec);

/// Denormalized coupling quantities for the first resonator pair.
struct CouplingParams {
    double m;        // mutual coupling coefficient
    double qe;       // external quality factor
    double b_slope;  // susceptance slope parameter w0*C, Siemens
    double j01;      // I/O inverter admittance, Siemens
    double j12;      // first inter-resonator inverter admittance, Siemens
};

/// Shunt-resonator bandpass element values. c_res/l_res/l_io/l_inter are the
/// order-2 reporting surface; j_ladder carries the full inverter chain
/// J01..J(n,n+1) so higher orders stay constructible.
struct BandpassElements {
    double c_res;    // F
    double l_res;    // H
    double l_io;     // H, input side 1/(w0*J01)
    double l_inter;  // H, first interior coupling 1/(w0*J12)
    std::vector<double> j_ladder;  // Siemens, size order + 1
};

struct SynthesisResult {
    BandpassElements elements;
    CouplingParams coupling;
};

/// M = FBW / sqrt(g1 g2)
double coupling_coefficient(double fbw, double g1, double g2);

/// Qe = g0 g1 / FBW
double external_q(double fbw, double g0, double g1);

/// Inverter-coupled shunt-resonator synthesis:
///   c = g1/(FBW w0 Z0), l = 1/(w0^2 c), b = w0 c,
///   J01 = sqrt(b FBW/(Z0 g0 g1)), J(k,k+1) = b FBW/sqrt(gk g(k+1)),
///   J(n,n+1) = sqrt(b FBW/(Z0 gn g(n+1))).
SynthesisResult bandpass_elements(const FilterSpec& spec,
                                  const PrototypeCoefficients& proto);

/// Port1 -J01- R1 -J12- R2 - ... -J(n,n+1)- Port2, every resonator a shunt
/// c_res||l_res (plus shunt b/Qu loss conductance when q_unloaded is set).
Netlist build_single_band_netlist(const FilterSpec& spec,
                                  const BandpassElements& elems);

/// Main line as in the single-band builder plus one side resonator per
/// main-line resonator, each coupled through the same J12.
Netlist build_dual_band_netlist(const FilterSpec& spec,
                                const BandpassElements& elems);

} // namespace rfkit
