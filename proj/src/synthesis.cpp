#include "rfkit/synthesis.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "rfkit/errors.hpp"

namespace rfkit {

void validate_filter_spec(const FilterSpec& spec) {
    detail::require_positive(spec.f0_hz, "f0_hz");
    detail::require_positive(spec.fbw, "fbw");
    if (spec.fbw >= 1.0) {
        throw domain_error("fbw must be < 1, got " + std::to_string(spec.fbw));
    }
    detail::require_positive(spec.z0_ohm, "z0_ohm");
    detail::require_positive(spec.order, "order");
    detail::require_positive(spec.ripple_db, "ripple_db");
    if (spec.q_unloaded) detail::require_positive(*spec.q_unloaded, "q_unloaded");
}

double coupling_coefficient(double fbw, double g1, double g2) {
    detail::require_positive(fbw, "fbw");
    detail::require_positive(g1, "g1");
    detail::require_positive(g2, "g2");
    return fbw / std::sqrt(g1 * g2);
}

double external_q(double fbw, double g0, double g1) {
    detail::require_positive(fbw, "fbw");
    detail::require_positive(g0, "g0");
    detail::require_positive(g1, "g1");
    return g0 * g1 / fbw;
}

SynthesisResult bandpass_elements(const FilterSpec& spec,
                                  const PrototypeCoefficients& proto) {
    validate_filter_spec(spec);
    if (spec.order != proto.order) {
        throw config_error("order mismatch: spec.order = " +
                           std::to_string(spec.order) + ", prototype order = " +
                           std::to_string(proto.order));
    }

    const double w0 = 2.0 * std::numbers::pi * spec.f0_hz;
    const auto& g = proto.g;
    const int n = proto.order;

    BandpassElements el;
    el.c_res = g[1] / (spec.fbw * w0 * spec.z0_ohm);
    el.l_res = 1.0 / (w0 * w0 * el.c_res);
    const double b = w0 * el.c_res;

    el.j_ladder.resize(static_cast<size_t>(n) + 1);
    el.j_ladder.front() = std::sqrt(b * spec.fbw / (spec.z0_ohm * g[0] * g[1]));
    for (int k = 1; k < n; ++k) {
        el.j_ladder[k] = b * coupling_coefficient(spec.fbw, g[k], g[k + 1]);
    }
    // output side from gn*g(n+1), not mirrored, so asymmetric prototypes stay correct
    el.j_ladder.back() = std::sqrt(b * spec.fbw / (spec.z0_ohm * g[n] * g[n + 1]));

    el.l_io = 1.0 / (w0 * el.j_ladder.front());
    // n = 1 has no interior coupling; report the output inverter's inductance
    const double j_inter = (n >= 2) ? el.j_ladder[1] : el.j_ladder.back();
    el.l_inter = 1.0 / (w0 * j_inter);

    CouplingParams cp;
    cp.b_slope = b;
    cp.m = (n >= 2) ? coupling_coefficient(spec.fbw, g[1], g[2])
                    : spec.fbw / g[1];
    cp.qe = external_q(spec.fbw, g[0], g[1]);
    cp.j01 = el.j_ladder.front();
    cp.j12 = cp.b_slope * cp.m;
    return {el, cp};
}

namespace {

// Shared tail of both builders. In IdealInverter mode couplings are inverter
// elements; in InductivePi mode interior couplings become series inductors
// L = 1/(w0 J) whose negative Pi arms are folded into the adjacent resonator
// inductors. The merge is exact (inductor admittances add at every
// frequency), so each node's loaded resonance stays at f0. I/O couplings stay
// ideal inverters: a port-side arm has no resonator to absorb into.
class NetlistBuilder {
public:
    NetlistBuilder(const FilterSpec& spec, const BandpassElements& elems,
                   int node_count)
        : spec_(spec), elems_(elems),
          w0_(2.0 * std::numbers::pi * spec.f0_hz),
          arm_inv_h_(static_cast<size_t>(node_count) + 1, 0.0) {
        netlist_.node_count = node_count;
    }

    void add_resonator(int node) { resonators_.push_back(node); }

    void add_io_inverter(int node_a, int node_b, double j) {
        netlist_.elements.push_back({ElementKind::Inverter, node_a, node_b, j});
    }

    // interior coupling; both endpoints must be resonator nodes
    void add_coupling(int node_a, int node_b, double j) {
        if (spec_.coupling_model == CouplingModel::IdealInverter) {
            netlist_.elements.push_back({ElementKind::Inverter, node_a, node_b, j});
        } else {
            const double l_series = 1.0 / (w0_ * j);
            netlist_.elements.push_back({ElementKind::Inductor, node_a, node_b,
                                         l_series});
            arm_inv_h_[node_a] += 1.0 / l_series;
            arm_inv_h_[node_b] += 1.0 / l_series;
        }
    }

    Netlist finish(int port_a, int port_b) {
        for (int node : resonators_) {
            double l_node = elems_.l_res;
            if (arm_inv_h_[node] != 0.0) {
                const double inv = 1.0 / elems_.l_res - arm_inv_h_[node];
                if (inv <= 0.0) {
                    throw config_error(
                        "inductive-Pi absorption drives the resonator inductance "
                        "at node " + std::to_string(node) +
                        " non-positive; coupling too strong for this model");
                }
                l_node = 1.0 / inv;
            }
            netlist_.elements.push_back({ElementKind::Capacitor, node, 0, elems_.c_res});
            netlist_.elements.push_back({ElementKind::Inductor, node, 0, l_node});
            if (spec_.q_unloaded) {
                const double b = w0_ * elems_.c_res;
                netlist_.elements.push_back({ElementKind::Resistor, node, 0,
                                             *spec_.q_unloaded / b});
            }
        }
        netlist_.ports = {Port{port_a, spec_.z0_ohm}, Port{port_b, spec_.z0_ohm}};
        validate_netlist(netlist_);
        return std::move(netlist_);
    }

private:
    const FilterSpec& spec_;
    const BandpassElements& elems_;
    double w0_;
    std::vector<double> arm_inv_h_;  // accumulated 1/L of Pi arms per node
    Netlist netlist_;
    std::vector<int> resonators_;
};

} // namespace

Netlist build_single_band_netlist(const FilterSpec& spec,
                                  const BandpassElements& elems) {
    validate_filter_spec(spec);
    if (spec.topology != Topology::SingleBand) {
        throw config_error("build_single_band_netlist requires SingleBand topology");
    }
    const int n = spec.order;
    if (elems.j_ladder.size() != static_cast<size_t>(n) + 1) {
        throw config_error("element set does not match spec.order");
    }

    // nodes: 1 = port1, 2..n+1 = resonators, n+2 = port2
    NetlistBuilder nb(spec, elems, n + 2);
    nb.add_io_inverter(1, 2, elems.j_ladder.front());
    for (int k = 1; k < n; ++k) {
        nb.add_coupling(k + 1, k + 2, elems.j_ladder[k]);
    }
    nb.add_io_inverter(n + 1, n + 2, elems.j_ladder.back());
    for (int k = 0; k < n; ++k) {
        nb.add_resonator(k + 2);
    }
    return nb.finish(1, n + 2);
}

Netlist build_dual_band_netlist(const FilterSpec& spec,
                                const BandpassElements& elems) {
    validate_filter_spec(spec);
    if (spec.topology != Topology::DualBand) {
        throw config_error("build_dual_band_netlist requires DualBand topology");
    }
    const int n = spec.order;
    if (elems.j_ladder.size() != static_cast<size_t>(n) + 1) {
        throw config_error("element set does not match spec.order");
    }

    // nodes: 1 = port1, 2..n+1 = main resonators, n+2 = port2,
    //        n+3..2n+2 = side resonators (one per main resonator)
    NetlistBuilder nb(spec, elems, 2 * n + 2);
    // side couplings mirror the first inter-resonator coupling
    const double j_side = (n >= 2) ? elems.j_ladder[1] : elems.j_ladder.back();

    nb.add_io_inverter(1, 2, elems.j_ladder.front());
    for (int k = 1; k < n; ++k) {
        nb.add_coupling(k + 1, k + 2, elems.j_ladder[k]);
    }
    nb.add_io_inverter(n + 1, n + 2, elems.j_ladder.back());
    for (int k = 0; k < n; ++k) {
        const int main_node = k + 2;
        const int side_node = n + 3 + k;
        nb.add_coupling(main_node, side_node, j_side);
        nb.add_resonator(main_node);
        nb.add_resonator(side_node);
    }
    return nb.finish(1, n + 2);
}

} // namespace rfkit
