#include "rfkit/netsim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "rfkit/errors.hpp"

namespace rfkit {

void validate_grid(const SweepGrid& grid) {
    detail::require_positive(grid.f_start_hz, "f_start_hz");
    if (!(grid.f_stop_hz > grid.f_start_hz)) {
        throw domain_error("f_stop_hz must exceed f_start_hz");
    }
    if (grid.n_points < 2) {
        throw domain_error("n_points must be >= 2, got " +
                           std::to_string(grid.n_points));
    }
}

std::vector<double> grid_frequencies(const SweepGrid& grid) {
    validate_grid(grid);
    std::vector<double> f(static_cast<size_t>(grid.n_points));
    const int last = grid.n_points - 1;
    if (grid.spacing == GridSpacing::Linear) {
        const double step = (grid.f_stop_hz - grid.f_start_hz) / last;
        for (int i = 0; i <= last; ++i) f[i] = grid.f_start_hz + i * step;
    } else {
        const double lstart = std::log(grid.f_start_hz);
        const double lstep = (std::log(grid.f_stop_hz) - lstart) / last;
        for (int i = 0; i <= last; ++i) f[i] = std::exp(lstart + i * lstep);
    }
    // pin the endpoints so grids are exactly reproducible
    f.front() = grid.f_start_hz;
    f.back() = grid.f_stop_hz;
    return f;
}

namespace {

Complex element_admittance(const Element& e, double omega) {
    switch (e.kind) {
        case ElementKind::Resistor: return {1.0 / e.value, 0.0};
        case ElementKind::Capacitor: return {0.0, omega * e.value};
        case ElementKind::Inductor: return {0.0, -1.0 / (omega * e.value)};
        case ElementKind::Inverter: break;  // handled by the caller
    }
    return {0.0, 0.0};
}

// Stamp into a matrix whose row/col i describes node index_of[i]; nodes
// mapped to -1 are excluded (pruned or ground).
void stamp_into(Eigen::MatrixXcd& y, const Netlist& netlist, double f_hz,
                const std::vector<int>& index_of) {
    const double omega = 2.0 * std::numbers::pi * f_hz;
    for (const Element& e : netlist.elements) {
        const int ia = e.node_a > 0 ? index_of[e.node_a] : -1;
        const int ib = e.node_b > 0 ? index_of[e.node_b] : -1;
        if (e.kind == ElementKind::Inverter) {
            // Y = [[0, jJ], [jJ, 0]]: anti-diagonal only
            if (ia >= 0 && ib >= 0) {
                const Complex jj(0.0, e.value);
                y(ia, ib) += jj;
                y(ib, ia) += jj;
            }
            continue;
        }
        const Complex ya = element_admittance(e, omega);
        if (ia >= 0) y(ia, ia) += ya;
        if (ib >= 0) y(ib, ib) += ya;
        if (ia >= 0 && ib >= 0) {
            y(ia, ib) -= ya;
            y(ib, ia) -= ya;
        }
    }
}

} // namespace

Eigen::MatrixXcd stamp_admittance(const Netlist& netlist, double f_hz) {
    detail::require_positive(f_hz, "f_hz");
    std::vector<int> index_of(static_cast<size_t>(netlist.node_count) + 1);
    for (int node = 0; node <= netlist.node_count; ++node) index_of[node] = node - 1;
    Eigen::MatrixXcd y = Eigen::MatrixXcd::Zero(netlist.node_count, netlist.node_count);
    stamp_into(y, netlist, f_hz, index_of);
    return y;
}

SParamSweep sweep_sparams(const Netlist& netlist, const SweepGrid& grid) {
    validate_netlist(netlist);
    validate_grid(grid);

    // solve only the port-connected component; islands cannot influence port
    // waves but can make the system singular (e.g. a decoupled resonator at
    // exact resonance)
    const std::vector<int> live = port_connected_nodes(netlist);
    std::vector<int> index_of(static_cast<size_t>(netlist.node_count) + 1, -1);
    for (size_t i = 0; i < live.size(); ++i) index_of[live[i]] = static_cast<int>(i);
    const auto dim = static_cast<Eigen::Index>(live.size());

    const Port& p1 = netlist.ports[0];
    const Port& p2 = netlist.ports[1];
    const int i1 = index_of[p1.node];
    const int i2 = index_of[p2.node];

    SParamSweep sweep;
    sweep.grid = grid;
    sweep.z_ref = p1.z_ref;
    sweep.freq_hz = grid_frequencies(grid);
    sweep.s.resize(sweep.freq_hz.size());

    Eigen::MatrixXcd y(dim, dim);
    for (size_t fi = 0; fi < sweep.freq_hz.size(); ++fi) {
        y.setZero();
        stamp_into(y, netlist, sweep.freq_hz[fi], index_of);
        y(i1, i1) += 1.0 / p1.z_ref;
        y(i2, i2) += 1.0 / p2.z_ref;

        Eigen::PartialPivLU<Eigen::MatrixXcd> lu(y);

        // drive port k with a unit Thevenin source behind z_ref:
        // Norton current 1/z_ref at the port node; then
        // S_kk = 2 V_k - 1 and S_pk = 2 V_p sqrt(z_k / z_p)
        Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(dim);
        rhs(i1) = 1.0 / p1.z_ref;
        const Eigen::VectorXcd v1 = lu.solve(rhs);
        rhs(i1) = 0.0;
        rhs(i2) = 1.0 / p2.z_ref;
        const Eigen::VectorXcd v2 = lu.solve(rhs);

        STwoPort s;
        s.s11 = 2.0 * v1(i1) - 1.0;
        s.s21 = 2.0 * v1(i2) * std::sqrt(p1.z_ref / p2.z_ref);
        s.s22 = 2.0 * v2(i2) - 1.0;
        s.s12 = 2.0 * v2(i1) * std::sqrt(p2.z_ref / p1.z_ref);

        const bool finite = std::isfinite(s.s11.real()) && std::isfinite(s.s11.imag()) &&
                            std::isfinite(s.s21.real()) && std::isfinite(s.s21.imag()) &&
                            std::isfinite(s.s12.real()) && std::isfinite(s.s12.imag()) &&
                            std::isfinite(s.s22.real()) && std::isfinite(s.s22.imag());
        if (!finite) {
            const double nan = std::numeric_limits<double>::quiet_NaN();
            s = {Complex(nan, nan), Complex(nan, nan), Complex(nan, nan), Complex(nan, nan)};
            sweep.singular_points.push_back(static_cast<int>(fi));
        }
        sweep.s[fi] = s;
    }
    return sweep;
}

namespace {

constexpr double kDbFloor = 1e-300;  // keeps log10 finite for |s| = 0

double db_mag(const Complex& s) {
    return -20.0 * std::log10(std::max(std::abs(s), kDbFloor));
}

} // namespace

std::vector<BandMetrics> extract_band_metrics(const SParamSweep& sweep,
                                              double rl_threshold_db) {
    detail::require_positive(rl_threshold_db, "rl_threshold_db");
    if (sweep.freq_hz.empty()) {
        throw domain_error("extract_band_metrics: empty sweep");
    }

    const size_t n = sweep.freq_hz.size();
    std::vector<double> rl(n), il(n);
    for (size_t i = 0; i < n; ++i) {
        rl[i] = db_mag(sweep.s[i].s11);
        il[i] = db_mag(sweep.s[i].s21);
    }

    std::vector<BandMetrics> bands;
    size_t i = 0;
    while (i < n) {
        if (!(rl[i] >= rl_threshold_db)) {  // NaN-safe: marked samples excluded
            ++i;
            continue;
        }
        size_t j = i;
        while (j + 1 < n && rl[j + 1] >= rl_threshold_db) ++j;

        auto cross = [&](size_t out, size_t in) {
            // linear interpolation of RL(f) at the threshold crossing
            const double r0 = rl[out], r1 = rl[in];
            if (!(std::abs(r1 - r0) > 0.0)) return sweep.freq_hz[in];
            const double t = (rl_threshold_db - r0) / (r1 - r0);
            return sweep.freq_hz[out] + t * (sweep.freq_hz[in] - sweep.freq_hz[out]);
        };
        const double f_lo = (i == 0) ? sweep.freq_hz.front() : cross(i - 1, i);
        const double f_hi = (j == n - 1) ? sweep.freq_hz.back() : cross(j + 1, j);

        BandMetrics bm;
        bm.f_lo_hz = f_lo;
        bm.f_hi_hz = f_hi;
        bm.f_center_hz = 0.5 * (f_lo + f_hi);
        bm.fbw = (f_hi - f_lo) / bm.f_center_hz;

        double rl_min = rl[i];
        double il_min = il[i];
        for (size_t k = i; k <= j; ++k) {
            rl_min = std::min(rl_min, rl[k]);
            il_min = std::min(il_min, il[k]);
        }
        bm.rl_min_db = rl_min;
        bm.il_min_db = std::max(il_min, 0.0);

        // |s21| interpolated at f_center
        const auto it = std::upper_bound(sweep.freq_hz.begin(), sweep.freq_hz.end(),
                                         bm.f_center_hz);
        size_t hi_idx = static_cast<size_t>(it - sweep.freq_hz.begin());
        hi_idx = std::clamp<size_t>(hi_idx, 1, n - 1);
        const size_t lo_idx = hi_idx - 1;
        const double t = (bm.f_center_hz - sweep.freq_hz[lo_idx]) /
                         (sweep.freq_hz[hi_idx] - sweep.freq_hz[lo_idx]);
        const double mag = std::abs(sweep.s[lo_idx].s21) +
                           t * (std::abs(sweep.s[hi_idx].s21) - std::abs(sweep.s[lo_idx].s21));
        bm.il_db = std::max(-20.0 * std::log10(std::max(mag, kDbFloor)), 0.0);

        bands.push_back(bm);
        i = j + 1;
    }
    return bands;
}

} // namespace rfkit
