#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rfkit/errors.hpp"
#include "rfkit/prototype.hpp"
#include "rfkit/synthesis.hpp"

using namespace rfkit;

namespace {

// frozen oracle values (hand/numpy evaluation of the closed forms)
constexpr double kC = 4.4456389146e-11;
constexpr double kL = 2.9070332996e-10;
constexpr double kL01 = 5.6841051104e-09;
constexpr double kL12 = 5.1440823280e-09;
constexpr double kB = 0.391058823529;
constexpr double kJ12 = 0.022099588412;
constexpr double kM = 0.056512184569;
constexpr double kQe = 19.552941176471;

FilterSpec reference_spec(Topology topology = Topology::SingleBand) {
    FilterSpec spec;
    spec.f0_hz = 1.4e9;
    spec.fbw = 0.034;
    spec.z0_ohm = 50.0;
    spec.order = 2;
    spec.ripple_db = fit_ripple_to_g1(2, 0.6648);
    spec.topology = topology;
    return spec;
}

int count_kind(const Netlist& n, ElementKind kind) {
    int c = 0;
    for (const Element& e : n.elements) c += (e.kind == kind) ? 1 : 0;
    return c;
}

} // namespace

TEST_CASE("coupling coefficient, Eq.-(1) style") {
    CHECK(coupling_coefficient(0.034, 0.6648, 0.5445) ==
          doctest::Approx(0.0565).epsilon(1e-3));
    CHECK(coupling_coefficient(0.034, 0.6648, 0.5445) ==
          doctest::Approx(0.0565111922).epsilon(1e-9));
    CHECK(coupling_coefficient(0.07, 1.0, 1.0) == doctest::Approx(0.07).epsilon(1e-15));
    CHECK(coupling_coefficient(0.05, 1.0316, 1.1474) ==
          doctest::Approx(0.0459575549).epsilon(1e-9));
    CHECK_THROWS_AS(coupling_coefficient(0.0, 1.0, 1.0), domain_error);
    CHECK_THROWS_AS(coupling_coefficient(0.034, -0.6, 0.5), domain_error);
}

TEST_CASE("external quality factor, Eq.-(2) style") {
    CHECK(external_q(0.034, 1.0, 0.6648) == doctest::Approx(19.5529).epsilon(1e-5));
    CHECK(external_q(0.07, 1.0, 1.0) == doctest::Approx(1.0 / 0.07).epsilon(1e-15));
    CHECK(external_q(0.05, 1.0, 1.0316) == doctest::Approx(20.632).epsilon(1e-12));
    CHECK_THROWS_AS(external_q(0.034, 0.0, 0.6648), domain_error);
}

TEST_CASE("bandpass element values reproduce the published design") {
    const FilterSpec spec = reference_spec();
    const PrototypeCoefficients proto = chebyshev_g_values(2, spec.ripple_db);
    const SynthesisResult r = bandpass_elements(spec, proto);

    // 4-significant-figure published values
    CHECK(r.elements.c_res == doctest::Approx(44.4564e-12).epsilon(2e-4));
    CHECK(r.elements.l_res == doctest::Approx(0.2907e-9).epsilon(2e-4));
    CHECK(r.elements.l_io == doctest::Approx(5.6841e-9).epsilon(2e-4));
    CHECK(r.elements.l_inter == doctest::Approx(5.1442e-9).epsilon(2e-4));

    // frozen oracle regression
    CHECK(r.elements.c_res == doctest::Approx(kC).epsilon(1e-9));
    CHECK(r.elements.l_res == doctest::Approx(kL).epsilon(1e-9));
    CHECK(r.elements.l_io == doctest::Approx(kL01).epsilon(1e-9));
    CHECK(r.elements.l_inter == doctest::Approx(kL12).epsilon(1e-9));

    CHECK(r.coupling.j01 == doctest::Approx(0.02).epsilon(1e-9));
    CHECK(r.coupling.j12 == doctest::Approx(kJ12).epsilon(1e-9));
    CHECK(r.coupling.b_slope == doctest::Approx(kB).epsilon(1e-9));
    CHECK(r.coupling.m == doctest::Approx(kM).epsilon(1e-9));
    CHECK(r.coupling.qe == doctest::Approx(kQe).epsilon(1e-9));

    // cross-check l = 1/(w0 j)
    const double w0 = 2.0 * std::numbers::pi * spec.f0_hz;
    CHECK(r.elements.l_io == doctest::Approx(1.0 / (w0 * r.coupling.j01)).epsilon(1e-14));
    CHECK(r.elements.l_inter == doctest::Approx(1.0 / (w0 * r.coupling.j12)).epsilon(1e-14));
}

TEST_CASE("algebraic identities hold to machine precision") {
    const FilterSpec spec = reference_spec();
    const PrototypeCoefficients proto = chebyshev_g_values(2, spec.ripple_db);
    const SynthesisResult r = bandpass_elements(spec, proto);

    CHECK(std::abs(r.coupling.j12 - r.coupling.b_slope * r.coupling.m) <=
          1e-15 * r.coupling.j12);
    const double qe_from_j = r.coupling.b_slope /
                             (spec.z0_ohm * r.coupling.j01 * r.coupling.j01);
    CHECK(std::abs(r.coupling.qe - qe_from_j) <= 1e-12 * r.coupling.qe);

    // resonance identity
    const double f_res =
        1.0 / (2.0 * std::numbers::pi * std::sqrt(r.elements.l_res * r.elements.c_res));
    CHECK(std::abs(f_res - spec.f0_hz) <= 1e-9 * spec.f0_hz);
}

TEST_CASE("frequency scaling of the closed forms") {
    const PrototypeCoefficients proto = chebyshev_g_values(2, 0.0432);
    FilterSpec a = reference_spec();
    a.ripple_db = 0.0432;
    FilterSpec b = a;
    b.f0_hz = 2.0 * a.f0_hz;
    const SynthesisResult ra = bandpass_elements(a, proto);
    const SynthesisResult rb = bandpass_elements(b, proto);
    CHECK(rb.elements.c_res == doctest::Approx(0.5 * ra.elements.c_res).epsilon(1e-12));
    CHECK(rb.elements.l_res == doctest::Approx(0.5 * ra.elements.l_res).epsilon(1e-12));
}

TEST_CASE("order mismatch is a configuration error") {
    const FilterSpec spec = reference_spec();
    const PrototypeCoefficients proto = chebyshev_g_values(3, 0.1);
    CHECK_THROWS_AS(bandpass_elements(spec, proto), config_error);
}

TEST_CASE("single-band netlist structure") {
    const FilterSpec spec = reference_spec();
    const PrototypeCoefficients proto = chebyshev_g_values(2, spec.ripple_db);
    const SynthesisResult r = bandpass_elements(spec, proto);
    const Netlist n = build_single_band_netlist(spec, r.elements);

    CHECK(n.node_count == 4);  // 2 resonator nodes + 2 port nodes
    CHECK(count_kind(n, ElementKind::Inverter) == 3);
    CHECK(count_kind(n, ElementKind::Capacitor) == 2);
    CHECK(count_kind(n, ElementKind::Inductor) == 2);
    CHECK(count_kind(n, ElementKind::Resistor) == 0);  // lossless
    CHECK(n.ports[0].node == 1);
    CHECK(n.ports[1].node == 4);

    // I/O inverters: output side equals input side (Chebyshev g-symmetry)
    std::vector<double> inverters;
    for (const Element& e : n.elements) {
        if (e.kind == ElementKind::Inverter) inverters.push_back(e.value);
    }
    REQUIRE(inverters.size() == 3);
    CHECK(inverters[0] == doctest::Approx(0.02).epsilon(1e-9));
    CHECK(inverters[1] == doctest::Approx(kJ12).epsilon(1e-9));
    CHECK(inverters[2] == doctest::Approx(inverters[0]).epsilon(1e-3));

    CHECK_NOTHROW(validate_netlist(n));
}

TEST_CASE("lossy netlist carries one shunt conductance per resonator") {
    FilterSpec spec = reference_spec();
    spec.q_unloaded = 500.0;
    const PrototypeCoefficients proto = chebyshev_g_values(2, spec.ripple_db);
    const SynthesisResult r = bandpass_elements(spec, proto);
    const Netlist n = build_single_band_netlist(spec, r.elements);
    CHECK(count_kind(n, ElementKind::Resistor) == 2);
    for (const Element& e : n.elements) {
        if (e.kind == ElementKind::Resistor) {
            CHECK(e.node_b == 0);
            CHECK(e.value == doctest::Approx(500.0 / kB).epsilon(1e-9));
        }
    }
}

TEST_CASE("dual-band netlist structure") {
    const FilterSpec spec = reference_spec(Topology::DualBand);
    const PrototypeCoefficients proto = chebyshev_g_values(2, spec.ripple_db);
    const SynthesisResult r = bandpass_elements(spec, proto);
    const Netlist n = build_dual_band_netlist(spec, r.elements);

    CHECK(n.node_count == 6);  // 4 resonator nodes + 2 port nodes
    CHECK(count_kind(n, ElementKind::Inverter) == 5);
    CHECK(count_kind(n, ElementKind::Capacitor) == 4);
    CHECK(count_kind(n, ElementKind::Inductor) == 4);

    // every inter-resonator coupling is the same J12
    int j12_count = 0;
    for (const Element& e : n.elements) {
        if (e.kind == ElementKind::Inverter &&
            std::abs(e.value - kJ12) < 1e-9 * kJ12) {
            ++j12_count;
        }
    }
    CHECK(j12_count == 3);  // main line + two side couplings

    CHECK_NOTHROW(validate_netlist(n));
}

TEST_CASE("topology mismatch is rejected") {
    const FilterSpec spec = reference_spec();
    const PrototypeCoefficients proto = chebyshev_g_values(2, spec.ripple_db);
    const SynthesisResult r = bandpass_elements(spec, proto);
    CHECK_THROWS_AS(build_dual_band_netlist(spec, r.elements), config_error);

    const FilterSpec dual = reference_spec(Topology::DualBand);
    CHECK_THROWS_AS(build_single_band_netlist(dual, r.elements), config_error);
}

TEST_CASE("resonance identity for every emitted resonator (ideal inverters)") {
    for (Topology topo : {Topology::SingleBand, Topology::DualBand}) {
        const FilterSpec spec = reference_spec(topo);
        const PrototypeCoefficients proto = chebyshev_g_values(2, spec.ripple_db);
        const SynthesisResult r = bandpass_elements(spec, proto);
        const Netlist n = topo == Topology::DualBand
                              ? build_dual_band_netlist(spec, r.elements)
                              : build_single_band_netlist(spec, r.elements);
        std::vector<double> c_of(n.node_count + 1, 0.0), l_of(n.node_count + 1, 0.0);
        for (const Element& e : n.elements) {
            if (e.node_b != 0) continue;
            if (e.kind == ElementKind::Capacitor) c_of[e.node_a] = e.value;
            if (e.kind == ElementKind::Inductor) l_of[e.node_a] = e.value;
        }
        int resonators = 0;
        for (int node = 1; node <= n.node_count; ++node) {
            if (c_of[node] > 0.0 && l_of[node] > 0.0) {
                ++resonators;
                const double f_res =
                    1.0 / (2.0 * std::numbers::pi * std::sqrt(l_of[node] * c_of[node]));
                CHECK(std::abs(f_res - spec.f0_hz) <= 1e-9 * spec.f0_hz);
            }
        }
        CHECK(resonators == (topo == Topology::DualBand ? 4 : 2));
    }
}

TEST_CASE("inductive-Pi netlists emit only positive elements") {
    FilterSpec spec = reference_spec();
    spec.coupling_model = CouplingModel::InductivePi;
    const PrototypeCoefficients proto = chebyshev_g_values(2, spec.ripple_db);
    const SynthesisResult r = bandpass_elements(spec, proto);
    const Netlist n = build_single_band_netlist(spec, r.elements);

    CHECK_NOTHROW(validate_netlist(n));
    // interior coupling realized as a series inductor, I/O stays ideal
    CHECK(count_kind(n, ElementKind::Inverter) == 2);
    CHECK(count_kind(n, ElementKind::Inductor) == 3);  // 2 merged + 1 series
    int series_l = 0;
    for (const Element& e : n.elements) {
        CHECK(e.value > 0.0);
        if (e.kind == ElementKind::Inductor && e.node_a != 0 && e.node_b != 0) {
            ++series_l;
            CHECK(e.value == doctest::Approx(kL12).epsilon(1e-9));
        }
    }
    CHECK(series_l == 1);

    FilterSpec dual = reference_spec(Topology::DualBand);
    dual.coupling_model = CouplingModel::InductivePi;
    const Netlist nd = build_dual_band_netlist(dual, bandpass_elements(dual, proto).elements);
    CHECK_NOTHROW(validate_netlist(nd));
    CHECK(count_kind(nd, ElementKind::Inverter) == 2);
    CHECK(count_kind(nd, ElementKind::Inductor) == 7);  // 4 merged + 3 series
}

TEST_CASE("inductive-Pi absorption rejects over-strong coupling") {
    // a very wide band drives the merged resonator inductance non-positive
    FilterSpec spec = reference_spec(Topology::DualBand);
    spec.coupling_model = CouplingModel::InductivePi;
    spec.fbw = 0.4;
    const PrototypeCoefficients proto = chebyshev_g_values(2, spec.ripple_db);
    const SynthesisResult r = bandpass_elements(spec, proto);
    CHECK_THROWS_AS(build_dual_band_netlist(spec, r.elements), config_error);
}

TEST_CASE("inductive-Pi merges each node's own adjacent arms (order 4)") {
    FilterSpec spec = reference_spec();
    spec.order = 4;
    spec.ripple_db = 0.1;
    spec.coupling_model = CouplingModel::InductivePi;
    const PrototypeCoefficients proto = chebyshev_g_values(4, 0.1);
    const SynthesisResult r = bandpass_elements(spec, proto);
    const Netlist n = build_single_band_netlist(spec, r.elements);
    CHECK_NOTHROW(validate_netlist(n));

    // interior couplings J12/J23/J34 are distinct for this prototype
    const double w0 = 2.0 * std::numbers::pi * spec.f0_hz;
    const auto& j = r.elements.j_ladder;
    CHECK(std::abs(j[1] - j[2]) > 1e-4 * j[1]);

    std::vector<double> l_of(n.node_count + 1, 0.0);
    for (const Element& e : n.elements) {
        if (e.kind == ElementKind::Inductor && e.node_b == 0) l_of[e.node_a] = e.value;
    }
    // resonator k at node k+1 absorbs the arms of its own couplings
    auto expected_l = [&](double sum_j) {
        return 1.0 / (1.0 / r.elements.l_res - w0 * sum_j);
    };
    CHECK(l_of[2] == doctest::Approx(expected_l(j[1])).epsilon(1e-12));
    CHECK(l_of[3] == doctest::Approx(expected_l(j[1] + j[2])).epsilon(1e-12));
    CHECK(l_of[4] == doctest::Approx(expected_l(j[2] + j[3])).epsilon(1e-12));
    CHECK(l_of[5] == doctest::Approx(expected_l(j[3])).epsilon(1e-12));
}

TEST_CASE("general order single-band netlists build and validate") {
    for (int order : {1, 3, 5}) {
        FilterSpec spec = reference_spec();
        spec.order = order;
        const PrototypeCoefficients proto = chebyshev_g_values(order, 0.1);
        FilterSpec s2 = spec;
        s2.ripple_db = 0.1;
        const SynthesisResult r = bandpass_elements(s2, proto);
        const Netlist n = build_single_band_netlist(s2, r.elements);
        CHECK(n.node_count == order + 2);
        CHECK(count_kind(n, ElementKind::Inverter) == order + 1);
        CHECK_NOTHROW(validate_netlist(n));
    }
}

TEST_CASE("filter spec validation names the bad field") {
    FilterSpec spec = reference_spec();
    spec.fbw = 0.0;
    try {
        validate_filter_spec(spec);
        FAIL("expected domain_error");
    } catch (const domain_error& e) {
        CHECK(std::string(e.what()).find("fbw") != std::string::npos);
    }
}
