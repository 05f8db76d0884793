#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>

#include "rfkit/errors.hpp"
#include "rfkit/microstrip.hpp"

using namespace rfkit;

namespace {

SubstrateSpec rogers6010(double eps_r = 10.7) {
    return {eps_r, 1.27e-3, 0.0023, 35e-6, 5.8e7};
}

// frozen oracle values (numpy evaluation of the closed forms)
constexpr double kZ0AtWeqH = 47.2017087430;
constexpr double kEeAtWeqH = 7.1951479758;
constexpr double kZ0AtU2Er2p2 = 66.1300126435;
constexpr double kEeAtU2Er2p2 = 1.8267786838;
constexpr double kW50 = 1.125695e-3;
constexpr double kLambda6p9 = 8.1520741611e-2;

} // namespace

TEST_CASE("air dielectric gives eps_eff exactly 1") {
    const SubstrateSpec air = rogers6010(1.0);
    for (double w : {0.1e-3, 1.27e-3, 6e-3}) {
        CHECK(analyze_microstrip(w, air).eps_eff == 1.0);
    }
}

TEST_CASE("closed-form regression values") {
    const auto a = analyze_microstrip(1.27e-3, rogers6010());
    CHECK(a.z0_ohm == doctest::Approx(kZ0AtWeqH).epsilon(1e-9));
    CHECK(a.eps_eff == doctest::Approx(kEeAtWeqH).epsilon(1e-9));

    const auto b = analyze_microstrip(2 * 1.27e-3, rogers6010(2.2));
    CHECK(b.z0_ohm == doctest::Approx(kZ0AtU2Er2p2).epsilon(1e-9));
    CHECK(b.eps_eff == doctest::Approx(kEeAtU2Er2p2).epsilon(1e-9));
}

TEST_CASE("eps_eff bounded by the substrate and increasing toward it") {
    const SubstrateSpec sub = rogers6010();
    double prev = 0.0;
    for (double u = 0.05; u <= 20.0; u *= 1.3) {
        const auto a = analyze_microstrip(u * sub.h_m, sub);
        CHECK(a.eps_eff >= 1.0);
        CHECK(a.eps_eff <= sub.eps_r);
        CHECK(a.eps_eff > prev);
        prev = a.eps_eff;
    }
    // very wide line approaches the substrate permittivity
    CHECK(analyze_microstrip(1000 * sub.h_m, sub).eps_eff >
          0.99 * sub.eps_r);
}

TEST_CASE("impedance strictly decreases with width") {
    const SubstrateSpec sub = rogers6010();
    double prev = 1e9;
    for (double u = 0.05; u <= 20.0; u *= 1.05) {
        const double z = analyze_microstrip(u * sub.h_m, sub).z0_ohm;
        CHECK(z < prev);
        prev = z;
    }
}

TEST_CASE("50-ohm width on the ceramic reference substrate") {
    const MicrostripLine line = synthesize_width(50.0, rogers6010(), 1.4e9);
    CHECK(line.w_m > 0.95e-3);
    CHECK(line.w_m < 1.25e-3);
    CHECK(line.w_m == doctest::Approx(kW50).epsilon(1e-4));
    CHECK(line.z0_ohm == doctest::Approx(50.0).epsilon(1e-6));
    CHECK(line.lambda_g_m ==
          doctest::Approx(guided_wavelength(1.4e9, line.eps_eff)).epsilon(1e-15));
}

TEST_CASE("width synthesis round trip within 0.1 um") {
    for (double eps_r : {1.0, 2.2, 10.7}) {
        const SubstrateSpec sub = rogers6010(eps_r);
        for (double u : {0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0}) {
            const double w = u * sub.h_m;
            const auto a = analyze_microstrip(w, sub);
            const MicrostripLine line = synthesize_width(a.z0_ohm, sub, 1.4e9);
            CHECK(std::abs(line.w_m - w) < 1e-7);
        }
    }
}

TEST_CASE("lower permittivity demands a wider 50-ohm line") {
    const double w_air = synthesize_width(50.0, rogers6010(1.0), 1.4e9).w_m;
    const double w_ceramic = synthesize_width(50.0, rogers6010(10.7), 1.4e9).w_m;
    CHECK(w_air > w_ceramic);
}

TEST_CASE("unreachable impedance reports the achievable range") {
    CHECK_THROWS_AS(synthesize_width(500.0, rogers6010(), 1.4e9), no_solution_error);
    CHECK_THROWS_AS(synthesize_width(1.0, rogers6010(), 1.4e9), no_solution_error);
    try {
        synthesize_width(500.0, rogers6010(), 1.4e9);
    } catch (const no_solution_error& e) {
        CHECK(std::string(e.what()).find("achievable range") != std::string::npos);
    }
}

TEST_CASE("guided wavelength") {
    CHECK(guided_wavelength(1.4e9, 1.0) ==
          doctest::Approx(0.21413747).epsilon(1e-8));
    CHECK(guided_wavelength(1.4e9, 6.9) == doctest::Approx(kLambda6p9).epsilon(1e-9));
    CHECK(guided_wavelength(2.8e9, 6.9) ==
          doctest::Approx(0.5 * kLambda6p9).epsilon(1e-12));
    CHECK_THROWS_AS(guided_wavelength(0.0, 6.9), domain_error);
    CHECK_THROWS_AS(guided_wavelength(1.4e9, 0.5), domain_error);
}

TEST_CASE("U-fold geometry") {
    MicrostripLine line;
    line.w_m = 1.1257e-3;
    line.eps_eff = 6.9;
    line.z0_ohm = 50.0;
    line.f_hz = 1.4e9;
    line.lambda_g_m = guided_wavelength(1.4e9, 6.9);

    SUBCASE("equal-thirds fold") {
        const UShapeGeometry g = u_fold_geometry(line, 1.4e9, 1.0 / 3.0);
        CHECK(g.base_len_m == doctest::Approx(g.arm_len_m).epsilon(1e-12));
        CHECK(g.base_len_m == doctest::Approx(line.lambda_g_m / 6.0).epsilon(1e-12));
    }
    SUBCASE("quarter-base fold, lambda_g ~ 81.5 mm") {
        const UShapeGeometry g = u_fold_geometry(line, 1.4e9, 0.25);
        CHECK(g.total_length_m == doctest::Approx(0.5 * kLambda6p9).epsilon(1e-9));
        CHECK(g.base_len_m == doctest::Approx(10.190093e-3).epsilon(1e-6));
        CHECK(g.arm_len_m == doctest::Approx(15.285139e-3).epsilon(1e-6));
        // length conserved exactly
        CHECK(g.base_len_m + 2.0 * g.arm_len_m ==
              doctest::Approx(g.total_length_m).epsilon(1e-12));
        CHECK(g.bbox_w_m == doctest::Approx(g.base_len_m + line.w_m).epsilon(1e-12));
        CHECK(g.bbox_h_m == doctest::Approx(g.arm_len_m + line.w_m).epsilon(1e-12));
    }
    SUBCASE("bbox height shrinks as the base grows") {
        double prev = 1e9;
        for (double bf : {0.1, 0.25, 0.4, 0.6, 0.8}) {
            const UShapeGeometry g = u_fold_geometry(line, 1.4e9, bf);
            CHECK(g.bbox_h_m < prev);
            prev = g.bbox_h_m;
        }
    }
    SUBCASE("degenerate fractions rejected") {
        CHECK_THROWS_AS(u_fold_geometry(line, 1.4e9, 0.0), domain_error);
        CHECK_THROWS_AS(u_fold_geometry(line, 1.4e9, 1.0), domain_error);
    }
}

TEST_CASE("electrical size") {
    const double lg = 81.5e-3;
    const auto s = electrical_size(0.23 * lg, 0.18 * lg, lg);
    CHECK(s.first == doctest::Approx(0.23).epsilon(1e-12));
    CHECK(s.second == doctest::Approx(0.18).epsilon(1e-12));
    const auto unity = electrical_size(lg, lg, lg);
    CHECK(unity.first == 1.0);
    CHECK(unity.second == 1.0);
    CHECK_THROWS_AS(electrical_size(0.0, lg, lg), domain_error);
}

TEST_CASE("substrate validation") {
    CHECK_THROWS_AS(analyze_microstrip(1e-3, SubstrateSpec{0.9, 1.27e-3, 0.0, 35e-6, 5.8e7}),
                    domain_error);
    CHECK_THROWS_AS(analyze_microstrip(0.0, rogers6010()), domain_error);
    CHECK_THROWS_AS(analyze_microstrip(1e-3, SubstrateSpec{10.7, -1e-3, 0.0, 35e-6, 5.8e7}),
                    domain_error);
}
