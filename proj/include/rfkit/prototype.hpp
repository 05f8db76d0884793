#pragma once

#include <vector>

namespace rfkit {

/// Normalized Chebyshev lowpass prototype element values g0..g(n+1).
struct PrototypeCoefficients {
    int order = 0;
    double ripple_db = 0.0;
    std::vector<double> g;  // size order + 2, g[0] == 1

    /// Orders above 20 are computed but carry no validation coverage.
    [[nodiscard]] bool beyond_validated_range() const { return order > 20; }
};

/// Equal-ripple lowpass prototype values for a given order and passband
/// ripple in dB, via the standard recursion
///   beta = ln(coth(LAr/17.37)), gamma = sinh(beta/2n),
///   g1 = 2 a1/gamma, gk = 4 a_{k-1} a_k / (b_{k-1} g_{k-1}),
///   g_{n+1} = 1 (n odd) or coth^2(beta/4) (n even).
PrototypeCoefficients chebyshev_g_values(int order, double ripple_db);

/// Passband ripple equivalent to a given return-loss level:
/// LAr = -10 log10(1 - 10^(-RL/10)). The relation is symmetric, so this
/// also maps a ripple back to its return-loss level.
double ripple_from_return_loss(double rl_db);

/// Return-loss level of an equal-ripple passband (inverse view of the above).
double return_loss_from_ripple(double ripple_db);

/// Recovers the ripple that produces a given g1 at a given order, by
/// bisection on ripple in [1e-6, 3] dB (g1 is strictly increasing in ripple).
double fit_ripple_to_g1(int order, double g1_target);

} // namespace rfkit
