#include "rfkit/prototype.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "rfkit/errors.hpp"

namespace rfkit {

PrototypeCoefficients chebyshev_g_values(int order, double ripple_db) {
    detail::require_positive(order, "order");
    detail::require_positive(ripple_db, "ripple_db");

    const int n = order;
    const double beta = std::log(1.0 / std::tanh(ripple_db / 17.37));
    const double gamma = std::sinh(beta / (2.0 * n));

    auto a = [n](int k) { return std::sin((2.0 * k - 1.0) * std::numbers::pi / (2.0 * n)); };
    auto b = [n, gamma](int k) {
        const double s = std::sin(k * std::numbers::pi / n);
        return gamma * gamma + s * s;
    };

    PrototypeCoefficients proto;
    proto.order = n;
    proto.ripple_db = ripple_db;
    proto.g.resize(static_cast<size_t>(n) + 2);
    proto.g[0] = 1.0;
    proto.g[1] = 2.0 * a(1) / gamma;
    for (int k = 2; k <= n; ++k) {
        proto.g[k] = 4.0 * a(k - 1) * a(k) / (b(k - 1) * proto.g[k - 1]);
    }
    if (n % 2 == 1) {
        proto.g[n + 1] = 1.0;
    } else {
        const double coth = 1.0 / std::tanh(beta / 4.0);
        proto.g[n + 1] = coth * coth;
    }
    return proto;
}

namespace {

// -10 log10(1 - 10^(-level/10)); log1p keeps the result positive even when
// 10^(-level/10) underflows the subtraction
double complementary_level_db(double level_db) {
    return -10.0 * std::log1p(-std::pow(10.0, -level_db / 10.0)) / std::numbers::ln10;
}

} // namespace

double ripple_from_return_loss(double rl_db) {
    detail::require_positive(rl_db, "rl_db");
    return complementary_level_db(rl_db);
}

double return_loss_from_ripple(double ripple_db) {
    detail::require_positive(ripple_db, "ripple_db");
    // 10^(-RL/10) + 10^(-LAr/10) = 1 is symmetric in the two levels
    return complementary_level_db(ripple_db);
}

double fit_ripple_to_g1(int order, double g1_target) {
    detail::require_positive(order, "order");
    detail::require_positive(g1_target, "g1_target");

    double lo = 1e-6;
    double hi = 3.0;
    auto g1_of = [order](double r) { return chebyshev_g_values(order, r).g[1]; };

    const double g1_lo = g1_of(lo);
    const double g1_hi = g1_of(hi);
    if (g1_target < g1_lo || g1_target > g1_hi) {
        throw no_solution_error(
            "g1_target " + std::to_string(g1_target) +
            " outside achievable range [" + std::to_string(g1_lo) + ", " +
            std::to_string(g1_hi) + "] for ripple in [1e-6, 3] dB");
    }

    // g1 is strictly increasing in ripple; plain bisection is unconditionally
    // convergent. 120 halvings take the bracket far below double resolution.
    for (int it = 0; it < 120; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (g1_of(mid) < g1_target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace rfkit
