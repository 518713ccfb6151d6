#ifndef ZW_TESTS_RANDOM_PARAMS_HPP
#define ZW_TESTS_RANDOM_PARAMS_HPP

// Seeded generator of admissible parameter sets: b2 derived from the
// a2 b1 = a1 b2 constraint and b1 backed off from the tighter margin so all
// four restriction margins stay strictly positive.

#include <algorithm>
#include <random>

#include "zenerwave/params.hpp"

namespace zw_test {

inline zenerwave::MaterialParams random_admissible(std::mt19937& rng) {
    std::uniform_real_distribution<double> ua(0.05, 0.95);
    std::uniform_real_distribution<double> ub(0.02, 1.2);
    std::uniform_real_distribution<double> ua1(0.1, 5.0);
    std::uniform_real_distribution<double> uratio(1.1, 40.0);
    std::uniform_real_distribution<double> utheta(0.0, 0.9);

    const double alpha = ua(rng);
    const double beta = ub(rng);
    const double a1 = ua1(rng);
    const double a2 = a1 * uratio(rng);
    const double rhs = std::max(
        zenerwave::restriction_rhs(alpha, beta, zenerwave::RestrictionKind::Ctg),
        zenerwave::restriction_rhs(alpha, beta, zenerwave::RestrictionKind::Tg));
    const double b1 = utheta(rng) * a1 / rhs;
    return zenerwave::MaterialParams::with_derived_b2(a1, a2, b1, alpha, beta);
}

inline zenerwave::MaterialParams case1_params() {
    zenerwave::MaterialParams p;
    p.a1 = 1.0;
    p.a2 = 20.0;
    p.b1 = 0.1;
    p.b2 = 2.0;
    p.alpha = 0.5;
    p.beta = 0.1;
    return p;
}

}  // namespace zw_test

#endif
