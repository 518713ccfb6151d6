#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "support/random_params.hpp"
#include "zenerwave/errors.hpp"
#include "zenerwave/modulus.hpp"

using namespace zenerwave;

namespace {
constexpr double kPi = 3.14159265358979323846;

/// Brute-force extremum of h over tau in [0, 2pi): dense grid then
/// golden-section refinement around the best cell.
template <typename H>
double grid_extremum(H&& h, bool want_max, std::size_t grid = 1'000'000) {
    double best = want_max ? -1e300 : 1e300;
    double best_tau = 0.0;
    for (std::size_t i = 0; i < grid; ++i) {
        const double tau = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(grid);
        const double v = h(tau);
        if (want_max ? v > best : v < best) {
            best = v;
            best_tau = tau;
        }
    }
    const double step = 2.0 * kPi / static_cast<double>(grid);
    double a = best_tau - step, b = best_tau + step;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    for (int it = 0; it < 200; ++it) {
        const double fc = h(c), fd = h(d);
        const bool pick_c = want_max ? fc > fd : fc < fd;
        if (pick_c) {
            b = d;
        } else {
            a = c;
        }
        c = b - gr * (b - a);
        d = a + gr * (b - a);
    }
    return h(0.5 * (a + b));
}

}  // namespace

TEST_CASE("f_func/g_func: boundary identities") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> ut(0.0, 2.0 * kPi);
    for (int i = 0; i < 100; ++i) {
        const double tau = ut(rng);
        CHECK(f_func(tau, 0.0, 0.5, 0.1) == doctest::Approx(std::cos(tau)).epsilon(1e-15));
        CHECK(g_func(tau, 0.0, 0.5, 0.1) == doctest::Approx(0.0).epsilon(1e-15));
    }
    for (double phi : {0.3, 1.0, kPi / 2.0}) {
        CHECK(f_func(0.0, phi, 0.4, 0.2) ==
              doctest::Approx(std::cos(0.4 * phi) * std::cosh(0.2 * phi)).epsilon(1e-15));
        CHECK(g_func(0.0, phi, 0.4, 0.2) ==
              doctest::Approx(std::sin(0.4 * phi) * std::cosh(0.2 * phi)).epsilon(1e-15));
    }
}

TEST_CASE("f/g extrema match the closed forms (grid + golden section oracle)") {
    const double alpha = 0.5, beta = 0.1, phi = kPi / 2.0;
    auto f = [&](double tau) { return f_func(tau, phi, alpha, beta); };
    auto g = [&](double tau) { return g_func(tau, phi, alpha, beta); };
    const auto ev = extremal_values(alpha, beta, phi);

    // Frozen 30-digit value of the closed form at these orders.
    CHECK(ev.f_max == doctest::Approx(0.724484379002317153).epsilon(1e-14));
    CHECK(ev.g_min == doctest::Approx(-0.724484379002317153).epsilon(1e-14));

    CHECK(grid_extremum(f, true) == doctest::Approx(ev.f_max).epsilon(1e-12));
    CHECK(grid_extremum(f, false) == doctest::Approx(ev.f_min).epsilon(1e-12));
    CHECK(grid_extremum(g, true) == doctest::Approx(ev.g_max).epsilon(1e-12));
    CHECK(grid_extremum(g, false) == doctest::Approx(ev.g_min).epsilon(1e-12));
}

TEST_CASE("extremal_values: root brackets and plug-back") {
    const double alpha = 0.5, beta = 0.1, phi = kPi / 2.0;
    const auto ev = extremal_values(alpha, beta, phi);
    CHECK(ev.tau_f_roots[0] > 0.0);
    CHECK(ev.tau_f_roots[0] < kPi / 2.0);
    CHECK(ev.tau_f_roots[1] > kPi);
    CHECK(ev.tau_f_roots[1] < 1.5 * kPi);
    CHECK(ev.tau_g_roots[0] > kPi / 2.0);
    CHECK(ev.tau_g_roots[0] < kPi);
    CHECK(ev.tau_g_roots[1] > 1.5 * kPi);
    CHECK(ev.tau_g_roots[1] < 2.0 * kPi);

    CHECK(f_func(ev.tau_f_roots[0], phi, alpha, beta) == doctest::Approx(ev.f_max).epsilon(1e-12));
    CHECK(f_func(ev.tau_f_roots[1], phi, alpha, beta) == doctest::Approx(ev.f_min).epsilon(1e-12));
    CHECK(g_func(ev.tau_g_roots[0], phi, alpha, beta) == doctest::Approx(ev.g_min).epsilon(1e-12));
    CHECK(g_func(ev.tau_g_roots[1], phi, alpha, beta) == doctest::Approx(ev.g_max).epsilon(1e-12));

    CHECK(ev.f_max == doctest::Approx(-ev.f_min).epsilon(1e-15));
    CHECK(ev.g_max == doctest::Approx(-ev.g_min).epsilon(1e-15));
    CHECK_THROWS_AS(extremal_values(alpha, beta, 0.0), std::domain_error);

    // beta -> 0: f_max -> 1 and the first stationary point -> 0.
    const auto ev0 = extremal_values(0.5, 1e-9, kPi / 2.0);
    CHECK(ev0.f_max == doctest::Approx(std::cos(0.25 * kPi)).epsilon(1e-8));
    CHECK(ev0.tau_f_roots[0] == doctest::Approx(0.0).epsilon(1e-8));
}

TEST_CASE("f/g Pythagorean identity at random points") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> ut(0.0, 2.0 * kPi), up(0.0, kPi / 2.0),
        ua(0.05, 0.95), ub(0.02, 1.5);
    for (int i = 0; i < 10000; ++i) {
        const double tau = ut(rng), phi = up(rng), alpha = ua(rng), beta = ub(rng);
        const double f = f_func(tau, phi, alpha, beta), g = g_func(tau, phi, alpha, beta);
        const double lhs = f * f + g * g;
        const double rhs = std::pow(std::cos(tau) * std::cosh(beta * phi), 2) +
                           std::pow(std::sin(tau) * std::sinh(beta * phi), 2);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
    }
}

TEST_CASE("P_hat: omega -> 0 limit and real-order reduction") {
    const auto p = zw_test::case1_params();
    CHECK(P_hat(0.0, p) == Complex(1.0, 0.0));
    CHECK(Q_hat(0.0, p) == Complex(1.0, 0.0));
    CHECK(std::abs(P_hat(1e-12, p) - Complex(1.0, 0.0)) < 1e-4);  // |P^-1| ~ omega^alpha

    MaterialParams zener = p;
    zener.b1 = zener.b2 = 0.0;
    for (double w : {0.1, 1.0, 10.0}) {
        const Complex expect =
            1.0 + zener.a2 * std::pow(w, 0.5) * std::exp(Complex(0.0, 0.25 * kPi));
        CHECK(std::abs(P_hat(w, zener) - expect) < 1e-13 * std::abs(expect));
    }
}

TEST_CASE("P_hat at omega = 1 agrees with the high-precision complex-power oracle") {
    const auto p = zw_test::case1_params();
    // Frozen from a 30-digit evaluation of 1 + a2 s^a + b2(s^{a+ib}+s^{a-ib}) at s = i.
    const Complex expect(18.0055288770838645, 17.0055288770838645);
    CHECK(std::abs(P_hat(1.0, p) - expect) < 1e-13 * std::abs(expect));
    const Complex qexpect(1.85027644385419322, 0.85027644385419322);
    CHECK(std::abs(Q_hat(1.0, p) - qexpect) < 1e-13 * std::abs(qexpect));
    // Both code paths agree.
    CHECK(std::abs(P_hat(1.0, p) - P_tilde(Complex(0.0, 1.0), p)) < 1e-13 * std::abs(expect));
}

TEST_CASE("E_hat: identity for elastic params, frozen value for Zener") {
    MaterialParams el;
    el.a1 = el.a2 = 3.0;
    el.b1 = el.b2 = 0.4;
    el.alpha = 0.6;
    el.beta = 0.3;
    for (double w : {1e-3, 0.1, 1.0, 42.0}) {
        CHECK(std::abs(E_hat(w, el) - Complex(1.0, 0.0)) < 1e-14);
    }

    MaterialParams z = zw_test::case1_params();
    z.b1 = z.b2 = 0.0;
    // (1 + 20 e^{i pi/4})/(1 + e^{i pi/4}) frozen from scalar complex arithmetic.
    const Complex expect(10.5, 3.93502884254440296);
    CHECK(std::abs(E_hat(1.0, z) - expect) < 1e-13 * std::abs(expect));

    const Complex full_expect(11.5216900498638871, 3.89612441872682548);
    CHECK(std::abs(E_hat(1.0, zw_test::case1_params()) - full_expect) <
          1e-13 * std::abs(full_expect));
}

TEST_CASE("E_hat: dissipativity on the Case-1 log sweep") {
    const auto fr = sweep_frequency_response(zw_test::case1_params(), 1e-3, 1e3, 2000);
    for (std::size_t i = 0; i < fr.omegas.size(); ++i) {
        CHECK(fr.loss[i] >= -1e-12);
        CHECK(fr.storage[i] >= -1e-12);
        CHECK(fr.storage[i] == fr.E[i].real());
        CHECK(fr.loss[i] == fr.E[i].imag());
    }
}

TEST_CASE("Prop pr--1 at machine level: Re P^ >= 1 for admissible params") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        const auto p = zw_test::random_admissible(rng);
        for (int i = 0; i < 200; ++i) {
            const double w = 1e-3 * std::pow(1e6, i / 199.0);
            CHECK(P_hat(w, p).real() >= 1.0 - 1e-12);
            CHECK(Q_hat(w, p).real() >= 1.0 - 1e-12);
        }
    }
}

TEST_CASE("M_from_s: limits, Case-1 real axis value, branch consistency") {
    const auto p = zw_test::case1_params();
    CHECK(M_from_s(Complex(0.0, 0.0), p) == Complex(1.0, 0.0));

    // s = 1: s^{±i beta} = 1, so M = sqrt((1+a1+2b1)/(1+a2+2b2)) = sqrt(2.2/25).
    const Complex m1 = M_from_s(Complex(1.0, 0.0), p);
    CHECK(m1.imag() == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(m1.real() == doctest::Approx(0.296647939483826518).epsilon(1e-14));

    MaterialParams el;
    el.a1 = el.a2 = 2.0;
    el.b1 = el.b2 = 0.3;
    el.alpha = 0.5;
    el.beta = 0.1;
    for (double w : {1e-2, 1.0, 1e3}) {
        CHECK(std::abs(M_from_s(Complex(0.0, w), el) - Complex(1.0, 0.0)) < 1e-14);
        CHECK(std::abs(M_from_s(Complex(w, 0.5), el) - Complex(1.0, 0.0)) < 1e-14);
    }

    CHECK_THROWS_AS(M_from_s(Complex(-0.1, 1.0), p), std::domain_error);
}

TEST_CASE("Remark rem:signM: Re M(i omega) > 0 and Im M(i omega) < 0") {
    const auto p = zw_test::case1_params();
    for (int i = 0; i < 600; ++i) {
        const double w = 1e-2 * std::pow(1e5, i / 599.0);
        const Complex m = M_from_s(Complex(0.0, w), p);
        CHECK(m.real() > 0.0);
        CHECK(m.imag() < 0.0);
    }
}

TEST_CASE("conjugate symmetry of P~, E~, M at random admissible params") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> ure(0.0, 10.0), uim(-10.0, 10.0);
    for (int i = 0; i < 1000; ++i) {
        const auto p = zw_test::random_admissible(rng);
        const Complex s(ure(rng), uim(rng));
        if (std::abs(s) < 1e-6) continue;
        const Complex sc = std::conj(s);
        CHECK(std::abs(P_tilde(sc, p) - std::conj(P_tilde(s, p))) <=
              1e-13 * std::abs(P_tilde(s, p)));
        CHECK(std::abs(E_tilde(sc, p) - std::conj(E_tilde(s, p))) <=
              1e-13 * std::abs(E_tilde(s, p)));
        CHECK(std::abs(M_from_s(sc, p) - std::conj(M_from_s(s, p))) <=
              1e-13 * std::abs(M_from_s(s, p)));
    }
}

TEST_CASE("branch consistency: M^2 == Q~/P~ with Re M >= 0") {
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> ure(0.0, 20.0), uim(-20.0, 20.0);
    for (int i = 0; i < 1000; ++i) {
        const auto p = zw_test::random_admissible(rng);
        const Complex s(ure(rng), uim(rng));
        if (std::abs(s) < 1e-6) continue;
        const Complex m = M_from_s(s, p);
        CHECK(m.real() >= 0.0);
        const Complex ratio = Q_tilde(s, p) / P_tilde(s, p);
        CHECK(std::abs(m * m - ratio) <= 1e-13 * std::abs(ratio));
    }
}

TEST_CASE("Fourier-Laplace consistency: trig path vs complex-power path") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const auto p = zw_test::random_admissible(rng);
        for (double w : {1e-3, 0.3, 1.0, 7.0, 1e3}) {
            const Complex a = E_hat(w, p);
            const Complex b = E_tilde(Complex(0.0, w), p);
            CHECK(std::abs(a - b) <= 1e-12 * std::abs(a));
        }
    }
}

TEST_CASE("E~ trig decomposition path agrees off the imaginary axis") {
    std::mt19937 rng(37);
    std::uniform_real_distribution<double> ure(0.01, 10.0), uim(0.01, 10.0);
    for (int i = 0; i < 500; ++i) {
        const auto p = zw_test::random_admissible(rng);
        const Complex s(ure(rng), uim(rng));
        const Complex a = E_tilde(s, p);
        const Complex b = E_tilde_trig(s, p);
        CHECK(std::abs(a - b) <= 1e-12 * std::abs(a));
    }
}

TEST_CASE("section-2 and section-3 forms of the Re E~ cross term coincide under td-1") {
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> ure(0.0, 5.0), uim(0.01, 5.0);
    for (int i = 0; i < 500; ++i) {
        const auto p = zw_test::random_admissible(rng);  // b2 derived: td-1 exact
        const Complex s(ure(rng), uim(rng));
        const double v2 = re_E_numerator(s, p, false);
        const double v3 = re_E_numerator(s, p, true);
        CHECK(v2 == doctest::Approx(v3).epsilon(1e-12));
    }
}

TEST_CASE("im_M2_decay_exponent: elastic sentinel and Zener slope -> -alpha") {
    MaterialParams el;
    el.a1 = el.a2 = 1.0;
    el.b1 = el.b2 = 0.0;
    el.alpha = 0.5;
    el.beta = 0.1;
    CHECK_FALSE(im_M2_decay_exponent(el, 1e3, 1e6, 64).has_value());

    MaterialParams z = zw_test::case1_params();
    z.b1 = z.b2 = 0.0;
    for (double alpha : {0.3, 0.5, 0.7}) {
        z.alpha = alpha;
        const auto slope = im_M2_decay_exponent(z, 1e3, 1e6, 64);
        REQUIRE(slope.has_value());
        CHECK(*slope == doctest::Approx(-alpha).epsilon(0.02));
    }

    // Case-1: measured slope is stable between decades (recorded, not pinned
    // to the paper's -2 alpha; see the decay-exponent notes in the header).
    const auto p = zw_test::case1_params();
    const auto s1 = im_M2_decay_exponent(p, 1e3, 1e5, 64);
    const auto s2 = im_M2_decay_exponent(p, 1e4, 1e6, 64);
    REQUIRE(s1.has_value());
    REQUIRE(s2.has_value());
    CHECK(std::abs(*s1 - *s2) < 0.05);
}

TEST_CASE("winding certificate: zero for admissible, invalid input rejected") {
    const auto cert = winding_number(zw_test::case1_params(), 1e-3, 1e3, 10000);
    CHECK(cert.valid);
    CHECK(cert.winding == 0);
    CHECK(cert.min_abs_P >= 1.0 - 1e-9);  // Re P~ >= 1 on the contour

    MaterialParams z = zw_test::case1_params();
    z.b1 = z.b2 = 0.0;
    const auto zc = winding_number(z, 1e-3, 1e3, 2000);
    CHECK(zc.valid);
    CHECK(zc.winding == 0);

    CHECK_THROWS_AS(winding_number(z, 0.0, 1e3, 2000), std::invalid_argument);
    CHECK_THROWS_AS(winding_number(z, 1e-3, 1e3, 10), std::invalid_argument);
}

TEST_CASE("winding certificate: negative control encloses the confirmed zero") {
    // Adversarial set strongly violating td-300.
    MaterialParams bad;
    bad.a1 = 0.5;
    bad.a2 = 1.0;
    bad.b1 = 25.0;
    bad.b2 = 50.0;
    bad.alpha = 0.5;
    bad.beta = 0.1;

    // Confirm a zero by grid search + bisection on the positive real axis,
    // where P~ is real: P~(x) = 1 + x^a (a2 + 2 b2 cos(beta ln x)).
    auto preal = [&](double x) { return P_tilde(Complex(x, 0.0), bad).real(); };
    double lo = 1.0, hi = 0.0;
    double xprev = 1.0;
    for (double x = 1.0; x < 1e9; x *= 1.1) {
        if (preal(xprev) > 0.0 && preal(x) < 0.0) {
            lo = xprev;
            hi = x;
            break;
        }
        xprev = x;
    }
    REQUIRE(hi > 0.0);
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        (preal(mid) > 0.0 ? lo : hi) = mid;
    }
    const double x_zero = 0.5 * (lo + hi);
    CHECK(std::abs(preal(x_zero)) < 1e-6);

    const auto cert = winding_number(bad, 1e-3, x_zero * 10.0, 10000);
    CHECK(cert.valid);
    CHECK(cert.winding >= 1);
}
