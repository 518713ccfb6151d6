#ifndef ZENERWAVE_DETAIL_QUADRATURE_HPP
#define ZENERWAVE_DETAIL_QUADRATURE_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

namespace zenerwave::detail {

/// Gauss-Legendre rule on [-1,1], nodes solved once by Newton iteration on
/// the Legendre recurrence (avoids transcribing tables).
struct GaussRule {
    std::vector<double> node, weight;
};

inline GaussRule make_gauss_rule(std::size_t n) {
    constexpr double pi = 3.14159265358979323846;
    GaussRule r;
    r.node.resize(n);
    r.weight.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        // Chebyshev-based initial guess.
        double x = std::cos(pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.node[i] = x;
        r.weight[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

inline const GaussRule& gl7() {
    static const GaussRule r = make_gauss_rule(7);
    return r;
}

inline const GaussRule& gl15() {
    static const GaussRule r = make_gauss_rule(15);
    return r;
}

template <typename F>
double integrate_gl(const GaussRule& rule, F&& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.node.size(); ++i) acc += rule.weight[i] * f(c + h * rule.node[i]);
    return acc * h;
}

/// Panel value with a GL15-vs-GL7 discrepancy estimate, bisecting until the
/// estimate clears tol or depth runs out.
template <typename F>
double integrate_adaptive(F&& f, double a, double b, double tol, int depth) {
    const double v15 = integrate_gl(gl15(), f, a, b);
    const double v7 = integrate_gl(gl7(), f, a, b);
    if (std::abs(v15 - v7) <= tol || depth <= 0) return v15;
    const double m = 0.5 * (a + b);
    return integrate_adaptive(f, a, m, 0.5 * tol, depth - 1) +
           integrate_adaptive(f, m, b, 0.5 * tol, depth - 1);
}

/// Iterated-averaging (Euler / van Wijngaarden) summation of a convergent
/// oscillatory tail Int_{start}^inf f, where f alternates over consecutive
/// panels of length `half_period` with slowly varying modulation. Panel
/// integrals are accumulated into partial sums whose averaging table is
/// folded until it stabilizes to tol.
///
/// See fourier_cosine_half_line below for the composite low-frequency +
/// oscillation + tail layout used by the transform inversions.
template <typename F>
double euler_tail(F&& f, double start, double half_period, double tol, std::size_t max_panels,
                  int panel_depth = 6) {
    std::vector<double> partial;
    partial.reserve(max_panels);
    double s = 0.0;
    for (std::size_t k = 0; k < max_panels; ++k) {
        const double a = start + static_cast<double>(k) * half_period;
        const double b = a + half_period;
        s += integrate_adaptive(f, a, b, tol * 0.05, panel_depth);
        partial.push_back(s);
    }
    // Fold the averaging table; track the last two row heads.
    double prev_head = partial.back();
    std::vector<double> row = partial;
    double best = prev_head;
    for (std::size_t level = 0; row.size() >= 2; ++level) {
        for (std::size_t i = 0; i + 1 < row.size(); ++i) row[i] = 0.5 * (row[i] + row[i + 1]);
        row.pop_back();
        best = row[0];
        if (level > 4 && std::abs(best - prev_head) < tol) break;
        prev_head = best;
    }
    return best;
}

/// (1/pi) Int_0^inf Re[e^{i tau t} g(i tau)] dtau for a transform g that
/// decays algebraically on the axis. Three zones: geometric panels below the
/// first oscillation scale pi/t (they resolve g's own low-tau structure),
/// direct half-period panels, then the iterated-averaging tail.
template <typename G>
double fourier_cosine_half_line(G&& g, double t, double tol, int depth,
                                std::size_t direct_panels = 64, std::size_t tail_panels = 48) {
    constexpr double pi = 3.14159265358979323846;
    auto integrand = [&](double tau) {
        const auto v = g(tau);
        return (std::cos(tau * t) * v.real() - std::sin(tau * t) * v.imag()) / pi;
    };
    const double tau_osc = pi / t;
    double acc = 0.0;
    double a = 0.0, b = std::min(0.5, tau_osc);
    {
        // First panel under tau = u^2: regularizes the tau^(alpha-1) endpoint
        // behavior of constitutive-ratio transforms.
        auto sub = [&](double u) { return integrand(u * u) * 2.0 * u; };
        acc += integrate_adaptive(sub, 0.0, std::sqrt(b), tol * 0.02, depth);
        a = b;
        b = std::min(b * 2.0, tau_osc);
    }
    while (a < tau_osc) {
        acc += integrate_adaptive(integrand, a, b, tol * 0.02, depth);
        a = b;
        b = std::min(b * 2.0, tau_osc);
    }
    for (std::size_t k = 1; k < direct_panels; ++k)
        acc += integrate_adaptive(integrand, tau_osc * static_cast<double>(k),
                                  tau_osc * static_cast<double>(k + 1), tol * 0.02, depth);
    acc += euler_tail(integrand, tau_osc * static_cast<double>(direct_panels), tau_osc, tol * 0.1,
                      tail_panels, depth / 2 + 3);
    return acc;
}

}  // namespace zenerwave::detail

#endif
