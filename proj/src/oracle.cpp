#include "zenerwave/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "zenerwave/detail/quadrature.hpp"
#include "zenerwave/modulus.hpp"
#include "zenerwave/simulate.hpp"

namespace zenerwave {

std::vector<ComplexD> gl_weights(ComplexD order, std::size_t n) {
    if (n < 1) throw std::invalid_argument("gl_weights: n must be >= 1");
    std::vector<ComplexD> w(n + 1);
    w[0] = 1.0;
    for (std::size_t k = 1; k <= n; ++k)
        w[k] = w[k - 1] * (1.0 - (order + 1.0) / static_cast<double>(k));
    return w;
}

GlSeries GlSeries::build(ComplexD order, double dt, std::size_t n) {
    if (!(dt > 0.0)) throw std::invalid_argument("GlSeries: dt must be > 0");
    GlSeries s;
    s.order = order;
    s.dt = dt;
    s.weights = gl_weights(order, n);
    return s;
}

std::vector<ComplexD> frac_deriv_gl(const SampledPath& path, ComplexD order) {
    if (!(path.dt > 0.0)) throw std::invalid_argument("frac_deriv_gl: dt must be > 0");
    const std::size_t n = path.values.size();
    const auto w = gl_weights(order, n == 0 ? 1 : n - 1);
    // dt^-eta by the principal logarithm.
    const ComplexD scale = std::exp(-order * std::log(ComplexD(path.dt, 0.0)));
    std::vector<ComplexD> out(n);
    for (std::size_t m = 0; m < n; ++m) {
        ComplexD acc = 0.0;
        for (std::size_t k = 0; k <= m; ++k) acc += w[k] * path.values[m - k];
        out[m] = scale * acc;
    }
    return out;
}

std::vector<double> sym_deriv(const SampledPath& path, double alpha, double beta) {
    // (1/2)(D^{a+ib} + D^{a-ib}) u of a real path is the real part of either
    // branch: weights and dt-power of the conjugate order are conjugate.
    const auto d = frac_deriv_gl(path, ComplexD(alpha, beta));
    std::vector<double> out(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) out[i] = d[i].real();
    return out;
}

double constitutive_residual(const SampledPath& sigma, const SampledPath& epsilon,
                             const MaterialParams& params) {
    params.check();
    if (sigma.values.size() != epsilon.values.size())
        throw std::invalid_argument("constitutive_residual: length mismatch");
    if (std::abs(sigma.dt - epsilon.dt) > 1e-15)
        throw std::invalid_argument("constitutive_residual: dt mismatch");
    const std::size_t n = sigma.values.size();
    if (n < 3) throw std::invalid_argument("constitutive_residual: need >= 3 samples");

    const auto da_sigma = frac_deriv_gl(sigma, ComplexD(params.alpha, 0.0));
    const auto da_eps = frac_deriv_gl(epsilon, ComplexD(params.alpha, 0.0));
    const auto db_sigma = sym_deriv(sigma, params.alpha, params.beta);
    const auto db_eps = sym_deriv(epsilon, params.alpha, params.beta);

    double sup_diff = 0.0, sup_rhs = 0.0;
    for (std::size_t m = 1; m < n; ++m) {  // interior: skip the t = 0 cell
        const double lhs =
            sigma.values[m] + params.a1 * da_sigma[m].real() + params.b1 * db_sigma[m];
        const double rhs =
            epsilon.values[m] + params.a2 * da_eps[m].real() + params.b2 * db_eps[m];
        sup_diff = std::max(sup_diff, std::abs(lhs - rhs));
        sup_rhs = std::max(sup_rhs, std::abs(rhs));
    }
    if (sup_rhs == 0.0) return sup_diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return sup_diff / sup_rhs;
}

double zener_cross_stress(double t, const MaterialParams& params, double abs_tol) {
    if (params.b1 != 0.0 || params.b2 != 0.0)
        throw std::invalid_argument("zener_cross_stress: requires b1 = b2 = 0");
    if (t == 0.0) return 0.0;

    // sigma~ = E~(s)/(s(s+1)); the E~(0) = 1 part inverts to 1 - e^{-t} in
    // closed form, the remainder decays like |s|^-2 on the axis.
    auto transform = [&](double tau) {
        const Complex s(0.0, tau);
        return (E_tilde(s, params) - 1.0) / (s * (s + 1.0));
    };
    return 1.0 - std::exp(-t) + detail::fourier_cosine_half_line(transform, t, abs_tol, 8);
}

FullSystemResult full_system_residual(const MaterialParams& params, double dt,
                                      const QuadratureConfig& cfg) {
    params.check();
    if (!(dt > 0.0 && dt <= 0.1))
        throw std::invalid_argument("full_system_residual: need 0 < dt <= 0.1");

    // Smooth C^1 pulse, compatible with u(x,0) = 0.
    const double pulse_width = 0.4;
    const double t_max = 1.0;
    const double x_probe = 1.0;
    const double h = 0.02;       // central-difference half step for eps = u_x
    const double dxp = 0.05;     // trapezoid step of the sigma x-integration
    constexpr double kPi = 3.14159265358979323846;

    const auto n = static_cast<std::size_t>(std::llround(t_max / dt)) + 1;
    std::vector<double> uvals(n, 0.0), ts(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) * dt;
        ts[i] = t;
        uvals[i] = (t < pulse_width) ? std::pow(std::sin(kPi * t / pulse_width), 2) : 0.0;
    }
    const BoundarySignal pulse = BoundarySignal::sampled(dt, uvals);

    // One field call: the two eps columns plus the sigma integration lattice
    // out to the quiescent region beyond the fastest front.
    const double front = std::sqrt(params.a2 / std::max(params.a1, 1e-12)) * t_max;
    const double x_far = front + 0.3;
    std::vector<double> lattice;
    for (double x = x_probe; x < x_far + 0.5 * dxp; x += dxp) lattice.push_back(x);
    std::vector<double> xs = {x_probe - h, x_probe + h};
    xs.insert(xs.end(), lattice.begin(), lattice.end());
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    const WaveField field = response_general(pulse, xs, ts, params, cfg);
    auto column_index = [&](double x) {
        for (std::size_t i = 0; i < xs.size(); ++i)
            if (std::abs(xs[i] - x) < 1e-12) return i;
        throw std::logic_error("full_system_residual: column lookup failed");
    };

    // u_tt by second central differences, one column at a time.
    const std::size_t n_used = n - 1;  // drop the last cell (no forward neighbor)
    std::vector<std::vector<double>> utt(lattice.size(), std::vector<double>(n_used, 0.0));
    for (std::size_t c = 0; c < lattice.size(); ++c) {
        const std::size_t ix = column_index(lattice[c]);
        for (std::size_t m = 1; m + 1 < n; ++m) {
            const double um = field.at(ix, m - 1), u0 = field.at(ix, m), up = field.at(ix, m + 1);
            utt[c][m] = (up - 2.0 * u0 + um) / (dt * dt);
        }
    }

    // sigma(x_probe, t) = - Int_{x_probe}^{x_far} u_tt dx' (sigma -> 0 ahead
    // of the front), trapezoid over the lattice.
    SampledPath sigma{dt, std::vector<double>(n_used, 0.0)};
    for (std::size_t m = 1; m < n_used; ++m) {
        double acc = 0.0;
        for (std::size_t c = 0; c + 1 < lattice.size(); ++c)
            acc += 0.5 * (utt[c][m] + utt[c + 1][m]) * (lattice[c + 1] - lattice[c]);
        sigma.values[m] = -acc;
    }

    SampledPath eps{dt, std::vector<double>(n_used, 0.0)};
    const std::size_t ilo = column_index(x_probe - h), ihi = column_index(x_probe + h);
    for (std::size_t m = 0; m < n_used; ++m)
        eps.values[m] = (field.at(ihi, m) - field.at(ilo, m)) / (2.0 * h);

    FullSystemResult out;
    out.residual = constitutive_residual(sigma, eps, params);
    out.x_probe = x_probe;
    out.dt = dt;
    return out;
}

}  // namespace zenerwave
