#include "zenerwave/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "zenerwave/detail/quadrature.hpp"
#include "zenerwave/errors.hpp"
#include "zenerwave/parallel.hpp"

namespace zenerwave {

namespace {

constexpr double kPi = 3.14159265358979323846;

Complex m_on_axis(double tau, const MaterialParams& p) {
    const Complex ln = std::log(Complex(0.0, tau));
    const Complex sa = std::exp(p.alpha * ln);
    const Complex cb = std::cos(p.beta * ln);
    const Complex pt = 1.0 + sa * (p.a2 + 2.0 * p.b2 * cb);
    const Complex qt = 1.0 + sa * (p.a1 + 2.0 * p.b1 * cb);
    return std::sqrt(qt / pt);
}

/// Linear interpolation of a causal sampled signal; zero outside the samples.
double interp_signal(const BoundarySignal& sig, double t) {
    if (t < 0.0) return 0.0;
    const double pos = t / sig.dt;
    const auto i = static_cast<std::size_t>(pos);
    if (i + 1 >= sig.values.size())
        return (i < sig.values.size() && pos <= static_cast<double>(i) + 1e-9)
                   ? sig.values[i] * sig.scale
                   : 0.0;
    const double w = pos - static_cast<double>(i);
    return ((1.0 - w) * sig.values[i] + w * sig.values[i + 1]) * sig.scale;
}

/// Heaviside response of the semi-infinite rod: the theta-integration is
/// carried inside the half-line integral,
///   u(x,t) = (1/pi) Int env(tau,x) [sin(tau(t - R x)) + sin(tau R x)]/tau dtau.
/// Beyond the direct window the two sine terms are summed separately by
/// iterated averaging, each on panels aligned to its own period.
double heaviside_infinite(double x, double t, const MaterialParams& p,
                          const QuadratureConfig& cfg) {
    const double r_inf = std::sqrt(p.a1 / p.a2);
    const double omega1 = t - r_inf * x;  // oscillation of the step term
    const double omega2 = r_inf * x;      // oscillation of the boundary term

    auto env_log = [&](double tau) { return tau * m_on_axis(tau, p).imag() * x; };
    auto combined = [&](double tau) {
        const Complex m = m_on_axis(tau, p);
        const double env = std::exp(tau * m.imag() * x);
        const double a = tau * (t - m.real() * x);
        const double b = tau * m.real() * x;
        return env * (std::sin(a) + std::sin(b)) / (tau * kPi);
    };

    // Truncation where envelope/(pi tau) times the worst 1/omega factor is
    // below abs_tol; the 1/tau decay lets small x converge long before the
    // bare envelope does.
    const double f1 = std::max(std::abs(omega1), 1e-2);
    const double f2 = std::max(std::abs(omega2), 1e-2);
    auto tail_bound = [&](double tau) {
        return std::exp(env_log(tau)) * (1.0 / f1 + 1.0 / f2) / (kPi * tau);
    };
    const double tau_econ = std::min(cfg.tau_max_cap, 2e4);
    double tau_direct = tau_econ;
    bool tail_needed = true;
    {
        double lo = 1.0;
        if (tail_bound(lo) < cfg.abs_tol) {
            tau_direct = 64.0;  // keep a minimal direct window
            tail_needed = false;
        } else {
            double hi = lo;
            while (hi < tau_econ) {
                hi = std::min(hi * 2.0, tau_econ);
                if (tail_bound(hi) < cfg.abs_tol) {
                    for (int it = 0; it < 50; ++it) {
                        const double mid = 0.5 * (lo + hi);
                        (tail_bound(mid) < cfg.abs_tol ? hi : lo) = mid;
                    }
                    tau_direct = std::min(hi * 1.2, tau_econ);
                    tail_needed = false;
                    break;
                }
                lo = hi;
            }
        }
    }

    const double omega_panel =
        (std::max({std::abs(omega1), omega2, x, 1.0}) + 0.3) * cfg.panel_density;
    const double panel = 8.8 / omega_panel;
    const std::size_t n_panels = static_cast<std::size_t>(std::ceil(tau_direct / panel));
    if (n_panels > cfg.panel_max)
        throw NumericError("response_heaviside: panel budget exceeded");
    const double panel_tol = cfg.abs_tol / static_cast<double>(n_panels);

    double acc = 0.0;
    for (std::size_t k = 0; k < n_panels; ++k) {
        const double a = std::min(k * panel, tau_direct);
        const double b = std::min(a + panel, tau_direct);
        if (b <= a) break;
        acc += detail::integrate_adaptive(combined, a, b, panel_tol, cfg.refine_depth);
    }
    if (!tail_needed) return acc;

    // Oscillatory tails past the direct window, one per sine term.
    auto term1 = [&](double tau) {
        const Complex m = m_on_axis(tau, p);
        return std::exp(tau * m.imag() * x) * std::sin(tau * (t - m.real() * x)) / (tau * kPi);
    };
    auto term2 = [&](double tau) {
        const Complex m = m_on_axis(tau, p);
        return std::exp(tau * m.imag() * x) * std::sin(tau * m.real() * x) / (tau * kPi);
    };
    if (std::abs(omega1) >= 2e-2) {
        acc += detail::euler_tail(term1, tau_direct, kPi / std::abs(omega1), cfg.abs_tol * 0.5, 48,
                                  cfg.refine_depth / 2 + 3);
    }
    // else: |term1| <= env |omega1| / pi; the remaining mass is below tolerance.
    if (omega2 >= 2e-2) {
        // Ensure the averaging starts well inside the asymptotic regime.
        double start2 = tau_direct;
        if (omega2 * start2 < 20.0) {
            const double more = std::min(20.0 / omega2, cfg.tau_max_cap);
            const double coarse = 8.8 / (omega2 * 4.0 + 1.0);
            double a = start2;
            while (a < more) {
                const double b = std::min(a + coarse, more);
                acc += detail::integrate_adaptive(term2, a, b, cfg.abs_tol * 0.05,
                                                  cfg.refine_depth);
                a = b;
            }
            start2 = more;
        }
        acc += detail::euler_tail(term2, start2, kPi / omega2, cfg.abs_tol * 0.5, 48,
                                  cfg.refine_depth / 2 + 3);
    } else {
        // Small omega2: integrate the slow term directly out to a few of its
        // periods; envelope decay plus 1/tau make the remainder negligible.
        const double far = std::min(40.0 / std::max(omega2, 1e-6), cfg.tau_max_cap);
        const double coarse = 8.8 / (omega2 * 4.0 + 1.0);
        double a = tau_direct;
        while (a < far) {
            const double b = std::min(a + coarse, far);
            acc += detail::integrate_adaptive(term2, a, b, cfg.abs_tol * 0.05, cfg.refine_depth);
            a = b;
        }
    }
    return acc;
}

/// Finite rod: theta-integration inside the Bromwich integral via
/// (e^{st} - 1)/s.
double heaviside_finite(double x, double t, const MaterialParams& p, const QuadratureConfig& cfg) {
    const auto col = detail::make_bromwich_column(x, p.rod_length, t, t, p, cfg);
    double acc = 0.0;
    for (std::size_t j = 0; j < col.p.size(); ++j) {
        const Complex s(col.s0, col.p[j]);
        const Complex v = (std::exp(s * t) - 1.0) / s * col.bracket[j];
        acc += v.real();
    }
    return acc / kPi;
}

}  // namespace

BoundarySignal BoundarySignal::dirac(double scale) {
    BoundarySignal s;
    s.kind = SignalKind::Dirac;
    s.scale = scale;
    return s;
}

BoundarySignal BoundarySignal::heaviside(double scale) {
    BoundarySignal s;
    s.kind = SignalKind::Heaviside;
    s.scale = scale;
    return s;
}

BoundarySignal BoundarySignal::sampled(double dt, std::vector<double> values, double scale) {
    BoundarySignal s;
    s.kind = SignalKind::Sampled;
    s.dt = dt;
    s.values = std::move(values);
    s.scale = scale;
    s.check();
    return s;
}

void BoundarySignal::check() const {
    if (kind == SignalKind::Sampled) {
        if (!(dt > 0.0)) throw std::invalid_argument("sampled signal: dt must be > 0");
        if (values.size() < 2) throw std::invalid_argument("sampled signal: need >= 2 samples");
    }
}

double response_dirac(double x, double t, const MaterialParams& p, const QuadratureConfig& cfg) {
    if (!(x > 0.0)) throw std::domain_error("response_dirac: x must be > 0");
    if (!(t > 0.0)) throw std::domain_error("response_dirac: t must be > 0");
    if (p.elastic_degenerate()) return 0.0;  // u = delta(t - x), symbolic
    if (p.finite_rod()) return kernel_finite(x, t, p.rod_length, p, cfg);
    return kernel_infinite(x, t, p, cfg);
}

double response_heaviside(double x, double t, const MaterialParams& p,
                          const QuadratureConfig& cfg) {
    if (x < 0.0) throw std::domain_error("response_heaviside: x must be >= 0");
    if (!(t > 0.0)) throw std::domain_error("response_heaviside: t must be > 0");
    if (x == 0.0) return 1.0;  // delta identity at the boundary: u(0,t) = H(t)
    p.check();
    cfg.check();
    if (p.elastic_degenerate()) {
        if (t > x) return 1.0;
        return (t == x) ? 0.5 : 0.0;
    }
    if (p.finite_rod()) {
        if (x > p.rod_length) throw std::domain_error("response_heaviside: x beyond rod length");
        return heaviside_finite(x, t, p, cfg);
    }
    return heaviside_infinite(x, t, p, cfg);
}

WaveField response_general(const BoundarySignal& signal, const std::vector<double>& xs,
                           const std::vector<double>& ts, const MaterialParams& p,
                           const QuadratureConfig& cfg) {
    if (signal.kind != SignalKind::Sampled)
        throw std::invalid_argument("response_general: signal must be Sampled");
    signal.check();
    p.check();
    cfg.check();
    if (xs.empty() || ts.empty()) throw std::invalid_argument("response_general: empty grid");
    const double dt = signal.dt;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double expected = static_cast<double>(i) * dt;
        if (std::abs(ts[i] - expected) > 1e-9 * std::max(1.0, expected))
            throw std::invalid_argument(
                "response_general: ts must be the uniform grid {0, dt, 2dt, ...} sharing the "
                "signal's dt (resampling is the caller's job)");
    }
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (!(xs[i] > xs[i - 1]))
            throw std::invalid_argument("response_general: xs must increase");
    if (xs.front() < 0.0) throw std::invalid_argument("response_general: x must be >= 0");

    WaveField field;
    field.xs = xs;
    field.ts = ts;
    field.params_used = p;
    field.signal_used = signal;
    field.u.assign(xs.size() * ts.size(), 0.0);
    const std::size_t nt = ts.size();

    if (p.elastic_degenerate()) {
        // K = delta(t - x): pure translation of the boundary signal.
        parallel_for(xs.size(), [&](std::size_t ix) {
            for (std::size_t it = 0; it < nt; ++it)
                field.u[ix * nt + it] = interp_signal(signal, ts[it] - xs[ix]);
        });
        return field;
    }

    const double nyquist_cap = kPi / dt;
    const bool finite = p.finite_rod();
    parallel_for(xs.size(), [&](std::size_t ix) {
        const double x = xs[ix];
        if (x == 0.0) {
            for (std::size_t it = 0; it < nt; ++it)
                field.u[ix * nt + it] =
                    (it < signal.values.size()) ? signal.values[it] * signal.scale : 0.0;
            return;
        }
        // Kernel sampled on the shared grid.
        std::vector<double> K(nt);
        if (finite) {
            const auto col = detail::make_bromwich_column(x, p.rod_length, ts.front(), ts.back(),
                                                          p, cfg);
            for (std::size_t it = 0; it < nt; ++it)
                K[it] = detail::eval_bromwich_column(col, std::max(ts[it], 1e-12));
        } else {
            const auto col = detail::make_kernel_column(x, ts.front(), ts.back(), p, cfg,
                                                        nyquist_cap);
            for (std::size_t it = 0; it < nt; ++it)
                K[it] = detail::eval_kernel_column(col, ts[it]);
        }
        // Trapezoid weights live on the kernel grid (1/2 only at its ends):
        // a unit-mass delta cell then convolves to K itself and time shifts
        // stay exact on the grid.
        for (std::size_t m = 0; m < nt; ++m) {
            double acc = 0.0;
            const std::size_t kmax = m;
            for (std::size_t k = 0; k <= kmax; ++k) {
                const std::size_t iu = m - k;
                const double uval =
                    (iu < signal.values.size()) ? signal.values[iu] * signal.scale : 0.0;
                if (uval == 0.0) continue;
                double w = 1.0;
                if (k == 0 || k == nt - 1) w = 0.5;
                acc += w * uval * K[k];
            }
            field.u[ix * nt + m] = acc * dt;
        }
    });
    return field;
}

WaveField simulate_field(const BoundarySignal& signal, const std::vector<double>& xs,
                         const std::vector<double>& ts, const MaterialParams& p,
                         const QuadratureConfig& cfg) {
    p.check();
    cfg.check();
    if (signal.kind == SignalKind::Sampled) return response_general(signal, xs, ts, p, cfg);

    if (xs.empty() || ts.empty()) throw std::invalid_argument("simulate_field: empty grid");
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (!(xs[i] > xs[i - 1])) throw std::invalid_argument("simulate_field: xs must increase");
    for (std::size_t i = 1; i < ts.size(); ++i)
        if (!(ts[i] > ts[i - 1])) throw std::invalid_argument("simulate_field: ts must increase");
    if (!(ts.front() > 0.0))
        throw std::invalid_argument("simulate_field: t must be > 0 (the t = 0 row is zero by the "
                                    "initial conditions)");

    WaveField field;
    field.xs = xs;
    field.ts = ts;
    field.params_used = p;
    field.signal_used = signal;
    const std::size_t nt = ts.size();
    field.u.assign(xs.size() * nt, 0.0);

    if (signal.kind == SignalKind::Dirac) {
        if (!xs.empty() && xs.front() == 0.0) field.delta_at_origin = true;
        if (p.elastic_degenerate()) return field;  // u = delta(t - x) everywhere, symbolic
        std::vector<double> xpos;
        for (double x : xs)
            if (x > 0.0) xpos.push_back(x);
        if (!xpos.empty()) {
            const KernelGrid kg = kernel_grid(xpos, ts, p, cfg);
            const std::size_t off = xs.size() - xpos.size();  // leading x = 0 rows
            for (std::size_t ix = 0; ix < xpos.size(); ++ix)
                for (std::size_t it = 0; it < nt; ++it)
                    field.u[(ix + off) * nt + it] = signal.scale * kg.at(ix, it);
        }
        return field;
    }

    // Heaviside
    parallel_for(xs.size(), [&](std::size_t ix) {
        for (std::size_t it = 0; it < nt; ++it)
            field.u[ix * nt + it] = signal.scale * response_heaviside(xs[ix], ts[it], p, cfg);
    });
    return field;
}

}  // namespace zenerwave
