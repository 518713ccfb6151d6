#include "zenerwave/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "zenerwave/detail/quadrature.hpp"
#include "zenerwave/errors.hpp"
#include "zenerwave/parallel.hpp"

namespace zenerwave {

namespace {

constexpr double kPi = 3.14159265358979323846;

/// Phase budget per fixed Gauss panel: GL15 resolves ~8.8 rad of cosine
/// phase to better than 1e-12.
constexpr double kPanelPhase = 8.8;

void require_admissible_shape(const MaterialParams& p) {
    p.check();
    if (p.a2 < p.a1)
        throw std::domain_error("inversion: reversed regime a2 < a1 is out of scope");
}

/// M(s) through the shared-log identity
/// s^{a+ib} + s^{a-ib} = 2 s^a cos(b log s); one log and two exps per call.
Complex m_fast(Complex s, const MaterialParams& p) {
    const Complex ln = std::log(s);
    const Complex sa = std::exp(p.alpha * ln);
    const Complex cb = std::cos(p.beta * ln);
    const Complex pt = 1.0 + sa * (p.a2 + 2.0 * p.b2 * cb);
    const Complex qt = 1.0 + sa * (p.a1 + 2.0 * p.b1 * cb);
    return std::sqrt(qt / pt);
}

/// log of the half-line envelope exp(tau Im M(i tau) x); <= 0 under
/// admissible parameters (Im M(i tau) < 0).
double envelope_log(double tau, double x, const MaterialParams& p) {
    return tau * m_fast(Complex(0.0, tau), p).imag() * x;
}

/// Smallest tau with envelope below `threshold`, by doubling scan plus
/// bisection. Returns tau_cap if the cutoff is not reached below it (the
/// caller decides whether that is an error).
double envelope_cutoff(double x, const MaterialParams& p, double threshold, double tau_cap) {
    const double log_thr = std::log(threshold);
    double lo = 1e-3;
    if (envelope_log(lo, x, p) < log_thr) return lo;
    double hi = lo;
    while (hi < tau_cap) {
        hi = std::min(hi * 2.0, tau_cap);
        if (envelope_log(hi, x, p) < log_thr) {
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                (envelope_log(mid, x, p) < log_thr ? hi : lo) = mid;
            }
            // Margin absorbs the oscillatory modulation of Im M.
            return std::min(hi * 1.25, tau_cap);
        }
        lo = hi;
    }
    return tau_cap;
}

double auto_s0(double t, const QuadratureConfig& cfg) {
    return cfg.bromwich_s0_auto ? 1.0 / std::max(t, 1.0) : cfg.bromwich_s0;
}

/// Overflow-safe finite-rod bracket
///   [exp(-sMx) - exp(-sM(2l-x))] / (1 - exp(-2sMl)),
/// all exponents with negative real part for Re(sM) > 0.
Complex finite_bracket(double x, double l, Complex s, const MaterialParams& p) {
    const Complex sm = s * m_fast(s, p);
    const Complex e1 = std::exp(-sm * x);
    const Complex e2 = std::exp(-sm * (2.0 * l - x));
    const Complex e3 = std::exp(-sm * (2.0 * l));
    const Complex den = 1.0 - e3;
    if (std::abs(den) < 1e-14) {
        std::ostringstream os;
        os << "finite_bracket: 1 - exp(-2sMl) ~ 0 at s = (" << s.real() << ", " << s.imag() << ")";
        throw NumericError(os.str());
    }
    return (e1 - e2) / den;
}

}  // namespace

void QuadratureConfig::check() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
        throw std::invalid_argument("quadrature config: tolerances must be > 0");
    if (!(tau_max_cap >= 1e2))
        throw std::invalid_argument("quadrature config: tau_max_cap must be >= 100");
    if (!(bromwich_s0 > 0.0))
        throw std::invalid_argument("quadrature config: bromwich_s0 must be > 0");
    if (!(bromwich_p_max > 0.0) || !(panel_density > 0.0) || panel_max == 0 || refine_depth < 0)
        throw std::invalid_argument("quadrature config: bad discretization fields");
}

RelaxationKernelValue relaxation_kernel(double t, const MaterialParams& p,
                                        const QuadratureConfig& cfg) {
    require_admissible_shape(p);
    cfg.check();
    if (!(t > 0.0)) throw std::domain_error("relaxation_kernel: t must be > 0");
    if (p.elastic_degenerate()) return {1.0, 0.0};
    if (p.a1 == 0.0)
        throw std::domain_error(
            "relaxation_kernel: a1 = 0 makes the transform ratio unbounded "
            "(distributional kernel of higher order)");

    RelaxationKernelValue out;
    out.delta_weight = p.a2 / p.a1;

    // Regular part: Bromwich line pushed onto the imaginary axis (P~, Q~
    // have no right-half-plane zeros), G = E~ - a2/a1 decays like tau^-alpha,
    // so the oscillatory tail is summed by iterated averaging.
    const double dw = out.delta_weight;
    auto transform = [&](double tau) {
        const Complex s(0.0, tau);
        const Complex ln = std::log(s);
        const Complex sa = std::exp(p.alpha * ln);
        const Complex cb = std::cos(p.beta * ln);
        const Complex pt = 1.0 + sa * (p.a2 + 2.0 * p.b2 * cb);
        const Complex qt = 1.0 + sa * (p.a1 + 2.0 * p.b1 * cb);
        return pt / qt - dw;
    };
    out.regular_part =
        detail::fourier_cosine_half_line(transform, t, cfg.abs_tol, cfg.refine_depth);
    return out;
}

double kernel_infinite(double x, double t, const MaterialParams& p, const QuadratureConfig& cfg) {
    require_admissible_shape(p);
    cfg.check();
    if (!(x > 0.0)) throw std::domain_error("kernel_infinite: x must be > 0 (x = 0 is delta(t))");
    if (!(t > 0.0)) throw std::domain_error("kernel_infinite: t must be > 0");
    if (p.elastic_degenerate()) return 0.0;  // K = delta(t - x), carried symbolically

    const double tau_star = envelope_cutoff(x, p, cfg.abs_tol * 1e-2, cfg.tau_max_cap);
    if (std::exp(envelope_log(tau_star, x, p)) > cfg.abs_tol) {
        std::ostringstream os;
        os << "kernel_infinite: envelope exp(tau Im M x) stays above abs_tol up to tau_max_cap at x = "
           << x << "; increase x or treat the kernel as near-delta analytically";
        throw NumericError(os.str());
    }

    const double r_inf = std::sqrt(p.a1 / p.a2);
    auto integrand = [&](double tau) {
        const Complex m = m_fast(Complex(0.0, tau), p);
        return std::exp(tau * m.imag() * x) * std::cos(tau * (t - m.real() * x)) / kPi;
    };

    const double panel = kPi / std::max(std::abs(t - x * r_inf), 1.0) / cfg.panel_density;
    const std::size_t n_panels = static_cast<std::size_t>(std::ceil(tau_star / panel));
    if (n_panels > cfg.panel_max)
        throw NumericError("kernel_infinite: panel budget exceeded; relax tolerances");
    const double panel_tol = cfg.abs_tol / static_cast<double>(n_panels);

    double acc = 0.0;
    for (std::size_t k = 0; k < n_panels; ++k) {
        const double a = std::min(k * panel, tau_star);
        const double b = std::min(a + panel, tau_star);
        if (b <= a) break;
        acc += detail::integrate_adaptive(integrand, a, b, panel_tol, cfg.refine_depth);
    }
    return acc;
}

double kernel_finite(double x, double t, double l, const MaterialParams& p,
                     const QuadratureConfig& cfg) {
    require_admissible_shape(p);
    cfg.check();
    if (!(l > 0.0) || std::isinf(l)) throw std::domain_error("kernel_finite: need finite l > 0");
    if (!(x > 0.0) || x > l) throw std::domain_error("kernel_finite: need 0 < x <= l");
    if (!(t > 0.0)) throw std::domain_error("kernel_finite: t must be > 0");
    if (x == l) return 0.0;  // bracket vanishes identically: u(l,t) = 0
    if (p.elastic_degenerate()) {
        // Image series of deltas at t = x, 2l-x, 2l+x, ...; regular part 0.
        return 0.0;
    }

    const double s0 = auto_s0(t, cfg);
    auto magnitude = [&](double pp) {
        const Complex s(s0, pp);
        return std::exp(s0 * t) * std::abs(finite_bracket(x, l, s, p)) / kPi;
    };

    // Envelope scan in p, as for the half-line kernel.
    double p_star = cfg.bromwich_p_max;
    {
        double lo = 1e-3;
        const double thr = cfg.abs_tol * 1e-2;
        if (magnitude(lo) < thr) {
            p_star = lo;
        } else {
            double hi = lo;
            bool found = false;
            while (hi < cfg.bromwich_p_max) {
                hi = std::min(hi * 2.0, cfg.bromwich_p_max);
                if (magnitude(hi) < thr) {
                    for (int it = 0; it < 60; ++it) {
                        const double mid = 0.5 * (lo + hi);
                        (magnitude(mid) < thr ? hi : lo) = mid;
                    }
                    p_star = std::min(hi * 1.25, cfg.bromwich_p_max);
                    found = true;
                    break;
                }
                lo = hi;
            }
            if (!found && magnitude(cfg.bromwich_p_max) > cfg.abs_tol) {
                std::ostringstream os;
                os << "kernel_finite: folded integrand tail " << magnitude(cfg.bromwich_p_max)
                   << " exceeds abs_tol at p_max = " << cfg.bromwich_p_max << " (x = " << x
                   << ", t = " << t << ")";
                throw NumericError(os.str());
            }
        }
    }

    auto integrand = [&](double pp) {
        const Complex s(s0, pp);
        const Complex v = std::exp(s * t) * finite_bracket(x, l, s, p);
        return v.real() / kPi;
    };

    const double omega = std::max(std::abs(t - x * std::sqrt(p.a1 / p.a2)), 1.0) + 0.3 * x;
    const double panel = kPanelPhase / omega / cfg.panel_density;
    const std::size_t n_panels = static_cast<std::size_t>(std::ceil(p_star / panel));
    if (n_panels > cfg.panel_max)
        throw NumericError("kernel_finite: panel budget exceeded; relax tolerances");
    const double panel_tol = cfg.abs_tol / static_cast<double>(std::max<std::size_t>(n_panels, 1));

    double acc = 0.0;
    for (std::size_t k = 0; k < n_panels; ++k) {
        const double a = std::min(k * panel, p_star);
        const double b = std::min(a + panel, p_star);
        if (b <= a) break;
        acc += detail::integrate_adaptive(integrand, a, b, panel_tol, cfg.refine_depth);
    }
    return acc;
}

Complex kernel_transform(double x, Complex s, double l, const MaterialParams& p) {
    require_admissible_shape(p);
    if (!(s.real() > 0.0)) throw std::domain_error("kernel_transform: Re s must be > 0");
    if (x < 0.0) throw std::domain_error("kernel_transform: x must be >= 0");
    if (x == 0.0) return {1.0, 0.0};
    if (std::isinf(l)) return std::exp(-s * m_fast(s, p) * x);
    if (x > l) throw std::domain_error("kernel_transform: x must be <= l");
    return finite_bracket(x, l, s, p);
}

KernelGrid kernel_grid(const std::vector<double>& xs, const std::vector<double>& ts,
                       const MaterialParams& p, const QuadratureConfig& cfg) {
    require_admissible_shape(p);
    cfg.check();
    if (xs.empty() || ts.empty()) throw std::invalid_argument("kernel_grid: empty grid");
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (!(xs[i] > xs[i - 1])) throw std::invalid_argument("kernel_grid: xs must increase");
    for (std::size_t i = 1; i < ts.size(); ++i)
        if (!(ts[i] > ts[i - 1])) throw std::invalid_argument("kernel_grid: ts must increase");
    if (!(xs.front() > 0.0) || !(ts.front() > 0.0))
        throw std::invalid_argument("kernel_grid: grid must be positive");

    KernelGrid grid;
    grid.xs = xs;
    grid.ts = ts;
    grid.config_used = cfg;
    grid.values.assign(xs.size() * ts.size(), 0.0);

    if (p.elastic_degenerate()) {
        grid.analytic_delta = true;
        grid.delta_weight = 1.0;  // K(x,t) = delta(t - x); sampled values stay 0
        return grid;
    }

    const bool finite = p.finite_rod();
    const double t_lo = ts.front(), t_hi = ts.back();
    parallel_for(xs.size(), [&](std::size_t ix) {
        if (finite) {
            const auto col = detail::make_bromwich_column(xs[ix], p.rod_length, t_lo, t_hi, p, cfg);
            for (std::size_t it = 0; it < ts.size(); ++it)
                grid.values[ix * ts.size() + it] = detail::eval_bromwich_column(col, ts[it]);
        } else {
            const auto col = detail::make_kernel_column(
                xs[ix], t_lo, t_hi, p, cfg, std::numeric_limits<double>::infinity());
            for (std::size_t it = 0; it < ts.size(); ++it)
                grid.values[ix * ts.size() + it] = detail::eval_kernel_column(col, ts[it]);
        }
    });
    return grid;
}

namespace detail {

KernelColumn make_kernel_column(double x, double t_lo, double t_hi, const MaterialParams& p,
                                const QuadratureConfig& cfg, double tau_cap) {
    if (!(x > 0.0)) throw std::domain_error("kernel column: x must be > 0");
    const double cap = std::min(cfg.tau_max_cap, tau_cap);
    const double tau_star = envelope_cutoff(x, p, cfg.abs_tol * 1e-2, cap);
    if (tau_star >= cap && cap >= cfg.tau_max_cap &&
        std::exp(envelope_log(cap, x, p)) > cfg.abs_tol) {
        std::ostringstream os;
        os << "kernel column: envelope not below abs_tol by tau_max_cap at x = " << x;
        throw NumericError(os.str());
    }

    // Worst-case phase speed over the column: d/dtau [tau R(tau)] ranges
    // between R(inf) = sqrt(a1/a2) and R(0) = 1 (plus drift slack).
    const double r_inf = std::sqrt(p.a1 / p.a2);
    double omega = 1.0;
    for (double tt : {t_lo, t_hi}) {
        omega = std::max(omega, std::abs(tt - x * r_inf));
        omega = std::max(omega, std::abs(tt - x));
    }
    omega = (omega + 0.3 * std::max(x * r_inf, 1.0)) * cfg.panel_density;

    const double panel = std::min(kPanelPhase / omega, tau_star / 8.0);
    const std::size_t n_panels = static_cast<std::size_t>(std::ceil(tau_star / panel));
    if (n_panels > cfg.panel_max)
        throw NumericError("kernel column: panel budget exceeded");

    const auto& rule = gl15();
    KernelColumn col;
    col.x = x;
    col.tau_star = tau_star;
    const std::size_t n_nodes = n_panels * rule.node.size();
    col.tau.resize(n_nodes);
    col.wgt.resize(n_nodes);
    col.env.resize(n_nodes);
    col.phase.resize(n_nodes);
    for (std::size_t k = 0; k < n_panels; ++k) {
        const double a = k * panel;
        const double b = std::min(a + panel, tau_star);
        const double c = 0.5 * (a + b), h = 0.5 * (b - a);
        for (std::size_t j = 0; j < rule.node.size(); ++j) {
            const std::size_t idx = k * rule.node.size() + j;
            col.tau[idx] = c + h * rule.node[j];
            col.wgt[idx] = h * rule.weight[j];
        }
    }
    parallel_for(n_nodes, [&](std::size_t j) {
        const Complex m = m_fast(Complex(0.0, col.tau[j]), p);
        col.env[j] = std::exp(col.tau[j] * m.imag() * x) * col.wgt[j];
        col.phase[j] = col.tau[j] * m.real() * x;
    });
    return col;
}

double eval_kernel_column(const KernelColumn& col, double t) {
    double acc = 0.0;
    const std::size_t n = col.tau.size();
    for (std::size_t j = 0; j < n; ++j) acc += col.env[j] * std::cos(col.tau[j] * t - col.phase[j]);
    return acc / kPi;
}

BromwichColumn make_bromwich_column(double x, double l, double t_lo, double t_hi,
                                    const MaterialParams& p, const QuadratureConfig& cfg) {
    if (!(x > 0.0) || x > l) throw std::domain_error("bromwich column: need 0 < x <= l");
    BromwichColumn col;
    col.x = x;
    col.l = l;
    col.s0 = auto_s0(t_hi, cfg);

    auto magnitude = [&](double pp) {
        const Complex s(col.s0, pp);
        return std::exp(col.s0 * t_hi) * std::abs(finite_bracket(x, l, s, p)) / kPi;
    };
    double p_star = cfg.bromwich_p_max;
    double lo = 1e-3;
    const double thr = cfg.abs_tol * 1e-2;
    if (magnitude(lo) < thr) {
        p_star = 1.0;  // keep a minimal window so low frequencies are represented
    } else {
        double hi = lo;
        bool found = false;
        while (hi < cfg.bromwich_p_max) {
            hi = std::min(hi * 2.0, cfg.bromwich_p_max);
            if (magnitude(hi) < thr) {
                for (int it = 0; it < 60; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    (magnitude(mid) < thr ? hi : lo) = mid;
                }
                p_star = std::min(hi * 1.25, cfg.bromwich_p_max);
                found = true;
                break;
            }
            lo = hi;
        }
        if (!found && magnitude(cfg.bromwich_p_max) > cfg.abs_tol)
            throw NumericError("bromwich column: tail exceeds abs_tol at p_max");
    }
    col.p_star = p_star;

    double omega = 1.0;
    for (double tt : {t_lo, t_hi}) {
        omega = std::max(omega, std::abs(tt - x * std::sqrt(p.a1 / p.a2)));
        omega = std::max(omega, std::abs(tt - x));
    }
    omega = (omega + 0.3 * std::max(x, 1.0)) * cfg.panel_density;
    const double panel = std::min(kPanelPhase / omega, p_star / 8.0);
    const std::size_t n_panels = static_cast<std::size_t>(std::ceil(p_star / panel));
    if (n_panels > cfg.panel_max) throw NumericError("bromwich column: panel budget exceeded");

    const auto& rule = gl15();
    const std::size_t n_nodes = n_panels * rule.node.size();
    col.p.resize(n_nodes);
    col.wgt.resize(n_nodes);
    col.bracket.resize(n_nodes);
    for (std::size_t k = 0; k < n_panels; ++k) {
        const double a = k * panel;
        const double b = std::min(a + panel, p_star);
        const double c = 0.5 * (a + b), h = 0.5 * (b - a);
        for (std::size_t j = 0; j < rule.node.size(); ++j) {
            const std::size_t idx = k * rule.node.size() + j;
            col.p[idx] = c + h * rule.node[j];
            col.wgt[idx] = h * rule.weight[j];
        }
    }
    parallel_for(n_nodes, [&](std::size_t j) {
        col.bracket[j] = finite_bracket(x, l, Complex(col.s0, col.p[j]), p) * col.wgt[j];
    });
    return col;
}

double eval_bromwich_column(const BromwichColumn& col, double t) {
    const double gain = std::exp(col.s0 * t);
    double acc = 0.0;
    for (std::size_t j = 0; j < col.p.size(); ++j) {
        const double c = std::cos(col.p[j] * t), s = std::sin(col.p[j] * t);
        acc += c * col.bracket[j].real() - s * col.bracket[j].imag();
    }
    return gain * acc / kPi;
}

Complex kernel_finite_two_sided(double x, double t, double l, const MaterialParams& p,
                                const QuadratureConfig& cfg) {
    const auto col = make_bromwich_column(x, l, t, t, p, cfg);
    // (1/2 pi i) Int e^{st} B(x,s) ds over the unfolded segment, both halves
    // evaluated independently (no conjugate shortcut).
    Complex acc(0.0, 0.0);
    for (std::size_t j = 0; j < col.p.size(); ++j) {
        for (double sign : {1.0, -1.0}) {
            const Complex s(col.s0, sign * col.p[j]);
            const Complex v = std::exp(s * t) * finite_bracket(x, l, s, p);
            acc += v * (col.wgt[j] / (2.0 * kPi));
        }
    }
    return acc;
}

}  // namespace detail

}  // namespace zenerwave
