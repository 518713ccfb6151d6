#include "zenerwave/modulus.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "zenerwave/errors.hpp"

namespace zenerwave {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

/// Principal-branch complex power s^eta = exp(eta log s), arg in (-pi, pi].
Complex cpow_principal(Complex s, Complex eta) { return std::exp(eta * std::log(s)); }

/// 1 + a s^alpha + b (s^{alpha+i beta} + s^{alpha-i beta}), literal
/// complex-power evaluation. This is the generic path; P_hat/Q_hat carry the
/// trigonometric expansion as the independent route.
Complex pq_tilde(Complex s, double a, double b, double alpha, double beta) {
    if (s == Complex(0.0, 0.0)) return {1.0, 0.0};
    const Complex up = cpow_principal(s, Complex(alpha, beta));
    const Complex dn = cpow_principal(s, Complex(alpha, -beta));
    const Complex mid = cpow_principal(s, Complex(alpha, 0.0));
    return Complex(1.0, 0.0) + a * mid + b * (up + dn);
}

/// Re/Im of 1 + a s^alpha + b (...) at s = rho e^{i phi} through f/g.
Complex pq_trig(double rho, double phi, double a, double b, double alpha, double beta) {
    if (rho == 0.0) return {1.0, 0.0};
    const double ra = std::pow(rho, alpha);
    const double tau = beta * std::log(rho);
    const double f = f_func(tau, phi, alpha, beta);
    const double g = g_func(tau, phi, alpha, beta);
    const double re = 1.0 + ra * (a * std::cos(alpha * phi) + 2.0 * b * f);
    const double im = ra * (a * std::sin(alpha * phi) + 2.0 * b * g);
    return {re, im};
}

}  // namespace

double f_func(double tau, double phi, double alpha, double beta) {
    return std::cos(tau) * std::cos(alpha * phi) * std::cosh(beta * phi) +
           std::sin(tau) * std::sin(alpha * phi) * std::sinh(beta * phi);
}

double g_func(double tau, double phi, double alpha, double beta) {
    return std::cos(tau) * std::sin(alpha * phi) * std::cosh(beta * phi) -
           std::sin(tau) * std::cos(alpha * phi) * std::sinh(beta * phi);
}

ExtremalValues extremal_values(double alpha, double beta, double phi) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("extremal_values: alpha in (0,1)");
    if (!(beta > 0.0)) throw std::domain_error("extremal_values: beta > 0");
    if (!(phi > 0.0 && phi <= kPi / 2.0))
        throw std::domain_error("extremal_values: phi must lie in (0, pi/2]");

    ExtremalValues ev;
    const double ca = std::cos(alpha * phi), sa = std::sin(alpha * phi);
    const double ch = std::cosh(beta * phi), th = std::tanh(beta * phi);
    const double tf = std::tan(alpha * phi) * th;     // tan tau_f
    const double tg = (ca / sa) * th;                 // -tan tau_g

    ev.f_max = ca * ch * std::sqrt(1.0 + tf * tf);
    ev.f_min = -ev.f_max;
    ev.g_max = sa * ch * std::sqrt(1.0 + tg * tg);
    ev.g_min = -ev.g_max;

    const double tau_f1 = std::atan(tf);  // in (0, pi/2)
    ev.tau_f_roots = {tau_f1, tau_f1 + kPi};
    const double a = std::atan(tg);       // tan tau_g = -tg < 0
    ev.tau_g_roots = {kPi - a, kTwoPi - a};
    return ev;
}

Complex P_tilde(Complex s, const MaterialParams& p) {
    return pq_tilde(s, p.a2, p.b2, p.alpha, p.beta);
}

Complex Q_tilde(Complex s, const MaterialParams& p) {
    return pq_tilde(s, p.a1, p.b1, p.alpha, p.beta);
}

Complex P_hat(double omega, const MaterialParams& p) {
    if (omega < 0.0) throw std::domain_error("P_hat: omega must be >= 0");
    return pq_trig(omega, kPi / 2.0, p.a2, p.b2, p.alpha, p.beta);
}

Complex Q_hat(double omega, const MaterialParams& p) {
    if (omega < 0.0) throw std::domain_error("Q_hat: omega must be >= 0");
    return pq_trig(omega, kPi / 2.0, p.a1, p.b1, p.alpha, p.beta);
}

Complex E_hat(double omega, const MaterialParams& p) {
    if (omega == 0.0) return {1.0, 0.0};
    const Complex ph = P_hat(omega, p);
    const Complex qh = Q_hat(omega, p);
    if (std::abs(qh) == 0.0) {
        std::ostringstream os;
        os << "E_hat: |Q^| vanished at omega = " << omega << " (inadmissible parameters)";
        throw NumericError(os.str());
    }
    return ph / qh;
}

Complex E_tilde(Complex s, const MaterialParams& p) {
    if (s == Complex(0.0, 0.0)) return {1.0, 0.0};
    const Complex q = Q_tilde(s, p);
    if (std::abs(q) == 0.0) {
        std::ostringstream os;
        os << "E_tilde: |Q~| vanished at s = (" << s.real() << ", " << s.imag() << ")";
        throw NumericError(os.str());
    }
    return P_tilde(s, p) / q;
}

Complex E_tilde_trig(Complex s, const MaterialParams& p) {
    if (s == Complex(0.0, 0.0)) return {1.0, 0.0};
    const double rho = std::abs(s);
    const double phi = std::arg(s);
    const Complex pt = pq_trig(rho, phi, p.a2, p.b2, p.alpha, p.beta);
    const Complex qt = pq_trig(rho, phi, p.a1, p.b1, p.alpha, p.beta);
    return pt / qt;
}

double re_E_numerator(Complex s, const MaterialParams& p, bool use_4a1b2) {
    const double rho = std::abs(s);
    const double phi = std::arg(s);
    if (rho == 0.0) return 1.0;
    const double ra = std::pow(rho, p.alpha);
    const double tau = p.beta * std::log(rho);
    const double f = f_func(tau, phi, p.alpha, p.beta);
    const double g = g_func(tau, phi, p.alpha, p.beta);
    const double B =
        ra * ((p.a1 + p.a2) * std::cos(p.alpha * phi) + 2.0 * (p.b1 + p.b2) * f);
    const double cross = use_4a1b2 ? 4.0 * p.a1 * p.b2 : 2.0 * (p.a2 * p.b1 + p.a1 * p.b2);
    const double C = ra * ra *
                     (p.a1 * p.a2 + cross * std::cos(tau) * std::cosh(p.beta * phi) +
                      4.0 * p.b1 * p.b2 * (f * f + g * g));
    return 1.0 + B + C;
}

Complex M_from_s(Complex s, const MaterialParams& p) {
    if (s.real() < 0.0)
        throw std::domain_error("M_from_s: Re s must be >= 0");
    if (s == Complex(0.0, 0.0)) return {1.0, 0.0};
    const Complex pt = P_tilde(s, p);
    const double abs_p = std::abs(pt);
    if (abs_p < 1e-300) {
        std::ostringstream os;
        os << "M_from_s: |P~| ~ 0 at s = (" << s.real() << ", " << s.imag()
           << "); parameters are inadmissible";
        throw NumericError(os.str());
    }
    const Complex m2 = Q_tilde(s, p) / pt;
    // Principal square root halves the principal argument: Re M >= 0.
    return std::sqrt(m2);
}

FrequencyResponse sweep_frequency_response(const MaterialParams& p, double omega_lo,
                                           double omega_hi, std::size_t n) {
    if (!(omega_lo > 0.0 && omega_hi > omega_lo) || n < 2)
        throw std::invalid_argument("sweep_frequency_response: need 0 < lo < hi and n >= 2");
    FrequencyResponse fr;
    fr.omegas.resize(n);
    fr.E.resize(n);
    fr.storage.resize(n);
    fr.loss.resize(n);
    fr.M.resize(n);
    const double lr = std::log(omega_hi / omega_lo);
    for (std::size_t i = 0; i < n; ++i) {
        const double w = omega_lo * std::exp(lr * static_cast<double>(i) / (n - 1));
        fr.omegas[i] = w;
        fr.E[i] = E_hat(w, p);
        fr.storage[i] = fr.E[i].real();
        fr.loss[i] = fr.E[i].imag();
        fr.M[i] = M_from_s(Complex(0.0, w), p);
    }
    return fr;
}

std::optional<double> im_M2_decay_exponent(const MaterialParams& p, double tau_lo, double tau_hi,
                                           std::size_t n) {
    if (!(tau_lo > 0.0) || !(tau_hi / tau_lo >= 100.0))
        throw std::invalid_argument("im_M2_decay_exponent: need tau_hi/tau_lo >= 100");
    if (n < 8) throw std::invalid_argument("im_M2_decay_exponent: need n >= 8");

    // Least squares of log|Im M^2| against log tau.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t used = 0;
    const double lr = std::log(tau_hi / tau_lo);
    for (std::size_t i = 0; i < n; ++i) {
        const double tau = tau_lo * std::exp(lr * static_cast<double>(i) / (n - 1));
        const Complex m = M_from_s(Complex(0.0, tau), p);
        const double im2 = std::abs((m * m).imag());
        if (im2 < 1e-300) continue;
        const double x = std::log(tau), y = std::log(im2);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++used;
    }
    if (used < n / 2) return std::nullopt;  // Im M^2 == 0: no decay to measure
    const double denom = used * sxx - sx * sx;
    return (used * sxy - sx * sy) / denom;
}

namespace {

struct WindingAccum {
    double total = 0.0;
    double min_abs = std::numeric_limits<double>::infinity();
    bool on_contour_zero = false;
    bool unresolved = false;
};

/// Adds the principal-value argument change of P~ between contour parameters
/// u0 and u1 (points map(u)), bisecting while the step exceeds pi/2.
void accumulate_arg(const MaterialParams& p, const std::function<Complex(double)>& map, double u0,
                    double u1, Complex f0, Complex f1, int depth, WindingAccum& acc) {
    const double d = std::arg(f1 / f0);
    if (std::abs(d) <= kPi / 2.0 || depth >= 20) {
        if (std::abs(d) > kPi / 2.0) acc.unresolved = true;
        acc.total += d;
        return;
    }
    const double um = 0.5 * (u0 + u1);
    const Complex fm = P_tilde(map(um), p);
    const double am = std::abs(fm);
    acc.min_abs = std::min(acc.min_abs, am);
    if (am < 1e-9) acc.on_contour_zero = true;
    accumulate_arg(p, map, u0, um, f0, fm, depth + 1, acc);
    accumulate_arg(p, map, um, u1, fm, f1, depth + 1, acc);
}

void walk_piece(const MaterialParams& p, const std::function<Complex(double)>& map,
                std::size_t n_samples, WindingAccum& acc) {
    Complex prev = P_tilde(map(0.0), p);
    acc.min_abs = std::min(acc.min_abs, std::abs(prev));
    if (std::abs(prev) < 1e-9) acc.on_contour_zero = true;
    for (std::size_t k = 1; k <= n_samples; ++k) {
        const double u = static_cast<double>(k) / static_cast<double>(n_samples);
        const Complex cur = P_tilde(map(u), p);
        const double a = std::abs(cur);
        acc.min_abs = std::min(acc.min_abs, a);
        if (a < 1e-9) acc.on_contour_zero = true;
        accumulate_arg(p, map, (k - 1.0) / n_samples, u, prev, cur, 0, acc);
        prev = cur;
    }
}

}  // namespace

WindingCertificate winding_number(const MaterialParams& p, double epsilon, double R,
                                  std::size_t n_samples) {
    if (!(epsilon > 0.0 && epsilon < 1.0 && R > 1.0))
        throw std::invalid_argument("winding_number: need 0 < epsilon < 1 < R");
    if (n_samples < 1000)
        throw std::invalid_argument("winding_number: need >= 1000 samples per piece");

    // Counterclockwise boundary of {eps <= |s| <= R, Re s >= 0}. The real
    // segment of the paper's quarter contour and its mirror cancel, so the
    // positive real axis is interior here and real zeros are counted.
    const double llo = std::log(epsilon), lhi = std::log(R);
    WindingAccum acc;

    // lower imaginary segment: -i eps -> -i R (log-spaced in |s|)
    walk_piece(p, [&](double u) { return Complex(0.0, -std::exp(llo + u * (lhi - llo))); },
               n_samples, acc);
    // outer arc: R e^{i phi}, phi from -pi/2 to +pi/2
    walk_piece(p, [&](double u) {
        const double phi = -kPi / 2.0 + u * kPi;
        return Complex(R * std::cos(phi), R * std::sin(phi));
    }, n_samples, acc);
    // upper imaginary segment: i R -> i eps
    walk_piece(p, [&](double u) { return Complex(0.0, std::exp(lhi + u * (llo - lhi))); },
               n_samples, acc);
    // inner arc: eps e^{i phi}, phi from pi/2 to -pi/2
    walk_piece(p, [&](double u) {
        const double phi = kPi / 2.0 - u * kPi;
        return Complex(epsilon * std::cos(phi), epsilon * std::sin(phi));
    }, n_samples, acc);

    WindingCertificate cert;
    cert.raw_winding = acc.total / kTwoPi;
    cert.winding = std::lround(cert.raw_winding);
    cert.epsilon = epsilon;
    cert.R = R;
    cert.samples = n_samples;
    cert.min_abs_P = acc.min_abs;
    cert.valid = !acc.on_contour_zero && !acc.unresolved &&
                 std::abs(cert.raw_winding - static_cast<double>(cert.winding)) < 1e-3;
    return cert;
}

}  // namespace zenerwave
