#ifndef ZENERWAVE_MODULUS_HPP
#define ZENERWAVE_MODULUS_HPP

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "zenerwave/params.hpp"

namespace zenerwave {

using Complex = std::complex<double>;

/// f(tau,phi) = cos(tau)cos(alpha phi)cosh(beta phi) + sin(tau)sin(alpha phi)sinh(beta phi).
/// Together with g it carries the real/imaginary split of s^(alpha+i beta) + s^(alpha-i beta)
/// at s = rho e^{i phi}, tau = beta ln(rho).
double f_func(double tau, double phi, double alpha, double beta);

/// g(tau,phi) = cos(tau)sin(alpha phi)cosh(beta phi) - sin(tau)cos(alpha phi)sinh(beta phi).
double g_func(double tau, double phi, double alpha, double beta);

struct ExtremalValues {
    double f_max = 0.0, f_min = 0.0;
    double g_max = 0.0, g_min = 0.0;
    std::array<double, 2> tau_f_roots{};  ///< in (0,pi/2) and (pi,3pi/2)
    std::array<double, 2> tau_g_roots{};  ///< in (pi/2,pi) and (3pi/2,2pi)
};

/// Closed-form extrema of f and g over tau for fixed phi in (0, pi/2], plus
/// the stationary points tan(tau_f) = tg(alpha phi)tgh(beta phi) and
/// tan(tau_g) = -ctg(alpha phi)tgh(beta phi) mapped into [0, 2pi).
/// phi == 0 is rejected (g degenerates identically).
ExtremalValues extremal_values(double alpha, double beta, double phi);

/// P~(s) = 1 + a2 s^alpha + b2 (s^{alpha+i beta} + s^{alpha-i beta}),
/// principal-branch complex powers, Re s >= -0 permitted anywhere off the cut.
Complex P_tilde(Complex s, const MaterialParams& params);
/// Q~(s) with the (a1, b1) pair.
Complex Q_tilde(Complex s, const MaterialParams& params);

/// P^(omega) = P~(i omega) evaluated through the trigonometric expansion
/// (f/g path); the complex-power path above must agree — both are kept and
/// cross-checked because branch handling is the dominant bug class here.
Complex P_hat(double omega, const MaterialParams& params);
Complex Q_hat(double omega, const MaterialParams& params);

/// Complex modulus E^ = P^/Q^ on the positive frequency axis; E^(0) = 1.
/// Throws NumericError if |Q^| vanishes (cannot occur for admissible params).
Complex E_hat(double omega, const MaterialParams& params);

/// E~(s) = P~(s)/Q~(s) via the generic complex-power path, Re s >= 0.
Complex E_tilde(Complex s, const MaterialParams& params);

/// E~(s) assembled from the f/g trigonometric split at s = rho e^{i phi}.
/// Independent algebraic route used for cross-validation.
Complex E_tilde_trig(Complex s, const MaterialParams& params);

/// Real part of E~ multiplied by |Q~|^2, i.e. the (1+B+C) numerator, with the
/// rho^{2alpha} cross term written either as 2(a2 b1 + a1 b2)cos()cosh()
/// (section-2 form, `use_4a1b2 = false`) or as 4 a1 b2 cos()cosh()
/// (section-3 form). The two coincide exactly under a2 b1 = a1 b2.
double re_E_numerator(Complex s, const MaterialParams& params, bool use_4a1b2);

/// Wave function M(s) = principal sqrt of Q~(s)/P~(s), Re M >= 0; M(0) = 1.
/// Requires Re s >= 0. Throws NumericError when |P~| is numerically zero
/// (inadmissible parameters), reporting the offending s.
Complex M_from_s(Complex s, const MaterialParams& params);

/// Sampled complex modulus along a frequency grid with storage/loss split.
struct FrequencyResponse {
    std::vector<double> omegas;
    std::vector<Complex> E;
    std::vector<double> storage;  ///< Re E^
    std::vector<double> loss;     ///< Im E^
    std::vector<Complex> M;       ///< M(i omega), exported alongside E^
};

/// Log-spaced sweep omega in [omega_lo, omega_hi], n points.
FrequencyResponse sweep_frequency_response(const MaterialParams& params, double omega_lo,
                                           double omega_hi, std::size_t n);

/// Least-squares slope of log|Im M^2(i tau)| against log tau on a log grid.
/// Returns nullopt when Im M^2 vanishes identically (elastic case).
/// Requires tau_hi/tau_lo >= 100 and n >= 8.
std::optional<double> im_M2_decay_exponent(const MaterialParams& params, double tau_lo,
                                           double tau_hi, std::size_t n);

/// Argument-principle certificate for zero-freeness of P~ in the right
/// half-plane. The contour is the boundary of {eps <= |s| <= R, Re s >= 0}:
/// the two imaginary-axis segments plus the outer and inner arcs (the
/// quarter-plane pieces gamma_R1..R4 continued by conjugate symmetry).
struct WindingCertificate {
    long winding = 0;        ///< zeros enclosed (conjugate pairs count twice)
    double raw_winding = 0;  ///< net delta-arg / 2pi before rounding
    double epsilon = 0;
    double R = 0;
    std::size_t samples = 0;  ///< base samples per contour piece
    double min_abs_P = 0;
    bool valid = false;  ///< integer within 1e-3 and no on-contour zero
};

/// Sums principal-value phase steps of P~ along the contour, bisecting any
/// step with |delta arg| > pi/2 up to depth 20. Admissible params give
/// winding 0. |P~| < 1e-9 at any sample marks the certificate invalid.
WindingCertificate winding_number(const MaterialParams& params, double epsilon, double R,
                                  std::size_t n_samples);

}  // namespace zenerwave

#endif
