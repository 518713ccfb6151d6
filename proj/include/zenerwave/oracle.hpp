#ifndef ZENERWAVE_ORACLE_HPP
#define ZENERWAVE_ORACLE_HPP

#include <complex>
#include <cstddef>
#include <vector>

#include "zenerwave/inversion.hpp"
#include "zenerwave/params.hpp"

namespace zenerwave {

/// Independent time-domain discretization of the fractional operators
/// (Gruenwald-Letnikov), used to validate the frequency-domain pipeline on
/// small instances. Accuracy is O(dt) by design: the oracle certifies
/// structure, not precision.

using ComplexD = std::complex<double>;

/// Binomial weights w0 = 1, w_k = w_{k-1} (1 - (order+1)/k). For real order
/// in (0,1) the weights alternate in sign after w0 and sum to zero.
std::vector<ComplexD> gl_weights(ComplexD order, std::size_t n);

/// GL series bound to a step size.
struct GlSeries {
    ComplexD order;
    double dt = 0.0;
    std::vector<ComplexD> weights;

    static GlSeries build(ComplexD order, double dt, std::size_t n);
};

/// Causal uniformly sampled path starting at t = 0 (implicitly 0 for t < 0).
struct SampledPath {
    double dt = 0.0;
    std::vector<double> values;
};

/// (D^eta u)_m = dt^-eta sum_{k=0}^{m} w_k u_{m-k}. Complex-valued output is
/// permitted internally; real orders give real results up to rounding.
std::vector<ComplexD> frac_deriv_gl(const SampledPath& path, ComplexD order);

/// Symmetrized complex-order derivative (1/2)(D^{alpha+i beta} + D^{alpha-i beta})
/// with unit phase factors (dimensionless form). Output is real to 1e-13
/// by conjugate cancellation; implemented as the real part of one branch.
std::vector<double> sym_deriv(const SampledPath& path, double alpha, double beta);

/// Sup-norm of (constitutive LHS - RHS) over interior cells, normalized by
/// the sup-norm of the RHS:
///   LHS = sigma + a1 D^alpha sigma + b1 Dbar sigma,
///   RHS = eps   + a2 D^alpha eps   + b2 Dbar eps.
/// Paths must share dt and length.
double constitutive_residual(const SampledPath& sigma, const SampledPath& epsilon,
                             const MaterialParams& params);

// Cross-pipeline fixtures: inputs for the residual check generated through
// the frequency-domain route, so the GL operators certify an independent
// pipeline rather than themselves.

/// Stress response to eps(t) = 1 - e^{-t} for a real-order Zener material
/// (b1 = b2 = 0), computed by E~ multiplication and inversion:
///   sigma(t) = (1 - e^{-t}) + (1/pi) Int Re[e^{i tau t} (E~(i tau)-1)/(i tau (i tau + 1))] dtau.
double zener_cross_stress(double t, const MaterialParams& params, double abs_tol);

struct FullSystemResult {
    double residual = 0.0;
    double x_probe = 0.0;
    double dt = 0.0;
};

/// Full-system cross-check: a smooth sampled pulse is propagated through the
/// convolution solver; eps = du/dx by central differences, sigma from the
/// equation of motion d sigma/dx = d^2 u/dt^2 by finite differences and
/// trapezoid x-integration from the quiescent far side; the constitutive
/// residual ties the three field equations together.
FullSystemResult full_system_residual(const MaterialParams& params, double dt,
                                      const QuadratureConfig& cfg);

}  // namespace zenerwave

#endif
