#ifndef ZENERWAVE_INVERSION_HPP
#define ZENERWAVE_INVERSION_HPP

#include <cstddef>
#include <vector>

#include "zenerwave/modulus.hpp"
#include "zenerwave/params.hpp"

namespace zenerwave {

/// Discretization knobs for the Laplace inversions. The transforms are
/// improper oscillatory integrals; everything here is about how they are
/// truncated and sampled.
struct QuadratureConfig {
    double abs_tol = 1e-9;
    double rel_tol = 1e-8;
    double tau_max_cap = 5e5;      ///< hard upper truncation of half-line integrals
    std::size_t panel_max = 5'000'000;
    double bromwich_s0 = 1.0;      ///< abscissa when bromwich_s0_auto is false
    bool bromwich_s0_auto = true;  ///< use s0 = 1/max(t,1)
    double bromwich_p_max = 2e5;   ///< hard cap of the folded Bromwich half-line
    int refine_depth = 12;         ///< panel bisection depth
    double panel_density = 1.0;    ///< >1 shrinks panels (self-consistency probes)

    void check() const;  ///< throws std::invalid_argument on bad fields
};

/// Value of the relaxation kernel L(t) = delta_weight * delta(t) + regular(t),
/// the inverse transform of (1 + a2 s^a + ...)/(1 + a1 s^a + ...).
struct RelaxationKernelValue {
    double delta_weight = 0.0;  ///< a2/a1: the |s| -> infinity limit of the ratio
    double regular_part = 0.0;
};

/// Evaluates L at t > 0. The delta content is carried symbolically in
/// delta_weight, never as a numeric spike. Rejects a1 == 0 && b1 == 0
/// (the kernel would be distributional of higher order).
RelaxationKernelValue relaxation_kernel(double t, const MaterialParams& params,
                                        const QuadratureConfig& cfg);

/// Solution kernel of the semi-infinite rod,
///   K(x,t) = (1/pi) Int_0^inf exp[tau Im M(i tau) x] cos[tau(t - Re M(i tau) x)] dtau,
/// truncated where the envelope falls below abs_tol. Small x makes the
/// envelope decay too slowly; if the cutoff is not reached before
/// tau_max_cap a NumericError advises a larger x or analytic handling.
/// Elastic degenerate params return 0 (the kernel is exactly delta(t-x),
/// which the simulate module treats symbolically).
double kernel_infinite(double x, double t, const MaterialParams& params,
                       const QuadratureConfig& cfg);

/// Finite-rod kernel via folded Bromwich quadrature along s = s0 + i p of
///   [exp(-sMx) - exp(-sM(2l-x))] / (1 - exp(-2sMl)),
/// the overflow-safe form of the image-series bracket. K(l,t) = 0 identically.
double kernel_finite(double x, double t, double l, const MaterialParams& params,
                     const QuadratureConfig& cfg);

/// Laplace-domain displacement ratio u~(x,s)/U~(s): the bracket above for a
/// finite rod, exp(-s M(s) x) for l = infinity. Requires Re s > 0; x = 0
/// gives exactly 1.
Complex kernel_transform(double x, Complex s, double l, const MaterialParams& params);

/// K sampled on a rectangular (x,t) grid. Column evaluation shares the
/// M(i tau) quadrature nodes across all t of one x.
struct KernelGrid {
    std::vector<double> xs;
    std::vector<double> ts;
    std::vector<double> values;  ///< row-major: values[ix*ts.size() + it]
    double delta_weight = 0.0;   ///< nonzero only for the analytic delta case
    bool analytic_delta = false; ///< elastic case: K(x,t) = delta(t - x), values stay 0
    QuadratureConfig config_used;

    double at(std::size_t ix, std::size_t it) const { return values[ix * ts.size() + it]; }
};

KernelGrid kernel_grid(const std::vector<double>& xs, const std::vector<double>& ts,
                       const MaterialParams& params, const QuadratureConfig& cfg);

namespace detail {

/// Shared tau-quadrature nodes for one x-column of the half-line kernel:
/// fixed Gauss panels sized from the worst-case oscillation over [t_lo,t_hi],
/// with env/phase precomputed so a t-sweep is a single cosine pass.
struct KernelColumn {
    double x = 0.0;
    double tau_star = 0.0;
    std::vector<double> tau, wgt;
    std::vector<double> env;    ///< exp(tau Im M(i tau) x) * wgt
    std::vector<double> phase;  ///< tau Re M(i tau) x
};

/// tau_cap < inf additionally caps the cutoff (Nyquist cap for sampled
/// convolution columns, where frequencies above pi/dt cannot be represented).
KernelColumn make_kernel_column(double x, double t_lo, double t_hi,
                                const MaterialParams& params, const QuadratureConfig& cfg,
                                double tau_cap);

double eval_kernel_column(const KernelColumn& col, double t);

/// Finite-rod analogue: nodes along the Bromwich line s = s0 + i p.
struct BromwichColumn {
    double x = 0.0, l = 0.0, s0 = 0.0, p_star = 0.0;
    std::vector<double> p, wgt;
    std::vector<Complex> bracket;  ///< B(x, s0 + i p) * wgt
};

BromwichColumn make_bromwich_column(double x, double l, double t_lo, double t_hi,
                                    const MaterialParams& params, const QuadratureConfig& cfg);

double eval_bromwich_column(const BromwichColumn& col, double t);

/// Two-sided (unfolded) spot evaluation of the finite-rod Bromwich integral,
/// used to collect the imaginary residual the folded path removes by
/// construction (Doetsch real-valuedness check).
Complex kernel_finite_two_sided(double x, double t, double l, const MaterialParams& params,
                                const QuadratureConfig& cfg);

}  // namespace detail

}  // namespace zenerwave

#endif
