#ifndef ZENERWAVE_SIMULATE_HPP
#define ZENERWAVE_SIMULATE_HPP

#include <cstddef>
#include <vector>

#include "zenerwave/inversion.hpp"
#include "zenerwave/params.hpp"

namespace zenerwave {

enum class SignalKind { Dirac, Heaviside, Sampled };

/// Boundary displacement U(t) at x = 0. Dirac and Heaviside are symbolic —
/// they are never discretized as spikes; Sampled is a uniform series
/// starting at t = 0.
struct BoundarySignal {
    SignalKind kind = SignalKind::Dirac;
    double scale = 1.0;
    double dt = 0.0;             ///< Sampled only
    std::vector<double> values;  ///< Sampled only

    static BoundarySignal dirac(double scale = 1.0);
    static BoundarySignal heaviside(double scale = 1.0);
    static BoundarySignal sampled(double dt, std::vector<double> values, double scale = 1.0);

    void check() const;
};

/// u(x,t) for U = delta: the solution kernel itself (finite or infinite rod).
/// For elastic degenerate params the response is delta(t - x); this function
/// returns its regular part (zero) and the field assemblers carry the delta
/// symbolically.
double response_dirac(double x, double t, const MaterialParams& params,
                      const QuadratureConfig& cfg);

/// u(x,t) for U = H: the cumulative kernel integral Int_0^t K(x,theta) dtheta,
/// computed by carrying the theta-integration inside the tau (or Bromwich)
/// quadrature so no extra discretization layer appears. u(0,t) = 1 exactly.
double response_heaviside(double x, double t, const MaterialParams& params,
                          const QuadratureConfig& cfg);

/// Displacement field u(x,t) on a rectangular grid.
struct WaveField {
    std::vector<double> xs;
    std::vector<double> ts;
    std::vector<double> u;  ///< row-major: u[ix*ts.size() + it]
    MaterialParams params_used;
    BoundarySignal signal_used;
    bool delta_at_origin = false;  ///< Dirac boundary: the x = 0 row is symbolic

    double at(std::size_t ix, std::size_t it) const { return u[ix * ts.size() + it]; }
};

/// Convolution response u = U *_t K for a Sampled signal. ts must be uniform
/// with the signal's dt (resampling is the caller's job). The kernel column
/// is sampled on the shared grid with its half-line integral capped at the
/// grid Nyquist rate pi/dt — frequencies above it are invisible to the
/// discrete convolution and the boundary signal's smoothness makes the
/// discarded tail cancel.
WaveField response_general(const BoundarySignal& signal, const std::vector<double>& xs,
                           const std::vector<double>& ts, const MaterialParams& params,
                           const QuadratureConfig& cfg);

/// Field assembly for any signal kind (CLI entry point).
WaveField simulate_field(const BoundarySignal& signal, const std::vector<double>& xs,
                         const std::vector<double>& ts, const MaterialParams& params,
                         const QuadratureConfig& cfg);

}  // namespace zenerwave

#endif
