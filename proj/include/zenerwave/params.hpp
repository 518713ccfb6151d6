#ifndef ZENERWAVE_PARAMS_HPP
#define ZENERWAVE_PARAMS_HPP

#include <array>
#include <limits>
#include <string>
#include <vector>

namespace zenerwave {

/// Dimensionless material parameters of the complex-order Zener rod.
///
/// The constitutive law couples stress and strain through fractional
/// derivatives of order alpha (real) and alpha +- i*beta (complex,
/// symmetrized so real signals stay real):
///
///   sigma + a1 D^alpha sigma + b1 Dbar^{alpha,beta} sigma
///     = eps + a2 D^alpha eps + b2 Dbar^{alpha,beta} eps.
///
/// Primary regime: a2 > a1. rod_length is +infinity for the semi-infinite rod.
struct MaterialParams {
    double a1 = 0.0;
    double a2 = 0.0;
    double b1 = 0.0;
    double b2 = 0.0;
    double alpha = 0.5;
    double beta = 0.1;
    double rod_length = std::numeric_limits<double>::infinity();

    /// Builds params with b2 derived from the constraint a2*b1 - a1*b2 = 0,
    /// so canonical inputs satisfy it to within one rounding of a2*b1/a1.
    static MaterialParams with_derived_b2(double a1, double a2, double b1, double alpha,
                                          double beta,
                                          double rod_length = std::numeric_limits<double>::infinity());

    bool finite_rod() const { return rod_length != std::numeric_limits<double>::infinity(); }

    /// Elastic degenerate case a1 == a2, b1 == b2: the relaxation kernel is
    /// exactly delta(t) and the rod obeys the classical wave equation.
    bool elastic_degenerate() const;

    /// Throws std::invalid_argument when a field invariant is violated
    /// (negative coefficients, alpha outside (0,1), beta <= 0, bad length).
    void check() const;
};

/// Parameters in physical units, prior to nondimensionalization.
struct PhysicalParams {
    double E = 0.0;     ///< modulus of elasticity [Pa]
    double rho = 0.0;   ///< density [kg/m^3]
    double a1 = 0.0;    ///< [s^alpha]
    double a2 = 0.0;    ///< [s^alpha]; must be > 0 since T = a2^(1/alpha)
    double b1 = 0.0;    ///< [s^alpha]
    double b2 = 0.0;    ///< [s^alpha]
    double alpha = 0.5;
    double beta = 0.1;
    double U_scale = 1.0;  ///< boundary displacement scale [m]
    double rod_length_m = std::numeric_limits<double>::infinity();
};

enum class RestrictionKind {
    Ctg,  ///< cotangent form: bounds the g-extremum (loss-modulus line)
    Tg    ///< tangent form: bounds the f-extremum (storage-modulus line)
};

/// Right-hand-side factor of the dissipativity inequalities
///   a_i >= b_i * restriction_rhs(alpha, beta, kind),
/// i.e. 2*cosh(beta*pi/2)*sqrt(1 + (k(alpha*pi/2)*tanh(beta*pi/2))^2)
/// with k = ctg or tg. Always >= 2.
double restriction_rhs(double alpha, double beta, RestrictionKind kind);

enum class Verdict { Admissible, AdmissibleStrict, Inadmissible };

/// Outcome of the Second-Law admissibility checks.
struct ValidationReport {
    double td1_residual = 0.0;              ///< a2*b1 - a1*b2
    std::array<double, 2> td300_margins{};  ///< a_i - b_i*rhs(ctg), i = 1,2
    std::array<double, 2> td30_margins{};   ///< a_i - b_i*rhs(tg),  i = 1,2
    bool ordering_ok = false;               ///< a2 > a1 and b2 >= b1
    bool strict = false;                    ///< strict margins were requested
    bool elastic_degenerate = false;
    Verdict verdict = Verdict::Inadmissible;
    std::vector<std::string> failures;      ///< tags of failed conditions

    /// True when the verdict satisfies the request: AdmissibleStrict always
    /// passes; Admissible passes only a non-strict request.
    bool passes() const {
        if (verdict == Verdict::AdmissibleStrict) return true;
        return verdict == Verdict::Admissible && !strict;
    }
};

/// Checks the coefficient restrictions that make the model dissipative:
/// a2*b1 - a1*b2 = 0 (within tol, relative to max(1, a2*b1)) and the four
/// margin inequalities. Inadmissibility is a verdict, never an exception.
ValidationReport validate(const MaterialParams& params, bool strict = false, double tol = 1e-12);

/// Result of converting physical parameters to dimensionless form.
struct Nondimensional {
    MaterialParams params;  ///< a2 == 1 exactly by construction
    double T_seconds = 0.0;
    double L_meters = 0.0;
};

/// T = a2^(1/alpha), L = T*sqrt(E/rho); coefficients scale by T^-alpha and
/// the rod length by 1/L. Rejects a2 == 0.
Nondimensional nondimensionalize(const PhysicalParams& phys);

/// Parses a parameter JSON document with keys exactly
/// {a1, a2, b1, b2, alpha, beta, rod_length}; rod_length is "inf" or a
/// positive number. Unknown or missing keys raise std::invalid_argument.
MaterialParams params_from_json(const std::string& text);

std::string params_to_json(const MaterialParams& params);

}  // namespace zenerwave

#endif
