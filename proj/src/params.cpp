#include "zenerwave/params.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <json.hpp>

namespace zenerwave {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool nearly_equal(double a, double b) {
    return std::abs(a - b) <= 1e-14 * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

MaterialParams MaterialParams::with_derived_b2(double a1, double a2, double b1, double alpha,
                                               double beta, double rod_length) {
    if (a1 <= 0.0) throw std::invalid_argument("with_derived_b2: a1 must be positive");
    MaterialParams p;
    p.a1 = a1;
    p.a2 = a2;
    p.b1 = b1;
    p.b2 = a2 * b1 / a1;
    p.alpha = alpha;
    p.beta = beta;
    p.rod_length = rod_length;
    p.check();
    return p;
}

bool MaterialParams::elastic_degenerate() const {
    return nearly_equal(a1, a2) && nearly_equal(b1, b2);
}

void MaterialParams::check() const {
    const bool coeffs_ok = a1 >= 0.0 && a2 >= 0.0 && b1 >= 0.0 && b2 >= 0.0 &&
                           std::isfinite(a1) && std::isfinite(a2) && std::isfinite(b1) &&
                           std::isfinite(b2);
    if (!coeffs_ok)
        throw std::invalid_argument("material params: a1,a2,b1,b2 must be >= 0 and finite");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("material params: alpha must lie in (0,1)");
    if (!(beta > 0.0)) throw std::invalid_argument("material params: beta must be > 0");
    if (!(rod_length > 0.0))
        throw std::invalid_argument("material params: rod_length must be positive or infinite");
}

double restriction_rhs(double alpha, double beta, RestrictionKind kind) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("restriction_rhs: alpha must lie in the open interval (0,1)");
    if (!(beta > 0.0)) throw std::domain_error("restriction_rhs: beta must be > 0");
    const double half_a = alpha * kPi / 2.0;
    const double half_b = beta * kPi / 2.0;
    const double k = (kind == RestrictionKind::Ctg) ? (std::cos(half_a) / std::sin(half_a))
                                                    : std::tan(half_a);
    const double kt = k * std::tanh(half_b);
    return 2.0 * std::cosh(half_b) * std::sqrt(1.0 + kt * kt);
}

ValidationReport validate(const MaterialParams& params, bool strict, double tol) {
    params.check();
    ValidationReport rep;
    rep.strict = strict;
    rep.td1_residual = params.a2 * params.b1 - params.a1 * params.b2;
    const double rhs_ctg = restriction_rhs(params.alpha, params.beta, RestrictionKind::Ctg);
    const double rhs_tg = restriction_rhs(params.alpha, params.beta, RestrictionKind::Tg);
    rep.td300_margins = {params.a1 - params.b1 * rhs_ctg, params.a2 - params.b2 * rhs_ctg};
    rep.td30_margins = {params.a1 - params.b1 * rhs_tg, params.a2 - params.b2 * rhs_tg};
    rep.elastic_degenerate = params.elastic_degenerate();

    // Elastic rod: L(t) = delta(t), E^ == 1; dissipativity holds regardless of
    // the margin inequalities. Accepted with the dedicated flag.
    if (rep.elastic_degenerate) {
        rep.ordering_ok = true;
        rep.verdict = Verdict::Admissible;
        return rep;
    }

    if (params.a2 < params.a1) {
        rep.ordering_ok = false;
        rep.failures.push_back("reversed_regime_a2_lt_a1_out_of_scope");
        rep.verdict = Verdict::Inadmissible;
        return rep;
    }

    rep.ordering_ok = params.a2 > params.a1 && params.b2 >= params.b1;
    if (!rep.ordering_ok) rep.failures.push_back("ordering_a2_gt_a1_b2_ge_b1");

    const double td1_scale = std::max(1.0, params.a2 * params.b1);
    if (std::abs(rep.td1_residual) > tol * td1_scale) rep.failures.push_back("td1_equality");

    const char* margin_tags[4] = {"td300_line1", "td300_line2", "td30_line1", "td30_line2"};
    const double margins[4] = {rep.td300_margins[0], rep.td300_margins[1], rep.td30_margins[0],
                               rep.td30_margins[1]};
    bool all_nonneg = true, all_pos = true;
    for (int i = 0; i < 4; ++i) {
        if (!(margins[i] >= 0.0)) {
            all_nonneg = false;
            rep.failures.push_back(margin_tags[i]);
        }
        if (!(margins[i] > 0.0)) all_pos = false;
    }

    if (!rep.failures.empty() || !all_nonneg) {
        rep.verdict = Verdict::Inadmissible;
    } else {
        rep.verdict = all_pos ? Verdict::AdmissibleStrict : Verdict::Admissible;
    }
    return rep;
}

Nondimensional nondimensionalize(const PhysicalParams& phys) {
    if (!(phys.E > 0.0)) throw std::invalid_argument("nondimensionalize: E must be > 0");
    if (!(phys.rho > 0.0)) throw std::invalid_argument("nondimensionalize: rho must be > 0");
    if (!(phys.a2 > 0.0))
        throw std::invalid_argument("nondimensionalize: a2 must be > 0 (T = a2^(1/alpha))");
    if (!(phys.alpha > 0.0 && phys.alpha < 1.0))
        throw std::invalid_argument("nondimensionalize: alpha must lie in (0,1)");
    if (!(phys.beta > 0.0)) throw std::invalid_argument("nondimensionalize: beta must be > 0");

    Nondimensional out;
    out.T_seconds = std::pow(phys.a2, 1.0 / phys.alpha);
    out.L_meters = out.T_seconds * std::sqrt(phys.E / phys.rho);
    const double t_alpha = std::pow(out.T_seconds, phys.alpha);
    out.params.a1 = phys.a1 / t_alpha;
    out.params.a2 = 1.0;  // a2 / a2 by construction of T
    out.params.b1 = phys.b1 / t_alpha;
    out.params.b2 = phys.b2 / t_alpha;
    out.params.alpha = phys.alpha;
    out.params.beta = phys.beta;
    out.params.rod_length = std::isinf(phys.rod_length_m)
                                ? std::numeric_limits<double>::infinity()
                                : phys.rod_length_m / out.L_meters;
    out.params.check();
    return out;
}

MaterialParams params_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("params JSON: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("params JSON: top level must be an object");

    static const char* kKeys[] = {"a1", "a2", "b1", "b2", "alpha", "beta", "rod_length"};
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* k : kKeys) known = known || item.key() == k;
        if (!known) throw std::invalid_argument("params JSON: unknown key \"" + item.key() + "\"");
    }
    for (const char* k : kKeys) {
        if (!j.contains(k))
            throw std::invalid_argument(std::string("params JSON: missing key \"") + k + "\"");
    }

    MaterialParams p;
    auto num = [&](const char* k) {
        if (!j.at(k).is_number())
            throw std::invalid_argument(std::string("params JSON: \"") + k + "\" must be a number");
        return j.at(k).get<double>();
    };
    p.a1 = num("a1");
    p.a2 = num("a2");
    p.b1 = num("b1");
    p.b2 = num("b2");
    p.alpha = num("alpha");
    p.beta = num("beta");
    const auto& rl = j.at("rod_length");
    if (rl.is_string()) {
        if (rl.get<std::string>() != "inf")
            throw std::invalid_argument("params JSON: rod_length must be \"inf\" or a positive number");
        p.rod_length = std::numeric_limits<double>::infinity();
    } else if (rl.is_number()) {
        p.rod_length = rl.get<double>();
        if (!(p.rod_length > 0.0))
            throw std::invalid_argument("params JSON: rod_length must be positive");
    } else {
        throw std::invalid_argument("params JSON: rod_length must be \"inf\" or a positive number");
    }
    p.check();
    return p;
}

std::string params_to_json(const MaterialParams& params) {
    nlohmann::json j;
    j["a1"] = params.a1;
    j["a2"] = params.a2;
    j["b1"] = params.b1;
    j["b2"] = params.b2;
    j["alpha"] = params.alpha;
    j["beta"] = params.beta;
    if (params.finite_rod())
        j["rod_length"] = params.rod_length;
    else
        j["rod_length"] = "inf";
    return j.dump(2);
}

}  // namespace zenerwave
