#include "hdisk/corpus.hpp"

#include <cmath>
#include <cstdio>

#include "hdisk/errors.hpp"

namespace hdisk {

const char* provenance_name(Provenance p) {
    switch (p) {
        case Provenance::Paper: return "paper";
        case Provenance::Trivial: return "trivial";
        case Provenance::Derived: return "derived";
    }
    return "derived";
}

namespace {

using Params = std::map<std::string, double>;

std::string short_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

ExpectedFact value_abs(std::string fn, Params ps, double v, double tol, Provenance prov,
                       std::string oracle = "") {
    return {std::move(fn), std::move(ps), FactKind::ValueAbs, v, tol,
            IntegralVerdict::ConvergedFinite, prov, std::move(oracle)};
}

ExpectedFact value_rel(std::string fn, Params ps, double v, double tol, Provenance prov,
                       std::string oracle = "") {
    return {std::move(fn), std::move(ps), FactKind::ValueRel, v, tol,
            IntegralVerdict::ConvergedFinite, prov, std::move(oracle)};
}

ExpectedFact in_range(std::string fn, Params ps, double lo, double hi, Provenance prov,
                      std::string oracle = "") {
    return {std::move(fn), std::move(ps), FactKind::Range, lo, hi,
            IntegralVerdict::ConvergedFinite, prov, std::move(oracle)};
}

ExpectedFact has_verdict(std::string fn, Params ps, IntegralVerdict v, Provenance prov,
                         std::string oracle = "") {
    return {std::move(fn), std::move(ps), FactKind::Verdict, 0.0, 0.0, v, prov,
            std::move(oracle)};
}

ExpectedFact flag(std::string fn, Params ps, FactKind kind, Provenance prov,
                  std::string oracle = "") {
    return {std::move(fn), std::move(ps), kind, 0.0, 0.0, IntegralVerdict::ConvergedFinite,
            prov, std::move(oracle)};
}

CorpusEntry identity_entry() {
    CorpusEntry e;
    e.name = "identity";
    e.summary = "f(z) = z: h' = 1, w = 0";
    e.has_map = true;
    e.map = make_map(constant(1.0), constant(0.0), e.name);
    e.analytic = var_z();
    e.jacobian_oracle = [](cplx) { return 1.0; };
    e.facts = {
        value_abs("jacobian", {{"z_re", 0.3}, {"z_im", 0.2}}, 1.0, 1e-12, Provenance::Trivial),
        value_abs("schwarzian_norm", {}, 0.0, 1e-12, Provenance::Trivial),
        value_abs("beta2", {}, 1.0, 1e-12, Provenance::Trivial),
        value_abs("I_f", {{"p", 2.0}}, 0.0, 1e-12, Provenance::Trivial),
        value_abs("map_value", {{"z_re", 0.4}, {"z_im", -0.3}}, 0.5, 1e-12, Provenance::Trivial),
        value_rel("bt_p", {{"p", 2.0}}, M_PI, 1e-6, Provenance::Derived,
                  "J = 1 and weight exponent 0: the integral is the disk area pi"),
        value_rel("qt_p", {{"p", 2.0}}, M_PI / 3.0, 1e-2, Provenance::Derived,
                  "series evaluation: sup sits at a = 0 where the integral is pi/3"),
        value_rel("besov_norm_analytic", {{"p", 2.0}}, M_PI, 1e-6, Provenance::Derived,
                  "|h'| = 1 with weight exponent 0: disk area"),
        value_rel("qp_integral", {{"p", 1.0}, {"a_re", 0.0}, {"a_im", 0.0}}, 0.5 * M_PI, 1e-6,
                  Provenance::Derived, "2 pi int r (1-r^2) dr = pi/2"),
    };
    return e;
}

CorpusEntry mobius_entry() {
    CorpusEntry e;
    e.name = "mobius";
    e.summary = "h(z) = z/(1 - z/2), w = 0";
    e.has_map = true;
    e.map = make_map(pow(affine(1.0, -0.5), -2.0), constant(0.0), e.name);
    e.analytic = div(var_z(), affine(1.0, -0.5));
    e.facts = {
        value_abs("schwarzian_norm", {}, 0.0, 1e-10, Provenance::Trivial),
        value_abs("I_f", {{"p", 2.0}}, 0.0, 1e-10, Provenance::Trivial),
        value_abs("pre_schwarzian", {{"z_re", 0.0}, {"z_im", 0.0}}, 1.0, 1e-12,
                  Provenance::Derived, "h''/h' of z/(1 - z/2) at the origin"),
    };
    return e;
}

CorpusEntry shear_entry(double rho) {
    CorpusEntry e;
    e.name = "shear_rho:" + short_num(rho);
    e.summary = "shear of phi = z with w = rho z: h' = 1/(1 - rho z)";
    e.has_map = true;
    e.map = shear(var_z(), scale(rho, var_z()));
    e.map.label = e.name;
    // h = -(1/rho) log(1 - rho z), the antiderivative of 1/(1 - rho z)
    e.analytic = scale(-1.0 / rho, log(affine(1.0, -rho)));
    e.defaults = {{"rho", rho}};
    e.facts = {
        value_abs("pre_schwarzian", {{"z_re", 0.0}, {"z_im", 0.0}}, rho, 1e-12,
                  Provenance::Derived, "jet arithmetic: F_z(0) = h''(0)/h'(0) = rho"),
        value_abs("schwarzian", {{"z_re", 0.0}, {"z_im", 0.0}}, 0.5 * rho * rho, 1e-12,
                  Provenance::Derived, "jet arithmetic: F_zz(0) = rho^2, F_z(0) = rho"),
        value_abs("map_value", {{"z_re", 0.0}, {"z_im", 0.0}}, 0.0, 1e-12, Provenance::Trivial),
    };
    if (rho == 0.5) {
        const double h_half = -2.0 * std::log(0.75);
        e.facts.push_back(value_rel(
            "map_value", {{"z_re", 0.5}, {"z_im", 0.0}}, 2.0 * h_half - 0.5, 1e-9,
            Provenance::Derived,
            "closed-form antiderivatives: h(1/2) = -2 log(3/4), g = h - z"));
        e.facts.push_back(has_verdict("besov_seminorm_smooth", {{"p", 2.0}},
                                      IntegralVerdict::ConvergedFinite, Provenance::Derived,
                                      "ring-doubling stability of the truncations"));
        e.facts.push_back(has_verdict("I_f", {{"p", 2.0}}, IntegralVerdict::ConvergedFinite,
                                      Provenance::Derived,
                                      "ring-doubling stability of the truncations"));
        e.facts.push_back(flag("vanishing_carleson_probe", {{"p", 0.5}}, FactKind::Decaying,
                               Provenance::Derived,
                               "computed decay of the automorphism ray family"));
    }
    return e;
}

CorpusEntry dirichlet_entry() {
    CorpusEntry e;
    e.name = "dirichlet_rho:0.5";
    e.summary = "h = -log(1 - z/2), the log-derivative primitive of the rho = 1/2 shear";
    e.analytic = neg(log(affine(1.0, -0.5)));
    e.facts = {
        value_rel("besov_norm_analytic", {{"p", 2.0}}, M_PI * std::log(4.0 / 3.0), 5e-3,
                  Provenance::Derived,
                  "parseval_oracle: pi sum rho^{2n+2}/(n+1) = -pi log(1 - rho^2)"),
    };
    return e;
}

CorpusEntry log_singular_entry() {
    CorpusEntry e;
    e.name = "log_singular";
    e.summary = "h = -log(1 - z): bounded Bloch seminorm, divergent Dirichlet integral";
    e.has_map = true;
    e.map = make_map(pow(affine(1.0, -1.0), -1.0), constant(0.0), e.name);
    e.analytic = neg(log(affine(1.0, -1.0)));
    e.facts = {
        in_range("bloch_seminorm_analytic", {}, 1.99, 2.0, Provenance::Derived,
                 "closed-form maximization of (1-|z|^2)/|1-z|, sup 2 as z -> 1-"),
        flag("bloch_seminorm_analytic", {}, FactKind::BoundaryLimited, Provenance::Derived,
             "the sup is approached only along z -> 1-"),
        has_verdict("besov_norm_analytic", {{"p", 2.0}}, IntegralVerdict::DivergentSuspect,
                    Provenance::Derived, "parseval_oracle: sum 1/(n+1) diverges"),
        in_range("pre_schwarzian_norm", {}, 1.99, 2.0, Provenance::Derived,
                 "h''/h' = 1/(1-z); same maximization"),
    };
    return e;
}

CorpusEntry remark3_entry() {
    CorpusEntry e;
    e.name = "remark3";
    e.summary = "w(z) = z with h' = (1-z)^{-1/2}: the divergent smooth-Besov family";
    e.has_map = true;
    e.map = make_map(pow(affine(1.0, -1.0), -0.5), var_z(), e.name);
    e.facts = {
        has_verdict("besov_seminorm_smooth", {{"p", 2.0}}, IntegralVerdict::DivergentSuspect,
                    Provenance::Derived, "divergence_probe: truncations grow like 2^m"),
        in_range("divergence_probe_smooth", {{"p", 2.0}, {"levels", 14.0}}, 10.0, 1e300,
                 Provenance::Derived,
                 "growth of truncated integrals between m = 4 and m = 14"),
    };
    return e;
}

CorpusEntry sec3_entry() {
    CorpusEntry e;
    e.name = "sec3_example";
    e.summary = "h = 2(1-z)^{-1/2}, w = z: J_f = (1-|z|^2)/|1-z|^3";
    e.has_map = true;
    e.map = make_map(pow(affine(1.0, -1.0), -1.5), var_z(), e.name);
    e.jacobian_oracle = [](cplx z) {
        return (1.0 - std::norm(z)) / std::pow(std::abs(cplx(1.0, 0.0) - z), 3.0);
    };
    const double b2 = std::pow(2.0, 1.5);
    e.facts = {
        value_rel("jacobian", {{"z_re", -0.5}, {"z_im", 0.0}}, 0.75 / 3.375, 1e-12,
                  Provenance::Derived, "closed form (1-|z|^2)/|1-z|^3 at z = -1/2"),
        in_range("beta2", {}, b2 - 0.03, b2, Provenance::Paper),
        flag("beta2", {}, FactKind::BoundaryLimited, Provenance::Paper),
        flag("bt0_probe", {}, FactKind::NotDecaying, Provenance::Paper),
        in_range("qt_p", {{"p", 2.0}}, 0.0, 8.0 * M_PI * 1.02, Provenance::Paper),
        in_range("qt_p", {{"p", 3.0}}, 0.0, 4.0 * M_PI * 1.02, Provenance::Paper),
        has_verdict("bt_p", {{"p", 2.0}}, IntegralVerdict::DivergentSuspect,
                    Provenance::Derived,
                    "ring contributions approach the positive constant 2 C log 2"),
    };
    return e;
}

CorpusEntry sec3_h_entry() {
    CorpusEntry e;
    e.name = "sec3_h_only";
    e.summary = "the analytic part h = 2(1-z)^{-1/2} alone (w = 0)";
    e.has_map = true;
    e.map = make_map(pow(affine(1.0, -1.0), -1.5), constant(0.0), e.name);
    e.analytic = sub(scale(2.0, pow(affine(1.0, -1.0), -0.5)), constant(2.0));
    e.facts = {
        value_abs("schwarzian", {{"z_re", 0.0}, {"z_im", 0.0}}, 0.375, 1e-12,
                  Provenance::Derived, "symbolic S_h = (3/8)(1-z)^{-2}"),
        in_range("schwarzian_norm", {}, 1.48, 1.5 + 1e-9, Provenance::Derived,
                 "sup (3/8)((1-|z|^2)/|1-z|)^2 = 3/2 as z -> 1-"),
        flag("schwarzian_norm", {}, FactKind::BoundaryLimited, Provenance::Derived,
             "sup approached only at the boundary"),
        in_range("pre_schwarzian_norm", {}, 2.97, 3.0 + 1e-9, Provenance::Derived,
                 "h''/h' = (3/2)/(1-z), sup of (3/2)(1-|z|^2)/|1-z| is 3"),
    };
    return e;
}

CorpusEntry poly_entry() {
    CorpusEntry e;
    e.name = "poly_z2";
    e.summary = "h = z^2, polynomial Q_p witness";
    e.analytic = mul(var_z(), var_z());
    e.facts = {
        value_rel("qp_nth_integral", {{"n", 2.0}, {"p", 1.0}, {"a_re", 0.0}, {"a_im", 0.0}},
                  M_PI, 1e-6, Provenance::Derived, "8 pi int r (1-r^2)^3 dr = pi"),
        flag("qp0_probe", {{"p", 1.0}}, FactKind::Decaying, Provenance::Derived,
             "computed monotone decay of the ray family"),
        value_abs("bloch_seminorm_analytic", {}, 4.0 / (3.0 * std::sqrt(3.0)), 5e-4,
                  Provenance::Derived, "max of 2r(1-r^2) at r = 1/sqrt(3)"),
    };
    return e;
}

CorpusEntry dilatation_entry() {
    CorpusEntry e;
    e.name = "dilatation_qp:0.5";
    e.summary = "w(z) = z/2 viewed as the analytic Q_p membership witness";
    e.analytic = scale(0.5, var_z());
    e.facts = {
        has_verdict("qp_norm", {{"p", 0.5}}, IntegralVerdict::ConvergedFinite,
                    Provenance::Derived, "bounded w' and refinement stability"),
        has_verdict("qp_norm", {{"p", 1.0}}, IntegralVerdict::ConvergedFinite,
                    Provenance::Derived, "bounded w' and refinement stability"),
        has_verdict("qp_norm", {{"p", 2.0}}, IntegralVerdict::ConvergedFinite,
                    Provenance::Derived, "bounded w' and refinement stability"),
        flag("qp0_probe", {{"p", 0.5}}, FactKind::Decaying, Provenance::Derived,
             "computed decay of the ray family"),
    };
    return e;
}

CorpusEntry nh_entry(double mu) {
    CorpusEntry e;
    e.name = "nh_mu:" + short_num(mu);
    e.summary = "Jacobian-envelope pseudo-entry (envelope functions only)";
    e.defaults = {{"mu", mu}};
    e.facts = {
        in_range("nh_gap_max", {{"mu", mu}}, -1e9, 1e-15, Provenance::Derived,
                 "pointwise: A <= 2 and (1-r^2)^{beta-1} >= 1 give lower <= 1 <= upper"),
        value_abs("nh_origin_dev", {{"mu", mu}}, 0.0, 1e-14, Provenance::Trivial),
    };
    if (mu == 1.0) {
        e.facts.push_back(value_abs("nh_lower", {{"mu", 1.0}, {"r", 0.5}}, 0.75, 1e-12,
                                    Provenance::Derived, "direct substitution: 1 - r^2"));
        e.facts.push_back(value_abs("nh_upper", {{"mu", 1.0}, {"r", 0.5}}, 4.0 / 3.0, 1e-12,
                                    Provenance::Derived, "direct substitution: (1 - r^2)^{-1}"));
    }
    if (mu == 0.75) {
        const double A = std::sqrt(1.5) + std::sqrt(0.5);
        const double lower = A * A / (4.0 * std::pow(0.75, -0.5));
        e.facts.push_back(value_abs("nh_lower", {{"mu", 0.75}, {"r", 0.5}}, lower, 1e-12,
                                    Provenance::Derived,
                                    "direct substitution with beta = 1/2 at r = 1/2"));
    }
    return e;
}

std::vector<CorpusEntry> build_corpus() {
    std::vector<CorpusEntry> all;
    all.push_back(identity_entry());
    all.push_back(mobius_entry());
    all.push_back(shear_entry(0.25));
    all.push_back(shear_entry(0.5));
    all.push_back(shear_entry(0.75));
    all.push_back(dirichlet_entry());
    all.push_back(log_singular_entry());
    all.push_back(remark3_entry());
    all.push_back(sec3_entry());
    all.push_back(sec3_h_entry());
    all.push_back(poly_entry());
    all.push_back(dilatation_entry());
    all.push_back(nh_entry(0.25));
    all.push_back(nh_entry(0.5));
    all.push_back(nh_entry(0.75));
    all.push_back(nh_entry(1.0));
    return all;
}

} // namespace

const std::vector<CorpusEntry>& corpus_list() {
    static const std::vector<CorpusEntry> entries = build_corpus();
    return entries;
}

const CorpusEntry& corpus_lookup(const std::string& name) {
    for (const auto& e : corpus_list())
        if (e.name == name) return e;
    throw ArgError("unknown corpus entry: " + name);
}

ParsevalResult parseval_oracle(const std::function<cplx(std::size_t)>& coeff, int weight,
                               double rel_tol, std::size_t max_terms) {
    if (weight < 0) throw ArgError("parseval_oracle: weight must be a nonnegative integer");
    ParsevalResult out;
    // b_n = n! s! / (n+s+1)! via the recurrence b_0 = 1/(s+1), b_n = b_{n-1} n/(n+s+1)
    double b = 1.0 / (weight + 1.0);
    double prev_term = 0.0;
    std::size_t grow_streak = 0, small_streak = 0;
    for (std::size_t n = 0; n < max_terms; ++n) {
        if (n > 0) b *= static_cast<double>(n) / static_cast<double>(n + weight + 1);
        const double term = M_PI * std::norm(coeff(n)) * b;
        out.value += term;
        out.terms = n + 1;
        grow_streak = (n > 0 && term > prev_term * (1.0 + 1e-12)) ? grow_streak + 1 : 0;
        if (grow_streak >= 64) throw TailError("parseval_oracle: terms grow, no tail bound");
        prev_term = term;
        small_streak = term <= rel_tol * std::max(out.value, 1e-300) ? small_streak + 1 : 0;
        if (small_streak >= 3) {
            out.converged = true;
            break;
        }
    }
    return out;
}

} // namespace hdisk
