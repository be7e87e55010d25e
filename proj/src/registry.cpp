#include "hdisk/registry.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "hdisk/errors.hpp"
#include "hdisk/gauss.hpp"

namespace hdisk {

namespace {

using nlohmann::json;

const HarmonicMap& need_map(const CorpusEntry& e, const std::string& id) {
    if (!e.has_map) throw NotApplicable(id + " needs a harmonic map; entry '" + e.name +
                                        "' does not carry one");
    return e.map;
}

const ExprPtr& need_analytic(const CorpusEntry& e, const std::string& id) {
    if (!e.analytic) throw NotApplicable(id + " needs an analytic function; entry '" + e.name +
                                         "' does not carry one");
    return e.analytic;
}

json cplx_json(cplx v) { return json::array({v.real(), v.imag()}); }

void fill_integral(Report& rep, const IntegralResult& r) {
    rep.value = r.value;
    rep.est_error = r.est_error;
    rep.verdict = verdict_name(r.verdict);
    rep.converged = r.converged;
    rep.trace["ring_contributions"] = r.ring_contributions;
    rep.trace["ring_partial_sums"] = r.ring_partial_sums;
    rep.trace["cap_contribution"] = r.cap_contribution;
    rep.trace["cap_used"] = r.cap_used;
}

void fill_sup(Report& rep, const SupSearchResult& s) {
    rep.value = s.sup;
    rep.boundary_limited = s.boundary_limited;
    rep.converged = s.converged;
    rep.trace["argmax"] = cplx_json(s.argmax);
    rep.trace["level_max"] = s.level_max;
    rep.trace["refine_trace"] = s.refine_trace;
}

void fill_sup_integral(Report& rep, const SupIntegralResult& s) {
    fill_integral(rep, s.refined);
    rep.boundary_limited = s.search.boundary_limited;
    rep.trace["argmax"] = cplx_json(s.search.argmax);
    rep.trace["scan_level_max"] = s.search.level_max;
}

void fill_trend(Report& rep, const TrendReport& t) {
    rep.decaying = t.decaying;
    rep.trace["ks"] = t.ks;
    for (int j = 0; j < 4; ++j)
        rep.trace["ray_values"].push_back(t.values[static_cast<std::size_t>(j)]);
    rep.trace["monotone"] = t.monotone;
    double last = 0.0;
    for (const auto& v : t.values)
        if (!v.empty()) last = std::max(last, v.back());
    rep.value = last;
}

void fill_radial_trend(Report& rep, const RadialTrend& t) {
    rep.decaying = t.decays_to_zero;
    rep.trace["levels"] = t.levels;
    rep.trace["maxima"] = t.maxima;
    rep.value = t.maxima.empty() ? 0.0 : t.maxima.back();
}

/// The dyadic-ring node family of a WeightedIntegralSpec (weights ignored):
/// used by the pointwise margin sweeps.
std::vector<cplx> quadrature_nodes(const WeightedIntegralSpec& spec) {
    std::vector<cplx> nodes;
    const GaussRule& rule = gauss_legendre(spec.radial_nodes);
    for (int j = 0; j <= spec.rings; ++j) {  // final pass covers the closing cap
        const double r_lo = 1.0 - std::ldexp(1.0, -j);
        const double r_hi = (j == spec.rings) ? 1.0 : 1.0 - std::ldexp(1.0, -(j + 1));
        const double half = 0.5 * (r_hi - r_lo), mid = 0.5 * (r_hi + r_lo);
        for (std::size_t i = 0; i < spec.radial_nodes; ++i) {
            const double r = mid + half * rule.nodes[i];
            for (std::size_t m = 0; m < spec.angular_nodes; ++m) {
                const double th = 2.0 * M_PI * (static_cast<double>(m) + 0.5) /
                                  static_cast<double>(spec.angular_nodes);
                nodes.push_back(std::polar(r, th));
            }
        }
    }
    return nodes;
}

std::vector<std::pair<cplx, cplx>> seeded_pairs(std::size_t count, double radius,
                                                unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto draw = [&] {
        const double r = radius * std::sqrt(unit(rng));
        const double th = 2.0 * M_PI * unit(rng);
        return std::polar(r, th);
    };
    std::vector<std::pair<cplx, cplx>> ps;
    ps.reserve(count);
    for (std::size_t i = 0; i < count; ++i) ps.emplace_back(draw(), draw());
    return ps;
}

} // namespace

void apply_params(RunParams& rp, const std::map<std::string, double>& kv) {
    for (const auto& [key, v] : kv) {
        if (key == "p") rp.p = v;
        else if (key == "n") rp.n = static_cast<int>(std::lround(v));
        else if (key == "mu") rp.mu = v;
        else if (key == "r") rp.r = v;
        else if (key == "a_re") rp.a.real(v);
        else if (key == "a_im") rp.a.imag(v);
        else if (key == "z_re") rp.z.real(v);
        else if (key == "z_im") rp.z.imag(v);
        else if (key == "lambda_re") rp.lambda.real(v);
        else if (key == "lambda_im") rp.lambda.imag(v);
        else if (key == "levels") rp.levels = static_cast<int>(std::lround(v));
        else if (key == "alpha") rp.quad.alpha = v;
        else if (key == "rings") rp.quad.rings = static_cast<int>(std::lround(v));
        else if (key == "angular") rp.quad.angular_nodes = static_cast<std::size_t>(std::lround(v));
        else if (key == "tol") rp.quad.rel_tol = v;
        else throw ArgError("unknown run parameter: " + key);
    }
}

json Report::to_json() const {
    json j;
    j["functional"] = functional;
    j["entry"] = entry;
    j["inputs"] = inputs;
    j["value"] = value;
    j["est_error"] = est_error;
    j["verdict"] = verdict;
    j["boundary_limited"] = boundary_limited;
    j["decaying"] = decaying;
    j["converged"] = converged;
    j["trace"] = trace;
    j["version"] = "hdisk 1.0.0";
    return j;
}

int Report::exit_code() const {
    return verdict == verdict_name(IntegralVerdict::DivergentSuspect) ? 2 : 0;
}

const std::vector<std::string>& functional_ids() {
    static const std::vector<std::string> ids = {
        "jacobian", "pre_schwarzian", "schwarzian", "sh_sphi_residual", "map_value",
        "pre_schwarzian_norm", "schwarzian_norm",
        "bloch_seminorm_analytic", "bloch_little_probe",
        "besov_norm_analytic", "besov_seminorm_smooth",
        "qp_integral", "qp_integral_smooth", "qp_nth_integral",
        "qp_norm", "qp_norm_smooth", "qp0_probe", "qp0_probe_smooth",
        "I_f", "I_h", "carleson", "vanishing_carleson_probe",
        "beta2", "bt0_probe", "bt_p", "qt_p",
        "bergman_ratio", "divergence_probe_smooth",
        "distortion_check", "schwarz_pick_min_margin",
        "nh_envelopes", "nh_lower", "nh_upper", "nh_gap_max", "nh_origin_dev",
    };
    return ids;
}

Report run_functional(const std::string& id, const CorpusEntry& entry, const RunParams& rp) {
    Report rep;
    rep.functional = id;
    rep.entry = entry.name;
    rep.inputs["p"] = rp.p;
    rep.inputs["n"] = rp.n;
    rep.inputs["a"] = cplx_json(rp.a);
    rep.inputs["z"] = cplx_json(rp.z);
    rep.inputs["lambda"] = cplx_json(rp.lambda);
    rep.inputs["mu"] = rp.mu;
    rep.inputs["r"] = rp.r;
    rep.inputs["levels"] = rp.levels;
    rep.inputs["alpha"] = rp.quad.alpha;
    rep.inputs["rings"] = rp.quad.rings;

    if (id == "jacobian") {
        rep.value = jacobian(need_map(entry, id), rp.z);
    } else if (id == "pre_schwarzian") {
        const cplx v = pre_schwarzian(need_map(entry, id), rp.z);
        rep.value = std::abs(v);
        rep.trace["P"] = cplx_json(v);
    } else if (id == "schwarzian") {
        const SchwarzianValue sv = schwarzian(need_map(entry, id), rp.z);
        rep.value = std::abs(sv.S);
        rep.trace["P"] = cplx_json(sv.P);
        rep.trace["Fzz"] = cplx_json(sv.Fzz);
        rep.trace["S"] = cplx_json(sv.S);
        rep.trace["Sh"] = cplx_json(sv.Sh);
        rep.trace["dual_residual"] = sv.dual_residual;
    } else if (id == "sh_sphi_residual") {
        rep.value = sh_sphi_residual(need_map(entry, id), rp.lambda, rp.z);
    } else if (id == "map_value") {
        const cplx v = map_value(need_map(entry, id), rp.z);
        rep.value = std::abs(v);
        rep.trace["f"] = cplx_json(v);
    } else if (id == "pre_schwarzian_norm") {
        fill_sup(rep, pre_schwarzian_norm(need_map(entry, id), rp.zsearch));
    } else if (id == "schwarzian_norm") {
        fill_sup(rep, schwarzian_norm(need_map(entry, id), rp.zsearch));
    } else if (id == "bloch_seminorm_analytic") {
        fill_sup(rep, bloch_seminorm_analytic(need_analytic(entry, id), rp.zsearch));
    } else if (id == "bloch_little_probe") {
        fill_radial_trend(rep, bloch_little_probe(need_analytic(entry, id), rp.zsearch));
    } else if (id == "besov_norm_analytic") {
        fill_integral(rep, besov_norm_analytic(need_analytic(entry, id), rp.p, rp.quad));
    } else if (id == "besov_seminorm_smooth") {
        fill_integral(rep,
                      besov_seminorm_smooth({need_map(entry, id)}, rp.p, rp.quad));
    } else if (id == "qp_integral") {
        fill_integral(rep, qp_integral(need_analytic(entry, id), rp.p, rp.a, rp.quad));
    } else if (id == "qp_integral_smooth") {
        fill_integral(rep, qp_integral_smooth({need_map(entry, id)}, rp.p, rp.a, rp.quad));
    } else if (id == "qp_nth_integral") {
        fill_integral(rep,
                      qp_nth_integral(need_analytic(entry, id), rp.n, rp.p, rp.a, rp.quad));
    } else if (id == "qp_norm") {
        fill_sup_integral(rep, qp_norm(need_analytic(entry, id), rp.p, rp.asearch, rp.quad));
    } else if (id == "qp_norm_smooth") {
        fill_sup_integral(rep,
                          qp_norm_smooth({need_map(entry, id)}, rp.p, rp.asearch, rp.quad));
    } else if (id == "qp0_probe") {
        fill_trend(rep, qp0_probe(need_analytic(entry, id), rp.p, rp.quad));
    } else if (id == "qp0_probe_smooth") {
        fill_trend(rep, qp0_probe_smooth({need_map(entry, id)}, rp.p, rp.quad));
    } else if (id == "I_f") {
        fill_integral(rep, I_f(need_map(entry, id), rp.p, rp.quad));
    } else if (id == "I_h") {
        fill_integral(rep, I_h(need_map(entry, id), rp.p, rp.quad));
    } else if (id == "carleson") {
        CarlesonOptions opts = rp.carleson;
        opts.quad = rp.quad;
        const CarlesonResult r = carleson_constant({rp.p, {}}, need_map(entry, id), opts);
        rep.value = r.route_a;
        rep.est_error = r.route_b.refined.est_error;
        rep.verdict = verdict_name(r.route_b.refined.verdict);
        rep.converged = r.route_b.refined.converged;
        rep.boundary_limited = r.route_b.search.boundary_limited;
        rep.trace["route_b"] = r.route_b.value();
        rep.trace["ratio_b_over_a"] = r.ratio_b_over_a;
        rep.trace["best_box_theta"] = r.best_box.theta;
        rep.trace["best_box_len"] = r.best_box.len;
        rep.trace["per_len_max"] = r.per_len_max;
    } else if (id == "vanishing_carleson_probe") {
        CarlesonOptions opts = rp.carleson;
        opts.quad = rp.quad;
        const VanishingCarlesonReport r =
            vanishing_carleson_probe({rp.p, {}}, need_map(entry, id), opts);
        rep.decaying = r.decaying;
        rep.value = r.box_ratio_max.empty() ? 0.0 : r.box_ratio_max.back();
        rep.trace["box_len"] = r.box_len;
        rep.trace["box_ratio_max"] = r.box_ratio_max;
        rep.trace["ks"] = r.automorphism_trend.ks;
        for (int j = 0; j < 4; ++j)
            rep.trace["ray_values"].push_back(
                r.automorphism_trend.values[static_cast<std::size_t>(j)]);
    } else if (id == "beta2") {
        fill_sup(rep, beta2(need_map(entry, id), rp.zsearch));
    } else if (id == "bt0_probe") {
        fill_radial_trend(rep, bt0_probe(need_map(entry, id), rp.zsearch));
    } else if (id == "bt_p") {
        fill_integral(rep, bt_p(need_map(entry, id), rp.p, rp.quad));
    } else if (id == "qt_p") {
        fill_sup_integral(rep, qt_p(need_map(entry, id), rp.p, rp.asearch, rp.quad));
    } else if (id == "bergman_ratio") {
        const double alpha = rp.quad.alpha;
        const BergmanRatio r =
            bergman_equivalence_ratio(need_analytic(entry, id), rp.p, alpha, rp.quad);
        rep.value = r.ratio;
        rep.trace["lhs"] = r.lhs;
        rep.trace["rhs"] = r.rhs;
        rep.trace["defined"] = r.defined;
    } else if (id == "divergence_probe_smooth") {
        const HarmonicMap& f = need_map(entry, id);
        const GrowthReport g = divergence_probe(
            [&](cplx z) { return std::pow(2.0 * std::abs(pre_schwarzian(f, z)), rp.p); },
            rp.p - 2.0, rp.levels, rp.quad);
        rep.verdict = verdict_name(g.verdict);
        rep.value = (!g.truncated_values.empty() && g.truncated_values.front() > 0)
                        ? g.truncated_values.back() / g.truncated_values.front()
                        : 0.0;
        rep.trace["levels"] = g.levels;
        rep.trace["truncated_values"] = g.truncated_values;
        rep.trace["growth_exponent"] = g.growth_exponent;
    } else if (id == "distortion_check") {
        const DistortionReport r =
            distortion_check(need_map(entry, id), seeded_pairs(100, 0.9, 20260815), rp.zsearch);
        double min_margin = r.margins.empty() ? 0.0 : r.margins.front();
        for (double m : r.margins) min_margin = std::min(min_margin, m);
        rep.value = min_margin;
        rep.trace["w_norm"] = r.w_norm;
        rep.trace["beta2_sup"] = r.beta2_sup;
        rep.trace["pairs"] = r.margins.size();
    } else if (id == "schwarz_pick_min_margin") {
        const HarmonicMap& f = need_map(entry, id);
        double min_margin = 1e300;
        for (cplx node : quadrature_nodes(rp.quad))
            min_margin = std::min(min_margin, schwarz_pick_margin(f.w, node));
        rep.value = min_margin;
    } else if (id == "nh_envelopes" || id == "nh_lower" || id == "nh_upper") {
        const auto [lo, hi] = nh_envelopes(rp.mu, rp.r);
        rep.value = (id == "nh_upper") ? hi : lo;
        rep.trace["lower"] = lo;
        rep.trace["upper"] = hi;
    } else if (id == "nh_gap_max") {
        double gap = -1e300;
        for (int i = 0; i <= 99; ++i) {
            const auto [lo, hi] = nh_envelopes(rp.mu, 0.01 * i);
            gap = std::max(gap, lo - hi);
        }
        rep.value = gap;
    } else if (id == "nh_origin_dev") {
        const auto [lo, hi] = nh_envelopes(rp.mu, 0.0);
        rep.value = std::abs(lo - 1.0) + std::abs(hi - 1.0);
    } else {
        throw ArgError("unknown functional id: " + id);
    }
    return rep;
}

FactOutcome check_fact(const CorpusEntry& entry, const ExpectedFact& fact) {
    RunParams rp;
    apply_params(rp, fact.params);
    const Report rep = run_functional(fact.functional, entry, rp);

    FactOutcome out;
    out.observed = rep.value;
    std::ostringstream msg;
    msg << entry.name << " / " << fact.functional;
    for (const auto& [k, v] : fact.params) msg << " " << k << "=" << v;
    msg << ": ";
    switch (fact.kind) {
        case FactKind::ValueAbs:
            out.pass = std::abs(rep.value - fact.v0) <= fact.v1;
            msg << "value " << rep.value << " vs " << fact.v0 << " (abs tol " << fact.v1 << ")";
            break;
        case FactKind::ValueRel:
            out.pass = std::abs(rep.value - fact.v0) <= fact.v1 * std::max(std::abs(fact.v0), 1e-300);
            msg << "value " << rep.value << " vs " << fact.v0 << " (rel tol " << fact.v1 << ")";
            break;
        case FactKind::Range:
            out.pass = rep.value >= fact.v0 && rep.value <= fact.v1;
            msg << "value " << rep.value << " in [" << fact.v0 << ", " << fact.v1 << "]";
            break;
        case FactKind::Verdict:
            out.pass = rep.verdict == verdict_name(fact.verdict);
            msg << "verdict " << rep.verdict << " vs " << verdict_name(fact.verdict);
            break;
        case FactKind::Decaying:
            out.pass = rep.decaying;
            msg << "decaying=" << rep.decaying << " (expected true)";
            break;
        case FactKind::NotDecaying:
            out.pass = !rep.decaying;
            msg << "decaying=" << rep.decaying << " (expected false)";
            break;
        case FactKind::BoundaryLimited:
            out.pass = rep.boundary_limited;
            msg << "boundary_limited=" << rep.boundary_limited << " (expected true)";
            break;
    }
    out.detail = msg.str();
    return out;
}

} // namespace hdisk
