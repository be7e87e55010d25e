#include "hdisk/functionals.hpp"

#include <algorithm>
#include <cmath>

#include "hdisk/errors.hpp"

namespace hdisk {

namespace {

void require_p_above(double p, double bound, const char* what) {
    if (!(p > bound))
        throw ArgError(std::string(what) + ": p must exceed " + std::to_string(bound));
}

void require_in_disk(cplx a) {
    if (std::abs(a) >= 1.0) throw DomainError("automorphism parameter must satisfy |a| < 1");
}

// Decay heuristic shared by the ray probes: the last value must keep
// shrinking against the mid-ray value (by 4x over the remaining levels), so
// any power decay (1-|a|)^beta with beta >= ~1/2 is accepted while families
// leveling off at a positive limit are not. Monotone is a separate flag for
// the non-increasing tail (last 6 levels).
void classify_trend(TrendReport& t) {
    if (t.ks.empty()) return;
    t.decaying = true;
    t.monotone = true;
    for (const auto& v : t.values) {
        if (v.empty()) continue;
        const double mid = v[v.size() / 2];
        if (!(v.back() <= 0.25 * mid + 1e-300)) t.decaying = false;
        const std::size_t tail = v.size() > 6 ? v.size() - 6 : 0;
        for (std::size_t i = tail + 1; i < v.size(); ++i)
            if (v[i] > v[i - 1] * (1.0 + 1e-9) + 1e-300) t.monotone = false;
    }
}

TrendReport ray_trend(const std::function<double(cplx)>& value_at_a) {
    TrendReport t;
    for (int k = 2; k <= 12; ++k) t.ks.push_back(k);
    for (int j = 0; j < 4; ++j) {
        const double th = 0.5 * M_PI * j;
        for (int k : t.ks) {
            const double r = 1.0 - std::ldexp(1.0, -k);
            t.values[j].push_back(value_at_a(std::polar(r, th)));
        }
    }
    classify_trend(t);
    return t;
}

RadialTrend trend_from_levels(const SupSearchConfig& cfg, const std::vector<double>& maxima) {
    RadialTrend t;
    for (int k = cfg.min_level; k <= cfg.max_level; ++k) t.levels.push_back(k);
    t.maxima = maxima;
    if (!maxima.empty()) {
        const double mid = maxima[maxima.size() / 2];
        t.decays_to_zero = maxima.back() <= 0.25 * mid + 1e-300;
    }
    return t;
}

} // namespace

SupSearchConfig default_a_search() {
    SupSearchConfig cfg;
    cfg.min_level = 1;
    cfg.max_level = 12;
    cfg.angular = 24;
    cfg.refine_rounds = 2;
    return cfg;
}

WeightedIntegralSpec scan_quadrature(const WeightedIntegralSpec& base) {
    WeightedIntegralSpec lean = base;
    lean.rings = std::min(lean.rings, 12);
    lean.radial_nodes = std::min<std::size_t>(lean.radial_nodes, 12);
    lean.angular_nodes = std::min<std::size_t>(lean.angular_nodes, 128);
    lean.angular_adaptive = false;
    return lean;
}

namespace {

SupIntegralResult sup_over_a(const std::function<IntegralResult(cplx, const WeightedIntegralSpec&)>& run,
                             const SupSearchConfig& cfg, const WeightedIntegralSpec& base) {
    const WeightedIntegralSpec lean = scan_quadrature(base);
    SupIntegralResult out;
    out.search = sup_search([&](cplx a) { return run(a, lean).value; }, cfg);
    out.refined = run(out.search.argmax, base);
    return out;
}

} // namespace

SupSearchResult bloch_seminorm_analytic(const ExprPtr& h, const SupSearchConfig& cfg) {
    return sup_search(
        [&](cplx z) { return (1.0 - std::norm(z)) * std::abs(eval_jet(h, z).d1); }, cfg);
}

IntegralResult besov_norm_analytic(const ExprPtr& h, double p, const WeightedIntegralSpec& base) {
    require_p_above(p, 1.0, "besov_norm_analytic");
    WeightedIntegralSpec spec = base;
    spec.alpha = p - 2.0;
    return integrate_disk(
        [&](cplx z) { return std::pow(std::abs(eval_jet(h, z).d1), p); }, spec);
}

IntegralResult besov_seminorm_smooth(const SmoothLogJacobian& F, double p,
                                     const WeightedIntegralSpec& base) {
    require_p_above(p, 1.0, "besov_seminorm_smooth");
    WeightedIntegralSpec spec = base;
    spec.alpha = p - 2.0;
    return integrate_disk(
        [&](cplx z) { return std::pow(2.0 * std::abs(pre_schwarzian(F.f, z)), p); }, spec);
}

IntegralResult qp_nth_integral(const ExprPtr& h, int n, double p, cplx a,
                               const WeightedIntegralSpec& base) {
    if (n < 1) throw ArgError("qp_nth_integral: n must be >= 1");
    require_p_above(p, 0.0, "qp_nth_integral");
    require_in_disk(a);
    ExprPtr dn = h;
    for (int i = 0; i < n; ++i) dn = derivative(dn);
    WeightedIntegralSpec spec = base;
    spec.alpha = p + 2.0 * n - 2.0;
    return integrate_disk(
        [&, dn](cplx z) {
            const cplx image = phi(a, z);
            const double dp = std::abs(phi_prime(a, z));
            return std::norm(eval_value(dn, image)) * std::pow(dp, 2.0 * n);
        },
        spec);
}

IntegralResult qp_integral(const ExprPtr& h, double p, cplx a, const WeightedIntegralSpec& base) {
    return qp_nth_integral(h, 1, p, a, base);
}

IntegralResult qp_integral_smooth(const SmoothLogJacobian& F, double p, cplx a,
                                  const WeightedIntegralSpec& base) {
    require_p_above(p, 0.0, "qp_integral_smooth");
    require_in_disk(a);
    WeightedIntegralSpec spec = base;
    spec.alpha = p;
    return integrate_disk(
        [&](cplx z) {
            const cplx image = phi(a, z);
            const cplx fz = pre_schwarzian(F.f, image);
            return 4.0 * std::norm(fz) * std::norm(phi_prime(a, z));
        },
        spec);
}

SupIntegralResult qp_norm(const ExprPtr& h, double p, const SupSearchConfig& cfg,
                          const WeightedIntegralSpec& base) {
    return sup_over_a(
        [&](cplx a, const WeightedIntegralSpec& spec) { return qp_integral(h, p, a, spec); }, cfg,
        base);
}

SupIntegralResult qp_norm_smooth(const SmoothLogJacobian& F, double p, const SupSearchConfig& cfg,
                                 const WeightedIntegralSpec& base) {
    return sup_over_a(
        [&](cplx a, const WeightedIntegralSpec& spec) { return qp_integral_smooth(F, p, a, spec); },
        cfg, base);
}

TrendReport qp0_probe(const ExprPtr& h, double p, const WeightedIntegralSpec& base) {
    return ray_trend([&](cplx a) { return qp_integral(h, p, a, base).value; });
}

TrendReport qp0_probe_smooth(const SmoothLogJacobian& F, double p,
                             const WeightedIntegralSpec& base) {
    return ray_trend([&](cplx a) { return qp_integral_smooth(F, p, a, base).value; });
}

IntegralResult I_f(const HarmonicMap& f, double p, const WeightedIntegralSpec& base) {
    require_p_above(p, 1.0, "I_f");
    WeightedIntegralSpec spec = base;
    spec.alpha = 2.0 * p - 2.0;
    return integrate_disk(
        [&](cplx z) { return std::pow(std::abs(schwarzian(f, z).S), p); }, spec);
}

IntegralResult I_h(const HarmonicMap& f, double p, const WeightedIntegralSpec& base) {
    require_p_above(p, 1.0, "I_h");
    WeightedIntegralSpec spec = base;
    spec.alpha = 2.0 * p - 2.0;
    return integrate_disk(
        [&](cplx z) { return std::pow(std::abs(schwarzian(f, z).Sh), p); }, spec);
}

SupSearchResult beta2(const HarmonicMap& f, const SupSearchConfig& cfg) {
    return sup_search(
        [&](cplx z) { return (1.0 - std::norm(z)) * std::sqrt(jacobian(f, z)); }, cfg);
}

RadialTrend bt0_probe(const HarmonicMap& f, const SupSearchConfig& cfg) {
    SupSearchConfig c = cfg;
    c.refine_rounds = 0;  // only the level maxima matter here
    const SupSearchResult s = sup_search(
        [&](cplx z) { return (1.0 - std::norm(z)) * std::sqrt(jacobian(f, z)); }, c);
    return trend_from_levels(c, s.level_max);
}

RadialTrend bloch_little_probe(const ExprPtr& h, const SupSearchConfig& cfg) {
    SupSearchConfig c = cfg;
    c.refine_rounds = 0;
    const SupSearchResult s = sup_search(
        [&](cplx z) { return (1.0 - std::norm(z)) * std::abs(eval_jet(h, z).d1); }, c);
    return trend_from_levels(c, s.level_max);
}

IntegralResult bt_p(const HarmonicMap& f, double p, const WeightedIntegralSpec& base) {
    require_p_above(p, 1.0, "bt_p");
    WeightedIntegralSpec spec = base;
    spec.alpha = p - 2.0;
    return integrate_disk(
        [&](cplx z) { return std::pow(jacobian(f, z), 0.5 * p); }, spec);
}

SupIntegralResult qt_p(const HarmonicMap& f, double p, const SupSearchConfig& cfg,
                       const WeightedIntegralSpec& base) {
    require_p_above(p, 0.0, "qt_p");
    return sup_over_a(
        [&](cplx a, const WeightedIntegralSpec& b) {
            WeightedIntegralSpec spec = b;
            spec.alpha = p;
            return integrate_disk(
                [&](cplx z) {
                    return jacobian(f, phi(a, z)) * std::norm(phi_prime(a, z));
                },
                spec);
        },
        cfg, base);
}

DistortionReport distortion_check(const HarmonicMap& f,
                                  const std::vector<std::pair<cplx, cplx>>& pairs,
                                  const SupSearchConfig& cfg) {
    DistortionReport rep;
    rep.w_norm = sup_search([&](cplx z) { return std::abs(eval_value(f.w, z)); }, cfg).sup;
    if (rep.w_norm >= 1.0 - 1e-6)
        throw NotApplicable("distortion bound needs ||w|| bounded away from 1");
    rep.beta2_sup = beta2(f, cfg).sup;
    const double K = std::sqrt((1.0 + rep.w_norm) / (1.0 - rep.w_norm));
    rep.margins.reserve(pairs.size());
    for (const auto& [z1, z2] : pairs) {
        const double rhs = K * rep.beta2_sup * hyperbolic_distance(z1, z2);
        rep.margins.push_back(rhs - std::abs(map_value(f, z1) - map_value(f, z2)));
    }
    return rep;
}

std::pair<double, double> nh_envelopes(double mu, double r) {
    if (!(mu > 0.0 && mu <= 1.0)) throw ArgError("nh_envelopes: mu must lie in (0, 1]");
    if (!(r >= 0.0 && r < 1.0)) throw ArgError("nh_envelopes: r must lie in [0, 1)");
    const double beta = std::sqrt(1.0 - mu);
    const double t = std::pow(1.0 - r * r, beta - 1.0);
    const double A = std::pow(1.0 + r, beta) + std::pow(1.0 - r, beta);
    return {A * A / (4.0 * t), 4.0 * t / (A * A)};
}

} // namespace hdisk
