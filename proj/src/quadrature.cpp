#include "hdisk/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "hdisk/errors.hpp"
#include "hdisk/gauss.hpp"

namespace hdisk {

namespace {

// One ring [r_lo, r_hi] with fixed angular count: Gauss-Legendre in r
// (weight applied radially) times uniform angular midpoints. Midpoints
// avoid placing nodes exactly on the singular directions of boundary-peaked
// integrands, which would overweight the peak by O(peak/width).
double ring_once(const std::function<double(cplx)>& G, double alpha, double r_lo, double r_hi,
                 std::size_t nr, std::size_t na) {
    const GaussRule& rule = gauss_legendre(nr);
    const double half = 0.5 * (r_hi - r_lo), mid = 0.5 * (r_hi + r_lo);
    const double dth = 2.0 * M_PI / static_cast<double>(na);
    double total = 0.0;
    for (std::size_t i = 0; i < nr; ++i) {
        const double r = mid + half * rule.nodes[i];
        const double wr = half * rule.weights[i] * r * std::pow(1.0 - r * r, alpha);
        double asum = 0.0;
        for (std::size_t j = 0; j < na; ++j)
            asum += G(std::polar(r, dth * (static_cast<double>(j) + 0.5)));
        total += wr * asum * dth;
    }
    return total;
}

// Doubles the angular count until the ring value stabilizes; boundary rings
// of angularly-peaked integrands need ~2pi/(1-r) nodes, smooth ones exit on
// the first comparison. scale_hint short-circuits rings that are already
// negligible against the running total.
double ring_value(const std::function<double(cplx)>& G, double alpha, double r_lo, double r_hi,
                  const WeightedIntegralSpec& spec, double scale_hint) {
    std::size_t na = std::max<std::size_t>(spec.angular_nodes, 4);
    if (!spec.angular_adaptive) return ring_once(G, alpha, r_lo, r_hi, spec.radial_nodes, na);
    const double tol = std::max(spec.rel_tol / 8.0, 1e-7);
    double prev = ring_once(G, alpha, r_lo, r_hi, spec.radial_nodes, na / 2);
    double cur = ring_once(G, alpha, r_lo, r_hi, spec.radial_nodes, na);
    while (na < spec.max_angular &&
           std::abs(cur - prev) > tol * std::max(std::abs(cur), 1e-300)) {
        if (std::max(std::abs(cur), std::abs(prev)) < 1e-9 * scale_hint) break;
        na *= 2;
        prev = cur;
        cur = ring_once(G, alpha, r_lo, r_hi, spec.radial_nodes, na);
    }
    return cur;
}

void validate(const WeightedIntegralSpec& spec) {
    if (spec.rings < 4) throw ArgError("WeightedIntegralSpec: rings must be >= 4");
    // Beyond ~45 the closing-cap Gauss nodes land within ulp(1) of the
    // boundary and round onto |z| = 1, where analytic evaluation is illegal.
    if (spec.rings > 45) throw ArgError("WeightedIntegralSpec: rings must be <= 45");
    if (spec.radial_nodes < 2 || spec.radial_nodes > 64)
        throw ArgError("WeightedIntegralSpec: radial_nodes must be in [2, 64]");
    if (spec.angular_nodes < 4) throw ArgError("WeightedIntegralSpec: angular_nodes must be >= 4");
    if (!(spec.rel_tol > 0)) throw ArgError("WeightedIntegralSpec: rel_tol must be positive");
}

// Divergence heuristic: contributions still significant against the total
// and not decaying by more than 2% per ring over the last 4 rings. The slack
// catches log-divergent integrands, whose dyadic contributions approach a
// positive constant (often from above); a genuinely convergent weight
// (1-|z|^2)^alpha, alpha > -0.97, decays strictly faster than that.
bool looks_divergent(const std::vector<double>& c, double total, double rel_tol) {
    const std::size_t n = c.size();
    if (n < 4) return false;
    if (!(c.back() > rel_tol * std::abs(total)) || !(c.back() > 0)) return false;
    for (std::size_t i = n - 3; i < n; ++i)
        if (c[i] < c[i - 1] * 0.98) return false;
    return true;
}

double tail_extrapolation(const std::vector<double>& c) {
    const std::size_t n = c.size();
    if (n < 2 || c[n - 1] <= 0) return std::abs(c.empty() ? 0.0 : c.back());
    const double q = (c[n - 2] > 0) ? c[n - 1] / c[n - 2] : 0.0;
    if (q > 0 && q < 0.95) return c[n - 1] * q / (1.0 - q);
    return c[n - 1];
}

} // namespace

std::string verdict_name(IntegralVerdict v) {
    switch (v) {
        case IntegralVerdict::ConvergedFinite: return "converged-finite";
        case IntegralVerdict::DivergentSuspect: return "divergent-suspect";
        case IntegralVerdict::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

IntegralResult integrate_disk(const std::function<double(cplx)>& G,
                              const WeightedIntegralSpec& spec) {
    validate(spec);
    IntegralResult res;
    res.ring_contributions.reserve(spec.rings);
    double running = 0.0;
    for (int j = 0; j < spec.rings; ++j) {
        const double r_lo = 1.0 - std::ldexp(1.0, -j);
        const double r_hi = 1.0 - std::ldexp(1.0, -(j + 1));
        const double c = ring_value(G, spec.alpha, r_lo, r_hi, spec, std::abs(running));
        res.ring_contributions.push_back(c);
        running += c;
        res.ring_partial_sums.push_back(running);
    }
    res.est_error = tail_extrapolation(res.ring_contributions);

    if (looks_divergent(res.ring_contributions, running, spec.rel_tol)) {
        res.verdict = IntegralVerdict::DivergentSuspect;
        res.converged = false;
        res.value = running;
        return res;
    }

    const double last = res.ring_contributions.back();
    const bool decaying = spec.rings < 2 || last <= res.ring_contributions[spec.rings - 2];
    if (spec.closing_cap && spec.alpha > -1.0 && decaying) {
        const double r_lo = 1.0 - std::ldexp(1.0, -spec.rings);
        res.cap_contribution = ring_value(G, spec.alpha, r_lo, 1.0, spec, std::abs(running));
        res.cap_used = true;
        running += res.cap_contribution;
        res.ring_partial_sums.push_back(running);
    }
    res.value = running;
    // Converged: the full disk is covered by the cap, or the dyadic tail is
    // below tolerance on its own.
    res.converged = res.cap_used || last <= spec.rel_tol * std::abs(running);
    res.verdict = res.converged ? IntegralVerdict::ConvergedFinite : IntegralVerdict::Inconclusive;
    return res;
}

GrowthReport divergence_probe(const std::function<double(cplx)>& G, double alpha, int levels,
                              const WeightedIntegralSpec& base) {
    if (levels < 5) throw ArgError("divergence_probe: levels must be >= 5");
    WeightedIntegralSpec spec = base;
    spec.alpha = alpha;
    spec.rings = std::max(levels, 4);
    validate(spec);

    std::vector<double> c;
    c.reserve(levels);
    double running = 0.0;
    for (int j = 0; j < levels; ++j) {
        const double r_lo = 1.0 - std::ldexp(1.0, -j);
        const double r_hi = 1.0 - std::ldexp(1.0, -(j + 1));
        c.push_back(ring_value(G, alpha, r_lo, r_hi, spec, std::abs(running)));
        running += c.back();
    }

    GrowthReport rep;
    double prefix = c[0] + c[1] + c[2] + c[3];
    for (int m = 4; m <= levels; ++m) {
        rep.levels.push_back(m);
        rep.truncated_values.push_back(prefix);
        if (m < levels) prefix += c[m];
    }
    // Fitted tail growth: mean slope of log2(contribution) over the last 5 rings.
    const std::size_t n = c.size();
    bool positive = true;
    for (std::size_t i = n - 5; i < n; ++i) positive = positive && c[i] > 0;
    rep.growth_exponent = positive ? (std::log2(c[n - 1]) - std::log2(c[n - 5])) / 4.0 : 0.0;
    rep.verdict = looks_divergent(c, running, spec.rel_tol)
                      ? IntegralVerdict::DivergentSuspect
                      : (c.back() <= spec.rel_tol * std::abs(running)
                             ? IntegralVerdict::ConvergedFinite
                             : IntegralVerdict::Inconclusive);
    return rep;
}

BergmanRatio bergman_equivalence_ratio(const ExprPtr& h, double p, double alpha,
                                       const WeightedIntegralSpec& base) {
    if (!(p > 0)) throw ArgError("bergman_equivalence_ratio: p must be positive");
    if (!(alpha > -1)) throw ArgError("bergman_equivalence_ratio: alpha must exceed -1");
    WeightedIntegralSpec lhs_spec = base, rhs_spec = base;
    lhs_spec.alpha = alpha;
    rhs_spec.alpha = alpha + p;

    BergmanRatio out;
    out.lhs = integrate_disk(
                  [&](cplx z) { return std::pow(std::abs(eval_value(h, z)), p); }, lhs_spec)
                  .value;
    const double deriv = integrate_disk(
                             [&](cplx z) { return std::pow(std::abs(eval_jet(h, z).d1), p); },
                             rhs_spec)
                             .value;
    out.rhs = deriv + std::pow(std::abs(eval_value(h, cplx(0, 0))), p);
    out.defined = out.rhs > 0;
    out.ratio = out.defined ? out.lhs / out.rhs : 0.0;
    return out;
}

} // namespace hdisk
