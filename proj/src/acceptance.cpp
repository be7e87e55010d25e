#include "hdisk/acceptance.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include "hdisk/cli.hpp"
#include "hdisk/corpus.hpp"
#include "hdisk/errors.hpp"
#include "hdisk/functionals.hpp"
#include "hdisk/registry.hpp"

namespace hdisk {

namespace {

using Check = std::pair<bool, std::string>;

std::vector<cplx> seeded_points(std::size_t n, double radius, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<cplx> pts;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        pts.push_back(std::polar(radius * std::sqrt(u(rng)), 2.0 * M_PI * u(rng)));
    return pts;
}

std::vector<std::pair<cplx, cplx>> seeded_pairs(std::size_t n, double radius, unsigned seed) {
    const auto pts = seeded_points(2 * n, radius, seed);
    std::vector<std::pair<cplx, cplx>> ps;
    ps.reserve(n);
    for (std::size_t i = 0; i < n; ++i) ps.emplace_back(pts[2 * i], pts[2 * i + 1]);
    return ps;
}

std::vector<std::pair<std::string, ExprPtr>> corpus_exprs() {
    std::vector<std::pair<std::string, ExprPtr>> out;
    for (const auto& e : corpus_list()) {
        if (e.has_map) {
            out.emplace_back(e.name + ".h_prime", e.map.h_prime);
            out.emplace_back(e.name + ".w", e.map.w);
        }
        if (e.analytic) out.emplace_back(e.name + ".h", e.analytic);
    }
    return out;
}

bool is_zero_expr(const ExprPtr& e) {
    return e && e->kind == ExprKind::Const && e->c == cplx(0.0, 0.0);
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

Check c1_jets() {
    const auto pts = seeded_points(100, 0.6, 101);
    double worst = 0.0;
    std::string where = "-";
    for (const auto& [name, ex] : corpus_exprs()) {
        for (cplx z : pts) {
            const Jet3 a = eval_jet(ex, z);
            const Jet3 b = finite_difference_jet(ex, z, 0.02);
            const cplx da[4] = {a.v, a.d1, a.d2, a.d3};
            const cplx db[4] = {b.v, b.d1, b.d2, b.d3};
            for (int k = 0; k < 4; ++k) {
                const double err = std::abs(da[k] - db[k]) / std::max(std::abs(da[k]), 1.0);
                if (err > worst) {
                    worst = err;
                    where = name + " order " + std::to_string(k);
                }
            }
        }
    }
    return {worst <= 1e-6,
            "max relative jet error " + fmt(worst) + " at " + where + " (tol 1e-6)"};
}

Check c2_reduction() {
    const auto pts = seeded_points(200, 0.9, 102);
    double worst_red = 0.0, worst_mob = 0.0;
    for (const auto& e : corpus_list()) {
        if (!e.has_map || !is_zero_expr(e.map.w)) continue;
        for (cplx z : pts) {
            const SchwarzianValue sv = schwarzian(e.map, z);
            worst_red = std::max(worst_red, std::abs(sv.S - sv.Sh) /
                                                std::max(1.0, std::abs(sv.Sh)));
        }
    }
    const auto& mob = corpus_lookup("mobius");
    for (cplx z : pts) worst_mob = std::max(worst_mob, std::abs(schwarzian(mob.map, z).S));
    const bool pass = worst_red <= 1e-12 && worst_mob <= 1e-12;
    return {pass, "w=0 reduction residual " + fmt(worst_red) + ", Mobius |S| " + fmt(worst_mob) +
                      " (tol 1e-12)"};
}

Check c3_dual_routes() {
    const auto pts = seeded_points(200, 0.95, 103);
    double worst = 0.0;
    std::string where = "-";
    for (const auto& e : corpus_list()) {
        if (!e.has_map) continue;
        for (cplx z : pts) {
            const double res = schwarzian(e.map, z).dual_residual;
            if (res > worst) {
                worst = res;
                where = e.name;
            }
        }
    }
    return {worst <= 1e-10, "max dual-route residual " + fmt(worst) + " at " + where +
                                " (tol 1e-10)"};
}

Check c4_sh_sphi() {
    const auto pts = seeded_points(50, 0.8, 104);
    const cplx lams[3] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}};
    double worst = 0.0;
    for (const char* name : {"shear_rho:0.25", "shear_rho:0.5", "shear_rho:0.75"}) {
        const auto& e = corpus_lookup(name);
        for (cplx lam : lams)
            for (cplx z : pts)
                worst = std::max(worst, sh_sphi_residual(e.map, lam, z));
    }
    return {worst <= 1e-9, "max identity residual " + fmt(worst) + " (tol 1e-9)"};
}

Check c5_quadrature_oracles() {
    double worst = 0.0;
    for (int s = 0; s <= 2; ++s) {
        WeightedIntegralSpec spec;
        spec.alpha = s;
        const IntegralResult r = integrate_disk([](cplx) { return 1.0; }, spec);
        const double exact = M_PI / (s + 1.0);
        worst = std::max(worst, std::abs(r.value - exact) / exact);
    }
    const double exact = M_PI * std::log(4.0 / 3.0);
    const ParsevalResult po =
        parseval_oracle([](std::size_t n) { return cplx(std::pow(0.5, n + 1.0), 0.0); }, 0);
    const IntegralResult besov =
        besov_norm_analytic(corpus_lookup("dirichlet_rho:0.5").analytic, 2.0);
    const double dev_oracle = std::abs(po.value - exact) / exact;
    const double dev_quad = std::abs(besov.value - exact) / exact;
    const bool pass = worst <= 1e-6 && po.converged && dev_oracle <= 1e-8 && dev_quad <= 5e-3;
    return {pass, "pi/(s+1) rel err " + fmt(worst) + " (tol 1e-6); Dirichlet rel dev: series " +
                      fmt(dev_oracle) + ", quadrature " + fmt(dev_quad) + " (tol 5e-3)"};
}

Check c6_sec3_bloch_type() {
    const auto& e = corpus_lookup("sec3_example");
    const SupSearchResult b = beta2(e.map);
    const double b2 = std::pow(2.0, 1.5);
    const RadialTrend t = bt0_probe(e.map);
    const bool pass = b.sup >= b2 - 0.03 && b.sup <= b2 && b.boundary_limited &&
                      !t.decays_to_zero;
    return {pass, "beta2 " + fmt(b.sup) + " in [" + fmt(b2 - 0.03) + ", " + fmt(b2) +
                      "], boundary_limited=" + (b.boundary_limited ? "1" : "0") +
                      ", bt0 decays=" + (t.decays_to_zero ? "1" : "0") + " (expected 0)"};
}

Check c7_qt_bound() {
    const auto& e = corpus_lookup("sec3_example");
    bool pass = true;
    std::ostringstream os;
    for (double p : {2.0, 3.0}) {
        const double bound = 8.0 * M_PI / (p - 1.0) * 1.02;
        const double v = qt_p(e.map, p).value();
        pass = pass && v <= bound && v > 0.0;
        os << "p=" << p << ": " << fmt(v) << " <= " << fmt(bound) << "; ";
    }
    return {pass, os.str()};
}

Check c8_divergence_family() {
    const auto& e = corpus_lookup("remark3");
    const IntegralResult b = besov_seminorm_smooth({e.map}, 2.0);
    const HarmonicMap& f = e.map;
    const GrowthReport g = divergence_probe(
        [&](cplx z) { return std::pow(2.0 * std::abs(pre_schwarzian(f, z)), 2.0); }, 0.0, 14);
    const double growth =
        g.truncated_values.front() > 0 ? g.truncated_values.back() / g.truncated_values.front()
                                       : 0.0;
    const bool pass =
        b.verdict == IntegralVerdict::DivergentSuspect && growth >= 10.0;
    return {pass, "verdict " + verdict_name(b.verdict) + ", truncation growth m=4..14: " +
                      fmt(growth) + "x (need >= 10x)"};
}

Check c9_invariance() {
    const HarmonicMap& f = corpus_lookup("shear_rho:0.5").map;
    SupSearchConfig acfg;
    acfg.min_level = 1;
    acfg.max_level = 8;
    acfg.angular = 16;
    acfg.refine_rounds = 2;
    WeightedIntegralSpec quad;
    quad.rings = 10;
    quad.radial_nodes = 12;
    quad.angular_nodes = 128;

    const double bt_base = bt_p(f, 2.5, quad).value;
    const double qt_base = qt_p(f, 2.0, acfg, quad).value();

    std::mt19937 rng(109);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst_sigma = 0.0;
    for (int i = 0; i < 5; ++i) {
        const cplx c = std::polar(0.6 * std::sqrt(u(rng)), 2.0 * M_PI * u(rng));
        const cplx rot = std::polar(1.0, 2.0 * M_PI * u(rng));
        const HarmonicMap g = precompose_automorphism(f, c, rot);
        const double bt_v = bt_p(g, 2.5, quad).value;
        const double qt_v = qt_p(g, 2.0, acfg, quad).value();
        worst_sigma = std::max({worst_sigma, std::abs(bt_v - bt_base) / bt_base,
                                std::abs(qt_v - qt_base) / qt_base});
    }

    const cplx a{1.3, 0.2}, b{0.4, -0.1};
    const double c2 = std::norm(a) - std::norm(b);
    const HarmonicMap fa = affine_transform(f, a, b);
    const double bt_ratio = bt_p(fa, 2.5, quad).value / bt_base;
    const double qt_ratio = qt_p(fa, 2.0, acfg, quad).value() / qt_base;
    const double aff_dev = std::max(std::abs(bt_ratio / std::pow(c2, 1.25) - 1.0),
                                    std::abs(qt_ratio / c2 - 1.0));

    const bool pass = worst_sigma <= 0.01 && aff_dev <= 1e-10;
    return {pass, "automorphism deviation " + fmt(worst_sigma) +
                      " (tol 0.01); affine scaling deviation " + fmt(aff_dev) + " (tol 1e-10)"};
}

Check c10_distortion() {
    double worst = 1e300;
    for (const char* name : {"shear_rho:0.25", "shear_rho:0.5"}) {
        const auto& e = corpus_lookup(name);
        const DistortionReport rep =
            distortion_check(e.map, seeded_pairs(100, 0.9, 110));
        for (double m : rep.margins) worst = std::min(worst, m);
    }
    return {worst >= -1e-9, "min distortion margin " + fmt(worst) + " (tol -1e-9)"};
}

Check c11_schwarz_pick() {
    double worst = 1e300;
    std::string where = "-";
    RunParams rp;
    for (const auto& e : corpus_list()) {
        if (!e.has_map) continue;
        const Report rep = run_functional("schwarz_pick_min_margin", e, rp);
        if (rep.value < worst) {
            worst = rep.value;
            where = e.name;
        }
    }
    return {worst >= -1e-12,
            "min margin over all nodes " + fmt(worst) + " at " + where + " (tol -1e-12)"};
}

Check c12_bergman() {
    const char* names[5] = {"identity", "mobius", "shear_rho:0.5", "dirichlet_rho:0.5",
                            "poly_z2"};
    bool pass = true;
    std::ostringstream os;
    for (const char* name : names) {
        const auto& e = corpus_lookup(name);
        double lo = 1e300, hi = 0.0;
        for (int rings : {5, 10, 20, 40}) {
            WeightedIntegralSpec spec;
            spec.rings = rings;
            const BergmanRatio r = bergman_equivalence_ratio(e.analytic, 2.0, 0.0, spec);
            pass = pass && r.defined && std::isfinite(r.ratio) && r.ratio > 0.05 &&
                   r.ratio < 20.0;
            lo = std::min(lo, r.ratio);
            hi = std::max(hi, r.ratio);
        }
        pass = pass && hi / lo <= 1.05;
        os << name << " [" << fmt(lo) << ", " << fmt(hi) << "]; ";
    }
    return {pass, os.str()};
}

Check c13_shear_chain() {
    const auto& e = corpus_lookup("shear_rho:0.5");
    WeightedIntegralSpec doubled;
    doubled.rings = 28;
    const IntegralResult b1 = besov_seminorm_smooth({e.map}, 2.0);
    const IntegralResult b2 = besov_seminorm_smooth({e.map}, 2.0, doubled);
    const IntegralResult i1 = I_f(e.map, 2.0);
    const IntegralResult i2 = I_f(e.map, 2.0, doubled);
    const double dev_b = std::abs(b1.value - b2.value) / std::max(b2.value, 1e-300);
    const double dev_i = std::abs(i1.value - i2.value) / std::max(i2.value, 1e-300);
    const VanishingCarlesonReport vp = vanishing_carleson_probe({0.5, {}}, e.map);
    const bool pass = b1.verdict == IntegralVerdict::ConvergedFinite &&
                      b2.verdict == IntegralVerdict::ConvergedFinite &&
                      i1.verdict == IntegralVerdict::ConvergedFinite &&
                      i2.verdict == IntegralVerdict::ConvergedFinite && dev_b <= 5e-3 &&
                      dev_i <= 5e-3 && vp.decaying && vp.automorphism_trend.monotone;
    return {pass, "besov " + fmt(b1.value) + " (ring-doubling dev " + fmt(dev_b) + "), I_f " +
                      fmt(i1.value) + " (dev " + fmt(dev_i) +
                      "), vanishing-Carleson decaying=" + (vp.decaying ? "1" : "0") +
                      " monotone=" + (vp.automorphism_trend.monotone ? "1" : "0")};
}

Check c14_nh() {
    double worst_gap = -1e300, worst_origin = 0.0;
    for (double mu : {0.25, 0.5, 0.75, 1.0}) {
        for (int i = 0; i <= 99; ++i) {
            const auto [lo, hi] = nh_envelopes(mu, 0.01 * i);
            worst_gap = std::max(worst_gap, lo - hi);
        }
        const auto [l0, h0] = nh_envelopes(mu, 0.0);
        worst_origin = std::max({worst_origin, std::abs(l0 - 1.0), std::abs(h0 - 1.0)});
    }
    const bool pass = worst_gap <= 1e-15 && worst_origin <= 1e-15;
    return {pass, "max(lower-upper) " + fmt(worst_gap) + ", max origin deviation " +
                      fmt(worst_origin)};
}

Check c15_determinism() {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path();
    std::vector<std::string> contents;
    for (int i = 0; i < 3; ++i) {
        const fs::path out = dir / ("hdisk_det_" + std::to_string(i) + ".json");
        const std::string out_str = out.string();
        const char* argv[] = {"hdisk",        "eval", "--corpus", "sec3_example",
                              "--functional", "beta2", "--out",   out_str.c_str()};
        const int rc = cli_main(8, argv);
        if (rc != 0) return {false, "cmd_eval exited with " + std::to_string(rc)};
        std::ifstream in(out, std::ios::binary);
        contents.emplace_back(std::istreambuf_iterator<char>(in),
                              std::istreambuf_iterator<char>());
    }
    const bool pass = !contents[0].empty() && contents[0] == contents[1] &&
                      contents[1] == contents[2];
    return {pass, "3 runs, " + std::to_string(contents[0].size()) + " bytes each, identical=" +
                      (pass ? "yes" : "no")};
}

} // namespace

std::vector<CriterionResult> run_acceptance(const std::string& filter) {
    const std::vector<std::pair<const char*, std::function<Check()>>> table = {
        {"jets-vs-finite-differences", c1_jets},
        {"schwarzian-reduction", c2_reduction},
        {"dual-route-agreement", c3_dual_routes},
        {"sh-sphi-identity", c4_sh_sphi},
        {"quadrature-oracles", c5_quadrature_oracles},
        {"sec3-bloch-type", c6_sec3_bloch_type},
        {"qt-bound", c7_qt_bound},
        {"divergence-family", c8_divergence_family},
        {"invariance-suite", c9_invariance},
        {"distortion-margins", c10_distortion},
        {"schwarz-pick", c11_schwarz_pick},
        {"bergman-equivalence", c12_bergman},
        {"shear-membership-chain", c13_shear_chain},
        {"nh-envelopes", c14_nh},
        {"determinism", c15_determinism},
    };
    const bool numeric = !filter.empty() &&
                         filter.find_first_not_of("0123456789") == std::string::npos;
    std::vector<CriterionResult> out;
    for (std::size_t i = 0; i < table.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        const std::string name = table[i].first;
        // all-digit filters select by id; anything else is a name substring
        if (!filter.empty() && (numeric ? std::to_string(id) != filter
                                        : name.find(filter) == std::string::npos))
            continue;
        CriterionResult cr;
        cr.id = id;
        cr.name = name;
        try {
            const Check c = table[i].second();
            cr.pass = c.first;
            cr.detail = c.second;
        } catch (const std::exception& ex) {
            cr.pass = false;
            cr.detail = std::string("exception: ") + ex.what();
        }
        out.push_back(cr);
    }
    return out;
}

} // namespace hdisk
