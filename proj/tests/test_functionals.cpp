#include <doctest.h>

#include <cmath>
#include <complex>
#include <utility>
#include <vector>

#include "hdisk/errors.hpp"
#include "hdisk/expr.hpp"
#include "hdisk/functionals.hpp"
#include "hdisk/geometry.hpp"
#include "hdisk/harmonic.hpp"
#include "helpers.hpp"

using namespace hdisk;
using hdisk::test::seeded_pairs;
using hdisk::test::seeded_points;

namespace {

HarmonicMap sec3_map() { return make_map(pow(affine(1.0, -1.0), -1.5), var_z(), "sec3"); }
HarmonicMap shear_half() { return shear(var_z(), scale(0.5, var_z())); }
HarmonicMap mobius_map() { return make_map(pow(affine(1.0, -0.5), -2.0), constant(0.0), "mob"); }

// Small search grid for the tests that only need a stable ballpark sup.
SupSearchConfig lean_search() {
    SupSearchConfig cfg;
    cfg.min_level = 1;
    cfg.max_level = 8;
    cfg.angular = 16;
    cfg.refine_rounds = 1;
    return cfg;
}

} // namespace

TEST_CASE("bloch_seminorm_analytic: pinned suprema") {
    const SupSearchResult id = bloch_seminorm_analytic(var_z(), {});
    CHECK(std::abs(id.sup - 1.0) <= 1e-12);
    CHECK(std::abs(id.argmax) <= 1e-12);

    const SupSearchResult flat = bloch_seminorm_analytic(constant(cplx(3.0, -1.0)), {});
    CHECK(flat.sup == 0.0);

    const SupSearchResult lg = bloch_seminorm_analytic(neg(log(affine(1.0, -1.0))), {});
    CHECK(lg.sup >= 1.99);
    CHECK(lg.sup <= 2.0 + 1e-9);
    CHECK(lg.boundary_limited);

    // h = z^2: sup 2r(1-r^2) = 4/(3 sqrt 3) at r = 1/sqrt(3), off the dyadic grid.
    const SupSearchResult sq = bloch_seminorm_analytic(mul(var_z(), var_z()), {});
    CHECK(std::abs(sq.sup - 4.0 / (3.0 * std::sqrt(3.0))) <= 5e-4);
    CHECK_FALSE(sq.boundary_limited);
}

TEST_CASE("bloch_little_probe separates o(1) decay from boundary mass") {
    const RadialTrend small = bloch_little_probe(var_z(), {});
    CHECK(small.decays_to_zero);
    const RadialTrend big = bloch_little_probe(neg(log(affine(1.0, -1.0))), {});
    CHECK_FALSE(big.decays_to_zero);
    CHECK(big.maxima.back() >= 1.9);
}

TEST_CASE("besov_norm_analytic: closed forms and the divergent witness") {
    const IntegralResult id = besov_norm_analytic(var_z(), 2.0);
    CHECK(std::abs(id.value - M_PI) <= 1e-8 * M_PI);
    CHECK(id.verdict == IntegralVerdict::ConvergedFinite);

    // h = -log(1 - z/2): |h'|^2 sums to pi ln(4/3) by the power-series oracle.
    const IntegralResult diri = besov_norm_analytic(neg(log(affine(1.0, -0.5))), 2.0);
    const double want = M_PI * std::log(4.0 / 3.0);
    CHECK(std::abs(diri.value - want) <= 1e-8 * want);

    const IntegralResult bad = besov_norm_analytic(neg(log(affine(1.0, -1.0))), 2.0);
    CHECK(bad.verdict == IntegralVerdict::DivergentSuspect);

    CHECK_THROWS_AS(besov_norm_analytic(var_z(), 1.0), ArgError);
}

TEST_CASE("besov_seminorm_smooth: 2^p consistency with the analytic form for w = 0") {
    const double p = 2.5;
    const IntegralResult smooth = besov_seminorm_smooth({mobius_map()}, p);
    // log h' = -2 log(1 - z/2) has derivative h''/h' = F_z.
    const IntegralResult analytic =
        besov_norm_analytic(scale(-2.0, log(affine(1.0, -0.5))), p);
    const double want = std::pow(2.0, p) * analytic.value;
    CHECK(std::abs(smooth.value - want) <= 1e-12 * want);

    // w(z) = z with h' = (1-z)^{-1/2} is the divergent family.
    const HarmonicMap r3 = make_map(pow(affine(1.0, -1.0), -0.5), var_z());
    CHECK(besov_seminorm_smooth({r3}, 2.0).verdict == IntegralVerdict::DivergentSuspect);
}

TEST_CASE("qp integrals: closed forms at a = 0") {
    const IntegralResult q1 = qp_integral(var_z(), 1.0, 0.0);
    CHECK(std::abs(q1.value - M_PI / 2.0) <= 1e-8);

    // h = z^2, n = 2, p = 1: 4 (1-|z|^2)^3 integrates to pi.
    const IntegralResult q2 = qp_nth_integral(mul(var_z(), var_z()), 2, 1.0, 0.0);
    CHECK(std::abs(q2.value - M_PI) <= 1e-8);

    CHECK(qp_integral(constant(cplx(2.0, 3.0)), 1.0, 0.3).value == 0.0);

    CHECK_THROWS_AS(qp_nth_integral(var_z(), 0, 1.0, 0.0), ArgError);
    CHECK_THROWS_AS(qp_integral(var_z(), 0.0, 0.0), ArgError);
    CHECK_THROWS_AS(qp_integral(var_z(), 1.0, cplx(1.0, 0.0)), DomainError);
}

TEST_CASE("qp_nth_integral with n = 1 IS qp_integral") {
    const ExprPtr h = mul(var_z(), var_z());
    const cplx a(0.3, 0.1);
    const IntegralResult via_n = qp_nth_integral(h, 1, 1.5, a);
    const IntegralResult direct = qp_integral(h, 1.5, a);
    CHECK(via_n.value == direct.value);
    CHECK(via_n.ring_contributions == direct.ring_contributions);
}

TEST_CASE("qp_integral: pulled-back form agrees with the direct integral") {
    const ExprPtr h = mul(var_z(), var_z());
    const cplx a(0.4, 0.2);
    const double p = 1.5;
    const IntegralResult pulled = qp_integral(h, p, a);
    const IntegralResult direct = integrate_disk(
        [&](cplx z) {
            const cplx hp = eval_value(derivative(h), z);
            return std::norm(hp) * std::pow(1.0 - std::norm(phi(a, z)), p);
        },
        {});
    CHECK(std::abs(pulled.value - direct.value) <= 1e-6 * direct.value);
}

TEST_CASE("qp_integral_smooth: factor 4 against the analytic log-derivative") {
    const cplx a(0.3, 0.0);
    const IntegralResult smooth = qp_integral_smooth({mobius_map()}, 2.0, a);
    const IntegralResult analytic =
        qp_integral(scale(-2.0, log(affine(1.0, -0.5))), 2.0, a);
    CHECK(std::abs(smooth.value - 4.0 * analytic.value) <= 1e-12 * smooth.value);
}

TEST_CASE("qp0_probe: ray families decay for compact-type symbols") {
    const TrendReport poly = qp0_probe(mul(var_z(), var_z()), 1.0);
    CHECK(poly.decaying);
    for (const auto& ray : poly.values) {
        REQUIRE(!ray.empty());
        CHECK(ray.back() < ray.front());
    }
    const TrendReport flat = qp0_probe(constant(1.0), 1.0);
    CHECK(flat.decaying);  // identically zero rays
}

TEST_CASE("I_f: Schwarzian-trivial maps give zero; the shear is finite") {
    CHECK(I_f(make_map(constant(1.0), constant(0.0)), 2.0).value <= 1e-12);
    CHECK(I_f(mobius_map(), 2.0).value <= 1e-10);
    CHECK(I_h(mobius_map(), 2.0).value <= 1e-10);

    const IntegralResult sh = I_f(shear_half(), 2.0);
    CHECK(sh.verdict == IntegralVerdict::ConvergedFinite);
    CHECK(sh.converged);
    CHECK(std::abs(sh.value - 0.0346939) <= 1e-3 * 0.0346939);
    CHECK_THROWS_AS(I_f(shear_half(), 1.0), ArgError);
}

TEST_CASE("carleson_constant: rotationally invariant density pins both routes") {
    // density (1-|z|^2)^{p-2} with p = 3: route B is exactly pi/2 at every a,
    // route A ratios are (pi/2)(2-len)^2, topping out near 2 pi.
    CarlesonDensity d;
    d.p = 3.0;
    d.custom = [](cplx z) { return 1.0 - std::norm(z); };
    CarlesonOptions opts;
    opts.a_search = lean_search();
    const CarlesonResult r = carleson_constant(d, shear_half(), opts);
    CHECK(std::abs(r.route_b.value() - M_PI / 2.0) <= 1e-3);
    CHECK(r.route_a >= 2.0 * M_PI * 0.9);
    CHECK(r.route_a <= 2.0 * M_PI * 1.05);
    CHECK(r.ratio_b_over_a >= 0.22);
    CHECK(r.ratio_b_over_a <= 0.28);
    CHECK(r.best_box.len <= 0.01);  // the sup sits at the smallest dyadic length
}

TEST_CASE("carleson_constant: zero densities short-circuit both routes") {
    CarlesonDensity zero;
    zero.p = 2.0;
    zero.custom = [](cplx) { return 0.0; };
    CarlesonOptions opts;
    opts.a_search = lean_search();
    const CarlesonResult rz = carleson_constant(zero, shear_half(), opts);
    CHECK(rz.route_a == 0.0);
    CHECK(rz.route_b.value() == 0.0);
    CHECK(rz.ratio_b_over_a == 0.0);

    // f = z has S_f = 0, so the Schwarzian density vanishes identically.
    const CarlesonResult rid =
        carleson_constant({2.0, {}}, make_map(constant(1.0), constant(0.0)), opts);
    CHECK(rid.route_a <= 1e-15);
    CHECK(rid.route_b.value() <= 1e-15);
}

TEST_CASE("vanishing_carleson_probe: dominated densities decay") {
    CarlesonDensity d;
    d.p = 1.0;
    d.custom = [](cplx z) { return std::pow(1.0 - std::norm(z), 2.0); };
    CarlesonOptions opts;
    opts.a_search = lean_search();
    const VanishingCarlesonReport r =
        vanishing_carleson_probe(d, make_map(constant(1.0), constant(0.0)), opts);
    CHECK(r.decaying);
    REQUIRE(r.box_ratio_max.size() >= 2);
    // box_len runs from 1 down to 2^-max_log2_len: the ratios must shrink
    CHECK(r.box_ratio_max.back() < 0.01 * r.box_ratio_max.front());
}

TEST_CASE("beta2: pinned suprema and exact affine rescaling") {
    const SupSearchResult id = beta2(make_map(constant(1.0), constant(0.0)), {});
    CHECK(std::abs(id.sup - 1.0) <= 1e-12);

    const double b2 = std::pow(2.0, 1.5);
    const SupSearchResult s3 = beta2(sec3_map(), {});
    CHECK(s3.sup >= b2 - 0.03);
    CHECK(s3.sup <= b2 + 1e-12);
    CHECK(s3.boundary_limited);

    const cplx a(1.3, 0.2), b(0.4, -0.1);
    const double c = std::norm(a) - std::norm(b);
    const SupSearchConfig cfg = lean_search();
    const double base = beta2(shear_half(), cfg).sup;
    const double scaled = beta2(affine_transform(shear_half(), a, b), cfg).sup;
    CHECK(std::abs(scaled - std::sqrt(c) * base) <= 1e-12 * scaled);
}

TEST_CASE("bt0_probe: the section-3 map is not BT_0, the identity is") {
    CHECK_FALSE(bt0_probe(sec3_map(), {}).decays_to_zero);
    CHECK(bt0_probe(make_map(constant(1.0), constant(0.0)), {}).decays_to_zero);
}

TEST_CASE("bt_p: closed form, frozen shear value, divergent witness") {
    const IntegralResult id = bt_p(make_map(constant(1.0), constant(0.0)), 2.0);
    CHECK(std::abs(id.value - M_PI) <= 1e-8 * M_PI);

    const IntegralResult sh = bt_p(shear_half(), 2.5);
    CHECK(sh.verdict == IntegralVerdict::ConvergedFinite);
    CHECK(std::abs(sh.value - 2.1660244823) <= 1e-6 * 2.1660244823);

    CHECK(bt_p(sec3_map(), 2.0).verdict == IntegralVerdict::DivergentSuspect);
    CHECK_THROWS_AS(bt_p(shear_half(), 1.0), ArgError);
}

TEST_CASE("qt_p: identity sup sits at a = 0 with value pi/3") {
    const SupIntegralResult r = qt_p(make_map(constant(1.0), constant(0.0)), 2.0,
                                     lean_search());
    CHECK(std::abs(r.value() - M_PI / 3.0) <= 1e-6);
    CHECK(std::abs(r.search.argmax) <= 1e-12);
    CHECK_THROWS_AS(qt_p(shear_half(), 0.0, lean_search()), ArgError);
}

TEST_CASE("qt_p: BT containment witness qt_p <= beta2^2 pi/(p-1)") {
    const double p = 2.0;
    const double b2 = beta2(shear_half(), {}).sup;
    const SupIntegralResult q = qt_p(shear_half(), p, lean_search());
    CHECK(q.value() <= b2 * b2 * M_PI / (p - 1.0) * 1.001);
}

TEST_CASE("distortion_check: margins stay nonnegative, guard near ||w|| = 1") {
    std::vector<std::pair<cplx, cplx>> pairs = seeded_pairs(25, 0.9, 3001);
    pairs.emplace_back(cplx(0.3, -0.2), cplx(0.3, -0.2));  // z1 = z2 pins margin 0
    const DistortionReport rep = distortion_check(shear_half(), pairs, lean_search());
    CHECK(rep.w_norm >= 0.49);
    CHECK(rep.w_norm < 0.5);
    REQUIRE(rep.margins.size() == pairs.size());
    for (double m : rep.margins) CHECK(m >= -1e-9);
    CHECK(std::abs(rep.margins.back()) <= 1e-12);

    const HarmonicMap tight = make_map(constant(1.0), constant(1.0 - 1e-7));
    CHECK_THROWS_AS(distortion_check(tight, pairs, lean_search()), NotApplicable);
}

TEST_CASE("nh_envelopes: pinned values, ordering and argument guards") {
    for (double mu : {0.25, 0.5, 0.75, 1.0}) {
        const auto [lo0, hi0] = nh_envelopes(mu, 0.0);
        CHECK(std::abs(lo0 - 1.0) <= 1e-15);
        CHECK(std::abs(hi0 - 1.0) <= 1e-15);
        for (int i = 0; i < 99; ++i) {
            const auto [lo, hi] = nh_envelopes(mu, 0.01 * i);
            CHECK(lo <= 1.0 + 1e-15);
            CHECK(hi >= 1.0 - 1e-15);
        }
    }
    const auto [l1, u1] = nh_envelopes(1.0, 0.5);
    CHECK(std::abs(l1 - 0.75) <= 1e-12);
    CHECK(std::abs(u1 - 4.0 / 3.0) <= 1e-12);

    const double A = std::sqrt(1.5) + std::sqrt(0.5);
    const auto [l34, u34] = nh_envelopes(0.75, 0.5);
    CHECK(std::abs(l34 - A * A / (4.0 * std::pow(0.75, -0.5))) <= 1e-12);
    CHECK(l34 <= u34);

    CHECK_THROWS_AS(nh_envelopes(0.0, 0.5), ArgError);
    CHECK_THROWS_AS(nh_envelopes(1.1, 0.5), ArgError);
    CHECK_THROWS_AS(nh_envelopes(0.5, 1.0), ArgError);
    CHECK_THROWS_AS(nh_envelopes(0.5, -0.1), ArgError);
}

TEST_CASE("qp_norm: constant symbols have zero norm everywhere") {
    const SupIntegralResult r = qp_norm(constant(cplx(5.0, 1.0)), 1.0, lean_search());
    CHECK(r.value() == 0.0);
    CHECK(r.search.sup == 0.0);
}
