#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "hdisk/errors.hpp"
#include "hdisk/expr.hpp"
#include "helpers.hpp"

using namespace hdisk;
using hdisk::test::dev;
using hdisk::test::seeded_points;

namespace {

// A pool of expressions covering every node kind, all analytic on a
// neighbourhood of the closed disk (poles/branch points at |z| >= 2).
std::vector<ExprPtr> expression_pool() {
    return {
        exp(var_z()),
        mul(var_z(), mul(var_z(), var_z())),
        pow(affine(1.0, -0.5), -2.0),
        div(var_z(), affine(1.0, -0.5)),
        log(affine(1.0, -0.5)),
        blaschke(cplx(0.3, 0.2)),
        compose(exp(var_z()), blaschke(cplx(-0.2, 0.4))),
        scale(cplx(0.0, 2.0), sub(affine(0.5, 1.0), neg(var_z()))),
        add(constant(cplx(1.0, -2.0)), pow(affine(2.0, 0.25), 1.5)),
    };
}

} // namespace

TEST_CASE("eval_jet: identity and constant jets") {
    const cplx z0(0.3, 0.1);
    const Jet3 jz = eval_jet(var_z(), z0);
    CHECK(std::abs(jz.v - z0) == 0.0);
    CHECK(std::abs(jz.d1 - 1.0) == 0.0);
    CHECK(std::abs(jz.d2) == 0.0);
    CHECK(std::abs(jz.d3) == 0.0);

    const Jet3 jc = eval_jet(constant(cplx(2.0, -1.0)), z0);
    CHECK(std::abs(jc.v - cplx(2.0, -1.0)) == 0.0);
    CHECK(std::abs(jc.d1) == 0.0);
}

TEST_CASE("eval_jet: (1-z)^{-3/2} derivatives at the origin") {
    const Jet3 j = eval_jet(pow(affine(1.0, -1.0), -1.5), 0.0);
    CHECK(std::abs(j.v - 1.0) <= 1e-14);
    CHECK(std::abs(j.d1 - 1.5) <= 1e-14);      // 3/2
    CHECK(std::abs(j.d2 - 3.75) <= 1e-14);     // (3/2)(5/2)
    CHECK(std::abs(j.d3 - 13.125) <= 1e-13);   // (3/2)(5/2)(7/2) = 105/8
}

TEST_CASE("eval_jet: geometric quotient 1/(1 - z/2) at the origin") {
    const Jet3 j = eval_jet(div(constant(1.0), affine(1.0, -0.5)), 0.0);
    // d^n/dz^n (1 - rho z)^{-1} = n! rho^n / (…)^{n+1}: 1, 1/2, 1/2, 3/4 at 0.
    CHECK(std::abs(j.v - 1.0) <= 1e-15);
    CHECK(std::abs(j.d1 - 0.5) <= 1e-15);
    CHECK(std::abs(j.d2 - 0.5) <= 1e-15);
    CHECK(std::abs(j.d3 - 0.75) <= 1e-15);
}

TEST_CASE("radial_antiderivative: closed forms") {
    // constant integrand: antiderivative is c z.
    CHECK(std::abs(radial_antiderivative(constant(1.0), 0.5) - 0.5) <= 1e-14);
    // 1/(1 - z/2) integrates to -2 log(1 - z/2): at z = 0.8 that is -2 log(0.6).
    const cplx got = radial_antiderivative(div(constant(1.0), affine(1.0, -0.5)), 0.8);
    CHECK(std::abs(got - cplx(-2.0 * std::log(0.6))) <= 1e-13);
    // z integrates to z^2/2, approaching -1/2 toward z = i; the |z| < 1
    // precondition keeps the probe just inside the disk.
    const cplx zi(0.0, 1.0 - 1e-12);
    CHECK(std::abs(radial_antiderivative(var_z(), zi) - cplx(-0.5, 0.0)) <= 5e-12);
    CHECK(std::abs(radial_antiderivative(var_z(), cplx(0.0, 0.6)) - cplx(-0.18, 0.0)) <= 1e-14);
}

TEST_CASE("finite_difference_jet: pinned examples") {
    const Jet3 sq = finite_difference_jet(mul(var_z(), var_z()), 0.2, 0.1);
    CHECK(std::abs(sq.d1 - 0.4) <= 1e-8);

    const Jet3 ex = finite_difference_jet(exp(var_z()), 0.0, 0.2);
    CHECK(std::abs(ex.d1 - 1.0) <= 1e-6);
    CHECK(std::abs(ex.d2 - 1.0) <= 1e-6);
    CHECK(std::abs(ex.d3 - 1.0) <= 1e-6);

    const Jet3 lg = finite_difference_jet(log(affine(1.0, -1.0)), 0.5, 0.1);
    CHECK(std::abs(lg.d1 - (-2.0)) <= 1e-6);
}

TEST_CASE("finite differences corroborate jets across the disk") {
    const auto pool = expression_pool();
    double worst = 0.0;
    for (const cplx z : seeded_points(100, 0.9, 42)) {
        const double step = (1.0 - std::abs(z)) / 8.0;
        for (const auto& e : pool) {
            const Jet3 a = eval_jet(e, z);
            const Jet3 b = finite_difference_jet(e, z, step);
            worst = std::max({worst, dev(a.v, b.v), dev(a.d1, b.d1), dev(a.d2, b.d2),
                              dev(a.d3, b.d3)});
        }
    }
    CHECK(worst <= 1e-6);
}

TEST_CASE("symbolic derivative fills the shifted jet slots") {
    const auto pool = expression_pool();
    double worst = 0.0;
    for (const cplx z : seeded_points(40, 0.8, 7)) {
        for (const auto& e : pool) {
            const Jet3 j = eval_jet(e, z);
            const Jet3 jd = eval_jet(derivative(e), z);
            worst = std::max({worst, dev(jd.v, j.d1), dev(jd.d1, j.d2), dev(jd.d2, j.d3)});
        }
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("product rule holds between independently evaluated jets") {
    const auto pool = expression_pool();
    double worst = 0.0;
    for (const cplx z : seeded_points(25, 0.8, 8)) {
        for (std::size_t i = 0; i < pool.size(); ++i) {
            const auto& A = pool[i];
            const auto& B = pool[(i + 3) % pool.size()];
            const Jet3 a = eval_jet(A, z), b = eval_jet(B, z);
            const Jet3 prod = eval_jet(mul(A, B), z);
            worst = std::max(worst, dev(prod.d1, a.d1 * b.v + a.v * b.d1));
            worst = std::max(worst, dev(prod.d2, a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2));
        }
    }
    CHECK(worst <= 1e-13);
}

TEST_CASE("chain rule holds through compose nodes") {
    const ExprPtr inner = blaschke(cplx(0.25, -0.3));
    const ExprPtr outer = exp(var_z());
    const ExprPtr comp = compose(outer, inner);
    double worst = 0.0;
    for (const cplx z : seeded_points(50, 0.9, 9)) {
        const Jet3 bi = eval_jet(inner, z);
        const Jet3 bo = eval_jet(outer, bi.v);
        const Jet3 jc = eval_jet(comp, z);
        worst = std::max(worst, dev(jc.v, bo.v));
        worst = std::max(worst, dev(jc.d1, bo.d1 * bi.d1));
        worst = std::max(worst, dev(jc.d2, bo.d2 * bi.d1 * bi.d1 + bo.d1 * bi.d2));
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("JSON serialization round-trips every node kind") {
    for (const auto& e : expression_pool()) {
        const std::string text = expr_to_json_text(e);
        const ExprPtr back = expr_from_json_text(text);
        // same analytic function...
        for (const cplx z : seeded_points(10, 0.7, 11)) {
            const Jet3 a = eval_jet(e, z), b = eval_jet(back, z);
            CHECK(std::abs(a.v - b.v) == 0.0);
            CHECK(std::abs(a.d3 - b.d3) == 0.0);
        }
        // ...and a stable serialized form.
        CHECK(expr_to_json_text(back) == text);
    }
}

TEST_CASE("domain and singularity errors") {
    CHECK_THROWS_AS(eval_jet(var_z(), cplx(1.0, 0.0)), DomainError);
    CHECK_THROWS_AS(eval_jet(var_z(), cplx(0.8, 0.7)), DomainError);
    CHECK_THROWS_AS(eval_value(log(var_z()), 0.0), SingularityError);
    CHECK_THROWS_AS(eval_jet(pow(var_z(), 0.5), 0.0), SingularityError);
    try {
        eval_jet(div(constant(1.0), sub(var_z(), constant(0.5))), 0.5);
        CHECK(false);
    } catch (const SingularityError& se) {
        CHECK(se.node() == "div");
        CHECK(std::abs(se.at() - cplx(0.5, 0.0)) <= 1e-15);
    }
}

TEST_CASE("finite_difference_jet and radial_antiderivative preconditions") {
    CHECK_THROWS_AS(finite_difference_jet(exp(var_z()), 0.9, 0.05), DomainError);
    CHECK_THROWS_AS(finite_difference_jet(exp(var_z()), 0.1, 0.0), ArgError);
    CHECK_THROWS_AS(radial_antiderivative(var_z(), cplx(1.0, 0.0)), DomainError);
    CHECK_THROWS_AS(radial_antiderivative(var_z(), 0.5, 1), ArgError);
    CHECK_THROWS_AS(radial_antiderivative(var_z(), 0.5, 65), ArgError);
}

TEST_CASE("malformed expression JSON is rejected") {
    CHECK_THROWS(expr_from_json_text("{\"op\":\"nope\"}"));
    CHECK_THROWS(expr_from_json_text("[1,2]"));
    CHECK_THROWS(expr_from_json_text("{\"op\":\"add\",\"lhs\":{\"op\":\"z\"}}"));
}
