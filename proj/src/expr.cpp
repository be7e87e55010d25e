#include "hdisk/expr.hpp"

#include <cmath>

#include "hdisk/errors.hpp"
#include "hdisk/gauss.hpp"

namespace hdisk {

namespace {

ExprPtr node(AnalyticExpr e) { return std::make_shared<const AnalyticExpr>(std::move(e)); }

// Bases this close to zero are treated as singular; quadrature nodes stay
// at distance >= 2^-15 from boundary singularities, far above this.
constexpr double kSingular = 1e-14;

} // namespace

ExprPtr constant(cplx c) { return node({ExprKind::Const, c}); }
ExprPtr var_z() { return node({ExprKind::Z}); }
ExprPtr add(ExprPtr l, ExprPtr r) { return node({ExprKind::Add, {}, {}, 0, std::move(l), std::move(r)}); }
ExprPtr sub(ExprPtr l, ExprPtr r) { return node({ExprKind::Sub, {}, {}, 0, std::move(l), std::move(r)}); }
ExprPtr mul(ExprPtr l, ExprPtr r) { return node({ExprKind::Mul, {}, {}, 0, std::move(l), std::move(r)}); }
ExprPtr div(ExprPtr n, ExprPtr d) { return node({ExprKind::Div, {}, {}, 0, std::move(n), std::move(d)}); }
ExprPtr neg(ExprPtr e) { return node({ExprKind::Neg, {}, {}, 0, std::move(e)}); }
ExprPtr scale(cplx k, ExprPtr e) { return node({ExprKind::Scale, k, {}, 0, std::move(e)}); }
ExprPtr affine(cplx a, cplx b) { return node({ExprKind::Affine, a, b}); }
ExprPtr pow(ExprPtr base, double alpha) { return node({ExprKind::Pow, {}, {}, alpha, std::move(base)}); }
ExprPtr log(ExprPtr base) { return node({ExprKind::Log, {}, {}, 0, std::move(base)}); }
ExprPtr exp(ExprPtr e) { return node({ExprKind::Exp, {}, {}, 0, std::move(e)}); }
ExprPtr compose(ExprPtr outer, ExprPtr inner) {
    return node({ExprKind::Compose, {}, {}, 0, std::move(outer), std::move(inner)});
}
ExprPtr blaschke(cplx a) { return node({ExprKind::Blaschke, a}); }

namespace {

// Recursive jet evaluation. The |z| < 1 check lives at the API boundary
// (eval_jet); compose evaluates the outer tree at inner values that may
// leave the disk, which is legitimate for expressions like 1/(1-z).
Jet3 jet_rec(const AnalyticExpr& e, cplx z) {
    switch (e.kind) {
        case ExprKind::Const: return jet_const(e.c);
        case ExprKind::Z: return jet_var(z);
        case ExprKind::Add: return jet_rec(*e.lhs, z) + jet_rec(*e.rhs, z);
        case ExprKind::Sub: return jet_rec(*e.lhs, z) - jet_rec(*e.rhs, z);
        case ExprKind::Mul: return jet_rec(*e.lhs, z) * jet_rec(*e.rhs, z);
        case ExprKind::Div: {
            Jet3 den = jet_rec(*e.rhs, z);
            if (std::abs(den.v) < kSingular) throw SingularityError("div", z);
            return jet_rec(*e.lhs, z) / den;
        }
        case ExprKind::Neg: return -jet_rec(*e.lhs, z);
        case ExprKind::Scale: return e.c * jet_rec(*e.lhs, z);
        case ExprKind::Affine: return {e.c + e.b * z, e.b, 0.0, 0.0};
        case ExprKind::Pow: {
            Jet3 base = jet_rec(*e.lhs, z);
            if (std::abs(base.v) < kSingular) throw SingularityError("pow", z);
            return jet_pow(base, e.alpha);
        }
        case ExprKind::Log: {
            Jet3 base = jet_rec(*e.lhs, z);
            if (std::abs(base.v) < kSingular) throw SingularityError("log", z);
            return jet_log(base);
        }
        case ExprKind::Exp: return jet_exp(jet_rec(*e.lhs, z));
        case ExprKind::Compose: {
            Jet3 inner = jet_rec(*e.rhs, z);
            return jet_compose(jet_rec(*e.lhs, inner.v), inner);
        }
        case ExprKind::Blaschke: return jet_blaschke(e.c, z);
    }
    throw Error("unreachable expression kind");
}

cplx value_rec(const AnalyticExpr& e, cplx z) {
    switch (e.kind) {
        case ExprKind::Const: return e.c;
        case ExprKind::Z: return z;
        case ExprKind::Add: return value_rec(*e.lhs, z) + value_rec(*e.rhs, z);
        case ExprKind::Sub: return value_rec(*e.lhs, z) - value_rec(*e.rhs, z);
        case ExprKind::Mul: return value_rec(*e.lhs, z) * value_rec(*e.rhs, z);
        case ExprKind::Div: {
            cplx den = value_rec(*e.rhs, z);
            if (std::abs(den) < kSingular) throw SingularityError("div", z);
            return value_rec(*e.lhs, z) / den;
        }
        case ExprKind::Neg: return -value_rec(*e.lhs, z);
        case ExprKind::Scale: return e.c * value_rec(*e.lhs, z);
        case ExprKind::Affine: return e.c + e.b * z;
        case ExprKind::Pow: {
            cplx base = value_rec(*e.lhs, z);
            if (std::abs(base) < kSingular) throw SingularityError("pow", z);
            return std::pow(base, e.alpha);
        }
        case ExprKind::Log: {
            cplx base = value_rec(*e.lhs, z);
            if (std::abs(base) < kSingular) throw SingularityError("log", z);
            return std::log(base);
        }
        case ExprKind::Exp: return std::exp(value_rec(*e.lhs, z));
        case ExprKind::Compose: return value_rec(*e.lhs, value_rec(*e.rhs, z));
        case ExprKind::Blaschke: return (e.c - z) / (1.0 - std::conj(e.c) * z);
    }
    throw Error("unreachable expression kind");
}

void require_in_disk(cplx z) {
    if (std::abs(z) >= 1.0)
        throw DomainError("evaluation point outside the open unit disk");
}

} // namespace

Jet3 eval_jet(const ExprPtr& e, cplx z) {
    require_in_disk(z);
    return jet_rec(*e, z);
}

cplx eval_value(const ExprPtr& e, cplx z) {
    require_in_disk(z);
    return value_rec(*e, z);
}

ExprPtr derivative(const ExprPtr& e) {
    switch (e->kind) {
        case ExprKind::Const: return constant(0.0);
        case ExprKind::Z: return constant(1.0);
        case ExprKind::Add: return add(derivative(e->lhs), derivative(e->rhs));
        case ExprKind::Sub: return sub(derivative(e->lhs), derivative(e->rhs));
        case ExprKind::Mul:
            return add(mul(derivative(e->lhs), e->rhs), mul(e->lhs, derivative(e->rhs)));
        case ExprKind::Div:
            return div(sub(mul(derivative(e->lhs), e->rhs), mul(e->lhs, derivative(e->rhs))),
                       mul(e->rhs, e->rhs));
        case ExprKind::Neg: return neg(derivative(e->lhs));
        case ExprKind::Scale: return scale(e->c, derivative(e->lhs));
        case ExprKind::Affine: return constant(e->b);
        case ExprKind::Pow:
            return scale(e->alpha, mul(pow(e->lhs, e->alpha - 1.0), derivative(e->lhs)));
        case ExprKind::Log: return div(derivative(e->lhs), e->lhs);
        case ExprKind::Exp: return mul(exp(e->lhs), derivative(e->lhs));
        case ExprKind::Compose:
            return mul(compose(derivative(e->lhs), e->rhs), derivative(e->rhs));
        case ExprKind::Blaschke:
            // phi_a'(z) = (|a|^2 - 1) / (1 - conj(a) z)^2
            return scale(std::norm(e->c) - 1.0, pow(affine(1.0, -std::conj(e->c)), -2.0));
    }
    throw Error("unreachable expression kind");
}

cplx radial_antiderivative(const ExprPtr& e, cplx z, std::size_t nodes) {
    require_in_disk(z);
    if (nodes < 2 || nodes > 64) throw ArgError("radial_antiderivative: nodes must be in [2, 64]");
    const GaussRule& rule = gauss_legendre(nodes);
    cplx acc = 0.0;
    for (std::size_t i = 0; i < nodes; ++i) {
        const double t = 0.5 * (rule.nodes[i] + 1.0);  // map [-1,1] -> [0,1]
        acc += 0.5 * rule.weights[i] * value_rec(*e, t * z);
    }
    return acc * z;
}

Jet3 finite_difference_jet(const ExprPtr& e, cplx z, double step) {
    if (step <= 0.0) throw ArgError("finite_difference_jet: step must be positive");
    if (std::abs(z) + 3.0 * step >= 1.0)
        throw DomainError("finite_difference_jet: stencil margin |z| + 3*step must stay below 1");
    // Trigonometric differentiation: f^(k)(z) = k!/(N h^k) sum_j f(z + h w^j) w^{-jk}
    // with w = e^{2*pi*i/N}; aliasing error O(h^{N-k}) is negligible at N = 24.
    constexpr int N = 24;
    Jet3 out{};
    cplx s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    for (int j = 0; j < N; ++j) {
        const double th = 2.0 * M_PI * j / N;
        const cplx wj = std::polar(1.0, th);
        const cplx fj = value_rec(*e, z + step * wj);
        s0 += fj;
        s1 += fj * std::polar(1.0, -th);
        s2 += fj * std::polar(1.0, -2.0 * th);
        s3 += fj * std::polar(1.0, -3.0 * th);
    }
    out.v = s0 / static_cast<double>(N);
    out.d1 = s1 / (N * step);
    out.d2 = 2.0 * s2 / (N * step * step);
    out.d3 = 6.0 * s3 / (N * step * step * step);
    return out;
}

} // namespace hdisk
