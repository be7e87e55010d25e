#pragma once

#include <cstddef>
#include <memory>
#include <string>

#include "hdisk/jet.hpp"

namespace hdisk {

/// Closed expression-tree representation of an analytic function on the
/// unit disk. Nodes are immutable and shared; every operation below is pure.
/// The node set is exactly: const, z, add, sub, mul, div, neg, scale,
/// affine (a + b z), pow (base^alpha, principal branch), log, exp,
/// compose, blaschke (phi_a). It is closed under symbolic differentiation.
struct AnalyticExpr;
using ExprPtr = std::shared_ptr<const AnalyticExpr>;

enum class ExprKind {
    Const, Z, Add, Sub, Mul, Div, Neg, Scale, Affine, Pow, Log, Exp, Compose, Blaschke
};

struct AnalyticExpr {
    ExprKind kind;
    cplx c{};       // const value / scale factor / affine a / blaschke a
    cplx b{};       // affine b
    double alpha{}; // pow exponent
    ExprPtr lhs;    // binary lhs / unary arg / compose outer
    ExprPtr rhs;    // binary rhs / compose inner
};

// ---- constructors -------------------------------------------------------
ExprPtr constant(cplx c);
ExprPtr var_z();
ExprPtr add(ExprPtr l, ExprPtr r);
ExprPtr sub(ExprPtr l, ExprPtr r);
ExprPtr mul(ExprPtr l, ExprPtr r);
ExprPtr div(ExprPtr num, ExprPtr den);
ExprPtr neg(ExprPtr e);
ExprPtr scale(cplx k, ExprPtr e);
ExprPtr affine(cplx a, cplx b);            // a + b z
ExprPtr pow(ExprPtr base, double alpha);   // principal branch
ExprPtr log(ExprPtr base);                 // principal branch
ExprPtr exp(ExprPtr e);
ExprPtr compose(ExprPtr outer, ExprPtr inner);
ExprPtr blaschke(cplx a);                  // phi_a(z) = (a - z)/(1 - conj(a) z)

// ---- evaluation ---------------------------------------------------------

/// Value and first three derivatives at z. Requires |z| < 1 (DomainError);
/// raises SingularityError naming the offending node if a division, log or
/// pow hits a base within 1e-14 of zero.
Jet3 eval_jet(const ExprPtr& e, cplx z);

/// Value-only fast path with the same domain/singularity contract.
cplx eval_value(const ExprPtr& e, cplx z);

/// Symbolic derivative; the result is again within the node set above.
ExprPtr derivative(const ExprPtr& e);

/// ∫₀¹ e(t z)·z dt by fixed-order Gauss-Legendre: the value at z of the
/// antiderivative of e vanishing at 0. Deterministic for fixed inputs.
cplx radial_antiderivative(const ExprPtr& e, cplx z, std::size_t nodes = 64);

/// Independent derivative oracle: trigonometric interpolation on a circle
/// of radius `step` around z (24 samples). Requires |z| + 3·step < 1.
Jet3 finite_difference_jet(const ExprPtr& e, cplx z, double step);

// ---- serialization ------------------------------------------------------
// JSON schema (complex scalars are [re, im] pairs):
//   {"op":"const","value":[re,im]}        {"op":"z"}
//   {"op":"add","lhs":A,"rhs":B}          (likewise sub, mul, div)
//   {"op":"neg","arg":A}                  {"op":"scale","k":[re,im],"arg":A}
//   {"op":"affine","a":[re,im],"b":[re,im]}
//   {"op":"pow","base":A,"exp":alpha}     {"op":"log","arg":A}  {"op":"exp","arg":A}
//   {"op":"compose","outer":A,"inner":B}  {"op":"blaschke","a":[re,im]}
std::string expr_to_json_text(const ExprPtr& e, int indent = -1);
ExprPtr expr_from_json_text(const std::string& text);

} // namespace hdisk
