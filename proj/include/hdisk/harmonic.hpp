#pragma once

#include <string>

#include "hdisk/expr.hpp"
#include "hdisk/geometry.hpp"
#include "hdisk/jet.hpp"

namespace hdisk {

/// Sense-preserving harmonic mapping f = h + conj(g) on the disk,
/// normalized by h(0) = g(0) = 0, carried as the pair (h', w) with
/// w = g'/h' the second complex dilatation; g' = w·h' is never stored.
/// Sense preservation (|w| < 1, h' != 0) is checked lazily at evaluation
/// points, raising NotSensePreserving on violation.
struct HarmonicMap {
    ExprPtr h_prime;
    ExprPtr w;
    std::string label;
};

/// The differential data of F = log J_f at a point:
///   P   = F_z = h''/h' - w' conj(w) / (1-|w|^2)   (pre-Schwarzian)
///   Fzz = (h''/h')' - w'' conj(w)/(1-|w|^2) - (w' conj(w)/(1-|w|^2))^2
///   S   = Fzz - P^2/2                              (Schwarzian)
///   Sh  = h'''/h' - (3/2)(h''/h')^2               (analytic Schwarzian of h)
/// F_zbar = conj(F_z) identically; the smooth functionals rely on that.
struct SchwarzianValue {
    cplx P{};
    cplx Fzz{};
    cplx S{};
    cplx Sh{};
    double dual_residual = 0.0;  // |S_route1 - S_route2| / max(|S1|, |S2|, 1)
};

HarmonicMap make_map(ExprPtr h_prime, ExprPtr w, std::string label = "");

/// |h'(z)|^2 (1 - |w(z)|^2); strictly positive for sense-preserving maps.
double jacobian(const HarmonicMap& f, cplx z);

cplx pre_schwarzian(const HarmonicMap& f, cplx z);

/// Computes S along two independent routes — Fzz - P^2/2 and the
/// S_h-correction form — and raises InternalMismatch if they disagree
/// beyond 1e-10 relative. Returns the first form.
SchwarzianValue schwarzian(const HarmonicMap& f, cplx z);

/// sup over the disk of (1-|z|^2)^2 |S_f| and (1-|z|^2)|P_f|.
SupSearchResult schwarzian_norm(const HarmonicMap& f, const SupSearchConfig& cfg = {});
SupSearchResult pre_schwarzian_norm(const HarmonicMap& f, const SupSearchConfig& cfg = {});

/// Shear construction: the harmonic map with h - g = phi and g' = w h',
/// i.e. h' = phi'/(1 - w). Validates |w| < 1 and 1 - w != 0 on a sample grid.
HarmonicMap shear(const ExprPtr& phi, const ExprPtr& w);

/// phi_lambda' = h'(1 + lambda w) for |lambda| = 1 (tolerance 1e-12).
ExprPtr lambda_combination(const HarmonicMap& f, cplx lambda);

/// Log-derivative phi_lambda''/phi_lambda' = h''/h' + lambda w'/(1 + lambda w).
cplx lambda_log_derivative(const HarmonicMap& f, cplx lambda, cplx z);

/// |S_h - [S_phi + (phi''/phi') C + C^2/2 - lambda w''/(1+lambda w)]| with
/// C = lambda w'/(1+lambda w); near zero certifies the S_h <-> S_phi identity.
double sh_sphi_residual(const HarmonicMap& f, cplx lambda, cplx z);

/// f(z) = h(z) + conj(g(z)) via radial antiderivatives of h' and w h'.
cplx map_value(const HarmonicMap& f, cplx z);

// ---- map algebra (used by the invariance checks) --------------------------

/// The map a f + b conj(f): h_2' = h'(a + b w), w_2 = (conj(a) w + conj(b))/(a + b w).
/// Sense-preserving iff |a| > |b|; its Jacobian is (|a|^2-|b|^2) J_f pointwise.
HarmonicMap affine_transform(const HarmonicMap& f, cplx a, cplx b);

/// Precomposition with the automorphism sigma(z) = rot·phi_c(z), |rot| = 1:
/// h_2' = (h'∘sigma)·sigma', w_2 = w∘sigma. J_{f∘sigma} = (J_f∘sigma)|sigma'|^2.
HarmonicMap precompose_automorphism(const HarmonicMap& f, cplx c, cplx rot = 1.0);

} // namespace hdisk
