#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "hdisk/expr.hpp"
#include "hdisk/jet.hpp"

namespace hdisk {

// ---- disk automorphisms --------------------------------------------------

/// phi_a(z) = (a - z)/(1 - conj(a) z); an involutive automorphism of the disk.
cplx phi(cplx a, cplx z);
/// d/dz phi_a(z) = (|a|^2 - 1)/(1 - conj(a) z)^2.
cplx phi_prime(cplx a, cplx z);

/// Residual of the identity (1-|z|^2)|phi_a'(z)| = 1 - |phi_a(z)|^2.
double invariance_identity_residual(cplx a, cplx z);

/// d_h(z, xi) = (1/2) log((1+p)/(1-p)) with p the pseudo-hyperbolic distance.
double hyperbolic_distance(cplx z, cplx xi);

/// (1 - |w(z)|^2) - (1 - |z|^2)|w'(z)|; nonnegative for analytic self-maps
/// of the disk (Schwarz-Pick). Raises NotSelfMap when |w(z)| >= 1.
double schwarz_pick_margin(const ExprPtr& w, cplx z);

// ---- Carleson boxes -------------------------------------------------------

/// Arc I of normalized length len centered at angle theta; the box is
/// S(I) = { r e^{it} : 1 - r < len, |t - theta| <= pi len }.
/// Its area is pi len^2 (2 - len).
struct CarlesonBox {
    double theta = 0.0;
    double len = 1.0;  // in (0, 1]
};

struct WeightedNode {
    cplx z;
    double weight;  // includes the polar factor r dr dt
};

double box_area(const CarlesonBox& b);

/// Polar product quadrature covering S(I): Gauss-Legendre in r on
/// [1-len, 1] times uniform angular midpoints. Total weight equals the
/// box area to machine precision; node sets are rotation-equivariant.
std::vector<WeightedNode> box_region(const CarlesonBox& b,
                                     std::size_t radial_nodes = 16,
                                     std::size_t angular_nodes = 64);

// ---- supremum search ------------------------------------------------------

/// Grid-plus-refinement search for sup over the disk of a real objective.
/// Candidates are the origin plus circles r_k = 1 - 2^-k for
/// k = min_level..max_level with `angular` uniform samples each; the best
/// point is then refined locally. The search radius is capped at
/// 1 - 2^-max_level; suprema attained only as |z| -> 1 show up as a
/// boundary_limited flag instead of a diverging estimate.
struct SupSearchConfig {
    int min_level = 1;
    int max_level = 14;
    std::size_t angular = 256;
    int refine_rounds = 3;
    bool include_origin = true;
};

struct SupSearchResult {
    double sup = 0.0;
    cplx argmax{};
    std::vector<double> level_max;     // per radial level, in level order
    std::vector<double> refine_trace;  // running sup after each refinement round
    bool boundary_limited = false;     // argmax sits within the last level band
    bool converged = false;            // level maxima not increasing at the cap
};

/// Deterministic: ties at equal objective value are broken toward smaller
/// |z|, then smaller arg in [0, 2pi), by the evaluation order itself.
/// Refinement is monotone: more rounds never decrease the reported sup.
SupSearchResult sup_search(const std::function<double(cplx)>& objective,
                           const SupSearchConfig& cfg);

} // namespace hdisk
