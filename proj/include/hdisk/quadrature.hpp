#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "hdisk/expr.hpp"

namespace hdisk {

/// Parameters for ∫_D G(z) (1-|z|^2)^alpha dA(z). Radial domain is split
/// into dyadic rings [1-2^-j, 1-2^-j-1], j = 0..rings-1, each integrated by
/// Gauss-Legendre in r times a uniform angular midpoint rule; a closing cap
/// ring [1-2^-rings, 1] is appended when the tail is decaying and alpha > -1,
/// so mildly singular weights are integrated all the way to the boundary.
/// With angular_adaptive set, each ring doubles its angular count until the
/// ring value stabilizes (catches integrands with boundary-peaked angular
/// profile whose bandwidth grows like 1/(1-r)).
struct WeightedIntegralSpec {
    double alpha = 0.0;
    int rings = 14;
    std::size_t radial_nodes = 16;
    std::size_t angular_nodes = 256;
    double rel_tol = 1e-4;
    bool closing_cap = true;
    bool angular_adaptive = true;
    std::size_t max_angular = std::size_t{1} << 17;
};

enum class IntegralVerdict { ConvergedFinite, DivergentSuspect, Inconclusive };

std::string verdict_name(IntegralVerdict v);

struct IntegralResult {
    double value = 0.0;
    double est_error = 0.0;                   // geometric tail extrapolation of ring sums
    std::vector<double> ring_contributions;   // per dyadic ring (cap excluded)
    std::vector<double> ring_partial_sums;    // running totals, cap appended last if used
    double cap_contribution = 0.0;
    bool cap_used = false;
    bool converged = false;                   // last ring below rel_tol of the total
    IntegralVerdict verdict = IntegralVerdict::Inconclusive;
};

/// G is the nonnegative density WITHOUT the (1-|z|^2)^alpha weight; the
/// weight is applied by the integrator. Divergence is flagged (never thrown)
/// when the ring contributions are non-decreasing over the last 4 rings and
/// still significant; callers map the verdict to exit codes or reports.
IntegralResult integrate_disk(const std::function<double(cplx)>& G,
                              const WeightedIntegralSpec& spec);

struct GrowthReport {
    std::vector<int> levels;                 // m values
    std::vector<double> truncated_values;    // integral over |z| <= 1 - 2^-m
    double growth_exponent = 0.0;            // slope of log2(contribution) per level
    IntegralVerdict verdict = IntegralVerdict::Inconclusive;
};

/// Truncated integrals over |z| <= 1-2^-m for m = 4..levels; classifies the
/// family {convergent, divergent-suspect} from the tail contributions.
GrowthReport divergence_probe(const std::function<double(cplx)>& G, double alpha, int levels,
                              const WeightedIntegralSpec& base = {});

struct BergmanRatio {
    double lhs = 0.0;   // ∫ |h|^p (1-|z|^2)^alpha dA
    double rhs = 0.0;   // ∫ |h'|^p (1-|z|^2)^{p+alpha} dA + |h(0)|^p
    double ratio = 0.0;
    bool defined = false;  // false when rhs vanishes (h ≡ 0)
};

BergmanRatio bergman_equivalence_ratio(const ExprPtr& h, double p, double alpha,
                                       const WeightedIntegralSpec& base = {});

} // namespace hdisk
