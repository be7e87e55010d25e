#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace hdisk {

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

/// Gauss-Legendre nodes and weights on [-1,1] via Newton iteration on P_n,
/// seeded with the Chebyshev-angle estimate. Accurate to machine precision
/// for the small n (<= 64) used here. Results are cached per order.
inline const GaussRule& gauss_legendre(std::size_t n) {
    static std::vector<GaussRule> cache(65);
    GaussRule& rule = cache.at(n);
    if (!rule.nodes.empty()) return rule;

    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        double pd = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // Recurrence for P_n(x) and P_n'(x).
            double p0 = 1.0, p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            pd = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pd;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double w = 2.0 / ((1.0 - x * x) * pd * pd);
        rule.nodes[i] = -x;
        rule.weights[i] = w;
        rule.nodes[n - 1 - i] = x;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;  // clean up the midpoint
    return rule;
}

} // namespace hdisk
