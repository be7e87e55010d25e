#include "hdisk/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hdisk/errors.hpp"
#include "hdisk/gauss.hpp"

namespace hdisk {

namespace {

void require_in_disk(cplx z, const char* what) {
    if (std::abs(z) >= 1.0) throw DomainError(std::string(what) + " must lie in the open unit disk");
}

} // namespace

cplx phi(cplx a, cplx z) {
    require_in_disk(a, "automorphism parameter a");
    require_in_disk(z, "point z");
    return (a - z) / (1.0 - std::conj(a) * z);
}

cplx phi_prime(cplx a, cplx z) {
    require_in_disk(a, "automorphism parameter a");
    require_in_disk(z, "point z");
    const cplx den = 1.0 - std::conj(a) * z;
    return (std::norm(a) - 1.0) / (den * den);
}

double invariance_identity_residual(cplx a, cplx z) {
    return std::abs((1.0 - std::norm(z)) * std::abs(phi_prime(a, z)) -
                    (1.0 - std::norm(phi(a, z))));
}

double hyperbolic_distance(cplx z, cplx xi) {
    require_in_disk(z, "point z");
    require_in_disk(xi, "point xi");
    const double p = std::abs((z - xi) / (1.0 - std::conj(xi) * z));
    return 0.5 * std::log((1.0 + p) / (1.0 - p));
}

double schwarz_pick_margin(const ExprPtr& w, cplx z) {
    const Jet3 wj = eval_jet(w, z);
    if (std::abs(wj.v) >= 1.0)
        throw NotSelfMap("dilatation leaves the disk: |w(z)| >= 1");
    return (1.0 - std::norm(wj.v)) - (1.0 - std::norm(z)) * std::abs(wj.d1);
}

double box_area(const CarlesonBox& b) {
    return M_PI * b.len * b.len * (2.0 - b.len);
}

std::vector<WeightedNode> box_region(const CarlesonBox& b, std::size_t radial_nodes,
                                     std::size_t angular_nodes) {
    if (!(b.len > 0.0 && b.len <= 1.0)) throw ArgError("Carleson box len must be in (0, 1]");
    if (radial_nodes < 2 || angular_nodes < 1) throw ArgError("box_region needs nodes >= (2, 1)");
    const GaussRule& rule = gauss_legendre(radial_nodes);
    const double r_lo = 1.0 - b.len, r_hi = 1.0;
    const double half = 0.5 * (r_hi - r_lo), mid = 0.5 * (r_hi + r_lo);
    const double arc = 2.0 * M_PI * b.len;          // angular width in radians
    const double dth = arc / static_cast<double>(angular_nodes);
    std::vector<WeightedNode> nodes;
    nodes.reserve(radial_nodes * angular_nodes);
    for (std::size_t i = 0; i < radial_nodes; ++i) {
        const double r = mid + half * rule.nodes[i];
        const double wr = half * rule.weights[i] * r;  // polar factor r dr
        for (std::size_t j = 0; j < angular_nodes; ++j) {
            // midpoint angles, symmetric about theta: exact rotation equivariance
            const double t = b.theta - 0.5 * arc + (static_cast<double>(j) + 0.5) * dth;
            nodes.push_back({std::polar(r, t), wr * dth});
        }
    }
    return nodes;
}

SupSearchResult sup_search(const std::function<double(cplx)>& objective,
                           const SupSearchConfig& cfg) {
    if (cfg.min_level < 0 || cfg.max_level < cfg.min_level || cfg.angular == 0)
        throw ArgError("sup_search: invalid level/angular configuration");
    SupSearchResult res;
    bool have_best = false;
    auto consider = [&](cplx z) {
        double v;
        try {
            v = objective(z);
        } catch (const Error&) {
            throw;  // typed errors already carry their own context
        } catch (const std::exception& ex) {
            throw Error(std::string("sup_search objective failed at z=(") +
                        std::to_string(z.real()) + "," + std::to_string(z.imag()) +
                        "): " + ex.what());
        }
        if (!have_best || v > res.sup) {
            res.sup = v;
            res.argmax = z;
            have_best = true;
        }
        return v;
    };

    if (cfg.include_origin) consider(cplx(0.0, 0.0));
    res.level_max.reserve(cfg.max_level - cfg.min_level + 1);
    for (int k = cfg.min_level; k <= cfg.max_level; ++k) {
        const double r = 1.0 - std::ldexp(1.0, -k);
        double lvl = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < cfg.angular; ++i) {
            const double th = 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(cfg.angular);
            lvl = std::max(lvl, consider(std::polar(r, th)));
        }
        res.level_max.push_back(lvl);
    }

    // The origin candidate carries no angular information: when it wins the
    // grid pass, the maximum may sit anywhere in the gap disk r < r_min, so
    // sweep two gap rings at full angular resolution before refining — a
    // +/-2-step angular window around arg(0) = 0 would miss other directions.
    if (cfg.include_origin && std::abs(res.argmax) == 0.0) {
        for (int g = 1; g <= 2; ++g) {
            const double u_gap = static_cast<double>(cfg.min_level) * g / 3.0;
            const double r = 1.0 - std::exp2(-u_gap);
            for (std::size_t i = 0; i < cfg.angular; ++i) {
                const double th =
                    2.0 * M_PI * static_cast<double>(i) / static_cast<double>(cfg.angular);
                consider(std::polar(r, th));
            }
        }
    }

    // Local refinement in (u, theta) with u = -log2(1 - r), clamped to the cap.
    const double u_cap = static_cast<double>(cfg.max_level);
    double u0 = (std::abs(res.argmax) > 0.0) ? -std::log2(1.0 - std::abs(res.argmax)) : 0.0;
    double th0 = std::arg(res.argmax);
    double du = 0.75, dth = 2.0 * M_PI / static_cast<double>(cfg.angular);
    for (int round = 0; round < cfg.refine_rounds; ++round) {
        double best_u = u0, best_th = th0, best_v = res.sup;
        for (int i = -2; i <= 2; ++i) {
            for (int j = -2; j <= 2; ++j) {
                const double u = std::clamp(u0 + 0.5 * du * i, 0.0, u_cap);
                const double th = th0 + 0.5 * dth * j;
                const double r = 1.0 - std::exp2(-u);
                const double v = consider(std::polar(r, th));
                if (v > best_v) {
                    best_v = v;
                    best_u = u;
                    best_th = th;
                }
            }
        }
        u0 = best_u;
        th0 = best_th;
        du *= 0.35;
        dth *= 0.35;
        res.refine_trace.push_back(res.sup);
    }

    res.boundary_limited = (1.0 - std::abs(res.argmax)) <= 1.5 * std::ldexp(1.0, -cfg.max_level);
    const std::size_t n = res.level_max.size();
    res.converged = true;
    if (n >= 3) {
        // not converged when the level maxima are still strictly climbing at the cap
        res.converged = !(res.level_max[n - 1] > res.level_max[n - 2] &&
                          res.level_max[n - 2] > res.level_max[n - 3]);
    }
    return res;
}

} // namespace hdisk
