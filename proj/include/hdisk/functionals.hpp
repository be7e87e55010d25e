#pragma once

#include <array>
#include <utility>
#include <vector>

#include "hdisk/expr.hpp"
#include "hdisk/geometry.hpp"
#include "hdisk/harmonic.hpp"
#include "hdisk/quadrature.hpp"

namespace hdisk {

/// F = log J_f for a sense-preserving harmonic map. F_z is the
/// pre-Schwarzian; F_zbar = conj(F_z) exactly, so the smooth functionals
/// always use |F_z| + |F_zbar| = 2|F_z| and never sample F_zbar separately.
struct SmoothLogJacobian {
    HarmonicMap f;
};

/// Default search grid for suprema over the automorphism parameter a.
/// Coarser and shallower than the z-domain default: each candidate costs a
/// full disk integral, and the cap 1-2^-12 mirrors how slowly the paper's
/// a-suprema saturate.
SupSearchConfig default_a_search();

/// Leaner quadrature used while scanning over a; the champion is always
/// re-evaluated afterwards with the caller's full spec.
WeightedIntegralSpec scan_quadrature(const WeightedIntegralSpec& base);

/// A supremum over a of an integral functional: the scan locates the
/// argmax with lean quadrature, `refined` recomputes it at full accuracy.
struct SupIntegralResult {
    SupSearchResult search;
    IntegralResult refined;
    double value() const { return refined.value; }
};

// ---- Bloch / Besov / Q_p (analytic and smooth) ----------------------------

/// sup (1-|z|^2)|h'(z)|.
SupSearchResult bloch_seminorm_analytic(const ExprPtr& h, const SupSearchConfig& cfg = {});

/// ∫ |h'|^p (1-|z|^2)^{p-2} dA, p > 1.
IntegralResult besov_norm_analytic(const ExprPtr& h, double p,
                                   const WeightedIntegralSpec& base = {});

/// ∫ (2|F_z|)^p (1-|z|^2)^{p-2} dA, p > 1.
IntegralResult besov_seminorm_smooth(const SmoothLogJacobian& F, double p,
                                     const WeightedIntegralSpec& base = {});

/// ∫ |h^{(n)}(z)|^2 (1-|phi_a(z)|^2)^p (1-|z|^2)^{2n-2} dA(z), computed in
/// the phi_a-pulled-back form where the automorphism factor becomes part of
/// the radial weight: ∫ |h^{(n)}(phi_a)|^2 |phi_a'|^{2n} (1-|z|^2)^{p+2n-2} dA.
IntegralResult qp_nth_integral(const ExprPtr& h, int n, double p, cplx a,
                               const WeightedIntegralSpec& base = {});

/// The n = 1 case of qp_nth_integral (identical nodes by construction).
IntegralResult qp_integral(const ExprPtr& h, double p, cplx a,
                           const WeightedIntegralSpec& base = {});

/// ∫ (2|F_z|)^2 (1-|phi_a|^2)^p dA in the same pulled-back form.
IntegralResult qp_integral_smooth(const SmoothLogJacobian& F, double p, cplx a,
                                  const WeightedIntegralSpec& base = {});

SupIntegralResult qp_norm(const ExprPtr& h, double p,
                          const SupSearchConfig& cfg = default_a_search(),
                          const WeightedIntegralSpec& base = {});
SupIntegralResult qp_norm_smooth(const SmoothLogJacobian& F, double p,
                                 const SupSearchConfig& cfg = default_a_search(),
                                 const WeightedIntegralSpec& base = {});

/// Q_{p,0}-style probe: the a-integral along a_k = (1-2^-k) e^{i theta_j},
/// theta_j in {0, pi/2, pi, 3pi/2}, k = 2..12. decaying applies the
/// heuristic v_last <= 10 v_first 2^{-(k_last-k_first)} in every direction;
/// monotone additionally requires non-increasing tails.
struct TrendReport {
    std::vector<int> ks;
    std::array<std::vector<double>, 4> values;
    bool decaying = false;
    bool monotone = false;
};

TrendReport qp0_probe(const ExprPtr& h, double p, const WeightedIntegralSpec& base = {});
TrendReport qp0_probe_smooth(const SmoothLogJacobian& F, double p,
                             const WeightedIntegralSpec& base = {});

// ---- I(f), Carleson --------------------------------------------------------

/// ∫ |S_f|^p (1-|z|^2)^{2p-2} dA, p > 1; I_h uses the analytic S_h instead.
IntegralResult I_f(const HarmonicMap& f, double p, const WeightedIntegralSpec& base = {});
IntegralResult I_h(const HarmonicMap& f, double p, const WeightedIntegralSpec& base = {});

/// dmu = density(z) dA with density |S_f(z)|^2 (1-|z|^2)^{2+p} (or custom).
struct CarlesonDensity {
    double p = 2.0;
    std::function<double(cplx)> custom;  // empty => the Schwarzian density
};

struct CarlesonOptions {
    int max_log2_len = 10;       // dyadic box lengths 2^0 .. 2^-max_log2_len
    std::size_t theta_steps = 128;
    int refine_rounds = 2;
    std::size_t master_angular_cells = 2048;
    SupSearchConfig a_search = default_a_search();
    WeightedIntegralSpec quad;
};

struct CarlesonResult {
    double route_a = 0.0;                 // sup over boxes of mu(S(I)) / |I|^p
    CarlesonBox best_box{};
    std::vector<double> per_len_max;      // route A max ratio per dyadic length
    SupIntegralResult route_b;            // sup over a of ∫ |phi_a'|^p dmu
    double ratio_b_over_a = 0.0;
};

CarlesonResult carleson_constant(const CarlesonDensity& d, const HarmonicMap& f,
                                 const CarlesonOptions& opts = {});

/// Vanishing probe: the route-B integrals along the qp0 ray family plus the
/// route-A box ratios as |I| -> 0 (per_len_max read small-to-large lengths).
struct VanishingCarlesonReport {
    TrendReport automorphism_trend;
    std::vector<double> box_len;        // dyadic lengths, decreasing
    std::vector<double> box_ratio_max;  // max over theta of mu(S)/len^p
    bool decaying = false;
};

VanishingCarlesonReport vanishing_carleson_probe(const CarlesonDensity& d, const HarmonicMap& f,
                                                 const CarlesonOptions& opts = {});

// ---- section-3 Jacobian classes -------------------------------------------

/// sup (1-|z|^2) sqrt(J_f).
SupSearchResult beta2(const HarmonicMap& f, const SupSearchConfig& cfg = {});

/// Radial trend of max over theta of (1-|z|^2) sqrt(J_f): the BT_0 test.
struct RadialTrend {
    std::vector<int> levels;
    std::vector<double> maxima;
    bool decays_to_zero = false;
};

RadialTrend bt0_probe(const HarmonicMap& f, const SupSearchConfig& cfg = {});

/// Little-Bloch probe: same trend for (1-|z|^2)|h'|.
RadialTrend bloch_little_probe(const ExprPtr& h, const SupSearchConfig& cfg = {});

/// ∫ J_f^{p/2} (1-|z|^2)^{p-2} dA, p > 1.
IntegralResult bt_p(const HarmonicMap& f, double p, const WeightedIntegralSpec& base = {});

/// sup over a of ∫ J_f (1-|phi_a|^2)^p dA, pulled back so the automorphism
/// factor joins the weight: ∫ J_f(phi_a(z)) |phi_a'(z)|^2 (1-|z|^2)^p dA.
SupIntegralResult qt_p(const HarmonicMap& f, double p,
                       const SupSearchConfig& cfg = default_a_search(),
                       const WeightedIntegralSpec& base = {});

// ---- distortion and envelopes ----------------------------------------------

/// margin = ((1+||w||)/(1-||w||))^{1/2} beta2(f) d_h(z1,z2) - |f(z1)-f(z2)|
/// per pair; all margins nonnegative (within tolerance) for valid maps.
struct DistortionReport {
    double w_norm = 0.0;
    double beta2_sup = 0.0;
    std::vector<double> margins;
};

DistortionReport distortion_check(const HarmonicMap& f,
                                  const std::vector<std::pair<cplx, cplx>>& pairs,
                                  const SupSearchConfig& cfg = {});

/// The J_f^{1/2} envelope pair at radius r for parameter mu in (0, 1]:
/// with beta = sqrt(1-mu), A = (1+r)^beta + (1-r)^beta,
///   lower = A^2 / (4 (1-r^2)^{beta-1}),  upper = 4 (1-r^2)^{beta-1} / A^2;
/// mu = 1 degenerates to (1-r^2, (1-r^2)^{-1}).
std::pair<double, double> nh_envelopes(double mu, double r);

} // namespace hdisk
