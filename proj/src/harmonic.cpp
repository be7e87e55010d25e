#include "hdisk/harmonic.hpp"

#include <cmath>

#include "hdisk/errors.hpp"

namespace hdisk {

namespace {

struct MapJets {
    Jet3 h;  // jet of h': v=h', d1=h'', d2=h'''
    Jet3 w;  // jet of w:  v=w,  d1=w',  d2=w''
};

MapJets eval_map(const HarmonicMap& f, cplx z) {
    MapJets m{eval_jet(f.h_prime, z), eval_jet(f.w, z)};
    if (std::abs(m.w.v) >= 1.0)
        throw NotSensePreserving("dilatation modulus >= 1 at evaluation point");
    if (std::abs(m.h.v) < 1e-300)
        throw NotSensePreserving("h' vanishes at evaluation point");
    return m;
}

// S from the correction form: S_h + (conj(w)/(1-|w|^2))(w' h''/h' - w'') - (3/2) D^2.
cplx schwarzian_correction_form(const MapJets& m) {
    const cplx Q = m.h.d1 / m.h.v;
    const cplx Sh = m.h.d2 / m.h.v - 1.5 * Q * Q;
    const double u = 1.0 - std::norm(m.w.v);
    const cplx wbar_u = std::conj(m.w.v) / u;
    const cplx D = m.w.d1 * wbar_u;
    return Sh + wbar_u * (m.w.d1 * Q - m.w.d2) - 1.5 * D * D;
}

} // namespace

HarmonicMap make_map(ExprPtr h_prime, ExprPtr w, std::string label) {
    if (!h_prime || !w) throw ArgError("HarmonicMap requires both h' and w expressions");
    return {std::move(h_prime), std::move(w), std::move(label)};
}

double jacobian(const HarmonicMap& f, cplx z) {
    const MapJets m = eval_map(f, z);
    const double J = std::norm(m.h.v) * (1.0 - std::norm(m.w.v));
    if (!(J > 0)) throw NotSensePreserving("Jacobian is not strictly positive");
    return J;
}

cplx pre_schwarzian(const HarmonicMap& f, cplx z) {
    const MapJets m = eval_map(f, z);
    const double u = 1.0 - std::norm(m.w.v);
    return m.h.d1 / m.h.v - m.w.d1 * std::conj(m.w.v) / u;
}

SchwarzianValue schwarzian(const HarmonicMap& f, cplx z) {
    const MapJets m = eval_map(f, z);
    const cplx Q = m.h.d1 / m.h.v;
    const cplx Qp = m.h.d2 / m.h.v - Q * Q;  // (h''/h')'
    const double u = 1.0 - std::norm(m.w.v);
    const cplx wbar_u = std::conj(m.w.v) / u;
    const cplx D = m.w.d1 * wbar_u;

    SchwarzianValue sv;
    sv.P = Q - D;
    sv.Fzz = Qp - m.w.d2 * wbar_u - D * D;
    sv.S = sv.Fzz - 0.5 * sv.P * sv.P;
    sv.Sh = Qp - 0.5 * Q * Q;

    const cplx S2 = schwarzian_correction_form(m);
    const double scale = std::max({std::abs(sv.S), std::abs(S2), 1.0});
    sv.dual_residual = std::abs(sv.S - S2) / scale;
    if (sv.dual_residual > 1e-10)
        throw InternalMismatch("the two Schwarzian forms disagree beyond 1e-10 relative");
    return sv;
}

SupSearchResult schwarzian_norm(const HarmonicMap& f, const SupSearchConfig& cfg) {
    return sup_search(
        [&](cplx z) {
            const double t = 1.0 - std::norm(z);
            return t * t * std::abs(schwarzian(f, z).S);
        },
        cfg);
}

SupSearchResult pre_schwarzian_norm(const HarmonicMap& f, const SupSearchConfig& cfg) {
    return sup_search(
        [&](cplx z) { return (1.0 - std::norm(z)) * std::abs(pre_schwarzian(f, z)); }, cfg);
}

HarmonicMap shear(const ExprPtr& phi, const ExprPtr& w) {
    if (!phi || !w) throw ArgError("shear requires both phi and w expressions");
    // Sampled validity: |w| < 1 and 1 - w bounded away from zero.
    for (int k = 0; k <= 8; ++k) {
        const double r = 1.0 - std::ldexp(1.0, -k);
        for (int i = 0; i < 16; ++i) {
            const cplx z = std::polar(r, 2.0 * M_PI * i / 16.0);
            const cplx wv = eval_value(w, z);
            if (std::abs(wv) >= 1.0)
                throw NotSensePreserving("shear dilatation has |w| >= 1 at a sample point");
            if (std::abs(1.0 - wv) < 1e-12)
                throw SingularityError("shear: 1 - w", z);
        }
    }
    return make_map(div(derivative(phi), sub(constant(1.0), w)), w, "shear");
}

ExprPtr lambda_combination(const HarmonicMap& f, cplx lambda) {
    if (std::abs(std::abs(lambda) - 1.0) > 1e-12)
        throw ArgError("lambda_combination requires |lambda| = 1");
    return mul(f.h_prime, add(constant(1.0), scale(lambda, f.w)));
}

cplx lambda_log_derivative(const HarmonicMap& f, cplx lambda, cplx z) {
    if (std::abs(std::abs(lambda) - 1.0) > 1e-12)
        throw ArgError("lambda_log_derivative requires |lambda| = 1");
    const MapJets m = eval_map(f, z);
    return m.h.d1 / m.h.v + lambda * m.w.d1 / (1.0 + lambda * m.w.v);
}

double sh_sphi_residual(const HarmonicMap& f, cplx lambda, cplx z) {
    if (std::abs(std::abs(lambda) - 1.0) > 1e-12)
        throw ArgError("sh_sphi_residual requires |lambda| = 1");
    const MapJets m = eval_map(f, z);
    const cplx Q = m.h.d1 / m.h.v;
    const cplx Sh = m.h.d2 / m.h.v - 1.5 * Q * Q;

    const cplx lw = 1.0 + lambda * m.w.v;
    if (std::abs(lw) < 1e-14) throw SingularityError("1 + lambda w", z);
    const cplx C = lambda * m.w.d1 / lw;

    // phi_lambda' = h'(1 + lambda w): its jets give S_phi directly.
    const Jet3 lam_jet{lw, lambda * m.w.d1, lambda * m.w.d2, lambda * m.w.d3};
    const Jet3 pj = m.h * lam_jet;
    const cplx Qphi = pj.d1 / pj.v;
    const cplx Sphi = pj.d2 / pj.v - 1.5 * Qphi * Qphi;

    const cplx rhs = Sphi + Qphi * C + 0.5 * C * C - lambda * m.w.d2 / lw;
    return std::abs(Sh - rhs);
}

cplx map_value(const HarmonicMap& f, cplx z) {
    const cplx h = radial_antiderivative(f.h_prime, z);
    const cplx g = radial_antiderivative(mul(f.w, f.h_prime), z);
    return h + std::conj(g);
}

HarmonicMap affine_transform(const HarmonicMap& f, cplx a, cplx b) {
    if (!(std::abs(a) > std::abs(b)))
        throw NotSensePreserving("affine transform needs |a| > |b| to stay sense-preserving");
    const ExprPtr den = add(constant(a), scale(b, f.w));
    return make_map(mul(f.h_prime, den),
                    div(add(scale(std::conj(a), f.w), constant(std::conj(b))), den),
                    f.label.empty() ? "affine" : f.label + "+affine");
}

HarmonicMap precompose_automorphism(const HarmonicMap& f, cplx c, cplx rot) {
    if (std::abs(c) >= 1.0) throw ArgError("automorphism parameter must satisfy |c| < 1");
    if (std::abs(std::abs(rot) - 1.0) > 1e-12) throw ArgError("rotation factor must be unimodular");
    const ExprPtr sigma = scale(rot, blaschke(c));
    const ExprPtr sigma_prime = derivative(sigma);
    return make_map(mul(compose(f.h_prime, sigma), sigma_prime), compose(f.w, sigma),
                    f.label.empty() ? "precomposed" : f.label + "+sigma");
}

} // namespace hdisk
