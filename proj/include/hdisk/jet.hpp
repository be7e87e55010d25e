#pragma once

#include <cmath>
#include <complex>

namespace hdisk {

using cplx = std::complex<double>;

/// Value of an analytic function together with its first three derivatives
/// at a point. Arithmetic below propagates jets exactly through order 3,
/// so polynomial inputs of degree <= 3 incur no truncation error at all.
struct Jet3 {
    cplx v{};   // f(z)
    cplx d1{};  // f'(z)
    cplx d2{};  // f''(z)
    cplx d3{};  // f'''(z)

    bool finite() const {
        auto ok = [](cplx c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); };
        return ok(v) && ok(d1) && ok(d2) && ok(d3);
    }
};

inline Jet3 jet_const(cplx c) { return {c, 0.0, 0.0, 0.0}; }
inline Jet3 jet_var(cplx z) { return {z, 1.0, 0.0, 0.0}; }

inline Jet3 operator+(const Jet3& a, const Jet3& b) {
    return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2, a.d3 + b.d3};
}

inline Jet3 operator-(const Jet3& a, const Jet3& b) {
    return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2, a.d3 - b.d3};
}

inline Jet3 operator-(const Jet3& a) { return {-a.v, -a.d1, -a.d2, -a.d3}; }

inline Jet3 operator*(cplx k, const Jet3& a) { return {k * a.v, k * a.d1, k * a.d2, k * a.d3}; }

// Leibniz through order 3.
inline Jet3 operator*(const Jet3& a, const Jet3& b) {
    return {a.v * b.v,
            a.d1 * b.v + a.v * b.d1,
            a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2,
            a.d3 * b.v + 3.0 * a.d2 * b.d1 + 3.0 * a.d1 * b.d2 + a.v * b.d3};
}

// Quotient rule via q*b = a solved order by order.
inline Jet3 operator/(const Jet3& a, const Jet3& b) {
    Jet3 q;
    q.v = a.v / b.v;
    q.d1 = (a.d1 - q.v * b.d1) / b.v;
    q.d2 = (a.d2 - q.v * b.d2 - 2.0 * q.d1 * b.d1) / b.v;
    q.d3 = (a.d3 - q.v * b.d3 - 3.0 * q.d1 * b.d2 - 3.0 * q.d2 * b.d1) / b.v;
    return q;
}

// u^alpha, principal branch.
inline Jet3 jet_pow(const Jet3& u, double alpha) {
    const cplx p0 = std::pow(u.v, alpha);
    const cplx p1 = alpha * std::pow(u.v, alpha - 1.0);
    const cplx p2 = alpha * (alpha - 1.0) * std::pow(u.v, alpha - 2.0);
    const cplx p3 = alpha * (alpha - 1.0) * (alpha - 2.0) * std::pow(u.v, alpha - 3.0);
    return {p0,
            p1 * u.d1,
            p2 * u.d1 * u.d1 + p1 * u.d2,
            p3 * u.d1 * u.d1 * u.d1 + 3.0 * p2 * u.d1 * u.d2 + p1 * u.d3};
}

// log u, principal branch.
inline Jet3 jet_log(const Jet3& u) {
    const cplx l1 = u.d1 / u.v;
    const cplx r2 = u.d2 / u.v;
    return {std::log(u.v), l1, r2 - l1 * l1, u.d3 / u.v - 3.0 * l1 * r2 + 2.0 * l1 * l1 * l1};
}

inline Jet3 jet_exp(const Jet3& u) {
    const cplx e = std::exp(u.v);
    return {e, e * u.d1, e * (u.d2 + u.d1 * u.d1),
            e * (u.d3 + 3.0 * u.d1 * u.d2 + u.d1 * u.d1 * u.d1)};
}

// Faa di Bruno through order 3: outer is the jet of g at inner.v.
inline Jet3 jet_compose(const Jet3& outer, const Jet3& inner) {
    return {outer.v,
            outer.d1 * inner.d1,
            outer.d2 * inner.d1 * inner.d1 + outer.d1 * inner.d2,
            outer.d3 * inner.d1 * inner.d1 * inner.d1 +
                3.0 * outer.d2 * inner.d1 * inner.d2 + outer.d1 * inner.d3};
}

// phi_a(z) = (a - z) / (1 - conj(a) z) and its first three derivatives.
inline Jet3 jet_blaschke(cplx a, cplx z) {
    const cplx ac = std::conj(a);
    const cplx den = 1.0 - ac * z;
    const cplx k = std::norm(a) - 1.0;  // |a|^2 - 1
    const cplx den2 = den * den;
    return {(a - z) / den, k / den2, 2.0 * ac * k / (den2 * den), 6.0 * ac * ac * k / (den2 * den2)};
}

} // namespace hdisk
