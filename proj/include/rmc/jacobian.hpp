#ifndef RMC_JACOBIAN_HPP
#define RMC_JACOBIAN_HPP

#include <utility>
#include <vector>

#include "rmc/poly.hpp"

namespace rmc {

// Genus-3 hyperelliptic Jacobian in Mumford coordinates over an arbitrary
// coefficient ring R (field for numeric work, function-field algebras for
// symbolic work; inversions there may throw NonInvertible).

template <class R>
struct HypCurve {
    R k;
    Poly<R> f;  // monic, degree 7, squarefree over a field

    HypCurve() = default;
    HypCurve(R k_, Poly<R> f_) : k(std::move(k_)), f(std::move(f_)) {
        if (this->f.degree() != 7) throw std::invalid_argument("HypCurve: deg f != 7");
        if (!poly_is_monic(this->k, this->f)) throw std::invalid_argument("HypCurve: f not monic");
    }
};

template <class R>
struct Mumford {
    Poly<R> u, v;  // u monic, deg u <= 3, deg v < deg u, u | v^2 - f

    int weight() const { return u.degree(); }
};

template <class R>
Mumford<R> jac_zero(const HypCurve<R>& C) {
    return {poly_one(C.k), poly_zero(C.k)};
}

template <class R>
bool jac_is_zero(const HypCurve<R>& C, const Mumford<R>& D) {
    return D.u.degree() == 0;
}

template <class R>
bool jac_eq(const HypCurve<R>& C, const Mumford<R>& a, const Mumford<R>& b) {
    return poly_eq(C.k, a.u, b.u) && poly_eq(C.k, a.v, b.v);
}

template <class R>
Mumford<R> jac_neg(const HypCurve<R>& C, const Mumford<R>& D) {
    return {D.u, poly_neg(C.k, D.v)};
}

// u | v^2 - f, u monic of weight <= 3, deg v < deg u
template <class R>
bool jac_is_valid(const HypCurve<R>& C, const Mumford<R>& D) {
    if (D.u.is_zero() || !poly_is_monic(C.k, D.u)) return false;
    if (D.u.degree() > 3 || D.v.degree() >= D.u.degree()) return false;
    Poly<R> t = poly_sub(C.k, poly_mul(C.k, D.v, D.v), C.f);
    return poly_rem(C.k, t, D.u).is_zero();
}

// weight-1 divisor P - infinity for a point (x, y) on the curve
template <class R>
Mumford<R> jac_point(const HypCurve<R>& C, const typename R::Elem& x, const typename R::Elem& y) {
    Poly<R> u;
    u.c = {C.k.neg(x), C.k.one()};
    return {u, poly_const(C.k, y)};
}

// Cantor composition + reduction. Handles all inputs, including non-coprime
// u's and doubling, via the extended-gcd chain.
template <class R>
Mumford<R> jac_add(const HypCurve<R>& C, const Mumford<R>& D1, const Mumford<R>& D2) {
    const R& k = C.k;
    if (jac_is_zero(C, D1)) return D2;
    if (jac_is_zero(C, D2)) return D1;

    Poly<R> u, v;
    auto [d1, e1, e2] = poly_xgcd(k, D1.u, D2.u);
    if (d1.degree() == 0) {
        // coprime: u = u1 u2, v = CRT(v1 mod u1, v2 mod u2)
        u = poly_mul(k, D1.u, D2.u);
        Poly<R> diff = poly_sub(k, D2.v, D1.v);
        Poly<R> t = poly_rem(k, poly_mul(k, e1, diff), D2.u);
        v = poly_add(k, D1.v, poly_mul(k, D1.u, t));
        v = poly_rem(k, v, u);
    } else {
        auto [d, c1, c2] = poly_xgcd(k, d1, poly_add(k, D1.v, D2.v));
        // u = u1 u2 / d^2
        Poly<R> dd = poly_mul(k, d, d);
        u = poly_divexact(k, poly_mul(k, D1.u, D2.u), dd);
        // v = (c1 (e1 u1 v2 + e2 u2 v1) + c2 (v1 v2 + f)) / d mod u
        Poly<R> s = poly_add(k, poly_mul(k, poly_mul(k, e1, D1.u), D2.v),
                             poly_mul(k, poly_mul(k, e2, D2.u), D1.v));
        s = poly_mul(k, c1, s);
        s = poly_add(k, s, poly_mul(k, c2, poly_add(k, poly_mul(k, D1.v, D2.v), C.f)));
        v = poly_rem(k, poly_divexact(k, s, d), u);
    }

    // reduce to weight <= 3
    while (u.degree() > 3) {
        Poly<R> nu = poly_divexact(k, poly_sub(k, C.f, poly_mul(k, v, v)), u);
        nu = poly_monic(k, nu);
        Poly<R> nv = poly_neg(k, poly_rem(k, v, nu));
        u = std::move(nu);
        v = std::move(nv);
    }
    u = poly_monic(k, u);
    return {u, v};
}

template <class R>
Mumford<R> jac_sub(const HypCurve<R>& C, const Mumford<R>& a, const Mumford<R>& b) {
    return jac_add(C, a, jac_neg(C, b));
}

// n*D by double-and-add; negation applied first for n < 0
template <class R>
Mumford<R> jac_scalar(const HypCurve<R>& C, const Mumford<R>& D, Int n) {
    Mumford<R> base = D;
    if (n < 0) {
        base = jac_neg(C, D);
        n = -n;
    }
    Mumford<R> acc = jac_zero(C);
    size_t nb = (n == 0) ? 0 : mpz_sizeinbase(n.get_mpz_t(), 2);
    for (size_t i = nb; i-- > 0;) {
        acc = jac_add(C, acc, acc);
        if (mpz_tstbit(n.get_mpz_t(), i)) acc = jac_add(C, acc, base);
    }
    return acc;
}

} // namespace rmc

#endif
