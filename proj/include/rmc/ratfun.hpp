#ifndef RMC_RATFUN_HPP
#define RMC_RATFUN_HPP

#include <string>
#include <utility>

#include "rmc/poly.hpp"

namespace rmc {

// Coefficient rings for symbolic group-law work: the fraction field K(x)
// and quotient algebras R[w]/(m(w)). Both expose the same ring-object
// surface as the finite fields, so Poly<> and the Jacobian code
// instantiate over them unchanged. Quotient algebras are not fields in
// general; inversion throws NonInvertible carrying a witness factor of
// the modulus.

// Fraction field of K[x]. Elements are kept normalized: denominator
// monic, gcd(num, den) = 1, zero is 0/1.
template <class K>
struct Frac {
    K k;

    struct Elem {
        Poly<K> num, den;
    };

    Frac() = default;
    explicit Frac(K base) : k(std::move(base)) {}

    Elem make(Poly<K> n, Poly<K> d) const {
        if (d.is_zero()) throw NonInvertible<Elem>(Elem{n, d});
        if (n.is_zero()) return {poly_zero(k), poly_one(k)};
        Poly<K> g = poly_gcd(k, n, d);
        if (g.degree() > 0) {
            n = poly_divexact(k, n, g);
            d = poly_divexact(k, d, g);
        }
        auto s = k.inv(poly_lc(k, d));
        return {poly_mul_scalar(k, n, s), poly_mul_scalar(k, d, s)};
    }

    Elem from_poly(Poly<K> n) const { return {std::move(n), poly_one(k)}; }
    Elem from_base(const typename K::Elem& c) const { return from_poly(poly_const(k, c)); }
    // the generator x of K(x)
    Elem gen() const { return from_poly(poly_x(k)); }

    Elem zero() const { return {poly_zero(k), poly_one(k)}; }
    Elem one() const { return {poly_one(k), poly_one(k)}; }
    Elem from_i64(long v) const { return from_poly(poly_from_i64(k, {v})); }

    bool is_zero(const Elem& a) const { return a.num.is_zero(); }
    bool eq(const Elem& a, const Elem& b) const {
        return poly_eq(k, a.num, b.num) && poly_eq(k, a.den, b.den);
    }
    bool is_poly(const Elem& a) const { return a.den.degree() == 0; }

    Elem add(const Elem& a, const Elem& b) const {
        Poly<K> n = poly_add(k, poly_mul(k, a.num, b.den), poly_mul(k, b.num, a.den));
        return make(std::move(n), poly_mul(k, a.den, b.den));
    }
    Elem sub(const Elem& a, const Elem& b) const {
        Poly<K> n = poly_sub(k, poly_mul(k, a.num, b.den), poly_mul(k, b.num, a.den));
        return make(std::move(n), poly_mul(k, a.den, b.den));
    }
    Elem neg(const Elem& a) const { return {poly_neg(k, a.num), a.den}; }
    Elem mul(const Elem& a, const Elem& b) const {
        // cross-reduce first to curb degree growth
        Poly<K> g1 = poly_gcd(k, a.num, b.den);
        Poly<K> g2 = poly_gcd(k, b.num, a.den);
        Poly<K> n1 = g1.degree() > 0 ? poly_divexact(k, a.num, g1) : a.num;
        Poly<K> d2 = g1.degree() > 0 ? poly_divexact(k, b.den, g1) : b.den;
        Poly<K> n2 = g2.degree() > 0 ? poly_divexact(k, b.num, g2) : b.num;
        Poly<K> d1 = g2.degree() > 0 ? poly_divexact(k, a.den, g2) : a.den;
        return make(poly_mul(k, n1, n2), poly_mul(k, d1, d2));
    }
    Elem inv(const Elem& a) const {
        if (a.num.is_zero())
            throw NonInvertible<Elem>(a);
        return make(a.den, a.num);
    }

    Elem rand(Rng& rng) const {
        return from_poly(poly_random(k, 1, rng));
    }

    std::string to_string(const Elem& a) const {
        if (is_poly(a)) return poly_to_string(k, a.num);
        return "(" + poly_to_string(k, a.num) + ")/(" + poly_to_string(k, a.den) + ")";
    }
};

// Quotient algebra R[w]/(m(w)) with m monic of degree >= 1. Elements are
// residues, stored as polynomials of degree < deg m. When m is not
// irreducible over R the algebra has zero divisors; inv reports the
// discovered factor of m through the exception witness.
template <class R>
struct Quot {
    R r;
    Poly<R> m;

    using Elem = Poly<R>;

    Quot() = default;
    Quot(R base, Poly<R> mod) : r(std::move(base)), m(std::move(mod)) {
        if (m.degree() < 1) throw std::invalid_argument("Quot: modulus degree < 1");
        if (!poly_is_monic(r, m)) throw std::invalid_argument("Quot: modulus not monic");
    }

    int deg() const { return m.degree(); }

    Elem reduce(const Poly<R>& a) const { return poly_rem(r, a, m); }
    Elem from_base(const typename R::Elem& c) const { return poly_const(r, c); }
    // the residue class of w
    Elem gen() const { return reduce(poly_x(r)); }

    Elem zero() const { return poly_zero(r); }
    Elem one() const { return poly_one(r); }
    Elem from_i64(long v) const { return poly_from_i64(r, {v}); }

    bool is_zero(const Elem& a) const { return a.is_zero(); }
    bool eq(const Elem& a, const Elem& b) const { return poly_eq(r, a, b); }
    // true when the residue lies in the base ring
    bool in_base(const Elem& a) const { return a.degree() <= 0; }
    typename R::Elem base_part(const Elem& a) const { return poly_coeff(r, a, 0); }

    Elem add(const Elem& a, const Elem& b) const { return poly_add(r, a, b); }
    Elem sub(const Elem& a, const Elem& b) const { return poly_sub(r, a, b); }
    Elem neg(const Elem& a) const { return poly_neg(r, a); }
    Elem mul(const Elem& a, const Elem& b) const { return reduce(poly_mul(r, a, b)); }
    Elem inv(const Elem& a) const {
        if (a.is_zero()) throw NonInvertible<Elem>(a);
        auto [g, s, t] = poly_xgcd(r, a, m);
        if (g.degree() > 0)
            throw NonInvertible<Elem>(g);
        return poly_mul_scalar(r, s, r.inv(poly_coeff(r, g, 0)));
    }

    Elem rand(Rng& rng) const { return poly_random(r, deg() - 1, rng); }

    std::string to_string(const Elem& a) const { return poly_to_string(r, a); }
};

} // namespace rmc

#endif
