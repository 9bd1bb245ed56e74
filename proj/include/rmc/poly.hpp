#ifndef RMC_POLY_HPP
#define RMC_POLY_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rmc/bigint.hpp"
#include "rmc/rng.hpp"

namespace rmc {

// Division needed an inverse that does not exist in the coefficient ring.
// The witness is a zero divisor (or zero); callers split on it.
template <class E>
struct NonInvertible : std::runtime_error {
    E witness;
    explicit NonInvertible(E w) : std::runtime_error("non-invertible element"), witness(std::move(w)) {}
};

// Dense univariate polynomial over a coefficient object K (ring or field,
// passed explicitly to every operation). Invariant: coefficient vector is
// trimmed, so empty() means zero and c.back() is never zero.
template <class K>
struct Poly {
    std::vector<typename K::Elem> c;

    int degree() const { return (int)c.size() - 1; }
    bool is_zero() const { return c.empty(); }
};

template <class K>
void poly_trim(const K& k, Poly<K>& p) {
    while (!p.c.empty() && k.is_zero(p.c.back())) p.c.pop_back();
}

template <class K>
Poly<K> poly_zero(const K&) {
    return {};
}

template <class K>
Poly<K> poly_const(const K& k, typename K::Elem e) {
    Poly<K> p;
    if (!k.is_zero(e)) p.c.push_back(std::move(e));
    return p;
}

template <class K>
Poly<K> poly_one(const K& k) {
    return poly_const(k, k.one());
}

template <class K>
Poly<K> poly_x(const K& k) {
    Poly<K> p;
    p.c = {k.zero(), k.one()};
    return p;
}

template <class K>
Poly<K> poly_from(const K& k, std::vector<typename K::Elem> cs) {
    Poly<K> p;
    p.c = std::move(cs);
    poly_trim(k, p);
    return p;
}

template <class K>
Poly<K> poly_from_i64(const K& k, const std::vector<int64_t>& cs) {
    Poly<K> p;
    p.c.reserve(cs.size());
    for (int64_t v : cs) p.c.push_back(k.from_i64(v));
    poly_trim(k, p);
    return p;
}

template <class K>
typename K::Elem poly_coeff(const K& k, const Poly<K>& p, int i) {
    if (i < 0 || i > p.degree()) return k.zero();
    return p.c[i];
}

template <class K>
typename K::Elem poly_lc(const K& k, const Poly<K>& p) {
    return p.is_zero() ? k.zero() : p.c.back();
}

template <class K>
bool poly_eq(const K& k, const Poly<K>& a, const Poly<K>& b) {
    if (a.c.size() != b.c.size()) return false;
    for (size_t i = 0; i < a.c.size(); i++)
        if (!k.eq(a.c[i], b.c[i])) return false;
    return true;
}

template <class K>
Poly<K> poly_add(const K& k, const Poly<K>& a, const Poly<K>& b) {
    Poly<K> r;
    r.c.resize(std::max(a.c.size(), b.c.size()), k.zero());
    for (size_t i = 0; i < a.c.size(); i++) r.c[i] = a.c[i];
    for (size_t i = 0; i < b.c.size(); i++) r.c[i] = k.add(r.c[i], b.c[i]);
    poly_trim(k, r);
    return r;
}

template <class K>
Poly<K> poly_sub(const K& k, const Poly<K>& a, const Poly<K>& b) {
    Poly<K> r;
    r.c.resize(std::max(a.c.size(), b.c.size()), k.zero());
    for (size_t i = 0; i < a.c.size(); i++) r.c[i] = a.c[i];
    for (size_t i = 0; i < b.c.size(); i++) r.c[i] = k.sub(r.c[i], b.c[i]);
    poly_trim(k, r);
    return r;
}

template <class K>
Poly<K> poly_neg(const K& k, const Poly<K>& a) {
    Poly<K> r = a;
    for (auto& e : r.c) e = k.neg(e);
    return r;
}

template <class K>
Poly<K> poly_mul(const K& k, const Poly<K>& a, const Poly<K>& b) {
    if (a.is_zero() || b.is_zero()) return {};
    Poly<K> r;
    r.c.resize(a.c.size() + b.c.size() - 1, k.zero());
    for (size_t i = 0; i < a.c.size(); i++) {
        if (k.is_zero(a.c[i])) continue;
        for (size_t j = 0; j < b.c.size(); j++)
            r.c[i + j] = k.add(r.c[i + j], k.mul(a.c[i], b.c[j]));
    }
    poly_trim(k, r);
    return r;
}

template <class K>
Poly<K> poly_mul_scalar(const K& k, const Poly<K>& a, const typename K::Elem& s) {
    if (k.is_zero(s)) return {};
    Poly<K> r = a;
    for (auto& e : r.c) e = k.mul(e, s);
    poly_trim(k, r);
    return r;
}

// multiply by X^n
template <class K>
Poly<K> poly_shift(const K& k, const Poly<K>& a, int n) {
    if (a.is_zero()) return {};
    Poly<K> r;
    r.c.resize(a.c.size() + n, k.zero());
    for (size_t i = 0; i < a.c.size(); i++) r.c[i + n] = a.c[i];
    return r;
}

// quotient and remainder; requires lc(b) invertible (throws NonInvertible
// through K::inv over a non-field coefficient ring)
template <class K>
std::pair<Poly<K>, Poly<K>> poly_divrem(const K& k, const Poly<K>& a, const Poly<K>& b) {
    if (b.is_zero()) throw std::domain_error("poly_divrem: division by zero polynomial");
    if (a.degree() < b.degree()) return {Poly<K>{}, a};
    auto linv = k.inv(b.c.back());
    Poly<K> q, r = a;
    q.c.resize(a.c.size() - b.c.size() + 1, k.zero());
    for (int i = (int)a.c.size() - (int)b.c.size(); i >= 0; i--) {
        if ((int)r.c.size() < i + b.degree() + 1) continue;
        typename K::Elem coef = k.mul(r.c[i + b.degree()], linv);
        if (k.is_zero(coef)) continue;
        q.c[i] = coef;
        for (size_t j = 0; j < b.c.size(); j++)
            r.c[i + j] = k.sub(r.c[i + j], k.mul(coef, b.c[j]));
        poly_trim(k, r);
    }
    poly_trim(k, q);
    return {q, r};
}

template <class K>
Poly<K> poly_rem(const K& k, const Poly<K>& a, const Poly<K>& b) {
    return poly_divrem(k, a, b).second;
}

template <class K>
Poly<K> poly_quo(const K& k, const Poly<K>& a, const Poly<K>& b) {
    return poly_divrem(k, a, b).first;
}

// exact division; throws if the remainder is nonzero
template <class K>
Poly<K> poly_divexact(const K& k, const Poly<K>& a, const Poly<K>& b) {
    auto [q, r] = poly_divrem(k, a, b);
    if (!r.is_zero()) throw std::domain_error("poly_divexact: not divisible");
    return q;
}

template <class K>
bool poly_is_monic(const K& k, const Poly<K>& p) {
    return !p.is_zero() && k.eq(p.c.back(), k.one());
}

template <class K>
Poly<K> poly_monic(const K& k, const Poly<K>& p) {
    if (p.is_zero() || poly_is_monic(k, p)) return p;
    return poly_mul_scalar(k, p, k.inv(p.c.back()));
}

// monic gcd by the Euclidean remainder sequence
template <class K>
Poly<K> poly_gcd(const K& k, Poly<K> a, Poly<K> b) {
    while (!b.is_zero()) {
        Poly<K> r = poly_rem(k, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return poly_monic(k, a);
}

// g = gcd, and s, t with s*a + t*b = g
template <class K>
std::array<Poly<K>, 3> poly_xgcd(const K& k, const Poly<K>& a, const Poly<K>& b) {
    Poly<K> r0 = a, r1 = b;
    Poly<K> s0 = poly_one(k), s1 = poly_zero(k);
    Poly<K> t0 = poly_zero(k), t1 = poly_one(k);
    while (!r1.is_zero()) {
        auto [q, r2] = poly_divrem(k, r0, r1);
        r0 = std::move(r1);
        r1 = std::move(r2);
        Poly<K> s2 = poly_sub(k, s0, poly_mul(k, q, s1));
        s0 = std::move(s1);
        s1 = std::move(s2);
        Poly<K> t2 = poly_sub(k, t0, poly_mul(k, q, t1));
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (!r0.is_zero() && !k.eq(r0.c.back(), k.one())) {
        auto linv = k.inv(r0.c.back());
        r0 = poly_mul_scalar(k, r0, linv);
        s0 = poly_mul_scalar(k, s0, linv);
        t0 = poly_mul_scalar(k, t0, linv);
    }
    return {r0, s0, t0};
}

template <class K>
typename K::Elem poly_eval(const K& k, const Poly<K>& p, const typename K::Elem& x) {
    if (p.is_zero()) return k.zero();
    auto acc = p.c.back();
    for (int i = (int)p.c.size() - 2; i >= 0; i--) acc = k.add(k.mul(acc, x), p.c[i]);
    return acc;
}

template <class K>
Poly<K> poly_derivative(const K& k, const Poly<K>& p) {
    Poly<K> r;
    if (p.degree() < 1) return r;
    r.c.resize(p.c.size() - 1, k.zero());
    auto mult = k.zero();
    for (size_t i = 1; i < p.c.size(); i++) {
        mult = k.add(mult, k.one());
        r.c[i - 1] = k.mul(p.c[i], mult);
    }
    poly_trim(k, r);
    return r;
}

// Newton interpolation through distinct nodes
template <class K>
Poly<K> poly_interpolate(const K& k, const std::vector<typename K::Elem>& xs,
                         const std::vector<typename K::Elem>& ys) {
    size_t n = xs.size();
    if (ys.size() != n) throw std::invalid_argument("poly_interpolate: size mismatch");
    if (n == 0) return {};
    // divided differences in place
    std::vector<typename K::Elem> dd = ys;
    for (size_t j = 1; j < n; j++) {
        for (size_t i = n - 1; i >= j; i--) {
            auto num = k.sub(dd[i], dd[i - 1]);
            auto den = k.sub(xs[i], xs[i - j]);
            dd[i] = k.mul(num, k.inv(den));
        }
    }
    Poly<K> r = poly_const(k, dd[n - 1]);
    for (int i = (int)n - 2; i >= 0; i--) {
        // r = r*(X - x_i) + dd[i]
        Poly<K> xm;
        xm.c = {k.neg(xs[i]), k.one()};
        r = poly_mul(k, r, xm);
        r = poly_add(k, r, poly_const(k, dd[i]));
    }
    return r;
}

template <class K>
Poly<K> poly_mulmod(const K& k, const Poly<K>& a, const Poly<K>& b, const Poly<K>& m) {
    return poly_rem(k, poly_mul(k, a, b), m);
}

template <class K>
Poly<K> poly_powmod(const K& k, Poly<K> base, Int e, const Poly<K>& m) {
    if (e < 0) throw std::domain_error("poly_powmod: negative exponent");
    Poly<K> r = poly_rem(k, poly_one(k), m);
    base = poly_rem(k, base, m);
    size_t nb = (e == 0) ? 0 : mpz_sizeinbase(e.get_mpz_t(), 2);
    for (size_t i = 0; i < nb; i++) {
        if (mpz_tstbit(e.get_mpz_t(), i)) r = poly_mulmod(k, r, base, m);
        base = poly_mulmod(k, base, base, m);
    }
    return r;
}

template <class K>
Poly<K> poly_pow(const K& k, Poly<K> base, unsigned long e) {
    Poly<K> r = poly_one(k);
    while (e) {
        if (e & 1) r = poly_mul(k, r, base);
        e >>= 1;
        if (e) base = poly_mul(k, base, base);
    }
    return r;
}

// Res(a, b) with the convention Res(a, b) = lc(a)^deg(b) * prod b(alpha_i)
// over the roots of a; computed by the Euclidean sequence.
template <class K>
typename K::Elem poly_resultant(const K& k, Poly<K> a, Poly<K> b) {
    if (a.is_zero() && b.is_zero()) throw std::invalid_argument("poly_resultant: both inputs zero");
    if (a.is_zero() || b.is_zero()) return k.zero();
    auto res = k.one();
    bool negate = false;
    while (b.degree() > 0) {
        if (a.degree() < b.degree()) {
            if ((a.degree() & 1) && (b.degree() & 1)) negate = !negate;
            std::swap(a, b);
            continue;
        }
        Poly<K> r = poly_rem(k, a, b);
        int da = a.degree(), db = b.degree(), dr = r.degree();
        if (r.is_zero()) return k.zero();
        // Res(a,b) = (-1)^(da db) lc(b)^(da-dr) Res(b,r)
        if ((da & 1) && (db & 1)) negate = !negate;
        auto lb = poly_lc(k, b);
        auto sc = k.one();
        for (int i = 0; i < da - dr; i++) sc = k.mul(sc, lb);
        res = k.mul(res, sc);
        a = std::move(b);
        b = std::move(r);
    }
    // b is a nonzero constant
    auto bb = b.c[0];
    auto sc = k.one();
    for (int i = 0; i < a.degree(); i++) sc = k.mul(sc, bb);
    res = k.mul(res, sc);
    return negate ? k.neg(res) : res;
}

template <class K>
Poly<K> poly_random(const K& k, int deg, Rng& rng) {
    Poly<K> p;
    if (deg < 0) return p;
    p.c.resize(deg + 1, k.zero());
    for (int i = 0; i < deg; i++) p.c[i] = k.rand(rng);
    // nonzero leading coefficient
    do {
        p.c[deg] = k.rand(rng);
    } while (k.is_zero(p.c[deg]));
    return p;
}

template <class K>
Poly<K> poly_random_monic(const K& k, int deg, Rng& rng) {
    Poly<K> p = poly_random(k, deg, rng);
    p.c[deg] = k.one();
    return p;
}

template <class K>
std::string poly_to_string(const K& k, const Poly<K>& p) {
    if (p.is_zero()) return "0";
    std::string s;
    for (int i = p.degree(); i >= 0; i--) {
        if (!s.empty()) s += " + ";
        s += k.to_string(p.c[i]) + "*X^" + std::to_string(i);
    }
    return s;
}

// coefficient-wise map into another coefficient ring
template <class B, class A, class Fn>
Poly<B> poly_map(const B& to, const Poly<A>& p, Fn&& f) {
    Poly<B> q;
    q.c.reserve(p.c.size());
    for (auto& c : p.c) q.c.push_back(f(c));
    poly_trim(to, q);
    return q;
}

template <class K>
Poly<K> poly_lcm(const K& k, const Poly<K>& a, const Poly<K>& b) {
    if (a.is_zero() || b.is_zero()) return poly_zero(k);
    auto g = poly_gcd(k, a, b);
    auto l = poly_mul(k, g.degree() > 0 ? poly_divexact(k, a, g) : a, b);
    return poly_monic(k, l);
}

} // namespace rmc

#endif
