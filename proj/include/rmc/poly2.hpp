#ifndef RMC_POLY2_HPP
#define RMC_POLY2_HPP

#include <array>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>

#include "rmc/polyfactor.hpp"
#include "rmc/ratfun.hpp"

namespace rmc {

// Sparse bivariate and trivariate polynomials, plus the resultant
// eliminations used by the kernel chain: evaluation-interpolation for two
// variables, and Kronecker substitution or a specialization grid down
// from three.

struct NotEnoughPoints : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateEvaluation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class K>
struct Poly2 {
    std::map<std::array<int, 2>, typename K::Elem> c;
    bool is_zero() const { return c.empty(); }
};

template <class K>
struct Poly3 {
    std::map<std::array<int, 3>, typename K::Elem> c;
    bool is_zero() const { return c.empty(); }
};

template <class K>
void p2_add_term(const K& k, Poly2<K>& p, int i, int j, const typename K::Elem& v) {
    if (k.is_zero(v)) return;
    std::array<int, 2> e{i, j};
    auto it = p.c.find(e);
    if (it == p.c.end()) {
        p.c.emplace(e, v);
        return;
    }
    it->second = k.add(it->second, v);
    if (k.is_zero(it->second)) p.c.erase(it);
}

template <class K>
void p3_add_term(const K& k, Poly3<K>& p, int i, int j, int l, const typename K::Elem& v) {
    if (k.is_zero(v)) return;
    std::array<int, 3> e{i, j, l};
    auto it = p.c.find(e);
    if (it == p.c.end()) {
        p.c.emplace(e, v);
        return;
    }
    it->second = k.add(it->second, v);
    if (k.is_zero(it->second)) p.c.erase(it);
}

template <class K>
int p2_deg(const Poly2<K>& p, int var) {
    int d = -1;
    for (auto& [e, v] : p.c) d = std::max(d, e[var]);
    return d;
}

template <class K>
int p3_deg(const Poly3<K>& p, int var) {
    int d = -1;
    for (auto& [e, v] : p.c) d = std::max(d, e[var]);
    return d;
}

template <class K>
Poly2<K> p2_add(const K& k, const Poly2<K>& a, const Poly2<K>& b) {
    Poly2<K> r = a;
    for (auto& [e, v] : b.c) p2_add_term(k, r, e[0], e[1], v);
    return r;
}

template <class K>
Poly2<K> p2_neg(const K& k, const Poly2<K>& a) {
    Poly2<K> r;
    for (auto& [e, v] : a.c) r.c.emplace(e, k.neg(v));
    return r;
}

template <class K>
Poly2<K> p2_sub(const K& k, const Poly2<K>& a, const Poly2<K>& b) {
    return p2_add(k, a, p2_neg(k, b));
}

template <class K>
Poly2<K> p2_mul(const K& k, const Poly2<K>& a, const Poly2<K>& b) {
    Poly2<K> r;
    for (auto& [ea, va] : a.c)
        for (auto& [eb, vb] : b.c)
            p2_add_term(k, r, ea[0] + eb[0], ea[1] + eb[1], k.mul(va, vb));
    return r;
}

template <class K>
Poly2<K> p2_mul_scalar(const K& k, const Poly2<K>& a, const typename K::Elem& s) {
    Poly2<K> r;
    if (k.is_zero(s)) return r;
    for (auto& [e, v] : a.c) {
        auto w = k.mul(v, s);
        if (!k.is_zero(w)) r.c.emplace(e, w);
    }
    return r;
}

template <class K>
bool p2_eq(const K& k, const Poly2<K>& a, const Poly2<K>& b) {
    if (a.c.size() != b.c.size()) return false;
    auto ia = a.c.begin();
    for (auto& [e, v] : b.c) {
        if (ia->first != e || !k.eq(ia->second, v)) return false;
        ++ia;
    }
    return true;
}

template <class K>
std::string p2_to_string(const K& k, const Poly2<K>& p) {
    if (p.is_zero()) return "0";
    std::string s;
    for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) {
        if (!s.empty()) s += " + ";
        s += k.to_string(it->second) + "*x^" + std::to_string(it->first[0]) + "*y^" +
             std::to_string(it->first[1]);
    }
    return s;
}

template <class K>
Poly3<K> p3_add(const K& k, const Poly3<K>& a, const Poly3<K>& b) {
    Poly3<K> r = a;
    for (auto& [e, v] : b.c) p3_add_term(k, r, e[0], e[1], e[2], v);
    return r;
}

template <class K>
Poly3<K> p3_neg(const K& k, const Poly3<K>& a) {
    Poly3<K> r;
    for (auto& [e, v] : a.c) r.c.emplace(e, k.neg(v));
    return r;
}

template <class K>
Poly3<K> p3_sub(const K& k, const Poly3<K>& a, const Poly3<K>& b) {
    return p3_add(k, a, p3_neg(k, b));
}

template <class K>
Poly3<K> p3_mul(const K& k, const Poly3<K>& a, const Poly3<K>& b) {
    Poly3<K> r;
    if (a.c.empty() || b.c.empty()) return r;
    long n0 = p3_deg(a, 0) + p3_deg(b, 0) + 1;
    long n1 = p3_deg(a, 1) + p3_deg(b, 1) + 1;
    long n2 = p3_deg(a, 2) + p3_deg(b, 2) + 1;
    // accumulate into a dense block when it fits; the map path allocates a
    // node per term and is far slower on the near-dense kernel products
    if (n0 * n1 * n2 <= (1L << 25)) {
        std::vector<typename K::Elem> acc(n0 * n1 * n2, k.zero());
        for (auto& [ea, va] : a.c)
            for (auto& [eb, vb] : b.c) {
                long at = ((ea[0] + eb[0]) * n1 + ea[1] + eb[1]) * n2 + ea[2] + eb[2];
                acc[at] = k.add(acc[at], k.mul(va, vb));
            }
        for (long i0 = 0; i0 < n0; i0++)
            for (long i1 = 0; i1 < n1; i1++)
                for (long i2 = 0; i2 < n2; i2++) {
                    auto& v = acc[(i0 * n1 + i1) * n2 + i2];
                    if (!k.is_zero(v))
                        r.c.emplace_hint(r.c.end(), std::array<int, 3>{(int)i0, (int)i1, (int)i2},
                                         std::move(v));
                }
        return r;
    }
    for (auto& [ea, va] : a.c)
        for (auto& [eb, vb] : b.c)
            p3_add_term(k, r, ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], k.mul(va, vb));
    return r;
}

// square via ordered term pairs: half the multiplications of p3_mul(a, a)
template <class K>
Poly3<K> p3_sqr(const K& k, const Poly3<K>& a) {
    Poly3<K> r;
    if (a.c.empty()) return r;
    long n0 = 2L * p3_deg(a, 0) + 1;
    long n1 = 2L * p3_deg(a, 1) + 1;
    long n2 = 2L * p3_deg(a, 2) + 1;
    if (n0 * n1 * n2 > (1L << 25)) return p3_mul(k, a, a);
    std::vector<typename K::Elem> acc(n0 * n1 * n2, k.zero());
    for (auto i = a.c.begin(); i != a.c.end(); ++i) {
        auto j = i;
        for (++j; j != a.c.end(); ++j) {
            auto& ea = i->first;
            auto& eb = j->first;
            long at = ((ea[0] + eb[0]) * n1 + ea[1] + eb[1]) * n2 + ea[2] + eb[2];
            acc[at] = k.add(acc[at], k.mul(i->second, j->second));
        }
    }
    for (auto& v : acc)
        if (!k.is_zero(v)) v = k.add(v, v);
    for (auto& [e, v] : a.c) {
        long at = ((2L * e[0]) * n1 + 2L * e[1]) * n2 + 2L * e[2];
        acc[at] = k.add(acc[at], k.mul(v, v));
    }
    for (long i0 = 0; i0 < n0; i0++)
        for (long i1 = 0; i1 < n1; i1++)
            for (long i2 = 0; i2 < n2; i2++) {
                auto& v = acc[(i0 * n1 + i1) * n2 + i2];
                if (!k.is_zero(v))
                    r.c.emplace_hint(r.c.end(), std::array<int, 3>{(int)i0, (int)i1, (int)i2},
                                     std::move(v));
            }
    return r;
}

template <class K>
bool p3_eq(const K& k, const Poly3<K>& a, const Poly3<K>& b) {
    if (a.c.size() != b.c.size()) return false;
    auto ia = a.c.begin();
    for (auto& [e, v] : b.c) {
        if (ia->first != e || !k.eq(ia->second, v)) return false;
        ++ia;
    }
    return true;
}

// variable renaming
template <class K>
Poly2<K> p2_swap(const Poly2<K>& p) {
    Poly2<K> r;
    for (auto& [e, v] : p.c) r.c.emplace(std::array<int, 2>{e[1], e[0]}, v);
    return r;
}

template <class K>
Poly3<K> p3_swap(const Poly3<K>& p, int a, int b) {
    Poly3<K> r;
    for (auto& [e, v] : p.c) {
        auto f = e;
        std::swap(f[a], f[b]);
        r.c.emplace(f, v);
    }
    return r;
}

// new exponent i comes from old slot perm[i]
template <class K>
Poly3<K> p3_permute(const Poly3<K>& p, const std::array<int, 3>& perm) {
    Poly3<K> r;
    for (auto& [e, v] : p.c)
        r.c.emplace(std::array<int, 3>{e[perm[0]], e[perm[1]], e[perm[2]]}, v);
    return r;
}

// embeddings of univariate polynomials
template <class K>
Poly2<K> p2_from_x(const K& k, const Poly<K>& p) {
    Poly2<K> r;
    for (int i = 0; i <= p.degree(); i++) p2_add_term(k, r, i, 0, p.c[i]);
    return r;
}

template <class K>
Poly2<K> p2_from_y(const K& k, const Poly<K>& p) {
    Poly2<K> r;
    for (int i = 0; i <= p.degree(); i++) p2_add_term(k, r, 0, i, p.c[i]);
    return r;
}

// specializations
template <class K>
Poly<K> p2_eval_y(const K& k, const Poly2<K>& p, const typename K::Elem& y0) {
    Poly<K> r;
    r.c.assign(std::max(p2_deg(p, 0), 0) + 1, k.zero());
    for (auto& [e, v] : p.c) {
        auto t = v;
        for (int i = 0; i < e[1]; i++) t = k.mul(t, y0);
        r.c[e[0]] = k.add(r.c[e[0]], t);
    }
    poly_trim(k, r);
    return r;
}

template <class K>
Poly<K> p2_eval_x(const K& k, const Poly2<K>& p, const typename K::Elem& x0) {
    return p2_eval_y(k, p2_swap(p), x0);
}

template <class K>
typename K::Elem p2_eval(const K& k, const Poly2<K>& p, const typename K::Elem& x0,
                         const typename K::Elem& y0) {
    return poly_eval(k, p2_eval_y(k, p, y0), x0);
}

template <class K>
Poly2<K> p3_eval_var(const K& k, const Poly3<K>& p, int var, const typename K::Elem& c) {
    Poly2<K> r;
    for (auto& [e, v] : p.c) {
        auto t = v;
        for (int i = 0; i < e[var]; i++) t = k.mul(t, c);
        int a = e[var == 0 ? 1 : 0];
        int b = e[var == 2 ? 1 : 2];
        p2_add_term(k, r, a, b, t);
    }
    return r;
}

template <class K>
typename K::Elem p3_eval(const K& k, const Poly3<K>& p, const typename K::Elem& x0,
                         const typename K::Elem& y0, const typename K::Elem& z0) {
    return p2_eval(k, p3_eval_var(k, p, 2, z0), x0, y0);
}

// z -> y^e, collapsing (x, y, z) into (x, y)
template <class K>
Poly2<K> p3_kron(const K& k, const Poly3<K>& p, int e) {
    Poly2<K> r;
    for (auto& [ex, v] : p.c) p2_add_term(k, r, ex[0], ex[1] + e * ex[2], v);
    return r;
}

// digits of y-exponents back out to (y, z); valid when the true y-degree is < e
template <class K>
Poly2<K> p2_kron_inverse(const K& k, const Poly<K>& p, int e) {
    Poly2<K> r;
    for (int i = 0; i <= p.degree(); i++)
        if (!k.is_zero(p.c[i])) p2_add_term(k, r, i % e, i / e, p.c[i]);
    return r;
}

// x-layered view with coefficients in the rational function field of y;
// the bridge used for gcd and exact division.
template <class K>
Poly<Frac<K>> p2_nest(const Frac<K>& Fx, const Poly2<K>& p) {
    const K& k = Fx.k;
    int dx = p2_deg(p, 0);
    std::vector<Poly<K>> rows(std::max(dx, 0) + 1, poly_zero(k));
    for (auto& [e, v] : p.c) {
        auto& row = rows[e[0]];
        if ((int)row.c.size() <= e[1]) row.c.resize(e[1] + 1, k.zero());
        row.c[e[1]] = k.add(row.c[e[1]], v);
    }
    Poly<Frac<K>> out;
    for (auto& row : rows) {
        poly_trim(k, row);
        out.c.push_back(Fx.from_poly(row));
    }
    poly_trim(Fx, out);
    return out;
}

template <class K>
Poly2<K> p2_unnest(const Frac<K>& Fx, const Poly<Frac<K>>& p) {
    const K& k = Fx.k;
    Poly2<K> r;
    for (int i = 0; i <= p.degree(); i++) {
        if (!Fx.is_poly(p.c[i])) throw std::logic_error("unnest: coefficient has a denominator");
        for (int j = 0; j <= p.c[i].num.degree(); j++) p2_add_term(k, r, i, j, p.c[i].num.c[j]);
    }
    return r;
}

// gcd of the y-polynomial coefficients (the x-content)
template <class K>
Poly<K> p2_content_x(const K& k, const Poly2<K>& p) {
    Poly<K> g = poly_zero(k);
    int dx = p2_deg(p, 0);
    for (int i = 0; i <= dx; i++) {
        Poly<K> row;
        for (auto& [e, v] : p.c)
            if (e[0] == i) {
                if ((int)row.c.size() <= e[1]) row.c.resize(e[1] + 1, k.zero());
                row.c[e[1]] = v;
            }
        poly_trim(k, row);
        if (!row.is_zero()) g = g.is_zero() ? poly_monic(k, row) : poly_gcd(k, g, row);
        if (g.degree() == 0) break;
    }
    return g;
}

namespace detail {

// the y-polynomial sitting at x-degree i
template <class K>
Poly<K> p2_ycoef(const K& k, const Poly2<K>& p, int i) {
    Poly<K> r;
    for (auto& [e, v] : p.c)
        if (e[0] == i) {
            if ((int)r.c.size() <= e[1]) r.c.resize(e[1] + 1, k.zero());
            r.c[e[1]] = v;
        }
    poly_trim(k, r);
    return r;
}

// exact division in K[y][x] by x-long division; every partial quotient of an
// exact division is itself exact, so the first inexact coefficient step or a
// leftover remainder proves indivisibility
template <class K>
std::optional<Poly2<K>> p2_try_divexact(const K& k, const Poly2<K>& p, const Poly2<K>& d) {
    if (d.is_zero()) throw std::invalid_argument("p2_divexact: zero divisor");
    if (p.is_zero()) return Poly2<K>{};
    int dxd = p2_deg(d, 0);
    if (dxd == 0) {
        // pure y-polynomial divisor
        auto dy = p2_ycoef(k, d, 0);
        Poly2<K> out;
        for (int i = 0; i <= p2_deg(p, 0); i++) {
            auto row = p2_ycoef(k, p, i);
            if (row.is_zero()) continue;
            auto [q, r] = poly_divrem(k, row, dy);
            if (!r.is_zero()) return std::nullopt;
            for (int j = 0; j <= q.degree(); j++)
                if (!k.is_zero(q.c[j])) p2_add_term(k, out, i, j, q.c[j]);
        }
        return out;
    }
    auto lcd = p2_ycoef(k, d, dxd);
    Poly2<K> rem = p, out;
    while (!rem.is_zero()) {
        int dxr = p2_deg(rem, 0);
        if (dxr < dxd) return std::nullopt;
        auto [q, r] = poly_divrem(k, p2_ycoef(k, rem, dxr), lcd);
        if (!r.is_zero() || q.is_zero()) return std::nullopt;
        Poly2<K> qx;
        for (int j = 0; j <= q.degree(); j++)
            if (!k.is_zero(q.c[j])) p2_add_term(k, qx, dxr - dxd, j, q.c[j]);
        out = p2_add(k, out, qx);
        rem = p2_sub(k, rem, p2_mul(k, qx, d));
    }
    return out;
}

} // namespace detail

template <class K>
Poly2<K> p2_div_ypoly(const K& k, const Poly2<K>& p, const Poly<K>& d) {
    if (d.degree() == 0) return p2_mul_scalar(k, p, k.inv(d.c[0]));
    Poly2<K> out;
    for (int i = 0; i <= p2_deg(p, 0); i++) {
        auto row = detail::p2_ycoef(k, p, i);
        if (row.is_zero()) continue;
        auto q = poly_divexact(k, row, d);
        for (int j = 0; j <= q.degree(); j++)
            if (!k.is_zero(q.c[j])) p2_add_term(k, out, i, j, q.c[j]);
    }
    return out;
}

template <class K>
Poly2<K> p2_divexact(const K& k, const Poly2<K>& p, const Poly2<K>& d) {
    auto q = detail::p2_try_divexact(k, p, d);
    if (!q) throw std::logic_error("p2_divexact: division is not exact");
    return *q;
}

namespace detail {

// Primitive-part gcd of y-primitive inputs with positive x-degree, by
// y-specialization: monic univariate gcds are scaled by the value of the
// leading-coefficient gcd, interpolated, and certified by trial division.
// Specializations can only overestimate the gcd degree, so one constant
// sample settles coprimality, and a failed certification hunts for a sample
// exposing a smaller degree.
template <class B>
Poly2<GF<B>> p2_gcd_prim_core(const GF<B>& F, const Poly2<GF<B>>& P, const Poly2<GF<B>>& Q) {
    using K = GF<B>;
    Poly2<K> one;
    p2_add_term(F, one, 0, 0, F.one());
    auto lcP = p2_ycoef(F, P, p2_deg(P, 0));
    auto lcQ = p2_ycoef(F, Q, p2_deg(Q, 0));
    auto gamma = poly_gcd(F, lcP, lcQ);
    int need = gamma.degree() + std::min(p2_deg(P, 1), p2_deg(Q, 1)) + 1;

    Int idx = 0;
    auto next_good = [&]() -> std::optional<typename K::Elem> {
        while (idx < F.order()) {
            auto y0 = F.from_index(idx);
            idx += 1;
            if (F.is_zero(poly_eval(F, lcP, y0)) || F.is_zero(poly_eval(F, lcQ, y0))) continue;
            return y0;
        }
        return std::nullopt;
    };
    auto sample = [&](const typename K::Elem& y0) {
        return poly_gcd(F, p2_eval_y(F, P, y0), p2_eval_y(F, Q, y0));
    };

    int dg = std::numeric_limits<int>::max();
    std::vector<typename K::Elem> xs;
    std::vector<Poly<K>> gs;
    auto take = [&](const typename K::Elem& y0, const Poly<K>& g0) {
        if (g0.degree() < dg) {
            dg = g0.degree();
            xs.clear();
            gs.clear();
        }
        xs.push_back(y0);
        gs.push_back(poly_mul_scalar(F, g0, poly_eval(F, gamma, y0)));
    };
    while (true) {
        while ((int)xs.size() < need) {
            auto y0 = next_good();
            if (!y0) throw NotEnoughPoints("gcd specializations exhausted the field");
            auto g0 = sample(*y0);
            if (g0.degree() == 0) return one;
            if (g0.degree() > dg) continue;
            take(*y0, g0);
        }
        Poly2<K> H;
        for (int j = 0; j <= dg; j++) {
            std::vector<typename K::Elem> vs;
            vs.reserve(xs.size());
            for (auto& g : gs) vs.push_back(j < (int)g.c.size() ? g.c[j] : F.zero());
            auto cj = poly_interpolate(F, xs, vs);
            for (int i = 0; i <= cj.degree(); i++)
                if (!F.is_zero(cj.c[i])) p2_add_term(F, H, j, i, cj.c[i]);
        }
        auto G = p2_div_ypoly(F, H, p2_content_x(F, H));
        if (p2_try_divexact(F, P, G) && p2_try_divexact(F, Q, G)) return G;
        bool found = false;
        while (auto y0 = next_good()) {
            auto g0 = sample(*y0);
            if (g0.degree() == 0) return one;
            if (g0.degree() < dg) {
                take(*y0, g0);
                found = true;
                break;
            }
        }
        if (!found) throw NotEnoughPoints("gcd specializations exhausted the field");
    }
}

} // namespace detail

// Total gcd: the y-content part times the primitive gcd. The primitive gcd
// is computed by specialization and interpolation, lifting to an extension
// field when the base runs out of sample points; the result is normalized so
// the lex-leading coefficient is 1.
template <class B>
Poly2<GF<B>> p2_gcd(const GF<B>& F, const Poly2<GF<B>>& a, const Poly2<GF<B>>& b) {
    using K = GF<B>;
    auto normalize = [&](Poly2<K> p) {
        if (p.c.empty()) return p;
        auto lead = p.c.rbegin()->second;
        return p2_mul_scalar(F, p, F.inv(lead));
    };
    if (a.is_zero()) return normalize(b);
    if (b.is_zero()) return normalize(a);
    auto ca = p2_content_x(F, a);
    auto cb = p2_content_x(F, b);
    auto cg = poly_gcd(F, ca, cb);
    auto ap = p2_div_ypoly(F, a, ca);
    auto bp = p2_div_ypoly(F, b, cb);
    Poly2<K> gp;
    if (p2_deg(ap, 0) == 0 || p2_deg(bp, 0) == 0) {
        // a y-primitive polynomial without x is a unit
        p2_add_term(F, gp, 0, 0, F.one());
    } else if (p2_deg(ap, 1) == 0 && p2_deg(bp, 1) == 0) {
        Poly<K> pa, pb;
        for (auto& [e, v] : ap.c) {
            if ((int)pa.c.size() <= e[0]) pa.c.resize(e[0] + 1, F.zero());
            pa.c[e[0]] = v;
        }
        for (auto& [e, v] : bp.c) {
            if ((int)pb.c.size() <= e[0]) pb.c.resize(e[0] + 1, F.zero());
            pb.c[e[0]] = v;
        }
        gp = p2_from_x(F, poly_gcd(F, pa, pb));
    } else {
        try {
            gp = detail::p2_gcd_prim_core(F, ap, bp);
        } catch (const NotEnoughPoints&) {
            int dx = std::max(p2_deg(ap, 0), p2_deg(bp, 0));
            int dy = std::max(p2_deg(ap, 1), p2_deg(bp, 1));
            Int target = Int(2L * dx * dy + 1) + 2 * dy + 2;
            int m = 1;
            Int have = F.order();
            while (have < target) {
                have *= F.order();
                m++;
            }
            Rng rng(0xb1f2acd);
            auto E = make_extension(F, m, rng);
            auto emb = find_embedding(F, E, rng);
            auto liftp = [&](const Poly2<K>& p) {
                Poly2<K> r;
                for (auto& [e, v] : p.c) r.c.emplace(e, emb.apply(v));
                return r;
            };
            auto GE = detail::p2_gcd_prim_core(E, liftp(ap), liftp(bp));
            for (auto& [e, v] : GE.c) {
                auto s = embed_pullback(emb, v);
                if (!s) throw std::logic_error("gcd does not descend to the base field");
                gp.c.emplace(e, *s);
            }
        }
    }
    return normalize(p2_mul(F, gp, p2_from_y(F, cg)));
}

template <class K>
Poly2<K> p2_pow(const K& k, const Poly2<K>& a, int n) {
    Poly2<K> r;
    p2_add_term(k, r, 0, 0, k.one());
    for (int i = 0; i < n; i++) r = p2_mul(k, r, a);
    return r;
}

// rewrite a polynomial symmetric under x <-> y in terms of s1 = x + y and
// s2 = xy; the result reads (s1, s2) in the (x, y) slots
template <class K>
Poly2<K> p2_symmetrize(const K& k, const Poly2<K>& p) {
    Poly2<K> s1;
    p2_add_term(k, s1, 1, 0, k.one());
    p2_add_term(k, s1, 0, 1, k.one());
    Poly2<K> rem = p, out;
    while (!rem.is_zero()) {
        auto [e, c] = *rem.c.rbegin();
        if (e[0] < e[1]) throw std::logic_error("p2_symmetrize: input is not symmetric");
        p2_add_term(k, out, e[0] - e[1], e[1], c);
        // its expansion c (x+y)^(e0-e1) (xy)^e1 cancels the lex-leading term
        Poly2<K> t;
        p2_add_term(k, t, e[1], e[1], c);
        for (int i = 0; i < e[0] - e[1]; i++) t = p2_mul(k, t, s1);
        rem = p2_sub(k, rem, t);
    }
    return out;
}

// divide a common factor out of both inputs; returns it (1 if coprime)
template <class K>
Poly2<K> p2_strip_gcd(const K& k, Poly2<K>& a, Poly2<K>& b) {
    auto g = p2_gcd(k, a, b);
    if (p2_deg(g, 0) > 0 || p2_deg(g, 1) > 0) {
        a = p2_divexact(k, a, g);
        b = p2_divexact(k, b, g);
    }
    return g;
}

namespace detail {

// elimination of x by specialization of y, univariate resultants and
// incremental Newton interpolation; callers handle field-size failures.
// Sampling stops once `slack` consecutive divided differences vanish: each
// such sample already agrees with the current interpolant, so it doubles as
// a control point. The Sylvester bound stays as the hard cap, where the
// result is exact unconditionally.
template <class B>
Poly<GF<B>> resultant_biv_core(const GF<B>& F, const Poly2<GF<B>>& P, const Poly2<GF<B>>& Q) {
    using K = GF<B>;
    if (P.is_zero() || Q.is_zero()) return poly_zero(F);
    int dxp = p2_deg(P, 0), dxq = p2_deg(Q, 0);
    if (dxp == 0 && dxq == 0) return poly_one(F);
    // x-free side: Res = (that side)^(x-degree of the other)
    if (dxp == 0) return poly_pow(F, p2_eval_x(F, P, F.zero()), (unsigned long)dxq);
    if (dxq == 0) return poly_pow(F, p2_eval_x(F, Q, F.zero()), (unsigned long)dxp);

    long bound = (long)p2_deg(P, 1) * dxq + (long)p2_deg(Q, 1) * dxp;

    Poly<K> lcP, lcQ;
    for (auto& [e, v] : P.c)
        if (e[0] == dxp) {
            if ((int)lcP.c.size() <= e[1]) lcP.c.resize(e[1] + 1, F.zero());
            lcP.c[e[1]] = v;
        }
    for (auto& [e, v] : Q.c)
        if (e[0] == dxq) {
            if ((int)lcQ.c.size() <= e[1]) lcQ.c.resize(e[1] + 1, F.zero());
            lcQ.c[e[1]] = v;
        }
    poly_trim(F, lcP);
    poly_trim(F, lcQ);

    Int idx = 0;
    auto next_good = [&]() -> std::optional<typename K::Elem> {
        while (idx < F.order()) {
            auto y0 = F.from_index(idx);
            idx += 1;
            if (F.is_zero(poly_eval(F, lcP, y0)) || F.is_zero(poly_eval(F, lcQ, y0))) continue;
            return y0;
        }
        return std::nullopt;
    };

    const long slack = 3;
    std::vector<typename K::Elem> xs, row, coef;
    long dstar = -1;
    while (true) {
        long m = (long)xs.size();
        if (m == bound + 1 || (m >= 1 && m - 1 - dstar >= slack)) break;
        auto y0 = next_good();
        if (!y0) throw NotEnoughPoints("degenerate specializations exhausted the field");
        auto val = poly_resultant(F, p2_eval_y(F, P, *y0), p2_eval_y(F, Q, *y0));
        // row[i] holds the divided difference over samples i..m-1
        std::vector<typename K::Elem> nrow(m + 1, F.zero());
        nrow[m] = val;
        for (long i = m - 1; i >= 0; i--)
            nrow[i] = F.mul(F.sub(nrow[i + 1], row[i]), F.inv(F.sub(*y0, xs[i])));
        coef.push_back(nrow[0]);
        if (!F.is_zero(nrow[0])) dstar = m;
        row = std::move(nrow);
        xs.push_back(*y0);
    }
    if (dstar < 0) return poly_zero(F);
    // Newton form back to the monomial basis, Horner over the sample points
    Poly<K> R;
    R.c.push_back(coef[dstar]);
    for (long j = dstar - 1; j >= 0; j--) {
        Poly<K> Rn;
        Rn.c.assign(R.c.size() + 1, F.zero());
        for (size_t t = 0; t < R.c.size(); t++) {
            Rn.c[t + 1] = F.add(Rn.c[t + 1], R.c[t]);
            Rn.c[t] = F.sub(Rn.c[t], F.mul(xs[j], R.c[t]));
        }
        Rn.c[0] = F.add(Rn.c[0], coef[j]);
        R = std::move(Rn);
    }
    poly_trim(F, R);
    return R;
}

} // namespace detail

// Res over the eliminated variable (0 = x, 1 = y) of two bivariate
// polynomials; lifts to an extension field when the base is too small and
// projects the result back.
template <class B>
Poly<GF<B>> resultant_biv(const GF<B>& F, const Poly2<GF<B>>& P, const Poly2<GF<B>>& Q,
                          int elim_var, Rng& rng) {
    const Poly2<GF<B>>& Pn = elim_var == 0 ? P : p2_swap(P);
    const Poly2<GF<B>>& Qn = elim_var == 0 ? Q : p2_swap(Q);
    try {
        return detail::resultant_biv_core(F, Pn, Qn);
    } catch (const NotEnoughPoints&) {
    }
    long bound = (long)p2_deg(Pn, 1) * p2_deg(Qn, 0) + (long)p2_deg(Qn, 1) * p2_deg(Pn, 0);
    int dy = std::max(std::max(p2_deg(Pn, 1), p2_deg(Qn, 1)), 0);
    Int target = Int(bound + 1) + 2 * dy + 2;
    int m = 1;
    Int have = F.order();
    while (have < target) {
        have *= F.order();
        m++;
    }
    auto E = make_extension(F, m, rng);
    auto emb = find_embedding(F, E, rng);
    auto liftp = [&](const Poly2<GF<B>>& p) {
        Poly2<GF<B>> r;
        for (auto& [e, v] : p.c) r.c.emplace(e, emb.apply(v));
        return r;
    };
    auto RE = detail::resultant_biv_core(E, liftp(Pn), liftp(Qn));
    Poly<GF<B>> R;
    for (auto& c : RE.c) {
        auto s = embed_pullback(emb, c);
        if (!s) throw std::logic_error("resultant does not descend to the base field");
        R.c.push_back(*s);
    }
    poly_trim(F, R);
    return R;
}

// Substitution exponent for folding z into y: strictly above the per-variable
// output bound 2d^2, so the digits separate again.
inline int triv_kron_exponent(int d) { return 2 * d * d + 1; }

// Res over one of three variables via the substitution z -> y^(2d^2+1),
// bivariate elimination, and digit decomposition of the result. The output
// keeps the two surviving variables in their original relative order.
template <class B>
Poly2<GF<B>> resultant_triv(const GF<B>& F, const Poly3<GF<B>>& P, const Poly3<GF<B>>& Q,
                            int elim_var, Rng& rng) {
    static const std::array<std::array<int, 3>, 3> perms{{{0, 1, 2}, {1, 0, 2}, {2, 0, 1}}};
    const auto& perm = perms[elim_var];
    Poly3<GF<B>> Pn = p3_permute(P, perm);
    Poly3<GF<B>> Qn = p3_permute(Q, perm);
    int d = 0;
    for (int v = 0; v < 3; v++)
        d = std::max({d, p3_deg(Pn, v), p3_deg(Qn, v)});
    int e = triv_kron_exponent(d);
    auto R1 = resultant_biv(F, p3_kron(F, Pn, e), p3_kron(F, Qn, e), 0, rng);
    auto R = p2_kron_inverse(F, R1, e);
    if (p2_deg(R, 0) > 2 * d * d || p2_deg(R, 1) > 2 * d * d)
        throw std::logic_error("trivariate resultant degree bound violated");
    return R;
}

namespace detail {

// elimination of x on a (y, z) sample grid: specialize z, run the bivariate
// core, then interpolate each y coefficient across z; per-variable output
// bounds come from the Sylvester matrix row structure
template <class B>
Poly2<GF<B>> resultant_triv_grid_core(const GF<B>& F, const Poly3<GF<B>>& P,
                                      const Poly3<GF<B>>& Q) {
    using K = GF<B>;
    if (P.is_zero() || Q.is_zero()) return {};
    int dxp = p3_deg(P, 0), dxq = p3_deg(Q, 0);
    if (dxp == 0 && dxq == 0) {
        Poly2<K> one;
        p2_add_term(F, one, 0, 0, F.one());
        return one;
    }
    if (dxp == 0) return p2_pow(F, p3_eval_var(F, P, 0, F.zero()), dxq);
    if (dxq == 0) return p2_pow(F, p3_eval_var(F, Q, 0, F.zero()), dxp);

    int dy_out = p3_deg(P, 1) * dxq + p3_deg(Q, 1) * dxp;
    long dz_out = (long)p3_deg(P, 2) * dxq + (long)p3_deg(Q, 2) * dxp;

    auto lead = [&](const Poly3<K>& p, int d) {
        Poly2<K> lc;
        for (auto& [e, v] : p.c)
            if (e[0] == d) p2_add_term(F, lc, e[1], e[2], v);
        return lc;
    };
    auto lcP = lead(P, dxp), lcQ = lead(Q, dxq);

    Int idx = 0;
    auto next_good = [&]() -> std::optional<typename K::Elem> {
        while (idx < F.order()) {
            auto z0 = F.from_index(idx);
            idx += 1;
            if (p2_eval_y(F, lcP, z0).is_zero() || p2_eval_y(F, lcQ, z0).is_zero()) continue;
            return z0;
        }
        return std::nullopt;
    };

    // Newton interpolation across z-planes with whole rows as values; a
    // vanishing difference row certifies every y coefficient at once, so two
    // consecutive ones suffice as controls
    const long slack = 2;
    std::vector<typename K::Elem> zs;
    std::vector<Poly<K>> row, coef;
    long dstar = -1;
    while (true) {
        long m = (long)zs.size();
        if (m == dz_out + 1 || (m >= 1 && m - 1 - dstar >= slack)) break;
        auto z0 = next_good();
        if (!z0) throw NotEnoughPoints("degenerate z specializations exhausted the field");
        auto val = resultant_biv_core(F, p3_eval_var(F, P, 2, *z0), p3_eval_var(F, Q, 2, *z0));
        if (val.degree() > dy_out) throw std::logic_error("grid resultant y bound violated");
        std::vector<Poly<K>> nrow(m + 1);
        nrow[m] = std::move(val);
        for (long i = m - 1; i >= 0; i--) {
            auto s = F.inv(F.sub(*z0, zs[i]));
            auto d = poly_sub(F, nrow[i + 1], row[i]);
            nrow[i] = poly_map(F, d, [&](const typename K::Elem& c) { return F.mul(c, s); });
        }
        coef.push_back(nrow[0]);
        if (!nrow[0].is_zero()) dstar = m;
        row = std::move(nrow);
        zs.push_back(*z0);
    }
    if (dstar < 0) return {};
    // Horner over the z sample points, rows living in the y variable
    auto embed = [&](const Poly<K>& p) {
        Poly2<K> r;
        for (int i = 0; i <= p.degree(); i++)
            if (!F.is_zero(p.c[i])) p2_add_term(F, r, i, 0, p.c[i]);
        return r;
    };
    Poly2<K> R = embed(coef[dstar]);
    for (long j = dstar - 1; j >= 0; j--) {
        Poly2<K> Rn;
        for (auto& [e, v] : R.c) {
            p2_add_term(F, Rn, e[0], e[1] + 1, v);
            p2_add_term(F, Rn, e[0], e[1], F.neg(F.mul(zs[j], v)));
        }
        for (int i = 0; i <= coef[j].degree(); i++)
            if (!F.is_zero(coef[j].c[i])) p2_add_term(F, Rn, i, 0, coef[j].c[i]);
        R = std::move(Rn);
    }
    return R;
}

} // namespace detail

// Same contract as resultant_triv, computed on a two-dimensional sample grid
// instead of through a Kronecker substitution. Output degrees obey the tighter
// Sylvester bounds deg_b <= deg_b(P) deg_a(Q) + deg_b(Q) deg_a(P) per
// surviving variable b (a the eliminated one), which keeps the sample counts
// proportional to the actual input degrees.
template <class B>
Poly2<GF<B>> resultant_triv_grid(const GF<B>& F, const Poly3<GF<B>>& P, const Poly3<GF<B>>& Q,
                                 int elim_var, Rng& rng) {
    static const std::array<std::array<int, 3>, 3> perms{{{0, 1, 2}, {1, 0, 2}, {2, 0, 1}}};
    const auto& perm = perms[elim_var];
    Poly3<GF<B>> Pn = p3_permute(P, perm);
    Poly3<GF<B>> Qn = p3_permute(Q, perm);
    try {
        return detail::resultant_triv_grid_core(F, Pn, Qn);
    } catch (const NotEnoughPoints&) {
    }
    int dx = std::max(p3_deg(Pn, 0), p3_deg(Qn, 0));
    int dy = std::max(p3_deg(Pn, 1), p3_deg(Qn, 1));
    int dz = std::max(p3_deg(Pn, 2), p3_deg(Qn, 2));
    Int target = std::max(2L * dx * dy + 2 * dy + 3, 2L * dx * dz + 2 * dz + 3);
    int m = 1;
    Int have = F.order();
    while (have < target) {
        have *= F.order();
        m++;
    }
    auto E = make_extension(F, m, rng);
    auto emb = find_embedding(F, E, rng);
    auto liftp = [&](const Poly3<GF<B>>& p) {
        Poly3<GF<B>> r;
        for (auto& [e, v] : p.c) r.c.emplace(e, emb.apply(v));
        return r;
    };
    auto RE = detail::resultant_triv_grid_core(E, liftp(Pn), liftp(Qn));
    Poly2<GF<B>> R;
    for (auto& [e, v] : RE.c) {
        auto s = embed_pullback(emb, v);
        if (!s) throw std::logic_error("grid resultant does not descend to the base field");
        if (!F.is_zero(*s)) R.c.emplace(e, *s);
    }
    return R;
}

} // namespace rmc

#endif
