#ifndef RMC_KERNEL_HPP
#define RMC_KERNEL_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rmc/divpoly.hpp"
#include "rmc/endo.hpp"
#include "rmc/poly2.hpp"
#include "rmc/polyfactor.hpp"
#include "rmc/rm_order.hpp"

namespace rmc {

// Cutting the kernel of alpha = a + b eta + c eta^2 out of the Jacobian:
// a generic kernel element P1 + P2 + P3 - 3inf satisfies
//   alpha(P1 - inf) + alpha(P2 - inf) = -alpha(P3 - inf),
// which becomes a polynomial system in the six coordinates once the Mumford
// coefficients of both sides are matched and the y's are squared away.

struct ZeroResultant : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct Exhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// coordinate expressions carrying the curve roots y1, y2, y3

// comp[m] multiplies y1^(m&1) y2^(m>>1&1) y3^(m>>2&1); products reduce via
// y_i^2 = f(x_i)
template <class K>
struct YExpr {
    std::array<Poly3<K>, 8> comp{};

    bool is_zero() const {
        for (auto& c : comp)
            if (!c.is_zero()) return false;
        return true;
    }
};

template <class K>
YExpr<K> yx_sub(const K& k, const YExpr<K>& a, const YExpr<K>& b) {
    YExpr<K> r;
    for (int i = 0; i < 8; i++) r.comp[i] = p3_sub(k, a.comp[i], b.comp[i]);
    return r;
}

template <class K>
YExpr<K> yx_mul(const K& k, const YExpr<K>& a, const YExpr<K>& b,
                const std::array<Poly3<K>, 3>& fx) {
    YExpr<K> r;
    for (int i = 0; i < 8; i++) {
        if (a.comp[i].is_zero()) continue;
        for (int j = 0; j < 8; j++) {
            if (b.comp[j].is_zero()) continue;
            auto t = p3_mul(k, a.comp[i], b.comp[j]);
            for (int bit = 0; bit < 3; bit++)
                if (i & j & (1 << bit)) t = p3_mul(k, t, fx[bit]);
            r.comp[i ^ j] = p3_add(k, r.comp[i ^ j], t);
        }
    }
    return r;
}

// a * a with the cross terms taken once and doubled
template <class K>
YExpr<K> yx_sqr(const K& k, const YExpr<K>& a, const std::array<Poly3<K>, 3>& fx) {
    YExpr<K> r;
    for (int i = 0; i < 8; i++) {
        if (a.comp[i].is_zero()) continue;
        auto t = p3_sqr(k, a.comp[i]);
        for (int bit = 0; bit < 3; bit++)
            if (i & (1 << bit)) t = p3_mul(k, t, fx[bit]);
        r.comp[0] = p3_add(k, r.comp[0], t);
        for (int j = i + 1; j < 8; j++) {
            if (a.comp[j].is_zero()) continue;
            auto s = p3_mul(k, a.comp[i], a.comp[j]);
            s = p3_add(k, s, s);
            for (int bit = 0; bit < 3; bit++)
                if (i & j & (1 << bit)) s = p3_mul(k, s, fx[bit]);
            r.comp[i ^ j] = p3_add(k, r.comp[i ^ j], s);
        }
    }
    return r;
}

// Remove the y's by repeated squaring: e = A + y_b B becomes A^2 - f(x_b) B^2,
// which vanishes wherever e does on the curve. Layers with no y_b part cost
// nothing, so the minimal number of squarings happens automatically.
template <class K>
Poly3<K> y_eliminate(const K& k, YExpr<K> e, const std::array<Poly3<K>, 3>& fx) {
    for (int bit = 2; bit >= 0; bit--) {
        int mask = 1 << bit;
        YExpr<K> A, B;
        bool hasB = false;
        for (int i = 0; i < 8; i++) {
            if (e.comp[i].is_zero()) continue;
            if (i & mask) {
                B.comp[i ^ mask] = e.comp[i];
                hasB = true;
            } else {
                A.comp[i] = e.comp[i];
            }
        }
        if (!hasB) continue;
        auto B2 = yx_sqr(k, B, fx);
        for (int i = 0; i < 8; i++)
            if (!B2.comp[i].is_zero()) B2.comp[i] = p3_mul(k, B2.comp[i], fx[bit]);
        if (A.is_zero()) {
            // y_b B = 0 on the curve iff f(x_b) B^2 = 0
            e = B2;
            continue;
        }
        e = yx_sub(k, yx_sqr(k, A, fx), B2);
    }
    for (int i = 1; i < 8; i++)
        if (!e.comp[i].is_zero()) throw std::logic_error("y elimination left an odd part");
    return e.comp[0];
}

// ---------------------------------------------------------------------------
// the two-point symbolic algebra F(x1, x2)[y1, y2]

// Rational functions in two variables, held as one bivariate num/den pair
// so every reduction gcd runs over the base field. (Stacking Frac twice
// sends each coefficient operation through a nested remainder sequence,
// which is hopeless at kernel-system sizes.) Elements stay normalized:
// gcd(num, den) = 1 and the lex-leading denominator coefficient is 1.
template <class K>
struct BiFrac {
    K k;

    struct Elem {
        Poly2<K> num, den;
    };

    BiFrac() = default;
    explicit BiFrac(K base) : k(std::move(base)) {}

    Poly2<K> p2_one() const {
        Poly2<K> r;
        p2_add_term(k, r, 0, 0, k.one());
        return r;
    }
    static bool is_const(const Poly2<K>& p) { return p2_deg(p, 0) == 0 && p2_deg(p, 1) == 0; }

    Elem make(Poly2<K> n, Poly2<K> d) const {
        if (d.is_zero()) throw NonInvertible<Elem>(Elem{n, d});
        if (n.is_zero()) return {Poly2<K>{}, p2_one()};
        auto g = p2_gcd(k, n, d);
        if (!is_const(g)) {
            n = p2_divexact(k, n, g);
            d = p2_divexact(k, d, g);
        }
        auto s = k.inv(d.c.rbegin()->second);
        return {p2_mul_scalar(k, n, s), p2_mul_scalar(k, d, s)};
    }

    Elem from_p2(Poly2<K> n) const { return {std::move(n), p2_one()}; }
    Elem from_base(const typename K::Elem& c) const {
        Poly2<K> n;
        if (!k.is_zero(c)) p2_add_term(k, n, 0, 0, c);
        return {std::move(n), p2_one()};
    }

    Elem zero() const { return {Poly2<K>{}, p2_one()}; }
    Elem one() const { return {p2_one(), p2_one()}; }
    Elem from_i64(long v) const { return from_base(k.from_i64(v)); }

    bool is_zero(const Elem& a) const { return a.num.is_zero(); }
    bool eq(const Elem& a, const Elem& b) const {
        return p2_eq(k, a.num, b.num) && p2_eq(k, a.den, b.den);
    }
    bool is_poly(const Elem& a) const { return is_const(a.den); }

    Elem add(const Elem& a, const Elem& b) const {
        auto n = p2_add(k, p2_mul(k, a.num, b.den), p2_mul(k, b.num, a.den));
        return make(std::move(n), p2_mul(k, a.den, b.den));
    }
    Elem sub(const Elem& a, const Elem& b) const {
        auto n = p2_sub(k, p2_mul(k, a.num, b.den), p2_mul(k, b.num, a.den));
        return make(std::move(n), p2_mul(k, a.den, b.den));
    }
    Elem neg(const Elem& a) const { return {p2_neg(k, a.num), a.den}; }
    Elem mul(const Elem& a, const Elem& b) const {
        if (a.num.is_zero() || b.num.is_zero()) return zero();
        // cross-reduced products of normalized inputs are already reduced,
        // so no gcd on the result
        auto g1 = p2_gcd(k, a.num, b.den);
        auto g2 = p2_gcd(k, b.num, a.den);
        auto n1 = is_const(g1) ? a.num : p2_divexact(k, a.num, g1);
        auto d2 = is_const(g1) ? b.den : p2_divexact(k, b.den, g1);
        auto n2 = is_const(g2) ? b.num : p2_divexact(k, b.num, g2);
        auto d1 = is_const(g2) ? a.den : p2_divexact(k, a.den, g2);
        auto d = p2_mul(k, d1, d2);
        auto s = k.inv(d.c.rbegin()->second);
        return {p2_mul_scalar(k, p2_mul(k, n1, n2), s), p2_mul_scalar(k, d, s)};
    }
    Elem inv(const Elem& a) const {
        if (a.num.is_zero()) throw NonInvertible<Elem>(a);
        auto s = k.inv(a.num.c.rbegin()->second);
        return {p2_mul_scalar(k, a.den, s), p2_mul_scalar(k, a.num, s)};
    }

    Elem rand(Rng& rng) const {
        Poly2<K> n;
        p2_add_term(k, n, 0, 0, k.rand(rng));
        p2_add_term(k, n, 1, 0, k.rand(rng));
        p2_add_term(k, n, 0, 1, k.rand(rng));
        return {std::move(n), p2_one()};
    }

    std::string to_string(const Elem& a) const {
        if (is_poly(a)) return p2_to_string(k, a.num);
        return "(" + p2_to_string(k, a.num) + ")/(" + p2_to_string(k, a.den) + ")";
    }
};

template <class B>
struct TwoPointAlgebra {
    using K = GF<B>;
    using B2T = BiFrac<K>;
    using A1T = Quot<B2T>;
    using A2T = Quot<A1T>;

    B2T B2;
    A1T A1;
    A2T A2;
    HypCurve<A2T> C;
    typename A2T::Elem y1, y2;
};

template <class B>
TwoPointAlgebra<B> two_point_algebra(const GF<B>& F, const Poly<GF<B>>& f) {
    using K = GF<B>;
    BiFrac<K> B2(F);
    auto f_x1 = B2.from_p2(p2_from_x(F, f));
    auto f_x2 = B2.from_p2(p2_from_y(F, f));

    Poly<BiFrac<K>> m1;
    m1.c = {B2.neg(f_x1), B2.zero(), B2.one()};
    Quot<BiFrac<K>> A1(B2, m1);

    Poly<Quot<BiFrac<K>>> m2;
    m2.c = {A1.neg(A1.from_base(f_x2)), A1.zero(), A1.one()};
    Quot<Quot<BiFrac<K>>> A2(A1, m2);

    auto fA = poly_map(A2, f, [&](const typename K::Elem& c) {
        return A2.from_base(A1.from_base(B2.from_base(c)));
    });
    HypCurve<Quot<Quot<BiFrac<K>>>> C(A2, fA);
    auto y1 = A2.from_base(A1.gen());
    auto y2 = A2.gen();
    return {std::move(B2), std::move(A1), std::move(A2), std::move(C), std::move(y1),
            std::move(y2)};
}

// ---------------------------------------------------------------------------
// the kernel system

template <class B>
struct KernelSystem {
    DivisionData<GF<B>> data;            // one-point image of alpha
    std::vector<Poly3<GF<B>>> usys;      // u-side equations after y-elimination
    std::vector<Poly3<GF<B>>> vsys;      // v-side equations
    std::vector<Poly<GF<B>>> strip_x3;   // cleared x3 denominators and contents
    std::vector<Poly2<GF<B>>> strip_x12; // cleared two-point denominators and contents
    bool symmetrized = false;            // equations read (s1, s2, x3)
    int weight = 0;
    int maxdeg_data = 0;
    int maxdeg_sys = 0;
};

struct KernelOptions {
    bool symmetrize = true;
    bool strip_content = true;
};

namespace detail {

template <class K>
Poly3<K> p3_embed_pair(const K& k, const Poly2<K>& p) {
    Poly3<K> r;
    for (auto& [e, v] : p.c) p3_add_term(k, r, e[0], e[1], 0, v);
    return r;
}

template <class K>
Poly3<K> p3_embed_x3(const K& k, const Poly<K>& p) {
    Poly3<K> r;
    for (int i = 0; i <= p.degree(); i++)
        if (!k.is_zero(p.c[i])) p3_add_term(k, r, 0, 0, i, p.c[i]);
    return r;
}

template <class K>
std::map<int, Poly2<K>> p3_x3_layers(const K& k, const Poly3<K>& p) {
    std::map<int, Poly2<K>> layers;
    for (auto& [e, v] : p.c) p2_add_term(k, layers[e[2]], e[0], e[1], v);
    return layers;
}

template <class K>
Poly3<K> p3_from_x3_layers(const K& k, const std::map<int, Poly2<K>>& layers) {
    Poly3<K> r;
    for (auto& [z, layer] : layers)
        for (auto& [e, v] : layer.c) p3_add_term(k, r, e[0], e[1], z, v);
    return r;
}

// x3 content: monic gcd of the coefficient polynomials over the (x1, x2) slots
template <class K>
Poly<K> p3_x3_content(const K& k, const Poly3<K>& p) {
    std::map<std::array<int, 2>, Poly<K>> rows;
    for (auto& [e, v] : p.c) {
        auto& row = rows[{e[0], e[1]}];
        if ((int)row.c.size() <= e[2]) row.c.resize(e[2] + 1, k.zero());
        row.c[e[2]] = v;
    }
    Poly<K> g = poly_zero(k);
    for (auto& [_, row] : rows) {
        auto r = row;
        poly_trim(k, r);
        g = g.is_zero() ? poly_monic(k, r) : poly_gcd(k, g, r);
        if (g.degree() == 0) break;
    }
    return g;
}

template <class K>
Poly3<K> p3_div_x3(const K& k, const Poly3<K>& p, const Poly<K>& g) {
    std::map<std::array<int, 2>, Poly<K>> rows;
    for (auto& [e, v] : p.c) {
        auto& row = rows[{e[0], e[1]}];
        if ((int)row.c.size() <= e[2]) row.c.resize(e[2] + 1, k.zero());
        row.c[e[2]] = v;
    }
    Poly3<K> out;
    for (auto& [e, row] : rows) {
        auto r = row;
        poly_trim(k, r);
        auto q = poly_divexact(k, r, g);
        for (int i = 0; i <= q.degree(); i++)
            if (!k.is_zero(q.c[i])) p3_add_term(k, out, e[0], e[1], i, q.c[i]);
    }
    return out;
}

// (x1, x2) content: gcd of the x3 layers
template <class K>
Poly2<K> p3_pair_content(const K& k, const Poly3<K>& p) {
    auto layers = p3_x3_layers(k, p);
    Poly2<K> g;
    for (auto& [_, layer] : layers) {
        g = g.is_zero() ? layer : p2_gcd(k, g, layer);
        if (p2_deg(g, 0) == 0 && p2_deg(g, 1) == 0) break;
    }
    return g;
}

template <class K>
Poly3<K> p3_div_pair(const K& k, const Poly3<K>& p, const Poly2<K>& g) {
    auto layers = p3_x3_layers(k, p);
    for (auto& [_, layer] : layers) layer = p2_divexact(k, layer, g);
    return p3_from_x3_layers(k, layers);
}

// Pull the pure-x3 content and the pure-(x1, x2) content out of an equation;
// both cut loci whose x3 projection is everything or nothing, so removing
// them is the denominator saturation the chain needs. An equation that is
// nothing but content stays behind as its pair part: collapsing it to a
// nonzero constant would claim the system is inconsistent, when it really
// says the pair locus itself is the constraint.
template <class K>
void strip_equation(const K& k, Poly3<K>& eq, std::vector<Poly<K>>& got_x3,
                    std::vector<Poly2<K>>& got_pair) {
    if (eq.is_zero()) return;
    auto g3 = p3_x3_content(k, eq);
    auto eq3 = g3.degree() > 0 ? p3_div_x3(k, eq, g3) : eq;
    auto g12 = p3_pair_content(k, eq3);
    bool has12 = p2_deg(g12, 0) > 0 || p2_deg(g12, 1) > 0;
    auto core = has12 ? p3_div_pair(k, eq3, g12) : eq3;
    bool core_const = p3_deg(core, 0) == 0 && p3_deg(core, 1) == 0 && p3_deg(core, 2) == 0;
    if (!core_const) {
        eq = std::move(core);
        if (g3.degree() > 0) got_x3.push_back(g3);
        if (has12) got_pair.push_back(g12);
        return;
    }
    if (has12) {
        // eq = g3(x3) g12(x1, x2) up to a scalar; keep the pair condition
        Poly3<K> out;
        for (auto& [e, v] : g12.c) p3_add_term(k, out, e[0], e[1], 0, v);
        eq = std::move(out);
        if (g3.degree() > 0) got_x3.push_back(g3);
    }
    // pure x3 equations keep their own factor: nothing to strip
}

// content common to every y layer of an expression, removed before the
// squarings of y_eliminate double all the degrees; the factor is y-free, so
// the on-curve zero set splits off exactly the recorded vertical components
template <class K>
void strip_yexpr(const K& k, YExpr<K>& ye, std::vector<Poly<K>>& got_x3,
                 std::vector<Poly2<K>>& got_pair) {
    Poly<K> g3 = poly_zero(k);
    for (auto& c : ye.comp) {
        if (c.is_zero()) continue;
        auto t = p3_x3_content(k, c);
        g3 = g3.is_zero() ? t : poly_gcd(k, g3, t);
        if (g3.degree() == 0) break;
    }
    if (g3.degree() > 0) {
        for (auto& c : ye.comp)
            if (!c.is_zero()) c = p3_div_x3(k, c, g3);
        got_x3.push_back(g3);
    }
    Poly2<K> g12;
    for (auto& c : ye.comp) {
        if (c.is_zero()) continue;
        auto t = p3_pair_content(k, c);
        g12 = g12.is_zero() ? t : p2_gcd(k, g12, t);
        if (p2_deg(g12, 0) == 0 && p2_deg(g12, 1) == 0) break;
    }
    if (p2_deg(g12, 0) > 0 || p2_deg(g12, 1) > 0) {
        for (auto& c : ye.comp)
            if (!c.is_zero()) c = p3_div_pair(k, c, g12);
        got_pair.push_back(g12);
    }
}

template <class K>
void push_unique(const K& k, std::vector<Poly<K>>& list, const Poly<K>& p) {
    if (p.degree() < 1) return;
    auto m = poly_monic(k, p);
    for (auto& q : list)
        if (poly_eq(k, q, m)) return;
    list.push_back(m);
}

// right-hand side of one matched Mumford coefficient, as fractions in x3:
// u-side even and y3 parts, v-side even and y3 parts
template <class K>
struct RhsCoeff {
    typename Frac<K>::Elem ue, uo, ve, vo;
};

// Matched-coefficient system builder shared by the kernel and preimage paths.
// The left side is always the symbolic Cantor sum of two generic images; the
// right side is supplied per X power.
template <class B, class RhsFn>
KernelSystem<B> build_matched_system(const GF<B>& F, const Poly<GF<B>>& f,
                                     const DivisionData<GF<B>>& dat, const RhsFn& rhs,
                                     const KernelOptions& opt) {
    using K = GF<B>;
    auto T = two_point_algebra(F, f);
    auto& B2 = T.B2;
    auto& A2 = T.A2;

    auto at1 = [&](const Poly<K>& p) { return B2.from_p2(p2_from_x(F, p)); };
    auto at2 = [&](const Poly<K>& p) { return B2.from_p2(p2_from_y(F, p)); };
    auto lift = [&](const typename BiFrac<K>::Elem& e) { return A2.from_base(T.A1.from_base(e)); };

    int w = dat.weight;
    auto image_at = [&](auto coord, const typename TwoPointAlgebra<B>::A2T::Elem& yk) {
        Poly<typename TwoPointAlgebra<B>::A2T> u, v;
        u.c.assign(w + 1, A2.zero());
        u.c[w] = A2.one();
        auto dinv = B2.inv(coord(dat.d[3]));
        auto einv = B2.inv(coord(dat.e[3]));
        for (int i = 0; i < w; i++) {
            u.c[i] = lift(B2.mul(coord(dat.d[i]), dinv));
        }
        v.c.assign(w, A2.zero());
        for (int i = 0; i < w; i++) v.c[i] = A2.mul(yk, lift(B2.mul(coord(dat.e[i]), einv)));
        poly_trim(A2, u);
        poly_trim(A2, v);
        return Mumford<typename TwoPointAlgebra<B>::A2T>{u, v};
    };
    auto im1 = image_at(at1, T.y1);
    auto im2 = image_at(at2, T.y2);
    auto sum = jac_add(T.C, im1, im2);  // NonInvertible propagates to the driver
    if (sum.u.degree() != 3) throw std::domain_error("kernel: two-point sum is not generic");

    // split an algebra element into its (1, y1, y2, y1 y2) parts
    auto comps = [&](const typename TwoPointAlgebra<B>::A2T::Elem& e) {
        std::array<typename BiFrac<K>::Elem, 4> c{B2.zero(), B2.zero(), B2.zero(), B2.zero()};
        for (int j2 = 0; j2 <= std::min(e.degree(), 1); j2++) {
            auto g = poly_coeff(T.A1, e, j2);
            for (int j1 = 0; j1 <= std::min(g.degree(), 1); j1++)
                c[j1 | (j2 << 1)] = poly_coeff(B2, g, j1);
        }
        return c;
    };

    std::array<Poly3<K>, 3> fx;
    {
        Poly3<K> f1, f2, f3;
        for (int i = 0; i <= f.degree(); i++) {
            if (F.is_zero(f.c[i])) continue;
            p3_add_term(F, f1, i, 0, 0, f.c[i]);
            p3_add_term(F, f2, 0, i, 0, f.c[i]);
            p3_add_term(F, f3, 0, 0, i, f.c[i]);
        }
        fx = {f1, f2, f3};
    }

    KernelSystem<B> sys;
    sys.data = dat;
    sys.weight = w;
    sys.maxdeg_data = degree_profile(dat).maxdeg;
    push_unique(F, sys.strip_x3, dat.d[3]);
    push_unique(F, sys.strip_x3, dat.e[3]);

    // common denominator of two two-point coefficients
    auto pair_clear = [&](const typename BiFrac<K>::Elem& p, const typename BiFrac<K>::Elem& q) {
        auto g = p2_gcd(F, p.den, q.den);
        auto l = p2_mul(F, p.den, p2_divexact(F, q.den, g));
        struct Out {
            Poly2<K> np, nq, l;
        };
        return Out{p2_mul(F, p.num, p2_divexact(F, q.den, g)),
                   p2_mul(F, q.num, p2_divexact(F, p.den, g)), l};
    };
    // clear a fraction pair in x3 to numerators over a common denominator
    auto x3_clear = [&](const typename Frac<K>::Elem& p, const typename Frac<K>::Elem& q) {
        auto l = poly_lcm(F, p.den, q.den);
        struct Out {
            Poly<K> np, nq, l;
        };
        return Out{poly_mul(F, p.num, poly_divexact(F, l, p.den)),
                   poly_mul(F, q.num, poly_divexact(F, l, q.den)), l};
    };

    for (int i = 0; i < 3; i++) {
        auto r = rhs(i);
        {
            auto c = comps(poly_coeff(A2, sum.u, i));
            if (!B2.is_zero(c[1]) || !B2.is_zero(c[2]))
                throw std::domain_error("kernel: u coefficient has an odd part");
            auto lhs = pair_clear(c[0], c[3]);
            auto rx = x3_clear(r.ue, r.uo);
            push_unique(F, sys.strip_x3, rx.l);
            YExpr<K> ye;
            ye.comp[0] = p3_sub(F, p3_mul(F, p3_embed_pair(F, lhs.np), p3_embed_x3(F, rx.l)),
                                p3_mul(F, p3_embed_pair(F, lhs.l), p3_embed_x3(F, rx.np)));
            ye.comp[3] = p3_mul(F, p3_embed_pair(F, lhs.nq), p3_embed_x3(F, rx.l));
            ye.comp[4] = p3_neg(F, p3_mul(F, p3_embed_pair(F, lhs.l), p3_embed_x3(F, rx.nq)));
            if (opt.strip_content) strip_yexpr(F, ye, sys.strip_x3, sys.strip_x12);
            auto eq = y_eliminate(F, ye, fx);
            if (opt.strip_content) strip_equation(F, eq, sys.strip_x3, sys.strip_x12);
            if (!eq.is_zero()) sys.usys.push_back(std::move(eq));
        }
        {
            auto c = comps(poly_coeff(A2, sum.v, i));
            if (!B2.is_zero(c[0]) || !B2.is_zero(c[3]))
                throw std::domain_error("kernel: v coefficient has an even part");
            auto lhs = pair_clear(c[1], c[2]);
            auto rx = x3_clear(r.ve, r.vo);
            push_unique(F, sys.strip_x3, rx.l);
            YExpr<K> ye;
            ye.comp[1] = p3_mul(F, p3_embed_pair(F, lhs.np), p3_embed_x3(F, rx.l));
            ye.comp[2] = p3_mul(F, p3_embed_pair(F, lhs.nq), p3_embed_x3(F, rx.l));
            ye.comp[0] = p3_neg(F, p3_mul(F, p3_embed_pair(F, lhs.l), p3_embed_x3(F, rx.np)));
            ye.comp[4] = p3_neg(F, p3_mul(F, p3_embed_pair(F, lhs.l), p3_embed_x3(F, rx.nq)));
            if (opt.strip_content) strip_yexpr(F, ye, sys.strip_x3, sys.strip_x12);
            auto eq = y_eliminate(F, ye, fx);
            if (opt.strip_content) strip_equation(F, eq, sys.strip_x3, sys.strip_x12);
            if (!eq.is_zero()) sys.vsys.push_back(std::move(eq));
        }
    }

    for (auto list : {&sys.usys, &sys.vsys})
        for (auto& eq : *list) {
            auto sw = p3_swap(eq, 0, 1);
            if (!p3_eq(F, eq, sw)) {
                if (!p3_eq(F, sw, p3_neg(F, eq)))
                    throw std::logic_error(
                        "kernel equation is neither symmetric nor antisymmetric in x1, x2");
                // y-elimination can flip the swap sign; the diagonal x1 = x2
                // carries no generic kernel triple, so divide it out
                Poly2<K> diag;
                p2_add_term(F, diag, 1, 0, F.one());
                p2_add_term(F, diag, 0, 1, F.neg(F.one()));
                auto layers = p3_x3_layers(F, eq);
                for (auto& [_, layer] : layers) layer = p2_divexact(F, layer, diag);
                eq = p3_from_x3_layers(F, layers);
                sys.strip_x12.push_back(diag);
            }
            if (opt.symmetrize) {
                auto layers = p3_x3_layers(F, eq);
                for (auto& [_, layer] : layers) layer = p2_symmetrize(F, layer);
                eq = p3_from_x3_layers(F, layers);
            }
        }
    sys.symmetrized = opt.symmetrize;

    for (auto list : {&sys.usys, &sys.vsys})
        for (auto& eq : *list)
            for (int v = 0; v < 3; v++) sys.maxdeg_sys = std::max(sys.maxdeg_sys, p3_deg(eq, v));
    return sys;
}

} // namespace detail

// alpha's one-point image data; eta is only consulted when alpha has an
// eta component
template <class B>
DivisionData<GF<B>> alpha_division_data(const GF<B>& F, const Poly<GF<B>>& f,
                                        const EndoFormulas& E, const typename GF<B>::Elem& eta,
                                        const OrderElem& alpha) {
    auto FF = function_field(F, f);
    if (alpha.b == 0 && alpha.c == 0) return division_polys(FF, alpha.a);
    return collect_division_data(FF, symbolic_alpha_image(FF, E, eta, alpha.a, alpha.b, alpha.c),
                                 Int(0));
}

template <class B>
KernelSystem<B> build_system(const GF<B>& F, const Poly<GF<B>>& f, const EndoFormulas& E,
                             const typename GF<B>::Elem& eta, const OrderElem& alpha,
                             const KernelOptions& opt = {}) {
    using K = GF<B>;
    auto dat = alpha_division_data(F, f, E, eta, alpha);
    if (dat.weight < 2 || dat.weight > 3)
        throw std::domain_error("kernel: image weight out of range");
    Frac<K> Fx(F);
    auto fr = [&](const Poly<K>& num, const Poly<K>& den) {
        return Fx.mul(Fx.from_poly(num), Fx.inv(Fx.from_poly(den)));
    };
    auto rhs = [&, dat](int i) {
        detail::RhsCoeff<K> r{Fx.zero(), Fx.zero(), Fx.zero(), Fx.zero()};
        // u3 written as a cubic: X^w matches the lead of the sum only when
        // w = 3; a weight drop leaves the top coefficients to the degenerate
        // locus, which the verification step filters
        if (i < dat.weight)
            r.ue = fr(dat.d[i], dat.d[3]);
        else if (i == dat.weight)
            r.ue = Fx.one();
        if (i < dat.weight) r.vo = Fx.neg(fr(dat.e[i], dat.e[3]));
        return r;
    };
    return detail::build_matched_system(F, f, dat, rhs, opt);
}

// ---------------------------------------------------------------------------
// elimination chain: x1 out by trivariate resultants, x2 out by bivariate
// ones, gcd across the redundant pairs, then both sides combined

template <class B>
Poly<GF<B>> eliminate(const GF<B>& F, const KernelSystem<B>& sys, Rng& rng) {
    using K = GF<B>;
    auto side_chain = [&](const std::vector<Poly3<K>>& eqs) -> Poly<K> {
        if (eqs.size() < 2) return poly_zero(F);
        std::vector<Poly2<K>> Rs;
        for (size_t i = 0; i < eqs.size() && Rs.size() < 3; i++)
            for (size_t j = i + 1; j < eqs.size() && Rs.size() < 3; j++) {
                auto R = resultant_triv_grid(F, eqs[i], eqs[j], 0, rng);
                if (!R.is_zero()) Rs.push_back(std::move(R));
            }
        if (Rs.size() < 2) return poly_zero(F);
        std::vector<Poly<K>> Ss;
        for (size_t i = 0; i < Rs.size(); i++)
            for (size_t j = i + 1; j < Rs.size(); j++) {
                auto A = Rs[i], Bp = Rs[j];
                auto g = p2_strip_gcd(F, A, Bp);
                auto S = resultant_biv(F, A, Bp, 0, rng);
                if (p2_deg(g, 0) > 0 || p2_deg(g, 1) > 0) {
                    // a shared factor in x3 alone still constrains x3
                    auto c = p2_content_x(F, g);
                    if (c.degree() > 0) S = S.is_zero() ? c : poly_mul(F, S, c);
                }
                if (!S.is_zero() && S.degree() > 0) Ss.push_back(poly_monic(F, S));
            }
        if (Ss.empty()) return poly_zero(F);
        Poly<K> S = Ss[0];
        for (size_t i = 1; i < Ss.size(); i++) S = poly_gcd(F, S, Ss[i]);
        return S;
    };
    auto Su = side_chain(sys.usys);
    auto Sv = side_chain(sys.vsys);
    if (Su.is_zero() || Sv.is_zero()) throw ZeroResultant("elimination chain collapsed");
    auto out = poly_gcd(F, Su, Sv);
    if (out.degree() < 1) throw ZeroResultant("sides share no x3 constraint");
    out = poly_squarefree_part(F, out);
    // saturate away the cleared denominators; out is squarefree, so one
    // division per recorded factor removes every shared irreducible
    for (auto& t : sys.strip_x3) {
        auto g = poly_gcd(F, out, t);
        if (g.degree() > 0) out = poly_divexact(F, out, g);
    }
    if (out.degree() < 1) throw ZeroResultant("only spurious x3 factors remain");
    return poly_monic(F, out);
}

// ---------------------------------------------------------------------------
// solution extraction over the smallest usable extension

template <class B>
struct KernelSolution {
    int delta = 1;     // extension degree over the base field where D lives
    Poly<GF<B>> phi;   // irreducible x3 factor that produced D
    GF<B> field;
    Mumford<GF<B>> D;
};

namespace detail {

// field tower bookkeeping for one candidate: all values are carried through
// every enlargement, so they stay consistent with each other
template <class B>
struct SolveCtx {
    GF<B> W;
    int rel = 1;
    std::function<typename GF<B>::Elem(const typename GF<B>::Elem&)> lift;
    Poly<GF<B>> fW;
    typename GF<B>::Elem etaW;
    std::vector<typename GF<B>::Elem> vals;
};

template <class B>
void ctx_grow(const GF<B>& F, SolveCtx<B>& ctx, Rng& rng) {
    auto W2 = make_extension(F, ctx.rel * 2, rng);
    auto e = find_embedding(ctx.W, W2, rng);
    auto old = ctx.lift;
    ctx.lift = [e, old](const typename GF<B>::Elem& v) { return e.apply(old(v)); };
    ctx.fW = poly_map(W2, ctx.fW, [&](const typename GF<B>::Elem& c) { return e.apply(c); });
    ctx.etaW = e.apply(ctx.etaW);
    for (auto& v : ctx.vals) v = e.apply(v);
    ctx.W = W2;
    ctx.rel *= 2;
}

// a square root in the tower, growing it once if needed
template <class B>
std::optional<size_t> ctx_sqrt(const GF<B>& F, SolveCtx<B>& ctx, size_t idx, Rng& rng) {
    auto s = ctx.W.sqrt(ctx.vals[idx]);
    if (!s) {
        ctx_grow(F, ctx, rng);
        s = ctx.W.sqrt(ctx.vals[idx]);
        if (!s) return std::nullopt;
    }
    ctx.vals.push_back(*s);
    return ctx.vals.size() - 1;
}

// Walk the factors of Sx3 in ascending degree; for each candidate coordinate
// set, hand the assembled support points to the verifier. The first accepted
// divisor wins.
template <class B>
std::optional<KernelSolution<B>> kernel_search(
    const Poly<GF<B>>& Sx3, const KernelSystem<B>& sys, const GF<B>& F, const Poly<GF<B>>& f,
    const typename GF<B>::Elem& eta, Rng& rng,
    const std::function<std::optional<Mumford<GF<B>>>(SolveCtx<B>&, const HypCurve<GF<B>>&,
                                                      const std::array<typename GF<B>::Elem, 3>&,
                                                      const std::array<typename GF<B>::Elem, 3>&)>&
        verify) {
    using K = GF<B>;
    using Elem = typename K::Elem;
    if (Sx3.degree() < 1) throw std::invalid_argument("kernel_search: no x3 constraint");
    auto facs = poly_factor(F, Sx3, rng);
    std::stable_sort(facs.begin(), facs.end(),
                     [](const auto& a, const auto& b) { return a.first.degree() < b.first.degree(); });

    std::vector<Poly3<K>> eqs;
    for (auto list : {&sys.usys, &sys.vsys})
        for (auto& e : *list) eqs.push_back(e);

    for (auto& [phi, mult] : facs) {
        int delta = phi.degree();
        GF<B> Wd = F;
        std::function<Elem(const Elem&)> lift0 = [](const Elem& v) { return v; };
        if (delta > 1) {
            Wd = make_extension(F, delta, rng);
            auto emb = find_embedding(F, Wd, rng);
            lift0 = [emb](const Elem& v) { return emb.apply(v); };
        }
        auto mapp3 = [&](const Poly3<K>& p) {
            Poly3<K> r;
            for (auto& [e, v] : p.c) r.c.emplace(e, lift0(v));
            return r;
        };
        std::vector<Poly3<K>> eqsW;
        for (auto& e : eqs) eqsW.push_back(mapp3(e));
        auto phiW = poly_map(Wd, phi, lift0);
        auto fWd = poly_map(Wd, f, lift0);

        for (auto& x3v : poly_roots(Wd, phiW, rng)) {
            std::vector<Poly2<K>> bivs;
            for (auto& e : eqsW) {
                auto b = p3_eval_var(Wd, e, 2, x3v);
                if (!b.is_zero()) bivs.push_back(std::move(b));
            }
            if (bivs.size() < 2) continue;
            Poly<K> g1 = poly_zero(Wd);
            int used = 0;
            for (size_t i = 0; i < bivs.size() && used < 4; i++)
                for (size_t j = i + 1; j < bivs.size() && used < 4; j++) {
                    auto rr = resultant_biv(Wd, bivs[i], bivs[j], 0, rng);
                    if (rr.is_zero()) continue;
                    used++;
                    g1 = g1.is_zero() ? poly_monic(Wd, rr) : poly_gcd(Wd, g1, rr);
                    if (g1.degree() == 0) break;
                }
            if (g1.degree() < 1) continue;
            for (auto& s2v : poly_roots(Wd, g1, rng)) {
                Poly<K> g0 = poly_zero(Wd);
                for (auto& b : bivs) {
                    auto uv = p2_eval_y(Wd, b, s2v);
                    if (uv.is_zero()) continue;
                    g0 = g0.is_zero() ? poly_monic(Wd, uv) : poly_gcd(Wd, g0, uv);
                    if (g0.degree() == 0) break;
                }
                if (g0.degree() < 1) continue;
                for (auto& s1v : poly_roots(Wd, g0, rng)) {
                    SolveCtx<B> ctx{Wd, delta, lift0, fWd, lift0(eta), {x3v, s1v, s2v}};
                    // support x-coordinates
                    if (sys.symmetrized) {
                        auto disc = ctx.W.sub(ctx.W.mul(ctx.vals[1], ctx.vals[1]),
                                              ctx.W.mul(ctx.W.from_i64(4), ctx.vals[2]));
                        ctx.vals.push_back(disc);
                        auto rt = ctx_sqrt(F, ctx, 3, rng);
                        if (!rt) continue;
                        auto half = ctx.W.inv(ctx.W.from_i64(2));
                        ctx.vals.push_back(
                            ctx.W.mul(half, ctx.W.add(ctx.vals[1], ctx.vals[*rt])));
                        ctx.vals.push_back(
                            ctx.W.mul(half, ctx.W.sub(ctx.vals[1], ctx.vals[*rt])));
                    } else {
                        ctx.vals.push_back(ctx.vals[1]);
                        ctx.vals.push_back(ctx.vals[2]);
                    }
                    // y candidates; indices into ctx.vals stay stable
                    size_t ix1 = ctx.vals.size() - 2, ix2 = ctx.vals.size() - 1;
                    bool bad = false;
                    std::array<size_t, 3> iy{};
                    for (int t = 0; t < 3; t++) {
                        size_t ix = t == 0 ? ix1 : t == 1 ? ix2 : 0;
                        ctx.vals.push_back(poly_eval(ctx.W, ctx.fW, ctx.vals[ix]));
                        auto rt = ctx_sqrt(F, ctx, ctx.vals.size() - 1, rng);
                        if (!rt) {
                            bad = true;
                            break;
                        }
                        iy[t] = *rt;
                    }
                    if (bad) continue;
                    HypCurve<K> CW(ctx.W, ctx.fW);
                    for (int signs = 0; signs < 8; signs++) {
                        std::array<Elem, 3> xs{ctx.vals[ix1], ctx.vals[ix2], ctx.vals[0]};
                        std::array<Elem, 3> ys{
                            signs & 1 ? ctx.W.neg(ctx.vals[iy[0]]) : ctx.vals[iy[0]],
                            signs & 2 ? ctx.W.neg(ctx.vals[iy[1]]) : ctx.vals[iy[1]],
                            signs & 4 ? ctx.W.neg(ctx.vals[iy[2]]) : ctx.vals[iy[2]]};
                        auto got = verify(ctx, CW, xs, ys);
                        if (got)
                            return KernelSolution<B>{ctx.rel, phi, ctx.W, std::move(*got)};
                    }
                }
            }
        }
    }
    return std::nullopt;
}

template <class B>
Mumford<GF<B>> assemble_divisor(const HypCurve<GF<B>>& C,
                                const std::array<typename GF<B>::Elem, 3>& xs,
                                const std::array<typename GF<B>::Elem, 3>& ys) {
    auto D = jac_zero(C);
    for (int i = 0; i < 3; i++) {
        Poly<GF<B>> u, v;
        u.c = {C.k.neg(xs[i]), C.k.one()};
        v.c = {ys[i]};
        poly_trim(C.k, v);
        D = jac_add(C, D, Mumford<GF<B>>{u, v});
    }
    return D;
}

} // namespace detail

template <class B>
KernelSolution<B> extract_torsion(const Poly<GF<B>>& Sx3, const KernelSystem<B>& sys,
                                  const GF<B>& F, const Poly<GF<B>>& f, const EndoFormulas& E,
                                  const typename GF<B>::Elem& eta, const RmOrder& R,
                                  const OrderElem& alpha, long ell, std::optional<long> lambda,
                                  Rng& rng) {
    using K = GF<B>;
    Int norm = rm_norm(R, alpha);
    if (norm < 0) norm = -norm;
    if (norm == 0 || norm % ell != 0)
        throw std::invalid_argument("extract_torsion: alpha norm not divisible by ell");
    Int cof = norm / ell;
    bool scalar = alpha.b == 0 && alpha.c == 0;

    auto verify = [&](detail::SolveCtx<B>& ctx, const HypCurve<K>& CW,
                      const std::array<typename K::Elem, 3>& xs,
                      const std::array<typename K::Elem, 3>& ys) -> std::optional<Mumford<K>> {
        auto D = detail::assemble_divisor(CW, xs, ys);
        if (D.weight() == 0) return std::nullopt;
        try {
            auto aD = scalar ? jac_scalar(CW, D, alpha.a)
                             : alpha_image(CW, E, ctx.etaW, D, alpha.a, alpha.b, alpha.c, rng);
            if (aD.weight() != 0) return std::nullopt;
            auto cand = D;
            if (jac_scalar(CW, D, ell).weight() != 0) cand = jac_scalar(CW, D, cof);
            if (cand.weight() == 0) return std::nullopt;
            if (jac_scalar(CW, cand, ell).weight() != 0) return std::nullopt;
            if (lambda) {
                auto hD = eval_endo_divisor(CW, E, ctx.etaW, cand, rng);
                auto lD = jac_scalar(CW, cand, *lambda);
                if (!poly_eq(CW.k, hD.u, lD.u) || !poly_eq(CW.k, hD.v, lD.v))
                    return std::nullopt;
            }
            return cand;
        } catch (const std::domain_error&) {
            return std::nullopt;
        } catch (const std::runtime_error&) {
            return std::nullopt;
        }
    };
    auto got = detail::kernel_search<B>(Sx3, sys, F, f, eta, rng, verify);
    if (!got) throw Exhausted("no x3 factor yields an order-" + std::to_string(ell) + " divisor");
    return *got;
}

// ---------------------------------------------------------------------------
// preimages: alpha(D) = Q via the same machinery with Q folded into the
// right-hand side

template <class B>
KernelSystem<B> preimage_system(const Mumford<GF<B>>& Q, const GF<B>& F, const Poly<GF<B>>& f,
                                const EndoFormulas& E, const typename GF<B>::Elem& eta,
                                const OrderElem& alpha, const KernelOptions& opt = {}) {
    using K = GF<B>;
    auto dat = alpha_division_data(F, f, E, eta, alpha);
    if (dat.weight < 2 || dat.weight > 3)
        throw std::domain_error("kernel: image weight out of range");

    // right side Q - alpha(P3 - inf) over the one-point function field
    auto FF = function_field(F, f);
    const auto& L = FF.L;
    const auto& Fx = FF.Fx;
    auto fr = [&](const Poly<K>& num, const Poly<K>& den) {
        return Fx.mul(Fx.from_poly(num), Fx.inv(Fx.from_poly(den)));
    };
    Poly<typename FunctionField<K>::LT> u3, v3;
    u3.c.assign(dat.weight + 1, L.zero());
    u3.c[dat.weight] = L.one();
    for (int i = 0; i < dat.weight; i++) u3.c[i] = L.from_base(fr(dat.d[i], dat.d[3]));
    v3.c.assign(dat.weight, L.zero());
    for (int i = 0; i < dat.weight; i++)
        v3.c[i] = L.mul(L.gen(), L.from_base(fr(dat.e[i], dat.e[3])));
    poly_trim(L, u3);
    poly_trim(L, v3);
    Mumford<typename FunctionField<K>::LT> im3{u3, v3};

    auto liftQ = poly_map(L, Q.u, [&](const typename K::Elem& c) { return L.from_base(Fx.from_base(c)); });
    auto liftQv = poly_map(L, Q.v, [&](const typename K::Elem& c) { return L.from_base(Fx.from_base(c)); });
    auto T = jac_add(FF.C, Mumford<typename FunctionField<K>::LT>{liftQ, liftQv},
                     jac_neg(FF.C, im3));
    if (T.u.degree() != 3) throw std::domain_error("preimage: right side is not generic");

    auto rhs = [&, T](int i) {
        detail::RhsCoeff<K> r{Fx.zero(), Fx.zero(), Fx.zero(), Fx.zero()};
        auto cu = poly_coeff(L, T.u, i);
        r.ue = poly_coeff(Fx, cu, 0);
        r.uo = poly_coeff(Fx, cu, 1);
        auto cv = poly_coeff(L, T.v, i);
        r.ve = poly_coeff(Fx, cv, 0);
        r.vo = poly_coeff(Fx, cv, 1);
        return r;
    };
    return detail::build_matched_system(F, f, dat, rhs, opt);
}

template <class B>
KernelSolution<B> preimage_divisor(const Mumford<GF<B>>& Q, const GF<B>& F, const Poly<GF<B>>& f,
                                   const EndoFormulas& E, const typename GF<B>::Elem& eta,
                                   const OrderElem& alpha, const KernelOptions& opt, Rng& rng) {
    using K = GF<B>;
    if (alpha.a == 1 && alpha.b == 0 && alpha.c == 0)
        return {1, poly_one(F), F, Q};
    auto sys = preimage_system(Q, F, f, E, eta, alpha, opt);
    auto Sx3 = eliminate(F, sys, rng);
    bool scalar = alpha.b == 0 && alpha.c == 0;
    auto verify = [&](detail::SolveCtx<B>& ctx, const HypCurve<K>& CW,
                      const std::array<typename K::Elem, 3>& xs,
                      const std::array<typename K::Elem, 3>& ys) -> std::optional<Mumford<K>> {
        auto D = detail::assemble_divisor(CW, xs, ys);
        try {
            auto aD = scalar ? jac_scalar(CW, D, alpha.a)
                             : alpha_image(CW, E, ctx.etaW, D, alpha.a, alpha.b, alpha.c, rng);
            auto QW = Mumford<K>{poly_map(CW.k, Q.u, ctx.lift), poly_map(CW.k, Q.v, ctx.lift)};
            if (!poly_eq(CW.k, aD.u, QW.u) || !poly_eq(CW.k, aD.v, QW.v)) return std::nullopt;
            return D;
        } catch (const std::domain_error&) {
            return std::nullopt;
        } catch (const std::runtime_error&) {
            return std::nullopt;
        }
    };
    auto got = detail::kernel_search<B>(Sx3, sys, F, f, eta, rng, verify);
    if (!got) throw Exhausted("no x3 factor yields a preimage");
    return *got;
}

} // namespace rmc

#endif
