#ifndef RMC_ENDO_HPP
#define RMC_ENDO_HPP

#include <array>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "rmc/bigint.hpp"
#include "rmc/divpoly.hpp"
#include "rmc/jacobian.hpp"
#include "rmc/polyfactor.hpp"

namespace rmc {

// An explicit endomorphism given by the Mumford image of a generic point:
//   (x, y) -> < X^w + sum_{i<w} (U_i(x,y)/U_3(x,y)) X^i,
//               sum_{i<w} (V_i(x,y)/V_3(x,y)) X^i >
// with block entries lists of terms (n/d) x^ex y^ey eta^eh, where eta is a
// fixed root of the order's minimal polynomial in the coefficient field.
// Extension to arbitrary divisors is by additivity over the support.

struct EndoTerm {
    long num = 0;
    long den = 1;
    int ex = 0;
    int ey = 0;
    int eh = 0;
};

struct EndoFormulas {
    int weight = 0;
    std::array<std::vector<EndoTerm>, 4> U{};  // index 3 holds the denominator
    std::array<std::vector<EndoTerm>, 4> V{};
    std::array<long, 3> minpoly{0, 0, 0};  // eta^3 + m2 eta^2 + m1 eta + m0 = 0

    bool needs_eta() const {
        for (auto* blk : {&U, &V})
            for (auto& terms : *blk)
                for (auto& t : terms)
                    if (t.eh != 0) return true;
        return false;
    }
};

// Image of the generic point (x, y) of y^2 = x^7 - 7x^5 + 14x^3 - 7x + t:
// the two points above x share its y and have x-coordinates summing to
// eta*x with product x^2 + eta^2 - 4, so
//     u = X^2 - eta x X + x^2 + eta^2 - 4,   v = y.
// Both u-roots X satisfy f(X) = f(x), which makes v = y legal.
inline EndoFormulas eta_ttv7() {
    EndoFormulas E;
    E.weight = 2;
    E.minpoly = {-1, -2, 1};
    E.U[0] = {{1, 1, 2, 0, 0}, {1, 1, 0, 0, 2}, {-4, 1, 0, 0, 0}};
    E.U[1] = {{-1, 1, 1, 0, 1}};
    E.U[3] = {{1, 1, 0, 0, 0}};
    E.V[0] = {{1, 1, 0, 1, 0}};
    E.V[3] = {{1, 1, 0, 0, 0}};
    return E;
}

inline bool endo_denominators_ok(const EndoFormulas& E, const Int& p) {
    for (auto* blk : {&E.U, &E.V})
        for (auto& terms : *blk)
            for (auto& t : terms)
                if (t.den == 0 || Int(t.den) % p == 0) return false;
    return true;
}

// Deterministic choice of eta in F: first root of the minimal polynomial in
// enumeration order. Fields where the polynomial has no root do not carry
// the endomorphism.
template <class B>
typename GF<B>::Elem endo_eta_value(const GF<B>& F, const EndoFormulas& E, Rng& rng) {
    if (!E.needs_eta()) return F.zero();
    auto m = poly_from_i64(F, {E.minpoly[0], E.minpoly[1], E.minpoly[2], 1});
    auto roots = poly_roots(F, m, rng);
    if (roots.empty())
        throw std::domain_error("endomorphism: minimal polynomial has no root in this field "
                                "(the prime must split in the real order)");
    return roots[0];
}

template <class R>
typename R::Elem eval_endo_terms(const R& r, const std::vector<EndoTerm>& terms,
                                 const typename R::Elem& eta, const typename R::Elem& x,
                                 const typename R::Elem& y) {
    auto acc = r.zero();
    for (auto& t : terms) {
        auto c = r.mul(r.from_i64(t.num), r.inv(r.from_i64(t.den)));
        for (int i = 0; i < t.ex; i++) c = r.mul(c, x);
        for (int i = 0; i < t.ey; i++) c = r.mul(c, y);
        for (int i = 0; i < t.eh; i++) c = r.mul(c, eta);
        acc = r.add(acc, c);
    }
    return acc;
}

// Image of the point (x, y); throws DenominatorVanishes where the formulas
// degenerate. Validity on the Jacobian is the caller's check.
template <class R>
Mumford<R> eval_endo(const R& r, const EndoFormulas& E, const typename R::Elem& eta,
                     const typename R::Elem& x, const typename R::Elem& y) {
    auto du = eval_endo_terms(r, E.U[3], eta, x, y);
    auto dv = eval_endo_terms(r, E.V[3], eta, x, y);
    if (r.is_zero(du) || r.is_zero(dv)) throw DenominatorVanishes("endomorphism denominator vanishes");
    auto dui = r.inv(du), dvi = r.inv(dv);
    Poly<R> u, v;
    u.c.assign(E.weight + 1, r.zero());
    u.c[E.weight] = r.one();
    v.c.assign(E.weight, r.zero());
    for (int i = 0; i < E.weight; i++) {
        u.c[i] = r.mul(eval_endo_terms(r, E.U[i], eta, x, y), dui);
        v.c[i] = r.mul(eval_endo_terms(r, E.V[i], eta, x, y), dvi);
    }
    poly_trim(r, u);
    poly_trim(r, v);
    return {u, v};
}

// q-power map on coordinates; an endomorphism of the Jacobian since the
// curve is defined over F_q.
template <class B>
Mumford<GF<B>> jac_frobenius(const HypCurve<GF<B>>& C, const Mumford<GF<B>>& D, const Int& q) {
    auto pw = [&](const typename GF<B>::Elem& c) { return C.k.pow(c, q); };
    return {poly_map(C.k, D.u, pw), poly_map(C.k, D.v, pw)};
}

namespace detail {

// Direct evaluation over the splitting field of u: factor, lift each point,
// map it, and pull the Galois-stable sum back down.
template <class B>
Mumford<GF<B>> endo_divisor_direct(const HypCurve<GF<B>>& C, const EndoFormulas& E,
                                   const typename GF<B>::Elem& eta, const Mumford<GF<B>>& D,
                                   Rng& rng) {
    using F = GF<B>;
    const F& k = C.k;
    auto fac = poly_factor(k, D.u, rng);
    long delta = 1;
    for (auto& [g, m] : fac) delta = std::lcm(delta, (long)g.degree());

    if (delta == 1) {
        auto acc = jac_zero(C);
        for (auto& [g, m] : fac) {
            auto xr = k.neg(poly_coeff(k, g, 0));
            auto yr = poly_eval(k, D.v, xr);
            auto im = eval_endo(k, E, eta, xr, yr);
            if (!jac_is_valid(C, im)) throw DenominatorVanishes("image leaves the Jacobian");
            acc = jac_add(C, acc, jac_scalar(C, im, m));
        }
        return acc;
    }

    auto Ek = make_extension(k, (int)delta, rng);
    auto emb = find_embedding(k, Ek, rng);
    auto lift = [&](const typename F::Elem& c) { return emb.apply(c); };
    HypCurve<F> CE(Ek, poly_map(Ek, C.f, lift));
    auto etaE = emb.apply(eta);
    auto vE = poly_map(Ek, D.v, lift);
    auto acc = jac_zero(CE);
    for (auto& [g, m] : fac) {
        auto gE = poly_map(Ek, g, lift);
        auto roots = poly_roots(Ek, gE, rng);
        if ((int)roots.size() != g.degree())
            throw std::logic_error("endomorphism image: factor does not split in the compositum");
        for (auto& xr : roots) {
            auto yr = poly_eval(Ek, vE, xr);
            auto im = eval_endo(Ek, E, etaE, xr, yr);
            if (!jac_is_valid(CE, im)) throw DenominatorVanishes("image leaves the Jacobian");
            acc = jac_add(CE, acc, jac_scalar(CE, im, m));
        }
    }

    auto down = [&](const Poly<F>& p) {
        Poly<F> q;
        for (auto& c : p.c) {
            auto s = embed_pullback(emb, c);
            if (!s) throw std::logic_error("endomorphism image: sum is not Galois stable");
            q.c.push_back(*s);
        }
        poly_trim(k, q);
        return q;
    };
    return {down(acc.u), down(acc.v)};
}

template <class B>
Mumford<GF<B>> random_point_divisor(const HypCurve<GF<B>>& C, Rng& rng) {
    const auto& k = C.k;
    for (int i = 0; i < 4096; i++) {
        auto x = k.rand(rng);
        auto y = k.sqrt(poly_eval(k, C.f, x));
        if (!y || k.is_zero(*y)) continue;
        return jac_point(C, x, *y);
    }
    throw std::runtime_error("no affine point found on the curve");
}

} // namespace detail

// Additive extension of the endomorphism to any divisor. Points where the
// formulas degenerate are handled by the translation eta(D) = eta(D+R) - eta(R).
template <class B>
Mumford<GF<B>> eval_endo_divisor(const HypCurve<GF<B>>& C, const EndoFormulas& E,
                                 const typename GF<B>::Elem& eta, const Mumford<GF<B>>& D,
                                 Rng& rng) {
    if (jac_is_zero(C, D)) return jac_zero(C);
    try {
        return detail::endo_divisor_direct(C, E, eta, D, rng);
    } catch (const DenominatorVanishes&) {
    }
    for (int tries = 0; tries < 24; tries++) {
        auto R = detail::random_point_divisor(C, rng);
        try {
            auto a = detail::endo_divisor_direct(C, E, eta, jac_add(C, D, R), rng);
            auto b = detail::endo_divisor_direct(C, E, eta, R, rng);
            return jac_sub(C, a, b);
        } catch (const DenominatorVanishes&) {
        }
    }
    throw std::runtime_error("endomorphism image: translation retries exhausted");
}

template <class B>
Mumford<GF<B>> endo_power_image(const HypCurve<GF<B>>& C, const EndoFormulas& E,
                                const typename GF<B>::Elem& eta, Mumford<GF<B>> D, int times,
                                Rng& rng) {
    for (int i = 0; i < times; i++) D = eval_endo_divisor(C, E, eta, D, rng);
    return D;
}

// (a + b eta + c eta^2)(D)
template <class B>
Mumford<GF<B>> alpha_image(const HypCurve<GF<B>>& C, const EndoFormulas& E,
                           const typename GF<B>::Elem& eta, const Mumford<GF<B>>& D, const Int& a,
                           const Int& b, const Int& c, Rng& rng) {
    auto h1 = eval_endo_divisor(C, E, eta, D, rng);
    auto h2 = eval_endo_divisor(C, E, eta, h1, rng);
    auto acc = jac_scalar(C, D, a);
    acc = jac_add(C, acc, jac_scalar(C, h1, b));
    acc = jac_add(C, acc, jac_scalar(C, h2, c));
    return acc;
}

// Generic image eta(P - inf) over the function field of the curve; eta given
// in the coefficient field.
template <class F>
Mumford<typename FunctionField<F>::LT> symbolic_endo_divisor(const FunctionField<F>& FF,
                                                             const EndoFormulas& E,
                                                             const typename F::Elem& eta) {
    const auto& L = FF.L;
    auto x = L.from_base(FF.Fx.gen());
    auto etaL = L.from_base(FF.Fx.from_base(eta));
    auto im = eval_endo(L, E, etaL, x, L.gen());
    if (!jac_is_valid(FF.C, im)) throw std::logic_error("generic image leaves the Jacobian");
    return im;
}

// eta(eta(P - inf)), computed in the splitting algebra of the first image:
// A = L[z]/(u_eta), with the two lifted points (z, v(z)) and its conjugate
// under z -> -u1 - z. The sum descends to L coefficientwise.
template <class F>
Mumford<typename FunctionField<F>::LT> symbolic_endo_square(const FunctionField<F>& FF,
                                                            const EndoFormulas& E,
                                                            const typename F::Elem& eta) {
    using LT = typename FunctionField<F>::LT;
    const LT& L = FF.L;
    auto im = symbolic_endo_divisor(FF, E, eta);
    if (im.u.degree() != 2) throw std::logic_error("splitting algebra expects a weight 2 image");

    Quot<LT> A(L, im.u);
    auto z1 = A.gen();
    auto z2 = A.sub(A.from_base(L.neg(poly_coeff(L, im.u, 1))), z1);
    auto fA = poly_map(A, FF.C.f, [&](const typename LT::Elem& c) { return A.from_base(c); });
    HypCurve<Quot<LT>> CA(A, fA);
    auto etaA = A.from_base(L.from_base(FF.Fx.from_base(eta)));
    auto vat = [&](const typename Quot<LT>::Elem& z) {
        auto acc = A.zero();
        for (int i = im.v.degree(); i >= 0; i--)
            acc = A.add(A.mul(acc, z), A.from_base(poly_coeff(L, im.v, i)));
        return acc;
    };
    auto s1 = eval_endo(A, E, etaA, z1, vat(z1));
    auto s2 = eval_endo(A, E, etaA, z2, vat(z2));
    auto sum = jac_add(CA, s1, s2);
    auto down = [&](const Poly<Quot<LT>>& p) {
        Poly<LT> q;
        for (auto& c : p.c) {
            if (!A.in_base(c)) throw std::logic_error("conjugate sum fails to descend");
            q.c.push_back(A.base_part(c));
        }
        poly_trim(L, q);
        return q;
    };
    return {down(sum.u), down(sum.v)};
}

// (a + b eta + c eta^2)(P - inf) over the function field.
template <class F>
Mumford<typename FunctionField<F>::LT> symbolic_alpha_image(const FunctionField<F>& FF,
                                                            const EndoFormulas& E,
                                                            const typename F::Elem& eta,
                                                            const Int& a, const Int& b,
                                                            const Int& c) {
    auto h1 = symbolic_endo_divisor(FF, E, eta);
    auto h2 = symbolic_endo_square(FF, E, eta);
    auto acc = jac_scalar(FF.C, FF.P, a);
    acc = jac_add(FF.C, acc, jac_scalar(FF.C, h1, b));
    acc = jac_add(FF.C, acc, jac_scalar(FF.C, h2, c));
    return acc;
}

} // namespace rmc

#endif
