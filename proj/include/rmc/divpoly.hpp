#ifndef RMC_DIVPOLY_HPP
#define RMC_DIVPOLY_HPP

#include <array>
#include <stdexcept>

#include "rmc/jacobian.hpp"
#include "rmc/ratfun.hpp"

namespace rmc {

// Scalar multiples of the generic point, computed by running the group
// law over the function field of the curve and clearing the result to
// polynomial fraction form.

struct DenominatorVanishes : std::domain_error {
    using std::domain_error::domain_error;
};

// The generic point P = (x, y) on y^2 = f(x), modelled over
// L = F(x)[y] / (y^2 - f).
template <class F>
struct FunctionField {
    using FxT = Frac<F>;
    using LT = Quot<Frac<F>>;

    FxT Fx;
    LT L;
    HypCurve<LT> C;
    Mumford<LT> P;
    Poly<F> f;
};

template <class F>
FunctionField<F> function_field(const F& k, const Poly<F>& f) {
    Frac<F> Fx(k);
    Poly<Frac<F>> mod;
    mod.c = {Fx.neg(Fx.from_poly(f)), Fx.zero(), Fx.one()};
    Quot<Frac<F>> L(Fx, mod);
    auto fL = poly_map(L, f, [&](const typename F::Elem& c) { return L.from_base(Fx.from_base(c)); });
    HypCurve<Quot<Frac<F>>> C(L, fL);
    Poly<Quot<Frac<F>>> u;
    u.c = {L.from_base(Fx.neg(Fx.gen())), L.one()};
    Mumford<Quot<Frac<F>>> P{u, poly_const(L, L.gen())};
    return {std::move(Fx), std::move(L), std::move(C), std::move(P), f};
}

// Cleared Mumford coordinates of an image of the generic point:
//   u(X) = X^weight + sum_{i<weight} (d[i]/d[3]) X^i
//   v(X) = y * sum_{i<weight} (e[i]/e[3]) X^i
// with d[3], e[3] monic and gcd over each block of four equal to 1.
template <class F>
struct DivisionData {
    Int n;  // multiplier label; 0 for general endomorphism images
    int weight = 0;
    std::array<Poly<F>, 4> d;
    std::array<Poly<F>, 4> e;
};

// u coefficients must be free of y, v coefficients pure multiples of y;
// violations mean the image was not in the expected symbolic form.
template <class F>
DivisionData<F> collect_division_data(const FunctionField<F>& FF,
                                      const Mumford<typename FunctionField<F>::LT>& D,
                                      const Int& label) {
    const auto& L = FF.L;
    const auto& Fx = FF.Fx;
    const F& k = Fx.k;
    using FracElem = typename Frac<F>::Elem;

    DivisionData<F> out;
    out.n = label;
    out.weight = D.u.degree();

    std::array<FracElem, 3> uc{Fx.zero(), Fx.zero(), Fx.zero()};
    std::array<FracElem, 3> vc{Fx.zero(), Fx.zero(), Fx.zero()};
    for (int i = 0; i < out.weight; i++) {
        auto cu = poly_coeff(L, D.u, i);
        if (!L.in_base(cu)) throw std::domain_error("generic image: u coefficient has an odd part");
        uc[i] = L.base_part(cu);
        auto cv = poly_coeff(L, D.v, i);
        if (!Fx.is_zero(poly_coeff(Fx, cv, 0)))
            throw std::domain_error("generic image: v coefficient has an even part");
        vc[i] = poly_coeff(Fx, cv, 1);
    }

    auto clear = [&](const std::array<FracElem, 3>& cs) {
        std::array<Poly<F>, 4> block{poly_zero(k), poly_zero(k), poly_zero(k), poly_zero(k)};
        Poly<F> den = poly_one(k);
        for (int i = 0; i < out.weight; i++) den = poly_lcm(k, den, cs[i].den);
        for (int i = 0; i < out.weight; i++)
            block[i] = poly_mul(k, cs[i].num, poly_divexact(k, den, cs[i].den));
        block[3] = den;
        Poly<F> g = den;
        for (int i = 0; i < 3; i++)
            if (!block[i].is_zero()) g = poly_gcd(k, g, block[i]);
        if (g.degree() > 0)
            for (auto& b : block)
                if (!b.is_zero()) b = poly_divexact(k, b, g);
        return block;
    };
    out.d = clear(uc);
    out.e = clear(vc);
    return out;
}

// n(P - infinity) for the generic point; weight is generically 3 for n >= 2
// and is recorded as computed.
template <class F>
DivisionData<F> division_polys(const FunctionField<F>& FF, const Int& n) {
    if (n < 1) throw std::invalid_argument("division_polys: n must be >= 1");
    auto Dn = jac_scalar(FF.C, FF.P, n);
    return collect_division_data(FF, Dn, n);
}

// Numeric instantiation at a point of the curve over any field built on
// the same coefficients.
template <class F>
Mumford<F> eval_division_data(const F& k, const DivisionData<F>& dat, const typename F::Elem& x0,
                              const typename F::Elem& y0) {
    auto d3 = poly_eval(k, dat.d[3], x0);
    auto e3 = poly_eval(k, dat.e[3], x0);
    if (k.is_zero(d3) || k.is_zero(e3)) throw DenominatorVanishes("division data denominator vanishes");
    auto d3i = k.inv(d3);
    auto e3i = k.inv(e3);
    Poly<F> u, v;
    u.c.assign(dat.weight + 1, k.zero());
    u.c[dat.weight] = k.one();
    for (int i = 0; i < dat.weight; i++) u.c[i] = k.mul(poly_eval(k, dat.d[i], x0), d3i);
    v.c.assign(dat.weight, k.zero());
    for (int i = 0; i < dat.weight; i++)
        v.c[i] = k.mul(y0, k.mul(poly_eval(k, dat.e[i], x0), e3i));
    poly_trim(k, u);
    poly_trim(k, v);
    return {u, v};
}

struct DegreeProfile {
    Int n;
    int weight = 0;
    std::array<int, 4> dd{-1, -1, -1, -1};
    std::array<int, 4> de{-1, -1, -1, -1};
    int maxdeg = -1;
};

template <class F>
DegreeProfile degree_profile(const DivisionData<F>& dat) {
    DegreeProfile p;
    p.n = dat.n;
    p.weight = dat.weight;
    for (int i = 0; i < 4; i++) {
        p.dd[i] = dat.d[i].degree();
        p.de[i] = dat.e[i].degree();
        p.maxdeg = std::max(p.maxdeg, std::max(p.dd[i], p.de[i]));
    }
    return p;
}

} // namespace rmc

#endif
