#include <doctest.h>

#include "rmc/gf.hpp"
#include "rmc/ratfun.hpp"
#include "util.hpp"

using namespace rmc;

namespace {

GF<SmallFp> F101() { return GF<SmallFp>(SmallFp(101)); }

} // namespace

TEST_CASE("fraction field axioms") {
    Frac<GF<SmallFp>> F(F101());
    Rng rng(41);
    auto x = F.gen();
    for (int i = 0; i < 60; i++) {
        auto a = F.rand(rng);
        auto b = F.rand(rng);
        auto c = F.rand(rng);
        CHECK(F.eq(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c))));
        CHECK(F.eq(F.add(a, b), F.add(b, a)));
        CHECK(F.is_zero(F.sub(a, a)));
        if (!F.is_zero(a)) CHECK(F.eq(F.mul(a, F.inv(a)), F.one()));
        CHECK(F.eq(F.sub(F.add(a, x), x), a));
    }
}

TEST_CASE("fraction normalization") {
    auto K = F101();
    Frac<GF<SmallFp>> F(K);
    // (x^2 - 1)/(x - 1) = x + 1
    auto n = poly_from_i64(K, {-1, 0, 1});
    auto d = poly_from_i64(K, {-1, 1});
    auto e = F.make(n, d);
    CHECK(F.is_poly(e));
    CHECK(poly_eq(K, e.num, poly_from_i64(K, {1, 1})));
    // denominator comes out monic
    auto e2 = F.make(poly_from_i64(K, {1}), poly_from_i64(K, {1, 2}));
    CHECK(K.eq(poly_lc(K, e2.den), K.one()));
    using FE = Frac<GF<SmallFp>>::Elem;
    CHECK_THROWS_AS(F.inv(F.zero()), NonInvertible<FE>);
}

TEST_CASE("quotient algebra over a fraction field is the function field of the curve") {
    auto K = GF<SmallFp>(SmallFp(1009));
    Frac<GF<SmallFp>> F(K);
    auto f = rmctest::ttv_f(K, 3);
    // L = F_1009(x)[y]/(y^2 - f(x))
    Poly<Frac<GF<SmallFp>>> mod;
    mod.c = {F.neg(F.from_poly(f)), F.zero(), F.one()};
    Quot<Frac<GF<SmallFp>>> L(F, mod);
    auto y = L.gen();
    CHECK(L.eq(L.mul(y, y), L.from_base(F.from_poly(f))));
    Rng rng(42);
    for (int i = 0; i < 20; i++) {
        auto a = L.rand(rng);
        if (L.is_zero(a)) continue;
        CHECK(L.eq(L.mul(a, L.inv(a)), L.one()));
    }
}

TEST_CASE("zero divisor in a reducible quotient reports a witness factor") {
    auto K = F101();
    Quot<GF<SmallFp>> Q(K, poly_from_i64(K, {2, -3, 1}));  // (w-1)(w-2)
    auto a = poly_from_i64(K, {-1, 1});                    // w - 1
    bool caught = false;
    try {
        Q.inv(a);
    } catch (const NonInvertible<Poly<GF<SmallFp>>>& e) {
        caught = true;
        // witness is a nontrivial factor of the modulus
        CHECK(e.witness.degree() >= 1);
        CHECK(e.witness.degree() < 2);
        auto [q, r] = poly_divrem(K, Q.m, e.witness);
        CHECK(r.is_zero());
    }
    CHECK(caught);
}

TEST_CASE("two-point tower multiplies Weierstrass data consistently") {
    auto K = GF<SmallFp>(SmallFp(67));
    auto f = rmctest::ttv_f(K, 3);
    using F1T = Frac<GF<SmallFp>>;
    F1T F1(K);
    using F2T = Frac<F1T>;
    F2T F2(F1);

    auto f_x1 = F2.from_base(F1.from_poly(f));
    auto f_lift = poly_map(F1, f, [&](const GF<SmallFp>::Elem& c) { return F1.from_base(c); });
    auto f_x2 = F2.from_poly(f_lift);

    Poly<F2T> m1;
    m1.c = {F2.neg(f_x1), F2.zero(), F2.one()};
    Quot<F2T> A1(F2, m1);

    using A1T = Quot<F2T>;
    Poly<A1T> m2;
    m2.c = {A1.neg(A1.from_base(f_x2)), A1.zero(), A1.one()};
    Quot<A1T> A2(A1, m2);

    auto y2 = A2.gen();
    auto y1 = A2.from_base(A1.gen());
    auto w = A2.mul(y1, y2);
    auto want = A2.from_base(A1.from_base(F2.mul(f_x1, f_x2)));
    CHECK(A2.eq(A2.mul(w, w), want));
    // (y1 + y2)(y1 - y2) = f(x1) - f(x2)
    auto lhs = A2.mul(A2.add(y1, y2), A2.sub(y1, y2));
    auto rhs = A2.from_base(A1.from_base(F2.sub(f_x1, f_x2)));
    CHECK(A2.eq(lhs, rhs));
}
