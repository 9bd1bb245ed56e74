#include <doctest.h>

#include "rmc/gf.hpp"
#include "rmc/poly.hpp"
#include "rmc/polyfactor.hpp"
#include "util.hpp"

using namespace rmc;

namespace {
GF<SmallFp> F101() { return GF<SmallFp>(SmallFp(101)); }
}

TEST_CASE("poly arithmetic identities") {
    auto F = F101();
    Rng rng(11);
    for (int i = 0; i < 200; i++) {
        auto a = poly_random(F, (int)rng.below(8), rng);
        auto b = poly_random(F, (int)rng.below(8), rng);
        auto c = poly_random(F, (int)rng.below(8), rng);
        CHECK(poly_eq(F, poly_mul(F, a, poly_add(F, b, c)),
                      poly_add(F, poly_mul(F, a, b), poly_mul(F, a, c))));
        CHECK(poly_eq(F, poly_mul(F, a, b), poly_mul(F, b, a)));
        if (!b.is_zero()) {
            auto [q, r] = poly_divrem(F, a, b);
            CHECK(poly_eq(F, a, poly_add(F, poly_mul(F, q, b), r)));
            CHECK(r.degree() < b.degree());
        }
    }
}

TEST_CASE("gcd and xgcd") {
    auto F = F101();
    Rng rng(12);
    for (int i = 0; i < 100; i++) {
        auto g = poly_random_monic(F, 1 + (int)rng.below(3), rng);
        auto a = poly_mul(F, g, poly_random(F, (int)rng.below(5), rng));
        auto b = poly_mul(F, g, poly_random(F, (int)rng.below(5), rng));
        if (a.is_zero() || b.is_zero()) continue;
        auto d = poly_gcd(F, a, b);
        CHECK(poly_rem(F, a, d).is_zero());
        CHECK(poly_rem(F, b, d).is_zero());
        CHECK(poly_rem(F, d, g).is_zero());  // g divides gcd
        auto [dd, s, t] = poly_xgcd(F, a, b);
        CHECK(poly_eq(F, dd, d));
        auto comb = poly_add(F, poly_mul(F, s, a), poly_mul(F, t, b));
        CHECK(poly_eq(F, comb, d));
    }
}

TEST_CASE("interpolation round trip") {
    auto F = F101();
    Rng rng(13);
    for (int tr = 0; tr < 30; tr++) {
        int n = 1 + (int)rng.below(10);
        auto p = poly_random(F, n - 1, rng);
        std::vector<GF<SmallFp>::Elem> xs, ys;
        uint64_t x0 = 0;
        for (int i = 0; i < n; i++) {
            xs.push_back(F.scalar(x0));
            ys.push_back(poly_eval(F, p, xs.back()));
            x0 += 1 + rng.below(3);
        }
        auto q = poly_interpolate(F, xs, ys);
        CHECK(poly_eq(F, p, q));
    }
}

TEST_CASE("resultant equals Sylvester determinant for degrees <= 4") {
    auto F = F101();
    Rng rng(14);
    for (int i = 0; i < 200; i++) {
        int da = (int)rng.below(5), db = (int)rng.below(5);
        auto a = poly_random(F, da, rng);
        auto b = poly_random(F, db, rng);
        auto r1 = poly_resultant(F, a, b);
        auto r2 = rmctest::sylvester_resultant(F, a, b);
        CHECK(F.eq(r1, r2));
    }
}

TEST_CASE("resultant multiplicativity and root product") {
    auto F = F101();
    Rng rng(15);
    for (int i = 0; i < 50; i++) {
        auto a = poly_random(F, 3, rng);
        auto b = poly_random(F, 2, rng);
        auto c = poly_random(F, 2, rng);
        auto lhs = poly_resultant(F, a, poly_mul(F, b, c));
        auto rhs = F.mul(poly_resultant(F, a, b), poly_resultant(F, a, c));
        CHECK(F.eq(lhs, rhs));
    }
    // res(f, g) = lc(f)^deg g * prod g(alpha) over roots alpha of f
    auto f = poly_from_i64(F, {-6, 11, -6, 1});  // (x-1)(x-2)(x-3)
    auto g = poly_from_i64(F, {5, 0, 1});
    auto expect = F.mul(poly_eval(F, g, F.scalar(1)),
                        F.mul(poly_eval(F, g, F.scalar(2)), poly_eval(F, g, F.scalar(3))));
    CHECK(F.eq(poly_resultant(F, f, g), expect));
    // shared root => zero
    auto h = poly_from_i64(F, {-1, 1});
    CHECK(F.is_zero(poly_resultant(F, f, poly_mul(F, h, g))));
}

TEST_CASE("cubic splits into pinned roots mod 13") {
    GF<SmallFp> F((SmallFp(13)));
    auto m = poly_from_i64(F, {-1, -2, 1, 1});  // T^3 + T^2 - 2T - 1
    Rng rng(16);
    auto roots = poly_roots(F, m, rng);
    REQUIRE(roots.size() == 3);
    CHECK(F.base().to_int(roots[0][0]) == 7);
    CHECK(F.base().to_int(roots[1][0]) == 8);
    CHECK(F.base().to_int(roots[2][0]) == 10);
    auto facs = poly_factor(F, m, rng);
    REQUIRE(facs.size() == 3);
    for (auto& [f, mult] : facs) {
        CHECK(f.degree() == 1);
        CHECK(mult == 1);
    }
}

TEST_CASE("factor reassembles input") {
    auto F = F101();
    Rng rng(17);
    for (int i = 0; i < 25; i++) {
        auto p = poly_random_monic(F, 2 + (int)rng.below(8), rng);
        auto facs = poly_factor(F, p, rng);
        auto prod = poly_one(F);
        for (auto& [f, mult] : facs) {
            CHECK(poly_is_irreducible(F, f));
            for (int t = 0; t < mult; t++) prod = poly_mul(F, prod, f);
        }
        CHECK(poly_eq(F, prod, p));
    }
}

TEST_CASE("squarefree part including p-th powers") {
    GF<SmallFp> F((SmallFp(5)));
    auto x1 = poly_from_i64(F, {1, 1});
    // (x+1)^5 = x^5 + 1 mod 5
    auto p5 = poly_from_i64(F, {1, 0, 0, 0, 0, 1});
    CHECK(poly_eq(F, poly_squarefree_part(F, p5), x1));
    CHECK(!poly_is_squarefree(F, p5));
    auto x2 = poly_from_i64(F, {2, 1});
    auto mixed = poly_mul(F, p5, x2);
    auto sf = poly_squarefree_part(F, mixed);
    CHECK(poly_eq(F, sf, poly_mul(F, x1, x2)));
    CHECK(poly_is_squarefree(F, poly_from_i64(F, {1, 1, 0, 0, 0, 1})));
}

TEST_CASE("irreducibility test") {
    auto F = F101();
    Rng rng(18);
    CHECK(poly_is_irreducible(F, poly_from_i64(F, {5, 1})));
    CHECK(!poly_is_irreducible(F, poly_from_i64(F, {-6, 11, -6, 1})));
    for (int d = 2; d <= 6; d++) {
        auto p = poly_random_irreducible(F, d, rng);
        CHECK(p.degree() == d);
        CHECK(poly_roots(F, p, rng).empty());
    }
}

TEST_CASE("poly over big backend matches small backend") {
    GF<SmallFp> Fs((SmallFp(10007)));
    GF<BigFp> Fb((BigFp(Int(10007))));
    Rng r1(19), r2(19);
    for (int i = 0; i < 20; i++) {
        auto as = poly_random(Fs, 6, r1);
        auto bs = poly_random(Fs, 4, r1);
        Poly<GF<BigFp>> ab, bb;
        for (auto& e : as.c) ab.c.push_back(Fb.from_int(Int(e[0])));
        for (auto& e : bs.c) bb.c.push_back(Fb.from_int(Int(e[0])));
        auto rs = poly_resultant(Fs, as, bs);
        auto rb = poly_resultant(Fb, ab, bb);
        CHECK(Fb.base().to_int(rb[0]) == Int(rs[0]));
        auto gs = poly_gcd(Fs, as, bs);
        auto gb = poly_gcd(Fb, ab, bb);
        REQUIRE(gs.degree() == gb.degree());
        for (int j = 0; j <= gs.degree(); j++)
            CHECK(Fb.base().to_int(gb.c[j][0]) == Int(gs.c[j][0]));
    }
}
