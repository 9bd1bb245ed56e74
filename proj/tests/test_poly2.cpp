#include <doctest.h>

#include "rmc/poly2.hpp"
#include "rmc/ratfun.hpp"
#include "util.hpp"

using namespace rmc;

namespace {

using K1 = GF<SmallFp>;
using K2 = Frac<K1>;

K1 F101() { return K1(SmallFp(101)); }

Poly2<K1> rand_p2(const K1& F, Rng& rng, int dx, int dy) {
    Poly2<K1> p;
    for (int i = 0; i <= dx; i++)
        for (int j = 0; j <= dy; j++)
            if (rng.below(10) < 7) p2_add_term(F, p, i, j, F.rand(rng));
    return p;
}

Poly3<K1> rand_p3(const K1& F, Rng& rng, int d) {
    Poly3<K1> p;
    for (int i = 0; i <= d; i++)
        for (int j = 0; j <= d; j++)
            for (int l = 0; l <= d; l++)
                if (rng.below(10) < 6) p3_add_term(F, p, i, j, l, F.rand(rng));
    return p;
}

Poly2<K1> mono2(const K1& F, int i, int j, long c) {
    Poly2<K1> p;
    p2_add_term(F, p, i, j, F.from_i64(c));
    return p;
}

Poly3<K1> mono3(const K1& F, int i, int j, int l, long c) {
    Poly3<K1> p;
    p3_add_term(F, p, i, j, l, F.from_i64(c));
    return p;
}

// x-degree layers of a trivariate polynomial as (y, z) polynomials
std::vector<Poly2<K1>> x_layers(const K1& F, const Poly3<K1>& p) {
    std::vector<Poly2<K1>> rows(std::max(p3_deg(p, 0), 0) + 1);
    for (auto& [e, v] : p.c) p2_add_term(F, rows[e[0]], e[1], e[2], v);
    return rows;
}

// determinant by fraction-free elimination; entries stay polynomial
Poly2<K1> bareiss_det(const K1& F, std::vector<std::vector<Poly2<K1>>> S) {
    int N = (int)S.size();
    auto one = mono2(F, 0, 0, 1);
    auto prev = one;
    bool neg = false;
    for (int col = 0; col + 1 < N; col++) {
        int piv = -1;
        for (int r = col; r < N; r++)
            if (!S[r][col].is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) return {};
        if (piv != col) {
            std::swap(S[piv], S[col]);
            neg = !neg;
        }
        for (int r = col + 1; r < N; r++) {
            for (int c = col + 1; c < N; c++) {
                auto t = p2_sub(F, p2_mul(F, S[col][col], S[r][c]),
                                p2_mul(F, S[r][col], S[col][c]));
                S[r][c] = t.is_zero() ? t : p2_divexact(F, t, prev);
            }
            S[r][col] = Poly2<K1>{};
        }
        prev = S[col][col];
    }
    auto det = S[N - 1][N - 1];
    return neg ? p2_neg(F, det) : det;
}

// Sylvester determinant of two trivariate polynomials in x, over F[y, z]
Poly2<K1> sylvester_triv(const K1& F, const Poly3<K1>& P, const Poly3<K1>& Q) {
    auto A = x_layers(F, P);
    auto B = x_layers(F, Q);
    int m = (int)A.size() - 1, n = (int)B.size() - 1;
    if (m == 0 && n == 0) return mono2(F, 0, 0, 1);
    int N = m + n;
    std::vector<std::vector<Poly2<K1>>> S(N, std::vector<Poly2<K1>>(N));
    for (int i = 0; i < n; i++)
        for (int j = 0; j <= m; j++) S[i][i + j] = A[m - j];
    for (int i = 0; i < m; i++)
        for (int j = 0; j <= n; j++) S[n + i][i + j] = B[n - j];
    return bareiss_det(F, S);
}

} // namespace

TEST_CASE("sparse arithmetic agrees with evaluation") {
    auto F = F101();
    Rng rng(41);
    for (int it = 0; it < 50; it++) {
        auto a = rand_p2(F, rng, 3, 3);
        auto b = rand_p2(F, rng, 3, 3);
        auto x0 = F.rand(rng);
        auto y0 = F.rand(rng);
        auto ea = p2_eval(F, a, x0, y0);
        auto eb = p2_eval(F, b, x0, y0);
        CHECK(F.eq(p2_eval(F, p2_add(F, a, b), x0, y0), F.add(ea, eb)));
        CHECK(F.eq(p2_eval(F, p2_mul(F, a, b), x0, y0), F.mul(ea, eb)));
        CHECK(p2_eq(F, p2_swap(p2_swap(a)), a));
        CHECK(F.eq(p2_eval(F, p2_swap(a), y0, x0), ea));
        CHECK(p2_sub(F, a, a).is_zero());
    }
    for (int it = 0; it < 30; it++) {
        auto a = rand_p3(F, rng, 2);
        auto b = rand_p3(F, rng, 2);
        auto x0 = F.rand(rng);
        auto y0 = F.rand(rng);
        auto z0 = F.rand(rng);
        auto ea = p3_eval(F, a, x0, y0, z0);
        auto eb = p3_eval(F, b, x0, y0, z0);
        CHECK(F.eq(p3_eval(F, p3_add(F, a, b), x0, y0, z0), F.add(ea, eb)));
        CHECK(F.eq(p3_eval(F, p3_mul(F, a, b), x0, y0, z0), F.mul(ea, eb)));
        // specializing the middle variable keeps (x, z) in order
        auto c = p3_eval_var(F, a, 1, y0);
        CHECK(F.eq(p2_eval(F, c, x0, z0), ea));
    }
}

TEST_CASE("nested fraction view round-trips") {
    auto F = F101();
    K2 Fy(F);
    Rng rng(42);
    for (int it = 0; it < 30; it++) {
        auto a = rand_p2(F, rng, 3, 3);
        CHECK(p2_eq(F, p2_unnest(Fy, p2_nest(Fy, a)), a));
    }
}

TEST_CASE("gcd splits content and primitive parts") {
    auto F = F101();
    Rng rng(43);
    auto x = mono2(F, 1, 0, 1);
    auto y = mono2(F, 0, 1, 1);
    auto xmy = p2_sub(F, x, y);
    auto xpy = p2_add(F, x, y);

    // pure y-content
    auto yq = p2_add(F, mono2(F, 0, 2, 1), mono2(F, 0, 0, 3));
    auto g1 = p2_gcd(F, p2_mul(F, yq, xmy), p2_mul(F, yq, xpy));
    CHECK(p2_eq(F, g1, yq));

    // mixed factor (x + 2y)(y + 1), already lex-normalized
    auto G = p2_mul(F, p2_add(F, x, mono2(F, 0, 1, 2)), p2_add(F, y, mono2(F, 0, 0, 1)));
    auto g2 = p2_gcd(F, p2_mul(F, G, p2_add(F, x, mono2(F, 0, 0, 1))),
                     p2_mul(F, G, p2_add(F, x, mono2(F, 0, 0, 5))));
    CHECK(p2_eq(F, g2, G));

    // coprime inputs give a constant
    auto g3 = p2_gcd(F, xmy, xpy);
    CHECK(p2_deg(g3, 0) == 0);
    CHECK(p2_deg(g3, 1) == 0);

    // exact division undoes multiplication
    for (int it = 0; it < 30; it++) {
        auto A = rand_p2(F, rng, 2, 2);
        auto D = rand_p2(F, rng, 2, 2);
        if (A.is_zero() || D.is_zero()) continue;
        CHECK(p2_eq(F, p2_divexact(F, p2_mul(F, A, D), D), A));
    }
}

TEST_CASE("bivariate resultant pins on intersecting curves") {
    auto F = F101();
    Rng rng(44);
    auto a = p2_sub(F, mono2(F, 1, 0, 1), mono2(F, 0, 1, 1));  // x - y
    auto b = p2_sub(F, mono2(F, 1, 0, 1), mono2(F, 0, 2, 1));  // x - y^2
    auto R = resultant_biv(F, a, b, 0, rng);
    REQUIRE(R.degree() == 2);
    CHECK(F.is_zero(R.c[0]));
    CHECK(F.eq(R.c[1], F.one()));
    CHECK(F.eq(R.c[2], F.neg(F.one())));

    // nothing to eliminate: empty product convention
    auto cy = p2_add(F, mono2(F, 0, 1, 1), mono2(F, 0, 0, 1));
    auto dy = p2_add(F, mono2(F, 0, 1, 1), mono2(F, 0, 0, 2));
    auto R0 = resultant_biv(F, cy, dy, 0, rng);
    REQUIRE(R0.degree() == 0);
    CHECK(F.eq(R0.c[0], F.one()));
}

TEST_CASE("bivariate resultant matches the Sylvester determinant") {
    auto F = F101();
    K2 Fy(F);
    Rng rng(45);
    int checked = 0;
    while (checked < 30) {
        auto a = rand_p2(F, rng, 1 + (int)rng.below(4), 1 + (int)rng.below(4));
        auto b = rand_p2(F, rng, 1 + (int)rng.below(4), 1 + (int)rng.below(4));
        if (a.is_zero() || b.is_zero()) continue;
        auto R = resultant_biv(F, a, b, 0, rng);
        auto oracle = rmctest::sylvester_resultant(Fy, p2_nest(Fy, a), p2_nest(Fy, b));
        CHECK(Fy.eq(Fy.from_poly(R), oracle));
        checked++;
    }
    // eliminating y instead of x
    for (int it = 0; it < 10; it++) {
        auto a = rand_p2(F, rng, 2, 2);
        auto b = rand_p2(F, rng, 2, 2);
        if (a.is_zero() || b.is_zero()) continue;
        auto R = resultant_biv(F, a, b, 1, rng);
        auto oracle =
            rmctest::sylvester_resultant(Fy, p2_nest(Fy, p2_swap(a)), p2_nest(Fy, p2_swap(b)));
        CHECK(Fy.eq(Fy.from_poly(R), oracle));
    }
}

TEST_CASE("bivariate degree bound and specializations on random instances") {
    auto F = F101();
    Rng rng(46);
    int tested = 0;
    for (int it = 0; it < 100; it++) {
        auto a = rand_p2(F, rng, 1 + (int)rng.below(3), 1 + (int)rng.below(3));
        auto b = rand_p2(F, rng, 1 + (int)rng.below(3), 1 + (int)rng.below(3));
        if (a.is_zero() || b.is_zero()) continue;
        auto R = resultant_biv(F, a, b, 0, rng);
        int dx = std::max(p2_deg(a, 0), p2_deg(b, 0));
        int dy = std::max(std::max(p2_deg(a, 1), p2_deg(b, 1)), 0);
        CHECK(R.degree() <= 2 * dx * dy);
        // cross-check against a direct univariate resultant at a good point
        for (int tries = 0; tries < 50; tries++) {
            auto y0 = F.rand(rng);
            auto sa = p2_eval_y(F, a, y0);
            auto sb = p2_eval_y(F, b, y0);
            if (sa.degree() < p2_deg(a, 0) || sb.degree() < p2_deg(b, 0)) continue;
            CHECK(F.eq(poly_eval(F, R, y0), poly_resultant(F, sa, sb)));
            tested++;
            break;
        }
    }
    CHECK(tested >= 80);
}

TEST_CASE("common factor forces a zero resultant until stripped") {
    auto F = F101();
    Rng rng(47);
    auto xmy = p2_sub(F, mono2(F, 1, 0, 1), mono2(F, 0, 1, 1));
    auto A = p2_add(F, p2_add(F, mono2(F, 2, 0, 1), mono2(F, 1, 0, 3)), mono2(F, 0, 1, 1));
    auto B = p2_add(F, p2_add(F, mono2(F, 1, 1, 1), mono2(F, 1, 0, 1)), mono2(F, 0, 0, 5));
    auto gAB = p2_gcd(F, A, B);
    REQUIRE(p2_deg(gAB, 0) == 0);
    REQUIRE(p2_deg(gAB, 1) == 0);

    auto P = p2_mul(F, xmy, A);
    auto Q = p2_mul(F, xmy, B);
    CHECK(resultant_biv(F, P, Q, 0, rng).is_zero());

    auto g = p2_strip_gcd(F, P, Q);
    CHECK(p2_eq(F, g, xmy));
    CHECK(p2_eq(F, P, A));
    CHECK(p2_eq(F, Q, B));
    CHECK(!resultant_biv(F, P, Q, 0, rng).is_zero());
}

TEST_CASE("small base fields lift to an extension for sampling") {
    K1 F(SmallFp(13));
    K2 Fy(F);
    Rng rng(48);
    // x-degree 2, y-degree 4: needs 17 sample points, more than the field has
    auto a = p2_add(F, mono2(F, 2, 4, 1), rand_p2(F, rng, 1, 3));
    auto b = p2_add(F, mono2(F, 2, 4, 3), rand_p2(F, rng, 1, 3));
    CHECK_THROWS_AS(detail::resultant_biv_core(F, a, b), NotEnoughPoints);
    auto R = resultant_biv(F, a, b, 0, rng);
    CHECK(R.degree() <= 16);
    auto oracle = rmctest::sylvester_resultant(Fy, p2_nest(Fy, a), p2_nest(Fy, b));
    CHECK(Fy.eq(Fy.from_poly(R), oracle));
}

TEST_CASE("substitution exponent separates the folded digits") {
    auto F = F101();
    CHECK(triv_kron_exponent(1) == 3);
    CHECK(triv_kron_exponent(2) == 9);
    CHECK(triv_kron_exponent(3) == 19);

    // x^2 y z^3 folds to x^2 y^28 under e = 9
    auto m = p3_kron(F, mono3(F, 2, 1, 3, 1), 9);
    REQUIRE(m.c.size() == 1);
    CHECK(m.c.begin()->first == std::array<int, 2>{2, 28});

    Rng rng(49);
    for (int it = 0; it < 20; it++) {
        auto r0 = rand_p2(F, rng, 8, 3);  // read as (y, z)
        Poly<K1> q;
        for (auto& [e, v] : r0.c) {
            if ((int)q.c.size() <= e[0] + 9 * e[1]) q.c.resize(e[0] + 9 * e[1] + 1, F.zero());
            q.c[e[0] + 9 * e[1]] = v;
        }
        poly_trim(F, q);
        CHECK(p2_eq(F, p2_kron_inverse(F, q, 9), r0));
    }
}

TEST_CASE("trivariate resultant pins keep the surviving variables ordered") {
    auto F = F101();
    Rng rng(50);
    auto x = mono3(F, 1, 0, 0, 1);
    auto y = mono3(F, 0, 1, 0, 1);
    auto z = mono3(F, 0, 0, 1, 1);

    auto R1 = resultant_triv(F, p3_sub(F, x, y), p3_sub(F, x, z), 0, rng);
    CHECK(p2_eq(F, R1, p2_sub(F, mono2(F, 1, 0, 1), mono2(F, 0, 1, 1))));  // y - z

    auto R2 = resultant_triv(F, p3_sub(F, mono3(F, 2, 0, 0, 1), p3_mul(F, y, z)),
                             p3_sub(F, x, p3_add(F, y, z)), 0, rng);
    auto expect2 = p2_add(F, p2_add(F, mono2(F, 2, 0, 1), mono2(F, 1, 1, 1)), mono2(F, 0, 2, 1));
    CHECK(p2_eq(F, R2, expect2));  // y^2 + yz + z^2

    auto R3 = resultant_triv(F, p3_sub(F, x, z), p3_sub(F, y, z), 2, rng);
    CHECK(p2_eq(F, R3, p2_sub(F, mono2(F, 1, 0, 1), mono2(F, 0, 1, 1))));  // x - y

    auto R4 = resultant_triv(F, p3_sub(F, y, x), p3_sub(F, y, z), 1, rng);
    CHECK(p2_eq(F, R4, p2_sub(F, mono2(F, 1, 0, 1), mono2(F, 0, 1, 1))));  // x - z
}

TEST_CASE("trivariate resultant matches the Sylvester determinant") {
    auto F = F101();
    Rng rng(51);
    int checked = 0;
    while (checked < 10) {
        int d = 2 + (int)rng.below(3);  // up to 4 per variable
        auto a = rand_p3(F, rng, d);
        auto b = rand_p3(F, rng, d);
        if (p3_deg(a, 0) < 1 || p3_deg(b, 0) < 1) continue;
        auto R = resultant_triv(F, a, b, 0, rng);
        CHECK(p2_eq(F, R, sylvester_triv(F, a, b)));
        checked++;
    }
}

TEST_CASE("trivariate degree bound and specializations on random instances") {
    auto F = F101();
    Rng rng(52);
    int tested = 0;
    for (int it = 0; it < 100; it++) {
        auto a = rand_p3(F, rng, 1 + (int)rng.below(2));
        auto b = rand_p3(F, rng, 1 + (int)rng.below(2));
        if (a.is_zero() || b.is_zero()) continue;
        auto R = resultant_triv(F, a, b, 0, rng);
        int d = 0;
        for (int v = 0; v < 3; v++)
            d = std::max({d, p3_deg(a, v), p3_deg(b, v)});
        CHECK(p2_deg(R, 0) <= 2 * d * d);
        CHECK(p2_deg(R, 1) <= 2 * d * d);
        for (int tries = 0; tries < 50; tries++) {
            auto y0 = F.rand(rng);
            auto z0 = F.rand(rng);
            auto sa = p2_eval_y(F, p3_eval_var(F, a, 2, z0), y0);
            auto sb = p2_eval_y(F, p3_eval_var(F, b, 2, z0), y0);
            if (sa.degree() < p3_deg(a, 0) || sb.degree() < p3_deg(b, 0)) continue;
            CHECK(F.eq(p2_eval(F, R, y0, z0), poly_resultant(F, sa, sb)));
            tested++;
            break;
        }
    }
    CHECK(tested >= 80);
}

TEST_CASE("univariate resultant rejects two zero inputs") {
    auto F = F101();
    CHECK_THROWS_AS(poly_resultant(F, poly_zero(F), poly_zero(F)), std::invalid_argument);
    CHECK(F.is_zero(poly_resultant(F, poly_zero(F), poly_x(F))));
    CHECK(F.is_zero(poly_resultant(F, poly_x(F), poly_zero(F))));
}
