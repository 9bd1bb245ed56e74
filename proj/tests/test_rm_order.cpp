#include <doctest.h>

#include "rmc/rm_order.hpp"
#include "rmc/rng.hpp"

using namespace rmc;

TEST_CASE("eta7 order basics") {
    RmOrder R = rm_eta7();
    CHECK(R.disc() == 49);
    CHECK(R.delta == 1);
    // eta^3 + eta^2 - 2 eta - 1 = 0: multiplication matrix of eta has the
    // minimal polynomial as characteristic polynomial
    auto cp = rm_charpoly(R, {0, 1, 0});
    CHECK(cp[0] == -R.mu2);  // trace = -mu2
    CHECK(cp[1] == R.mu1);
    CHECK(cp[2] == -R.mu0);  // norm = -mu0
}

TEST_CASE("norm agrees with explicit formula on small elements") {
    RmOrder R = rm_eta7();
    CHECK(rm_norm(R, {1, 0, 0}) == 1);
    CHECK(rm_norm(R, {0, 1, 0}) == 1);   // N(eta) = -mu0 = 1
    CHECK(rm_norm(R, {0, 0, 1}) == 1);   // N(eta^2) = mu0^2 = 1
    CHECK(rm_norm(R, {2, 0, 0}) == 8);
    CHECK(rm_norm(R, {-2, -1, 1}) == 7);  // ramified prime above 7
}

TEST_CASE("split primes below 200") {
    RmOrder R = rm_eta7();
    auto splits = rm_split_primes_below(R, 200);
    std::vector<long> ells;
    for (auto& s : splits) ells.push_back(s.ell);
    std::vector<long> expect{13, 29, 41, 43, 71, 83, 97, 113, 127, 139, 167, 181, 197};
    CHECK(ells == expect);
    // ell = 13: pinned eigenvalues
    CHECK(splits[0].lambda == std::array<long, 3>{7, 8, 10});
    // 7 ramifies (divides the discriminant): not listed
    for (auto& s : splits) CHECK(s.ell % 7 != 0);
}

TEST_CASE("box radii at ell = 13") {
    CHECK(rm_box_radius(2415, 1000, 13) == 5);
    CHECK(rm_box_radius(1850, 1000, 13) == 4);
    CHECK(rm_box_radius(1764, 1000, 13) == 4);
}

TEST_CASE("small elements for ell = 13") {
    RmOrder R = rm_eta7();
    for (long lam : {7L, 8L, 10L}) {
        auto res = rm_small_element(R, 13, lam);
        // in the box
        CHECK(abs(res.alpha.a) <= 5);
        CHECK(abs(res.alpha.b) <= 4);
        CHECK(abs(res.alpha.c) <= 4);
        // norm condition: ell once or twice, not thrice
        CHECK(mod_floor(res.norm, 13) == 0);
        CHECK(mod_floor(res.norm, Int(13) * 13 * 13) != 0);
        // eigenvalue congruence
        Int cong = res.alpha.a + res.alpha.b * lam + res.alpha.c * lam * lam;
        CHECK(mod_floor(cong, 13) == 0);
    }
    // deterministic first hits (max-norm order, lexicographic tie-break)
    auto a7 = rm_small_element(R, 13, 7);
    CHECK(a7.alpha == OrderElem{-2, -2, -1});
    CHECK(a7.norm == -13);
    auto a8 = rm_small_element(R, 13, 8);
    CHECK(a8.alpha == OrderElem{-1, 0, -1});
    CHECK(a8.norm == -13);
    auto a10 = rm_small_element(R, 13, 10);
    CHECK(a10.alpha == OrderElem{-1, 1, -1});
    CHECK(a10.norm == -13);
}

TEST_CASE("small elements exist with correct norms for every split prime below 200") {
    RmOrder R = rm_eta7();
    for (auto& s : rm_split_primes_below(R, 200)) {
        for (long lam : s.lambda) {
            auto res = rm_small_element(R, s.ell, lam);
            CHECK(mod_floor(res.norm, s.ell) == 0);
            CHECK(mod_floor(res.norm, Int(s.ell) * s.ell * s.ell) != 0);
        }
    }
}

TEST_CASE("sigma from abc against multiplication charpoly") {
    RmOrder R = rm_eta7();
    Int q(10007);
    Rng rng(41);
    for (int i = 0; i < 200; i++) {
        OrderElem e{rng.range(-50, 50), rng.range(-50, 50), rng.range(-50, 50)};
        auto s = rm_sigma_from_abc(R, e, q);
        auto cp = rm_charpoly(R, e);
        CHECK(s[0] == cp[0]);
        CHECK(s[1] - 3 * q == cp[1]);
        CHECK(s[2] - 2 * q * s[0] == cp[2]);
    }
    // and for a second (synthetic) order, to exercise all mu terms
    RmOrder S{3, -4, 2, 1};
    if (S.disc() != 0) {
        for (int i = 0; i < 200; i++) {
            OrderElem e{rng.range(-20, 20), rng.range(-20, 20), rng.range(-20, 20)};
            auto s = rm_sigma_from_abc(S, e, q);
            auto cp = rm_charpoly(S, e);
            CHECK(s[0] == cp[0]);
            CHECK(s[1] - 3 * q == cp[1]);
            CHECK(s[2] - 2 * q * s[0] == cp[2]);
        }
    }
}

TEST_CASE("published sigma triple reproduced exactly") {
    RmOrder R = rm_eta7();
    Int q = (Int(1) << 64) - 59;
    OrderElem psi{parse_int("2551309006"), parse_int("2431319810"), parse_int("-847267802")};
    auto s = rm_sigma_from_abc(R, psi, q);
    CHECK(s[0] == parse_int("986268198"));
    CHECK(s[1] == parse_int("35389772484832465583"));
    CHECK(s[2] == parse_int("10956052862104236818770212244"));

    auto chi = rm_chi_from_sigma(s, q);
    CHECK(chi.size() == 7);
    CHECK(chi[6] == 1);
    CHECK(chi[3] == -s[2]);
    CHECK(rm_weil_bounds_ok(s, q));
    CHECK(rm_real_rooted_ok(s, q));
}

TEST_CASE("modular residue table of the published triple") {
    OrderElem psi{parse_int("2551309006"), parse_int("2431319810"), parse_int("-847267802")};
    auto red = [&](const Int& m) { return rm_reduce_triple(psi, m); };
    CHECK(red(2).t == OrderElem{0, 0, 0});
    CHECK(red(4).t == OrderElem{2, 2, 2});
    CHECK(red(3).t == OrderElem{1, 2, 1});
    CHECK(red(13).t == OrderElem{12, 10, 9});
    // ramified relation at 7: a + 2b + 4c = 2 (mod 7)
    Int rel = psi.a + 2 * psi.b + 4 * psi.c;
    CHECK(mod_floor(rel, 7) == 2);
}

TEST_CASE("crt combine") {
    ModTriple m3{{1, 2, 1}, 3};
    ModTriple m4{{2, 2, 2}, 4};
    auto m12 = rm_crt(m3, m4);
    CHECK(m12.mod == 12);
    CHECK(m12.t == OrderElem{10, 2, 10});
    CHECK_THROWS_AS(rm_crt(m12, m3), std::invalid_argument);
}

TEST_CASE("weil violations rejected") {
    Int q(101);
    std::array<Int, 3> bad{7 * isqrt(q) + 7, Int(0), Int(0)};
    CHECK(!rm_weil_bounds_ok(bad, q));
    CHECK_THROWS_AS(rm_chi_from_sigma(bad, q), WeilViolation);
    // bounds hold but the real Weil cubic has complex roots: s = (0, 15q, 0)
    std::array<Int, 3> complexroots{Int(0), 15 * q, Int(0)};
    CHECK(rm_weil_bounds_ok(complexroots, q));
    CHECK(!rm_real_rooted_ok(complexroots, q));
    CHECK_THROWS_AS(rm_chi_from_sigma(complexroots, q), WeilViolation);
}

TEST_CASE("cabc bound for eta7") {
    Rat c = rm_cabc_upper(rm_eta7());
    // 2 * ||V^{-1}||_inf = 2 * (sum of |Lagrange constant terms|) ~ 2.53652
    CHECK(c > Rat(2536, 1000));
    CHECK(c < Rat(2537, 1000));
    // published coefficients sit inside the C_abc * sqrt(q) window
    Int q = (Int(1) << 64) - 59;
    Rat bound = c * Rat(isqrt_ceil(q));
    CHECK(Rat(parse_int("2551309006")) < bound);
    CHECK(Rat(parse_int("2431319810")) < bound);
    CHECK(Rat(parse_int("847267802")) < bound);
}

TEST_CASE("modulus sufficiency and lifting") {
    RmOrder R = rm_eta7();
    Rat c = rm_cabc_upper(R);
    Int q(1009);
    // need mod > 2*c*sqrt(q)+1 ~ 162
    CHECK(!rm_modulus_sufficient(Int(100), q, c, 1));
    CHECK(rm_modulus_sufficient(Int(1000), q, c, 1));
    OrderElem psi{-31, 17, 5};
    Int M(1001);
    auto lifted = rm_lift_triple(rm_reduce_triple(psi, M), q, c, 1);
    CHECK(lifted == psi);
    CHECK_THROWS_AS(rm_lift_triple(rm_reduce_triple(psi, Int(100)), q, c, 1),
                    InsufficientModulus);
}
