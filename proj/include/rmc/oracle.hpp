#ifndef RMC_ORACLE_HPP
#define RMC_ORACLE_HPP

#include <array>
#include <stdexcept>
#include <vector>

#include "rmc/jacobian.hpp"
#include "rmc/polyfactor.hpp"

namespace rmc {

// Brute-force ground truth, independent of the counting pipeline: point
// enumeration over small fields, Newton-identity reconstruction of the
// Frobenius symmetric functions, and naive torsion search.

inline constexpr uint64_t kOracleCap = 1ull << 30;  // max field size enumerated

// #C(F) for y^2 = f(x) with one point at infinity: 1 + sum_x (1 + chi(f(x))).
// strategy 0: squaredness from a precomputed table of squares;
// strategy 1: Euler criterion per evaluation. Both enumerate all of F.
template <class B>
Int oracle_count_points(const GF<B>& F, const Poly<GF<B>>& f, int strategy = 0) {
    if (F.order() > Int(kOracleCap)) throw std::domain_error("oracle_count_points: field too large");
    uint64_t q = to_u64(F.order());
    Int total = 1 + Int(q);

    if (strategy == 0) {
        std::vector<bool> is_sq(q, false);
        typename GF<B>::Elem z = F.zero();
        do {
            is_sq[to_u64(F.index_of(F.mul(z, z)))] = true;
        } while (F.next_elem(z));
        typename GF<B>::Elem x = F.zero();
        do {
            auto fx = poly_eval(F, f, x);
            if (F.is_zero(fx)) continue;
            total += is_sq[to_u64(F.index_of(fx))] ? 1 : -1;
        } while (F.next_elem(x));
    } else {
        typename GF<B>::Elem x = F.zero();
        do {
            total += F.chi(poly_eval(F, f, x));
        } while (F.next_elem(x));
    }
    return total;
}

// Power sums of the Frobenius eigenvalues from curve counts over F_{p^k}:
// t_k = p^k + 1 - N_k; then Newton's identities give the elementary
// symmetric functions. Divisions are exact or the counts are inconsistent.
inline std::array<Int, 3> oracle_sigma_from_counts(const Int& q, const Int& N1, const Int& N2,
                                                   const Int& N3) {
    Int t1 = q + 1 - N1;
    Int t2 = q * q + 1 - N2;
    Int t3 = q * q * q + 1 - N3;
    Int s1 = t1;
    Int num2 = t1 * t1 - t2;
    if (mod_floor(num2, 2) != 0) throw std::logic_error("sigma_from_counts: t1^2 - t2 odd");
    Int s2 = num2 / 2;
    Int num3 = t1 * t1 * t1 - 3 * t1 * t2 + 2 * t3;
    if (mod_floor(num3, 6) != 0) throw std::logic_error("sigma_from_counts: bad t3 parity");
    Int s3 = num3 / 6;
    return {s1, s2, s3};
}

// counts N_k = #C(F_{p^k}) for k = 1..kmax; f must have base-field coefficients
template <class B>
std::vector<Int> oracle_counts_tower(const GF<B>& F, const Poly<GF<B>>& f, int kmax, Rng& rng,
                                     int strategy = 0) {
    if (F.deg() != 1) throw std::invalid_argument("oracle_counts_tower: base field expected");
    std::vector<Int> out;
    for (int k = 1; k <= kmax; k++) {
        GF<B> E = (k == 1) ? F : make_extension(F, k, rng);
        Poly<GF<B>> fe;
        for (auto& c : f.c) fe.c.push_back(E.scalar(c[0]));
        out.push_back(oracle_count_points(E, fe, strategy));
    }
    return out;
}

// #J(F_q) = chi(1) given the characteristic polynomial of Frobenius
// (coefficients low-to-high, monic degree 6)
inline Int jac_order_from_chi(const std::vector<Int>& chi) {
    Int s = 0;
    for (const Int& c : chi) s += c;
    return s;
}

// #J(F_{q^delta}) = det(M^delta - I), M the companion matrix of chi
inline Int jac_order_ext_from_chi(const std::vector<Int>& chi, int delta) {
    if (chi.size() != 7 || chi[6] != 1) throw std::invalid_argument("jac_order_ext: bad chi");
    const int n = 6;
    std::vector<std::vector<Int>> M(n, std::vector<Int>(n, 0)), P(n, std::vector<Int>(n, 0));
    for (int i = 0; i < n; i++) P[i][i] = 1;
    for (int i = 0; i + 1 < n; i++) M[i + 1][i] = 1;
    for (int i = 0; i < n; i++) M[i][n - 1] = -chi[i];
    for (int t = 0; t < delta; t++) {
        std::vector<std::vector<Int>> R(n, std::vector<Int>(n, 0));
        for (int i = 0; i < n; i++)
            for (int kk = 0; kk < n; kk++) {
                if (M[i][kk] == 0) continue;
                for (int j = 0; j < n; j++) R[i][j] += M[i][kk] * P[kk][j];
            }
        P = std::move(R);
    }
    for (int i = 0; i < n; i++) P[i][i] -= 1;
    // fraction-free elimination (Bareiss); last pivot is the determinant
    Int denom = 1, sign = 1;
    for (int col = 0; col < n; col++) {
        int piv = -1;
        for (int r = col; r < n; r++)
            if (P[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return 0;
        if (piv != col) {
            std::swap(P[piv], P[col]);
            sign = -sign;
        }
        for (int r = col + 1; r < n; r++) {
            for (int c2 = col + 1; c2 < n; c2++) {
                P[r][c2] = P[col][col] * P[r][c2] - P[r][col] * P[col][c2];
                if (col > 0) P[r][c2] /= denom;
            }
            P[r][col] = 0;
        }
        denom = P[col][col];
    }
    return sign * P[n - 1][n - 1];
}

// random weight<=3 divisor as a sum of three random curve points
template <class B>
Mumford<GF<B>> jac_rand_divisor(const HypCurve<GF<B>>& C, Rng& rng) {
    const GF<B>& F = C.k;
    Mumford<GF<B>> D = jac_zero(C);
    for (int i = 0; i < 3; i++) {
        for (;;) {
            auto x = F.rand(rng);
            auto fx = poly_eval(F, C.f, x);
            auto y = F.sqrt(fx);
            if (!y) continue;
            auto yy = (rng.raw() & 1) ? F.neg(*y) : *y;
            D = jac_add(C, D, jac_point(C, x, yy));
            break;
        }
    }
    return D;
}

// Nonzero elements of J(F_q)[ell] reached from random divisors scaled by the
// prime-to-ell part of the group order, closed under addition. Exhaustive
// with high probability at desk scale when the rational ell-rank is small.
template <class B>
std::vector<Mumford<GF<B>>> oracle_naive_torsion(const HypCurve<GF<B>>& C, long ell,
                                                 const Int& jac_order, Rng& rng, int tries = 64) {
    Int m = jac_order;
    int vell = 0;
    while (m != 0 && mod_floor(m, ell) == 0) {
        m /= ell;
        vell++;
    }
    std::vector<Mumford<GF<B>>> group;
    group.push_back(jac_zero(C));
    auto known = [&](const Mumford<GF<B>>& D) {
        for (auto& E : group)
            if (jac_eq(C, E, D)) return true;
        return false;
    };
    auto insert_closure = [&](const Mumford<GF<B>>& D) {
        if (known(D)) return;
        size_t old = group.size();
        group.push_back(D);
        Mumford<GF<B>> acc = D;
        for (long t = 2; t < ell; t++) {
            acc = jac_add(C, acc, D);
            if (!known(acc)) group.push_back(acc);
        }
        for (size_t i = 1; i < old; i++) {
            acc = group[i];
            for (long t = 1; t < ell; t++) {
                acc = jac_add(C, acc, D);
                if (!known(acc)) group.push_back(acc);
            }
        }
    };
    for (int t = 0; t < tries && vell > 0; t++) {
        Mumford<GF<B>> D = jac_rand_divisor(C, rng);
        D = jac_scalar(C, D, m);
        while (!jac_is_zero(C, D)) {
            Mumford<GF<B>> E = jac_scalar(C, D, ell);
            if (jac_is_zero(C, E)) {
                insert_closure(D);
                break;
            }
            D = E;
        }
    }
    group.erase(group.begin());
    return group;
}

} // namespace rmc

#endif
