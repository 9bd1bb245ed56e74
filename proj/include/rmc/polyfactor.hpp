#ifndef RMC_POLYFACTOR_HPP
#define RMC_POLYFACTOR_HPP

#include <algorithm>
#include <array>
#include <utility>
#include <vector>

#include "rmc/gf.hpp"
#include "rmc/poly.hpp"

namespace rmc {

// Factorization and related algorithms over GF<B>. Odd characteristic is
// assumed where a quadratic-residue split is needed (all curve fields here
// are odd); even-q equal-degree splitting is not provided.

template <class B>
Poly<GF<B>> poly_pth_root(const GF<B>& F, const Poly<GF<B>>& p) {
    // p = h(x^char); recover h, coefficientwise inverse Frobenius
    unsigned long ch = to_u64(F.char_p());
    Poly<GF<B>> h;
    for (size_t i = 0; i < p.c.size(); i += ch)
        h.c.push_back(F.frobenius(p.c[i], F.deg() - 1));
    poly_trim(F, h);
    return h;
}

template <class B>
Poly<GF<B>> poly_squarefree_part(const GF<B>& F, const Poly<GF<B>>& p) {
    if (p.degree() <= 0) return poly_monic(F, p);
    Poly<GF<B>> d = poly_derivative(F, p);
    if (d.is_zero()) return poly_squarefree_part(F, poly_pth_root(F, p));
    Poly<GF<B>> g = poly_gcd(F, p, d);
    Poly<GF<B>> sf = poly_divexact(F, p, g);
    if (g.degree() <= 0) return poly_monic(F, sf);
    // primes with multiplicity divisible by char are missing from sf
    Poly<GF<B>> rest = g;
    for (;;) {
        Poly<GF<B>> c = poly_gcd(F, rest, sf);
        if (c.degree() <= 0) break;
        rest = poly_divexact(F, rest, c);
    }
    if (rest.degree() <= 0) return poly_monic(F, sf);
    Poly<GF<B>> extra = poly_squarefree_part(F, poly_pth_root(F, rest));
    return poly_mul(F, poly_monic(F, sf), extra);
}

template <class B>
bool poly_is_squarefree(const GF<B>& F, const Poly<GF<B>>& p) {
    if (p.degree() <= 0) return true;
    Poly<GF<B>> d = poly_derivative(F, p);
    if (d.is_zero()) return false;
    return poly_gcd(F, p, d).degree() == 0;
}

// distinct-degree split of a monic squarefree polynomial:
// returns pairs (product of irreducible factors of degree d, d)
template <class B>
std::vector<std::pair<Poly<GF<B>>, int>> poly_ddf(const GF<B>& F, Poly<GF<B>> p) {
    std::vector<std::pair<Poly<GF<B>>, int>> out;
    Poly<GF<B>> x = poly_x(F);
    Poly<GF<B>> h = poly_rem(F, x, p);
    int d = 0;
    while (p.degree() > 0 && p.degree() > 2 * d) {
        d++;
        h = poly_powmod(F, h, F.order(), p);
        Poly<GF<B>> g = poly_gcd(F, poly_sub(F, h, x), p);
        if (g.degree() > 0) {
            out.push_back({g, d});
            p = poly_divexact(F, p, g);
            h = poly_rem(F, h, p);
        }
    }
    if (p.degree() > 0) out.push_back({poly_monic(F, p), p.degree()});
    return out;
}

// Cantor-Zassenhaus equal-degree split, q odd
template <class B>
void poly_edf(const GF<B>& F, const Poly<GF<B>>& p, int d, Rng& rng,
              std::vector<Poly<GF<B>>>& out) {
    if (p.degree() == d) {
        out.push_back(poly_monic(F, p));
        return;
    }
    Int e = (ipow(F.order(), d) - 1) / 2;
    for (;;) {
        Poly<GF<B>> r = poly_random(F, p.degree() - 1, rng);
        if (r.degree() < 1) continue;
        Poly<GF<B>> s = poly_powmod(F, r, e, p);
        s = poly_sub(F, s, poly_one(F));
        Poly<GF<B>> g = poly_gcd(F, s, p);
        if (g.degree() > 0 && g.degree() < p.degree()) {
            poly_edf(F, g, d, rng, out);
            poly_edf(F, poly_divexact(F, p, g), d, rng, out);
            return;
        }
    }
}

// full factorization: (monic irreducible, multiplicity), leading coefficient
// dropped; factors sorted by (degree, coefficient order) for determinism
template <class B>
std::vector<std::pair<Poly<GF<B>>, int>> poly_factor(const GF<B>& F, Poly<GF<B>> p, Rng& rng) {
    std::vector<std::pair<Poly<GF<B>>, int>> out;
    if (p.degree() <= 0) return out;
    p = poly_monic(F, p);
    while (p.degree() > 0) {
        Poly<GF<B>> sf = poly_squarefree_part(F, p);
        std::vector<Poly<GF<B>>> primes;
        for (auto& [prod, d] : poly_ddf(F, sf)) poly_edf(F, prod, d, rng, primes);
        for (auto& f : primes) {
            int mult = 0;
            for (;;) {
                auto [q, r] = poly_divrem(F, p, f);
                if (!r.is_zero()) break;
                p = q;
                mult++;
            }
            out.push_back({f, mult});
        }
        // whatever remains is a char-th power
        if (p.degree() > 0 && poly_gcd(F, p, sf).degree() > 0)
            throw std::logic_error("poly_factor: leftover shares a factor");
    }
    std::sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        for (int i = a.first.degree(); i >= 0; i--)
            for (int j = F.deg() - 1; j >= 0; j--) {
                Int x = F.base().to_int(a.first.c[i][j]);
                Int y = F.base().to_int(b.first.c[i][j]);
                if (x != y) return x < y;
            }
        return false;
    });
    return out;
}

// distinct roots in F, sorted by enumeration index
template <class B>
std::vector<typename GF<B>::Elem> poly_roots(const GF<B>& F, const Poly<GF<B>>& p, Rng& rng) {
    std::vector<typename GF<B>::Elem> roots;
    if (p.degree() <= 0) return roots;
    Poly<GF<B>> x = poly_x(F);
    Poly<GF<B>> sf = poly_squarefree_part(F, p);
    Poly<GF<B>> xq = poly_powmod(F, x, F.order(), sf);
    Poly<GF<B>> lin = poly_gcd(F, poly_sub(F, xq, x), sf);
    if (lin.degree() <= 0) return roots;
    std::vector<Poly<GF<B>>> facs;
    poly_edf(F, lin, 1, rng, facs);
    for (auto& f : facs) roots.push_back(F.neg(f.c[0]));
    std::sort(roots.begin(), roots.end(), [&](const auto& a, const auto& b) {
        for (int j = F.deg() - 1; j >= 0; j--) {
            Int x1 = F.base().to_int(a[j]), y1 = F.base().to_int(b[j]);
            if (x1 != y1) return x1 < y1;
        }
        return false;
    });
    return roots;
}

template <class B>
bool poly_is_irreducible(const GF<B>& F, const Poly<GF<B>>& p) {
    int n = p.degree();
    if (n <= 0) return false;
    if (n == 1) return true;
    Poly<GF<B>> x = poly_x(F);
    // x^(q^n) == x mod p, and no subfield degree n/r fixes anything
    Poly<GF<B>> h = poly_rem(F, x, p);
    std::vector<Poly<GF<B>>> powers;  // h_i = x^(q^(i+1)) mod p
    for (int i = 0; i < n; i++) {
        h = poly_powmod(F, h, F.order(), p);
        powers.push_back(h);
    }
    if (!poly_eq(F, powers[n - 1], poly_rem(F, x, p))) return false;
    for (int r = 2; r <= n; r++) {
        if (n % r) continue;
        bool isprime = true;
        for (int s = 2; s * s <= r; s++)
            if (r % s == 0) isprime = false;
        if (!isprime) continue;
        Poly<GF<B>> g = poly_gcd(F, poly_sub(F, powers[n / r - 1], x), p);
        if (g.degree() != 0) return false;
    }
    return true;
}

template <class B>
Poly<GF<B>> poly_random_irreducible(const GF<B>& F, int deg, Rng& rng) {
    for (;;) {
        Poly<GF<B>> p = poly_random_monic(F, deg, rng);
        if (poly_is_irreducible(F, p)) return p;
    }
}

// Degree-k extension of F as a single-step field over the same prime base.
// Deterministic for a fixed seed state.
template <class B>
GF<B> make_extension(const GF<B>& F, int k, Rng& rng) {
    if (k < 1) throw std::invalid_argument("make_extension: k < 1");
    int n = F.deg() * k;
    if (n == 1) return GF<B>(F.base());
    if (F.deg() == 1) {
        Poly<GF<B>> m = poly_random_irreducible(F, n, rng);
        std::vector<typename B::Rep> coeffs;
        for (int i = 0; i <= n; i++) coeffs.push_back(poly_coeff(F, m, i)[0]);
        return GF<B>(F.base(), coeffs);
    }
    GF<B> prime(F.base());
    return make_extension(prime, n, rng);
}

// Field embedding by root-finding: src.modulus has a root in dst whenever
// src.deg divides dst.deg. Applying the map is evaluation at that root.
template <class B>
struct Embedding {
    GF<B> src, dst;
    typename GF<B>::Elem root;

    typename GF<B>::Elem apply(const typename GF<B>::Elem& a) const {
        // a as polynomial over the prime field, evaluated at root
        typename GF<B>::Elem acc = dst.scalar(a[src.deg() - 1]);
        for (int i = src.deg() - 2; i >= 0; i--) {
            acc = dst.mul(acc, root);
            acc[0] = dst.base().add(acc[0], a[i]);
        }
        return acc;
    }
};

template <class B>
Embedding<B> find_embedding(const GF<B>& src, const GF<B>& dst, Rng& rng) {
    if (dst.deg() % src.deg() != 0)
        throw std::invalid_argument("find_embedding: src degree does not divide dst degree");
    Poly<GF<B>> m;
    for (auto& c : src.modulus()) m.c.push_back(dst.scalar(c));
    poly_trim(dst, m);
    auto roots = poly_roots(dst, m, rng);
    if (roots.empty()) throw std::logic_error("find_embedding: modulus has no root");
    return Embedding<B>{src, dst, roots[0]};
}

// Section of an embedding: coordinates of z in the basis 1, root, ...,
// root^(src.deg-1), solved over the prime field. Empty when z is outside
// the embedded copy of src.
template <class B>
std::optional<typename GF<B>::Elem> embed_pullback(const Embedding<B>& E,
                                                   const typename GF<B>::Elem& z) {
    const B& bs = E.dst.base();
    int n = E.dst.deg(), m = E.src.deg();
    std::vector<typename GF<B>::Elem> pw;
    pw.reserve(m);
    auto acc = E.dst.one();
    for (int i = 0; i < m; i++) {
        pw.push_back(acc);
        acc = E.dst.mul(acc, E.root);
    }
    std::vector<std::vector<typename B::Rep>> A(n, std::vector<typename B::Rep>(m + 1, bs.zero()));
    for (int r = 0; r < n; r++) {
        for (int c = 0; c < m; c++) A[r][c] = pw[c][r];
        A[r][m] = z[r];
    }
    std::vector<int> pivot_of_col(m, -1);
    int rank = 0;
    for (int c = 0; c < m && rank < n; c++) {
        int pr = -1;
        for (int r = rank; r < n; r++)
            if (!bs.is_zero(A[r][c])) {
                pr = r;
                break;
            }
        if (pr < 0) continue;
        std::swap(A[rank], A[pr]);
        auto inv = bs.inv(A[rank][c]);
        for (int j = c; j <= m; j++) A[rank][j] = bs.mul(A[rank][j], inv);
        for (int r = 0; r < n; r++) {
            if (r == rank || bs.is_zero(A[r][c])) continue;
            auto s = A[r][c];
            for (int j = c; j <= m; j++) A[r][j] = bs.sub(A[r][j], bs.mul(s, A[rank][j]));
        }
        pivot_of_col[c] = rank++;
    }
    for (int r = rank; r < n; r++)
        if (!bs.is_zero(A[r][m])) return std::nullopt;
    std::vector<typename B::Rep> sol(m, bs.zero());
    for (int c = 0; c < m; c++)
        if (pivot_of_col[c] >= 0) sol[c] = A[pivot_of_col[c]][m];
    return E.src.from_coeffs(sol);
}

} // namespace rmc

#endif
