#ifndef RMC_TESTS_UTIL_HPP
#define RMC_TESTS_UTIL_HPP

#include <vector>

#include "rmc/gf.hpp"
#include "rmc/jacobian.hpp"
#include "rmc/poly.hpp"
#include "rmc/rng.hpp"

namespace rmctest {

// Independent resultant oracle: determinant of the Sylvester matrix by
// Gaussian elimination over the coefficient field.
template <class K>
typename K::Elem sylvester_resultant(const K& k, const rmc::Poly<K>& a, const rmc::Poly<K>& b) {
    using rmc::poly_coeff;
    int m = a.degree(), n = b.degree();
    if (m < 0 || n < 0) return k.zero();
    if (m == 0 && n == 0) return k.one();
    int N = m + n;
    std::vector<std::vector<typename K::Elem>> S(N, std::vector<typename K::Elem>(N, k.zero()));
    for (int i = 0; i < n; i++)
        for (int j = 0; j <= m; j++) S[i][i + j] = poly_coeff(k, a, m - j);
    for (int i = 0; i < m; i++)
        for (int j = 0; j <= n; j++) S[n + i][i + j] = poly_coeff(k, b, n - j);
    auto det = k.one();
    bool neg = false;
    for (int col = 0; col < N; col++) {
        int piv = -1;
        for (int r = col; r < N; r++)
            if (!k.is_zero(S[r][col])) {
                piv = r;
                break;
            }
        if (piv < 0) return k.zero();
        if (piv != col) {
            std::swap(S[piv], S[col]);
            neg = !neg;
        }
        det = k.mul(det, S[col][col]);
        auto inv = k.inv(S[col][col]);
        for (int r = col + 1; r < N; r++) {
            if (k.is_zero(S[r][col])) continue;
            auto f = k.mul(S[r][col], inv);
            for (int c = col; c < N; c++) S[r][c] = k.sub(S[r][c], k.mul(f, S[col][c]));
        }
    }
    return neg ? k.neg(det) : det;
}

// y^2 = x^7 - 7x^5 + 14x^3 - 7x + t
template <class K>
rmc::Poly<K> ttv_f(const K& k, int64_t t) {
    return rmc::poly_from_i64(k, {t, -7, 0, 14, 0, -7, 0, 1});
}

// Sum of up to npts random non-Weierstrass points.
template <class B>
rmc::Mumford<rmc::GF<B>> random_divisor(const rmc::HypCurve<rmc::GF<B>>& C, rmc::Rng& rng,
                                        int npts = 3) {
    const auto& k = C.k;
    auto D = rmc::jac_zero(C);
    int added = 0;
    for (int i = 0; i < 4096 && added < npts; i++) {
        auto x = k.rand(rng);
        auto y = k.sqrt(rmc::poly_eval(k, C.f, x));
        if (!y || k.is_zero(*y)) continue;
        D = rmc::jac_add(C, D, rmc::jac_point(C, x, rng.below(2) ? *y : k.neg(*y)));
        added++;
    }
    return D;
}

} // namespace rmctest

#endif
