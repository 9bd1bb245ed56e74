#ifndef RMC_RM_ORDER_HPP
#define RMC_RM_ORDER_HPP

#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rmc/bigint.hpp"

namespace rmc {

// The real multiplication order Z[eta], eta a totally real cubic integer with
// minimal polynomial T^3 + mu2 T^2 + mu1 T + mu0. Elements are written
// a + b eta + c eta^2 with integer (a, b, c).

struct RmOrder {
    Int mu0, mu1, mu2;
    Int delta = 1;  // denominator bound: the endomorphism of interest is (a + b eta + c eta^2)/delta

    Int disc() const {
        const Int &a = mu2, &b = mu1, &c = mu0;
        return 18 * a * b * c - 4 * a * a * a * c + a * a * b * b - 4 * b * b * b - 27 * c * c;
    }
    bool operator==(const RmOrder& o) const {
        return mu0 == o.mu0 && mu1 == o.mu1 && mu2 == o.mu2 && delta == o.delta;
    }
};

// eta = 2cos(2pi/7): T^3 + T^2 - 2T - 1, discriminant 49, totally real
inline RmOrder rm_eta7() { return RmOrder{-1, -2, 1, 1}; }

struct OrderElem {
    Int a, b, c;

    bool operator==(const OrderElem& o) const { return a == o.a && b == o.b && c == o.c; }
};

// multiplication matrix of a + b eta + c eta^2 on the basis (1, eta, eta^2)
inline std::array<std::array<Int, 3>, 3> rm_mult_matrix(const RmOrder& R, const OrderElem& e) {
    const Int &a = e.a, &b = e.b, &c = e.c;
    const Int &m0 = R.mu0, &m1 = R.mu1, &m2 = R.mu2;
    return {{
        {a, -c * m0, -b * m0 + c * m0 * m2},
        {b, a - c * m1, -b * m1 + c * (m1 * m2 - m0)},
        {c, b - c * m2, a - b * m2 + c * (m2 * m2 - m1)},
    }};
}

// trace, second elementary symmetric function, and norm of the element
// (characteristic polynomial T^3 - tr T^2 + e2 T - nm of multiplication)
inline std::array<Int, 3> rm_charpoly(const RmOrder& R, const OrderElem& e) {
    auto M = rm_mult_matrix(R, e);
    Int tr = M[0][0] + M[1][1] + M[2][2];
    Int e2 = M[0][0] * M[1][1] - M[0][1] * M[1][0] + M[0][0] * M[2][2] - M[0][2] * M[2][0] +
             M[1][1] * M[2][2] - M[1][2] * M[2][1];
    Int nm = M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) -
             M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
             M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
    return {tr, e2, nm};
}

inline Int rm_norm(const RmOrder& R, const OrderElem& e) { return rm_charpoly(R, e)[2]; }

// sigma_1, sigma_2, sigma_3 of Frobenius from psi = a + b eta + c eta^2 acting
// as pi + q/pi on the Jacobian over F_q
inline std::array<Int, 3> rm_sigma_from_abc(const RmOrder& R, const OrderElem& e, const Int& q) {
    const Int &a = e.a, &b = e.b, &c = e.c;
    const Int &m0 = R.mu0, &m1 = R.mu1, &m2 = R.mu2;
    Int s1 = 3 * a - b * m2 - 2 * c * m1 + c * m2 * m2;
    Int s2 = 3 * q + 3 * a * a - 2 * a * b * m2 + 2 * a * c * (m2 * m2 - 2 * m1) + b * b * m1 +
             3 * b * c * m0 - b * c * m1 * m2 + c * c * (m1 * m1 - 2 * m0 * m2);
    Int s3 = 2 * q * s1 + a * a * a - a * a * b * m2 + a * a * c * (m2 * m2 - 2 * m1) +
             a * b * b * m1 + a * b * c * (3 * m0 - m1 * m2) + a * c * c * (m1 * m1 - 2 * m0 * m2) -
             b * b * b * m0 + b * b * c * m0 * m2 - b * c * c * m0 * m1 + c * c * c * m0 * m0;
    return {s1, s2, s3};
}

struct WeilViolation : std::domain_error {
    using std::domain_error::domain_error;
};

// |s1| <= 6 sqrt(q), |s2| <= 15 q, |s3| <= 20 q^(3/2), exact comparisons
inline bool rm_weil_bounds_ok(const std::array<Int, 3>& s, const Int& q) {
    if (s[0] * s[0] > 36 * q) return false;
    if (abs(s[1]) > 15 * q) return false;
    if (s[2] * s[2] > 400 * q * q * q) return false;
    return true;
}

// real Weil polynomial T^3 - s1 T^2 + (s2 - 3q) T - (s3 - 2 q s1)
inline std::array<Int, 3> rm_real_weil(const std::array<Int, 3>& s, const Int& q) {
    return {-(s[2] - 2 * q * s[0]), s[1] - 3 * q, -s[0]};  // low-to-high below T^3
}

// all roots of the real Weil cubic real and inside [-2 sqrt q, 2 sqrt q]
inline bool rm_real_rooted_ok(const std::array<Int, 3>& s, const Int& q) {
    auto h = rm_real_weil(s, q);
    const Int &C = h[0], &B = h[1], &A = h[2];
    Int disc = 18 * A * B * C - 4 * A * A * A * C + A * A * B * B - 4 * B * B * B - 27 * C * C;
    if (disc < 0) return false;
    Int Q = 4 * q;
    // h and derivatives at 2 sqrt(q) and -2 sqrt(q)
    if (sign_affine_sqrt(Q + B, Q, Q * A + C) < 0) return false;           // h(s) >= 0
    if (sign_affine_sqrt(-(Q + B), Q, Q * A + C) > 0) return false;        // h(-s) <= 0
    if (sign_affine_sqrt(2 * A, Q, 3 * Q + B) < 0) return false;           // h'(s) >= 0
    if (sign_affine_sqrt(-2 * A, Q, 3 * Q + B) < 0) return false;          // h'(-s) >= 0
    if (sign_affine_sqrt(Int(6), Q, 2 * A) < 0) return false;              // h''(s) >= 0
    if (sign_affine_sqrt(Int(-6), Q, 2 * A) > 0) return false;             // h''(-s) <= 0
    return true;
}

// charpoly of Frobenius: T^6 - s1 T^5 + s2 T^4 - s3 T^3 + q s2 T^2 - q^2 s1 T + q^3,
// returned low-to-high; Weil bounds and real-rootedness are preconditions
inline std::vector<Int> rm_chi_from_sigma(const std::array<Int, 3>& s, const Int& q) {
    if (!rm_weil_bounds_ok(s, q)) throw WeilViolation("chi_from_sigma: Weil bounds violated");
    if (!rm_real_rooted_ok(s, q))
        throw WeilViolation("chi_from_sigma: real Weil polynomial not totally real in range");
    return {q * q * q, -q * q * s[0], q * s[1], -s[2], s[1], -s[0], Int(1)};
}

// --- split primes and small elements ---

struct SplitData {
    long ell;
    std::array<long, 3> lambda;  // roots of the minimal polynomial mod ell, ascending
};

// completely split: three distinct roots mod ell, ell coprime to disc
inline std::optional<SplitData> rm_split(const RmOrder& R, long ell) {
    if (ell < 2) return std::nullopt;
    if (mod_floor(R.disc(), ell) == 0) return std::nullopt;
    auto evalm = [&](long t) {
        Int v = ((Int(t) + R.mu2) * t + R.mu1) * t + R.mu0;
        return mod_floor(v, ell) == 0;
    };
    SplitData out{ell, {0, 0, 0}};
    int found = 0;
    for (long t = 0; t < ell && found <= 3; t++)
        if (evalm(t)) {
            if (found < 3) out.lambda[found] = t;
            found++;
        }
    if (found != 3) return std::nullopt;
    return out;
}

inline std::vector<SplitData> rm_split_primes_below(const RmOrder& R, long bound) {
    std::vector<SplitData> out;
    for (Int p = 2; p < bound; p = next_prime(p)) {
        auto s = rm_split(R, to_u64(p));
        if (s) out.push_back(*s);
    }
    return out;
}

// largest n >= 0 with n^3 * den^3 < num^3 * ell  (n < (num/den) * ell^(1/3))
inline long rm_box_radius(long num, long den, long ell) {
    Int lhsf = Int(num) * num * num * ell;
    long n = 0;
    while (Int(n + 1) * (n + 1) * (n + 1) * den * den * den < lhsf) n++;
    return n;
}

struct SmallElemResult {
    OrderElem alpha;
    Int norm;
    long shells_searched;
};

struct NoSmallElement : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Smallest element of the prime ideal (ell, eta - lambda) with ell | N,
// ell^3 does not divide N, by exhaustive search in increasing max-norm order
// with lexicographic tie-break. For the eta7 order the per-coordinate box
// radii are (2.415, 1.850, 1.764) * ell^(1/3); other orders grow the cube
// until a hit (with a generous cap).
SmallElemResult rm_small_element(const RmOrder& R, long ell, long lambda);

// exact rational upper bound for 2 * ||V^{-1}||_inf, V the Vandermonde matrix
// of the real roots of the minimal polynomial
Rat rm_cabc_upper(const RmOrder& R);

// --- CRT accumulation of psi mod m ---

struct ModTriple {
    OrderElem t;  // canonical residues in [0, mod)
    Int mod;
};

struct InsufficientModulus : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline ModTriple rm_crt(const ModTriple& x, const ModTriple& y) {
    Int g;
    mpz_gcd(g.get_mpz_t(), x.mod.get_mpz_t(), y.mod.get_mpz_t());
    if (g != 1) throw std::invalid_argument("rm_crt: moduli not coprime");
    ModTriple r;
    r.mod = x.mod * y.mod;
    r.t.a = crt_pair(x.t.a, x.mod, y.t.a, y.mod);
    r.t.b = crt_pair(x.t.b, x.mod, y.t.b, y.mod);
    r.t.c = crt_pair(x.t.c, x.mod, y.t.c, y.mod);
    return r;
}

inline ModTriple rm_reduce_triple(const OrderElem& e, const Int& m) {
    return {{mod_floor(e.a, m), mod_floor(e.b, m), mod_floor(e.c, m)}, m};
}

// true when the modulus exceeds 2 * delta * C_abc * sqrt(q) + 1, so the
// symmetric lift of the residues is the exact coefficient vector
inline bool rm_modulus_sufficient(const Int& modulus, const Int& q, const Rat& cabc,
                                  const Int& delta) {
    // modulus - 1 > 2 delta C sqrt(q)
    Int lhs = modulus - 1;
    if (lhs <= 0) return false;
    Rat c2 = cabc * cabc;
    // lhs^2 > 4 delta^2 c2 q
    return Rat(lhs * lhs) > 4 * delta * delta * c2 * Rat(q);
}

// symmetric lift of the accumulated residues; requires a sufficient modulus
inline OrderElem rm_lift_triple(const ModTriple& m, const Int& q, const Rat& cabc,
                                const Int& delta) {
    if (!rm_modulus_sufficient(m.mod, q, cabc, delta))
        throw InsufficientModulus("rm_lift_triple: modulus below the coefficient bound");
    return {mod_sym(m.t.a, m.mod), mod_sym(m.t.b, m.mod), mod_sym(m.t.c, m.mod)};
}

} // namespace rmc

#endif
