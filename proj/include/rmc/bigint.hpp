#ifndef RMC_BIGINT_HPP
#define RMC_BIGINT_HPP

#include <gmpxx.h>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace rmc {

using Int = mpz_class;
using Rat = mpq_class;

inline Int ipow(const Int& b, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

// floor(sqrt(n)), n >= 0
inline Int isqrt(const Int& n) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline Int isqrt_ceil(const Int& n) {
    Int r = isqrt(n);
    if (r * r != n) r += 1;
    return r;
}

inline bool is_probable_prime(const Int& n, int reps = 30) {
    return mpz_probab_prime_p(n.get_mpz_t(), reps) != 0;
}

inline Int next_prime(const Int& n) {
    Int r;
    mpz_nextprime(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

// nonnegative remainder in [0, m)
inline Int mod_floor(const Int& a, const Int& m) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

// symmetric remainder in (-m/2, m/2]
inline Int mod_sym(const Int& a, const Int& m) {
    Int r = mod_floor(a, m);
    if (2 * r > m) r -= m;
    return r;
}

inline Int invmod(const Int& a, const Int& m) {
    Int r;
    if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()))
        throw std::domain_error("invmod: not invertible");
    return r;
}

inline Int powmod(const Int& b, const Int& e, const Int& m) {
    Int r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

// x = a1 mod m1, x = a2 mod m2 for coprime m1, m2; result in [0, m1*m2)
inline Int crt_pair(const Int& a1, const Int& m1, const Int& a2, const Int& m2) {
    Int t = mod_floor((a2 - a1) * invmod(mod_floor(m1, m2), m2), m2);
    return a1 + m1 * t;
}

inline std::string dec(const Int& n) { return n.get_str(10); }

inline Int parse_int(const std::string& s) {
    Int r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("parse_int: bad decimal '" + s + "'");
    return r;
}

inline uint64_t to_u64(const Int& n) {
    if (n < 0 || !n.fits_ulong_p()) throw std::overflow_error("to_u64: out of range");
    return mpz_get_ui(n.get_mpz_t());
}

// sign of a*sqrt(q) + b with q >= 0, exact
inline int sign_affine_sqrt(const Int& a, const Int& q, const Int& b) {
    int sa = sgn(a), sb = sgn(b);
    if (sa == 0) return sb;
    if (sa > 0 && sb >= 0) return (a == 0 && b == 0) ? 0 : 1;
    if (sa < 0 && sb <= 0) return -1;
    // opposite signs: compare a^2 q with b^2
    Int lhs = a * a * q, rhs = b * b;
    if (lhs == rhs) return 0;
    return ((lhs > rhs) == (sa > 0)) ? 1 : -1;
}

} // namespace rmc

#endif
