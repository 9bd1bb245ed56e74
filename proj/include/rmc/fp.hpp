#ifndef RMC_FP_HPP
#define RMC_FP_HPP

#include <cstdint>
#include <stdexcept>

#include "rmc/bigint.hpp"
#include "rmc/rng.hpp"

namespace rmc {

// Prime field backends. Both expose the same interface over their residue
// representation; extension fields and everything above are generic in the
// backend. Residues are kept canonical in [0, p).

struct SmallFp {
    using Rep = uint64_t;

    uint64_t p = 0;

    SmallFp() = default;
    explicit SmallFp(uint64_t p_) : p(p_) {
        if (p < 2) throw std::invalid_argument("SmallFp: p < 2");
    }

    static bool fits(const Int& q) { return q.fits_ulong_p(); }

    Int p_int() const { return Int(p); }

    Rep zero() const { return 0; }
    Rep one() const { return p == 1 ? 0 : 1; }
    bool is_zero(Rep a) const { return a == 0; }

    Rep add(Rep a, Rep b) const {
        Rep r = a + b;
        if (r < a || r >= p) r -= p;
        return r;
    }
    Rep sub(Rep a, Rep b) const { return a >= b ? a - b : a + (p - b); }
    Rep neg(Rep a) const { return a == 0 ? 0 : p - a; }
    Rep mul(Rep a, Rep b) const {
        return (Rep)(((unsigned __int128)a * b) % p);
    }

    Rep inv(Rep a) const {
        if (a == 0) throw std::domain_error("SmallFp::inv(0)");
        // extended Euclid; p prime so gcd is 1
        __int128 t = 0, nt = 1;
        uint64_t r = p, nr = a;
        while (nr != 0) {
            uint64_t q = r / nr;
            __int128 tmp = t - (__int128)q * nt;
            t = nt; nt = tmp;
            uint64_t rr = r - q * nr;
            r = nr; nr = rr;
        }
        if (r != 1) throw std::domain_error("SmallFp::inv: not invertible");
        if (t < 0) t += p;
        return (Rep)t;
    }

    Rep pow(Rep a, Int e) const {
        if (e < 0) { a = inv(a); e = -e; }
        Rep r = one(), b = a;
        size_t nb = mpz_sizeinbase(e.get_mpz_t(), 2);
        if (e == 0) return r;
        for (size_t i = 0; i < nb; i++) {
            if (mpz_tstbit(e.get_mpz_t(), i)) r = mul(r, b);
            b = mul(b, b);
        }
        return r;
    }

    Rep from_int(const Int& v) const { return to_u64(mod_floor(v, p_int())); }
    Rep from_i64(int64_t v) const {
        int64_t r = v % (int64_t)(p <= INT64_MAX ? p : 1);
        if (p > INT64_MAX) return from_int(Int(v));
        if (r < 0) r += (int64_t)p;
        return (Rep)r;
    }
    Int to_int(Rep a) const { return Int(a); }

    Rep rand(Rng& rng) const { return rng.below(p); }

    bool operator==(const SmallFp& o) const { return p == o.p; }
};

struct BigFp {
    using Rep = Int;

    Int p;

    BigFp() : p(0) {}
    explicit BigFp(Int p_) : p(std::move(p_)) {
        if (p < 2) throw std::invalid_argument("BigFp: p < 2");
    }

    static bool fits(const Int&) { return true; }

    Int p_int() const { return p; }

    Rep zero() const { return Int(0); }
    Rep one() const { return Int(1); }
    bool is_zero(const Rep& a) const { return a == 0; }

    Rep add(const Rep& a, const Rep& b) const {
        Rep r = a + b;
        if (r >= p) r -= p;
        return r;
    }
    Rep sub(const Rep& a, const Rep& b) const {
        Rep r = a - b;
        if (r < 0) r += p;
        return r;
    }
    Rep neg(const Rep& a) const { return a == 0 ? a : Rep(p - a); }
    Rep mul(const Rep& a, const Rep& b) const { return mod_floor(a * b, p); }

    Rep inv(const Rep& a) const {
        if (a == 0) throw std::domain_error("BigFp::inv(0)");
        return invmod(a, p);
    }

    Rep pow(const Rep& a, const Int& e) const { return powmod(a, e, p); }

    Rep from_int(const Int& v) const { return mod_floor(v, p); }
    Rep from_i64(int64_t v) const { return from_int(Int(v)); }
    Int to_int(const Rep& a) const { return a; }

    Rep rand(Rng& rng) const { return rng.below(p); }

    bool operator==(const BigFp& o) const { return p == o.p; }
};

} // namespace rmc

#endif
