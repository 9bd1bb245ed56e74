#ifndef RMC_GF_HPP
#define RMC_GF_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rmc/bigint.hpp"
#include "rmc/fp.hpp"
#include "rmc/rng.hpp"
#include "rmc/smallvec.hpp"

namespace rmc {

template <class B>
struct RepVecOf {
    using type = std::vector<typename B::Rep>;
};
template <>
struct RepVecOf<SmallFp> {
    using type = SmallVec<uint64_t, 4>;
};

inline uint64_t mix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline uint64_t rep_hash(const SmallFp&, uint64_t a) { return mix64(a); }
inline uint64_t rep_hash(const BigFp&, const Int& a) {
    return mix64(mpz_fdiv_ui(a.get_mpz_t(), 0x1fffffffffffffffull));
}

// F_{p^deg} = B[T]/(m) with m monic of degree deg >= 1. deg == 1 is the prime
// field itself (m = T). Elements are coefficient vectors of length exactly deg.
template <class B>
class GF {
public:
    using Base = B;
    using Rep = typename B::Rep;
    using Elem = typename RepVecOf<B>::type;

    GF() = default;

    explicit GF(B base) : base_(base), deg_(1) {
        mod_ = {base_.zero(), base_.one()};
        order_ = base_.p_int();
    }

    GF(B base, std::vector<Rep> monic_modulus) : base_(base), mod_(std::move(monic_modulus)) {
        if (mod_.size() < 2) throw std::invalid_argument("GF: modulus degree < 1");
        if (!(mod_.back() == base_.one())) throw std::invalid_argument("GF: modulus not monic");
        deg_ = (int)mod_.size() - 1;
        order_ = ipow(base_.p_int(), deg_);
    }

    const B& base() const { return base_; }
    int deg() const { return deg_; }
    const Int& order() const { return order_; }
    Int char_p() const { return base_.p_int(); }
    const std::vector<Rep>& modulus() const { return mod_; }

    bool operator==(const GF& o) const {
        if (!(base_ == o.base_) || deg_ != o.deg_) return false;
        for (int i = 0; i <= deg_; i++)
            if (!(mod_[i] == o.mod_[i])) return false;
        return true;
    }

    // --- element constructors ---

    Elem zero() const { return make(); }
    Elem one() const {
        Elem e = make();
        e[0] = base_.one();
        return e;
    }
    Elem scalar(Rep c) const {
        Elem e = make();
        e[0] = c;
        return e;
    }
    Elem from_int(const Int& v) const { return scalar(base_.from_int(v)); }
    Elem from_i64(int64_t v) const { return scalar(base_.from_i64(v)); }

    // image of T
    Elem gen() const {
        Elem e = make();
        if (deg_ == 1) {
            e[0] = base_.neg(mod_[0]);
        } else {
            e[1] = base_.one();
        }
        return e;
    }

    Elem from_coeffs(const std::vector<Rep>& cs) const {
        Elem e = make();
        if ((int)cs.size() > deg_) throw std::invalid_argument("GF: too many coefficients");
        for (size_t i = 0; i < cs.size(); i++) e[i] = cs[i];
        return e;
    }

    // index in [0, order) -> element, base-p digit expansion
    Elem from_index(const Int& idx) const {
        Elem e = make();
        Int v = idx, p = base_.p_int();
        for (int i = 0; i < deg_ && v != 0; i++) {
            e[i] = base_.from_int(mod_floor(v, p));
            v /= p;
        }
        return e;
    }

    Elem rand(Rng& rng) const {
        Elem e = make();
        for (int i = 0; i < deg_; i++) e[i] = base_.rand(rng);
        return e;
    }

    Int index_of(const Elem& a) const {
        Int v = 0;
        for (int i = deg_ - 1; i >= 0; i--) v = v * base_.p_int() + base_.to_int(a[i]);
        return v;
    }

    // lexicographic successor (digit 0 fastest); false on wraparound to zero
    bool next_elem(Elem& a) const {
        for (int i = 0; i < deg_; i++) {
            a[i] = base_.add(a[i], base_.one());
            if (!base_.is_zero(a[i])) return true;
        }
        return false;
    }

    // --- predicates ---

    bool is_zero(const Elem& a) const {
        for (int i = 0; i < deg_; i++)
            if (!base_.is_zero(a[i])) return false;
        return true;
    }
    bool is_one(const Elem& a) const { return eq(a, one()); }
    bool eq(const Elem& a, const Elem& b) const {
        for (int i = 0; i < deg_; i++)
            if (!(a[i] == b[i])) return false;
        return true;
    }
    // constant in the base field
    std::optional<Rep> as_scalar(const Elem& a) const {
        for (int i = 1; i < deg_; i++)
            if (!base_.is_zero(a[i])) return std::nullopt;
        return a[0];
    }

    // --- arithmetic ---

    Elem add(const Elem& a, const Elem& b) const {
        Elem r = make();
        for (int i = 0; i < deg_; i++) r[i] = base_.add(a[i], b[i]);
        return r;
    }
    Elem sub(const Elem& a, const Elem& b) const {
        Elem r = make();
        for (int i = 0; i < deg_; i++) r[i] = base_.sub(a[i], b[i]);
        return r;
    }
    Elem neg(const Elem& a) const {
        Elem r = make();
        for (int i = 0; i < deg_; i++) r[i] = base_.neg(a[i]);
        return r;
    }

    Elem mul(const Elem& a, const Elem& b) const {
        if (deg_ == 1) {
            Elem r = make();
            r[0] = base_.mul(a[0], b[0]);
            return r;
        }
        std::vector<Rep> c(2 * deg_ - 1, base_.zero());
        for (int i = 0; i < deg_; i++) {
            if (base_.is_zero(a[i])) continue;
            for (int j = 0; j < deg_; j++)
                c[i + j] = base_.add(c[i + j], base_.mul(a[i], b[j]));
        }
        reduce(c);
        Elem r = make();
        for (int i = 0; i < deg_; i++) r[i] = c[i];
        return r;
    }

    Elem mul_scalar(const Elem& a, const Rep& s) const {
        Elem r = make();
        for (int i = 0; i < deg_; i++) r[i] = base_.mul(a[i], s);
        return r;
    }

    Elem sqr(const Elem& a) const { return mul(a, a); }

    Elem inv(const Elem& a) const {
        if (deg_ == 1) {
            Elem r = make();
            r[0] = base_.inv(a[0]);
            return r;
        }
        if (is_zero(a)) throw std::domain_error("GF::inv(0)");
        // extended Euclid in B[T] against the modulus
        std::vector<Rep> r0 = mod_, r1(a.begin(), a.end());
        trim(r1);
        std::vector<Rep> t0{base_.zero()}, t1{base_.one()};
        while (!r1.empty()) {
            auto [q, rem] = pdivrem(r0, r1);
            r0 = std::move(r1);
            r1 = std::move(rem);
            auto nt = psub(t0, pmul(q, t1));
            t0 = std::move(t1);
            t1 = std::move(nt);
        }
        if (r0.size() != 1) throw std::domain_error("GF::inv: modulus not irreducible");
        Rep s = base_.inv(r0[0]);
        Elem r = make();
        for (size_t i = 0; i < t0.size(); i++) r[i] = base_.mul(t0[i], s);
        return r;
    }

    Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }

    Elem pow(const Elem& a, Int e) const {
        Elem b = a;
        if (e < 0) {
            b = inv(b);
            e = -e;
        }
        Elem r = one();
        size_t nb = (e == 0) ? 0 : mpz_sizeinbase(e.get_mpz_t(), 2);
        for (size_t i = 0; i < nb; i++) {
            if (mpz_tstbit(e.get_mpz_t(), i)) r = mul(r, b);
            b = mul(b, b);
        }
        return r;
    }

    // a^(p^k); k-fold base-field Frobenius
    Elem frobenius(const Elem& a, int k = 1) const {
        if (deg_ == 1) return a;
        k %= deg_;
        if (k < 0) k += deg_;
        ensure_frob();
        Elem r = a;
        for (int t = 0; t < k; t++) {
            // evaluate r as a poly at T^p (coefficients are fixed by x -> x^p)
            Elem acc = scalar(r[deg_ - 1]);
            for (int i = deg_ - 2; i >= 0; i--) {
                acc = mul(acc, frob_x_);
                acc[0] = base_.add(acc[0], r[i]);
            }
            r = acc;
        }
        return r;
    }

    // multiplicative character: 0 for zero, 1 for squares, -1 otherwise
    int chi(const Elem& a) const {
        if (is_zero(a)) return 0;
        Elem t = pow(a, (order_ - 1) / 2);
        return is_one(t) ? 1 : -1;
    }

    std::optional<Elem> sqrt(const Elem& a) const {
        if (is_zero(a)) return a;
        if (mpz_even_p(char_p().get_mpz_t()))
            throw std::domain_error("GF::sqrt: even characteristic unsupported");
        Int q = order_;
        if (chi(a) != 1) return std::nullopt;
        // Tonelli-Shanks on F_q
        Int t = q - 1;
        unsigned long s = mpz_scan1(t.get_mpz_t(), 0);
        t >>= s;
        if (s == 1) return pow(a, (q + 1) / 4);
        // deterministic non-residue search by enumeration order
        Elem z = zero();
        for (Int idx = 2;; idx += 1) {
            z = from_index(idx);
            if (chi(z) == -1) break;
        }
        Elem c = pow(z, t);
        Elem x = pow(a, (t + 1) / 2);
        Elem d = pow(a, t);
        unsigned long m = s;
        while (!is_one(d)) {
            Elem dd = d;
            unsigned long i = 0;
            while (!is_one(dd)) {
                dd = sqr(dd);
                i++;
            }
            Elem bexp = c;
            for (unsigned long j = 0; j + i + 1 < m; j++) bexp = sqr(bexp);
            x = mul(x, bexp);
            c = sqr(bexp);
            d = mul(d, c);
            m = i;
        }
        return x;
    }

    uint64_t hash(const Elem& a) const {
        uint64_t h = 0xcbf29ce484222325ull;
        for (int i = 0; i < deg_; i++) h = mix64(h ^ rep_hash(base_, a[i]));
        return h;
    }

    std::string to_string(const Elem& a) const {
        std::string s = "[";
        for (int i = 0; i < deg_; i++) {
            if (i) s += ",";
            s += dec(base_.to_int(a[i]));
        }
        return s + "]";
    }

private:
    Elem make() const {
        Elem e;
        e.resize(deg_, base_.zero());
        return e;
    }

    void reduce(std::vector<Rep>& c) const {
        for (int i = (int)c.size() - 1; i >= deg_; i--) {
            Rep lead = c[i];
            if (!base_.is_zero(lead)) {
                for (int j = 0; j < deg_; j++)
                    c[i - deg_ + j] = base_.sub(c[i - deg_ + j], base_.mul(lead, mod_[j]));
            }
            c.pop_back();
        }
    }

    // minimal poly helpers over B used only by inv()
    void trim(std::vector<Rep>& v) const {
        while (!v.empty() && base_.is_zero(v.back())) v.pop_back();
    }
    std::vector<Rep> psub(const std::vector<Rep>& a, const std::vector<Rep>& b) const {
        std::vector<Rep> r(std::max(a.size(), b.size()), base_.zero());
        for (size_t i = 0; i < a.size(); i++) r[i] = a[i];
        for (size_t i = 0; i < b.size(); i++) r[i] = base_.sub(r[i], b[i]);
        trim(r);
        return r;
    }
    std::vector<Rep> pmul(const std::vector<Rep>& a, const std::vector<Rep>& b) const {
        if (a.empty() || b.empty()) return {};
        std::vector<Rep> r(a.size() + b.size() - 1, base_.zero());
        for (size_t i = 0; i < a.size(); i++)
            for (size_t j = 0; j < b.size(); j++)
                r[i + j] = base_.add(r[i + j], base_.mul(a[i], b[j]));
        trim(r);
        return r;
    }
    std::pair<std::vector<Rep>, std::vector<Rep>> pdivrem(std::vector<Rep> a,
                                                          const std::vector<Rep>& b) const {
        std::vector<Rep> q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, base_.zero());
        Rep linv = base_.inv(b.back());
        while (a.size() >= b.size() && !a.empty()) {
            Rep c = base_.mul(a.back(), linv);
            size_t sh = a.size() - b.size();
            q[sh] = c;
            for (size_t i = 0; i < b.size(); i++)
                a[sh + i] = base_.sub(a[sh + i], base_.mul(c, b[i]));
            trim(a);
            if (a.size() < b.size()) break;
        }
        trim(a);
        return {q, a};
    }

    void ensure_frob() const {
        if (!frob_ready_) {
            Elem t = gen();
            frob_x_ = pow(t, base_.p_int());
            frob_ready_ = true;
        }
    }

    B base_;
    std::vector<Rep> mod_;
    int deg_ = 0;
    Int order_;
    mutable Elem frob_x_;
    mutable bool frob_ready_ = false;
};

using GFs = GF<SmallFp>;
using GFb = GF<BigFp>;

} // namespace rmc

#endif
