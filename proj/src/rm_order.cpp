#include "rmc/rm_order.hpp"

#include <algorithm>
#include <cstdlib>

namespace rmc {

SmallElemResult rm_small_element(const RmOrder& R, long ell, long lambda) {
    const bool eta7 = (R == rm_eta7());
    long Ba, Bb, Bc, rmax;
    if (eta7) {
        Ba = rm_box_radius(2415, 1000, ell);
        Bb = rm_box_radius(1850, 1000, ell);
        Bc = rm_box_radius(1764, 1000, ell);
        rmax = std::max({Ba, Bb, Bc});
    } else {
        // grow a cube; theory guarantees a hit at O(ell^(1/3))
        Ba = Bb = Bc = rmax = rm_box_radius(10, 1, ell) + 4;
    }
    Int lam(lambda), lam2 = lam * lam;
    for (long r = 0; r <= rmax; r++) {
        long ra = std::min(r, Ba), rb = std::min(r, Bb), rc = std::min(r, Bc);
        for (long a = -ra; a <= ra; a++)
            for (long b = -rb; b <= rb; b++)
                for (long c = -rc; c <= rc; c++) {
                    if (std::max({std::labs(a), std::labs(b), std::labs(c)}) != r) continue;
                    Int cong = a + b * lam + c * lam2;
                    if (mod_floor(cong, ell) != 0) continue;
                    OrderElem cand{a, b, c};
                    Int N = rm_norm(R, cand);
                    if (N == 0) continue;
                    if (mod_floor(N, ell) != 0) continue;
                    if (mod_floor(N, Int(ell) * ell * ell) == 0) continue;
                    return {cand, N, r};
                }
    }
    throw NoSmallElement("rm_small_element: no element in search region for ell=" +
                         std::to_string(ell) + " lambda=" + std::to_string(lambda));
}

namespace {

using QPoly = std::vector<Rat>;  // low-to-high, trimmed

void qtrim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

Rat qeval(const QPoly& p, const Rat& x) {
    Rat acc = 0;
    for (size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
    return acc;
}

QPoly qderiv(const QPoly& p) {
    QPoly r;
    for (size_t i = 1; i < p.size(); i++) r.push_back(p[i] * (long)i);
    return r;
}

QPoly qrem(QPoly a, const QPoly& b) {
    while (a.size() >= b.size() && !a.empty()) {
        Rat c = a.back() / b.back();
        size_t sh = a.size() - b.size();
        for (size_t i = 0; i < b.size(); i++) a[sh + i] -= c * b[i];
        qtrim(a);
        if (a.size() < b.size()) break;
    }
    qtrim(a);
    return a;
}

int qsign(const Rat& v) { return sgn(v); }

// number of sign changes of the Sturm chain at x
int sturm_var(const std::vector<QPoly>& chain, const Rat& x) {
    int var = 0, last = 0;
    for (const auto& p : chain) {
        int s = qsign(qeval(p, x));
        if (s == 0) continue;
        if (last != 0 && s != last) var++;
        last = s;
    }
    return var;
}

struct QI {
    Rat lo, hi;
};

QI qi_add(const QI& a, const QI& b) { return {a.lo + b.lo, a.hi + b.hi}; }
QI qi_sub(const QI& a, const QI& b) { return {a.lo - b.hi, a.hi - b.lo}; }
QI qi_neg(const QI& a) { return {-a.hi, -a.lo}; }
QI qi_mul(const QI& a, const QI& b) {
    Rat p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return {std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4})};
}
QI qi_inv(const QI& a) {
    if (a.lo <= 0 && a.hi >= 0) throw std::logic_error("interval inverse through zero");
    return {1 / a.hi, 1 / a.lo};
}
Rat qi_abs_hi(const QI& a) { return std::max(Rat(abs(a.lo)), Rat(abs(a.hi))); }

} // namespace

Rat rm_cabc_upper(const RmOrder& R) {
    if (R.disc() <= 0)
        throw std::domain_error("rm_cabc_upper: minimal polynomial not totally real / separable");
    QPoly m{Rat(R.mu0), Rat(R.mu1), Rat(R.mu2), Rat(1)};
    std::vector<QPoly> chain{m, qderiv(m)};
    for (;;) {
        QPoly r = qrem(chain[chain.size() - 2], chain.back());
        if (r.empty()) break;
        for (auto& c : r) c = -c;
        chain.push_back(r);
    }

    Rat M = 1;
    for (const Int* c : {&R.mu0, &R.mu1, &R.mu2}) M = std::max(M, Rat(abs(*c)));
    M += 1;  // Cauchy bound

    // isolate the three real roots by Sturm bisection
    struct Iv {
        Rat lo, hi;
        int n;
    };
    std::vector<Iv> work{{-M, M, sturm_var(chain, -M) - sturm_var(chain, M)}}, isolated;
    while (!work.empty()) {
        Iv iv = work.back();
        work.pop_back();
        if (iv.n == 0) continue;
        if (iv.n == 1) {
            isolated.push_back(iv);
            continue;
        }
        Rat mid = (iv.lo + iv.hi) / 2;
        if (qeval(m, mid) == 0) {
            isolated.push_back({mid, mid, 1});
            Rat eps = (iv.hi - iv.lo) / 1024;
            int nl = sturm_var(chain, iv.lo) - sturm_var(chain, mid - eps);
            int nr = sturm_var(chain, mid + eps) - sturm_var(chain, iv.hi);
            if (nl > 0) work.push_back({iv.lo, mid - eps, nl});
            if (nr > 0) work.push_back({mid + eps, iv.hi, nr});
            continue;
        }
        int nl = sturm_var(chain, iv.lo) - sturm_var(chain, mid);
        work.push_back({iv.lo, mid, nl});
        work.push_back({mid, iv.hi, iv.n - nl});
    }
    if (isolated.size() != 3) throw std::logic_error("rm_cabc_upper: root isolation failed");

    // refine by ordinary sign bisection to high precision
    for (auto& iv : isolated) {
        if (iv.lo == iv.hi) continue;
        int slo = qsign(qeval(m, iv.lo));
        for (int it = 0; it < 80; it++) {
            Rat mid = (iv.lo + iv.hi) / 2;
            int sm = qsign(qeval(m, mid));
            if (sm == 0) {
                iv.lo = iv.hi = mid;
                break;
            }
            if (sm == slo)
                iv.lo = mid;
            else
                iv.hi = mid;
        }
    }
    std::sort(isolated.begin(), isolated.end(), [](const Iv& a, const Iv& b) { return a.lo < b.lo; });
    for (int i = 0; i < 2; i++)
        if (!(isolated[i].hi < isolated[i + 1].lo))
            throw std::logic_error("rm_cabc_upper: intervals not separated");

    QI r[3];
    for (int i = 0; i < 3; i++) r[i] = {isolated[i].lo, isolated[i].hi};

    // inverse Vandermonde rows are Lagrange basis coefficients:
    // L_i = (T - r_j)(T - r_k) / ((r_i - r_j)(r_i - r_k))
    Rat best = 0;
    for (int row = 0; row < 3; row++) {  // coefficient of T^row
        Rat sum = 0;
        for (int i = 0; i < 3; i++) {
            int j = (i + 1) % 3, k = (i + 2) % 3;
            QI D = qi_mul(qi_sub(r[i], r[j]), qi_sub(r[i], r[k]));
            QI num;
            if (row == 0)
                num = qi_mul(r[j], r[k]);
            else if (row == 1)
                num = qi_neg(qi_add(r[j], r[k]));
            else
                num = {Rat(1), Rat(1)};
            sum += qi_abs_hi(qi_mul(num, qi_inv(D)));
        }
        best = std::max(best, sum);
    }
    Rat out = 2 * best;
    out.canonicalize();
    return out;
}

} // namespace rmc
