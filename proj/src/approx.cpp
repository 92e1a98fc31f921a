#include "gtp/approx.hpp"

#include "gtp/error.hpp"

namespace gtp {

namespace {

Rat pow2_inv(unsigned bits) {
    Rat r(1, Int(1) << bits);
    r.canonicalize();
    return r;
}

Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

// exp on |u| <= 1/2 by Taylor series; tail after the last added term is
// bounded by that term's magnitude.
Bounds exp_small(const Rat& u, unsigned work) {
    Rat tol = pow2_inv(work);
    Rat sum(1), term(1);
    long i = 1;
    for (;;) {
        term *= u;
        term /= i;
        sum += term;
        if (rat_abs(term) <= tol) break;
        ++i;
    }
    return {round_down(sum - tol - rat_abs(term), work), round_up(sum + tol + rat_abs(term), work)};
}

}  // namespace

Bounds exp_bounds(const Rat& x, unsigned bits) {
    Rat u = x;
    unsigned k = 0;
    Rat half(1, 2);
    while (rat_abs(u) > half) {
        u /= 2;
        ++k;
    }
    // Guard bits cover the k squarings and the magnitude of exp(x).
    unsigned mag = 0;
    Rat ax = rat_abs(x);
    while (ax > mag) ++mag;
    unsigned work = bits + k + 2 * mag + 16;
    Bounds b = exp_small(u, work);
    if (b.lo < 0) b.lo = 0;
    for (unsigned j = 0; j < k; ++j) {
        b.lo = round_down(b.lo * b.lo, work);
        b.hi = round_up(b.hi * b.hi, work);
        if (b.lo < 0) b.lo = 0;
    }
    return b;
}

namespace {

// log m for m in [1/2, 2] via atanh series: log m = 2*sum u^(2i+1)/(2i+1),
// u = (m-1)/(m+1), |u| <= 1/3.
Bounds log_near_one(const Rat& m, unsigned work) {
    Rat tol = pow2_inv(work);
    Rat u = (m - 1) / (m + 1);
    Rat u2 = u * u;
    Rat term = u;  // u^(2i+1)
    Rat sum(0);
    long i = 0;
    for (;;) {
        sum += term / (2 * i + 1);
        Rat next = rat_abs(term) * u2;
        // Tail: 2*sum_{j>i} |u|^(2j+1)/(2j+1) <= |u|^(2i+3)/(1-u^2) <= 2|u|^(2i+3)
        if (2 * next <= tol) {
            Rat s2 = 2 * sum;
            return {round_down(s2 - 2 * next - tol, work), round_up(s2 + 2 * next + tol, work)};
        }
        term *= u2;
        ++i;
    }
}

}  // namespace

Bounds log_bounds(const Rat& x, unsigned bits) {
    if (x <= 0) fail("BadInput", "log of nonpositive value");
    unsigned work = bits + 32;
    Rat m = x;
    long e = 0;
    while (m >= 2) {
        m /= 2;
        ++e;
    }
    while (m < 1) {
        m *= 2;
        --e;
    }
    Bounds lm = log_near_one(m, work);
    if (e == 0) return lm;
    Bounds l2 = log_near_one(Rat(2), work);
    Rat elo, ehi;
    if (e > 0) {
        elo = l2.lo * e;
        ehi = l2.hi * e;
    } else {
        elo = l2.hi * e;
        ehi = l2.lo * e;
    }
    return {round_down(lm.lo + elo, work), round_up(lm.hi + ehi, work)};
}

Bounds sqrt_bounds(const Rat& x, unsigned bits) {
    if (x < 0) fail("BadInput", "sqrt of negative value");
    // sqrt(p/q) = sqrt(p*q)/q; floor integer sqrt at scale 2^bits.
    Int p = x.get_num(), q = x.get_den();
    Int scaled = p * q << (2 * bits);
    Int s;
    mpz_sqrt(s.get_mpz_t(), scaled.get_mpz_t());
    Rat denom(q * (Int(1) << bits));
    Rat lo(s);
    lo /= denom;
    Rat hi(s + 1);
    hi /= denom;
    return {lo, hi};
}

}  // namespace gtp
