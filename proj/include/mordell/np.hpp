#pragma once

#include <vector>

#include "mordell/errors.hpp"
#include "mordell/interval.hpp"
#include "mordell/rational.hpp"

namespace mordell {

inline bool is_prime(unsigned long n) {
    Int t(static_cast<unsigned long>(n));
    return mpz_probab_prime_p(t.get_mpz_t(), 40) > 0;
}

inline void require_prime(unsigned long p) {
    if (!is_prime(p)) throw precondition_error("p = " + std::to_string(p) + " is not prime");
}

// Largest k with p^k dividing n; n must be nonzero (valuation of 0 is +inf and
// must be handled by the caller through ExtendedRational).
inline unsigned long padic_valuation(unsigned long p, const Int& n) {
    require_prime(p);
    if (n == 0) throw precondition_error("padic_valuation of 0 (use ExtendedRational::infinity)");
    Int m = abs(n);
    Int q, rem;
    Int pz(p);
    unsigned long k = 0;
    for (;;) {
        mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), m.get_mpz_t(), pz.get_mpz_t());
        if (rem != 0) return k;
        m = q;
        ++k;
    }
}

inline unsigned long padic_valuation(unsigned long p, long long n) {
    return padic_valuation(p, Int(static_cast<long>(n)));
}

// Largest k with p^k <= n, by exact integer comparison.
inline unsigned long floor_log(unsigned long p, const Int& n) {
    require_prime(p);
    if (n < 1) throw precondition_error("floor_log requires n >= 1");
    unsigned long k = 0;
    Int pk(p);
    while (pk <= n) {
        pk *= static_cast<unsigned long>(p);
        ++k;
    }
    return k;
}

inline unsigned long floor_log(unsigned long p, long long n) {
    return floor_log(p, Int(static_cast<long>(n)));
}

// One entry per block [p^k, p^{k+1}) that contains a violation of
// r*(n - n0) > floor(log_p n); `largest` is the largest violating n there.
struct BlockViolator {
    unsigned long k;
    Int largest;
};

namespace detail {

// Correction function core.  np(p, r, n0) is the smallest positive integer N
// such that r*(n - n0) > floor(log_p n) for every n >= N.  A violating n in
// block k satisfies n <= n0 + k/r, so the largest violator in block k is
// min(p^{k+1} - 1, n0 + floor(k/r)) whenever that is >= p^k.  Blocks are
// scanned upward; once p^k > n0 + k/r (exactly) and r*p^k*(p-1) > 1, the block
// start outgrows the violation ceiling faster than the ceiling moves, so no
// later block can contain a violation and the scan stops.  This takes
// O(log_p(1/r)) blocks, which keeps radii with hundreds of digits in the
// denominator cheap.
inline Int np_blocks(unsigned long p, const Rational& r, const Int& n0,
                     std::vector<BlockViolator>* violators) {
    require_prime(p);
    if (r <= 0) throw precondition_error("np_value requires r > 0");
    const Int num = r.get_num();
    const Int den = r.get_den();
    Int best = 0;
    bool any = false;
    Int pk = 1;
    for (unsigned long k = 0;; ++k, pk *= static_cast<unsigned long>(p)) {
        Int kden = Int(k) * den;
        // ceiling of violating n in this block: n0 + floor(k/r)
        Int limit = n0;
        {
            Int f;
            mpz_fdiv_q(f.get_mpz_t(), kden.get_mpz_t(), num.get_mpz_t());
            limit += f;
        }
        bool strictly_above = pk * num > n0 * num + kden; // p^k > n0 + k/r, exact
        if (strictly_above && num * pk * static_cast<unsigned long>(p - 1) > den) break;
        if (pk <= limit) {
            Int top = pk * static_cast<unsigned long>(p) - 1;
            Int v = top < limit ? top : limit;
            any = true;
            if (v > best) best = v;
            if (violators) violators->push_back(BlockViolator{k, v});
        }
    }
    return any ? Int(best + 1) : Int(1);
}

} // namespace detail

inline Int np_value(unsigned long p, const Rational& r, const Int& n0) {
    return detail::np_blocks(p, r, n0, nullptr);
}

inline Int np_value(unsigned long p, const Rational& r, long long n0) {
    return np_value(p, r, Int(static_cast<long>(n0)));
}

inline std::vector<BlockViolator> np_violating_blocks(unsigned long p, const Rational& r,
                                                      const Int& n0) {
    std::vector<BlockViolator> v;
    detail::np_blocks(p, r, n0, &v);
    return v;
}

// A cutoff c certifies a linear scan when
//   (1) r*(c - n0) > floor(log_p c)        -- the rest of c's block is clean,
//   (2) r*p^k*(p-1) > 1 at k = floor(log_p c),
//   (3) p^(k+1) > n0 + (k+1)/r             -- the next block is clean;
// (2) and (3) then propagate cleanliness to every later block.
inline bool np_cutoff_certified(unsigned long p, const Rational& r, const Int& n0,
                                const Int& cutoff) {
    require_prime(p);
    if (r <= 0 || cutoff < 1) return false;
    const Int num = r.get_num();
    const Int den = r.get_den();
    unsigned long k = floor_log(p, cutoff);
    if (!((cutoff - n0) * num > Int(k) * den)) return false;
    Int pk = pow_int(p, k);
    if (!(num * pk * static_cast<unsigned long>(p - 1) > den)) return false;
    Int pk1 = pk * static_cast<unsigned long>(p);
    if (!(pk1 * num > n0 * num + Int(k + 1) * den)) return false;
    return true;
}

// Independent oracle for np_value: a plain linear scan of n = 1..cutoff.
// Rejects cutoffs that cannot be certified free of later violations.
inline Int np_naive(unsigned long p, const Rational& r, const Int& n0, const Int& cutoff) {
    if (!np_cutoff_certified(p, r, n0, cutoff))
        throw precondition_error("np_naive cutoff is not certified safe");
    const Int num = r.get_num();
    const Int den = r.get_den();
    Int best = 0;
    bool any = false;
    unsigned long k = 0;
    Int next_power(p);
    for (Int n = 1; n <= cutoff; ++n) {
        if (n >= next_power) {
            ++k;
            next_power *= static_cast<unsigned long>(p);
        }
        if ((n - n0) * num <= Int(k) * den) {
            any = true;
            best = n;
        }
    }
    return any ? Int(best + 1) : Int(1);
}

inline Int np_naive(unsigned long p, const Rational& r, long long n0, long long cutoff) {
    return np_naive(p, r, Int(static_cast<long>(n0)), Int(static_cast<long>(cutoff)));
}

// Closed-form upper bound for the correction function, certified by interval
// arithmetic.  For n0 >= 1 with r*ln(p) >= 1 certified the bound is 2*n0;
// otherwise the exponential form
//     ceil(n0 * exp(2/(n0 r ln p)))        for n0 <= 7,
//     ceil(n0^(1 + 1/(n0 r ln p)))         for n0 >= 8
// is evaluated with outward rounding.  For n0 <= 0 the bound 1 is returned
// exactly when r*ln(p) >= 1 is certified (then k/r <= k ln p < p^k for all
// k >= 1, so no block violates); failing that, the result falls back to the
// exact np_value and is flagged as not coming from the closed form.
struct RemarkBound {
    Int bound;
    bool certified;   // the closed-form derivation applies and was certified
    bool via_two_n0;  // the 2*n0 short form was used
};

inline RemarkBound np_upper_bound_remark(unsigned long p, const Rational& r, const Int& n0,
                                         unsigned prec = default_interval_precision) {
    require_prime(p);
    if (r <= 0) throw precondition_error("np_upper_bound_remark requires r > 0");
    const bool short_form_ok = certify_r_ln_p_ge_one(r, p, prec);
    if (n0 <= 0) {
        if (short_form_ok) return RemarkBound{Int(1), true, false};
        return RemarkBound{np_value(p, r, n0), false, false};
    }
    if (short_form_ok) return RemarkBound{Int(2 * n0), true, true};
    if (!n0.fits_ulong_p()) return RemarkBound{np_value(p, r, n0), false, false};

    CertifiedInterval lnp = certified_ln(p, prec);
    Rational n0r = Rational(n0) * r;
    CertifiedInterval denom = scale(lnp, n0r); // n0 * r * ln(p)
    CertifiedInterval u = n0 <= 7 ? divide_into(Rational(2), denom)
                                  : [&] {
                                        CertifiedInterval lnn0 =
                                            certified_ln(n0.get_ui(), prec);
                                        return CertifiedInterval(lnn0.lo / denom.hi,
                                                                 lnn0.hi / denom.lo);
                                    }();
    CertifiedInterval e = certified_exp(u, prec);
    Int bound = ceil_rational(Rational(n0) * e.hi);
    return RemarkBound{bound, true, false};
}

inline RemarkBound np_upper_bound_remark(unsigned long p, const Rational& r, long long n0,
                                         unsigned prec = default_interval_precision) {
    return np_upper_bound_remark(p, r, Int(static_cast<long>(n0)), prec);
}

} // namespace mordell
