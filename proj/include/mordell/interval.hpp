#pragma once

#include <mpfr.h>

#include "mordell/errors.hpp"
#include "mordell/rational.hpp"

namespace mordell {

constexpr unsigned default_interval_precision = 128;

// An interval [lo, hi] with exact rational endpoints, enclosing the real value
// of a transcendental expression.  Endpoints come from MPFR evaluated with
// outward rounding, then converted exactly (every finite MPFR value is
// m * 2^e, a rational).  A claim about the enclosed number is asserted only
// when the whole interval satisfies it.
struct CertifiedInterval {
    Rational lo;
    Rational hi;

    CertifiedInterval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw invariant_error("certified interval with lo > hi");
    }

    bool certainly_ge(const Rational& c) const { return lo >= c; }
    bool certainly_le(const Rational& c) const { return hi <= c; }
    bool certainly_lt(const Rational& c) const { return hi < c; }
};

namespace detail {

inline Rational mpfr_to_rational_exact(const mpfr_t x) {
    if (mpfr_zero_p(x)) return Rational(0);
    if (!mpfr_number_p(x)) throw invariant_error("non-finite value in certified interval");
    Int m;
    long e = mpfr_get_z_2exp(m.get_mpz_t(), x);
    Rational q;
    if (e >= 0) {
        q = Rational(m * pow_int(Int(2), static_cast<unsigned long>(e)));
    } else {
        q = Rational(m, pow_int(Int(2), static_cast<unsigned long>(-e)));
    }
    q.canonicalize();
    return q;
}

} // namespace detail

// Enclosure of ln(n) for an integer n >= 1.
inline CertifiedInterval certified_ln(unsigned long n, unsigned prec = default_interval_precision) {
    if (n < 1) throw precondition_error("certified_ln requires n >= 1");
    mpfr_t lo, hi;
    mpfr_init2(lo, prec);
    mpfr_init2(hi, prec);
    mpfr_set_ui(lo, n, MPFR_RNDD);
    mpfr_log(lo, lo, MPFR_RNDD);
    mpfr_set_ui(hi, n, MPFR_RNDU);
    mpfr_log(hi, hi, MPFR_RNDU);
    Rational rlo = detail::mpfr_to_rational_exact(lo);
    Rational rhi = detail::mpfr_to_rational_exact(hi);
    mpfr_clear(lo);
    mpfr_clear(hi);
    return CertifiedInterval(rlo, rhi);
}

// Enclosure of exp(u) over a rational interval.
inline CertifiedInterval certified_exp(const CertifiedInterval& u,
                                       unsigned prec = default_interval_precision) {
    mpfr_t lo, hi;
    mpfr_init2(lo, prec);
    mpfr_init2(hi, prec);
    mpfr_set_q(lo, u.lo.get_mpq_t(), MPFR_RNDD);
    mpfr_exp(lo, lo, MPFR_RNDD);
    mpfr_set_q(hi, u.hi.get_mpq_t(), MPFR_RNDU);
    mpfr_exp(hi, hi, MPFR_RNDU);
    Rational rlo = detail::mpfr_to_rational_exact(lo);
    Rational rhi = detail::mpfr_to_rational_exact(hi);
    mpfr_clear(lo);
    mpfr_clear(hi);
    return CertifiedInterval(rlo, rhi);
}

// Scaling by an exact positive rational keeps endpoints exact.
inline CertifiedInterval scale(const CertifiedInterval& iv, const Rational& c) {
    if (c <= 0) throw precondition_error("interval scale factor must be positive");
    return CertifiedInterval(iv.lo * c, iv.hi * c);
}

// c / iv for c > 0 and an interval of positive numbers.
inline CertifiedInterval divide_into(const Rational& c, const CertifiedInterval& iv) {
    if (c <= 0 || iv.lo <= 0) throw precondition_error("divide_into requires positive operands");
    return CertifiedInterval(c / iv.hi, c / iv.lo);
}

// Certification of r * ln(p) >= 1, the hypothesis under which the short-form
// correction bounds apply.  Indeterminate at the configured precision counts
// as "not certified".
inline bool certify_r_ln_p_ge_one(const Rational& r, unsigned long p,
                                  unsigned prec = default_interval_precision) {
    if (r <= 0) return false;
    return scale(certified_ln(p, prec), r).certainly_ge(Rational(1));
}

} // namespace mordell
