#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>
#include <utility>

#include "mordell/errors.hpp"

namespace mordell {

// All arithmetic in this library is exact.  Integers are GMP big integers and
// rationals are GMP rationals, which are kept in lowest terms with a positive
// denominator by construction.
using Int = mpz_class;
using Rational = mpq_class;

// gmpxx stops at `long`; these keep 64-bit values exact regardless of the
// platform's long width.
inline Int to_int(long long v) {
    bool neg = v < 0;
    unsigned long long mag =
        neg ? 0ULL - static_cast<unsigned long long>(v) : static_cast<unsigned long long>(v);
    Int r;
    mpz_import(r.get_mpz_t(), 1, 1, sizeof mag, 0, 0, &mag);
    if (neg) mpz_neg(r.get_mpz_t(), r.get_mpz_t());
    return r;
}

inline Rational to_rational(long long num, long long den = 1) {
    if (den == 0) throw precondition_error("zero denominator");
    Rational q(to_int(num), to_int(den));
    q.canonicalize();
    return q;
}

inline Int floor_rational(const Rational& q) {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

inline Int ceil_rational(const Rational& q) {
    Int r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
    return r;
}

inline Int pow_int(unsigned long base, unsigned long exp) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
    return r;
}

inline Int pow_int(const Int& base, unsigned long exp) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

// Serialized form used everywhere (JSON payloads, CLI flags): "num/den" with
// the "/den" omitted when the denominator is 1.  Decimal notation is not
// accepted anywhere, so no silent precision loss is possible.
inline bool is_rational_literal(const std::string& s) {
    std::size_t i = 0;
    if (i < s.size() && s[i] == '-') ++i;
    std::size_t digits = 0;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i, ++digits;
    if (digits == 0) return false;
    if (i == s.size()) return true;
    if (s[i] != '/') return false;
    ++i;
    digits = 0;
    while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i, ++digits;
    return digits > 0 && i == s.size();
}

inline Rational parse_rational(const std::string& s) {
    if (!is_rational_literal(s))
        throw schema_error("not a rational literal (expected \"num\" or \"num/den\"): \"" + s + "\"");
    Rational q;
    if (q.set_str(s, 10) != 0)
        throw schema_error("unparsable rational: \"" + s + "\"");
    if (q.get_den() == 0)
        throw schema_error("zero denominator in rational: \"" + s + "\"");
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }
inline std::string to_string(const Int& n) { return n.get_str(); }

// A rational extended by +infinity, the valuation of zero.  +infinity absorbs
// addition, is the identity for min, and compares greater than every finite
// value.
class ExtendedRational {
public:
    ExtendedRational() : infinite_(false), value_(0) {}
    ExtendedRational(Rational v) : infinite_(false), value_(std::move(v)) {}
    ExtendedRational(long v) : infinite_(false), value_(v) {}

    static ExtendedRational infinity() {
        ExtendedRational e;
        e.infinite_ = true;
        return e;
    }

    bool is_infinite() const { return infinite_; }

    const Rational& finite_value() const {
        if (infinite_) throw precondition_error("finite_value() on +inf");
        return value_;
    }

    friend ExtendedRational operator+(const ExtendedRational& a, const ExtendedRational& b) {
        if (a.infinite_ || b.infinite_) return infinity();
        return ExtendedRational(a.value_ + b.value_);
    }

    friend ExtendedRational min(const ExtendedRational& a, const ExtendedRational& b) {
        return a < b ? a : b;
    }

    friend bool operator==(const ExtendedRational& a, const ExtendedRational& b) {
        if (a.infinite_ != b.infinite_) return false;
        return a.infinite_ || a.value_ == b.value_;
    }

    friend bool operator<(const ExtendedRational& a, const ExtendedRational& b) {
        if (a.infinite_) return false;
        if (b.infinite_) return true;
        return a.value_ < b.value_;
    }

    friend bool operator!=(const ExtendedRational& a, const ExtendedRational& b) { return !(a == b); }
    friend bool operator>(const ExtendedRational& a, const ExtendedRational& b) { return b < a; }
    friend bool operator<=(const ExtendedRational& a, const ExtendedRational& b) { return !(b < a); }
    friend bool operator>=(const ExtendedRational& a, const ExtendedRational& b) { return !(a < b); }

    std::string str() const { return infinite_ ? "inf" : to_string(value_); }

    static ExtendedRational parse(const std::string& s) {
        if (s == "inf") return infinity();
        return ExtendedRational(parse_rational(s));
    }

private:
    bool infinite_;
    Rational value_;
};

} // namespace mordell
