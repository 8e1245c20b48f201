#pragma once

#include <map>
#include <optional>
#include <vector>

#include "mordell/errors.hpp"
#include "mordell/np.hpp"
#include "mordell/rational.hpp"

namespace mordell {

enum class SeriesMode { annulus, disc };

// Tropicalization of a Laurent (or power) series: the finite map
// n -> val(a_n) over its support, together with the ambient domain.  For an
// annulus the modulus is the valuation-length of the domain; coordinates are
// chosen so the point at logarithmic radius r in (0, modulus) evaluates the
// series through min{val(a_n) + n*r}.  Terms with val = +inf (zero
// coefficients) are simply absent.  A convergent series can be truncated to
// this finite form without changing any evaluation, slope, or zero count on a
// compact subdomain once the dropped terms have strictly larger val(a_n)+n*r
// throughout it.
class ValuationSeries {
public:
    ValuationSeries(unsigned long p, SeriesMode mode, Rational modulus,
                    std::map<long long, Rational> terms)
        : p_(p), mode_(mode), modulus_(std::move(modulus)), terms_(std::move(terms)) {
        require_prime(p_);
        if (terms_.empty()) throw precondition_error("valuation series must have nonempty support");
        if (mode_ == SeriesMode::annulus) {
            if (modulus_ <= 0) throw precondition_error("annulus modulus must be positive");
        } else {
            modulus_ = 0;
            if (terms_.begin()->first < 0)
                throw precondition_error("disc series cannot have negative exponents");
        }
    }

    static ValuationSeries annulus(unsigned long p, Rational modulus,
                                   std::map<long long, Rational> terms) {
        return ValuationSeries(p, SeriesMode::annulus, std::move(modulus), std::move(terms));
    }

    static ValuationSeries disc(unsigned long p, std::map<long long, Rational> terms) {
        return ValuationSeries(p, SeriesMode::disc, Rational(0), std::move(terms));
    }

    unsigned long prime() const { return p_; }
    SeriesMode mode() const { return mode_; }
    const Rational& modulus() const { return modulus_; }
    const std::map<long long, Rational>& terms() const { return terms_; }

    void require_radius(const Rational& r) const {
        if (r <= 0) throw precondition_error("radius must be positive");
        if (mode_ == SeriesMode::annulus && r >= modulus_)
            throw precondition_error("radius must be strictly inside the annulus (r < modulus)");
    }

private:
    unsigned long p_;
    SeriesMode mode_;
    Rational modulus_;
    std::map<long long, Rational> terms_;
};

// min{val(a_n) + n*r} over the support.
inline Rational tropical_eval(const ValuationSeries& s, const Rational& r) {
    s.require_radius(r);
    bool first = true;
    Rational best;
    for (const auto& [n, v] : s.terms()) {
        Rational cand = v + to_rational(n) * r;
        if (first || cand < best) {
            best = cand;
            first = false;
        }
    }
    return best;
}

struct AttainingSet {
    long long n_min;
    long long n_max;
};

// Smallest and largest exponents achieving the minimum; ties are detected
// exactly and never perturbed.
inline AttainingSet attaining_set(const ValuationSeries& s, const Rational& r) {
    s.require_radius(r);
    bool first = true;
    Rational best;
    long long n_min = 0, n_max = 0;
    for (const auto& [n, v] : s.terms()) {
        Rational cand = v + to_rational(n) * r;
        if (first || cand < best) {
            best = cand;
            n_min = n_max = n;
            first = false;
        } else if (cand == best) {
            n_max = n;
        }
    }
    return AttainingSet{n_min, n_max};
}

// Direction convention: the radius increases from the outer end (r -> 0)
// toward the inner end (r -> modulus).  toward_inner is the tangent direction
// of decreasing r, toward_outer of increasing r.
enum class Direction { toward_inner, toward_outer };

inline long long slope(const ValuationSeries& s, const Rational& r, Direction dir) {
    AttainingSet a = attaining_set(s, r);
    return dir == Direction::toward_inner ? -a.n_max : a.n_min;
}

struct HullSegment {
    long long left;
    long long right;
    Rational slope;
};

struct NewtonHull {
    std::vector<std::pair<long long, Rational>> vertices;
    std::vector<HullSegment> segments; // slopes strictly increase left to right
};

// Lower convex hull of {(n, val(a_n))} by a monotone-chain sweep with exact
// rational turn predicates, clipped to the slopes realizable in the domain:
// (-modulus, 0) for an annulus, (-inf, 0) for a disc.  A vertex is kept when
// some radius in the closed domain selects it.
inline NewtonHull lower_hull(const ValuationSeries& s) {
    std::vector<std::pair<long long, Rational>> pts(s.terms().begin(), s.terms().end());
    std::vector<std::pair<long long, Rational>> chain;
    for (const auto& pt : pts) {
        while (chain.size() >= 2) {
            const auto& a = chain[chain.size() - 2];
            const auto& b = chain[chain.size() - 1];
            // pop b unless (a -> b -> pt) turns strictly left
            Rational lhs = (b.second - a.second) * to_rational(pt.first - a.first);
            Rational rhs = (pt.second - a.second) * to_rational(b.first - a.first);
            if (lhs < rhs) break;
            chain.pop_back();
        }
        chain.push_back(pt);
    }

    std::vector<Rational> slopes; // slopes[i] between chain[i] and chain[i+1]
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
        slopes.push_back((chain[i + 1].second - chain[i].second) /
                         to_rational(chain[i + 1].first - chain[i].first));

    const bool is_annulus = s.mode() == SeriesMode::annulus;
    const Rational window_hi(0);
    const Rational window_lo = is_annulus ? Rational(-s.modulus()) : Rational(0);

    NewtonHull hull;
    std::vector<bool> keep(chain.size(), false);
    for (std::size_t i = 0; i < chain.size(); ++i) {
        // slope interval at this vertex, with sentinels at the ends
        bool left_ok = i == 0 || slopes[i - 1] <= window_hi;
        bool right_ok = i + 1 == chain.size() || !is_annulus || slopes[i] >= window_lo;
        keep[i] = left_ok && right_ok;
    }
    for (std::size_t i = 0; i < chain.size(); ++i)
        if (keep[i]) hull.vertices.push_back(chain[i]);
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
        bool inside = slopes[i] < window_hi && (!is_annulus || slopes[i] > window_lo);
        if (inside) hull.segments.push_back(HullSegment{chain[i].first, chain[i + 1].first, slopes[i]});
    }
    return hull;
}

// Tropical antidifferentiation of omega = sum a_n T^n dT/T: the term at
// exponent n maps to val(a_n) - val(n).  A term at n = 0 is a nonzero residue
// and is rejected.  The integration constant at exponent 0 is supplied by the
// caller when needed; by default it is omitted.
inline ValuationSeries antiderivative(const ValuationSeries& s,
                                      std::optional<Rational> constant_val = std::nullopt) {
    std::map<long long, Rational> out;
    for (const auto& [n, v] : s.terms()) {
        if (n == 0)
            throw residue_obstruction_error(
                "series has a nonzero residue term at exponent 0; no single-valued antiderivative");
        out[n] = v - Rational(static_cast<long>(padic_valuation(s.prime(), n)));
    }
    if (constant_val) out[0] = *constant_val;
    return ValuationSeries(s.prime(), s.mode(), s.modulus(), std::move(out));
}

// End slope datum at the inner end of an annulus: the negative of the largest
// exponent attaining min{val(a_n) + n*modulus}.
inline long long end_slope_n0(const ValuationSeries& s) {
    if (s.mode() != SeriesMode::annulus)
        throw precondition_error("end_slope_n0 is defined for annulus-mode series only");
    bool first = true;
    Rational best;
    long long n_max = 0;
    for (const auto& [n, v] : s.terms()) {
        Rational cand = v + to_rational(n) * s.modulus();
        if (first || cand < best) {
            best = cand;
            n_max = n;
            first = false;
        } else if (cand == best) {
            n_max = n;
        }
    }
    return -n_max;
}

struct AnnularBoundReport {
    long long slope_found; // slope of the antiderivative at radius r, toward_inner
    long long n0;          // end slope datum of the integrand
    Int bound;             // correction value np(p, modulus - r, n0)
    bool holds;            // slope_found <= bound; a theorem, must always hold
};

// The annular slope bound: integrate, take the slope toward the outer end at
// radius r, and compare with the correction function at the remaining width.
inline AnnularBoundReport verify_annular_bound(const ValuationSeries& omega, const Rational& r) {
    if (omega.mode() != SeriesMode::annulus)
        throw precondition_error("verify_annular_bound needs an annulus-mode series");
    omega.require_radius(r);
    ValuationSeries f = antiderivative(omega);
    long long sl = slope(f, r, Direction::toward_inner);
    long long n0 = end_slope_n0(omega);
    Int bound = np_value(omega.prime(), omega.modulus() - r, to_int(n0));
    bool holds = to_int(sl) <= bound;
    return AnnularBoundReport{sl, n0, bound, holds};
}

// Number of zeros (with multiplicity) of valuation > r of a disc-mode series:
// the horizontal extent of the Newton polygon strictly left of the radius-r
// supporting line, which is the smallest attaining exponent.
inline long long zeros_in_open_subdisc(const ValuationSeries& f, const Rational& r) {
    if (f.mode() != SeriesMode::disc)
        throw precondition_error("zeros_in_open_subdisc needs a disc-mode series; "
                                 "use zeros_in_subannulus for annuli");
    return attaining_set(f, r).n_min;
}

// Number of zeros with valuation strictly between r1 and r2, as the hull
// extent between the two attaining sets.
inline long long zeros_in_subannulus(const ValuationSeries& f, const Rational& r1,
                                     const Rational& r2) {
    if (!(r1 < r2)) throw precondition_error("zeros_in_subannulus requires r1 < r2");
    long long lo = attaining_set(f, r1).n_min;
    long long hi = attaining_set(f, r2).n_max;
    return lo - hi;
}

} // namespace mordell
