#include <doctest.h>

#include <map>
#include <random>

#include "mordell/series.hpp"

using namespace mordell;

namespace {

Rational rat(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// The worked annulus dataset: exponents -7..1 with half-integer valuations,
// logarithmic modulus 1.
ValuationSeries figure_series() {
    std::map<long long, Rational> t{{-7, rat(7, 2)}, {-6, rat(2)},    {-5, rat(3)},
                                    {-4, rat(1)},    {-3, rat(2)},    {-2, rat(3, 2)},
                                    {-1, rat(3)},    {0, rat(2)},     {1, rat(-1, 2)}};
    return ValuationSeries::annulus(3, rat(1), std::move(t));
}

ValuationSeries cubic_disc() {
    return ValuationSeries::disc(3, {{1, rat(0)}, {3, rat(-1)}});
}

} // namespace

TEST_CASE("series validation") {
    CHECK_THROWS_AS(ValuationSeries::annulus(3, rat(1), {}), precondition_error);
    CHECK_THROWS_AS(ValuationSeries::annulus(3, rat(0), {{0, rat(1)}}), precondition_error);
    CHECK_THROWS_AS(ValuationSeries::disc(3, {{-1, rat(0)}}), precondition_error);
    CHECK_THROWS_AS(ValuationSeries::disc(4, {{0, rat(0)}}), precondition_error);
    ValuationSeries ok = figure_series();
    CHECK_THROWS_AS(tropical_eval(ok, rat(1)), precondition_error);   // r = modulus
    CHECK_THROWS_AS(tropical_eval(ok, rat(3, 2)), precondition_error);
    CHECK_THROWS_AS(tropical_eval(ok, rat(0)), precondition_error);
    CHECK_THROWS_AS(tropical_eval(cubic_disc(), rat(-1)), precondition_error);
    CHECK_NOTHROW(tropical_eval(cubic_disc(), rat(100))); // discs have no inner cap
}

TEST_CASE("evaluation and slopes on the worked dataset") {
    ValuationSeries s = figure_series();
    CHECK(tropical_eval(s, rat(1, 2)) == rat(-1));
    AttainingSet a = attaining_set(s, rat(1, 2));
    CHECK(a.n_min == -6);
    CHECK(a.n_max == -4);
    CHECK(slope(s, rat(1, 2), Direction::toward_inner) == 4);
    CHECK(slope(s, rat(1, 2), Direction::toward_outer) == -6);
}

TEST_CASE("evaluation: constant and tied cases") {
    ValuationSeries c = ValuationSeries::disc(5, {{0, rat(9, 4)}});
    CHECK(tropical_eval(c, rat(2)) == rat(9, 4));
    CHECK(attaining_set(c, rat(2)).n_min == 0);
    CHECK(attaining_set(c, rat(2)).n_max == 0);
    CHECK(slope(c, rat(2), Direction::toward_inner) == 0);
    CHECK(slope(c, rat(2), Direction::toward_outer) == 0);

    ValuationSeries tie = ValuationSeries::disc(3, {{1, rat(0)}, {3, rat(-1)}});
    CHECK(tropical_eval(tie, rat(1, 2)) == rat(1, 2));
    AttainingSet a = attaining_set(tie, rat(1, 2));
    CHECK(a.n_min == 1);
    CHECK(a.n_max == 3);
}

TEST_CASE("lower hull on the worked dataset keeps domain-visible vertices") {
    NewtonHull hull = lower_hull(figure_series());
    REQUIRE(hull.vertices.size() == 3);
    CHECK(hull.vertices[0].first == -6);
    CHECK(hull.vertices[0].second == rat(2));
    CHECK(hull.vertices[1].first == -4);
    CHECK(hull.vertices[1].second == rat(1));
    CHECK(hull.vertices[2].first == 1);
    CHECK(hull.vertices[2].second == rat(-1, 2));
    REQUIRE(hull.segments.size() == 2);
    CHECK(hull.segments[0].slope == rat(-1, 2));
    CHECK(hull.segments[1].slope == rat(-3, 10));
}

TEST_CASE("lower hull: degenerate shapes") {
    NewtonHull single = lower_hull(ValuationSeries::disc(3, {{0, rat(0)}}));
    CHECK(single.vertices.size() == 1);
    CHECK(single.segments.empty());

    NewtonHull seg = lower_hull(cubic_disc());
    REQUIRE(seg.segments.size() == 1);
    CHECK(seg.segments[0].left == 1);
    CHECK(seg.segments[0].right == 3);
    CHECK(seg.segments[0].slope == rat(-1, 2));

    // positive-slope part of a disc polygon is never visible
    NewtonHull flat = lower_hull(ValuationSeries::disc(3, {{0, rat(0)}, {2, rat(1)}}));
    REQUIRE(flat.vertices.size() == 1);
    CHECK(flat.vertices[0].first == 0);
    CHECK(flat.segments.empty());
}

TEST_CASE("hull slopes strictly increase") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        std::map<long long, Rational> t;
        int terms = 2 + static_cast<int>(rng() % 8);
        for (int i = 0; i < terms; ++i)
            t[static_cast<long long>(rng() % 25) - 12] =
                rat(static_cast<long>(rng() % 19) - 9, 1 + static_cast<long>(rng() % 4));
        ValuationSeries s = ValuationSeries::annulus(3, rat(5), std::move(t));
        NewtonHull hull = lower_hull(s);
        for (std::size_t i = 0; i + 1 < hull.segments.size(); ++i)
            CHECK(hull.segments[i].slope < hull.segments[i + 1].slope);
    }
}

TEST_CASE("antiderivative shifts valuations by the exponent valuation") {
    ValuationSeries w1 = ValuationSeries::annulus(3, rat(2), {{-3, rat(0)}});
    ValuationSeries f1 = antiderivative(w1);
    REQUIRE(f1.terms().size() == 1);
    CHECK(f1.terms().at(-3) == rat(-1));

    ValuationSeries w2 = ValuationSeries::annulus(3, rat(2), {{-1, rat(0)}});
    CHECK(antiderivative(w2).terms().at(-1) == rat(0));

    ValuationSeries w3 = ValuationSeries::annulus(3, rat(2), {{0, rat(0)}});
    CHECK_THROWS_AS(antiderivative(w3), residue_obstruction_error);

    ValuationSeries w4 = ValuationSeries::annulus(2, rat(1), {{-4, rat(1, 2)}, {6, rat(0)}});
    ValuationSeries f4 = antiderivative(w4, rat(7));
    CHECK(f4.terms().at(-4) == rat(1, 2) - rat(2)); // v_2(4) = 2
    CHECK(f4.terms().at(6) == rat(-1));             // v_2(6) = 1
    CHECK(f4.terms().at(0) == rat(7));              // caller-supplied constant
}

TEST_CASE("end slope datum at the inner end") {
    CHECK(end_slope_n0(ValuationSeries::annulus(3, rat(2), {{-1, rat(0)}})) == 1);
    CHECK(end_slope_n0(ValuationSeries::annulus(3, rat(1), {{-2, rat(0)}, {1, rat(0)}})) == 2);
    CHECK(end_slope_n0(ValuationSeries::annulus(3, rat(1), {{0, rat(0)}})) == 0);
    CHECK_THROWS_AS(end_slope_n0(cubic_disc()), precondition_error);
}

TEST_CASE("annular slope bound: worked instances") {
    ValuationSeries w1 = ValuationSeries::annulus(3, rat(2), {{-1, rat(0)}});
    AnnularBoundReport r1 = verify_annular_bound(w1, rat(1));
    CHECK(r1.slope_found == 1);
    CHECK(r1.n0 == 1);
    CHECK(r1.bound == 2);
    CHECK(r1.holds);

    ValuationSeries w2 = ValuationSeries::annulus(3, rat(1), {{1, rat(0)}});
    AnnularBoundReport r2 = verify_annular_bound(w2, rat(1, 2));
    CHECK(r2.slope_found == -1);
    CHECK(r2.holds);
}

TEST_CASE("annular slope bound: randomized theorem suite") {
    std::mt19937 rng(12345);
    const unsigned long primes[] = {2, 3, 5, 7};
    for (int trial = 0; trial < 1000; ++trial) {
        unsigned long p = primes[rng() % 4];
        std::map<long long, Rational> t;
        int terms = 1 + static_cast<int>(rng() % 7);
        for (int i = 0; i < terms; ++i) {
            long long n = static_cast<long long>(rng() % 25) - 12;
            if (n == 0) continue; // exact integrands carry no residue term
            t[n] = rat(static_cast<long>(rng() % 21) - 10, 1 + static_cast<long>(rng() % 6));
        }
        if (t.empty()) t[1] = rat(0);
        long am = 1 + static_cast<long>(rng() % 9); // modulus in (0, 5] in halves
        Rational a = rat(am, 2);
        ValuationSeries omega = ValuationSeries::annulus(p, a, std::move(t));
        // r strictly inside (0, a)
        Rational r = a * rat(1 + static_cast<long>(rng() % 9), 10);
        AnnularBoundReport rep = verify_annular_bound(omega, r);
        REQUIRE(rep.holds);
    }
}

TEST_CASE("zero counts in subdiscs and subannuli") {
    ValuationSeries f = cubic_disc();
    CHECK(zeros_in_open_subdisc(f, rat(1)) == 1);
    CHECK(zeros_in_open_subdisc(f, rat(1, 3)) == 3);
    CHECK(zeros_in_open_subdisc(ValuationSeries::disc(3, {{0, rat(0)}}), rat(2)) == 0);
    CHECK_THROWS_AS(zeros_in_open_subdisc(figure_series(), rat(1, 2)), precondition_error);

    CHECK(zeros_in_subannulus(f, rat(1, 3), rat(1)) == 2);
    CHECK(zeros_in_subannulus(ValuationSeries::disc(3, {{0, rat(0)}}), rat(1, 3), rat(1)) == 0);
    CHECK(zeros_in_subannulus(figure_series(), rat(1, 4), rat(3, 4)) == 7);
    CHECK_THROWS_AS(zeros_in_subannulus(f, rat(1), rat(1)), precondition_error);

    // consistency with the correction bound on the subdisc count
    CHECK(to_int(zeros_in_open_subdisc(f, rat(1, 3))) <= np_value(3, rat(1, 3), 1));
    CHECK(to_int(zeros_in_open_subdisc(f, rat(1))) <= np_value(3, rat(1), 1));
}

namespace {

ValuationSeries random_series(std::mt19937& rng, bool annulus_mode, const Rational& a) {
    std::map<long long, Rational> t;
    int terms = 1 + static_cast<int>(rng() % 8);
    for (int i = 0; i < terms; ++i) {
        long long n = static_cast<long long>(rng() % 25) - (annulus_mode ? 12 : 0);
        t[n] = Rational(static_cast<long>(rng() % 21) - 10, 1 + static_cast<long>(rng() % 6));
        t[n].canonicalize();
    }
    if (annulus_mode) return ValuationSeries::annulus(3, a, std::move(t));
    return ValuationSeries::disc(3, std::move(t));
}

} // namespace

TEST_CASE("piecewise linear structure of the evaluation map") {
    std::mt19937 rng(99);
    Rational a = rat(4);
    for (int trial = 0; trial < 300; ++trial) {
        ValuationSeries s = random_series(rng, true, a);

        // concavity: value at the middle radius is above the chord
        Rational r1 = rat(1, 2), r2 = rat(3, 2), r3 = rat(7, 2);
        Rational chord = tropical_eval(s, r1) +
                         (tropical_eval(s, r3) - tropical_eval(s, r1)) * ((r2 - r1) / (r3 - r1));
        CHECK(tropical_eval(s, r2) >= chord);

        // one-sided finite difference reproduces the slope exactly
        Rational r = rat(1 + static_cast<long>(rng() % 30), 10);
        if (r >= a) continue;
        AttainingSet at = attaining_set(s, r);
        CHECK(at.n_min <= at.n_max);
        if (at.n_min == at.n_max) // off hull breakpoints the two directions agree
            CHECK(slope(s, r, Direction::toward_inner) == -slope(s, r, Direction::toward_outer));
        // smaller than the least possible gap between r and a hull breakpoint
        Rational eps = rat(1, 100000);
        CHECK(tropical_eval(s, r - eps) == tropical_eval(s, r) - eps * to_rational(at.n_max));
        CHECK(tropical_eval(s, r + eps) == tropical_eval(s, r) + eps * to_rational(at.n_min));
    }
}

TEST_CASE("zero counts are additive over radius splits") {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        ValuationSeries s = random_series(rng, true, rat(4));
        Rational r1 = rat(1, 3), r2 = rat(1 + static_cast<long>(rng() % 20), 7), r3 = rat(15, 4);
        if (!(r1 < r2 && r2 < r3)) continue;
        AttainingSet mid = attaining_set(s, r2);
        if (mid.n_min != mid.n_max) continue; // r2 sits on a hull breakpoint
        CHECK(zeros_in_subannulus(s, r1, r2) + zeros_in_subannulus(s, r2, r3) ==
              zeros_in_subannulus(s, r1, r3));
        CHECK(zeros_in_subannulus(s, r1, r3) >= 0);
    }
}
