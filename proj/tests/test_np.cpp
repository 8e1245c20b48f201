#include <doctest.h>

#include <vector>

#include "mordell/np.hpp"

using namespace mordell;

namespace {

Rational rat(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Grow a cutoff until the naive-scan certificate holds.
Int certified_cutoff(unsigned long p, const Rational& r, long long n0) {
    Int c = 4;
    while (!np_cutoff_certified(p, r, Int(static_cast<long>(n0)), c)) c *= 2;
    return c;
}

} // namespace

TEST_CASE("p-adic valuation of integers") {
    CHECK(padic_valuation(3, -3) == 1);
    CHECK(padic_valuation(3, 7) == 0);
    CHECK(padic_valuation(2, 48) == 4);
    CHECK(padic_valuation(5, 250) == 3);
    CHECK_THROWS_AS(padic_valuation(3, 0), precondition_error);
    CHECK_THROWS_AS(padic_valuation(4, 8), precondition_error);
    for (long n = 1; n <= 300; ++n)
        for (unsigned long p : {2ul, 3ul, 5ul}) {
            unsigned long k = padic_valuation(p, n);
            Int pk = pow_int(p, k);
            CHECK(Int(n) % pk == 0);
            CHECK(Int(n) % (pk * p) != 0);
        }
}

TEST_CASE("floor_log by exact comparison") {
    CHECK(floor_log(3, 1) == 0);
    CHECK(floor_log(3, 9) == 2);
    CHECK(floor_log(2, 900) == 9);
    CHECK(floor_log(2, 1024) == 10);
    CHECK(floor_log(7, 48) == 1);
    CHECK_THROWS_AS(floor_log(3, 0), precondition_error);
    CHECK_THROWS_AS(floor_log(3, -5), precondition_error);
}

TEST_CASE("correction function: anchors") {
    CHECK(np_value(5, rat(1), 1) == 2);
    CHECK(np_value(3, rat(1), 0) == 1);
    CHECK(np_value(3, rat(1), 3) == 5);
    CHECK(np_value(3, rat(1, 10), 0) == 31);
    CHECK(np_value(2, rat(1, 100), 0) == 901);
    CHECK(np_value(3, rat(1), 5) == 7);
    CHECK(np_value(2, rat(1), 5) == 9);
    CHECK(np_value(3, rat(1, 3), 1) == 5);
    CHECK(np_value(3, rat(1), 1) == 2);
    CHECK_THROWS_AS(np_value(3, rat(0), 1), precondition_error);
    CHECK_THROWS_AS(np_value(3, rat(-1, 2), 1), precondition_error);
}

TEST_CASE("correction function: violating blocks drive --show-violations") {
    auto blocks = np_violating_blocks(3, rat(1, 10), Int(0));
    REQUIRE(blocks.size() == 3);
    CHECK(blocks[0].k == 1);
    CHECK(blocks[0].largest == 8);
    CHECK(blocks[1].k == 2);
    CHECK(blocks[1].largest == 20);
    CHECK(blocks[2].k == 3);
    CHECK(blocks[2].largest == 30);

    auto b2 = np_violating_blocks(2, rat(1, 100), Int(0));
    REQUIRE(!b2.empty());
    CHECK(b2.back().k == 9);
    CHECK(b2.back().largest == 900);
}

TEST_CASE("naive scan oracle: anchors and certification") {
    CHECK(np_naive(3, rat(1), 3, 100) == 5);
    CHECK(np_naive(3, rat(1, 3), 1, 200) == 5);
    CHECK(np_naive(5, rat(2), 0, 50) == 1);
    // scanning to 10 cannot rule out later violations at this radius
    CHECK_THROWS_AS(np_naive(3, rat(1, 10), 0, 10), precondition_error);
}

TEST_CASE("block method agrees with the naive scan on a dense grid") {
    int cases = 0;
    for (unsigned long p : {2ul, 3ul, 5ul, 7ul})
        for (int rnum_den : {1, 2, 3, 7, 10, 25, 50})
            for (int rnum : {1, 2, 3})
                for (long long n0 = -3; n0 <= 20; n0 += 2) {
                    Rational r = rat(rnum, rnum_den);
                    Int cutoff = certified_cutoff(p, r, n0);
                    CHECK(np_value(p, r, Int(static_cast<long>(n0))) ==
                          np_naive(p, r, Int(static_cast<long>(n0)), cutoff));
                    ++cases;
                }
    CHECK(cases >= 500);
}

TEST_CASE("definition check at the returned value") {
    for (unsigned long p : {2ul, 3ul, 5ul})
        for (auto [rn, rd] : std::vector<std::pair<long, long>>{{1, 1}, {1, 7}, {2, 5}, {3, 1}})
            for (long long n0 : {-2LL, 0LL, 1LL, 4LL, 11LL}) {
                Rational r = rat(rn, rd);
                Int N = np_value(p, r, Int(static_cast<long>(n0)));
                Int num = r.get_num(), den = r.get_den();
                if (N > 1) {
                    // n = N-1 must violate
                    Int n = N - 1;
                    Int k(floor_log(p, n));
                    CHECK((n - to_int(n0)) * num <= k * den);
                }
                // sampled n >= N must satisfy the defining inequality
                Int n = N;
                for (int i = 0; i < 10000; ++i, ++n) {
                    Int k(floor_log(p, n));
                    REQUIRE((n - to_int(n0)) * num > k * den);
                }
            }
}

TEST_CASE("monotonicity in r, n0, and p") {
    std::vector<Rational> radii{rat(1, 20), rat(1, 10), rat(1, 3), rat(1), rat(2)};
    std::vector<long long> n0s{-2, 0, 1, 3, 8, 15};
    std::vector<unsigned long> primes{2, 3, 5, 7};
    for (unsigned long p : primes)
        for (std::size_t i = 0; i + 1 < radii.size(); ++i)
            for (long long n0 : n0s)
                CHECK(np_value(p, radii[i + 1], n0) <= np_value(p, radii[i], n0));
    for (unsigned long p : primes)
        for (const Rational& r : radii)
            for (std::size_t i = 0; i + 1 < n0s.size(); ++i)
                CHECK(np_value(p, r, n0s[i]) <= np_value(p, r, n0s[i + 1]));
    for (std::size_t i = 0; i + 1 < primes.size(); ++i)
        for (const Rational& r : radii)
            for (long long n0 : n0s)
                CHECK(np_value(primes[i + 1], r, n0) <= np_value(primes[i], r, n0));
}

TEST_CASE("closed-form upper bound") {
    SUBCASE("short form when r ln p >= 1 is certified") {
        RemarkBound rb = np_upper_bound_remark(3, rat(1), 5);
        CHECK(rb.bound == 10);
        CHECK(rb.certified);
        CHECK(rb.via_two_n0);
        CHECK(np_value(3, rat(1), 5) <= rb.bound);

        RemarkBound rb1 = np_upper_bound_remark(3, rat(1), 1);
        CHECK(rb1.bound == 2);
        CHECK(np_value(3, rat(1), 1) == 2);

        RemarkBound rb2 = np_upper_bound_remark(2, rat(3, 2), 4);
        CHECK(rb2.bound == 8);
        CHECK(rb2.certified);
        CHECK(np_value(2, rat(3, 2), 4) <= 8);
    }
    SUBCASE("exponential form otherwise") {
        RemarkBound rb = np_upper_bound_remark(2, rat(1), 5); // ln 2 < 1
        CHECK(rb.certified);
        CHECK_FALSE(rb.via_two_n0);
        CHECK(np_value(2, rat(1), 5) <= rb.bound);

        RemarkBound rb8 = np_upper_bound_remark(2, rat(1), 9); // n0 >= 8 branch
        CHECK(rb8.certified);
        CHECK(np_value(2, rat(1), 9) <= rb8.bound);
    }
    SUBCASE("n0 <= 0") {
        RemarkBound rb = np_upper_bound_remark(3, rat(2), 0); // 2 ln 3 >= 1
        CHECK(rb.bound == 1);
        CHECK(rb.certified);
        CHECK(np_value(3, rat(2), 0) == 1);

        // small radius: the shortcut N = 1 is wrong, the exact value is returned
        RemarkBound small = np_upper_bound_remark(3, rat(1, 10), 0);
        CHECK_FALSE(small.certified);
        CHECK(small.bound == 31);
    }
    SUBCASE("soundness across a grid") {
        for (unsigned long p : {2ul, 3ul, 5ul, 7ul})
            for (auto [rn, rd] : std::vector<std::pair<long, long>>{{1, 1}, {1, 4}, {2, 3}, {3, 1}})
                for (long long n0 = 1; n0 <= 24; ++n0) {
                    RemarkBound rb = np_upper_bound_remark(p, rat(rn, rd), n0);
                    CHECK(rb.certified);
                    CHECK(np_value(p, rat(rn, rd), n0) <= rb.bound);
                }
    }
}
