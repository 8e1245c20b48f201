#include <doctest.h>

#include "mordell/interval.hpp"
#include "mordell/rational.hpp"

using namespace mordell;

TEST_CASE("rationals parse and print in num/den form") {
    CHECK(to_string(parse_rational("3/2")) == "3/2");
    CHECK(to_string(parse_rational("-3/2")) == "-3/2");
    CHECK(to_string(parse_rational("4/2")) == "2");   // lowest terms
    CHECK(to_string(parse_rational("-4/6")) == "-2/3");
    CHECK(to_string(parse_rational("7")) == "7");
    CHECK(parse_rational("0/5") == 0);
}

TEST_CASE("rational literals are strict") {
    CHECK_THROWS_AS(parse_rational("1.5"), schema_error);
    CHECK_THROWS_AS(parse_rational("1e3"), schema_error);
    CHECK_THROWS_AS(parse_rational("1/0"), schema_error);
    CHECK_THROWS_AS(parse_rational(""), schema_error);
    CHECK_THROWS_AS(parse_rational("1/-2"), schema_error);
    CHECK_THROWS_AS(parse_rational("/3"), schema_error);
    CHECK_THROWS_AS(parse_rational(" 1"), schema_error);
}

TEST_CASE("parse/print round trip on a grid") {
    for (int num = -20; num <= 20; ++num)
        for (int den = 1; den <= 12; ++den) {
            Rational q(num, den);
            q.canonicalize();
            CHECK(parse_rational(to_string(q)) == q);
        }
}

TEST_CASE("floor and ceil are exact") {
    CHECK(floor_rational(parse_rational("7/2")) == 3);
    CHECK(floor_rational(parse_rational("-7/2")) == -4);
    CHECK(floor_rational(parse_rational("4")) == 4);
    CHECK(ceil_rational(parse_rational("7/2")) == 4);
    CHECK(ceil_rational(parse_rational("-7/2")) == -3);
}

TEST_CASE("extended rationals absorb infinity") {
    ExtendedRational inf = ExtendedRational::infinity();
    ExtendedRational x(Rational(5, 2));
    CHECK((inf + x).is_infinite());
    CHECK((x + inf).is_infinite());
    CHECK((x + x) == ExtendedRational(Rational(5)));
    CHECK(min(inf, x) == x);
    CHECK(min(x, inf) == x);
    CHECK(inf > x);
    CHECK(x < inf);
    CHECK(inf == ExtendedRational::infinity());
    CHECK_FALSE(inf < inf);
    CHECK(inf.str() == "inf");
    CHECK(ExtendedRational::parse("inf").is_infinite());
    CHECK(ExtendedRational::parse("5/2") == x);
    CHECK_THROWS_AS(inf.finite_value(), precondition_error);
}

TEST_CASE("certified ln/exp intervals enclose and stay ordered") {
    CertifiedInterval ln3 = certified_ln(3);
    CHECK(ln3.lo < ln3.hi);
    // 1 < ln 3 < 10986123/10^7 + 1e-6 window
    CHECK(ln3.certainly_ge(Rational(1)));
    CHECK(ln3.certainly_le(parse_rational("10986124/10000000")));
    CHECK(certify_r_ln_p_ge_one(Rational(1), 3));
    CHECK(certify_r_ln_p_ge_one(parse_rational("3/2"), 2)); // 1.5 ln 2 = 1.0397...
    CHECK_FALSE(certify_r_ln_p_ge_one(Rational(1), 2));     // ln 2 < 1
    CHECK_FALSE(certify_r_ln_p_ge_one(parse_rational("1/10"), 7));

    CertifiedInterval e1 = certified_exp(CertifiedInterval(Rational(1), Rational(1)));
    CHECK(e1.certainly_ge(parse_rational("27182818/10000000")));
    CHECK(e1.certainly_le(parse_rational("27182819/10000000")));
}
