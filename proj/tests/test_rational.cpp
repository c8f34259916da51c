#include "birnbaum/rational.hpp"

#include <doctest.h>

#include <random>

using birnbaum::Rational;

TEST_CASE("rationals are canonical") {
    CHECK(Rational(2, 6) == Rational(1, 3));
    CHECK(Rational(2, 6).num() == 1);
    CHECK(Rational(2, 6).den() == 3);
    CHECK(Rational(-4, 8).str() == "-1/2");
    CHECK(Rational(3, -9).str() == "-1/3"); // sign moves to the numerator
    CHECK(Rational(0, 7).str() == "0");
}

TEST_CASE("arithmetic is exact") {
    Rational third(1, 3);
    CHECK(third + third + third == Rational(1));
    CHECK(Rational(1, 6) / Rational(1, 2) == Rational(1, 3));
    CHECK(Rational(299, 4096) + Rational(134, 4096) == Rational(433, 4096));
    CHECK((Rational(433, 4096) / Rational(2)).str() == "433/8192");
    CHECK(Rational(1, 10) + Rational(2, 10) == Rational(3, 10)); // no binary float drift
    CHECK(Rational(3, 2).reciprocal() == Rational(2, 3));
    CHECK(-Rational(1, 2) < Rational(0));
}

TEST_CASE("parsing accepts integers and fractions only") {
    CHECK(Rational::parse("5/12") == Rational(5, 12));
    CHECK(Rational::parse("2/6") == Rational(1, 3));
    CHECK(Rational::parse("7") == Rational(7));
    CHECK(Rational::parse("-3/4") == Rational(-3, 4));
    CHECK(!Rational::parse(""));
    CHECK(!Rational::parse("1.5"));
    CHECK(!Rational::parse("1/0"));
    CHECK(!Rational::parse("1/-2"));
    CHECK(!Rational::parse("a/b"));
    CHECK(!Rational::parse("/2"));
}

TEST_CASE("decimal rendering keeps four significant digits") {
    CHECK(Rational(433, 8192).decimal() == "0.05286");
    CHECK(Rational(299, 4096).decimal() == "0.07300");
    CHECK(Rational(134, 4096).decimal() == "0.03271");
    CHECK(Rational(1, 2).decimal() == "0.5000");
    CHECK(Rational(3, 2).decimal() == "1.500");
    CHECK(Rational(4).decimal() == "4.000");
    CHECK(Rational(0).decimal() == "0.000");
    CHECK(Rational(-1, 3).decimal() == "-0.3333");
    CHECK(Rational(9999, 1000).decimal() == "9.999");
    CHECK(Rational(99999, 10000).decimal() == "10.00"); // carry shifts the exponent
    CHECK(Rational(1, 16777216).decimal() == "5.960e-8");
    CHECK(Rational(1234567).decimal() == "1.235e6");
    CHECK(birnbaum::display(Rational(433, 8192)) == "433/8192 (0.05286)");
}

TEST_CASE("rounding is half to even") {
    CHECK(Rational(10005, 10000).decimal() == "1.000"); // ties go to the even digit
    CHECK(Rational(10015, 10000).decimal() == "1.002");
}

TEST_CASE("field round trip on random values") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> num(-500, 500), den(1, 500);
    for (int i = 0; i < 200; ++i) {
        Rational q(num(rng), den(rng));
        auto parsed = Rational::parse(q.str());
        REQUIRE(parsed);
        CHECK(*parsed == q);
    }
}
