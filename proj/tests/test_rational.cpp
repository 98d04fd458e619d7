#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "confstat/rational.hpp"
#include "confstat/rng.hpp"

using namespace confstat;

TEST_CASE("bigint arithmetic round trips against int64") {
    RngStream rng(99, 0);
    for (int i = 0; i < 2000; ++i) {
        long long a = static_cast<long long>(rng.next_u64() >> 20) - (1LL << 43);
        long long b = static_cast<long long>(rng.next_u64() >> 20) - (1LL << 43);
        CHECK(BigInt(a) + BigInt(b) == BigInt(a + b));
        CHECK(BigInt(a) - BigInt(b) == BigInt(a - b));
        CHECK(BigInt(a) * BigInt(b % 100000) == BigInt(a * (b % 100000)));
        if (b != 0) {
            BigInt q, r;
            BigInt::divrem(BigInt(a), BigInt(b), q, r);
            CHECK(q == BigInt(a / b));
            CHECK(r == BigInt(a % b));
        }
    }
}

TEST_CASE("bigint factorial and decimal printing") {
    CHECK(factorial(20).to_string() == "2432902008176640000");
    CHECK(factorial(25).to_string() == "15511210043330985984000000");
    CHECK(binomial(52, 26).to_string() == "495918532948104");
    CHECK(BigInt(-42).to_string() == "-42");
    CHECK(BigInt(0).to_string() == "0");
}

TEST_CASE("gcd and rational reduction") {
    CHECK(BigInt::gcd(BigInt(48), BigInt(180)) == BigInt(12));
    CHECK(BigInt::gcd(BigInt(0), BigInt(-7)) == BigInt(7));
    Rational r(6, -8);
    CHECK(r.num() == BigInt(-3));
    CHECK(r.den() == BigInt(4));
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
    CHECK(Rational(1, 3) / Rational(1, 6) == Rational(2));
    CHECK(Rational(1, 3) < Rational(1, 2));
}

TEST_CASE("from_double is exact for dyadic rationals") {
    CHECK(Rational::from_double(0.5) == Rational(1, 2));
    CHECK(Rational::from_double(0.0625) == Rational(1, 16));
    CHECK(Rational::from_double(-2.75) == Rational(-11, 4));
    CHECK(Rational::from_double(3.0) == Rational(3));
}

TEST_CASE("to_long_double and log_abs handle large magnitudes") {
    Rational big(factorial(60), BigInt(7));
    double lg = static_cast<double>(big.log_abs());
    double expect = 0;
    for (int i = 2; i <= 60; ++i) expect += std::log(static_cast<double>(i));
    expect -= std::log(7.0);
    CHECK(lg == doctest::Approx(expect).epsilon(1e-12));
    Rational tiny = Rational(1) / Rational(factorial(60), BigInt(1));
    CHECK(static_cast<double>(tiny.log_abs()) == doctest::Approx(-(expect + std::log(7.0))).epsilon(1e-12));
    CHECK(static_cast<double>(Rational(3, 4).to_long_double()) == 0.75);
}

TEST_CASE("from_double round-trips random doubles exactly") {
    RngStream rng(17, 0);
    for (int i = 0; i < 1000; ++i) {
        double x = (rng.next_double() - 0.5) * std::ldexp(1.0, static_cast<int>(rng.next_below(60)) - 30);
        Rational r = Rational::from_double(x);
        CHECK(static_cast<double>(r.to_long_double()) == x);
    }
}

TEST_CASE("descending factorials") {
    CHECK(descending_factorial(10, 3) == BigInt(720));
    CHECK(descending_factorial(3, 5) == BigInt(0));
    CHECK(descending_factorial2(7, 3) == BigInt(7 * 5 * 3));
    CHECK(descending_factorial2(3, 1) == BigInt(3));
}

TEST_CASE("rng streams are deterministic and decorrelated") {
    RngStream a(123, 5), b(123, 5), c(123, 6);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
    bool any_diff = false;
    RngStream a2(123, 5);
    for (int i = 0; i < 100; ++i) any_diff |= a2.next_u64() != c.next_u64();
    CHECK(any_diff);
}

TEST_CASE("next_below is in range and roughly uniform") {
    RngStream rng(7, 0);
    std::vector<int> counts(10, 0);
    for (int i = 0; i < 100000; ++i) {
        auto x = rng.next_below(10);
        REQUIRE(x < 10);
        ++counts[static_cast<std::size_t>(x)];
    }
    for (int c : counts) CHECK(std::abs(c - 10000) < 500);
}
