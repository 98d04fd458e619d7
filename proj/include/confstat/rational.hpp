#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace confstat {

// Arbitrary-precision signed integer, base 2^32 little-endian.
// Sizes in this project stay small (a few hundred bits), so schoolbook
// multiplication and shift-subtract division are plenty.
class BigInt {
public:
    BigInt() = default;
    BigInt(long long v);

    static BigInt from_uint64(std::uint64_t v);

    bool is_zero() const { return sign_ == 0; }
    int sign() const { return sign_; }
    std::size_t bit_length() const;

    BigInt operator-() const;
    BigInt abs() const;

    BigInt operator+(const BigInt& o) const;
    BigInt operator-(const BigInt& o) const;
    BigInt operator*(const BigInt& o) const;

    // Quotient truncated toward zero; remainder has the sign of *this.
    static void divrem(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);
    BigInt operator/(const BigInt& o) const;
    BigInt operator%(const BigInt& o) const;

    BigInt shifted_left(unsigned bits) const;

    bool operator==(const BigInt& o) const;
    bool operator!=(const BigInt& o) const { return !(*this == o); }
    bool operator<(const BigInt& o) const;
    bool operator<=(const BigInt& o) const { return *this < o || *this == o; }
    bool operator>(const BigInt& o) const { return o < *this; }
    bool operator>=(const BigInt& o) const { return o <= *this; }

    static BigInt gcd(BigInt a, BigInt b);  // binary gcd, result >= 0

    long double to_long_double() const;
    std::string to_string() const;  // decimal

private:
    static int cmp_mag(const std::vector<std::uint32_t>& a,
                       const std::vector<std::uint32_t>& b);
    static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);
    // requires |a| >= |b|
    static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);
    void trim();

    int sign_ = 0;                      // -1, 0, +1
    std::vector<std::uint32_t> mag_;    // empty iff sign_ == 0
};

// Exact rational with reduced representation, denominator > 0.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long v) : num_(v), den_(1) {}
    Rational(long long num, long long den);
    Rational(BigInt num, BigInt den);

    // Exact value of the double (every finite double is rational).
    static Rational from_double(double x);

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    int sign() const { return num_.sign(); }

    Rational operator-() const;
    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    bool operator==(const Rational& o) const;
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const;
    bool operator<=(const Rational& o) const;
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return o <= *this; }

    Rational pow(unsigned e) const;

    long double to_long_double() const;
    double to_double() const { return static_cast<double>(to_long_double()); }
    // log|x| without overflow; requires non-zero.
    long double log_abs() const;
    std::string to_string() const;  // "p/q" or "p" when q == 1

private:
    void reduce();
    BigInt num_;
    BigInt den_;
};

BigInt factorial(unsigned n);
BigInt binomial(unsigned n, unsigned k);
// Descending factorial x(x-1)...(x-r+1) as exact integer, x >= 0.
BigInt descending_factorial(std::uint64_t x, unsigned r);
// Double-step descending factorial x(x-2)(x-4)...(x-2(r-1)).
BigInt descending_factorial2(std::uint64_t x, unsigned r);

}  // namespace confstat
