#include "confstat/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace confstat {

BigInt::BigInt(long long v) {
    if (v == 0) return;
    sign_ = v < 0 ? -1 : 1;
    std::uint64_t u = v < 0 ? ~static_cast<std::uint64_t>(v) + 1 : static_cast<std::uint64_t>(v);
    while (u) {
        mag_.push_back(static_cast<std::uint32_t>(u & 0xffffffffu));
        u >>= 32;
    }
}

BigInt BigInt::from_uint64(std::uint64_t v) {
    BigInt r;
    if (v == 0) return r;
    r.sign_ = 1;
    while (v) {
        r.mag_.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
        v >>= 32;
    }
    return r;
}

void BigInt::trim() {
    while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
    if (mag_.empty()) sign_ = 0;
}

std::size_t BigInt::bit_length() const {
    if (sign_ == 0) return 0;
    std::uint32_t top = mag_.back();
    std::size_t bits = (mag_.size() - 1) * 32;
    while (top) {
        ++bits;
        top >>= 1;
    }
    return bits;
}

BigInt BigInt::operator-() const {
    BigInt r = *this;
    r.sign_ = -r.sign_;
    return r;
}

BigInt BigInt::abs() const {
    BigInt r = *this;
    if (r.sign_ < 0) r.sign_ = 1;
    return r;
}

int BigInt::cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

std::vector<std::uint32_t> BigInt::add_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
    const auto& big = a.size() >= b.size() ? a : b;
    const auto& small = a.size() >= b.size() ? b : a;
    std::vector<std::uint32_t> r(big.size() + 1, 0);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < big.size(); ++i) {
        std::uint64_t s = carry + big[i] + (i < small.size() ? small[i] : 0);
        r[i] = static_cast<std::uint32_t>(s);
        carry = s >> 32;
    }
    r[big.size()] = static_cast<std::uint32_t>(carry);
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

std::vector<std::uint32_t> BigInt::sub_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> r(a.size(), 0);
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::int64_t d = static_cast<std::int64_t>(a[i]) - borrow - (i < b.size() ? b[i] : 0);
        if (d < 0) {
            d += (1LL << 32);
            borrow = 1;
        } else {
            borrow = 0;
        }
        r[i] = static_cast<std::uint32_t>(d);
    }
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

BigInt BigInt::operator+(const BigInt& o) const {
    if (sign_ == 0) return o;
    if (o.sign_ == 0) return *this;
    BigInt r;
    if (sign_ == o.sign_) {
        r.sign_ = sign_;
        r.mag_ = add_mag(mag_, o.mag_);
    } else {
        int c = cmp_mag(mag_, o.mag_);
        if (c == 0) return BigInt();
        if (c > 0) {
            r.sign_ = sign_;
            r.mag_ = sub_mag(mag_, o.mag_);
        } else {
            r.sign_ = o.sign_;
            r.mag_ = sub_mag(o.mag_, mag_);
        }
    }
    r.trim();
    return r;
}

BigInt BigInt::operator-(const BigInt& o) const { return *this + (-o); }

BigInt BigInt::operator*(const BigInt& o) const {
    if (sign_ == 0 || o.sign_ == 0) return BigInt();
    BigInt r;
    r.sign_ = sign_ * o.sign_;
    r.mag_.assign(mag_.size() + o.mag_.size(), 0);
    for (std::size_t i = 0; i < mag_.size(); ++i) {
        std::uint64_t carry = 0;
        for (std::size_t j = 0; j < o.mag_.size(); ++j) {
            std::uint64_t cur = r.mag_[i + j] +
                                static_cast<std::uint64_t>(mag_[i]) * o.mag_[j] + carry;
            r.mag_[i + j] = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
        }
        std::size_t k = i + o.mag_.size();
        while (carry) {
            std::uint64_t cur = r.mag_[k] + carry;
            r.mag_[k] = static_cast<std::uint32_t>(cur);
            carry = cur >> 32;
            ++k;
        }
    }
    r.trim();
    return r;
}

BigInt BigInt::shifted_left(unsigned bits) const {
    if (sign_ == 0 || bits == 0) return *this;
    BigInt r;
    r.sign_ = sign_;
    unsigned words = bits / 32, rem = bits % 32;
    r.mag_.assign(mag_.size() + words + 1, 0);
    for (std::size_t i = 0; i < mag_.size(); ++i) {
        std::uint64_t v = static_cast<std::uint64_t>(mag_[i]) << rem;
        r.mag_[i + words] |= static_cast<std::uint32_t>(v);
        r.mag_[i + words + 1] |= static_cast<std::uint32_t>(v >> 32);
    }
    r.trim();
    return r;
}

void BigInt::divrem(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
    if (b.sign_ == 0) throw std::domain_error("BigInt: division by zero");
    int c = cmp_mag(a.mag_, b.mag_);
    if (a.sign_ == 0 || c < 0) {
        q = BigInt();
        r = a;
        return;
    }
    // Shift-subtract on magnitudes.
    std::size_t n = a.bit_length();
    BigInt babs = b.abs();
    BigInt rem, quo;
    quo.mag_.assign(a.mag_.size(), 0);
    for (std::size_t i = n; i-- > 0;) {
        rem = rem.shifted_left(1);
        std::uint32_t bit = (a.mag_[i / 32] >> (i % 32)) & 1u;
        if (bit) {
            if (rem.sign_ == 0) {
                rem.sign_ = 1;
                rem.mag_.assign(1, 1);
            } else {
                rem.mag_[0] |= 1u;
            }
        }
        if (rem.sign_ != 0 && cmp_mag(rem.mag_, babs.mag_) >= 0) {
            rem.mag_ = sub_mag(rem.mag_, babs.mag_);
            rem.trim();
            quo.mag_[i / 32] |= (1u << (i % 32));
        }
    }
    quo.sign_ = 1;
    quo.trim();
    if (!quo.is_zero()) quo.sign_ = a.sign_ * b.sign_;
    if (!rem.is_zero()) rem.sign_ = a.sign_;
    q = quo;
    r = rem;
}

BigInt BigInt::operator/(const BigInt& o) const {
    BigInt q, r;
    divrem(*this, o, q, r);
    return q;
}

BigInt BigInt::operator%(const BigInt& o) const {
    BigInt q, r;
    divrem(*this, o, q, r);
    return r;
}

bool BigInt::operator==(const BigInt& o) const {
    return sign_ == o.sign_ && mag_ == o.mag_;
}

bool BigInt::operator<(const BigInt& o) const {
    if (sign_ != o.sign_) return sign_ < o.sign_;
    int c = cmp_mag(mag_, o.mag_);
    return sign_ >= 0 ? c < 0 : c > 0;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
    a = a.abs();
    b = b.abs();
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    auto trailing_zeros = [](const BigInt& x) {
        std::size_t t = 0;
        for (std::size_t i = 0; i < x.mag_.size(); ++i) {
            if (x.mag_[i] == 0) {
                t += 32;
            } else {
                std::uint32_t w = x.mag_[i];
                while (!(w & 1u)) {
                    ++t;
                    w >>= 1;
                }
                break;
            }
        }
        return t;
    };
    auto shift_right = [](BigInt& x, std::size_t bits) {
        std::size_t words = bits / 32, rem = bits % 32;
        if (words >= x.mag_.size()) {
            x = BigInt();
            return;
        }
        x.mag_.erase(x.mag_.begin(), x.mag_.begin() + static_cast<std::ptrdiff_t>(words));
        if (rem) {
            for (std::size_t i = 0; i < x.mag_.size(); ++i) {
                x.mag_[i] >>= rem;
                if (i + 1 < x.mag_.size())
                    x.mag_[i] |= x.mag_[i + 1] << (32 - rem);
            }
        }
        x.trim();
    };
    std::size_t za = trailing_zeros(a), zb = trailing_zeros(b);
    std::size_t common = std::min(za, zb);
    shift_right(a, za);
    shift_right(b, zb);
    while (!b.is_zero()) {
        if (cmp_mag(a.mag_, b.mag_) > 0) std::swap(a, b);
        b = b - a;
        if (!b.is_zero()) shift_right(b, trailing_zeros(b));
    }
    return a.shifted_left(static_cast<unsigned>(common));
}

long double BigInt::to_long_double() const {
    if (sign_ == 0) return 0.0L;
    long double v = 0.0L;
    std::size_t n = mag_.size();
    // Top three words carry 96 bits, more than long double's mantissa.
    std::size_t take = n > 3 ? 3 : n;
    for (std::size_t i = 0; i < take; ++i)
        v = v * 4294967296.0L + mag_[n - 1 - i];
    v = std::ldexp(v, static_cast<int>(32 * (n - take)));
    return sign_ < 0 ? -v : v;
}

std::string BigInt::to_string() const {
    if (sign_ == 0) return "0";
    std::vector<std::uint32_t> m = mag_;
    std::string digits;
    while (!m.empty()) {
        std::uint64_t rem = 0;
        for (std::size_t i = m.size(); i-- > 0;) {
            std::uint64_t cur = (rem << 32) | m[i];
            m[i] = static_cast<std::uint32_t>(cur / 1000000000u);
            rem = cur % 1000000000u;
        }
        while (!m.empty() && m.back() == 0) m.pop_back();
        for (int k = 0; k < 9; ++k) {
            digits.push_back(static_cast<char>('0' + rem % 10));
            rem /= 10;
        }
    }
    while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
    if (sign_ < 0) digits.push_back('-');
    return std::string(digits.rbegin(), digits.rend());
}

Rational::Rational(long long num, long long den) : num_(num), den_(den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    reduce();
}

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
    reduce();
}

void Rational::reduce() {
    if (den_.sign() < 0) {
        num_ = -num_;
        den_ = -den_;
    }
    if (num_.is_zero()) {
        den_ = BigInt(1);
        return;
    }
    BigInt g = BigInt::gcd(num_, den_);
    num_ = num_ / g;
    den_ = den_ / g;
}

Rational Rational::from_double(double x) {
    if (!std::isfinite(x)) throw std::domain_error("Rational: non-finite double");
    if (x == 0.0) return Rational();
    int exp = 0;
    double m = std::frexp(x, &exp);  // x = m * 2^exp, |m| in [0.5, 1)
    long long mant = static_cast<long long>(std::ldexp(m, 53));
    exp -= 53;
    BigInt num(mant), den(1);
    if (exp >= 0)
        num = num.shifted_left(static_cast<unsigned>(exp));
    else
        den = den.shifted_left(static_cast<unsigned>(-exp));
    return Rational(std::move(num), std::move(den));
}

Rational Rational::operator-() const {
    Rational r = *this;
    r.num_ = -r.num_;
    return r;
}

Rational Rational::operator+(const Rational& o) const {
    return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator-(const Rational& o) const {
    return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator*(const Rational& o) const {
    return Rational(num_ * o.num_, den_ * o.den_);
}

Rational Rational::operator/(const Rational& o) const {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    return Rational(num_ * o.den_, den_ * o.num_);
}

bool Rational::operator==(const Rational& o) const {
    return num_ == o.num_ && den_ == o.den_;
}

bool Rational::operator<(const Rational& o) const {
    return num_ * o.den_ < o.num_ * den_;
}

bool Rational::operator<=(const Rational& o) const {
    return *this < o || *this == o;
}

Rational Rational::pow(unsigned e) const {
    Rational r(1), b = *this;
    while (e) {
        if (e & 1u) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

long double Rational::to_long_double() const {
    if (num_.is_zero()) return 0.0L;
    // Scale so both mantissas fit a long double, then divide.
    std::size_t bn = num_.bit_length(), bd = den_.bit_length();
    int shift_n = bn > 96 ? static_cast<int>(bn - 96) : 0;
    int shift_d = bd > 96 ? static_cast<int>(bd - 96) : 0;
    BigInt q, r;
    BigInt sn = shift_n ? num_ / BigInt(1).shifted_left(static_cast<unsigned>(shift_n)) : num_;
    BigInt sd = shift_d ? den_ / BigInt(1).shifted_left(static_cast<unsigned>(shift_d)) : den_;
    long double v = sn.to_long_double() / sd.to_long_double();
    return std::ldexp(v, shift_n - shift_d);
}

long double Rational::log_abs() const {
    if (num_.is_zero()) throw std::domain_error("Rational: log of zero");
    auto log_big = [](const BigInt& x) {
        std::size_t bits = x.bit_length();
        if (bits <= 96) return std::log(std::fabs(x.to_long_double()));
        BigInt top = x / BigInt(1).shifted_left(static_cast<unsigned>(bits - 64));
        return std::log(std::fabs(top.to_long_double())) +
               static_cast<long double>(bits - 64) * 0.6931471805599453094L;
    };
    return log_big(num_) - log_big(den_);
}

std::string Rational::to_string() const {
    if (den_ == BigInt(1)) return num_.to_string();
    return num_.to_string() + "/" + den_.to_string();
}

BigInt factorial(unsigned n) {
    BigInt r(1);
    for (unsigned i = 2; i <= n; ++i) r = r * BigInt(static_cast<long long>(i));
    return r;
}

BigInt binomial(unsigned n, unsigned k) {
    if (k > n) return BigInt(0);
    if (k > n - k) k = n - k;
    BigInt r(1);
    for (unsigned i = 0; i < k; ++i) {
        r = r * BigInt(static_cast<long long>(n - i));
        r = r / BigInt(static_cast<long long>(i + 1));
    }
    return r;
}

BigInt descending_factorial(std::uint64_t x, unsigned r) {
    BigInt p(1);
    for (unsigned i = 0; i < r; ++i) {
        if (x < i) return BigInt(0);
        p = p * BigInt::from_uint64(x - i);
    }
    return p;
}

BigInt descending_factorial2(std::uint64_t x, unsigned r) {
    BigInt p(1);
    for (unsigned i = 0; i < r; ++i) {
        if (x < 2ull * i) return BigInt(0);
        p = p * BigInt::from_uint64(x - 2ull * i);
    }
    return p;
}

}  // namespace confstat
