#pragma once

/**
 * @file exact.hpp
 * @brief Exact rationals, bit strings and dyadic intervals.
 *
 * Every interval endpoint handled by the coder and the delay oracles is an
 * exact rational. Intervals are half-open [low, low + width) throughout, so
 * the upper endpoint is never a member.
 */

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace acdelay {

using BigInt = mpz_class;

/// Exact fraction in lowest terms with a positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(long value) : q_(value) {}
    Rational(int value) : q_(static_cast<long>(value)) {}
    Rational(const BigInt& num, const BigInt& den);
    Rational(long num, long den) : Rational(BigInt(num), BigInt(den)) {}

    /// Parses "n" or "n/d". Decimal literals and zero denominators are rejected.
    static Rational parse(std::string_view text);

    /// 2^-k.
    static Rational pow2_neg(unsigned k);

    BigInt numerator() const { return q_.get_num(); }
    BigInt denominator() const { return q_.get_den(); }

    int sign() const { return sgn(q_); }
    bool is_zero() const { return sign() == 0; }

    /// Truncated to a 64-bit significand.
    long double to_long_double() const;
    std::string str() const { return q_.get_str(); }

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    /// Multiplies by 2^k (k may be negative).
    Rational scaled_pow2(long k) const;

    /// floor(this) as an integer.
    BigInt floor() const;

    const mpq_class& raw() const { return q_; }

private:
    explicit Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }
    mpq_class q_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational pow(const Rational& base, unsigned exponent);

/// Smallest k >= 0 with 2^-k <= delta, i.e. ceil(log2(1/delta)). Requires 0 < delta.
unsigned resolution_digits(const Rational& delta);

/// ceil(log2(x)) for x > 0, computed exactly.
long ceil_log2(const Rational& x);

/// Half-open interval [low, low + width) with width > 0.
class RationalInterval {
public:
    RationalInterval(Rational low, Rational width);

    static RationalInterval unit() { return {Rational(0), Rational(1)}; }
    static RationalInterval from_endpoints(Rational low, const Rational& high);

    const Rational& low() const { return low_; }
    const Rational& width() const { return width_; }
    Rational high() const { return low_ + width_; }

    bool contains(const Rational& x) const { return low_ <= x && x < high(); }
    /// low < x < high.
    bool strictly_contains(const Rational& x) const { return low_ < x && x < high(); }
    bool contains(const RationalInterval& inner) const {
        return low_ <= inner.low_ && inner.high() <= high();
    }
    bool disjoint(const RationalInterval& other) const {
        return high() <= other.low_ || other.high() <= low_;
    }

    friend bool operator==(const RationalInterval&, const RationalInterval&) = default;

private:
    Rational low_;
    Rational width_;
};

std::ostream& operator<<(std::ostream& os, const RationalInterval& iv);

/// Sequence of binary digits b_1 b_2 ... b_k.
class BitString {
public:
    BitString() = default;
    static BitString parse(std::string_view text);

    void push_back(bool bit) { bits_.push_back(bit); }
    void append(const BitString& other);
    std::size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }
    bool operator[](std::size_t i) const { return bits_[i]; }
    std::size_t ones() const;

    bool is_prefix_of(const BitString& other) const;
    BitString suffix_from(std::size_t pos) const;
    std::string str() const;

    friend bool operator==(const BitString&, const BitString&) = default;

private:
    std::vector<bool> bits_;
};

/// [j 2^-k, (j+1) 2^-k); identified with the bit string of j padded to k digits.
class DyadicInterval {
public:
    DyadicInterval() = default;
    DyadicInterval(unsigned level, BigInt index);
    static DyadicInterval from_bits(const BitString& bits);

    unsigned level() const { return level_; }
    const BigInt& index() const { return index_; }

    Rational low() const;
    Rational width() const { return Rational::pow2_neg(level_); }
    Rational high() const;
    BitString bits() const;
    RationalInterval as_interval() const { return {low(), width()}; }

    DyadicInterval child(bool bit) const;
    bool contains(const RationalInterval& iv) const { return as_interval().contains(iv); }
    bool contains(const Rational& x) const { return as_interval().contains(x); }

    friend bool operator==(const DyadicInterval& a, const DyadicInterval& b) {
        return a.level_ == b.level_ && a.index_ == b.index_;
    }

private:
    unsigned level_ = 0;
    BigInt index_ = 0;
};

std::ostream& operator<<(std::ostream& os, const DyadicInterval& d);

/// First `depth` digits of the greedy binary expansion of x in [0,1).
BitString binary_expansion(const Rational& x, unsigned depth);

/// Number of ones among the first ceil(log2(1/delta)) digits of x, 0 < delta <= 1.
std::size_t ones_count_to_resolution(const Rational& x, const Rational& delta);

/// Deepest dyadic interval containing iv (iv inside [0,1)).
DyadicInterval minimal_covering_dyadic(const RationalInterval& iv);

/// Centre of d, i.e. the point 0.b_1...b_k1.
Rational midpoint(const DyadicInterval& d);

}  // namespace acdelay
