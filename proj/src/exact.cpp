#include "acdelay/exact.hpp"

#include <cmath>
#include <ostream>

#include "acdelay/errors.hpp"

namespace acdelay {

Rational::Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    auto bad = [&](const char* why) {
        return ValidationError("invalid rational '" + std::string(text) + "': " + why);
    };
    if (text.empty()) throw bad("empty");
    if (text.find_first_of(".eE") != std::string_view::npos) throw bad("decimal literals are not exact");

    auto parse_int = [&](std::string_view part, bool allow_sign) {
        std::size_t i = 0;
        if (allow_sign && !part.empty() && (part[0] == '-' || part[0] == '+')) i = 1;
        if (i == part.size()) throw bad("missing digits");
        for (std::size_t j = i; j < part.size(); ++j)
            if (part[j] < '0' || part[j] > '9') throw bad("unexpected character");
        std::string s(part[0] == '+' ? part.substr(1) : part);
        return BigInt(s, 10);
    };

    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text, true), BigInt(1));
    BigInt den = parse_int(text.substr(slash + 1), false);
    if (den == 0) throw bad("zero denominator");
    return Rational(parse_int(text.substr(0, slash), true), den);
}

Rational Rational::pow2_neg(unsigned k) {
    BigInt den = 1;
    den <<= k;
    return Rational(BigInt(1), den);
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw DomainError("division by zero");
    q_ /= o.q_;
    return *this;
}

Rational Rational::scaled_pow2(long k) const {
    mpq_class r;
    if (k >= 0)
        mpq_mul_2exp(r.get_mpq_t(), q_.get_mpq_t(), static_cast<mp_bitcnt_t>(k));
    else
        mpq_div_2exp(r.get_mpq_t(), q_.get_mpq_t(), static_cast<mp_bitcnt_t>(-k));
    return Rational(std::move(r));
}

BigInt Rational::floor() const {
    BigInt out;
    mpz_fdiv_q(out.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return out;
}

long double Rational::to_long_double() const {
    static_assert(sizeof(unsigned long) == 8, "expects a 64-bit unsigned long");
    if (is_zero()) return 0.0L;
    BigInt num = abs(q_.get_num());
    BigInt den = q_.get_den();
    // Scale so the integer quotient carries exactly 64 significant bits.
    long shift = 64 - (static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) -
                       static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2)));
    if (shift >= 0)
        num <<= static_cast<mp_bitcnt_t>(shift);
    else
        den <<= static_cast<mp_bitcnt_t>(-shift);
    BigInt quotient;
    mpz_tdiv_q(quotient.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    while (mpz_sizeinbase(quotient.get_mpz_t(), 2) > 64) {
        quotient >>= 1;
        --shift;
    }
    long double value = std::ldexp(static_cast<long double>(mpz_get_ui(quotient.get_mpz_t())),
                                   static_cast<int>(-shift));
    return sign() < 0 ? -value : value;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational pow(const Rational& base, unsigned exponent) {
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), base.raw().get_num_mpz_t(), exponent);
    mpz_pow_ui(den.get_mpz_t(), base.raw().get_den_mpz_t(), exponent);
    return Rational(num, den);
}

unsigned resolution_digits(const Rational& delta) {
    if (delta.sign() <= 0) throw DomainError("resolution must be positive");
    long k = ceil_log2(Rational(1) / delta);
    return k > 0 ? static_cast<unsigned>(k) : 0u;
}

long ceil_log2(const Rational& x) {
    if (x.sign() <= 0) throw DomainError("ceil_log2 of non-positive value");
    // Start from the bit-length estimate and correct by at most a couple of steps.
    long k = static_cast<long>(mpz_sizeinbase(x.raw().get_num_mpz_t(), 2)) -
             static_cast<long>(mpz_sizeinbase(x.raw().get_den_mpz_t(), 2));
    while (Rational(1).scaled_pow2(k) < x) ++k;
    while (Rational(1).scaled_pow2(k - 1) >= x) --k;
    return k;
}

RationalInterval::RationalInterval(Rational low, Rational width)
    : low_(std::move(low)), width_(std::move(width)) {
    if (width_.sign() <= 0) throw DomainError("interval width must be positive");
}

RationalInterval RationalInterval::from_endpoints(Rational low, const Rational& high) {
    Rational width = high - low;
    return {std::move(low), std::move(width)};
}

std::ostream& operator<<(std::ostream& os, const RationalInterval& iv) {
    return os << '[' << iv.low() << ", " << iv.high() << ')';
}

BitString BitString::parse(std::string_view text) {
    BitString out;
    for (char c : text) {
        if (c != '0' && c != '1') throw ValidationError("bit strings contain only '0' and '1'");
        out.push_back(c == '1');
    }
    return out;
}

void BitString::append(const BitString& other) {
    bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end());
}

std::size_t BitString::ones() const {
    std::size_t n = 0;
    for (bool b : bits_) n += b;
    return n;
}

bool BitString::is_prefix_of(const BitString& other) const {
    if (size() > other.size()) return false;
    for (std::size_t i = 0; i < size(); ++i)
        if (bits_[i] != other.bits_[i]) return false;
    return true;
}

BitString BitString::suffix_from(std::size_t pos) const {
    BitString out;
    for (std::size_t i = pos; i < size(); ++i) out.push_back(bits_[i]);
    return out;
}

std::string BitString::str() const {
    std::string s;
    s.reserve(size());
    for (bool b : bits_) s.push_back(b ? '1' : '0');
    return s;
}

DyadicInterval::DyadicInterval(unsigned level, BigInt index) : level_(level), index_(std::move(index)) {
    BigInt limit = 1;
    limit <<= level_;
    if (index_ < 0 || index_ >= limit) throw DomainError("dyadic index out of range for its level");
}

DyadicInterval DyadicInterval::from_bits(const BitString& bits) {
    BigInt j = 0;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        j <<= 1;
        if (bits[i]) j += 1;
    }
    return {static_cast<unsigned>(bits.size()), j};
}

Rational DyadicInterval::low() const {
    BigInt den = 1;
    den <<= level_;
    return Rational(index_, den);
}

Rational DyadicInterval::high() const {
    BigInt den = 1;
    den <<= level_;
    return Rational(BigInt(index_ + 1), den);
}

BitString DyadicInterval::bits() const {
    BitString out;
    for (unsigned i = level_; i-- > 0;) out.push_back(mpz_tstbit(index_.get_mpz_t(), i) != 0);
    return out;
}

DyadicInterval DyadicInterval::child(bool bit) const {
    DyadicInterval c;
    c.level_ = level_ + 1;
    c.index_ = index_ * 2 + (bit ? 1 : 0);
    return c;
}

std::ostream& operator<<(std::ostream& os, const DyadicInterval& d) {
    return os << "J(" << (d.level() == 0 ? std::string("-") : d.bits().str()) << ')';
}

BitString binary_expansion(const Rational& x, unsigned depth) {
    if (x.sign() < 0 || x >= Rational(1)) throw DomainError("binary expansion needs x in [0,1)");
    // Digit i is 1 iff the residual is at least 2^-i; work on the scaled
    // numerator so each step is one doubling and one comparison.
    BigInt num = x.numerator();
    const BigInt den = x.denominator();
    BitString out;
    for (unsigned i = 0; i < depth; ++i) {
        num <<= 1;
        bool one = num >= den;
        if (one) num -= den;
        out.push_back(one);
    }
    return out;
}

std::size_t ones_count_to_resolution(const Rational& x, const Rational& delta) {
    if (delta.sign() <= 0 || delta > Rational(1)) throw DomainError("resolution must lie in (0,1]");
    return binary_expansion(x, resolution_digits(delta)).ones();
}

DyadicInterval minimal_covering_dyadic(const RationalInterval& iv) {
    if (iv.low().sign() < 0 || iv.high() > Rational(1))
        throw DomainError("interval must lie inside [0,1)");
    // Common denominator, then descend while one half of the current dyadic
    // interval still holds [low, high).
    BigInt den = iv.low().denominator() * iv.width().denominator();
    BigInt lo = iv.low().numerator() * iv.width().denominator();
    BigInt hi = lo + iv.width().numerator() * iv.low().denominator();
    DyadicInterval d;
    for (;;) {
        lo <<= 1;
        hi <<= 1;
        if (hi <= den) {
            d = d.child(false);
        } else if (lo >= den) {
            d = d.child(true);
            lo -= den;
            hi -= den;
        } else {
            return d;
        }
    }
}

Rational midpoint(const DyadicInterval& d) {
    return d.low() + Rational::pow2_neg(d.level() + 1);
}

}  // namespace acdelay
