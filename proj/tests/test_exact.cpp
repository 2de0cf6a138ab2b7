#include <doctest.h>

#include <random>

#include "acdelay/errors.hpp"
#include "acdelay/exact.hpp"

using namespace acdelay;

namespace {

Rational R(long n, long d = 1) { return {n, d}; }

// Deepest dyadic interval containing iv, by trying every (level, index)
// pair from the bottom up to a fixed depth.
DyadicInterval brute_cover(const RationalInterval& iv, unsigned max_level) {
    for (unsigned k = max_level + 1; k-- > 0;) {
        BigInt j = (iv.low().scaled_pow2(k)).floor();
        DyadicInterval d(k, j);
        if (d.contains(iv)) return d;
    }
    return {};
}

}  // namespace

TEST_CASE("rational basics") {
    CHECK(R(2, 4) == R(1, 2));
    CHECK(R(3, -6) == R(-1, 2));
    CHECK(R(-1, 2).denominator() == 2);
    CHECK(R(1, 3) + R(1, 6) == R(1, 2));
    CHECK(R(1, 3) * R(3, 4) == R(1, 4));
    CHECK(R(1, 3) / R(2, 3) == R(1, 2));
    CHECK(R(1, 3) < R(1, 2));
    CHECK(Rational::pow2_neg(5) == R(1, 32));
    CHECK(pow(R(2, 3), 3) == R(8, 27));
    CHECK(R(7, 2).floor() == 3);
    CHECK(R(-7, 2).floor() == -4);
    CHECK(R(3, 4).scaled_pow2(-2) == R(3, 16));
    CHECK(R(3, 16).scaled_pow2(3) == R(3, 2));
    CHECK_THROWS_AS(R(1, 0), DomainError);
    CHECK_THROWS_AS(R(1) / R(0), DomainError);
}

TEST_CASE("rational parsing rejects decimals") {
    CHECK(Rational::parse("1/3") == R(1, 3));
    CHECK(Rational::parse("4") == R(4));
    CHECK(Rational::parse("-2/6") == R(-1, 3));
    CHECK_THROWS_AS(Rational::parse("0.5"), ValidationError);
    CHECK_THROWS_AS(Rational::parse("1e3"), ValidationError);
    CHECK_THROWS_AS(Rational::parse("1/0"), ValidationError);
    CHECK_THROWS_AS(Rational::parse("abc"), ValidationError);
    CHECK_THROWS_AS(Rational::parse(""), ValidationError);
}

TEST_CASE("to_long_double") {
    CHECK(R(1, 2).to_long_double() == 0.5L);
    CHECK(R(-3, 4).to_long_double() == -0.75L);
    CHECK(doctest::Approx(static_cast<double>(R(1, 3).to_long_double())) == 1.0 / 3);
    Rational tiny = Rational::pow2_neg(2000);
    CHECK(tiny.to_long_double() > 0);
    CHECK(tiny.to_long_double() < 1e-600L);
}

TEST_CASE("ceil_log2 and resolution digits") {
    CHECK(ceil_log2(R(1)) == 0);
    CHECK(ceil_log2(R(2)) == 1);
    CHECK(ceil_log2(R(3)) == 2);
    CHECK(ceil_log2(R(1, 2)) == -1);
    CHECK(ceil_log2(R(1, 3)) == -1);
    CHECK(ceil_log2(R(5, 16)) == -1);
    CHECK(ceil_log2(R(1, 4)) == -2);
    CHECK(resolution_digits(R(1, 8)) == 3);
    CHECK(resolution_digits(R(1, 6)) == 3);
    CHECK(resolution_digits(R(1, 4)) == 2);
    CHECK(resolution_digits(R(2)) == 0);
    for (long n = 1; n < 200; ++n)
        for (long d = 1; d < 40; ++d) {
            long k = ceil_log2(R(n, d));
            CHECK(Rational::pow2_neg(0).scaled_pow2(k) >= R(n, d));
            CHECK(Rational::pow2_neg(0).scaled_pow2(k - 1) < R(n, d));
        }
}

TEST_CASE("binary expansion") {
    CHECK(binary_expansion(R(1, 2), 3).str() == "100");
    CHECK(binary_expansion(R(1, 3), 6).str() == "010101");
    CHECK(binary_expansion(R(0), 4).str() == "0000");
    CHECK_THROWS_AS(binary_expansion(R(1), 3), DomainError);
    CHECK_THROWS_AS(binary_expansion(R(-1, 3), 3), DomainError);

    // Truncated expansion, read as a dyadic interval, contains x.
    for (long d = 1; d < 50; ++d)
        for (long n = 0; n < d; ++n) {
            Rational x(n, d);
            for (unsigned k : {1u, 5u, 12u}) CHECK(DyadicInterval::from_bits(binary_expansion(x, k)).contains(x));
        }
}

TEST_CASE("ones count to resolution") {
    CHECK(ones_count_to_resolution(R(1, 2), R(1, 8)) == 1);
    CHECK(ones_count_to_resolution(R(1, 3), R(1, 64)) == 3);
    CHECK(ones_count_to_resolution(R(0), R(1, 16)) == 0);
    CHECK_THROWS_AS(ones_count_to_resolution(R(1, 2), R(0)), DomainError);
    for (long d = 2; d < 30; ++d)
        for (long n = 0; n < d; ++n)
            for (long e = 1; e < 300; e += 7) {
                Rational x(n, d), delta(1, e);
                CHECK(ones_count_to_resolution(x, delta) == binary_expansion(x, resolution_digits(delta)).ones());
            }
}

TEST_CASE("bit strings") {
    auto b = BitString::parse("0110");
    CHECK(b.size() == 4);
    CHECK(b.ones() == 2);
    CHECK(BitString::parse("01").is_prefix_of(b));
    CHECK_FALSE(BitString::parse("00").is_prefix_of(b));
    CHECK(b.suffix_from(2).str() == "10");
    CHECK_THROWS_AS(BitString::parse("012"), ValidationError);
}

TEST_CASE("dyadic intervals") {
    auto d = DyadicInterval::from_bits(BitString::parse("10"));
    CHECK(d.level() == 2);
    CHECK(d.index() == 2);
    CHECK(d.low() == R(1, 2));
    CHECK(d.high() == R(3, 4));
    CHECK(d.bits().str() == "10");
    CHECK(d.child(true) == DyadicInterval::from_bits(BitString::parse("101")));
    CHECK_THROWS_AS(DyadicInterval(2, 4), DomainError);
    CHECK_THROWS_AS(DyadicInterval(2, -1), DomainError);

    // Prefix order matches nesting.
    for (std::string a : {"", "0", "01", "011", "1", "10"})
        for (std::string c : {"", "0", "01", "011", "1", "10"}) {
            auto ba = BitString::parse(a), bc = BitString::parse(c);
            CHECK(ba.is_prefix_of(bc) ==
                  DyadicInterval::from_bits(ba).as_interval().contains(DyadicInterval::from_bits(bc).as_interval()));
        }
}

TEST_CASE("midpoint") {
    CHECK(midpoint(DyadicInterval()) == R(1, 2));
    CHECK(midpoint(DyadicInterval::from_bits(BitString::parse("10"))) == R(5, 8));
    CHECK(midpoint(DyadicInterval::from_bits(BitString::parse("0"))) == R(1, 4));
}

TEST_CASE("minimal covering dyadic") {
    auto c = minimal_covering_dyadic(RationalInterval::from_endpoints(R(1, 3), R(2, 3)));
    CHECK(c.level() == 0);
    c = minimal_covering_dyadic(RationalInterval::from_endpoints(R(5, 9), R(2, 3)));
    CHECK(c.level() == 2);
    CHECK(c.index() == 2);
    c = minimal_covering_dyadic(RationalInterval::from_endpoints(R(1, 4), R(1, 2)));
    CHECK(c == DyadicInterval(2, 1));
    CHECK_THROWS_AS(minimal_covering_dyadic(RationalInterval(R(3, 4), R(1, 2))), DomainError);

    std::mt19937_64 rng(7);
    for (int t = 0; t < 3000; ++t) {
        long den = 1 + static_cast<long>(rng() % 300);
        long a = static_cast<long>(rng() % den), b = static_cast<long>(rng() % den);
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        auto iv = RationalInterval::from_endpoints(R(a, den), R(b + 1, den));
        auto cover = minimal_covering_dyadic(iv);
        CHECK(cover.contains(iv));
        CHECK_FALSE(cover.child(false).contains(iv));
        CHECK_FALSE(cover.child(true).contains(iv));
        CHECK(cover == brute_cover(iv, 20));
    }
    for (unsigned k = 0; k < 8; ++k)
        for (long j = 0; j < (1L << k); ++j) {
            DyadicInterval d(k, j);
            CHECK(minimal_covering_dyadic(d.as_interval()) == d);
        }
}

TEST_CASE("interval semantics are half-open") {
    auto iv = RationalInterval::from_endpoints(R(1, 3), R(2, 3));
    CHECK(iv.contains(R(1, 3)));
    CHECK_FALSE(iv.contains(R(2, 3)));
    CHECK_FALSE(iv.strictly_contains(R(1, 3)));
    CHECK(iv.strictly_contains(R(1, 2)));
    CHECK(iv.disjoint(RationalInterval::from_endpoints(R(2, 3), R(1))));
    CHECK_THROWS_AS(RationalInterval(R(0), R(0)), DomainError);
}
