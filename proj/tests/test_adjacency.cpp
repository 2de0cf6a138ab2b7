#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "acdelay/adjacency.hpp"
#include "acdelay/coder.hpp"
#include "acdelay/errors.hpp"

using namespace acdelay;

namespace {

Rational R(long n, long d = 1) { return {n, d}; }

SourceModel ternary() { return MemorylessSource({R(1, 3), R(1, 3), R(1, 3)}); }

// Adjacents by trying k = 1, 2, ... directly from the definition.
Rational naive_left(const Rational& p, const Rational& a) {
    for (unsigned k = 1;; ++k)
        if (p - Rational::pow2_neg(k) >= a) return p - Rational::pow2_neg(k);
}
Rational naive_right(const Rational& p, const Rational& b) {
    for (unsigned k = 0;; ++k)
        if (p + Rational::pow2_neg(k) < b) return p + Rational::pow2_neg(k);
}

// Iterated adjacents in [a+delta, b-delta) by walking each side to the edge.
std::vector<Rational> naive_delta_set(const Rational& p, const RationalInterval& f, const Rational& delta) {
    std::vector<Rational> out;
    auto keep = [&](const Rational& q) { return f.low() + delta <= q && q < f.high() - delta; };
    if (keep(p)) out.push_back(p);
    for (Rational q = p; q > f.low() && q - f.low() >= delta;) {
        q = naive_left(q, f.low());
        if (keep(q)) out.push_back(q);
    }
    for (Rational q = p; f.high() - q > delta;) {
        q = naive_right(q, f.high());
        if (keep(q)) out.push_back(q);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// First m digits of the expansion of g in (0,1) that never ends in zeros.
BitString nonterminating_prefix(const Rational& g, unsigned m) {
    BigInt den = g.denominator();
    if (mpz_popcount(den.get_mpz_t()) == 1 && mpz_sizeinbase(den.get_mpz_t(), 2) - 1 <= m)
        return binary_expansion(g - Rational::pow2_neg(m + 1), m);
    return binary_expansion(g, m);
}

std::vector<Letter> letters(std::initializer_list<Letter> l) { return l; }

}  // namespace

TEST_CASE("left and right adjacents") {
    CHECK(left_adjacent(R(1, 2), R(0)) == R(0));
    CHECK(left_adjacent(R(1, 2), R(1, 3)) == R(3, 8));
    CHECK(left_adjacent(R(3, 4), R(0)) == R(1, 4));
    CHECK(right_adjacent(R(1, 2), R(1)) == R(3, 4));
    CHECK(right_adjacent(R(0), R(1)) == R(1, 2));
    CHECK(right_adjacent(R(1, 3), R(2, 3)) == R(7, 12));
    CHECK_THROWS_AS(left_adjacent(R(1, 3), R(1, 3)), DomainError);
    CHECK_THROWS_AS(right_adjacent(R(2, 3), R(2, 3)), DomainError);

    for (long d = 2; d < 40; ++d)
        for (long n = 1; n < d; ++n) {
            Rational p(n, d);
            for (Rational a : {R(0), R(1, 3), R(1, 7)}) {
                if (p <= a) continue;
                CHECK(left_adjacent(p, a) == naive_left(p, a));
            }
            for (Rational b : {R(1), R(2, 3), R(6, 7)}) {
                if (p >= b) continue;
                CHECK(right_adjacent(p, b) == naive_right(p, b));
            }
        }
}

TEST_CASE("iterated adjacents are monotone toward the edges") {
    auto frame = RationalInterval::from_endpoints(R(1, 3), R(2, 3));
    for (long n = 1; n < 30; ++n) {
        Rational p = frame.low() + frame.width() * R(n, 30);
        Rational q = p;
        for (int t = 0; t < 30 && q > frame.low(); ++t) {
            Rational next = left_adjacent(q, frame.low());
            CHECK(next < q);
            CHECK(next >= frame.low());
            q = next;
        }
        q = p;
        for (int t = 0; t < 30; ++t) {
            Rational next = right_adjacent(q, frame.high());
            CHECK(next > q);
            CHECK(next < frame.high());
            q = next;
        }
    }
}

TEST_CASE("delta sets") {
    auto unit = RationalInterval::unit();
    auto s = adjacent_delta_set(R(1, 2), unit, R(3, 10));
    CHECK(s.points == std::vector<Rational>{R(1, 2)});
    CHECK(adjacent_delta_set(R(1, 2), unit, R(6, 10)).points.empty());
    auto right_only = adjacent_delta_set(R(1, 8), unit, R(1, 4));
    for (const auto& q : right_only.points) CHECK(q > R(1, 8));
    CHECK_THROWS_AS(adjacent_delta_set(R(1, 2), unit, R(0)), DomainError);
    CHECK_THROWS_AS(adjacent_delta_set(R(1, 2), unit, R(1)), DomainError);
    CHECK_THROWS_AS(adjacent_delta_set(R(1), unit, R(1, 4)), DomainError);

    CHECK(delta_set_bound(R(1), R(1, 4)) == doctest::Approx(5.0));
    CHECK(delta_set_bound(R(1), R(1, 2)) == doctest::Approx(3.0));
    CHECK(delta_set_bound(R(2, 3), R(1, 6)) == doctest::Approx(5.0));
    CHECK_THROWS_AS(delta_set_bound(R(1), R(1)), DomainError);
}

TEST_CASE("delta sets against naive enumeration, size bound and ones count") {
    for (auto frame : {RationalInterval::unit(), RationalInterval::from_endpoints(R(1, 3), R(2, 3)),
                       RationalInterval::from_endpoints(R(1, 5), R(7, 8))}) {
        for (long n = 0; n < 64; ++n) {
            Rational p = frame.low() + frame.width() * R(n, 64) + frame.width() * R(1, 193);
            for (unsigned j = 1; j <= 12; ++j) {
                Rational delta = frame.width() * Rational::pow2_neg(j) * R(5, 7);
                auto set = adjacent_delta_set(p, frame, delta);
                CHECK(set.points == naive_delta_set(p, frame, delta));
                CHECK(static_cast<long double>(set.points.size()) <= delta_set_bound(frame.width(), delta) + 1e-12L);

                // Each left-adjacent still at least delta above a consumes a
                // distinct one among the first ceil(log2(1/delta)) digits of
                // p - a; the right side uses the expansion of b - p that never
                // terminates, since b itself is excluded.
                std::size_t left = 0, right = 0;
                for (const auto& q : set.points) (q < p ? left : right) += (q != p);
                unsigned m = resolution_digits(delta);
                if (p > frame.low()) CHECK(left <= ones_count_to_resolution(p - frame.low(), delta));
                CHECK(right <= nonterminating_prefix(frame.high() - p, m).ones());
            }
        }
    }
}

TEST_CASE("s0 blocking points") {
    auto frame = RationalInterval::from_endpoints(R(1, 3), R(2, 3));
    auto w = s0_blocking_point(R(1, 2), frame, RationalInterval::from_endpoints(R(4, 9), R(5, 9)));
    REQUIRE(w);
    CHECK(*w == R(1, 2));
    w = s0_blocking_point(R(1, 2), frame, RationalInterval::from_endpoints(R(5, 9), R(2, 3)));
    REQUIRE(w);
    CHECK(*w == R(5, 8));
    CHECK_FALSE(s0_blocking_point(R(1, 2), frame, RationalInterval::from_endpoints(R(15, 27), R(16, 27))));
    CHECK_THROWS_AS(s0_blocking_point(R(1, 2), frame, RationalInterval::from_endpoints(R(0), R(1, 2))), DomainError);
}

TEST_CASE("s0 blocking point against a fine delta set") {
    for (auto frame : {RationalInterval::unit(), RationalInterval::from_endpoints(R(1, 3), R(2, 3))}) {
        const long steps = 24;
        for (long i = 0; i < steps; ++i) {
            Rational p = frame.low() + frame.width() * R(i, steps);
            for (long lo = 0; lo < steps; ++lo)
                for (long hi = lo + 1; hi <= steps; ++hi) {
                    auto ext = RationalInterval::from_endpoints(frame.low() + frame.width() * R(lo, steps),
                                                                frame.low() + frame.width() * R(hi, steps));
                    Rational delta = frame.width() * Rational::pow2_neg(20);
                    if (lo > 0) delta = std::min(delta, ext.low() - frame.low());
                    if (hi < steps) delta = std::min(delta, frame.high() - ext.high());
                    auto set = adjacent_delta_set(p, frame, delta);
                    bool brute = std::any_of(set.points.begin(), set.points.end(),
                                             [&](const Rational& q) { return ext.strictly_contains(q); });
                    auto w = s0_blocking_point(p, frame, ext);
                    CHECK(brute == w.has_value());
                    if (w) CHECK(ext.strictly_contains(*w));
                }
        }
    }
}

TEST_CASE("delay oracles") {
    SourceModel b(MemorylessSource({R(1, 2), R(1, 2)}));
    auto d = delay_of_extension(b, letters({1, 0, 1}), {});
    REQUIRE(d.delay);
    CHECK(*d.delay == 0);

    auto t = ternary();
    d = delay_of_extension(t, letters({1}), letters({2, 0}));
    REQUIRE(d.delay);
    CHECK(*d.delay == 2);
    CHECK(delay_by_blocking_points(t, letters({1}), letters({2, 0})).delay == d.delay);

    std::vector<Letter> zeros(20, 0);
    for (std::size_t len = 0; len <= zeros.size(); ++len) {
        auto ext = std::span<const Letter>(zeros).first(len);
        auto s = delay_of_extension(t, letters({1}), ext);
        CHECK(s.censored());
        CHECK(s.horizon == len);
        CHECK(delay_by_blocking_points(t, letters({1}), ext).censored());
    }
}

TEST_CASE("blocking verdict matches covering on every extension") {
    std::vector<SourceModel> sources = {ternary(), MemorylessSource({R(1, 2), R(1, 4), R(1, 4)}),
                                        MemorylessSource({R(2, 5), R(3, 5)})};
    for (const auto& s : sources) {
        std::size_t k = s.alphabet_size();
        // depth-first over prefix (<= 2 letters) followed by extension (<= 4 letters)
        std::vector<std::vector<Letter>> prefixes{{}};
        for (std::size_t n = 0; n < 2; ++n) {
            auto cur = prefixes;
            for (const auto& x : cur)
                if (x.size() == n)
                    for (Letter l = 0; l < k; ++l) {
                        prefixes.push_back(x);
                        prefixes.back().push_back(l);
                    }
        }
        for (const auto& x : prefixes) {
            auto frame = source_interval(s, x);
            std::vector<std::vector<Letter>> exts{x};
            for (std::size_t d = 0; d <= 4; ++d) {
                std::vector<std::vector<Letter>> next;
                for (const auto& y : exts) {
                    auto ext = source_interval(s, y);
                    auto v = blocking_verdict(frame, ext);
                    CHECK_MESSAGE(v.decoded == covering_decoded(frame, ext), frame, " ", ext);
                    if (!v.decoded) {
                        REQUIRE(v.witness);
                        CHECK(ext.strictly_contains(*v.witness));
                    }
                    for (Letter l = 0; l < k; ++l) {
                        next.push_back(y);
                        next.back().push_back(l);
                    }
                }
                exts = std::move(next);
            }
        }
    }
}

TEST_CASE("right closure") {
    CHECK(right_closure(R(3, 4), R(1)) == R(3, 4));
    CHECK(right_closure(R(1, 2), R(1)) == R(1, 2));
    CHECK(right_closure(R(5, 8), R(1)) == R(7, 8));  // 5/8 -> 7/8, gap 1/8
    CHECK_FALSE(right_closure(R(1, 2), R(2, 3)));
    CHECK_THROWS_AS(right_closure(R(1), R(1)), DomainError);
}

TEST_CASE("blocking verdict on random frames") {
    std::mt19937_64 rng(3);
    auto pick = [&](long den) { return R(static_cast<long>(rng() % (den + 1)), den); };
    const long dens[] = {8, 16, 27, 30, 64, 81, 96, 100, 128};
    for (int t = 0; t < 20000; ++t) {
        long den = dens[rng() % 9];
        Rational a = pick(den), b = pick(den);
        if (a == b) continue;
        if (b < a) std::swap(a, b);
        auto frame = RationalInterval::from_endpoints(a, b);
        long sub = dens[rng() % 9] * 4;
        Rational u = a + (b - a) * pick(sub), v = a + (b - a) * pick(sub);
        if (u == v) continue;
        if (v < u) std::swap(u, v);
        auto ext = RationalInterval::from_endpoints(u, v);
        auto verdict = blocking_verdict(frame, ext);
        CHECK_MESSAGE(verdict.decoded == covering_decoded(frame, ext), frame, " ", ext);
    }
}
