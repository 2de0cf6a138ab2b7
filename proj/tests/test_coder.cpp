#include <doctest.h>

#include <algorithm>
#include <span>
#include <vector>

#include "acdelay/coder.hpp"
#include "acdelay/errors.hpp"
#include "acdelay/rng.hpp"

using namespace acdelay;

namespace {

Rational R(long n, long d = 1) { return {n, d}; }

SourceModel ternary() { return MemorylessSource({R(1, 3), R(1, 3), R(1, 3)}); }
SourceModel halves() { return MemorylessSource({R(1, 2), R(1, 2)}); }

// All sequences of length n over k letters, in lexicographic order.
std::vector<std::vector<Letter>> all_sequences(std::size_t k, std::size_t n) {
    std::vector<std::vector<Letter>> out{{}};
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::vector<Letter>> next;
        for (const auto& s : out)
            for (Letter x = 0; x < k; ++x) {
                next.push_back(s);
                next.back().push_back(x);
            }
        out = std::move(next);
    }
    return out;
}

// Interval from the explicit product formula, independent of refine().
RationalInterval product_interval(const std::vector<Rational>& p, const std::vector<Letter>& x) {
    Rational low(0), width(1);
    for (Letter l : x) {
        Rational f(0);
        for (Letter j = 0; j < l; ++j) f += p[j];
        low += f * width;
        width *= p[l];
    }
    return {low, width};
}

}  // namespace

TEST_CASE("source intervals") {
    auto t = ternary();
    std::vector<Letter> one{1}, oneone{1, 1};
    CHECK(source_interval(t, one) == RationalInterval::from_endpoints(R(1, 3), R(2, 3)));
    CHECK(source_interval(t, oneone) == RationalInterval::from_endpoints(R(4, 9), R(5, 9)));
    CHECK(source_interval(t, {}) == RationalInterval::unit());
    std::vector<Letter> bad{3};
    CHECK_THROWS_AS(source_interval(t, bad), ValidationError);

    std::vector<Rational> p{R(1, 2), R(1, 4), R(1, 4)};
    SourceModel h(MemorylessSource{p});
    for (std::size_t n = 0; n <= 4; ++n) {
        auto seqs = all_sequences(3, n);
        Rational total(0);
        for (std::size_t i = 0; i < seqs.size(); ++i) {
            auto iv = source_interval(h, seqs[i]);
            CHECK(iv == product_interval(p, seqs[i]));
            total += iv.width();
            if (i > 0) CHECK(source_interval(h, seqs[i - 1]).disjoint(iv));
        }
        CHECK(total == R(1));
    }
}

TEST_CASE("encoder examples") {
    auto t = ternary();
    Encoder ones(t);
    for (int i = 0; i < 40; ++i) CHECK(ones.push(1).empty());
    CHECK(ones.emitted().empty());

    Encoder zero(t);
    CHECK(zero.push(0).str() == "0");
    Encoder two(t);
    CHECK(two.push(2).str() == "1");
    CHECK_THROWS_AS(two.push(3), ValidationError);
}

TEST_CASE("decoder examples") {
    auto t = ternary();
    Decoder d(t);
    CHECK(d.decoded().empty());
    CHECK(d.push(false).empty());
    CHECK(d.push(false) == std::vector<Letter>{0});
}

TEST_CASE("encoder state equals closed-form covering, ternary n <= 6") {
    auto t = ternary();
    for (std::size_t n = 0; n <= 6; ++n)
        for (const auto& x : all_sequences(3, n)) {
            Encoder enc(t);
            for (Letter l : x) enc.push(l);
            auto cover = minimal_covering_dyadic(source_interval(t, x));
            CHECK(enc.emitted() == cover.bits());
            CHECK(enc.cover() == cover);
            CHECK(enc.interval() == source_interval(t, x));
        }
}

TEST_CASE("midpoint containment and monotonicity") {
    std::vector<SourceModel> sources = {ternary(), MemorylessSource({R(1, 2), R(1, 4), R(1, 4)}),
                                        MemorylessSource({R(9, 10), R(1, 10)}),
                                        MarkovSource::stationary({{R(9, 10), R(1, 10)}, {R(1, 2), R(1, 2)}})};
    for (const auto& s : sources) {
        for (std::uint64_t trial = 0; trial < 50; ++trial) {
            CounterBitStream bits(5, trial);
            auto x = sample_sequence(s, 30, bits);
            Encoder enc(s);
            Decoder dec(s);
            std::size_t decoded = 0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                std::size_t before = enc.emitted().size();
                auto fresh = enc.push(x[i]);
                CHECK(enc.emitted().size() == before + fresh.size());
                CHECK(enc.cover().contains(enc.interval()));
                if (fresh.empty()) CHECK(enc.interval().strictly_contains(midpoint(enc.cover())));
                for (std::size_t b = 0; b < fresh.size(); ++b)
                    for (Letter l : dec.push(fresh[b])) {
                        REQUIRE(decoded <= i);
                        CHECK(l == x[decoded]);
                        ++decoded;
                    }
                CHECK(decoded == dec.decoded().size());
            }
        }
    }
}

TEST_CASE("pipeline") {
    auto t = ternary();
    std::vector<Letter> one{1};
    CHECK(pipeline_decoded_count(t, one) == 0);

    // Decoded count equals the longest prefix whose interval holds the cover.
    for (std::size_t n = 0; n <= 5; ++n)
        for (const auto& x : all_sequences(3, n)) {
            auto cover = minimal_covering_dyadic(source_interval(t, x));
            std::size_t m = 0;
            while (m < x.size() &&
                   source_interval(t, std::span<const Letter>(x).first(m + 1)).contains(cover.as_interval()))
                ++m;
            CHECK(pipeline_decoded_count(t, x) == m);
        }
    std::vector<Letter> s{1, 2, 0};
    CHECK(pipeline_decoded_count(t, s) == 1);

    auto b = halves();
    for (std::size_t n = 0; n <= 8; ++n)
        for (const auto& x : all_sequences(2, n)) CHECK(pipeline_decoded_count(b, x) == n);
}

TEST_CASE("flush lets the decoder finish") {
    std::vector<SourceModel> sources = {ternary(), MemorylessSource({R(1, 2), R(1, 4), R(1, 4)}),
                                        MemorylessSource({R(9, 10), R(1, 10)})};
    for (const auto& s : sources)
        for (std::uint64_t trial = 0; trial < 40; ++trial) {
            CounterBitStream bits(11, trial);
            auto x = sample_sequence(s, 12, bits);
            Encoder enc(s);
            for (Letter l : x) enc.push(l);
            auto before = enc.emitted();
            BitString all = enc.emitted();
            all.append(enc.flush_bits());
            CHECK(enc.emitted() == before);
            Decoder dec(s);
            for (std::size_t i = 0; i < all.size(); ++i) dec.push(all[i]);
            REQUIRE(dec.decoded().size() >= x.size());
            CHECK(std::equal(x.begin(), x.end(), dec.decoded().begin()));
        }
}

TEST_CASE("letters of probability one") {
    // Every letter of the swap chain is forced once the first is known.
    SourceModel swap = MarkovSource({{R(0), R(1)}, {R(1), R(0)}}, {R(1), R(0)});
    std::vector<Letter> alt{0, 1, 0, 1, 0, 1};
    Encoder enc(swap);
    for (Letter l : alt) CHECK(enc.push(l).empty());
    CHECK(pipeline_decoded_count(swap, alt) == 0);
    CHECK_THROWS_AS(enc.push(1), ValidationError);

    // Letter 0 is always followed by 1; decoding emits the forced 1 only
    // together with the informative letter after it.
    SourceModel m = MarkovSource({{R(0), R(1)}, {R(1, 3), R(2, 3)}}, {R(1, 2), R(1, 2)});
    for (std::uint64_t trial = 0; trial < 200; ++trial) {
        CounterBitStream bits(8, trial);
        auto x = sample_sequence(m, 15, bits);
        Encoder e(m);
        Decoder d(m);
        for (Letter l : x) {
            auto fresh = e.push(l);
            for (std::size_t i = 0; i < fresh.size(); ++i) d.push(fresh[i]);
            REQUIRE(d.decoded().size() <= e.letters_consumed());
            CHECK(std::equal(d.decoded().begin(), d.decoded().end(), x.begin()));
        }
        BitString tail = e.flush_bits();
        for (std::size_t i = 0; i < tail.size(); ++i) d.push(tail[i]);
        // The flush pins I(x); only a trailing run of forced letters may
        // still be pending.
        std::size_t need = x.size();
        while (need > 0 &&
               conditional_prob(m, std::span<const Letter>(x).first(need - 1), x[need - 1]) == R(1))
            --need;
        CHECK(d.decoded().size() >= need);
        std::size_t common = std::min(d.decoded().size(), x.size());
        CHECK(std::equal(x.begin(), x.begin() + common, d.decoded().begin()));
    }
}
