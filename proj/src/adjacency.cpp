#include "acdelay/adjacency.hpp"

#include <algorithm>
#include <cmath>

#include "acdelay/coder.hpp"
#include "acdelay/errors.hpp"

namespace acdelay {

namespace {

// Smallest k >= 1 with 2^-k <= gap.
unsigned step_at_most(const Rational& gap) {
    return std::max(1u, resolution_digits(gap));
}

// Smallest k >= 1 with 2^-k < gap.
unsigned step_below(const Rational& gap) {
    unsigned k = step_at_most(gap);
    if (Rational::pow2_neg(k) == gap) ++k;
    return k;
}

// 2^-k with k >= 1, or nothing.
std::optional<unsigned> is_power_of_two(const Rational& x) {
    if (x.sign() <= 0 || x.numerator() != 1) return std::nullopt;
    const BigInt& den = x.denominator();
    if (den < 2 || mpz_popcount(den.get_mpz_t()) != 1) return std::nullopt;
    return static_cast<unsigned>(mpz_sizeinbase(den.get_mpz_t(), 2) - 1);
}

}  // namespace

Rational left_adjacent(const Rational& p, const Rational& a) {
    if (p <= a) throw DomainError("left-adjacent needs a < p");
    return p - Rational::pow2_neg(step_at_most(p - a));
}

Rational right_adjacent(const Rational& p, const Rational& b) {
    if (p >= b) throw DomainError("right-adjacent needs p < b");
    return p + Rational::pow2_neg(step_below(b - p));
}

AdjacentSet adjacent_delta_set(const Rational& p, const RationalInterval& frame, const Rational& delta) {
    if (delta.sign() <= 0) throw DomainError("delta must be positive; the full adjacent set is infinite");
    if (!frame.contains(p)) throw DomainError("anchor must lie in the frame");
    if (delta >= frame.width()) throw DomainError("delta must be smaller than the frame width");

    const Rational a = frame.low();
    const Rational b = frame.high();
    const Rational lo = a + delta;
    const Rational hi = b - delta;
    auto keep = [&](const Rational& x) { return lo <= x && x < hi; };

    AdjacentSet set{p, frame, delta, {}};
    if (keep(p)) set.points.push_back(p);
    for (Rational x = p; x > a;) {
        x = left_adjacent(x, a);
        if (x < lo) break;
        if (keep(x)) set.points.push_back(x);
    }
    for (Rational x = p;;) {
        x = right_adjacent(x, b);
        if (x >= hi) break;
        if (keep(x)) set.points.push_back(x);
    }
    std::sort(set.points.begin(), set.points.end());
    return set;
}

long double delta_set_bound(const Rational& width, const Rational& delta) {
    if (delta.sign() <= 0 || width.sign() <= 0 || delta >= width)
        throw DomainError("delta-set bound needs 0 < delta < width");
    return 1.0L + 2.0L * std::log2((width / delta).to_long_double());
}

std::optional<Rational> s0_blocking_point(const Rational& p, const RationalInterval& frame,
                                          const RationalInterval& ext) {
    if (!frame.contains(p)) throw DomainError("anchor must lie in the frame");
    if (!frame.contains(ext)) throw DomainError("extension interval must lie in the frame");
    const Rational a = frame.low();
    const Rational b = frame.high();
    const Rational lo = ext.low();
    const Rational hi = ext.high();

    if (ext.strictly_contains(p)) return p;
    if (hi <= p) {
        // Left adjacents decrease toward a; the first one below hi decides.
        for (Rational x = p; x > a;) {
            x = left_adjacent(x, a);
            if (x < hi) {
                if (x > lo) return x;
                return std::nullopt;
            }
        }
        return std::nullopt;
    }
    // lo >= p: right adjacents increase toward b; the first one above lo decides.
    for (Rational x = p;;) {
        x = right_adjacent(x, b);
        if (x > lo) {
            if (x < hi) return x;
            return std::nullopt;
        }
    }
}

std::optional<Rational> right_closure(const Rational& p, const Rational& b) {
    if (p >= b) throw DomainError("right closure needs p < b");
    // Only a dyadic gap can be used up by finitely many steps.
    if (mpz_popcount((b - p).denominator().get_mpz_t()) != 1) return std::nullopt;
    for (Rational x = p;; x = right_adjacent(x, b))
        if (is_power_of_two(b - x)) return x;
}

DelayVerdict blocking_verdict(const RationalInterval& prefix_interval, const RationalInterval& ext) {
    DyadicInterval cover = minimal_covering_dyadic(prefix_interval);
    if (cover.as_interval() == prefix_interval) return {true, std::nullopt};
    const Rational p = midpoint(cover);
    auto witness = s0_blocking_point(p, prefix_interval, ext);
    if (witness && *witness > p) {
        auto c = right_closure(p, prefix_interval.high());
        if (c && *witness > *c) witness.reset();
    }
    return {!witness.has_value(), witness};
}

bool covering_decoded(const RationalInterval& prefix_interval, const RationalInterval& ext) {
    return prefix_interval.contains(minimal_covering_dyadic(ext).as_interval());
}

namespace {

template <class Decided>
DelaySample first_decoded(const SourceModel& source, std::span<const Letter> prefix,
                          std::span<const Letter> extension, Decided decided) {
    const RationalInterval frame = source_interval(source, prefix);
    RationalInterval iv = frame;
    std::optional<Letter> previous;
    if (!prefix.empty()) previous = prefix.back();
    DelaySample sample;
    sample.horizon = extension.size();
    for (std::size_t d = 0;; ++d) {
        if (decided(frame, iv)) {
            sample.delay = d;
            return sample;
        }
        if (d == extension.size()) return sample;
        iv = refine(source, iv, previous, extension[d]);
        previous = extension[d];
    }
}

}  // namespace

DelaySample delay_of_extension(const SourceModel& source, std::span<const Letter> prefix,
                               std::span<const Letter> extension) {
    return first_decoded(source, prefix, extension, covering_decoded);
}

DelaySample delay_by_blocking_points(const SourceModel& source, std::span<const Letter> prefix,
                                     std::span<const Letter> extension) {
    return first_decoded(source, prefix, extension, [](const RationalInterval& frame, const RationalInterval& ext) {
        return blocking_verdict(frame, ext).decoded;
    });
}

}  // namespace acdelay
