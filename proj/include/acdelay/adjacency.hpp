#pragma once

/**
 * @file adjacency.hpp
 * @brief Adjacent points of an anchor inside a frame, and the two delay oracles.
 *
 * Inside a frame [a,b), the left-adjacent of p is p - 2^-k for the smallest
 * k >= 1 that stays at or above a; the right-adjacent is p + 2^-k for the
 * smallest k that stays strictly below b. Iterating either map walks
 * monotonically toward the corresponding edge. With p the midpoint of the
 * encoder's current dyadic cover and the frame equal to I(x^n), x^n is fully
 * decoded after d more letters exactly when no iterated adjacent lies strictly
 * inside I(x^{n+d}).
 */

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "acdelay/exact.hpp"
#include "acdelay/source.hpp"

namespace acdelay {

Rational left_adjacent(const Rational& p, const Rational& a);
Rational right_adjacent(const Rational& p, const Rational& b);

struct AdjacentSet {
    Rational anchor;
    RationalInterval frame;
    Rational delta;
    std::vector<Rational> points;  // ascending
};

/// Every iterated adjacent of p (p included) lying in [a + delta, b - delta).
AdjacentSet adjacent_delta_set(const Rational& p, const RationalInterval& frame, const Rational& delta);

/// 1 + 2 log2(width / delta).
long double delta_set_bound(const Rational& width, const Rational& delta);

/// An iterated adjacent of p strictly inside `ext`, if any. Only the first
/// adjacent past the near edge of `ext` has to be examined on each side.
std::optional<Rational> s0_blocking_point(const Rational& p, const RationalInterval& frame,
                                          const RationalInterval& ext);

struct DelayVerdict {
    bool decoded = false;
    std::optional<Rational> witness;
};

/// First iterated right-adjacent x of p (p included) with b - x = 2^-k,
/// k >= 1, if any. The right-adjacent excludes b itself, so past x the chain
/// only keeps halving the gap toward b, although [x, b) is already dyadic.
std::optional<Rational> right_closure(const Rational& p, const Rational& b);

/// Blocking-point form of the full-decode test for x^n after the extension
/// with interval `ext`, anchored at the midpoint of x^n's dyadic cover. A
/// dyadic I(x^n) is its own cover and is decoded outright. S0 points to the
/// right of right_closure(p, b) do not block: a cover ending at b is inside
/// the frame.
DelayVerdict blocking_verdict(const RationalInterval& prefix_interval, const RationalInterval& ext);

/// Covering form of the same test: the cover of `ext` lies inside the prefix interval.
bool covering_decoded(const RationalInterval& prefix_interval, const RationalInterval& ext);

/// Smallest d with x^{n+d} decoding x^n, or censored after `horizon` letters.
struct DelaySample {
    std::optional<std::size_t> delay;
    std::size_t horizon = 0;

    bool censored() const { return !delay.has_value(); }
};

/// Covering oracle over a given extension.
DelaySample delay_of_extension(const SourceModel& source, std::span<const Letter> prefix,
                               std::span<const Letter> extension);

/// The same quantity from the blocking-point criterion.
DelaySample delay_by_blocking_points(const SourceModel& source, std::span<const Letter> prefix,
                                     std::span<const Letter> extension);

}  // namespace acdelay
