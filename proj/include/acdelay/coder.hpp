#pragma once

/**
 * @file coder.hpp
 * @brief Sequential Elias encoder and decoder over exact intervals.
 *
 * The encoder keeps the source interval I(x^n) of everything consumed and
 * the deepest dyadic interval J(b^k) containing it; b^k is the output so
 * far. The decoder keeps J(b^k) for the bits it has received and the deepest
 * source interval I(x^m) containing it; x^m is its output so far, taking the
 * shortest x^m when letters of conditional probability 1 leave the interval
 * unchanged. Neither
 * side terminates the stream, so the gap between them is the coding delay.
 */

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "acdelay/exact.hpp"
#include "acdelay/source.hpp"

namespace acdelay {

/// Interval of the letters following `previous` inside `parent`: cell `letter`
/// of the conditional CDF, scaled into `parent`. Throws on a zero-probability letter.
RationalInterval refine(const SourceModel& source, const RationalInterval& parent,
                        std::optional<Letter> previous, Letter letter);

/// I(x^n): low = f(x^n), width = Pr(x^n).
RationalInterval source_interval(const SourceModel& source, std::span<const Letter> letters);

class Encoder {
public:
    explicit Encoder(const SourceModel& source);

    /// Consumes one letter and returns the bits that became determined.
    BitString push(Letter letter);

    const RationalInterval& interval() const { return interval_; }
    const DyadicInterval& cover() const { return cover_; }
    const BitString& emitted() const { return emitted_; }
    std::size_t letters_consumed() const { return consumed_; }

    /// Bits that pin a dyadic interval inside I(x^n), so that a decoder
    /// holding the full output recovers every consumed letter. Starts from
    /// the midpoint of the current cover. Does not change the state.
    BitString flush_bits() const;

private:
    const SourceModel* source_;
    RationalInterval interval_;
    DyadicInterval cover_;
    BitString emitted_;
    std::size_t consumed_ = 0;
    std::optional<Letter> last_;
};

class Decoder {
public:
    explicit Decoder(const SourceModel& source);

    /// Consumes one bit and returns the letters that became determined.
    std::vector<Letter> push(bool bit);

    const DyadicInterval& received() const { return received_; }
    const RationalInterval& interval() const { return interval_; }
    const std::vector<Letter>& decoded() const { return decoded_; }
    std::size_t bits_consumed() const { return received_.level(); }

private:
    const SourceModel* source_;
    DyadicInterval received_;
    RationalInterval interval_;
    std::vector<Letter> decoded_;
};

/// Pushes x through an encoder, forwards every bit to a decoder and returns
/// how many letters came out. Throws std::logic_error if the decoder ever
/// produces something other than a prefix of x.
std::size_t pipeline_decoded_count(const SourceModel& source, std::span<const Letter> letters);

}  // namespace acdelay
