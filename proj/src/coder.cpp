#include "acdelay/coder.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace acdelay {

RationalInterval refine(const SourceModel& source, const RationalInterval& parent,
                        std::optional<Letter> previous, Letter letter) {
    check_letter(source, letter);
    const auto& cdf = source.next_cdf(previous);
    Rational p = cdf[letter + 1] - cdf[letter];
    if (p.is_zero())
        throw ValidationError("letter " + std::to_string(letter) + " has zero probability in this context");
    return {parent.low() + cdf[letter] * parent.width(), parent.width() * p};
}

RationalInterval source_interval(const SourceModel& source, std::span<const Letter> letters) {
    RationalInterval iv = RationalInterval::unit();
    std::optional<Letter> previous;
    for (Letter l : letters) {
        iv = refine(source, iv, previous, l);
        previous = l;
    }
    return iv;
}

Encoder::Encoder(const SourceModel& source) : source_(&source), interval_(RationalInterval::unit()) {}

BitString Encoder::push(Letter letter) {
    interval_ = refine(*source_, interval_, last_, letter);
    last_ = letter;
    ++consumed_;

    BitString out;
    const Rational high = interval_.high();
    for (;;) {
        Rational mid = midpoint(cover_);
        bool bit;
        if (high <= mid)
            bit = false;
        else if (interval_.low() >= mid)
            bit = true;
        else
            break;
        cover_ = cover_.child(bit);
        out.push_back(bit);
    }
    emitted_.append(out);
    return out;
}

BitString Encoder::flush_bits() const {
    // The midpoint lies inside I(x^n); take the shallowest dyadic interval
    // that starts at or after it and fits before high, else one ending at or
    // before it and starting after low. One of the two sides always works.
    const Rational low = interval_.low();
    const Rational high = interval_.high();
    const Rational mid = midpoint(cover_);
    for (unsigned level = cover_.level() + 1;; ++level) {
        Rational scale = Rational(1).scaled_pow2(level);
        // Right of the midpoint: first grid point >= mid.
        BigInt j = (mid * scale).floor();
        if (Rational(j, BigInt(1)) < mid * scale) j += 1;
        DyadicInterval right(level, j);
        if (right.high() <= high && right.low() >= low) return right.bits().suffix_from(cover_.level());
        // Left of the midpoint: last grid cell ending at or before mid.
        if (j >= 1) {
            DyadicInterval left(level, BigInt(j - 1));
            if (left.low() >= low && left.high() <= high) return left.bits().suffix_from(cover_.level());
        }
    }
}

Decoder::Decoder(const SourceModel& source) : source_(&source), interval_(RationalInterval::unit()) {}

std::vector<Letter> Decoder::push(bool bit) {
    received_ = received_.child(bit);
    const Rational low = received_.low();
    const Rational high = received_.high();
    const std::size_t letters = source_->alphabet_size();

    std::vector<Letter> out;
    for (;;) {
        // Letters of conditional probability 1 leave the interval unchanged.
        // They are emitted only together with the informative letter that
        // follows them; a forced run longer than the alphabet is a forced
        // cycle and is never emitted.
        std::vector<Letter> run;
        std::optional<Letter> previous;
        if (!decoded_.empty()) previous = decoded_.back();
        for (;;) {
            const auto& cdf = source_->next_cdf(previous);
            // Only the letter whose cell holds `low` can contain J(b^k).
            Rational offset = (low - interval_.low()) / interval_.width();
            auto it = std::upper_bound(cdf.begin(), cdf.end(), offset);
            const auto cell = static_cast<Letter>(it - cdf.begin() - 1);
            if (cell >= letters) return out;
            RationalInterval candidate = refine(*source_, interval_, previous, cell);
            if (!(high <= candidate.high())) return out;
            run.push_back(cell);
            previous = cell;
            if (candidate.width() != interval_.width()) {
                interval_ = std::move(candidate);
                break;
            }
            if (run.size() > letters) return out;
        }
        decoded_.insert(decoded_.end(), run.begin(), run.end());
        out.insert(out.end(), run.begin(), run.end());
    }
}

std::size_t pipeline_decoded_count(const SourceModel& source, std::span<const Letter> letters) {
    Encoder enc(source);
    Decoder dec(source);
    for (Letter l : letters) {
        BitString bits = enc.push(l);
        for (std::size_t i = 0; i < bits.size(); ++i) dec.push(bits[i]);
    }
    const auto& got = dec.decoded();
    if (got.size() > letters.size() || !std::equal(got.begin(), got.end(), letters.begin()))
        throw std::logic_error("decoder output is not a prefix of the encoder input");
    return got.size();
}

}  // namespace acdelay
