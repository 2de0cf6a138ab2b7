#pragma once

// Counter-based random bit streams.
//
// Stream (seed, index) produces 64-bit words
//     key    = mix64(seed) ^ mix64(index + G)
//     word_i = mix64(key + (i + 1) * G),   i = 0, 1, ...
// where G = 0x9E3779B97F4A7C15 and mix64 is the SplitMix64 finalizer
//     z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//     z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//     z =  z ^ (z >> 31)
// Bits are taken from each word most significant first. Any trial can be
// replayed from (seed, index) alone, independent of scheduling.

#include <cstdint>
#include <stdexcept>

#include "acdelay/exact.hpp"
#include "acdelay/source.hpp"

namespace acdelay {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

class CounterBitStream final : public BitSource {
public:
    CounterBitStream(std::uint64_t seed, std::uint64_t index)
        : key_(mix64(seed) ^ mix64(index + kGolden)) {}

    std::uint64_t next_word() { return mix64(key_ + (++counter_) * kGolden); }

    bool next_bit() override {
        if (remaining_ == 0) {
            word_ = next_word();
            remaining_ = 64;
        }
        --remaining_;
        return (word_ >> remaining_) & 1u;
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    std::uint64_t word_ = 0;
    unsigned remaining_ = 0;
};

/// Replays a fixed bit string; throws std::out_of_range when exhausted.
class ScriptedBits final : public BitSource {
public:
    explicit ScriptedBits(BitString bits) : bits_(std::move(bits)) {}
    bool next_bit() override {
        if (pos_ >= bits_.size()) throw std::out_of_range("scripted bit stream exhausted");
        return bits_[pos_++];
    }
    std::size_t consumed() const { return pos_; }

private:
    BitString bits_;
    std::size_t pos_ = 0;
};

}  // namespace acdelay
