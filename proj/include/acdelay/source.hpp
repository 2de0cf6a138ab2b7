#pragma once

/**
 * @file source.hpp
 * @brief Memoryless and first-order Markov source models.
 *
 * A Markov source emits its state index as the letter, so the letter
 * alphabet and the state space coincide. Higher-order sources are reduced to
 * first order with expand_order(); the composite state is then the letter
 * seen by the coder, and letter_of_state() recovers the original symbol.
 */

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "acdelay/errors.hpp"
#include "acdelay/exact.hpp"

namespace acdelay {

using Letter = std::uint32_t;
using RationalMatrix = std::vector<std::vector<Rational>>;

/// Source of uniformly random bits.
class BitSource {
public:
    virtual ~BitSource() = default;
    virtual bool next_bit() = 0;
};

class MemorylessSource {
public:
    /// Throws ValidationError naming the offending entry.
    explicit MemorylessSource(std::vector<Rational> probs);

    std::size_t alphabet_size() const { return probs_.size(); }
    const std::vector<Rational>& probs() const { return probs_; }
    /// f_1: cumulative probabilities, size K + 1, starting at 0 and ending at 1.
    const std::vector<Rational>& cdf() const { return cdf_; }
    const Rational& alpha() const { return alpha_; }
    const Rational& beta() const { return beta_; }

private:
    std::vector<Rational> probs_;
    std::vector<Rational> cdf_;
    Rational alpha_;
    Rational beta_;
};

class MarkovSource {
public:
    /// Chain started from an explicit initial law.
    MarkovSource(RationalMatrix transition, std::vector<Rational> initial);
    /// Chain started from its stationary law; throws ReducibleChain when none is unique.
    static MarkovSource stationary(RationalMatrix transition);

    std::size_t states() const { return transition_.size(); }
    const RationalMatrix& transition() const { return transition_; }
    const std::vector<Rational>& initial() const { return initial_; }
    const std::vector<Rational>& row_cdf(std::size_t state) const { return row_cdf_[state]; }
    const std::vector<Rational>& initial_cdf() const { return initial_cdf_; }

    unsigned declared_order() const { return order_; }
    std::size_t base_alphabet() const { return base_alphabet_; }
    /// Symbol of the underlying order-r source emitted on entering `state`.
    Letter letter_of_state(std::size_t state) const;

    /// States that can be the most recent letter at some time n >= 1.
    std::vector<bool> reachable_states() const;

    /// Marks the chain as the expansion of an order-r source over `base` letters.
    void annotate_order(unsigned order, std::size_t base);

private:
    RationalMatrix transition_;
    std::vector<Rational> initial_;
    std::vector<std::vector<Rational>> row_cdf_;
    std::vector<Rational> initial_cdf_;
    unsigned order_ = 1;
    std::size_t base_alphabet_ = 0;
};

/// Either kind of source behind one conditional-law interface.
class SourceModel {
public:
    SourceModel(MemorylessSource s) : model_(std::move(s)) {}
    SourceModel(MarkovSource s) : model_(std::move(s)) {}

    std::size_t alphabet_size() const;

    /// Law of the next letter given the previous one (nullopt at the start).
    const std::vector<Rational>& next_probs(std::optional<Letter> previous) const;
    /// Cumulative form of next_probs, size K + 1.
    const std::vector<Rational>& next_cdf(std::optional<Letter> previous) const;

    bool is_memoryless() const { return std::holds_alternative<MemorylessSource>(model_); }
    const MemorylessSource* memoryless() const { return std::get_if<MemorylessSource>(&model_); }
    const MarkovSource* markov() const { return std::get_if<MarkovSource>(&model_); }

private:
    std::variant<MemorylessSource, MarkovSource> model_;
};

/// Reducible chain; carries its communicating classes.
class ReducibleChain : public ValidationError {
public:
    ReducibleChain(std::vector<std::vector<std::size_t>> classes);
    const std::vector<std::vector<std::size_t>>& classes() const { return classes_; }

private:
    std::vector<std::vector<std::size_t>> classes_;
};

struct ErgodicityReport {
    bool irreducible = false;
    bool aperiodic = false;
    unsigned period = 0;  // gcd of cycle lengths; 0 when the chain has no cycle
    Rational xi;
    bool deterministic_cycle = false;
    std::vector<std::vector<std::size_t>> classes;

    /// xi < 1 certifies geometric decay of gamma and hence a bounded expected delay.
    bool certified() const { return !deterministic_cycle; }
};

void check_letter(const SourceModel& source, Letter letter);

Rational conditional_prob(const SourceModel& source, std::span<const Letter> history, Letter next);

/// Exact sampling: each letter is drawn by refining a random dyadic interval
/// until it fits inside one cell of the conditional CDF.
std::vector<Letter> sample_sequence(const SourceModel& source, std::size_t n, BitSource& bits);
Letter sample_letter(const std::vector<Rational>& cdf, BitSource& bits);

/// Strongly connected components of the positive-transition graph, in
/// ascending order of their smallest member.
std::vector<std::vector<std::size_t>> communicating_classes(const RationalMatrix& transition);

/// Solves pi P = pi, sum pi = 1 over the rationals. Throws ReducibleChain.
std::vector<Rational> stationary_distribution(const RationalMatrix& transition);

/// Max-product matrix product: (A*B)[i][j] = max_k A[i][k] B[k][j].
RationalMatrix max_product(const RationalMatrix& a, const RationalMatrix& b);
/// d-th max-product power (d >= 1) by repeated squaring.
RationalMatrix max_product_power(const RationalMatrix& m, unsigned d);

/// Largest probability of any d-letter continuation given any history.
Rational gamma(const SourceModel& source, unsigned d);
/// gamma(1), ..., gamma(d_max) in one pass.
std::vector<Rational> gamma_sequence(const SourceModel& source, unsigned d_max);

/// gamma(1), gamma(2), ... for sequential callers; caches the max-product
/// iteration so the d-th call costs one step. Calls must use d = 1, 2, ...
/// or repeat an earlier d.
std::function<Rational(unsigned)> gamma_function(const SourceModel& source);

/// gamma at d = number of states.
Rational xi(const MarkovSource& m);
Rational xi(const SourceModel& source);

ErgodicityReport check_bounded_delay_condition(const MarkovSource& m);

/// Rewrites an order-r source over K letters as a first-order chain on K^r
/// composite states. `table` holds one conditional law (K entries) per
/// history, histories indexed in base K with the oldest letter most
/// significant. Without an initial law the stationary one is used when
/// unique, else the uniform law over composite states.
MarkovSource expand_order(std::size_t letters, unsigned order, const RationalMatrix& table,
                          std::optional<std::vector<Rational>> initial = std::nullopt);

/// The same letter law viewed as a chain with identical rows.
MarkovSource as_markov(const MemorylessSource& s);

}  // namespace acdelay
