#pragma once

/**
 * @file experiment.hpp
 * @brief Delay measurement: Monte Carlo trials and exact tail enumeration.
 *
 * The delay D of a prefix x^n is the number of further letters after which
 * the encoder's dyadic cover of I(x^{n+D}) fits inside I(x^n), i.e. after
 * which a decoder fed the encoder's output has reproduced all of x^n.
 */

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "acdelay/bounds.hpp"
#include "acdelay/exact.hpp"
#include "acdelay/source.hpp"

namespace acdelay {

enum class Mode { montecarlo, exact_tail };

struct ExperimentConfig {
    std::string source_path;
    std::size_t n = 8;
    std::size_t trials = 10'000;
    std::size_t d_max = 200;
    std::uint64_t seed = 1;
    Mode mode = Mode::montecarlo;
    std::optional<std::vector<Letter>> prefix;  // fixes x^n instead of sampling it
    unsigned workers = 1;
    std::string out_path;
    std::optional<std::string> svg_path;

    /// Throws ValidationError on trials == 0, d_max == 0 or workers == 0.
    void validate() const;
};

struct DelayStats {
    std::size_t d_max = 0;
    std::size_t trials = 0;    // Monte Carlo only
    std::size_t censored = 0;  // trials with D > d_max
    bool exact = false;
    // tail[d] estimates Pr(D > d) for d = 0..d_max.
    std::vector<Real> tail;
    std::vector<Rational> exact_tail;          // exact mode only
    std::vector<std::uint64_t> exceed_counts;  // Monte Carlo only
    Real mean = 0;        // censored trials counted at d_max; a lower bound when censored > 0
    Real std_error = 0;
    std::size_t nodes = 0;  // exact mode: enumeration nodes visited

    Real censor_fraction() const { return trials ? static_cast<Real>(censored) / trials : 0; }
    bool mean_is_lower_bound() const { return exact || censored > 0; }
};

/// Delay of one trial; nullopt when censored at d_max.
std::optional<std::size_t> trial_delay(const SourceModel& source, const ExperimentConfig& cfg, std::uint64_t trial);

DelayStats run_monte_carlo(const SourceModel& source, const ExperimentConfig& cfg);

inline constexpr std::size_t kEnumerationBudget = 10'000'000;

/// Exact Pr(D > d | x^n) for d = 0..d_max by enumerating extensions, pruning
/// subtrees once x^n is decoded. Throws BudgetExceeded past `budget` nodes.
DelayStats run_exact_tail(const SourceModel& source, std::span<const Letter> prefix, std::size_t d_max,
                          std::size_t budget = kEnumerationBudget);

/// CSV with columns d, tail (and tail_exact in exact mode), plus tail_bound
/// when alpha is given.
std::string delay_stats_csv(const DelayStats& stats, std::optional<Real> alpha);

/// Human-readable summary of a run.
std::string delay_stats_summary(const DelayStats& stats, std::optional<Real> alpha);

}  // namespace acdelay
