#pragma once

#include <optional>
#include <string>
#include <vector>

#include "acdelay/bounds.hpp"
#include "acdelay/source.hpp"

namespace acdelay {

struct MarkovCheck {
    std::size_t states = 0;
    bool from_memoryless = false;
    ErgodicityReport report;
    std::vector<Rational> gammas;    // gamma(1..d_max)
    std::vector<Rational> envelope;  // xi^floor(d / states)
    std::optional<MemoryDelayBound> bound;
};

/// Memoryless sources are checked as the chain with identical rows.
MarkovCheck markov_check(const SourceModel& source, unsigned d_max, Real tol = 1e-10L);

std::string markov_check_text(const MarkovCheck& check);
/// d,gamma,gamma_real,envelope
std::string markov_check_csv(const MarkovCheck& check);

}  // namespace acdelay
