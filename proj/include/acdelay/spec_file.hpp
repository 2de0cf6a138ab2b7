#pragma once

// Source specification files.
//
//   memoryless K
//   p_0 p_1 ... p_{K-1}
//
//   markov K [order r]
//   <K^r rows of K rationals: law of the next letter per history>
//   [initial q_0 ... q_{K^r - 1}]
//
// Rationals are written n or n/d; decimal literals are rejected. '#' starts
// a comment. Without an `initial` line a Markov chain starts from its
// stationary law. An order-r table is expanded to a first-order chain on
// K^r composite states.

#include <istream>
#include <string>

#include "acdelay/errors.hpp"
#include "acdelay/source.hpp"

namespace acdelay {

class SpecError : public ValidationError {
public:
    SpecError(const std::string& origin, std::size_t line, const std::string& message);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

SourceModel parse_source_spec(std::istream& in, const std::string& origin = "<spec>");
SourceModel parse_source_spec_text(const std::string& text);
SourceModel load_source_spec(const std::string& path);

}  // namespace acdelay
