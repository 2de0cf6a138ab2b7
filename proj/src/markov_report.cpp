#include "acdelay/markov_report.hpp"

#include <sstream>

#include "acdelay/figures.hpp"

namespace acdelay {

MarkovCheck markov_check(const SourceModel& source, unsigned d_max, Real tol) {
    MarkovCheck out;
    MarkovSource chain = source.markov() ? *source.markov() : as_markov(*source.memoryless());
    out.from_memoryless = source.is_memoryless();
    out.states = chain.states();
    out.report = check_bounded_delay_condition(chain);
    out.gammas = gamma_sequence(source, d_max);
    for (unsigned d = 1; d <= d_max; ++d)
        out.envelope.push_back(pow(out.report.xi, static_cast<unsigned>(d / out.states)));
    if (out.report.certified())
        out.bound = memory_delay_bound(gamma_function(source), out.states, out.report.xi, tol);
    return out;
}

std::string markov_check_text(const MarkovCheck& check) {
    const auto& r = check.report;
    std::ostringstream os;
    os << "states: " << check.states << (check.from_memoryless ? " (memoryless source)" : "") << '\n';
    os << "irreducible: " << (r.irreducible ? "yes" : "no");
    if (!r.irreducible) {
        os << " (classes:";
        for (const auto& c : r.classes) {
            os << " {";
            for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
            os << '}';
        }
        os << ')';
    }
    os << '\n';
    os << "aperiodic: " << (r.aperiodic ? "yes" : "no") << " (period " << r.period << ")\n";
    os << "xi: " << r.xi << " = " << format_real(r.xi.to_long_double()) << '\n';
    if (r.certified()) {
        os << "certified: yes (xi < 1, gamma(d) <= xi^floor(d/" << check.states << ") decays geometrically)\n";
        if (!r.irreducible || !r.aperiodic) os << "note: chain is not ergodic; certificate rests on gamma decay alone\n";
        os << "expected delay bound: " << format_real(check.bound->value)
           << " (truncation error <= " << format_real(check.bound->truncation_error) << ", "
           << check.bound->terms << " terms)\n";
    } else {
        os << "certified: no (xi = 1: the chain has a deterministic cycle, a run of " << check.states
           << " letters can have conditional probability 1)\n";
    }
    return os.str();
}

std::string markov_check_csv(const MarkovCheck& check) {
    std::ostringstream os;
    os << "d,gamma,gamma_real,envelope\n";
    for (std::size_t i = 0; i < check.gammas.size(); ++i)
        os << i + 1 << ',' << check.gammas[i].str() << ',' << format_real(check.gammas[i].to_long_double()) << ','
           << check.envelope[i].str() << '\n';
    return os.str();
}

}  // namespace acdelay
