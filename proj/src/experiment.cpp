#include "acdelay/experiment.hpp"

#include <cmath>
#include <sstream>
#include <thread>

#include "acdelay/coder.hpp"
#include "acdelay/errors.hpp"
#include "acdelay/figures.hpp"
#include "acdelay/rng.hpp"

namespace acdelay {

void ExperimentConfig::validate() const {
    if (trials == 0) throw ValidationError("trials must be at least 1");
    if (d_max == 0) throw ValidationError("d_max must be at least 1");
    if (workers == 0) throw ValidationError("workers must be at least 1");
}

namespace {

bool prefix_decoded(const Encoder& enc, const RationalInterval& frame) {
    return frame.contains(enc.cover().as_interval());
}

}  // namespace

std::optional<std::size_t> trial_delay(const SourceModel& source, const ExperimentConfig& cfg, std::uint64_t trial) {
    CounterBitStream bits(cfg.seed, trial);
    Encoder enc(source);
    std::optional<Letter> previous;
    if (cfg.prefix) {
        for (Letter l : *cfg.prefix) {
            enc.push(l);
            previous = l;
        }
    } else {
        for (std::size_t i = 0; i < cfg.n; ++i) {
            Letter l = sample_letter(source.next_cdf(previous), bits);
            enc.push(l);
            previous = l;
        }
    }
    const RationalInterval frame = enc.interval();
    for (std::size_t d = 0;; ++d) {
        if (prefix_decoded(enc, frame)) return d;
        if (d == cfg.d_max) return std::nullopt;
        Letter l = sample_letter(source.next_cdf(previous), bits);
        enc.push(l);
        previous = l;
    }
}

DelayStats run_monte_carlo(const SourceModel& source, const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.prefix)
        for (Letter l : *cfg.prefix) check_letter(source, l);

    std::vector<std::optional<std::size_t>> delays(cfg.trials);
    auto work = [&](unsigned worker) {
        for (std::size_t t = worker; t < cfg.trials; t += cfg.workers) delays[t] = trial_delay(source, cfg, t);
    };
    if (cfg.workers == 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < cfg.workers; ++w) pool.emplace_back(work, w);
    }

    DelayStats stats;
    stats.d_max = cfg.d_max;
    stats.trials = cfg.trials;
    stats.exceed_counts.assign(cfg.d_max + 1, 0);
    long double sum = 0, sum_sq = 0;
    for (const auto& d : delays) {
        std::size_t value = d ? *d : cfg.d_max;
        if (!d) ++stats.censored;
        // D > j for j < value; censored trials exceed every j <= d_max.
        std::size_t upto = d ? *d : cfg.d_max + 1;
        for (std::size_t j = 0; j < upto; ++j) ++stats.exceed_counts[j];
        sum += value;
        sum_sq += static_cast<long double>(value) * value;
    }
    const long double n = static_cast<long double>(cfg.trials);
    stats.mean = sum / n;
    long double var = cfg.trials > 1 ? (sum_sq - sum * sum / n) / (n - 1) : 0;
    stats.std_error = std::sqrt(std::max(var, 0.0L) / n);
    for (auto c : stats.exceed_counts) stats.tail.push_back(static_cast<Real>(c) / n);
    return stats;
}

DelayStats run_exact_tail(const SourceModel& source, std::span<const Letter> prefix, std::size_t d_max,
                          std::size_t budget) {
    if (d_max == 0) throw ValidationError("d_max must be at least 1");
    Encoder root(source);
    std::optional<Letter> last;
    for (Letter l : prefix) {
        root.push(l);
        last = l;
    }
    const RationalInterval frame = root.interval();

    DelayStats stats;
    stats.exact = true;
    stats.d_max = d_max;
    stats.exact_tail.assign(d_max + 1, Rational(0));

    struct Node {
        Encoder enc;
        std::optional<Letter> previous;
        Rational prob;  // probability of the extension given x^n
        std::size_t depth;
    };
    std::vector<Node> stack;
    stack.push_back({root, last, Rational(1), 0});
    while (!stack.empty()) {
        Node node = std::move(stack.back());
        stack.pop_back();
        if (++stats.nodes > budget)
            throw BudgetExceeded("exact enumeration exceeded " + std::to_string(budget) +
                                 " nodes; lower --dmax or use Monte Carlo (simulate)");
        // Once decoded, every extension of this node stays decoded.
        if (prefix_decoded(node.enc, frame)) continue;
        stats.exact_tail[node.depth] += node.prob;
        if (node.depth == d_max) continue;
        const auto& probs = source.next_probs(node.previous);
        for (Letter l = 0; l < probs.size(); ++l) {
            if (probs[l].is_zero()) continue;
            Node child{node.enc, l, node.prob * probs[l], node.depth + 1};
            child.enc.push(l);
            stack.push_back(std::move(child));
        }
    }
    Rational mean(0);
    for (const auto& t : stats.exact_tail) stats.tail.push_back(t.to_long_double());
    for (std::size_t d = 0; d < d_max; ++d) mean += stats.exact_tail[d];
    stats.mean = mean.to_long_double();
    return stats;
}

std::string delay_stats_csv(const DelayStats& stats, std::optional<Real> alpha) {
    std::ostringstream os;
    os << "d,tail";
    if (stats.exact) os << ",tail_exact";
    if (alpha) os << ",tail_bound";
    os << '\n';
    for (std::size_t d = 0; d < stats.tail.size(); ++d) {
        os << d << ',' << format_real(stats.tail[d]);
        if (stats.exact) os << ',' << stats.exact_tail[d].str();
        if (alpha) os << ',' << format_real(tail_bound(*alpha, static_cast<unsigned>(d)));
        os << '\n';
    }
    return os.str();
}

std::string delay_stats_summary(const DelayStats& stats, std::optional<Real> alpha) {
    std::ostringstream os;
    if (stats.exact) {
        os << "exact enumeration, d_max = " << stats.d_max << ", nodes = " << stats.nodes << '\n';
        os << "sum_{d<d_max} Pr(D > d) = " << format_real(stats.mean) << " (lower bound on E(D))\n";
    } else {
        os << "trials = " << stats.trials << ", d_max = " << stats.d_max << ", censored = " << stats.censored
           << " (" << format_real(stats.censor_fraction()) << ")\n";
        os << "mean delay = " << format_real(stats.mean) << " +- " << format_real(stats.std_error) << " (1 s.e.)"
           << (stats.mean_is_lower_bound() ? ", lower bound: censored trials counted at d_max" : "") << '\n';
    }
    if (alpha) {
        os << "alpha = " << format_real(*alpha) << ": D1 = " << format_real(d1_bound(*alpha))
           << ", D2 = " << format_real(d2_bound(*alpha)) << ", Dmg = " << format_real(modified_gallager(*alpha))
           << '\n';
    }
    return os.str();
}

}  // namespace acdelay
