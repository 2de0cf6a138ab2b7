#include "acdelay/source.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <string>

namespace acdelay {

namespace {

std::vector<Rational> cumulative(const std::vector<Rational>& probs) {
    std::vector<Rational> cdf;
    cdf.reserve(probs.size() + 1);
    cdf.emplace_back(0);
    for (const auto& p : probs) cdf.push_back(cdf.back() + p);
    return cdf;
}

void check_law(const std::vector<Rational>& law, const std::string& what, bool allow_zero) {
    Rational total(0);
    for (std::size_t i = 0; i < law.size(); ++i) {
        bool bad = allow_zero ? law[i].sign() < 0 : law[i].sign() <= 0;
        if (bad)
            throw ValidationError(what + " entry " + std::to_string(i) + " = " + law[i].str() +
                                  (allow_zero ? " is negative" : " is not positive"));
        total += law[i];
    }
    if (total != Rational(1))
        throw ValidationError(what + " sums to " + total.str() + ", not 1");
}

std::string describe_classes(const std::vector<std::vector<std::size_t>>& classes) {
    std::ostringstream os;
    os << "chain is reducible; communicating classes:";
    for (const auto& c : classes) {
        os << " {";
        for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
        os << '}';
    }
    return os.str();
}

}  // namespace

MemorylessSource::MemorylessSource(std::vector<Rational> probs) : probs_(std::move(probs)) {
    if (probs_.size() < 2) throw ValidationError("a memoryless source needs at least two letters");
    check_law(probs_, "probability", false);
    cdf_ = cumulative(probs_);
    alpha_ = *std::max_element(probs_.begin(), probs_.end());
    beta_ = *std::min_element(probs_.begin(), probs_.end());
}

MarkovSource::MarkovSource(RationalMatrix transition, std::vector<Rational> initial)
    : transition_(std::move(transition)), initial_(std::move(initial)) {
    const std::size_t k = transition_.size();
    if (k == 0) throw ValidationError("a Markov source needs at least one state");
    for (std::size_t i = 0; i < k; ++i) {
        if (transition_[i].size() != k)
            throw ValidationError("transition row " + std::to_string(i) + " has " +
                                  std::to_string(transition_[i].size()) + " entries, expected " +
                                  std::to_string(k));
        check_law(transition_[i], "transition row " + std::to_string(i), true);
    }
    if (initial_.size() != k)
        throw ValidationError("initial law has " + std::to_string(initial_.size()) + " entries, expected " +
                              std::to_string(k));
    check_law(initial_, "initial law", true);
    for (const auto& row : transition_) row_cdf_.push_back(cumulative(row));
    initial_cdf_ = cumulative(initial_);
    base_alphabet_ = k;
}

MarkovSource MarkovSource::stationary(RationalMatrix transition) {
    auto pi = stationary_distribution(transition);
    return MarkovSource(std::move(transition), std::move(pi));
}

Letter MarkovSource::letter_of_state(std::size_t state) const {
    if (state >= states()) throw ValidationError("state out of range");
    return static_cast<Letter>(state % base_alphabet_);
}

std::vector<bool> MarkovSource::reachable_states() const {
    const std::size_t k = states();
    std::vector<bool> seen(k, false);
    std::vector<std::size_t> stack;
    for (std::size_t i = 0; i < k; ++i)
        if (initial_[i].sign() > 0) {
            seen[i] = true;
            stack.push_back(i);
        }
    while (!stack.empty()) {
        std::size_t u = stack.back();
        stack.pop_back();
        for (std::size_t v = 0; v < k; ++v)
            if (!seen[v] && transition_[u][v].sign() > 0) {
                seen[v] = true;
                stack.push_back(v);
            }
    }
    return seen;
}

void MarkovSource::annotate_order(unsigned order, std::size_t base) {
    std::size_t expected = 1;
    for (unsigned i = 0; i < order; ++i) expected *= base;
    if (order == 0 || expected != states())
        throw ValidationError("order annotation does not match the number of states");
    order_ = order;
    base_alphabet_ = base;
}

std::size_t SourceModel::alphabet_size() const {
    return std::visit([](const auto& s) -> std::size_t {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, MemorylessSource>)
            return s.alphabet_size();
        else
            return s.states();
    }, model_);
}

const std::vector<Rational>& SourceModel::next_probs(std::optional<Letter> previous) const {
    if (const auto* m = memoryless()) return m->probs();
    const auto& chain = *markov();
    if (!previous) return chain.initial();
    return chain.transition()[*previous];
}

const std::vector<Rational>& SourceModel::next_cdf(std::optional<Letter> previous) const {
    if (const auto* m = memoryless()) return m->cdf();
    const auto& chain = *markov();
    if (!previous) return chain.initial_cdf();
    return chain.row_cdf(*previous);
}

ReducibleChain::ReducibleChain(std::vector<std::vector<std::size_t>> classes)
    : ValidationError(describe_classes(classes)), classes_(std::move(classes)) {}

void check_letter(const SourceModel& source, Letter letter) {
    if (letter >= source.alphabet_size())
        throw ValidationError("letter " + std::to_string(letter) + " outside alphabet of size " +
                              std::to_string(source.alphabet_size()));
}

Rational conditional_prob(const SourceModel& source, std::span<const Letter> history, Letter next) {
    for (Letter l : history) check_letter(source, l);
    check_letter(source, next);
    std::optional<Letter> previous;
    if (!history.empty()) previous = history.back();
    return source.next_probs(previous)[next];
}

Letter sample_letter(const std::vector<Rational>& cdf, BitSource& bits) {
    // Random dyadic interval [j 2^-k, (j+1) 2^-k), refined one bit at a time.
    BigInt j = 0;
    unsigned k = 0;
    for (;;) {
        Rational low(j, BigInt(1) << k);
        Rational high(BigInt(j + 1), BigInt(1) << k);
        // Cell containing `low`: last i with cdf[i] <= low.
        auto it = std::upper_bound(cdf.begin(), cdf.end(), low);
        std::size_t cell = static_cast<std::size_t>(it - cdf.begin()) - 1;
        if (cell + 1 < cdf.size() && high <= cdf[cell + 1]) return static_cast<Letter>(cell);
        j = j * 2 + (bits.next_bit() ? 1 : 0);
        ++k;
    }
}

std::vector<Letter> sample_sequence(const SourceModel& source, std::size_t n, BitSource& bits) {
    std::vector<Letter> out;
    out.reserve(n);
    std::optional<Letter> previous;
    for (std::size_t i = 0; i < n; ++i) {
        Letter l = sample_letter(source.next_cdf(previous), bits);
        out.push_back(l);
        previous = l;
    }
    return out;
}

std::vector<std::vector<std::size_t>> communicating_classes(const RationalMatrix& transition) {
    // Tarjan's algorithm, iterative.
    const std::size_t k = transition.size();
    constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
    std::vector<std::size_t> index(k, unvisited), low(k, 0);
    std::vector<bool> on_stack(k, false);
    std::vector<std::size_t> stack;
    std::vector<std::vector<std::size_t>> classes;
    std::size_t counter = 0;

    struct Frame {
        std::size_t node;
        std::size_t next;
    };
    for (std::size_t root = 0; root < k; ++root) {
        if (index[root] != unvisited) continue;
        std::vector<Frame> call{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            Frame& f = call.back();
            if (f.next < k) {
                std::size_t v = f.next++;
                if (transition[f.node][v].sign() <= 0) continue;
                if (index[v] == unvisited) {
                    index[v] = low[v] = counter++;
                    stack.push_back(v);
                    on_stack[v] = true;
                    call.push_back({v, 0});
                } else if (on_stack[v]) {
                    low[f.node] = std::min(low[f.node], index[v]);
                }
                continue;
            }
            std::size_t u = f.node;
            call.pop_back();
            if (!call.empty()) low[call.back().node] = std::min(low[call.back().node], low[u]);
            if (low[u] == index[u]) {
                std::vector<std::size_t> component;
                std::size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    component.push_back(w);
                } while (w != u);
                std::sort(component.begin(), component.end());
                classes.push_back(std::move(component));
            }
        }
    }
    std::sort(classes.begin(), classes.end());
    return classes;
}

std::vector<Rational> stationary_distribution(const RationalMatrix& transition) {
    const std::size_t k = transition.size();
    auto classes = communicating_classes(transition);
    if (classes.size() != 1) throw ReducibleChain(std::move(classes));

    // Unknowns pi_0..pi_{k-1}. Equations: sum_i pi_i (P[i][j] - [i==j]) = 0
    // for j = 0..k-2, plus sum_i pi_i = 1. Augmented matrix, Gauss-Jordan.
    RationalMatrix a(k, std::vector<Rational>(k + 1, Rational(0)));
    for (std::size_t j = 0; j + 1 < k; ++j)
        for (std::size_t i = 0; i < k; ++i) a[j][i] = transition[i][j] - Rational(i == j ? 1 : 0);
    for (std::size_t i = 0; i < k; ++i) a[k - 1][i] = Rational(1);
    a[k - 1][k] = Rational(1);

    for (std::size_t col = 0; col < k; ++col) {
        std::size_t pivot = col;
        while (pivot < k && a[pivot][col].is_zero()) ++pivot;
        if (pivot == k) throw ValidationError("balance equations are singular");
        std::swap(a[pivot], a[col]);
        Rational inv = Rational(1) / a[col][col];
        for (auto& x : a[col]) x *= inv;
        for (std::size_t r = 0; r < k; ++r) {
            if (r == col || a[r][col].is_zero()) continue;
            Rational factor = a[r][col];
            for (std::size_t c = col; c <= k; ++c) a[r][c] -= factor * a[col][c];
        }
    }
    std::vector<Rational> pi(k);
    for (std::size_t i = 0; i < k; ++i) pi[i] = a[i][k];
    return pi;
}

RationalMatrix max_product(const RationalMatrix& a, const RationalMatrix& b) {
    const std::size_t n = a.size();
    RationalMatrix out(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k].is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j) {
                Rational v = a[i][k] * b[k][j];
                if (v > out[i][j]) out[i][j] = std::move(v);
            }
        }
    return out;
}

RationalMatrix max_product_power(const RationalMatrix& m, unsigned d) {
    if (d == 0) throw DomainError("max-product power needs d >= 1");
    RationalMatrix result;
    RationalMatrix base = m;
    bool have = false;
    while (d > 0) {
        if (d & 1u) {
            result = have ? max_product(result, base) : base;
            have = true;
        }
        d >>= 1;
        if (d) base = max_product(base, base);
    }
    return result;
}

namespace {

Rational best_reachable_row_max(const MarkovSource& chain, const RationalMatrix& power) {
    auto reachable = chain.reachable_states();
    Rational best(0);
    for (std::size_t s = 0; s < chain.states(); ++s) {
        if (!reachable[s]) continue;
        for (const auto& v : power[s])
            if (v > best) best = v;
    }
    return best;
}

}  // namespace

Rational gamma(const SourceModel& source, unsigned d) {
    if (d == 0) throw DomainError("gamma needs d >= 1");
    if (const auto* m = source.memoryless()) return pow(m->alpha(), d);
    const auto& chain = *source.markov();
    return best_reachable_row_max(chain, max_product_power(chain.transition(), d));
}

std::vector<Rational> gamma_sequence(const SourceModel& source, unsigned d_max) {
    std::vector<Rational> out;
    out.reserve(d_max);
    if (const auto* m = source.memoryless()) {
        Rational g(1);
        for (unsigned d = 1; d <= d_max; ++d) out.push_back(g *= m->alpha());
        return out;
    }
    // value[s] = best product over paths of d transitions leaving s.
    const auto& chain = *source.markov();
    const auto& p = chain.transition();
    const std::size_t k = chain.states();
    auto reachable = chain.reachable_states();
    std::vector<Rational> value(k, Rational(1));
    for (unsigned d = 1; d <= d_max; ++d) {
        std::vector<Rational> next(k, Rational(0));
        for (std::size_t s = 0; s < k; ++s)
            for (std::size_t t = 0; t < k; ++t) {
                if (p[s][t].is_zero()) continue;
                Rational v = p[s][t] * value[t];
                if (v > next[s]) next[s] = std::move(v);
            }
        value = std::move(next);
        Rational best(0);
        for (std::size_t s = 0; s < k; ++s)
            if (reachable[s] && value[s] > best) best = value[s];
        out.push_back(best);
    }
    return out;
}

std::function<Rational(unsigned)> gamma_function(const SourceModel& source) {
    struct State {
        SourceModel source;
        std::vector<Rational> value;  // per-state best product for the last computed d
        std::vector<Rational> cache;  // cache[d-1] = gamma(d)
        std::vector<bool> reachable;
    };
    auto st = std::make_shared<State>(State{source, {}, {}, {}});
    if (const auto* chain = st->source.markov()) {
        st->value.assign(chain->states(), Rational(1));
        st->reachable = chain->reachable_states();
    }
    return [st](unsigned d) -> Rational {
        if (d == 0) throw DomainError("gamma needs d >= 1");
        while (st->cache.size() < d) {
            if (const auto* m = st->source.memoryless()) {
                st->cache.push_back(st->cache.empty() ? m->alpha() : st->cache.back() * m->alpha());
                continue;
            }
            const auto& p = st->source.markov()->transition();
            const std::size_t k = p.size();
            std::vector<Rational> next(k, Rational(0));
            for (std::size_t s = 0; s < k; ++s)
                for (std::size_t t = 0; t < k; ++t) {
                    if (p[s][t].is_zero()) continue;
                    Rational v = p[s][t] * st->value[t];
                    if (v > next[s]) next[s] = std::move(v);
                }
            st->value = std::move(next);
            Rational best(0);
            for (std::size_t s = 0; s < k; ++s)
                if (st->reachable[s] && st->value[s] > best) best = st->value[s];
            st->cache.push_back(std::move(best));
        }
        return st->cache[d - 1];
    };
}

Rational xi(const MarkovSource& m) {
    return gamma(SourceModel(m), static_cast<unsigned>(m.states()));
}

Rational xi(const SourceModel& source) {
    return gamma(source, static_cast<unsigned>(source.alphabet_size()));
}

namespace {

// gcd of cycle lengths inside one class, from BFS levels.
unsigned class_period(const RationalMatrix& p, const std::vector<std::size_t>& members) {
    std::vector<long> level(p.size(), -1);
    std::vector<bool> in_class(p.size(), false);
    for (auto m : members) in_class[m] = true;
    std::vector<std::size_t> queue{members.front()};
    level[members.front()] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        std::size_t u = queue[head];
        for (std::size_t v = 0; v < p.size(); ++v)
            if (in_class[v] && p[u][v].sign() > 0 && level[v] < 0) {
                level[v] = level[u] + 1;
                queue.push_back(v);
            }
    }
    long g = 0;
    for (auto u : members)
        for (auto v : members)
            if (p[u][v].sign() > 0) g = std::gcd(g, std::abs(level[u] + 1 - level[v]));
    return static_cast<unsigned>(g);
}

}  // namespace

ErgodicityReport check_bounded_delay_condition(const MarkovSource& m) {
    ErgodicityReport report;
    report.classes = communicating_classes(m.transition());
    report.irreducible = report.classes.size() == 1;
    unsigned g = 0;
    bool all_aperiodic = true;
    for (const auto& c : report.classes) {
        unsigned per = class_period(m.transition(), c);
        if (per == 0) continue;  // transient singleton without a self-loop
        if (per != 1) all_aperiodic = false;
        g = std::gcd(g, per);
    }
    report.period = g;
    report.aperiodic = all_aperiodic && g != 0;
    report.xi = xi(m);
    report.deterministic_cycle = report.xi == Rational(1);
    return report;
}

MarkovSource expand_order(std::size_t letters, unsigned order, const RationalMatrix& table,
                          std::optional<std::vector<Rational>> initial) {
    if (order == 0) throw ValidationError("Markov order must be at least 1");
    if (letters < 1) throw ValidationError("alphabet must be non-empty");
    std::size_t histories = 1;
    for (unsigned i = 0; i < order; ++i) histories *= letters;
    if (table.size() != histories)
        throw ValidationError("order-" + std::to_string(order) + " table needs " + std::to_string(histories) +
                              " rows, got " + std::to_string(table.size()));
    for (std::size_t h = 0; h < histories; ++h)
        if (table[h].size() != letters)
            throw ValidationError("conditional law for history " + std::to_string(h) + " has " +
                                  std::to_string(table[h].size()) + " entries, expected " +
                                  std::to_string(letters));

    RationalMatrix transition(histories, std::vector<Rational>(histories, Rational(0)));
    const std::size_t drop = histories / letters;  // weight of the oldest letter
    for (std::size_t h = 0; h < histories; ++h)
        for (std::size_t y = 0; y < letters; ++y) transition[h][(h % drop) * letters + y] = table[h][y];

    std::vector<Rational> init;
    if (initial) {
        init = std::move(*initial);
    } else if (communicating_classes(transition).size() == 1) {
        init = stationary_distribution(transition);
    } else {
        init.assign(histories, Rational(BigInt(1), BigInt(histories)));
    }
    MarkovSource chain(std::move(transition), std::move(init));
    chain.annotate_order(order, letters);
    return chain;
}

MarkovSource as_markov(const MemorylessSource& s) {
    RationalMatrix rows(s.alphabet_size(), s.probs());
    return MarkovSource(std::move(rows), s.probs());
}

}  // namespace acdelay
