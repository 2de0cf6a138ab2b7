#include "acdelay/spec_file.hpp"

#include <fstream>
#include <sstream>
#include <vector>

namespace acdelay {

SpecError::SpecError(const std::string& origin, std::size_t line, const std::string& message)
    : ValidationError(origin + ":" + std::to_string(line) + ": " + message), line_(line) {}

namespace {

struct Line {
    std::size_t number;
    std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::istream& in) {
    std::vector<Line> lines;
    std::string raw;
    std::size_t number = 0;
    while (std::getline(in, raw)) {
        ++number;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::istringstream ss(raw);
        Line line{number, {}};
        for (std::string tok; ss >> tok;) line.tokens.push_back(tok);
        if (!line.tokens.empty()) lines.push_back(std::move(line));
    }
    return lines;
}

std::size_t parse_count(const std::string& origin, std::size_t line, const std::string& tok, const char* what) {
    std::size_t used = 0;
    unsigned long v = 0;
    try {
        v = std::stoul(tok, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != tok.size() || tok.empty() || tok[0] == '-' || v == 0)
        throw SpecError(origin, line, std::string("expected a positive integer ") + what + ", got '" + tok + "'");
    return v;
}

std::vector<Rational> parse_row(const std::string& origin, const Line& line, std::size_t first, std::size_t count) {
    if (line.tokens.size() - first != count)
        throw SpecError(origin, line.number,
                        "expected " + std::to_string(count) + " rationals, got " +
                            std::to_string(line.tokens.size() - first));
    std::vector<Rational> row;
    for (std::size_t i = first; i < line.tokens.size(); ++i) {
        try {
            row.push_back(Rational::parse(line.tokens[i]));
        } catch (const ValidationError& e) {
            throw SpecError(origin, line.number, e.what());
        }
    }
    return row;
}

}  // namespace

SourceModel parse_source_spec(std::istream& in, const std::string& origin) {
    auto lines = tokenize(in);
    if (lines.empty()) throw SpecError(origin, 1, "empty source specification");
    const Line& head = lines.front();
    const std::string& kind = head.tokens[0];
    if (head.tokens.size() < 2) throw SpecError(origin, head.number, "header needs a letter count");
    const std::size_t k = parse_count(origin, head.number, head.tokens[1], "letter count");

    if (kind == "memoryless") {
        if (head.tokens.size() != 2) throw SpecError(origin, head.number, "unexpected tokens after 'memoryless K'");
        if (lines.size() < 2) throw SpecError(origin, head.number, "missing probability line");
        if (lines.size() > 2) throw SpecError(origin, lines[2].number, "unexpected content after probabilities");
        auto probs = parse_row(origin, lines[1], 0, k);
        try {
            return SourceModel(MemorylessSource(std::move(probs)));
        } catch (const ValidationError& e) {
            throw SpecError(origin, lines[1].number, e.what());
        }
    }
    if (kind != "markov") throw SpecError(origin, head.number, "unknown source kind '" + kind + "'");

    unsigned order = 1;
    if (head.tokens.size() == 4 && head.tokens[2] == "order") {
        order = static_cast<unsigned>(parse_count(origin, head.number, head.tokens[3], "order"));
    } else if (head.tokens.size() != 2) {
        throw SpecError(origin, head.number, "header must be 'markov K' or 'markov K order r'");
    }
    std::size_t rows = 1;
    for (unsigned i = 0; i < order; ++i) {
        rows *= k;
        if (rows > 4096) throw SpecError(origin, head.number, "more than 4096 composite states");
    }
    if (lines.size() < rows + 1)
        throw SpecError(origin, lines.back().number,
                        "expected " + std::to_string(rows) + " transition rows, got " + std::to_string(lines.size() - 1));

    RationalMatrix table;
    for (std::size_t r = 0; r < rows; ++r) {
        const Line& line = lines[1 + r];
        if (line.tokens[0] == "initial")
            throw SpecError(origin, line.number, "'initial' before all transition rows were given");
        table.push_back(parse_row(origin, line, 0, k));
        Rational total(0);
        for (const auto& x : table.back()) {
            if (x.sign() < 0) throw SpecError(origin, line.number, "negative transition probability");
            total += x;
        }
        if (total != Rational(1))
            throw SpecError(origin, line.number, "row sums to " + total.str() + ", not 1");
    }

    std::optional<std::vector<Rational>> initial;
    std::size_t next = rows + 1;
    if (next < lines.size()) {
        const Line& line = lines[next];
        if (line.tokens[0] != "initial") throw SpecError(origin, line.number, "unexpected content after transition rows");
        initial = parse_row(origin, line, 1, rows);
        ++next;
    }
    if (next < lines.size()) throw SpecError(origin, lines[next].number, "unexpected content after initial law");

    const std::size_t report_line = initial ? lines[rows + 1].number : head.number;
    try {
        if (order > 1) return SourceModel(expand_order(k, order, table, std::move(initial)));
        if (initial) return SourceModel(MarkovSource(std::move(table), std::move(*initial)));
        return SourceModel(MarkovSource::stationary(std::move(table)));
    } catch (const SpecError&) {
        throw;
    } catch (const ValidationError& e) {
        throw SpecError(origin, report_line, e.what());
    }
}

SourceModel parse_source_spec_text(const std::string& text) {
    std::istringstream in(text);
    return parse_source_spec(in);
}

SourceModel load_source_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open source spec '" + path + "'");
    return parse_source_spec(in, path);
}

}  // namespace acdelay
