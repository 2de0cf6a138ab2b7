// acdelay: command line front end for the arithmetic-coding delay lab.
//
// Exit codes: 0 success, 2 validation error (bad flags, bad spec, bad
// input), 1 runtime error (I/O, enumeration budget, uncertified source).

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "acdelay/bounds.hpp"
#include "acdelay/coder.hpp"
#include "acdelay/errors.hpp"
#include "acdelay/experiment.hpp"
#include "acdelay/figures.hpp"
#include "acdelay/markov_report.hpp"
#include "acdelay/spec_file.hpp"

using namespace acdelay;

namespace {

std::string read_all(const std::string& path) {
    if (path.empty() || path == "-") {
        return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    }
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<Letter> parse_letters(const std::string& text) {
    std::istringstream ss(text);
    std::vector<Letter> out;
    for (std::string tok; ss >> tok;) {
        std::size_t used = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size() || tok[0] == '-' || tok[0] == '+')
            throw ValidationError("letters are non-negative integers, got '" + tok + "'");
        out.push_back(static_cast<Letter>(v));
    }
    return out;
}

void emit(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-")
        std::cout << content;
    else
        write_text_file(path, content);
}

Real parse_probability(const std::string& text) {
    if (text.find('/') != std::string::npos) return Rational::parse(text).to_long_double();
    std::size_t used = 0;
    Real v = 0;
    try {
        v = std::stold(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size()) throw ValidationError("bad probability '" + text + "'");
    return v;
}

std::optional<Real> source_alpha(const SourceModel& s) {
    if (const auto* m = s.memoryless()) return m->alpha().to_long_double();
    return std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact arithmetic-coding delay laboratory"};
    app.require_subcommand(1);

    std::string source_path, out_path, prefix_text, input_path;
    std::optional<std::string> svg_path;
    std::size_t n = 8, trials = 10'000, d_max = 200;
    std::uint64_t seed = 1;
    unsigned workers = 1;
    std::string grid_text = "0.001:0.999:0.001";
    std::string figure_name = "ratios";
    std::string alpha_text, beta_text;
    std::size_t budget = kEnumerationBudget;
    bool flush = false;

    auto* encode = app.add_subcommand("encode", "encode letters (stdin or --input) to bits");
    encode->add_option("--source", source_path, "source spec file")->required();
    encode->add_option("--input", input_path, "whitespace-separated letters (default stdin)");
    encode->add_flag("--flush", flush, "append bits that let the decoder finish; not part of any delay statistic");

    auto* decode = app.add_subcommand("decode", "decode a stream of '0'/'1' characters to letters");
    decode->add_option("--source", source_path, "source spec file")->required();
    decode->add_option("--input", input_path, "bit characters (default stdin)");

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo delay measurement");
    simulate->add_option("--source", source_path, "source spec file")->required();
    simulate->add_option("--n", n, "prefix length")->capture_default_str();
    simulate->add_option("--trials", trials, "number of trials")->capture_default_str()->check(CLI::PositiveNumber);
    simulate->add_option("--dmax", d_max, "censoring horizon")->capture_default_str()->check(CLI::PositiveNumber);
    simulate->add_option("--seed", seed, "64-bit seed")->capture_default_str();
    simulate->add_option("--prefix", prefix_text, "fixed prefix letters, e.g. \"1 2 0\"");
    simulate->add_option("--workers", workers, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
    simulate->add_option("--out", out_path, "tail CSV path (default stdout)");

    auto* exact = app.add_subcommand("exact-tail", "exact Pr(D > d | x^n) by enumeration");
    exact->add_option("--source", source_path, "source spec file")->required();
    exact->add_option("--prefix", prefix_text, "prefix letters, e.g. \"1\"");
    exact->add_option("--dmax", d_max, "largest d")->capture_default_str()->check(CLI::PositiveNumber);
    exact->add_option("--budget", budget, "enumeration node budget")->capture_default_str()->check(CLI::PositiveNumber);
    exact->add_option("--out", out_path, "tail CSV path (default stdout)");

    auto* bounds = app.add_subcommand("bounds", "evaluate the closed-form delay bounds");
    bounds->add_option("--source", source_path, "memoryless source spec (alpha, beta taken from it)");
    bounds->add_option("--alpha", alpha_text, "largest letter probability");
    bounds->add_option("--beta", beta_text, "smallest letter probability");
    bounds->add_option("--dmax", d_max, "also print tail bounds for d = 0..dmax");

    auto* figure = app.add_subcommand("figure", "write bound curves as CSV (and SVG)");
    figure->add_option("--figure", figure_name, "ternary or ratios")->capture_default_str();
    figure->add_option("--grid", grid_text, "lo:hi:step")->capture_default_str();
    figure->add_option("--out", out_path, "CSV path")->required();
    figure->add_option("--svg", svg_path, "SVG path");

    auto* markov = app.add_subcommand("markov-check", "bounded-delay certificate for a Markov source");
    markov->add_option("--source", source_path, "source spec file")->required();
    markov->add_option("--dmax", d_max, "gamma(d) rows to print")->capture_default_str()->check(CLI::PositiveNumber);
    markov->add_option("--out", out_path, "gamma CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*encode) {
            SourceModel source = load_source_spec(source_path);
            auto letters = parse_letters(read_all(input_path));
            Encoder enc(source);
            for (Letter l : letters) enc.push(l);
            std::string bits = enc.emitted().str();
            if (flush) bits += enc.flush_bits().str();
            std::cout << bits << '\n';
        } else if (*decode) {
            SourceModel source = load_source_spec(source_path);
            Decoder dec(source);
            for (char c : read_all(input_path)) {
                if (c == '0' || c == '1')
                    dec.push(c == '1');
                else if (!std::isspace(static_cast<unsigned char>(c)))
                    throw ValidationError(std::string("unexpected character '") + c + "' in bit stream");
            }
            const auto& out = dec.decoded();
            for (std::size_t i = 0; i < out.size(); ++i) std::cout << (i ? " " : "") << out[i];
            std::cout << '\n';
        } else if (*simulate) {
            SourceModel source = load_source_spec(source_path);
            ExperimentConfig cfg;
            cfg.source_path = source_path;
            cfg.n = n;
            cfg.trials = trials;
            cfg.d_max = d_max;
            cfg.seed = seed;
            cfg.workers = workers;
            if (!prefix_text.empty()) cfg.prefix = parse_letters(prefix_text);
            DelayStats stats = run_monte_carlo(source, cfg);
            auto alpha = source_alpha(source);
            emit(out_path, delay_stats_csv(stats, alpha));
            (out_path.empty() ? std::cerr : std::cout) << delay_stats_summary(stats, alpha);
        } else if (*exact) {
            SourceModel source = load_source_spec(source_path);
            auto prefix = parse_letters(prefix_text);
            DelayStats stats = run_exact_tail(source, prefix, d_max, budget);
            auto alpha = source_alpha(source);
            emit(out_path, delay_stats_csv(stats, alpha));
            (out_path.empty() ? std::cerr : std::cout) << delay_stats_summary(stats, alpha);
        } else if (*bounds) {
            std::optional<Real> alpha, beta;
            if (!source_path.empty()) {
                SourceModel source = load_source_spec(source_path);
                const auto* m = source.memoryless();
                if (!m) throw ValidationError("bounds needs a memoryless source; use markov-check for chains");
                alpha = m->alpha().to_long_double();
                beta = m->beta().to_long_double();
            }
            if (!alpha_text.empty()) alpha = parse_probability(alpha_text);
            if (!beta_text.empty()) beta = parse_probability(beta_text);
            if (!alpha) throw ValidationError("bounds needs --alpha or --source");
            std::cout << "alpha," << format_real(*alpha) << '\n';
            if (beta) std::cout << "beta," << format_real(*beta) << '\n';
            std::cout << "d1_bound," << format_real(d1_bound(*alpha)) << '\n';
            if (beta) std::cout << "gallager_bound," << format_real(gallager_bound(*alpha, *beta)) << '\n';
            std::cout << "modified_gallager," << format_real(modified_gallager(*alpha)) << '\n';
            std::cout << "d0," << d0_of(*alpha) << '\n';
            std::cout << "d1," << d1_of(*alpha) << '\n';
            std::cout << "d2_bound," << format_real(d2_bound(*alpha)) << '\n';
            std::cout << "d3_bound," << format_real(d3_bound(*alpha)) << '\n';
            if (bounds->count("--dmax"))
                for (std::size_t d = 0; d <= d_max; ++d)
                    std::cout << "tail_bound[" << d << "]," << format_real(tail_bound(*alpha, static_cast<unsigned>(d)))
                              << '\n';
        } else if (*figure) {
            FigureKind kind = parse_figure_kind(figure_name);
            Grid grid = Grid::parse(grid_text);
            BoundCurve curve = emit_figure(kind, grid, out_path, svg_path);
            std::cout << "wrote " << curve.points.size() << " rows to " << out_path << '\n';
            if (kind == FigureKind::ratios) {
                auto report = [&](const char* name, auto ratio) {
                    auto xs = crossings(ratio, grid);
                    std::cout << name << " = 1 at alpha:";
                    for (Real x : xs) std::cout << ' ' << format_real(x);
                    std::cout << '\n';
                };
                report("D1/Dmg", [](Real a) { return d1_bound(a) / modified_gallager(a); });
                report("D2/Dmg", [](Real a) { return d2_bound(a) / modified_gallager(a); });
                std::cout << "max D1/Dmg = " << format_real(*std::max_element(curve.r1.begin(), curve.r1.end()))
                          << ", max D2/Dmg = " << format_real(*std::max_element(curve.r2.begin(), curve.r2.end()))
                          << '\n';
            }
        } else if (*markov) {
            SourceModel source = load_source_spec(source_path);
            MarkovCheck check = markov_check(source, static_cast<unsigned>(d_max));
            std::cout << markov_check_text(check);
            if (!out_path.empty()) write_text_file(out_path, markov_check_csv(check));
        }
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
