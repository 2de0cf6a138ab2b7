#include "acdelay/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "acdelay/errors.hpp"

namespace acdelay {

namespace {

void check_alpha(Real alpha) {
    if (!(alpha > 0.0L && alpha < 1.0L)) throw DomainError("alpha must lie in (0,1)");
}

Real log2_inv(Real x) { return -std::log2(x); }

}  // namespace

Real tail_bound(Real alpha, unsigned d) {
    check_alpha(alpha);
    return 4.0L * std::pow(alpha, static_cast<Real>(d)) * (1.0L + d * log2_inv(alpha));
}

Real d1_bound(Real alpha) {
    check_alpha(alpha);
    Real q = 1.0L - alpha;
    return 1.0L + 4.0L * alpha * (q + log2_inv(alpha)) / (q * q);
}

Real gallager_bound(Real alpha, Real beta) {
    check_alpha(alpha);
    if (!(beta > 0.0L)) throw DomainError("beta must be positive");
    if (beta > alpha) throw DomainError("beta cannot exceed alpha");
    return std::log2(8.0L * kEuler * kEuler / beta) / log2_inv(alpha);
}

Real modified_gallager(Real alpha) {
    check_alpha(alpha);
    return 1.0L + std::log2(8.0L * kEuler * kEuler) / log2_inv(alpha);
}

unsigned d0_of(Real alpha) {
    check_alpha(alpha);
    return static_cast<unsigned>(std::floor(2.0L / log2_inv(alpha)));
}

unsigned d1_of(Real alpha) {
    const unsigned d0 = d0_of(alpha);
    const Real l = log2_inv(alpha);
    auto exceeds = [&](unsigned d) {
        return 2.0L * std::pow(alpha, static_cast<Real>(d)) * (1.0L + 2.0L * d * l) > 1.0L;
    };
    constexpr unsigned guard = 1'000'000;
    unsigned d1 = d0;
    while (exceeds(d1 + 1)) {
        if (++d1 - d0 >= guard) {
            // The expression is eventually decreasing, so this only trips for alpha
            // within rounding of 1.
            throw DomainError("d1 scan did not terminate; alpha too close to 1");
        }
    }
    return d1;
}

Real refined_bound_at(Real alpha, unsigned d) {
    check_alpha(alpha);
    const Real q = 1.0L - alpha;
    const Real a = std::pow(alpha, static_cast<Real>(d) + 1.0L);
    return 1.0L + d + 2.0L * a / q + 4.0L * a * (d * q + 1.0L) * log2_inv(alpha) / (q * q);
}

Real d2_bound(Real alpha) { return refined_bound_at(alpha, d1_of(alpha)); }
Real d3_bound(Real alpha) { return refined_bound_at(alpha, d0_of(alpha)); }

MemoryDelayBound memory_delay_bound(const std::function<Rational(unsigned)>& gamma, std::size_t states,
                                    const Rational& xi, Real tol) {
    if (xi >= Rational(1))
        throw UncertifiedSource("xi = " + xi.str() +
                                " >= 1: the chain has a deterministic cycle, no decay certificate");
    if (xi.sign() < 0 || states == 0 || !(tol > 0)) throw DomainError("invalid memory bound arguments");

    // x (1 + log(1/x)) increases on (0, 2^(1 - 1/ln 2)) ~ (0, 0.7358); the
    // envelope terms are only used once they sit below this cutoff.
    constexpr Real monotone_cutoff = 0.7L;
    const Real x = xi.to_long_double();
    const Real k = static_cast<Real>(states);
    auto term = [](Real g) { return g > 0 ? g * (1.0L + log2_inv(g)) : 0.0L; };
    // K * sum_{m >= M} xi^m (1 + m log(1/xi)).
    auto envelope_tail = [&](unsigned long m) -> Real {
        if (x == 0) return 0.0L;
        const Real q = 1.0L - x;
        const Real xm = std::pow(x, static_cast<Real>(m));
        return k * (xm / q + log2_inv(x) * xm * (m * q + x) / (q * q));
    };

    MemoryDelayBound out;
    Real partial = 0;
    for (unsigned d = 1;; ++d) {
        partial += term(gamma(d).to_long_double());
        unsigned long m = (d + 1) / states;
        if (x == 0 || std::pow(x, static_cast<Real>(m)) <= monotone_cutoff) {
            Real tail = 4.0L * envelope_tail(m);
            if (tail < tol) {
                out.value = 1.0L + 4.0L * partial;
                out.truncation_error = tail;
                out.terms = d;
                return out;
            }
        }
        if (d == 10'000'000u) throw std::runtime_error("memory bound series did not converge");
    }
}

Grid Grid::parse(std::string_view text) {
    auto first = text.find(':');
    auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
    if (second == std::string_view::npos) throw ValidationError("grid must look like lo:hi:step");
    auto num = [&](std::string_view s) {
        std::string str(s);
        std::size_t used = 0;
        Real v;
        try {
            v = std::stold(str, &used);
        } catch (const std::exception&) {
            throw ValidationError("bad grid number '" + str + "'");
        }
        if (used != str.size()) throw ValidationError("bad grid number '" + str + "'");
        return v;
    };
    Grid g{num(text.substr(0, first)), num(text.substr(first + 1, second - first - 1)),
           num(text.substr(second + 1))};
    if (!(g.lo > 0 && g.hi < 1 && g.lo <= g.hi && g.step > 0))
        throw ValidationError("grid must satisfy 0 < lo <= hi < 1 and step > 0");
    return g;
}

std::size_t Grid::size() const {
    return static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9L)) + 1;
}

Real Grid::at(std::size_t i) const { return lo + static_cast<Real>(i) * step; }

namespace {

BoundPoint evaluate(Real param, Real alpha, std::optional<Real> beta) {
    BoundPoint pt;
    pt.param = param;
    pt.alpha = alpha;
    pt.beta = beta;
    if (beta) pt.dg = gallager_bound(alpha, *beta);
    pt.d1 = d1_bound(alpha);
    pt.dmg = modified_gallager(alpha);
    pt.d0_index = d0_of(alpha);
    pt.d1_index = d1_of(alpha);
    pt.d2 = refined_bound_at(alpha, pt.d1_index);
    pt.d3 = refined_bound_at(alpha, pt.d0_index);
    return pt;
}

}  // namespace

BoundCurve scan_curves(FigureKind kind, const Grid& grid) {
    BoundCurve curve;
    curve.kind = kind;
    const std::size_t n = grid.size();
    curve.points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Real v = grid.at(i);
        if (kind == FigureKind::ternary) {
            Real other = (1.0L - v) / 2.0L;
            curve.points.push_back(evaluate(v, std::max(v, other), std::min(v, other)));
        } else {
            curve.points.push_back(evaluate(v, v, std::nullopt));
        }
    }
    for (const auto& pt : curve.points) {
        curve.r1.push_back(pt.d1 / pt.dmg);
        curve.r2.push_back(pt.d2 / pt.dmg);
        curve.r3.push_back(pt.d3 / pt.dmg);
    }
    return curve;
}

std::vector<Real> crossings(const std::function<Real(Real)>& f, const Grid& grid, Real level, Real resolution) {
    std::vector<Real> out;
    const std::size_t n = grid.size();
    Real prev_x = grid.at(0);
    Real prev = f(prev_x) - level;
    for (std::size_t i = 1; i < n; ++i) {
        Real x = grid.at(i);
        Real cur = f(x) - level;
        if ((prev < 0) != (cur < 0)) {
            Real lo = prev_x, hi = x;
            const bool rising = prev < 0;
            while (hi - lo > resolution) {
                Real mid = (lo + hi) / 2;
                bool below = f(mid) - level < 0;
                (below == rising ? lo : hi) = mid;
            }
            out.push_back((lo + hi) / 2);
        }
        prev_x = x;
        prev = cur;
    }
    return out;
}

}  // namespace acdelay
