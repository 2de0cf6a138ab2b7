#pragma once

/**
 * @file bounds.hpp
 * @brief Closed-form expected-delay bounds and the curve scans behind the figures.
 *
 * Bounds mix logarithms and powers, so they are evaluated in long double
 * (64-bit significand on x86-64). All logarithms are base 2. alpha is the
 * largest letter probability and beta the smallest.
 */

#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "acdelay/exact.hpp"

namespace acdelay {

using Real = long double;

inline constexpr Real kEuler = 2.718281828459045235360287471352662498L;

/// Pr(D > d) <= 4 alpha^d (1 + d log(1/alpha)).
Real tail_bound(Real alpha, unsigned d);

/// 1 + 4 alpha (1 - alpha + log(1/alpha)) / (1 - alpha)^2.
Real d1_bound(Real alpha);

/// Gallager's bound log(8 e^2 / beta) / log(1/alpha).
Real gallager_bound(Real alpha, Real beta);

/// Gallager's bound with beta replaced by alpha: 1 + log(8 e^2) / log(1/alpha).
Real modified_gallager(Real alpha);

/// floor(2 / log(1/alpha)).
unsigned d0_of(Real alpha);

/// Largest d >= d0 such that 2 alpha^j (1 + 2 j log(1/alpha)) > 1 for every d0 < j <= d.
unsigned d1_of(Real alpha);

/// 1 + d + 2 alpha^{d+1}/(1-alpha) + 4 alpha^{d+1} (d(1-alpha)+1) log(1/alpha)/(1-alpha)^2.
Real refined_bound_at(Real alpha, unsigned d);

/// refined_bound_at(alpha, d1_of(alpha)).
Real d2_bound(Real alpha);
/// refined_bound_at(alpha, d0_of(alpha)); looser than d2_bound for large alpha.
Real d3_bound(Real alpha);

struct MemoryDelayBound {
    Real value = 0;
    Real truncation_error = 0;
    unsigned terms = 0;
};

/// 1 + 4 sum_{d>=1} gamma(d) (1 + log(1/gamma(d))), summed until the tail
/// certified by gamma(d) <= xi^floor(d/states) drops below `tol`. `gamma` is
/// called with d = 1, 2, ... in order. Throws UncertifiedSource when xi >= 1.
MemoryDelayBound memory_delay_bound(const std::function<Rational(unsigned)>& gamma, std::size_t states,
                                    const Rational& xi, Real tol);

/// Inclusive grid lo, lo + step, ..., hi.
struct Grid {
    Real lo = 0.001L;
    Real hi = 0.999L;
    Real step = 0.001L;

    /// Parses "lo:hi:step"; all three in (0,1) with lo <= hi.
    static Grid parse(std::string_view text);
    std::size_t size() const;
    Real at(std::size_t i) const;
};

struct BoundPoint {
    Real param = 0;  // p for the ternary family, alpha otherwise
    Real alpha = 0;
    std::optional<Real> beta;
    std::optional<Real> dg;
    Real d1 = 0;
    Real dmg = 0;
    Real d2 = 0;
    Real d3 = 0;
    unsigned d0_index = 0;
    unsigned d1_index = 0;
};

enum class FigureKind { ternary, ratios };

struct BoundCurve {
    FigureKind kind = FigureKind::ratios;
    std::vector<BoundPoint> points;
    // Pointwise ratios to the modified Gallager bound.
    std::vector<Real> r1, r2, r3;
};

/// Ternary family (p, (1-p)/2, (1-p)/2) per grid p, or bound ratios per grid alpha.
BoundCurve scan_curves(FigureKind kind, const Grid& grid);

/// Points where f crosses `level`, located by sign change on the grid and
/// bisection to `resolution`.
std::vector<Real> crossings(const std::function<Real(Real)>& f, const Grid& grid, Real level = 1.0L,
                            Real resolution = 1e-4L);

}  // namespace acdelay
