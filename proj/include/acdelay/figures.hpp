#pragma once

// CSV and SVG output for the bound curves. CSV: comma separated, '.'
// decimal point, 12 significant digits, header row, LF line endings.

#include <optional>
#include <string>

#include "acdelay/bounds.hpp"

namespace acdelay {

/// 12 significant digits.
std::string format_real(Real x);

/// ternary: p,alpha,beta,dg,dmg,d1   ratios: alpha,r1,r2,r3
std::string curve_csv(const BoundCurve& curve);

/// Standalone SVG line plot of the same columns.
std::string curve_svg(const BoundCurve& curve);

void write_text_file(const std::string& path, const std::string& content);

BoundCurve emit_figure(FigureKind kind, const Grid& grid, const std::string& csv_path,
                       const std::optional<std::string>& svg_path);

FigureKind parse_figure_kind(const std::string& name);

}  // namespace acdelay
