#include "acdelay/figures.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "acdelay/errors.hpp"

namespace acdelay {

std::string format_real(Real x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12Lg", x);
    return buf;
}

namespace {

struct Series {
    std::string name;
    std::vector<Real> y;
};

std::vector<Series> plotted_series(const BoundCurve& curve) {
    std::vector<Series> out;
    if (curve.kind == FigureKind::ternary) {
        Series dg{"dg", {}}, dmg{"dmg", {}}, d1{"d1", {}};
        for (const auto& pt : curve.points) {
            dg.y.push_back(pt.dg.value_or(0));
            dmg.y.push_back(pt.dmg);
            d1.y.push_back(pt.d1);
        }
        out = {dg, dmg, d1};
    } else {
        out = {{"r1", curve.r1}, {"r2", curve.r2}, {"r3", curve.r3}};
    }
    return out;
}

}  // namespace

std::string curve_csv(const BoundCurve& curve) {
    std::ostringstream os;
    if (curve.kind == FigureKind::ternary) {
        os << "p,alpha,beta,dg,dmg,d1\n";
        for (const auto& pt : curve.points)
            os << format_real(pt.param) << ',' << format_real(pt.alpha) << ',' << format_real(pt.beta.value_or(0))
               << ',' << format_real(pt.dg.value_or(0)) << ',' << format_real(pt.dmg) << ',' << format_real(pt.d1)
               << '\n';
    } else {
        os << "alpha,r1,r2,r3\n";
        for (std::size_t i = 0; i < curve.points.size(); ++i)
            os << format_real(curve.points[i].alpha) << ',' << format_real(curve.r1[i]) << ','
               << format_real(curve.r2[i]) << ',' << format_real(curve.r3[i]) << '\n';
    }
    return os.str();
}

std::string curve_svg(const BoundCurve& curve) {
    constexpr double width = 640, height = 420, margin = 50;
    static const char* colours[] = {"#1f77b4", "#d62728", "#2ca02c"};
    auto series = plotted_series(curve);
    if (curve.points.empty()) throw ValidationError("cannot plot an empty curve");

    Real x_lo = curve.points.front().param, x_hi = curve.points.back().param;
    Real y_lo = 0, y_hi = 0;
    for (const auto& s : series)
        for (Real v : s.y) y_hi = std::max(y_hi, v);
    if (curve.kind == FigureKind::ternary) y_hi = std::min<Real>(y_hi, 30);  // Dg diverges as p -> 0
    if (x_hi <= x_lo) x_hi = x_lo + 1;
    if (y_hi <= y_lo) y_hi = y_lo + 1;
    auto px = [&](Real x) { return margin + static_cast<double>((x - x_lo) / (x_hi - x_lo)) * (width - 2 * margin); };
    auto py = [&](Real y) {
        y = std::clamp(y, y_lo, y_hi);
        return height - margin - static_cast<double>((y - y_lo) / (y_hi - y_lo)) * (height - 2 * margin);
    };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << width - margin << "\" y2=\""
       << height - margin << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\"" << height - margin
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << width / 2 << "\" y=\"" << height - 12 << "\" text-anchor=\"middle\">"
       << (curve.kind == FigureKind::ternary ? "p" : "alpha") << "</text>\n";
    os << "<text x=\"" << margin << "\" y=\"" << margin - 8 << "\" font-size=\"11\">max " << format_real(y_hi)
       << "</text>\n";
    for (std::size_t s = 0; s < series.size(); ++s) {
        os << "<polyline fill=\"none\" stroke=\"" << colours[s % 3] << "\" points=\"";
        for (std::size_t i = 0; i < curve.points.size(); ++i)
            os << (i ? " " : "") << px(curve.points[i].param) << ',' << py(series[s].y[i]);
        os << "\"/>\n";
        os << "<text x=\"" << width - margin - 40 << "\" y=\"" << margin + 16 * s << "\" fill=\"" << colours[s % 3]
           << "\">" << series[s].name << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

BoundCurve emit_figure(FigureKind kind, const Grid& grid, const std::string& csv_path,
                       const std::optional<std::string>& svg_path) {
    BoundCurve curve = scan_curves(kind, grid);
    write_text_file(csv_path, curve_csv(curve));
    if (svg_path) write_text_file(*svg_path, curve_svg(curve));
    return curve;
}

FigureKind parse_figure_kind(const std::string& name) {
    if (name == "ternary") return FigureKind::ternary;
    if (name == "ratios") return FigureKind::ratios;
    throw ValidationError("unknown figure '" + name + "' (expected ternary or ratios)");
}

}  // namespace acdelay
