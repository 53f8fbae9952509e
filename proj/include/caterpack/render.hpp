#pragma once

#include <cmath>
#include <cstdio>
#include <string>

#include "caterpack/errors.hpp"
#include "caterpack/layout.hpp"

namespace caterpack {

namespace detail {

inline std::string fmt2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

} // namespace detail

// Deterministic SVG picture of a layout: positions on a circle labeled
// v1..vn clockwise from the top, one stroke color per drawing, inner edges
// as chords, outer edges as low arcs hugging the circle from outside.
inline std::string render_svg(const PackingLayout& layout) {
    if (layout.drawings.empty()) throw parameter_error("render_svg: layout has no drawings");
    const int n = layout.n;
    if (n < 3) throw parameter_error("render_svg: need at least 3 positions");

    const double size = 480.0;
    const double cx = size / 2.0, cy = size / 2.0;
    const double radius = 140.0;
    const double two_pi = 8.0 * std::atan(1.0);
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

    auto at = [&](double pos, double r) {
        const double th = two_pi * (0.25 - pos / n); // position 0 on top, clockwise
        return std::pair<double, double>(cx + r * radius * std::cos(th),
                                         cy - r * radius * std::sin(th));
    };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\"480\" "
           "viewBox=\"0 0 480 480\">\n";
    svg += "<rect width=\"480\" height=\"480\" fill=\"white\"/>\n";
    svg += "<circle cx=\"" + detail::fmt2(cx) + "\" cy=\"" + detail::fmt2(cy) + "\" r=\"" +
           detail::fmt2(radius) + "\" fill=\"none\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";

    for (std::size_t di = 0; di < layout.drawings.size(); ++di) {
        const char* color = palette[di % 8];
        for (const auto& e : layout.drawings[di].edges) {
            if (e.side == Side::inner) {
                const auto [x1, y1] = at(e.a, 1.0);
                const auto [x2, y2] = at(e.b, 1.0);
                svg += "<line x1=\"" + detail::fmt2(x1) + "\" y1=\"" + detail::fmt2(y1) +
                       "\" x2=\"" + detail::fmt2(x2) + "\" y2=\"" + detail::fmt2(y2) +
                       "\" stroke=\"" + color + "\" stroke-width=\"1.2\" fill=\"none\"/>\n";
            } else {
                const int cw = ((e.b - e.a) % n + n) % n;
                int from = e.a, gap = cw;
                if (cw > n - cw || (2 * cw == n && e.b < e.a)) {
                    from = e.b;
                    gap = n - cw;
                }
                const double arc = two_pi * gap / n;
                svg += "<path d=\"";
                const int steps = std::max(8, 4 * gap);
                for (int t = 0; t <= steps; ++t) {
                    const double s = arc * t / steps;
                    const double r = 1.0 + 0.30 * std::min(s, arc - s);
                    const auto [x, y] = at(from + s * n / two_pi, r);
                    svg += (t == 0 ? "M" : " L") + detail::fmt2(x) + " " + detail::fmt2(y);
                }
                svg += "\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.2\" fill=\"none\"/>\n";
            }
        }
    }

    for (int p = 0; p < n; ++p) {
        const auto [x, y] = at(p, 1.0);
        svg += "<circle cx=\"" + detail::fmt2(x) + "\" cy=\"" + detail::fmt2(y) +
               "\" r=\"2.5\" fill=\"black\"/>\n";
        const auto [lx, ly] = at(p, 0.90);
        svg += "<text x=\"" + detail::fmt2(lx) + "\" y=\"" + detail::fmt2(ly) +
               "\" font-size=\"10\" text-anchor=\"middle\" dominant-baseline=\"middle\">v" +
               std::to_string(p + 1) + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

} // namespace caterpack
