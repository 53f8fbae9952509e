#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "caterpack/caterpillar.hpp"
#include "caterpack/errors.hpp"

namespace caterpack {

enum class Side { inner, outer };

struct DrawnEdge {
    int a = 0;
    int b = 0;
    Side side = Side::inner;

    friend bool operator==(const DrawnEdge& x, const DrawnEdge& y) {
        return x.a == y.a && x.b == y.b && x.side == y.side;
    }
};

// A drawing on n equally spaced points of a circle, numbered 0..n-1 clockwise.
// Edges live on position pairs; each is routed inside or outside the circle.
// assign maps vertex ids to positions for drawings built from a caterpillar
// and stays empty for drawings parsed from position-only data.
struct ConvexDrawing {
    int n = 0;
    std::vector<int> assign;
    std::vector<DrawnEdge> edges;
    int start = 0;
    int delta = 0;
    int sigma = 0;
};

inline std::vector<int> drawing_degrees(const ConvexDrawing& d) {
    std::vector<int> deg(static_cast<std::size_t>(d.n), 0);
    for (const auto& e : d.edges) {
        if (e.a < 0 || e.a >= d.n || e.b < 0 || e.b >= d.n || e.a == e.b)
            throw structure_error("drawing: edge endpoint out of range");
        ++deg[static_cast<std::size_t>(e.a)];
        ++deg[static_cast<std::size_t>(e.b)];
    }
    return deg;
}

// Generating delta of a drawing: stored if present, else the maximum degree
// (spine degree dominates leaf degree in any zig-zag drawing).
inline int inferred_delta(const ConvexDrawing& d) {
    if (d.delta >= 2) return d.delta;
    const auto deg = drawing_degrees(d);
    int m = 0;
    for (int x : deg) m = std::max(m, x);
    if (m < 2) throw structure_error("drawing: cannot infer delta");
    return m;
}

inline int inferred_sigma(const ConvexDrawing& d) {
    if (d.sigma >= 1) return d.sigma;
    const int delta = inferred_delta(d);
    if ((d.n - 2) % (delta - 1) != 0) throw structure_error("drawing: cannot infer sigma");
    return (d.n - 2) / (delta - 1);
}

// Clockwise distance from the starting point to the ending point.
inline int half_width(int n, int delta, int sigma) {
    return (n - (delta - 1) * (sigma % 2)) / 2;
}

inline int ending_point(const ConvexDrawing& d) {
    const int delta = inferred_delta(d);
    const int sigma = inferred_sigma(d);
    return (d.start + half_width(d.n, delta, sigma)) % d.n;
}

// Whether position p lies in the upper part, the clockwise run from the
// starting point up to but not including the ending point.
inline bool in_upper_part(const ConvexDrawing& d, int p) {
    const int rel = ((p - d.start) % d.n + d.n) % d.n;
    return rel < half_width(d.n, inferred_delta(d), inferred_sigma(d));
}

// Zig-zag drawing of a delta-regular caterpillar on n circle positions.
// Spine vertices alternate between the upper and lower arcs; the path's two
// end spine vertices occupy the starting point and the point just before the
// ending point's gap, and every spine vertex's leaves fill one gap.
inline ConvexDrawing zigzag_drawing(const Caterpillar& c, int start, Side side) {
    validate_caterpillar(c);
    const int sigma = c.sigma();
    if (sigma < 2) throw parameter_error("zigzag_drawing: sigma must be >= 2");
    const auto delta_opt = regularity_of(c);
    if (!delta_opt) throw parameter_error("zigzag_drawing: caterpillar is not regular");
    const int delta = *delta_opt;
    const int n = c.n;
    if (start < 0 || start >= n) throw parameter_error("zigzag_drawing: start out of range");

    // Drawing-order spine u_1..u_sigma (1-based): caterpillar spine vertex k
    // sits at u_{(k+1)/2} for odd k and u_{sigma+1-k/2} for even k.
    std::vector<int> u_of_k(static_cast<std::size_t>(sigma + 1));
    for (int k = 1; k <= sigma; ++k)
        u_of_k[static_cast<std::size_t>(k)] = (k % 2 == 1) ? (k + 1) / 2 : sigma + 1 - k / 2;

    // Gap i follows u_i clockwise. The two gaps hosting delta-1 leaves belong
    // to the path ends u_1 and u_{floor(sigma/2)+1}; every other gap i hosts
    // the delta-2 leaves of u_{sigma-i+1}.
    const int wide_a = (sigma + 1) / 2; // gap of u_{floor(sigma/2)+1}
    const int wide_b = sigma;           // gap of u_1
    std::vector<int> gap_size(static_cast<std::size_t>(sigma + 1));
    for (int i = 1; i <= sigma; ++i)
        gap_size[static_cast<std::size_t>(i)] = (i == wide_a || i == wide_b) ? delta - 1 : delta - 2;

    std::vector<int> pos_u(static_cast<std::size_t>(sigma + 1));
    pos_u[1] = 0;
    for (int i = 1; i < sigma; ++i)
        pos_u[static_cast<std::size_t>(i + 1)] =
            pos_u[static_cast<std::size_t>(i)] + 1 + gap_size[static_cast<std::size_t>(i)];

    auto gap_of_owner = [&](int j) {
        if (j == 1) return sigma;
        if (j == sigma / 2 + 1) return wide_a;
        return sigma - j + 1;
    };

    ConvexDrawing d;
    d.n = n;
    d.assign.assign(static_cast<std::size_t>(n), -1);
    d.start = 0;
    d.delta = delta;
    d.sigma = sigma;
    for (int k = 1; k <= sigma; ++k) {
        const int j = u_of_k[static_cast<std::size_t>(k)];
        d.assign[static_cast<std::size_t>(c.spine[static_cast<std::size_t>(k - 1)])] =
            pos_u[static_cast<std::size_t>(j)];
        const int gap = gap_of_owner(j);
        int p = pos_u[static_cast<std::size_t>(gap)] + 1;
        const auto& ls = c.leaves[static_cast<std::size_t>(k - 1)];
        if (static_cast<int>(ls.size()) != gap_size[static_cast<std::size_t>(gap)])
            throw structure_error("zigzag_drawing: leaf count does not fit its gap");
        for (int leaf : ls) d.assign[static_cast<std::size_t>(leaf)] = p++;
    }
    for (const auto& [x, y] : c.edges())
        d.edges.push_back({d.assign[static_cast<std::size_t>(x)],
                           d.assign[static_cast<std::size_t>(y)], side});

    if (start == 0) return d;
    // Build canonically at 0, then move the whole drawing to the requested start.
    ConvexDrawing out = d;
    out.start = start;
    for (auto& v : out.assign) v = (v + start) % n;
    for (auto& e : out.edges) {
        e.a = (e.a + start) % n;
        e.b = (e.b + start) % n;
    }
    return out;
}

// Rotate every position by ell steps clockwise.
inline ConvexDrawing rotate(const ConvexDrawing& d, int ell) {
    if (d.n <= 0) throw parameter_error("rotate: empty drawing");
    const int shift = ((ell % d.n) + d.n) % d.n;
    ConvexDrawing out = d;
    out.start = (d.start + shift) % d.n;
    for (auto& v : out.assign)
        if (v >= 0) v = (v + shift) % d.n;
    for (auto& e : out.edges) {
        e.a = (e.a + shift) % d.n;
        e.b = (e.b + shift) % d.n;
    }
    return out;
}

// The slope class of a chord between positions a and b is (a+b) mod n; a
// zig-zag drawing uses exactly delta consecutive classes, and each spine
// vertex's incident edges realize all of them. Returns the window in
// circular order. Throws if the drawing lacks this structure.
inline std::vector<int> used_slope_window(const ConvexDrawing& d) {
    const int n = d.n;
    const int delta = inferred_delta(d);
    std::vector<char> present(static_cast<std::size_t>(n), 0);
    int distinct = 0;
    for (const auto& e : d.edges) {
        const int s = (e.a + e.b) % n;
        if (!present[static_cast<std::size_t>(s)]) {
            present[static_cast<std::size_t>(s)] = 1;
            ++distinct;
        }
    }
    if (distinct != delta)
        throw structure_error("used_slope_window: drawing does not use exactly delta slope classes");
    int window_start = -1;
    int runs = 0;
    for (int s = 0; s < n; ++s) {
        if (present[static_cast<std::size_t>(s)] && !present[static_cast<std::size_t>((s + n - 1) % n)]) {
            ++runs;
            window_start = s;
        }
    }
    if (runs != 1)
        throw structure_error("used_slope_window: slope classes are not contiguous");

    const auto deg = drawing_degrees(d);
    for (int p = 0; p < n; ++p) {
        if (deg[static_cast<std::size_t>(p)] < 2) continue;
        std::vector<char> hit(static_cast<std::size_t>(n), 0);
        int cnt = 0;
        for (const auto& e : d.edges) {
            if (e.a != p && e.b != p) continue;
            const int s = (e.a + e.b) % n;
            if (!hit[static_cast<std::size_t>(s)]) {
                hit[static_cast<std::size_t>(s)] = 1;
                ++cnt;
            }
        }
        if (cnt != delta)
            throw structure_error("used_slope_window: spine vertex misses a slope class");
    }

    std::vector<int> window(static_cast<std::size_t>(delta));
    for (int t = 0; t < delta; ++t) window[static_cast<std::size_t>(t)] = (window_start + t) % n;
    return window;
}

// The two hull edges of a zig-zag drawing: one ends at the starting point,
// the other at the ending point. Returned in that order.
inline std::pair<DrawnEdge, DrawnEdge> short_edges(const ConvexDrawing& d) {
    const int n = d.n;
    std::vector<DrawnEdge> hull;
    for (const auto& e : d.edges) {
        const int gap = ((e.a - e.b) % n + n) % n;
        if (gap == 1 || gap == n - 1) hull.push_back(e);
    }
    if (hull.size() != 2)
        throw structure_error("short_edges: expected exactly two hull edges");
    const int r = ending_point(d);
    auto touches = [&](const DrawnEdge& e, int p) { return e.a == p || e.b == p; };
    const DrawnEdge* at_start = nullptr;
    const DrawnEdge* at_end = nullptr;
    for (const auto& e : hull) {
        if (touches(e, d.start) && touches(e, (d.start + n - 1) % n)) at_start = &e;
        if (touches(e, r) && touches(e, (r + n - 1) % n)) at_end = &e;
    }
    if (!at_start || !at_end)
        throw structure_error("short_edges: hull edges not at the starting and ending points");
    return {*at_start, *at_end};
}

// Several drawings sharing one set of circle positions. Constructors keep
// drawing starts strictly increasing.
struct PackingLayout {
    int n = 0;
    std::vector<ConvexDrawing> drawings;

    int h() const { return static_cast<int>(drawings.size()); }

    std::vector<int> offsets() const {
        std::vector<int> js;
        js.reserve(drawings.size());
        for (const auto& d : drawings) js.push_back(d.start);
        return js;
    }
};

// Whether drawing d realizes caterpillar c through its vertex assignment:
// assign is a bijection onto positions and maps c's edge set onto d's.
inline bool drawing_matches(const Caterpillar& c, const ConvexDrawing& d) {
    if (c.n != d.n || static_cast<int>(d.assign.size()) != d.n) return false;
    std::vector<char> used(static_cast<std::size_t>(d.n), 0);
    for (int v : d.assign) {
        if (v < 0 || v >= d.n || used[static_cast<std::size_t>(v)]) return false;
        used[static_cast<std::size_t>(v)] = 1;
    }
    auto norm = [](int x, int y) { return std::pair<int, int>(std::min(x, y), std::max(x, y)); };
    std::vector<std::pair<int, int>> want, got;
    for (const auto& [x, y] : c.edges())
        want.push_back(norm(d.assign[static_cast<std::size_t>(x)], d.assign[static_cast<std::size_t>(y)]));
    for (const auto& e : d.edges) got.push_back(norm(e.a, e.b));
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());
    return want == got;
}

} // namespace caterpack
