#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "caterpack/errors.hpp"

namespace caterpack {

// A caterpillar tree: removing all leaves yields exactly the spine path.
// Vertex ids are 0..n-1 in canonical spine-major order: spine vertices first
// (in path order), then each spine vertex's leaves in spine order.
struct Caterpillar {
    int n = 0;
    std::vector<int> spine;
    std::vector<std::vector<int>> leaves; // leaves[i] hang off spine[i]

    int sigma() const { return static_cast<int>(spine.size()); }

    int spine_degree(int i) const {
        const int s = sigma();
        int d = static_cast<int>(leaves[i].size());
        if (i > 0) ++d;
        if (i + 1 < s) ++d;
        return d;
    }

    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> es;
        es.reserve(static_cast<std::size_t>(n > 0 ? n - 1 : 0));
        for (std::size_t i = 0; i + 1 < spine.size(); ++i)
            es.emplace_back(spine[i], spine[i + 1]);
        for (std::size_t i = 0; i < spine.size(); ++i)
            for (int leaf : leaves[i]) es.emplace_back(spine[i], leaf);
        return es;
    }
};

// Structural consistency: ids partition 0..n-1, leaf lists align with the
// spine, and for sigma >= 2 both spine ends carry a leaf (otherwise leaf
// removal would not yield this spine).
inline void validate_caterpillar(const Caterpillar& c) {
    if (c.n < 2) throw structure_error("caterpillar: need at least 2 vertices");
    if (c.spine.empty()) throw structure_error("caterpillar: empty spine");
    if (c.leaves.size() != c.spine.size())
        throw structure_error("caterpillar: leaf table size mismatch");
    std::vector<int> seen(static_cast<std::size_t>(c.n), 0);
    auto mark = [&](int v) {
        if (v < 0 || v >= c.n) throw structure_error("caterpillar: vertex id out of range");
        if (seen[static_cast<std::size_t>(v)]++) throw structure_error("caterpillar: duplicate vertex id");
    };
    for (int v : c.spine) mark(v);
    for (const auto& ls : c.leaves)
        for (int v : ls) mark(v);
    for (int v = 0; v < c.n; ++v)
        if (!seen[static_cast<std::size_t>(v)]) throw structure_error("caterpillar: missing vertex id");
    if (c.sigma() >= 2) {
        if (c.leaves.front().empty() || c.leaves.back().empty())
            throw structure_error("caterpillar: spine end without a leaf");
    }
}

// Delta-regular caterpillar with sigma spine vertices: n = sigma*(delta-1)+2,
// every spine vertex has degree delta.
inline Caterpillar make_regular_caterpillar(int delta, int sigma) {
    if (delta < 2) throw parameter_error("make_regular_caterpillar: delta must be >= 2");
    if (sigma < 1) throw parameter_error("make_regular_caterpillar: sigma must be >= 1");
    Caterpillar c;
    c.n = sigma * (delta - 1) + 2;
    c.spine.resize(static_cast<std::size_t>(sigma));
    for (int i = 0; i < sigma; ++i) c.spine[static_cast<std::size_t>(i)] = i;
    c.leaves.resize(static_cast<std::size_t>(sigma));
    int next = sigma;
    for (int i = 0; i < sigma; ++i) {
        int count;
        if (sigma == 1)
            count = delta;
        else if (i == 0 || i == sigma - 1)
            count = delta - 1;
        else
            count = delta - 2;
        auto& ls = c.leaves[static_cast<std::size_t>(i)];
        ls.resize(static_cast<std::size_t>(count));
        for (int l = 0; l < count; ++l) ls[static_cast<std::size_t>(l)] = next++;
    }
    validate_caterpillar(c);
    return c;
}

// The common spine degree if one exists.
inline std::optional<int> regularity_of(const Caterpillar& c) {
    const int s = c.sigma();
    const int d0 = c.spine_degree(0);
    for (int i = 1; i < s; ++i)
        if (c.spine_degree(i) != d0) return std::nullopt;
    return d0;
}

// Necessary conditions for packing h spanning trees with the given maximum
// degrees into a simple n-vertex host: n >= 2h and every degree <= n-h.
inline bool check_packing_necessary(int n, int h, const std::vector<int>& maxdegs) {
    if (n < 1 || h < 1) throw parameter_error("check_packing_necessary: n and h must be positive");
    if (n < 2 * h) return false;
    for (int d : maxdegs)
        if (d > n - h) return false;
    return true;
}

// Feasibility of placing h copies of the delta-regular caterpillar with sigma
// spine vertices (n = sigma*(delta-1)+2): delta <= n-h and
// n >= 2h + (delta-1)*(sigma mod 2).
inline bool placement_exists(int delta, int sigma, int h) {
    if (delta < 2) throw parameter_error("placement_exists: delta must be >= 2");
    if (sigma < 2)
        throw parameter_error("placement_exists: sigma must be >= 2 (a single spine vertex has degree n-1)");
    if (h < 1) throw parameter_error("placement_exists: h must be >= 1");
    const int n = sigma * (delta - 1) + 2;
    if (delta > n - h) return false;
    if (n < 2 * h + (delta - 1) * (sigma % 2)) return false;
    return true;
}

// On n = 2h points, no h delta-regular caterpillars pack into any simple graph
// unless (h-1)/(delta-1) is an integer. Requires that the caterpillar exists
// at n = 2h, i.e. delta-1 divides 2h-2.
inline bool forbids_n_eq_2h(int delta, int h) {
    if (delta < 2) throw parameter_error("forbids_n_eq_2h: delta must be >= 2");
    if (h < 2) throw parameter_error("forbids_n_eq_2h: h must be >= 2");
    if ((2 * h - 2) % (delta - 1) != 0)
        throw parameter_error("forbids_n_eq_2h: no delta-regular caterpillar on 2h vertices");
    return (h - 1) % (delta - 1) != 0;
}

// Caterpillar witnessing the small-h lower bounds: a center vertex of degree
// n-h (n-h-1 leaves) extended by a pendant path of h edges.
inline Caterpillar make_center_caterpillar(int n, int h) {
    if (h < 3 || h > 5) throw parameter_error("make_center_caterpillar: h must be in [3,5]");
    const int min_n = (h == 5) ? 24 : h + 7;
    if (n < min_n) throw parameter_error("make_center_caterpillar: n too small for this h");
    Caterpillar c;
    c.n = n;
    c.spine.resize(static_cast<std::size_t>(h)); // center plus p_1..p_{h-1}
    for (int i = 0; i < h; ++i) c.spine[static_cast<std::size_t>(i)] = i;
    c.leaves.assign(static_cast<std::size_t>(h), {});
    int next = h;
    auto& center = c.leaves.front();
    center.resize(static_cast<std::size_t>(n - h - 1));
    for (auto& v : center) v = next++;
    c.leaves.back().push_back(next++); // p_h terminates the pendant path
    validate_caterpillar(c);
    return c;
}

} // namespace caterpack
