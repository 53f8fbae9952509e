#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "caterpack/caterpillar.hpp"
#include "caterpack/errors.hpp"
#include "caterpack/layout.hpp"
#include "caterpack/verify.hpp"

namespace caterpack {

namespace detail {

inline void refuse_unless_simple(const PackingLayout& layout, bool unchecked, const char* who) {
    if (unchecked) return;
    const auto dup = has_multi_edges(layout);
    if (!dup.empty()) {
        std::string msg = std::string(who) + ": construction produced multiple edges:";
        for (const auto& [a, b] : dup)
            msg += " (" + std::to_string(a) + "," + std::to_string(b) + ")";
        throw verification_error(msg);
    }
}

inline void refuse_unless_bounded(const PackingLayout& layout, int bound, bool unchecked, const char* who) {
    if (unchecked) return;
    const int k = k_of(layout);
    if (k > bound)
        throw verification_error(std::string(who) + ": max per-edge crossings " + std::to_string(k) +
                                 " exceed the guaranteed bound " + std::to_string(bound));
}

// Caterpillar realizability on n positions; the single-spine case is refused
// because its spine vertex would have degree n-1.
inline int sigma_for(int delta, int n, const char* who) {
    if (delta < 2) throw parameter_error(std::string(who) + ": delta must be >= 2");
    if ((n - 2) % (delta - 1) != 0)
        throw parameter_error(std::string(who) + ": no delta-regular caterpillar with delta " +
                              std::to_string(delta) + " on " + std::to_string(n) + " vertices");
    const int sigma = (n - 2) / (delta - 1);
    if (sigma < 2)
        throw parameter_error(std::string(who) + ": delta " + std::to_string(delta) +
                              " admits only a single spine vertex on " + std::to_string(n) + " vertices");
    return sigma;
}

// Offset-gap hypotheses under which two zig-zag drawings stay edge-disjoint.
// Violations here mean the constructor itself is broken, not the input.
inline void assert_pair_gaps(const std::vector<int>& deltas, const std::vector<int>& sigmas,
                             const std::vector<int>& offsets, int n, bool divisible_chain,
                             const char* who) {
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        for (std::size_t j = i + 1; j < deltas.size(); ++j) {
            const int gap = offsets[j] - offsets[i];
            bool ok;
            if (deltas[i] == deltas[j]) {
                ok = gap > 0 && 2 * gap < n - (deltas[i] - 1) * (sigmas[i] % 2);
            } else if (divisible_chain) {
                ok = gap > 0 && 2 * gap < n - (deltas[i] - 1);
            } else {
                ok = 2 * gap >= deltas[j] && 2 * gap < n - (deltas[i] - 1);
            }
            if (!ok)
                throw verification_error(std::string(who) + ": offset schedule violates the pair " +
                                         std::to_string(i) + "," + std::to_string(j) + " gap hypothesis");
        }
    }
}

} // namespace detail

// h rotated copies of the zig-zag drawing of the delta-regular caterpillar
// with sigma spine vertices, at offsets 0..h-1, all on one side.
inline PackingLayout place_copies(int delta, int sigma, int h, Side side = Side::inner,
                                  bool unchecked = false) {
    if (h < 1) throw parameter_error("place_copies: h must be >= 1");
    const int n = sigma * (delta - 1) + 2;
    std::vector<std::string> violated;
    if (!(delta <= n - h))
        violated.push_back("delta <= n-h fails: " + std::to_string(delta) + " > " + std::to_string(n - h));
    if (!(n >= 2 * h + (delta - 1) * (sigma % 2)))
        violated.push_back("n >= 2h + (delta-1)*(sigma mod 2) fails: " + std::to_string(n) + " < " +
                           std::to_string(2 * h + (delta - 1) * (sigma % 2)));
    if (!violated.empty()) throw infeasible_error(std::move(violated));

    const Caterpillar c = make_regular_caterpillar(delta, sigma);
    const ConvexDrawing base = zigzag_drawing(c, 0, side);
    PackingLayout layout;
    layout.n = n;
    for (int i = 0; i < h; ++i) layout.drawings.push_back(rotate(base, i));

    if (!unchecked) {
        std::vector<int> deltas(static_cast<std::size_t>(h), delta);
        std::vector<int> sigmas(static_cast<std::size_t>(h), sigma);
        detail::assert_pair_gaps(deltas, sigmas, layout.offsets(), n, false, "place_copies");
        for (const auto& d : layout.drawings)
            if (!drawing_matches(c, d))
                throw verification_error("place_copies: drawing does not realize the caterpillar");
    }
    detail::refuse_unless_simple(layout, unchecked, "place_copies");
    detail::refuse_unless_bounded(layout, bound_placement_crossings(delta, h), unchecked, "place_copies");
    return layout;
}

// Packing of caterpillars with non-increasing degrees deltas[0] >= ... on n
// positions, offsets advancing by ceil(delta_i / 2).
inline PackingLayout pack_mixed(const std::vector<int>& deltas, int n, bool unchecked = false) {
    if (deltas.empty()) throw parameter_error("pack_mixed: need at least one delta");
    for (std::size_t i = 1; i < deltas.size(); ++i)
        if (deltas[i] > deltas[i - 1])
            throw parameter_error("pack_mixed: deltas must be non-increasing");
    const int h = static_cast<int>(deltas.size());
    std::vector<int> sigmas;
    for (int d : deltas) sigmas.push_back(detail::sigma_for(d, n, "pack_mixed"));

    long long degree_sum = 0;
    for (int d : deltas) degree_sum += d;
    long long tail_gaps = 0;
    for (std::size_t i = 1; i < deltas.size(); ++i) tail_gaps += (deltas[i] + 1) / 2;
    std::vector<std::string> violated;
    if (!(deltas.front() <= n - h))
        violated.push_back("delta_1 <= n-h fails: " + std::to_string(deltas.front()) + " > " +
                           std::to_string(n - h));
    if (!(degree_sum <= n - 1))
        violated.push_back("sum of deltas <= n-1 fails: " + std::to_string(degree_sum) + " > " +
                           std::to_string(n - 1));
    if (!(2 * tail_gaps < n - (deltas.front() - 1)))
        violated.push_back("sum of ceil(delta_i/2) for i >= 2 < (n-(delta_1-1))/2 fails: " +
                           std::to_string(tail_gaps) + " >= " +
                           std::to_string(n - deltas.front() + 1) + "/2");
    if (!violated.empty()) throw infeasible_error(std::move(violated));

    PackingLayout layout;
    layout.n = n;
    int offset = 0;
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        if (i > 0) offset += (deltas[i] + 1) / 2;
        const Caterpillar c = make_regular_caterpillar(deltas[i], sigmas[i]);
        layout.drawings.push_back(zigzag_drawing(c, offset, Side::inner));
    }

    if (!unchecked)
        detail::assert_pair_gaps(deltas, sigmas, layout.offsets(), n, false, "pack_mixed");
    detail::refuse_unless_simple(layout, unchecked, "pack_mixed");
    detail::refuse_unless_bounded(layout, bound_mixed_crossings(deltas.front(), h), unchecked,
                                  "pack_mixed");
    return layout;
}

// Packing of caterpillars whose degrees form a divisibility chain
// (delta_i - 1 is a multiple of delta_{i+1} - 1), offsets 0..h-1.
inline PackingLayout pack_divisible(const std::vector<int>& deltas, int n, bool unchecked = false) {
    if (deltas.empty()) throw parameter_error("pack_divisible: need at least one delta");
    for (std::size_t i = 1; i < deltas.size(); ++i) {
        if (deltas[i] > deltas[i - 1])
            throw parameter_error("pack_divisible: deltas must be non-increasing");
        if ((deltas[i - 1] - 1) % (deltas[i] - 1) != 0)
            throw parameter_error("pack_divisible: delta_" + std::to_string(i) +
                                  "-1 must divide delta_" + std::to_string(i - 1) + "-1");
    }
    const int h = static_cast<int>(deltas.size());
    std::vector<int> sigmas;
    for (int d : deltas) sigmas.push_back(detail::sigma_for(d, n, "pack_divisible"));

    std::vector<std::string> violated;
    if (!(deltas.front() <= n - h))
        violated.push_back("delta_1 <= n-h fails: " + std::to_string(deltas.front()) + " > " +
                           std::to_string(n - h));
    if (!(n >= 2 * h + deltas.front() - 1))
        violated.push_back("n >= 2h + delta_1 - 1 fails: " + std::to_string(n) + " < " +
                           std::to_string(2 * h + deltas.front() - 1));
    if (!violated.empty()) throw infeasible_error(std::move(violated));

    PackingLayout layout;
    layout.n = n;
    for (int i = 0; i < h; ++i) {
        const Caterpillar c =
            make_regular_caterpillar(deltas[static_cast<std::size_t>(i)], sigmas[static_cast<std::size_t>(i)]);
        layout.drawings.push_back(zigzag_drawing(c, i, Side::inner));
    }

    if (!unchecked)
        detail::assert_pair_gaps(deltas, sigmas, layout.offsets(), n, true, "pack_divisible");
    detail::refuse_unless_simple(layout, unchecked, "pack_divisible");
    return layout;
}

namespace detail {

// One candidate completion of the third copy: per gap, which of its delta-2
// points hang off the left spine vertex; for the wrap gap, which of its delta
// points hang off the last spine vertex.
struct ThirdCopyPlan {
    int left_count = 0;                  // uniform per-gap count toward the left spine vertex
    std::vector<std::uint32_t> gap_mask; // chosen point indices per inter-spine gap
    std::uint32_t wrap_mask = 0;         // chosen point indices in the wrap gap
};

inline PackingLayout assemble_three(const Caterpillar& c, int delta, int sigma, int n,
                                    const ThirdCopyPlan& plan) {
    // First copy: each spine vertex followed clockwise by its own leaves.
    ConvexDrawing d1;
    d1.n = n;
    d1.assign.assign(static_cast<std::size_t>(n), -1);
    d1.start = 0;
    d1.delta = delta;
    d1.sigma = sigma;
    {
        int p = 0;
        for (int i = 0; i < sigma; ++i) {
            d1.assign[static_cast<std::size_t>(c.spine[static_cast<std::size_t>(i)])] = p++;
            for (int leaf : c.leaves[static_cast<std::size_t>(i)])
                d1.assign[static_cast<std::size_t>(leaf)] = p++;
        }
    }
    for (const auto& [x, y] : c.edges())
        d1.edges.push_back({d1.assign[static_cast<std::size_t>(x)],
                            d1.assign[static_cast<std::size_t>(y)], Side::outer});

    ConvexDrawing d2 = rotate(d1, 1);
    for (auto& e : d2.edges) e.side = Side::inner;

    // Third copy: spine on the points just before each first-copy spine
    // vertex's block ends, leaves split between neighbouring spine vertices.
    ConvexDrawing d3;
    d3.n = n;
    d3.assign.assign(static_cast<std::size_t>(n), -1);
    d3.delta = delta;
    d3.sigma = sigma;
    std::vector<int> spine_pos(static_cast<std::size_t>(sigma));
    for (int i = 0; i + 1 < sigma; ++i) spine_pos[static_cast<std::size_t>(i)] = (i + 1) * (delta - 1);
    spine_pos[static_cast<std::size_t>(sigma - 1)] = n - 2;
    d3.start = spine_pos.front();

    std::vector<std::vector<int>> leaf_pos(static_cast<std::size_t>(sigma));
    for (int g = 0; g + 1 < sigma; ++g) {
        const int from = spine_pos[static_cast<std::size_t>(g)];
        const std::uint32_t mask = plan.gap_mask[static_cast<std::size_t>(g)];
        for (int t = 0; t < delta - 2; ++t) {
            const int point = from + 1 + t;
            const bool left = (mask >> t) & 1u;
            leaf_pos[static_cast<std::size_t>(left ? g : g + 1)].push_back(point);
        }
    }
    for (int t = 0; t < delta; ++t) {
        const int point = (n - 1 + t) % n;
        const bool last = (plan.wrap_mask >> t) & 1u;
        leaf_pos[static_cast<std::size_t>(last ? sigma - 1 : 0)].push_back(point);
    }

    for (int i = 0; i < sigma; ++i) {
        d3.assign[static_cast<std::size_t>(c.spine[static_cast<std::size_t>(i)])] =
            spine_pos[static_cast<std::size_t>(i)];
        const auto& ls = c.leaves[static_cast<std::size_t>(i)];
        const auto& ps = leaf_pos[static_cast<std::size_t>(i)];
        if (ls.size() != ps.size())
            throw structure_error("place_three_2planar: leaf count mismatch in third copy");
        for (std::size_t t = 0; t < ls.size(); ++t)
            d3.assign[static_cast<std::size_t>(ls[t])] = ps[t];
    }
    for (int i = 0; i + 1 < sigma; ++i)
        d3.edges.push_back({spine_pos[static_cast<std::size_t>(i)],
                            spine_pos[static_cast<std::size_t>(i + 1)], Side::outer});
    for (int i = 0; i < sigma; ++i)
        for (int p : leaf_pos[static_cast<std::size_t>(i)])
            d3.edges.push_back({spine_pos[static_cast<std::size_t>(i)], p, Side::inner});

    PackingLayout layout;
    layout.n = n;
    layout.drawings = {d1, d2, d3};
    return layout;
}

inline bool three_copy_certifies(const Caterpillar& c, const PackingLayout& layout) {
    if (!has_multi_edges(layout).empty()) return false;
    for (const auto& d : layout.drawings)
        if (!drawing_matches(c, d)) return false;
    return k_of(layout) <= 2;
}

inline std::uint32_t prefix_mask(int count) { return (1u << count) - 1u; }

// Next bitmask with the same popcount, numerically ascending; 0 when done.
inline std::uint32_t next_combination(std::uint32_t v, int width) {
    if (v == 0) return 0;
    const std::uint32_t t = v | (v - 1);
    const std::uint32_t w = (t + 1) | (((~t & (t + 1)) - 1) >> (__builtin_ctz(v) + 1));
    return (w >> width) ? 0 : w;
}

} // namespace detail

// Three edge-disjoint copies of the delta-regular caterpillar drawn with at
// most 2 crossings per edge: one copy outside, a shifted copy inside, and a
// third copy with its spine outside and leaves inside. For delta in [4,6] the
// leaf split is fixed (two points to the left spine vertex per gap, three
// wrap points to the last); for delta 7 a bounded lexicographic search over
// leaf splits finds the first certified completion.
inline PackingLayout place_three_2planar(int delta, int sigma, bool unchecked = false) {
    if (delta < 4 || delta > 7) throw parameter_error("place_three_2planar: delta must be in [4,7]");
    if (sigma < 2) throw parameter_error("place_three_2planar: sigma must be >= 2");
    const int n = sigma * (delta - 1) + 2;
    const Caterpillar c = make_regular_caterpillar(delta, sigma);

    auto plan_with = [&](int left_count, std::uint32_t gap, std::uint32_t wrap) {
        detail::ThirdCopyPlan plan;
        plan.left_count = left_count;
        plan.gap_mask.assign(static_cast<std::size_t>(sigma - 1), gap);
        plan.wrap_mask = wrap;
        return plan;
    };

    if (delta <= 6) {
        const auto layout =
            detail::assemble_three(c, delta, sigma, n, plan_with(2, detail::prefix_mask(2), detail::prefix_mask(3)));
        if (!unchecked && !detail::three_copy_certifies(c, layout))
            throw verification_error("place_three_2planar: fixed split failed certification");
        return layout;
    }

    // delta == 7: uniform prefix splits first, then full per-gap combinations
    // in ascending mask order under a node budget.
    if (unchecked)
        return detail::assemble_three(c, delta, sigma, n,
                                      plan_with(2, detail::prefix_mask(2), detail::prefix_mask(3)));
    for (int x = 0; x <= delta - 2; ++x) {
        const auto layout = detail::assemble_three(
            c, delta, sigma, n, plan_with(x, detail::prefix_mask(x), detail::prefix_mask(x + 1)));
        if (detail::three_copy_certifies(c, layout)) return layout;
    }

    long long budget = 200000;
    for (int x = 0; x <= delta - 2 && budget > 0; ++x) {
        std::vector<std::uint32_t> gaps(static_cast<std::size_t>(sigma - 1), detail::prefix_mask(x));
        while (budget > 0) {
            for (std::uint32_t wrap = detail::prefix_mask(x + 1); wrap != 0 && budget > 0;
                 wrap = detail::next_combination(wrap, delta)) {
                --budget;
                detail::ThirdCopyPlan plan;
                plan.left_count = x;
                plan.gap_mask = gaps;
                plan.wrap_mask = wrap;
                const auto layout = detail::assemble_three(c, delta, sigma, n, plan);
                if (detail::three_copy_certifies(c, layout)) return layout;
            }
            // Advance the per-gap masks like an odometer, last gap fastest.
            int g = sigma - 2;
            while (g >= 0) {
                const auto next = detail::next_combination(gaps[static_cast<std::size_t>(g)], delta - 2);
                if (next != 0) {
                    gaps[static_cast<std::size_t>(g)] = next;
                    for (int t = g + 1; t <= sigma - 2; ++t)
                        gaps[static_cast<std::size_t>(t)] = detail::prefix_mask(x);
                    break;
                }
                --g;
            }
            if (g < 0) break;
        }
    }
    if (budget > 0)
        throw construction_error("place_three_2planar: no certified leaf split exists for delta 7 here",
                                 false);
    throw construction_error("place_three_2planar: search budget exhausted without certification", true);
}

// Re-route the first ceil(h/2) drawings inside and the rest outside; an
// index split of that shape minimizes same-side pairs, and per-edge crossing
// counts can only fall when sides separate.
inline PackingLayout halve_by_sides(const PackingLayout& layout) {
    if (layout.drawings.empty()) throw parameter_error("halve_by_sides: empty layout");
    Side first = layout.drawings.front().edges.empty() ? Side::inner
                                                       : layout.drawings.front().edges.front().side;
    for (const auto& d : layout.drawings)
        for (const auto& e : d.edges)
            if (e.side != first)
                throw parameter_error("halve_by_sides: layout must start with all drawings on one side");
    PackingLayout out = layout;
    const int cut = (out.h() + 1) / 2;
    for (int i = 0; i < out.h(); ++i) {
        const Side s = (i < cut) ? Side::inner : Side::outer;
        for (auto& e : out.drawings[static_cast<std::size_t>(i)].edges) e.side = s;
    }
    return out;
}

} // namespace caterpack
