#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <thread>
#include <utility>
#include <vector>

#include "caterpack/errors.hpp"
#include "caterpack/layout.hpp"
#include "caterpack/rational.hpp"

namespace caterpack {

// Whether x lies strictly inside the clockwise arc from a to b.
inline bool strictly_between_cw(int n, int a, int b, int x) {
    const int span = ((b - a) % n + n) % n;
    const int off = ((x - a) % n + n) % n;
    return off > 0 && off < span;
}

// Two chords on the circle cross iff they share no endpoint and their
// endpoint pairs interleave in circular order. Edges on opposite sides of
// the circle never cross.
inline bool edges_cross(int n, const DrawnEdge& e, const DrawnEdge& f) {
    if (e.side != f.side) return false;
    if (e.a == f.a || e.a == f.b || e.b == f.a || e.b == f.b) return false;
    return strictly_between_cw(n, e.a, e.b, f.a) != strictly_between_cw(n, e.a, e.b, f.b);
}

inline std::vector<DrawnEdge> all_edges(const PackingLayout& layout) {
    std::vector<DrawnEdge> es;
    for (const auto& d : layout.drawings) {
        if (d.n != layout.n) throw structure_error("layout: drawing position count mismatch");
        for (const auto& e : d.edges) {
            if (e.a < 0 || e.a >= layout.n || e.b < 0 || e.b >= layout.n || e.a == e.b)
                throw structure_error("layout: edge endpoint out of range");
            es.push_back(e);
        }
    }
    return es;
}

// Position pairs covered by two or more edges, sides ignored; sorted, unique.
inline std::vector<std::pair<int, int>> has_multi_edges(const PackingLayout& layout) {
    std::vector<std::pair<int, int>> pairs;
    for (const auto& e : all_edges(layout))
        pairs.emplace_back(std::min(e.a, e.b), std::max(e.a, e.b));
    std::sort(pairs.begin(), pairs.end());
    std::vector<std::pair<int, int>> dup;
    for (std::size_t i = 1; i < pairs.size(); ++i)
        if (pairs[i] == pairs[i - 1] && (dup.empty() || dup.back() != pairs[i]))
            dup.push_back(pairs[i]);
    return dup;
}

struct EdgeCrossings {
    int a = 0;
    int b = 0;
    int count = 0;
};

struct CrossingReport {
    int k = 0;
    std::vector<std::pair<int, int>> multi_edges;
    std::vector<EdgeCrossings> per_edge; // sorted by position pair
    std::vector<int> degrees;

    long long total_crossings() const {
        long long s = 0;
        for (const auto& e : per_edge) s += e.count;
        return s / 2;
    }
};

enum class CountMethod { pairwise, sweep };

inline int worker_count() {
    if (const char* s = std::getenv("CATERPACK_THREADS")) {
        const int v = std::atoi(s);
        if (v >= 1) return std::min(v, 64);
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(std::min(hc, 8u)) : 1;
}

namespace detail {

inline std::vector<int> count_pairwise(int n, const std::vector<DrawnEdge>& es) {
    const int m = static_cast<int>(es.size());
    std::vector<int> cnt(static_cast<std::size_t>(m), 0);
    const int workers = (m >= 512) ? worker_count() : 1;
    if (workers <= 1) {
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j)
                if (edges_cross(n, es[static_cast<std::size_t>(i)], es[static_cast<std::size_t>(j)])) {
                    ++cnt[static_cast<std::size_t>(i)];
                    ++cnt[static_cast<std::size_t>(j)];
                }
        return cnt;
    }
    // Pairs are partitioned by their first index; per-worker tallies merge by
    // addition, so the result does not depend on scheduling.
    std::vector<std::vector<int>> local(static_cast<std::size_t>(workers),
                                        std::vector<int>(static_cast<std::size_t>(m), 0));
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            auto& mine = local[static_cast<std::size_t>(w)];
            for (int i = w; i < m; i += workers)
                for (int j = i + 1; j < m; ++j)
                    if (edges_cross(n, es[static_cast<std::size_t>(i)], es[static_cast<std::size_t>(j)])) {
                        ++mine[static_cast<std::size_t>(i)];
                        ++mine[static_cast<std::size_t>(j)];
                    }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& mine : local)
        for (int i = 0; i < m; ++i) cnt[static_cast<std::size_t>(i)] += mine[static_cast<std::size_t>(i)];
    return cnt;
}

// Fenwick tree over positions, for the sweep counter.
class Fenwick {
public:
    explicit Fenwick(int n) : tree_(static_cast<std::size_t>(n + 1), 0) {}
    void add(int i) {
        for (++i; i < static_cast<int>(tree_.size()); i += i & -i) ++tree_[static_cast<std::size_t>(i)];
    }
    int prefix(int i) const { // count of inserted values <= i
        int s = 0;
        for (++i; i > 0; i -= i & -i) s += tree_[static_cast<std::size_t>(i)];
        return s;
    }

private:
    std::vector<int> tree_;
};

// Per-edge crossing counts for one side in O(m log n): for chord (a,b) with
// a < b, crossings = (degree mass strictly inside (a,b))
//                  - 2 * (edges nested strictly inside (a,b))
//                  - (edges sharing an endpoint whose other end is inside).
inline void count_sweep_side(int n, const std::vector<DrawnEdge>& es, const std::vector<int>& idx,
                             std::vector<int>& cnt) {
    const int m = static_cast<int>(idx.size());
    if (m == 0) return;
    std::vector<std::pair<int, int>> span(static_cast<std::size_t>(m));
    std::vector<int> deg(static_cast<std::size_t>(n), 0);
    std::vector<std::vector<int>> at(static_cast<std::size_t>(n)); // other endpoints per position
    for (int t = 0; t < m; ++t) {
        const auto& e = es[static_cast<std::size_t>(idx[static_cast<std::size_t>(t)])];
        span[static_cast<std::size_t>(t)] = {std::min(e.a, e.b), std::max(e.a, e.b)};
        ++deg[static_cast<std::size_t>(e.a)];
        ++deg[static_cast<std::size_t>(e.b)];
        at[static_cast<std::size_t>(e.a)].push_back(e.b);
        at[static_cast<std::size_t>(e.b)].push_back(e.a);
    }
    std::vector<long long> degpref(static_cast<std::size_t>(n + 1), 0);
    for (int p = 0; p < n; ++p)
        degpref[static_cast<std::size_t>(p + 1)] = degpref[static_cast<std::size_t>(p)] + deg[static_cast<std::size_t>(p)];

    // Nested-edge counts: process spans by left endpoint descending, counting
    // previously inserted right endpoints below the current right endpoint.
    std::vector<int> order(static_cast<std::size_t>(m));
    for (int t = 0; t < m; ++t) order[static_cast<std::size_t>(t)] = t;
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        return span[static_cast<std::size_t>(x)].first > span[static_cast<std::size_t>(y)].first;
    });
    std::vector<int> nested(static_cast<std::size_t>(m), 0);
    Fenwick fw(n);
    std::size_t done = 0;
    while (done < order.size()) {
        std::size_t same = done;
        const int left = span[static_cast<std::size_t>(order[done])].first;
        while (same < order.size() && span[static_cast<std::size_t>(order[same])].first == left) ++same;
        for (std::size_t t = done; t < same; ++t)
            nested[static_cast<std::size_t>(order[t])] =
                fw.prefix(span[static_cast<std::size_t>(order[t])].second - 1);
        for (std::size_t t = done; t < same; ++t) fw.add(span[static_cast<std::size_t>(order[t])].second);
        done = same;
    }

    for (int t = 0; t < m; ++t) {
        const auto [a, b] = span[static_cast<std::size_t>(t)];
        long long inside = degpref[static_cast<std::size_t>(b)] - degpref[static_cast<std::size_t>(a + 1)];
        inside -= 2LL * nested[static_cast<std::size_t>(t)];
        for (int x : at[static_cast<std::size_t>(a)])
            if (x > a && x < b) --inside;
        for (int x : at[static_cast<std::size_t>(b)])
            if (x > a && x < b) --inside;
        cnt[static_cast<std::size_t>(idx[static_cast<std::size_t>(t)])] = static_cast<int>(inside);
    }
}

} // namespace detail

// Per-edge crossing counts for a multi-edge-free layout. The pairwise method
// tests every edge pair; the sweep method computes the same counts via prefix
// sums and nested-interval counting.
inline CrossingReport crossing_counts(const PackingLayout& layout,
                                      CountMethod method = CountMethod::pairwise) {
    const auto dup = has_multi_edges(layout);
    if (!dup.empty()) {
        std::string msg = "crossing_counts: layout has multiple edges:";
        for (const auto& [a, b] : dup)
            msg += " (" + std::to_string(a) + "," + std::to_string(b) + ")";
        throw verification_error(msg);
    }
    const auto es = all_edges(layout);
    const int m = static_cast<int>(es.size());

    std::vector<int> cnt;
    if (method == CountMethod::pairwise) {
        cnt = detail::count_pairwise(layout.n, es);
    } else {
        cnt.assign(static_cast<std::size_t>(m), 0);
        std::vector<int> inner_idx, outer_idx;
        for (int i = 0; i < m; ++i)
            (es[static_cast<std::size_t>(i)].side == Side::inner ? inner_idx : outer_idx).push_back(i);
        detail::count_sweep_side(layout.n, es, inner_idx, cnt);
        detail::count_sweep_side(layout.n, es, outer_idx, cnt);
    }

    CrossingReport rep;
    rep.degrees.assign(static_cast<std::size_t>(layout.n), 0);
    for (const auto& e : es) {
        ++rep.degrees[static_cast<std::size_t>(e.a)];
        ++rep.degrees[static_cast<std::size_t>(e.b)];
    }
    rep.per_edge.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        const auto& e = es[static_cast<std::size_t>(i)];
        rep.per_edge.push_back({std::min(e.a, e.b), std::max(e.a, e.b), cnt[static_cast<std::size_t>(i)]});
    }
    std::sort(rep.per_edge.begin(), rep.per_edge.end(), [](const EdgeCrossings& x, const EdgeCrossings& y) {
        return std::pair(x.a, x.b) < std::pair(y.a, y.b);
    });
    for (const auto& e : rep.per_edge) rep.k = std::max(rep.k, e.count);
    return rep;
}

inline int k_of(const PackingLayout& layout, CountMethod method = CountMethod::pairwise) {
    return crossing_counts(layout, method).k;
}

// A spanning tree drawing touches every position with exactly n-1 edges.
inline bool drawing_spans(const ConvexDrawing& d) {
    if (static_cast<int>(d.edges.size()) != d.n - 1) return false;
    std::vector<char> hit(static_cast<std::size_t>(d.n), 0);
    for (const auto& e : d.edges) {
        hit[static_cast<std::size_t>(e.a)] = 1;
        hit[static_cast<std::size_t>(e.b)] = 1;
    }
    for (char h : hit)
        if (!h) return false;
    return true;
}

struct HostSummary {
    std::vector<int> degrees;
    bool simple = true;
    int max_degree = 0;
};

// Degree table of the union graph plus a simplicity flag.
inline HostSummary host_graph(const PackingLayout& layout) {
    HostSummary s;
    s.degrees.assign(static_cast<std::size_t>(layout.n), 0);
    for (const auto& e : all_edges(layout)) {
        ++s.degrees[static_cast<std::size_t>(e.a)];
        ++s.degrees[static_cast<std::size_t>(e.b)];
    }
    s.simple = has_multi_edges(layout).empty();
    for (int d : s.degrees) s.max_degree = std::max(s.max_degree, d);
    return s;
}

// Structural check of a zig-zag drawing: every spine vertex in the upper part
// sits at start + c*(delta-1), every one in the lower part at end + d*(delta-1),
// and across each spine edge c+d is ceil(sigma/2)-1 or ceil(sigma/2).
inline bool spine_index_check(const ConvexDrawing& d) {
    const int n = d.n;
    int delta, sigma;
    try {
        delta = inferred_delta(d);
        sigma = inferred_sigma(d);
    } catch (const structure_error&) {
        return false;
    }
    const int half = half_width(n, delta, sigma);
    const int r = (d.start + half) % n;
    const auto deg = drawing_degrees(d);

    std::vector<int> cidx(static_cast<std::size_t>(n), -1);
    std::vector<char> upper(static_cast<std::size_t>(n), 0);
    int spine_count = 0;
    for (int p = 0; p < n; ++p) {
        if (deg[static_cast<std::size_t>(p)] < 2) continue;
        ++spine_count;
        const int rel = ((p - d.start) % n + n) % n;
        if (rel < half) {
            if (delta > 2 && rel % (delta - 1) != 0) return false;
            upper[static_cast<std::size_t>(p)] = 1;
            cidx[static_cast<std::size_t>(p)] = rel / (delta - 1);
        } else {
            const int relr = ((p - r) % n + n) % n;
            if (delta > 2 && relr % (delta - 1) != 0) return false;
            cidx[static_cast<std::size_t>(p)] = relr / (delta - 1);
        }
    }
    if (spine_count != sigma) return false;

    const int hi = (sigma + 1) / 2;
    for (const auto& e : d.edges) {
        if (deg[static_cast<std::size_t>(e.a)] < 2 || deg[static_cast<std::size_t>(e.b)] < 2) continue;
        if (upper[static_cast<std::size_t>(e.a)] == upper[static_cast<std::size_t>(e.b)]) return false;
        const int sum = cidx[static_cast<std::size_t>(e.a)] + cidx[static_cast<std::size_t>(e.b)];
        if (sum != hi - 1 && sum != hi) return false;
    }
    return true;
}

// Per-edge crossing bound for two zig-zag drawings with degrees d1, d2 at
// offset gap dj.
inline int bound_pair_crossings(int d1, int d2, int dj) {
    if (d1 < 2 || d2 < 2) throw parameter_error("bound_pair_crossings: degrees must be >= 2");
    if (dj < 1) throw parameter_error("bound_pair_crossings: offset gap must be >= 1");
    return 2 * (d1 + d2) + 4 * dj;
}

// Per-edge crossing bound for h unit-offset copies of a delta-regular
// caterpillar drawing.
inline int bound_placement_crossings(int delta, int h) {
    if (delta < 2) throw parameter_error("bound_placement_crossings: delta must be >= 2");
    if (h < 1) throw parameter_error("bound_placement_crossings: h must be >= 1");
    return (4 * delta - 2) * h + 2 * h * h - 4 * delta;
}

// Per-edge crossing bound for the mixed-degree packing with largest degree
// delta1.
inline int bound_mixed_crossings(int delta1, int h) {
    if (delta1 < 2) throw parameter_error("bound_mixed_crossings: delta1 must be >= 2");
    if (h < 1) throw parameter_error("bound_mixed_crossings: h must be >= 1");
    return (delta1 + 2) * h * h + 4 * delta1 * (h - 1);
}

// Any h-packing of n-vertex graphs with m edges each needs k >= h^2 m^2 / (14.6 n^2).
inline Rational lower_bound_k(int n, int m, int h) {
    if (n < 1 || m < 0 || h < 1) throw parameter_error("lower_bound_k: bad parameters");
    const std::int64_t hh = h, mm = m, nn = n;
    return Rational(10 * hh * hh * mm * mm, 146 * nn * nn);
}

// Specialization to spanning trees (m = n-1): k >= h^2 / 58.4 for n >= 2.
inline Rational lower_bound_k_trees(int h) {
    if (h < 1) throw parameter_error("lower_bound_k_trees: h must be >= 1");
    const std::int64_t hh = h;
    return Rational(10 * hh * hh, 584);
}

// Sharper lower bounds from the center caterpillar family.
inline int small_h_lower_bound(int h) {
    switch (h) {
    case 3: return 2;
    case 4: return 3;
    case 5: return 5;
    default: throw parameter_error("small_h_lower_bound: h must be in [3,5]");
    }
}

struct BoundSheet {
    int pair_bound = 0;
    int placement_bound = 0;
    int mixed_bound = 0;
    Rational lower_general;
    Rational lower_trees;
    // The placement and mixed formulas give visibly different values on
    // delta in [4,7] at h = 3 (44..68 versus 86..137); surfaced so nobody
    // mistakes one figure for the other.
    bool divergence_note = false;
};

// Evaluated bounds for packing drawings with the given degrees at the given
// offsets on n positions. Degrees must be non-increasing, offsets strictly
// increasing, same length.
inline BoundSheet make_bound_sheet(int n, const std::vector<int>& deltas, const std::vector<int>& offsets) {
    if (deltas.empty() || deltas.size() != offsets.size())
        throw parameter_error("make_bound_sheet: need matching non-empty deltas and offsets");
    for (std::size_t i = 1; i < deltas.size(); ++i) {
        if (deltas[i] > deltas[i - 1]) throw parameter_error("make_bound_sheet: deltas must be non-increasing");
        if (offsets[i] <= offsets[i - 1])
            throw parameter_error("make_bound_sheet: offsets must be strictly increasing");
    }
    const int h = static_cast<int>(deltas.size());
    BoundSheet s;
    for (std::size_t i = 0; i < deltas.size(); ++i)
        for (std::size_t j = i + 1; j < deltas.size(); ++j)
            s.pair_bound = std::max(
                s.pair_bound, bound_pair_crossings(deltas[i], deltas[j], offsets[j] - offsets[i]));
    s.placement_bound = bound_placement_crossings(deltas.front(), h);
    s.mixed_bound = bound_mixed_crossings(deltas.front(), h);
    s.lower_general = lower_bound_k(n, n - 1, h);
    s.lower_trees = lower_bound_k_trees(h);
    s.divergence_note = (h == 3 && deltas.front() >= 4 && deltas.front() <= 7);
    return s;
}

} // namespace caterpack
