#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "caterpack/caterpillar.hpp"
#include "caterpack/errors.hpp"
#include "caterpack/layout.hpp"
#include "caterpack/verify.hpp"

namespace caterpack {

struct SearchInstance {
    std::vector<Caterpillar> caterpillars; // all on the same vertex count
    long long node_budget = -1;            // < 0 means unbounded
    bool count_solutions = false;
};

enum class OracleStatus { exists, impossible, budget_exhausted };

struct OracleResult {
    OracleStatus status = OracleStatus::impossible;
    std::vector<std::vector<int>> certificate; // vertex -> slot, per caterpillar
    long long solutions = 0;
    long long nodes = 0;
};

namespace detail {

struct BruteState {
    int n = 0;
    std::vector<std::vector<int>> order;  // DFS vertex order per caterpillar, parents first
    std::vector<std::vector<int>> parent; // parent vertex in that order, -1 for the root
    std::vector<char> same_as_prev;       // caterpillar i is structurally identical to i-1
    std::vector<std::vector<int>> slot_of;
    std::vector<std::vector<char>> taken; // slots already used within each copy
    std::vector<char> edge_used;
    long long budget = -1;
    bool count_all = false;
    long long nodes = 0;
    long long solutions = 0;
    bool exhausted = false;
    std::vector<std::vector<int>> first_solution;

    char& edge(int a, int b) {
        return edge_used[static_cast<std::size_t>(std::min(a, b) * n + std::max(a, b))];
    }
};

inline bool brute_dfs(BruteState& st, std::size_t ci, std::size_t oi, bool tied_to_prev) {
    if (ci == st.order.size()) {
        ++st.solutions;
        if (st.first_solution.empty()) st.first_solution = st.slot_of;
        return !st.count_all; // stop at the first solution unless counting
    }
    const auto& ord = st.order[ci];
    if (oi == ord.size()) return brute_dfs(st, ci + 1, 0, true);

    const int v = ord[oi];
    const int par = st.parent[ci][oi];
    const int par_slot = par < 0 ? -1 : st.slot_of[ci][static_cast<std::size_t>(par)];

    // Copies 2..h of one structure are interchangeable, so their mappings may
    // be demanded in non-decreasing lexicographic order over the DFS vertex
    // sequence. The fixed first copy stays out of this ordering: identity is
    // not the lexicographic minimum in general.
    int lo = 0;
    const bool lex = ci >= 2 && st.same_as_prev[ci];
    if (lex && tied_to_prev) lo = st.slot_of[ci - 1][static_cast<std::size_t>(v)];

    for (int s = lo; s < st.n; ++s) {
        if (st.taken[ci][static_cast<std::size_t>(s)]) continue;
        if (par_slot >= 0 && st.edge(par_slot, s)) continue;
        if (st.budget >= 0 && st.nodes >= st.budget) {
            st.exhausted = true;
            return true;
        }
        ++st.nodes;
        st.slot_of[ci][static_cast<std::size_t>(v)] = s;
        st.taken[ci][static_cast<std::size_t>(s)] = 1;
        if (par_slot >= 0) st.edge(par_slot, s) = 1;
        const bool still_tied =
            lex && tied_to_prev && s == st.slot_of[ci - 1][static_cast<std::size_t>(v)];
        if (brute_dfs(st, ci, oi + 1, still_tied)) return true;
        st.slot_of[ci][static_cast<std::size_t>(v)] = -1;
        st.taken[ci][static_cast<std::size_t>(s)] = 0;
        if (par_slot >= 0) st.edge(par_slot, s) = 0;
    }
    return false;
}

} // namespace detail

// Exhaustive search for an edge-disjoint placement of the given caterpillars
// into a simple host on their common vertex count. The first caterpillar's
// mapping is fixed to the identity, which is sound because any packing can be
// relabeled through that copy's inverse. Verdict `impossible` is only issued
// on full exhaustion; running out of budget is reported as its own status.
inline OracleResult brute_force_placement_exists(const SearchInstance& inst) {
    if (inst.caterpillars.empty())
        throw parameter_error("brute_force_placement_exists: need at least one caterpillar");
    const int n = inst.caterpillars.front().n;
    for (const auto& c : inst.caterpillars) {
        validate_caterpillar(c);
        if (c.n != n)
            throw parameter_error("brute_force_placement_exists: caterpillars disagree on vertex count");
    }

    detail::BruteState st;
    st.n = n;
    st.budget = inst.node_budget;
    st.count_all = inst.count_solutions;
    st.edge_used.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
    for (const auto& c : inst.caterpillars) {
        std::vector<int> ord, par;
        for (int i = 0; i < c.sigma(); ++i) {
            ord.push_back(c.spine[static_cast<std::size_t>(i)]);
            par.push_back(i == 0 ? -1 : c.spine[static_cast<std::size_t>(i - 1)]);
            for (int leaf : c.leaves[static_cast<std::size_t>(i)]) {
                ord.push_back(leaf);
                par.push_back(c.spine[static_cast<std::size_t>(i)]);
            }
        }
        st.order.push_back(std::move(ord));
        st.parent.push_back(std::move(par));
        st.slot_of.emplace_back(static_cast<std::size_t>(n), -1);
        st.taken.emplace_back(static_cast<std::size_t>(n), 0);
    }
    st.same_as_prev.assign(inst.caterpillars.size(), 0);
    for (std::size_t i = 1; i < inst.caterpillars.size(); ++i) {
        const auto& a = inst.caterpillars[i - 1];
        const auto& b = inst.caterpillars[i];
        st.same_as_prev[i] = (a.spine == b.spine && a.leaves == b.leaves) ? 1 : 0;
    }

    // Fix the first caterpillar to the identity mapping.
    for (int v = 0; v < n; ++v) {
        st.slot_of[0][static_cast<std::size_t>(v)] = v;
        st.taken[0][static_cast<std::size_t>(v)] = 1;
    }
    for (const auto& [x, y] : inst.caterpillars.front().edges()) st.edge(x, y) = 1;

    detail::brute_dfs(st, 1, 0, true);

    OracleResult res;
    res.nodes = st.nodes;
    res.solutions = st.solutions;
    res.certificate = st.first_solution;
    if (st.exhausted)
        res.status = OracleStatus::budget_exhausted; // the search did not finish
    else if (st.solutions > 0)
        res.status = OracleStatus::exists;
    else
        res.status = OracleStatus::impossible;
    return res;
}

namespace detail {

struct Pt {
    double x = 0;
    double y = 0;
};

// Normalized orientation of r against segment pq: the sine of the turn angle.
// Magnitudes below tol are treated as degenerate.
inline double orient_sine(const Pt& p, const Pt& q, const Pt& r) {
    const double ux = q.x - p.x, uy = q.y - p.y;
    const double vx = r.x - p.x, vy = r.y - p.y;
    const double lu = std::hypot(ux, uy);
    const double lv = std::hypot(vx, vy);
    if (lu == 0.0 || lv == 0.0) return 0.0;
    return (ux * vy - uy * vx) / (lu * lv);
}

inline bool segments_cross(const Pt& a, const Pt& b, const Pt& c, const Pt& d, double tol) {
    const double o1 = orient_sine(a, b, c);
    const double o2 = orient_sine(a, b, d);
    const double o3 = orient_sine(c, d, a);
    const double o4 = orient_sine(c, d, b);
    const bool candidate = (o1 > 0) != (o2 > 0) && (o3 > 0) != (o4 > 0);
    if (std::abs(o1) < tol || std::abs(o2) < tol || std::abs(o3) < tol || std::abs(o4) < tol) {
        // Only fatal when the segments are close enough for the answer to matter.
        const double lo_x = std::max(std::min(a.x, b.x), std::min(c.x, d.x));
        const double hi_x = std::min(std::max(a.x, b.x), std::max(c.x, d.x));
        const double lo_y = std::max(std::min(a.y, b.y), std::min(c.y, d.y));
        const double hi_y = std::min(std::max(a.y, b.y), std::max(c.y, d.y));
        if (lo_x <= hi_x + tol && lo_y <= hi_y + tol)
            throw geometry_error("geometric_crossing_oracle: degenerate segment configuration");
        return false;
    }
    return candidate;
}

struct Polyline {
    std::vector<Pt> pts;
    double min_x = 0, max_x = 0, min_y = 0, max_y = 0;

    void finish() {
        min_x = min_y = 1e300;
        max_x = max_y = -1e300;
        for (const auto& p : pts) {
            min_x = std::min(min_x, p.x);
            max_x = std::max(max_x, p.x);
            min_y = std::min(min_y, p.y);
            max_y = std::max(max_y, p.y);
        }
    }

    bool box_disjoint(const Polyline& o) const {
        return max_x < o.min_x || o.max_x < min_x || max_y < o.min_y || o.max_y < min_y;
    }
};

inline int polyline_crossings(const Polyline& p, const Polyline& q, double tol) {
    if (p.box_disjoint(q)) return 0;
    int hits = 0;
    for (std::size_t i = 0; i + 1 < p.pts.size(); ++i)
        for (std::size_t j = 0; j + 1 < q.pts.size(); ++j)
            if (segments_cross(p.pts[i], p.pts[i + 1], q.pts[j], q.pts[j + 1], tol)) ++hits;
    return hits;
}

} // namespace detail

// Independent crossing count from explicit geometry: position i sits at angle
// -2*pi*i/n on the unit circle, inner edges are straight chords, outer edges
// are tent-shaped polylines over their shorter arc, rising outward with a
// common slope so that nested arcs stay nested and interleaving arcs meet
// exactly once. Inner and outer curves only share circle points, so only
// same-side pairs are intersected; pairs sharing an endpoint are non-crossing
// by convention and are skipped.
inline CrossingReport geometric_crossing_oracle(const PackingLayout& layout) {
    const auto dup = has_multi_edges(layout);
    if (!dup.empty())
        throw verification_error("geometric_crossing_oracle: layout has multiple edges");
    const int n = layout.n;
    if (n < 3) throw parameter_error("geometric_crossing_oracle: need at least 3 positions");
    const auto es = all_edges(layout);
    const int m = static_cast<int>(es.size());
    const double tol = 1e-9;
    const double two_pi = 8.0 * std::atan(1.0);

    auto point_at = [&](double pos, double radius) {
        const double th = -two_pi * pos / n;
        return detail::Pt{radius * std::cos(th), radius * std::sin(th)};
    };

    const double slope = 0.35; // tent rise per radian of arc
    // Sample spacing near half the position spacing, kept incommensurate with
    // the grid so tent crossings never land exactly on shared sample vertices.
    const double step = std::min(0.0979, two_pi / (2.0 * n + 0.6180339887));

    std::vector<detail::Polyline> curves(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        const auto& e = es[static_cast<std::size_t>(i)];
        auto& c = curves[static_cast<std::size_t>(i)];
        if (e.side == Side::inner) {
            c.pts = {point_at(e.a, 1.0), point_at(e.b, 1.0)};
        } else {
            const int cw = ((e.b - e.a) % n + n) % n;
            int from = e.a, gap = cw;
            if (cw > n - cw || (2 * cw == n && e.b < e.a)) {
                from = e.b;
                gap = n - cw;
            }
            const double arc = two_pi * gap / n;
            std::vector<double> ss;
            for (double s = 0.0; s < arc; s += step) ss.push_back(s);
            ss.push_back(arc / 2.0);
            ss.push_back(arc);
            std::sort(ss.begin(), ss.end());
            ss.erase(std::unique(ss.begin(), ss.end()), ss.end());
            for (double s : ss) {
                const double r = 1.0 + slope * std::min(s, arc - s);
                const double pos = from + s * n / two_pi;
                c.pts.push_back(point_at(pos, r));
            }
        }
        c.finish();
    }

    std::vector<int> cnt(static_cast<std::size_t>(m), 0);
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            const auto& e = es[static_cast<std::size_t>(i)];
            const auto& f = es[static_cast<std::size_t>(j)];
            if (e.side != f.side) continue;
            if (e.a == f.a || e.a == f.b || e.b == f.a || e.b == f.b) continue;
            const int hits = detail::polyline_crossings(curves[static_cast<std::size_t>(i)],
                                                        curves[static_cast<std::size_t>(j)], tol);
            cnt[static_cast<std::size_t>(i)] += hits;
            cnt[static_cast<std::size_t>(j)] += hits;
        }
    }

    CrossingReport rep;
    rep.degrees.assign(static_cast<std::size_t>(n), 0);
    for (const auto& e : es) {
        ++rep.degrees[static_cast<std::size_t>(e.a)];
        ++rep.degrees[static_cast<std::size_t>(e.b)];
    }
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

struct OffsetSearchResult {
    std::vector<int> offsets;
    int k = 0;
};

// Exhaustive minimum of k over offset schedules 0 = j_1 < ... < j_h whose
// pairwise gaps all stay inside the no-multi-edge rotation window. The first
// offset is pinned to 0 since rotating a whole schedule never changes k.
inline OffsetSearchResult min_k_over_offsets(int delta, int sigma, int h) {
    if (h < 1) throw parameter_error("min_k_over_offsets: h must be >= 1");
    const int n = sigma * (delta - 1) + 2;
    if (n > 24 || h > 5)
        throw parameter_error("min_k_over_offsets: exhaustive search limited to n <= 24, h <= 5");
    const Caterpillar c = make_regular_caterpillar(delta, sigma);
    const ConvexDrawing base = zigzag_drawing(c, 0, Side::inner);
    const int half = half_width(n, delta, sigma);

    OffsetSearchResult best;
    best.k = -1;
    std::vector<int> js(static_cast<std::size_t>(h), 0);

    auto evaluate = [&]() {
        PackingLayout layout;
        layout.n = n;
        for (int i = 0; i < h; ++i)
            layout.drawings.push_back(rotate(base, js[static_cast<std::size_t>(i)]));
        if (!has_multi_edges(layout).empty()) return; // outside the lemma's guarantee
        const int k = k_of(layout);
        if (best.k < 0 || k < best.k) {
            best.k = k;
            best.offsets = js;
        }
    };

    // Ascending lexicographic enumeration keeps the first minimizer on ties.
    auto rec = [&](auto&& self, int i) -> void {
        if (i == h) {
            evaluate();
            return;
        }
        for (int j = js[static_cast<std::size_t>(i - 1)] + 1; j < half; ++j) {
            js[static_cast<std::size_t>(i)] = j;
            self(self, i + 1);
        }
    };
    if (h == 1)
        evaluate();
    else
        rec(rec, 1);

    if (best.k < 0)
        throw infeasible_error({"no offset schedule fits the rotation window 0 < gap < " +
                                std::to_string(half)});
    return best;
}

} // namespace caterpack
