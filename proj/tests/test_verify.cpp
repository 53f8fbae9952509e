#include <cstdlib>
#include <random>
#include <set>

#include <catch2/catch_amalgamated.hpp>

#include "caterpack/caterpillar.hpp"
#include "caterpack/layout.hpp"
#include "caterpack/verify.hpp"

using namespace caterpack;

namespace {

PackingLayout single(int n, std::vector<DrawnEdge> edges) {
    PackingLayout layout;
    layout.n = n;
    ConvexDrawing d;
    d.n = n;
    d.edges = std::move(edges);
    layout.drawings = {d};
    return layout;
}

PackingLayout random_layout(std::mt19937& rng, int max_n) {
    std::uniform_int_distribution<int> nd(4, max_n);
    const int n = nd(rng);
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
    std::shuffle(pairs.begin(), pairs.end(), rng);
    std::uniform_int_distribution<std::size_t> md(1, pairs.size());
    const std::size_t m = md(rng);
    std::vector<DrawnEdge> edges;
    std::uniform_int_distribution<int> sd(0, 1);
    for (std::size_t i = 0; i < m; ++i)
        edges.push_back({pairs[i].first, pairs[i].second, sd(rng) ? Side::inner : Side::outer});
    return single(n, std::move(edges));
}

} // namespace

TEST_CASE("interleaving chords cross, nested and disjoint ones do not") {
    const DrawnEdge a{0, 2, Side::inner};
    const DrawnEdge b{1, 3, Side::inner};
    CHECK(edges_cross(6, a, b));
    CHECK(edges_cross(6, b, a));
    SECTION("opposite sides never cross") {
        const DrawnEdge outer{1, 3, Side::outer};
        CHECK_FALSE(edges_cross(6, a, outer));
    }
    SECTION("shared endpoints never cross") {
        CHECK_FALSE(edges_cross(6, a, {2, 4, Side::inner}));
        CHECK_FALSE(edges_cross(6, a, {0, 3, Side::inner}));
    }
    SECTION("nested and disjoint pairs") {
        CHECK_FALSE(edges_cross(8, {0, 4, Side::inner}, {1, 3, Side::inner}));
        CHECK_FALSE(edges_cross(8, {0, 2, Side::inner}, {4, 6, Side::inner}));
        CHECK(edges_cross(8, {0, 4, Side::outer}, {3, 6, Side::outer}));
    }
}

TEST_CASE("crossing report on a hand-checked square") {
    const auto layout = single(4, {{0, 2, Side::inner}, {1, 3, Side::inner}});
    const CrossingReport rep = crossing_counts(layout);
    CHECK(rep.k == 1);
    CHECK(rep.total_crossings() == 1);
    CHECK(rep.per_edge.size() == 2);
    CHECK(rep.per_edge[0].count == 1);
    CHECK(rep.per_edge[1].count == 1);
    const auto flat = crossing_counts(single(4, {{0, 2, Side::inner}, {1, 3, Side::outer}}));
    CHECK(flat.k == 0);
}

TEST_CASE("multi-edge detection") {
    SECTION("within one drawing, side-blind") {
        const auto layout = single(5, {{0, 3, Side::inner}, {3, 0, Side::outer}});
        CHECK(has_multi_edges(layout) == std::vector<std::pair<int, int>>{{0, 3}});
        CHECK_THROWS_AS(crossing_counts(layout), verification_error);
    }
    SECTION("half-turn rotation duplicates every zig-zag edge") {
        const Caterpillar c = make_regular_caterpillar(4, 4);
        const auto base = zigzag_drawing(c, 0, Side::inner);
        PackingLayout layout;
        layout.n = c.n;
        layout.drawings = {base, rotate(base, 7)};
        CHECK(has_multi_edges(layout).size() == base.edges.size());
    }
    SECTION("offsets below the half width stay simple") {
        const Caterpillar c = make_regular_caterpillar(4, 4);
        const auto base = zigzag_drawing(c, 0, Side::inner);
        for (int ell = 1; ell <= 6; ++ell) {
            PackingLayout layout;
            layout.n = c.n;
            layout.drawings = {base, rotate(base, ell)};
            CAPTURE(ell);
            CHECK(has_multi_edges(layout).empty());
        }
    }
}

TEST_CASE("host graph summary of three unit-offset zig-zags") {
    const Caterpillar c = make_regular_caterpillar(3, 2);
    PackingLayout layout;
    layout.n = 6;
    for (int j = 0; j < 3; ++j) layout.drawings.push_back(zigzag_drawing(c, j, Side::inner));
    const HostSummary s = host_graph(layout);
    CHECK(s.simple);
    CHECK(s.max_degree == 5);
    for (int d : s.degrees) CHECK(d == 5);
}

TEST_CASE("spanning check") {
    const auto d = zigzag_drawing(make_regular_caterpillar(4, 3), 2, Side::inner);
    CHECK(drawing_spans(d));
    ConvexDrawing chopped = d;
    chopped.edges.pop_back();
    CHECK_FALSE(drawing_spans(chopped));
}

TEST_CASE("spine index structure of zig-zag drawings") {
    for (int delta = 3; delta <= 6; ++delta) {
        for (int sigma = 2; sigma <= 6; ++sigma) {
            for (int start : {0, 3}) {
                const auto d = zigzag_drawing(make_regular_caterpillar(delta, sigma), start, Side::inner);
                CAPTURE(delta, sigma, start);
                CHECK(spine_index_check(d));
            }
        }
    }
    SECTION("displacing one spine vertex breaks the lattice") {
        auto d = zigzag_drawing(make_regular_caterpillar(4, 3), 0, Side::inner);
        for (auto& e : d.edges) {
            if (e.a == 0) e.a = 1;
            else if (e.a == 1) e.a = 0;
            if (e.b == 0) e.b = 1;
            else if (e.b == 1) e.b = 0;
        }
        CHECK_FALSE(spine_index_check(d));
    }
}

TEST_CASE("closed-form crossing bounds") {
    SECTION("pair bound") {
        CHECK(bound_pair_crossings(4, 4, 1) == 20);
        CHECK(bound_pair_crossings(3, 3, 1) == 16);
        CHECK(bound_pair_crossings(17, 9, 1) == 56);
        CHECK_THROWS_AS(bound_pair_crossings(1, 3, 1), parameter_error);
        CHECK_THROWS_AS(bound_pair_crossings(3, 3, 0), parameter_error);
    }
    SECTION("placement bound") {
        CHECK(bound_placement_crossings(4, 2) == 20);
        CHECK(bound_placement_crossings(3, 3) == 36);
        CHECK(bound_placement_crossings(4, 7) == 180);
        CHECK(bound_placement_crossings(3, 2) == 16);
    }
    SECTION("mixed bound") {
        CHECK(bound_mixed_crossings(5, 2) == 48);
        CHECK(bound_mixed_crossings(3, 3) == 69);
        CHECK(bound_mixed_crossings(17, 3) == 307);
    }
}

TEST_CASE("lower bounds stay exact rationals") {
    SECTION("tree packing bound crosses 1 first at h = 8") {
        for (int h = 1; h <= 7; ++h) {
            CAPTURE(h);
            CHECK_FALSE(Rational(1, 1) < lower_bound_k_trees(h));
        }
        CHECK(lower_bound_k_trees(8) == Rational(80, 73));
        CHECK(Rational(1, 1) < lower_bound_k_trees(8));
        CHECK(lower_bound_k_trees(3) < Rational(1, 1));
    }
    SECTION("general bound at the smallest packing") {
        CHECK(lower_bound_k(6, 5, 3) == Rational(125, 292));
    }
    SECTION("small h refinements") {
        CHECK(small_h_lower_bound(3) == 2);
        CHECK(small_h_lower_bound(4) == 3);
        CHECK(small_h_lower_bound(5) == 5);
        CHECK_THROWS_AS(small_h_lower_bound(6), parameter_error);
    }
}

TEST_CASE("bound sheet") {
    const BoundSheet s = make_bound_sheet(14, {5, 3}, {0, 2});
    CHECK(s.pair_bound == bound_pair_crossings(5, 3, 2));
    CHECK(s.placement_bound == bound_placement_crossings(5, 2));
    CHECK(s.mixed_bound == bound_mixed_crossings(5, 2));
    CHECK_FALSE(s.divergence_note);
    CHECK(make_bound_sheet(30, {5, 5, 5}, {0, 1, 2}).divergence_note);
    CHECK_THROWS_AS(make_bound_sheet(14, {3, 5}, {0, 1}), parameter_error);
    CHECK_THROWS_AS(make_bound_sheet(14, {5, 3}, {2, 2}), parameter_error);
}

TEST_CASE("pairwise and sweep counters agree") {
    std::mt19937 rng(20250813);
    for (int trial = 0; trial < 60; ++trial) {
        const PackingLayout layout = random_layout(rng, 24);
        CAPTURE(trial, layout.n, layout.drawings.front().edges.size());
        const CrossingReport a = crossing_counts(layout, CountMethod::pairwise);
        const CrossingReport b = crossing_counts(layout, CountMethod::sweep);
        REQUIRE(a.per_edge.size() == b.per_edge.size());
        for (std::size_t i = 0; i < a.per_edge.size(); ++i) {
            CHECK(a.per_edge[i].a == b.per_edge[i].a);
            CHECK(a.per_edge[i].b == b.per_edge[i].b);
            CHECK(a.per_edge[i].count == b.per_edge[i].count);
        }
        CHECK(a.k == b.k);
    }
}

TEST_CASE("threaded pairwise counting matches a single worker") {
    std::mt19937 rng(7);
    PackingLayout layout;
    layout.n = 40;
    ConvexDrawing d;
    d.n = 40;
    std::vector<std::pair<int, int>> pairs;
    for (int a = 0; a < 40; ++a)
        for (int b = a + 1; b < 40; ++b) pairs.emplace_back(a, b);
    std::shuffle(pairs.begin(), pairs.end(), rng);
    std::uniform_int_distribution<int> sd(0, 1);
    for (std::size_t i = 0; i < 700; ++i)
        d.edges.push_back({pairs[i].first, pairs[i].second, sd(rng) ? Side::inner : Side::outer});
    layout.drawings = {d};

    setenv("CATERPACK_THREADS", "1", 1);
    const CrossingReport serial = crossing_counts(layout, CountMethod::pairwise);
    setenv("CATERPACK_THREADS", "8", 1);
    const CrossingReport threaded = crossing_counts(layout, CountMethod::pairwise);
    unsetenv("CATERPACK_THREADS");
    REQUIRE(serial.per_edge.size() == threaded.per_edge.size());
    for (std::size_t i = 0; i < serial.per_edge.size(); ++i)
        CHECK(serial.per_edge[i].count == threaded.per_edge[i].count);
    CHECK(serial.k == threaded.k);
    CHECK(serial.k == crossing_counts(layout, CountMethod::sweep).k);
}

TEST_CASE("report is sorted and degree table matches") {
    const Caterpillar c = make_regular_caterpillar(3, 3);
    PackingLayout layout;
    layout.n = c.n;
    layout.drawings = {zigzag_drawing(c, 0, Side::inner), zigzag_drawing(c, 1, Side::outer)};
    const CrossingReport rep = crossing_counts(layout);
    for (std::size_t i = 1; i < rep.per_edge.size(); ++i) {
        const auto& p = rep.per_edge[i - 1];
        const auto& q = rep.per_edge[i];
        CHECK((p.a < q.a || (p.a == q.a && p.b < q.b)));
    }
    CHECK(rep.degrees == host_graph(layout).degrees);
    CHECK(rep.k == 0);
}
