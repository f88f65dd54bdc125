#include <random>
#include <stdexcept>

#include "doctest.h"
#include "qwalk/graph.hpp"
#include "test_util.hpp"

using namespace qwalk;

TEST_CASE("complete graphs") {
    SUBCASE("K400 has N(N-1) directed arcs") {
        Graph g = build_complete(400, false);
        ArcTable t(g);
        CHECK(t.arc_count() == 159600);
        CHECK(g.degree(0) == 399);
    }
    SUBCASE("K2 is a single edge, two arcs") {
        ArcTable t{build_complete(2, false)};
        CHECK(t.arc_count() == 2);
        CHECK(t.arc(0) == Arc{0, 1});
        CHECK(t.arc(1) == Arc{1, 0});
    }
    SUBCASE("loop slots add one arc per vertex") {
        ArcTable t{build_complete(400, true)};
        CHECK(t.arc_count() == 159600 + 400);
    }
    SUBCASE("rejects fewer than two vertices") {
        CHECK_THROWS_AS(build_complete(1, false), std::invalid_argument);
        CHECK_THROWS_AS(build_complete(0, false), std::invalid_argument);
    }
}

TEST_CASE("lattices") {
    SUBCASE("20x20 torus is 4-regular") {
        Graph g = build_lattice({20, 20}, true, false);
        CHECK(g.vertex_count() == 400);
        for (int v = 0; v < 400; ++v) CHECK(g.degree(v) == 4);
    }
    SUBCASE("open 3x3 has degree-2 corners") {
        Graph g = build_lattice({3, 3}, false, false);
        CHECK(g.degree(0) == 2);
        CHECK(g.degree(2) == 2);
        CHECK(g.degree(4) == 4);  // center
        CHECK(g.degree(1) == 3);  // edge midpoint
    }
    SUBCASE("5x5x5 torus is 6-regular") {
        Graph g = build_lattice({5, 5, 5}, true, false);
        CHECK(g.vertex_count() == 125);
        for (int v = 0; v < 125; ++v) CHECK(g.degree(v) == 6);
    }
    SUBCASE("row-major neighbor identity on the torus") {
        Graph g = build_lattice({4, 5}, true, false);
        // vertex (1,2) = 7: neighbors (0,2)=2, (2,2)=12, (1,1)=6, (1,3)=8
        CHECK(g.neighbors(7) == std::vector<int>{2, 6, 8, 12});
    }
    SUBCASE("dimension validation") {
        CHECK_THROWS_AS(build_lattice({5}, true, false), std::invalid_argument);
        CHECK_THROWS_AS(build_lattice({3, 3, 3, 3}, true, false),
                        std::invalid_argument);
        CHECK_THROWS_AS(build_lattice({2, 5}, true, false), std::invalid_argument);
        CHECK_NOTHROW(build_lattice({2, 5}, false, false));
        CHECK_THROWS_AS(build_lattice({1, 5}, false, false), std::invalid_argument);
    }
}

TEST_CASE("edge list parsing") {
    SUBCASE("path graph") {
        Graph g = load_edge_list("0 1\n1 2");
        CHECK(g.vertex_count() == 3);
        CHECK(g.degree(0) == 1);
        CHECK(g.degree(1) == 2);
        CHECK(!g.any_loop());
    }
    SUBCASE("loop line marks the slot") {
        Graph g = load_edge_list("0 0\n0 1");
        CHECK(g.vertex_count() == 2);
        CHECK(g.has_loop(0));
        CHECK(!g.has_loop(1));
        CHECK(g.degree(0) == 1);
    }
    SUBCASE("reversed duplicate collapses") {
        Graph g = load_edge_list("0 1\n1 0");
        CHECK(ArcTable(g).arc_count() == 2);
    }
    SUBCASE("blank lines and comments are skipped") {
        Graph g = load_edge_list("# a path\n\n0 1\n\n1 2\n");
        CHECK(g.vertex_count() == 3);
    }
    SUBCASE("bad tokens report the line") {
        CHECK_THROWS_WITH_AS(load_edge_list("0 1\n1 x"),
                             doctest::Contains("line 2"), std::runtime_error);
        CHECK_THROWS_WITH_AS(load_edge_list("0 -1"), doctest::Contains("line 1"),
                             std::runtime_error);
        CHECK_THROWS_WITH_AS(load_edge_list("0 1 2"), doctest::Contains("line 1"),
                             std::runtime_error);
        CHECK_THROWS_AS(load_edge_list("   \n# only comments"), std::runtime_error);
    }
    SUBCASE("isolated loop-free vertex is rejected") {
        CHECK_THROWS_AS(load_edge_list("0 1\n3 3"), std::invalid_argument);
    }
}

TEST_CASE("graph validation") {
    CHECK_THROWS_AS(Graph(2, {{1}, {}}, {false, false}), std::invalid_argument);
    CHECK_THROWS_AS(Graph(2, {{1}, {0, 0}}, {false, false}), std::invalid_argument);
    CHECK_THROWS_AS(Graph(2, {{0, 1}, {0}}, {false, false}), std::invalid_argument);
    CHECK_NOTHROW(Graph(2, {{1}, {0}}, {false, false}));
    CHECK_NOTHROW(Graph(1, {{}}, {true}));  // lone vertex with just a loop slot
}

TEST_CASE("arc table layout") {
    SUBCASE("single edge") {
        ArcTable t{load_edge_list("0 1")};
        CHECK(t.arc_count() == 2);
        CHECK(t.reverse(0) == 1);
        CHECK(t.reverse(1) == 0);
    }
    SUBCASE("triangle with a loop on vertex 0") {
        ArcTable t{load_edge_list("0 1\n0 2\n1 2\n0 0")};
        CHECK(t.arc_count() == 7);
        CHECK(t.slice_begin(0) == 0);
        CHECK(t.slice_end(0) == 3);
        CHECK(t.arc(2) == Arc{0, 0});  // loop arc last in the slice
        CHECK(t.loop_arc(0) == 2);
        CHECK(t.loop_arc(1) == -1);
        CHECK(t.reverse(2) == 2);
        CHECK(t.index_of(0, 0) == 2);
        CHECK(t.index_of(2, 1) == t.slice_begin(2) + 1);
        CHECK(t.index_of(1, 1) == -1);
    }
    SUBCASE("20x20 torus with loops everywhere") {
        ArcTable t{build_lattice({20, 20}, true, true)};
        CHECK(t.arc_count() == 2000);
    }
    SUBCASE("arc count matches the degree sum plus loop slots") {
        std::mt19937 rng(11);
        for (int trial = 0; trial < 20; ++trial) {
            Graph g = qwalk_test::random_graph(2 + trial, 0.3, 0.4, rng);
            int expect = g.loop_slot_count();
            for (int v = 0; v < g.vertex_count(); ++v) expect += g.degree(v);
            CHECK(ArcTable(g).arc_count() == expect);
        }
    }
}

TEST_CASE("arc reversal is an involution pairing (j,k) with (k,j)") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        Graph g = qwalk_test::random_graph(3 + trial % 12, 0.25, 0.3, rng);
        ArcTable t(g);
        for (int id = 0; id < t.arc_count(); ++id) {
            const Arc a = t.arc(id);
            const int rev = t.reverse(id);
            CHECK(t.reverse(rev) == id);
            CHECK(t.arc(rev) == Arc{a.target, a.source});
            if (a.is_loop()) CHECK(rev == id);
        }
    }
}

TEST_CASE("vertex slices tile the arc ids in order") {
    std::mt19937 rng(13);
    Graph g = qwalk_test::random_graph(17, 0.3, 0.5, rng);
    ArcTable t(g);
    int cursor = 0;
    for (int v = 0; v < g.vertex_count(); ++v) {
        CHECK(t.slice_begin(v) == cursor);
        for (int id = t.slice_begin(v); id < t.slice_end(v); ++id)
            CHECK(t.arc(id).source == v);
        for (int id = t.slice_begin(v) + 1; id < t.slice_begin(v) + t.degree(v); ++id)
            CHECK(t.arc(id - 1).target < t.arc(id).target);
        cursor = t.slice_end(v);
    }
    CHECK(cursor == t.arc_count());
}

TEST_CASE("rebuilding a graph gives an identical table") {
    Graph g1 = build_lattice({6, 7}, true, true);
    Graph g2 = build_lattice({6, 7}, true, true);
    ArcTable t1(g1), t2(g2);
    REQUIRE(t1.arc_count() == t2.arc_count());
    for (int id = 0; id < t1.arc_count(); ++id) {
        CHECK(t1.arc(id) == t2.arc(id));
        CHECK(t1.reverse(id) == t2.reverse(id));
    }
}
