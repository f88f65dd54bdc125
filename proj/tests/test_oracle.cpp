#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "qwalk/oracle.hpp"
#include "qwalk/search.hpp"
#include "test_util.hpp"

using namespace qwalk;
using qwalk_test::random_graph;
using qwalk_test::random_state;

TEST_CASE("dense coin blocks are uniform Grover reflections") {
    // degree-4 vertices with two loops each: 6x6 blocks, 1/3 off the
    // diagonal and 1/3 - 1 on it
    const MultiLoopGraph g =
        MultiLoopGraph::uniform(build_lattice({3, 3}, true, false), 2);
    const DenseUnitary c = build_dense_coin(g, {});
    for (int r = 0; r < 6; ++r)
        for (int col = 0; col < 6; ++col) {
            const double expect = r == col ? 1.0 / 3.0 - 1.0 : 1.0 / 3.0;
            CHECK(std::abs(c(g.slice_begin(4) + r, g.slice_begin(4) + col) -
                           expect) < 1e-15);
        }
    // off-block entries vanish
    CHECK(c(g.slice_begin(0), g.slice_begin(1)) == cxd{0.0, 0.0});

    const DenseUnitary cm = build_dense_coin(g, {4});
    CHECK(std::abs(cm(g.slice_begin(4), g.slice_begin(4)) -
                   (1.0 - 1.0 / 3.0)) < 1e-15);
    CHECK(std::abs(cm(g.slice_begin(0), g.slice_begin(0)) -
                   (1.0 / 3.0 - 1.0)) < 1e-15);
}

TEST_CASE("dense shift swaps neighbor arcs and fixes loops") {
    const MultiLoopGraph g =
        MultiLoopGraph::uniform(build_complete(4, false), 1);
    const DenseUnitary s = build_dense_shift(g);
    CHECK(max_unitarity_error(s) == 0.0);
    // loop arcs are the last slot of each vertex slice
    for (int v = 0; v < 4; ++v) {
        const int loop = g.slice_end(v) - 1;
        CHECK(s(loop, loop) == cxd{1.0, 0.0});
    }
    // shift applied twice is the identity
    CHECK(((s * s) - DenseUnitary::Identity(s.rows(), s.cols()))
              .cwiseAbs()
              .maxCoeff() == 0.0);
}

TEST_CASE("dense step = shift x coin, and every built matrix is unitary") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 6; ++trial) {
        Graph base = random_graph(4 + trial * 2, 0.3, 0.0, rng);
        std::uniform_int_distribution<int> loops(0, 3);
        std::vector<int> loop_count(base.vertex_count());
        for (auto& l : loop_count) l = loops(rng);
        const MultiLoopGraph g(base, loop_count);
        const std::vector<int> marked = trial % 2 ? std::vector<int>{1}
                                                  : std::vector<int>{};
        const DenseUnitary u = build_dense_step(g, marked);
        const DenseUnitary product =
            build_dense_shift(g) * build_dense_coin(g, marked);
        CHECK((u - product).cwiseAbs().maxCoeff() == 0.0);
        CHECK(max_unitarity_error(u) <= 1e-12);
    }
}

TEST_CASE("oracle size cap") {
    CHECK_THROWS_WITH_AS(MultiLoopGraph::uniform(build_complete(80, false), 0),
                         doctest::Contains("oracle too large"),
                         std::runtime_error);
    CHECK_NOTHROW(MultiLoopGraph::uniform(build_complete(70, false), 0));
}

TEST_CASE("lift state") {
    Graph base = build_lattice({4, 4}, true, false);
    Graph looped = base.with_uniform_loops(true);
    ArcTable t(looped);
    std::mt19937 rng(3);

    SUBCASE("n=2: loop amplitude sqrt(2)x splits into x and x") {
        const MultiLoopGraph g = MultiLoopGraph::uniform(base, 2);
        WalkerState s(t.arc_count());
        const cxd x{0.3, -0.4};
        s.amps[t.loop_arc(5)] = std::sqrt(2.0) * x;
        const auto lifted = lift_state(s, t, g);
        const int first_loop = g.slice_begin(5) + 4;
        CHECK(std::abs(lifted[first_loop] - x) < 1e-15);
        CHECK(std::abs(lifted[first_loop + 1] - x) < 1e-15);
        CHECK(max_loop_asymmetry(lifted, g) == 0.0);
    }
    SUBCASE("zero loop amplitude lifts to zero copies") {
        const MultiLoopGraph g = MultiLoopGraph::uniform(base, 3);
        WalkerState s(t.arc_count());
        s.amps[t.slice_begin(0)] = 1.0;
        const auto lifted = lift_state(s, t, g);
        for (int v = 0; v < 16; ++v)
            for (int l = 0; l < 3; ++l)
                CHECK(lifted[g.slice_begin(v) + 4 + l] == cxd{0.0, 0.0});
    }
    SUBCASE("norm is preserved for random states") {
        for (int n = 1; n <= 3; ++n) {
            const MultiLoopGraph g = MultiLoopGraph::uniform(base, n);
            WalkerState s = random_state(t, rng);
            CHECK(lift_state(s, t, g).norm() ==
                  doctest::Approx(s.norm()).epsilon(1e-13));
        }
    }
    SUBCASE("zero or non-uniform loop counts are rejected") {
        WalkerState s(t.arc_count());
        CHECK_THROWS_AS(lift_state(s, t, MultiLoopGraph::uniform(base, 0)),
                        std::invalid_argument);
        std::vector<int> uneven(16, 2);
        uneven[7] = 1;
        CHECK_THROWS_AS(lift_state(s, t, MultiLoopGraph(base, uneven)),
                        std::invalid_argument);
    }
    SUBCASE("mismatched adjacency is rejected") {
        WalkerState s(t.arc_count());
        CHECK_THROWS_AS(
            lift_state(s, t,
                       MultiLoopGraph::uniform(build_complete(16, false), 1)),
            std::invalid_argument);
    }
}

TEST_CASE("engine equals the dense oracle on the loop-free basis") {
    std::mt19937 rng(29);
    SUBCASE("random graphs, 50 steps, componentwise") {
        for (int trial = 0; trial < 5; ++trial) {
            Graph base = random_graph(6 + 3 * trial, 0.35, 0.0, rng);
            const auto report = equivalence_check(base, 0, {0}, 50);
            CHECK(report.max_amplitude_deviation <= 1e-12);
            CHECK(report.max_marginal_deviation <= 1e-12);
        }
    }
    SUBCASE("structured graphs") {
        CHECK(equivalence_check(build_lattice({5, 5}, true, false), 0, {}, 50)
                  .overall() <= 1e-12);
        CHECK(equivalence_check(build_complete(10, false), 0, {3}, 50)
                  .overall() <= 1e-12);
    }
}

TEST_CASE("one adjustable loop reproduces n actual loops") {
    const Graph torus = build_lattice({5, 5}, true, false);
    const Graph k10 = build_complete(10, false);
    SUBCASE("torus, n=1, unmarked, 100 steps") {
        CHECK(equivalence_check(torus, 1, {}, 100).overall() <= 1e-10);
    }
    SUBCASE("K10, n=2, marked, 100 steps") {
        CHECK(equivalence_check(k10, 2, {0}, 100).overall() <= 1e-10);
    }
    SUBCASE("random initial states satisfying the amplitude map") {
        std::mt19937 rng(47);
        const Graph path = load_edge_list("0 1\n1 2\n2 3\n3 4\n1 3");
        for (int n = 1; n <= 3; ++n) {
            ArcTable t(path.with_uniform_loops(true));
            const WalkerState psi0 = random_state(t, rng);
            const auto report = equivalence_check(path, n, {2}, 30, psi0);
            CHECK(report.overall() <= 1e-10);
        }
    }
}

TEST_CASE("equal loop copies stay equal through marked evolution") {
    const auto report = equivalence_check(build_complete(8, false), 3, {1}, 80);
    CHECK(report.max_loop_asymmetry <= 1e-12);
}

TEST_CASE("loop asymmetry detector sees a broken state") {
    const MultiLoopGraph g =
        MultiLoopGraph::uniform(build_complete(4, false), 2);
    Eigen::VectorXcd state = Eigen::VectorXcd::Zero(g.total_arcs());
    state[g.slice_begin(0) + 3] = 0.6;  // first loop copy of vertex 0
    state[g.slice_begin(0) + 4] = 0.8;  // second copy, unequal
    CHECK(max_loop_asymmetry(state, g) == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("a sign error in the shift passes unitarity but fails equivalence") {
    // mutated flip-flop: amplitudes are negated while swapping; still unitary,
    // but no longer the walk the oracle runs
    const Graph base = build_lattice({5, 5}, true, false);
    const Graph looped = base.with_uniform_loops(true);
    const ArcTable t(looped);
    const CoinConfig cfg = CoinConfig::grover_loop_uniform(25, 1.0, {0});

    const MultiLoopGraph mlg = MultiLoopGraph::uniform(base, 1);
    const DenseUnitary u = build_dense_step(mlg, {0});

    WalkerState engine = search_initial_state(t, cfg);
    Eigen::VectorXcd oracle = lift_state(engine, t, mlg);

    double norm_drift = 0.0;
    double marginal_dev = 0.0;
    for (int s = 0; s < 40; ++s) {
        apply_coin(engine, t, cfg);
        for (int id = 0; id < t.arc_count(); ++id) {
            const int rev = t.reverse(id);
            if (rev > id) {
                std::swap(engine.amps[id], engine.amps[rev]);
                engine.amps[id] = -engine.amps[id];
                engine.amps[rev] = -engine.amps[rev];
            }
        }
        oracle = u * oracle;
        norm_drift = std::max(norm_drift, std::abs(engine.norm() - 1.0));
        const auto pe = position_distribution(engine, t);
        const auto po = oracle_position_distribution(oracle, mlg);
        for (int v = 0; v < 25; ++v)
            marginal_dev = std::max(marginal_dev, std::abs(pe[v] - po[v]));
    }
    CHECK(norm_drift <= 1e-12);     // the mutant is still unitary
    CHECK(marginal_dev >= 1e-3);    // but the equivalence check catches it
}
