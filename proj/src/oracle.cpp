#include "qwalk/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qwalk/search.hpp"

namespace qwalk {

MultiLoopGraph::MultiLoopGraph(Graph base_graph, std::vector<int> loops)
    : base(std::move(base_graph)), loop_count(std::move(loops)) {
    if (base.any_loop())
        throw std::invalid_argument("multi-loop base graph must be loop-free");
    if (static_cast<int>(loop_count.size()) != base.vertex_count())
        throw std::invalid_argument("loop_count must have one entry per vertex");
    const int n = base.vertex_count();
    slice_begin_.assign(n + 1, 0);
    long long total = 0;
    for (int v = 0; v < n; ++v) {
        if (loop_count[v] < 0)
            throw std::invalid_argument("loop counts must be >= 0");
        slice_begin_[v] = static_cast<int>(total);
        total += base.degree(v) + loop_count[v];
    }
    if (total > kMaxOracleArcs)
        throw std::runtime_error("oracle too large: " + std::to_string(total) +
                                 " arcs exceeds cap of " +
                                 std::to_string(kMaxOracleArcs));
    slice_begin_[n] = static_cast<int>(total);
}

MultiLoopGraph MultiLoopGraph::uniform(const Graph& loop_free_base, int loops) {
    return MultiLoopGraph(loop_free_base,
                          std::vector<int>(loop_free_base.vertex_count(), loops));
}

int MultiLoopGraph::total_arcs() const { return slice_begin_.back(); }

DenseUnitary build_dense_coin(const MultiLoopGraph& g,
                              const std::vector<int>& marked) {
    const int dim = g.total_arcs();
    DenseUnitary c = DenseUnitary::Zero(dim, dim);
    for (int v = 0; v < g.base.vertex_count(); ++v) {
        const int begin = g.slice_begin(v);
        const int width = g.slice_end(v) - begin;
        if (width == 0)
            throw std::invalid_argument("empty coin space at vertex " +
                                        std::to_string(v));
        const double sign =
            std::binary_search(marked.begin(), marked.end(), v) ? -1.0 : 1.0;
        const double mean2 = 2.0 / width;
        for (int r = 0; r < width; ++r)
            for (int col = 0; col < width; ++col)
                c(begin + r, begin + col) =
                    sign * (mean2 - (r == col ? 1.0 : 0.0));
    }
    return c;
}

namespace {

// image[a] = where the flip-flop shift sends arc a; loops are fixed points
std::vector<int> shift_image(const MultiLoopGraph& g) {
    std::vector<int> image(g.total_arcs());
    for (int v = 0; v < g.base.vertex_count(); ++v) {
        const auto& nb = g.base.neighbors(v);
        const int begin = g.slice_begin(v);
        for (int i = 0; i < static_cast<int>(nb.size()); ++i) {
            const int k = nb[i];
            const auto& back = g.base.neighbors(k);
            const int j_pos = static_cast<int>(
                std::lower_bound(back.begin(), back.end(), v) - back.begin());
            image[begin + i] = g.slice_begin(k) + j_pos;  // (v,k) -> (k,v)
        }
        for (int l = g.base.degree(v); l < g.slice_end(v) - begin; ++l)
            image[begin + l] = begin + l;
    }
    return image;
}

}  // namespace

DenseUnitary build_dense_shift(const MultiLoopGraph& g) {
    const int dim = g.total_arcs();
    const std::vector<int> image = shift_image(g);
    DenseUnitary s = DenseUnitary::Zero(dim, dim);
    for (int a = 0; a < dim; ++a) s(image[a], a) = 1.0;
    return s;
}

DenseUnitary build_dense_step(const MultiLoopGraph& g,
                              const std::vector<int>& marked) {
    // S is a permutation, so S*C is a row shuffle of C.
    const DenseUnitary c = build_dense_coin(g, marked);
    const std::vector<int> image = shift_image(g);
    DenseUnitary u(c.rows(), c.cols());
    for (int a = 0; a < c.rows(); ++a) u.row(image[a]) = c.row(a);
    return u;
}

double max_unitarity_error(const DenseUnitary& u) {
    DenseUnitary gram = u.adjoint() * u;
    gram.diagonal().array() -= 1.0;
    return gram.cwiseAbs().maxCoeff();
}

namespace {

void require_matching_base(const ArcTable& engine_table, const MultiLoopGraph& g) {
    if (engine_table.vertex_count() != g.base.vertex_count())
        throw std::invalid_argument("vertex counts differ");
    for (int v = 0; v < g.base.vertex_count(); ++v) {
        if (engine_table.degree(v) != g.base.degree(v))
            throw std::invalid_argument("adjacency differs at vertex " +
                                        std::to_string(v));
        const int begin = engine_table.slice_begin(v);
        for (int i = 0; i < g.base.degree(v); ++i)
            if (engine_table.arc(begin + i).target != g.base.neighbors(v)[i])
                throw std::invalid_argument("adjacency differs at vertex " +
                                            std::to_string(v));
    }
}

}  // namespace

Eigen::VectorXcd lift_state(const WalkerState& state, const ArcTable& engine_table,
                            const MultiLoopGraph& g) {
    require_matching_base(engine_table, g);
    const int n_vertices = g.base.vertex_count();
    int uniform_n = n_vertices > 0 ? g.loop_count[0] : 0;
    for (int v = 0; v < n_vertices; ++v) {
        if (g.loop_count[v] != uniform_n)
            throw std::invalid_argument("lift needs a uniform loop count");
        if (!engine_table.has_loop(v))
            throw std::invalid_argument("engine graph must carry a loop slot");
    }
    if (uniform_n < 1)
        throw std::invalid_argument("lift needs an integer loop count >= 1");
    if (state.size() != engine_table.arc_count())
        throw std::invalid_argument("state dimension does not match arc table");

    const double inv_sq = 1.0 / std::sqrt(static_cast<double>(uniform_n));
    Eigen::VectorXcd lifted(g.total_arcs());
    for (int v = 0; v < n_vertices; ++v) {
        const int src = engine_table.slice_begin(v);
        const int dst = g.slice_begin(v);
        const int m = g.base.degree(v);
        for (int i = 0; i < m; ++i) lifted[dst + i] = state.amps[src + i];
        const cxd loop_share = state.amps[engine_table.loop_arc(v)] * inv_sq;
        for (int l = 0; l < uniform_n; ++l) lifted[dst + m + l] = loop_share;
    }
    return lifted;
}

std::vector<double> oracle_position_distribution(const Eigen::VectorXcd& state,
                                                 const MultiLoopGraph& g) {
    std::vector<double> p(g.base.vertex_count(), 0.0);
    for (int v = 0; v < g.base.vertex_count(); ++v)
        for (int id = g.slice_begin(v); id < g.slice_end(v); ++id)
            p[v] += std::norm(state[id]);
    return p;
}

double max_loop_asymmetry(const Eigen::VectorXcd& state, const MultiLoopGraph& g) {
    double worst = 0.0;
    for (int v = 0; v < g.base.vertex_count(); ++v) {
        const int first = g.slice_begin(v) + g.base.degree(v);
        for (int id = first + 1; id < g.slice_end(v); ++id)
            worst = std::max(worst, std::abs(state[id] - state[first]));
    }
    return worst;
}

double EquivalenceReport::overall() const {
    return std::max({max_marginal_deviation, max_amplitude_deviation,
                     max_loop_asymmetry});
}

EquivalenceReport equivalence_check(const Graph& loop_free_base, int n,
                                    const std::vector<int>& marked, int steps) {
    const Graph engine_graph = loop_free_base.with_uniform_loops(n >= 1);
    const ArcTable table(engine_graph);
    CoinConfig cfg = CoinConfig::grover_loop_uniform(
        engine_graph.vertex_count(), static_cast<double>(n), marked);
    return equivalence_check(loop_free_base, n, marked, steps,
                             search_initial_state(table, cfg));
}

EquivalenceReport equivalence_check(const Graph& loop_free_base, int n,
                                    const std::vector<int>& marked, int steps,
                                    const WalkerState& psi0) {
    if (n < 0) throw std::invalid_argument("loop count must be >= 0");
    if (steps < 0) throw std::invalid_argument("step count must be >= 0");
    if (loop_free_base.any_loop())
        throw std::invalid_argument("base graph must be loop-free");

    const Graph engine_graph = loop_free_base.with_uniform_loops(n >= 1);
    const ArcTable table(engine_graph);
    CoinConfig cfg = CoinConfig::grover_loop_uniform(
        engine_graph.vertex_count(), static_cast<double>(n), marked);
    validate_coin_config(cfg, table);

    const MultiLoopGraph mlg = MultiLoopGraph::uniform(loop_free_base, n);
    const DenseUnitary u = build_dense_step(mlg, marked);

    WalkerState engine_state = psi0;
    if (engine_state.size() != table.arc_count())
        throw std::invalid_argument("initial state dimension mismatch");
    Eigen::VectorXcd oracle_state;
    if (n >= 1)
        oracle_state = lift_state(engine_state, table, mlg);
    else
        oracle_state = Eigen::Map<const Eigen::VectorXcd>(engine_state.amps.data(),
                                                          engine_state.size());

    const double inv_sq = n >= 1 ? 1.0 / std::sqrt(static_cast<double>(n)) : 1.0;
    EquivalenceReport report;
    auto compare = [&] {
        const auto p_engine = position_distribution(engine_state, table);
        const auto p_oracle = oracle_position_distribution(oracle_state, mlg);
        for (int v = 0; v < table.vertex_count(); ++v)
            report.max_marginal_deviation = std::max(
                report.max_marginal_deviation, std::abs(p_engine[v] - p_oracle[v]));
        for (int v = 0; v < table.vertex_count(); ++v) {
            const int src = table.slice_begin(v);
            const int dst = mlg.slice_begin(v);
            const int m = table.degree(v);
            for (int i = 0; i < m; ++i)
                report.max_amplitude_deviation =
                    std::max(report.max_amplitude_deviation,
                             std::abs(engine_state.amps[src + i] -
                                      oracle_state[dst + i]));
            if (n >= 1) {
                const cxd share = engine_state.amps[table.loop_arc(v)] * inv_sq;
                for (int l = 0; l < n; ++l)
                    report.max_amplitude_deviation =
                        std::max(report.max_amplitude_deviation,
                                 std::abs(share - oracle_state[dst + m + l]));
            }
        }
        report.max_loop_asymmetry =
            std::max(report.max_loop_asymmetry,
                     max_loop_asymmetry(oracle_state, mlg));
    };

    compare();
    for (int s = 0; s < steps; ++s) {
        step(engine_state, table, cfg);
        oracle_state = u * oracle_state;
        compare();
    }
    return report;
}

}  // namespace qwalk
