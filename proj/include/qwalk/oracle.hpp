/*
 * oracle.hpp — dense-matrix brute-force walk over graphs with any number of
 * actual self-loops per vertex.
 *
 * This is a deliberately independent code path: the step operator is built
 * as an explicit matrix (uniform Grover blocks over each (m + n_j)-dim coin
 * space, then the shift permutation) and applied by dense mat-vec, with no
 * use of the blocked kernels it exists to cross-check. Slow and small by
 * design: construction refuses more than 5000 arcs.
 */
#pragma once

#include <Eigen/Dense>

#include "qwalk/graph.hpp"
#include "qwalk/walk.hpp"

namespace qwalk {

using DenseUnitary = Eigen::MatrixXcd;

inline constexpr int kMaxOracleArcs = 5000;

// A loop-free base graph plus an integer number of actual self-loops per
// vertex. Arc basis: per vertex, neighbor arcs ascending, then the loop
// copies — aligned with ArcTable ordering on the shared arcs.
struct MultiLoopGraph {
    Graph base;
    std::vector<int> loop_count;

    MultiLoopGraph(Graph base_graph, std::vector<int> loops);
    static MultiLoopGraph uniform(const Graph& loop_free_base, int loops);

    int total_arcs() const;
    int slice_begin(int v) const { return slice_begin_[v]; }
    int slice_end(int v) const { return slice_begin_[v + 1]; }

private:
    std::vector<int> slice_begin_;
};

// Block-diagonal coin: each vertex gets the uniform Grover reflection over
// its m + n_j directions, negated on marked vertices.
DenseUnitary build_dense_coin(const MultiLoopGraph& g,
                              const std::vector<int>& marked);

// Flip-flop shift permutation; loop arcs are fixed points.
DenseUnitary build_dense_shift(const MultiLoopGraph& g);

// One evolution step S·C as an explicit matrix.
DenseUnitary build_dense_step(const MultiLoopGraph& g,
                              const std::vector<int>& marked);

// max |(U†U - I)_ij|
double max_unitarity_error(const DenseUnitary& u);

// Maps an engine state on the single-adjustable-loop graph to the multi-loop
// basis: neighbor amplitudes copy over, the loop amplitude splits equally as
// a_jj/sqrt(n) onto each of the n loop copies (norm preserved). Requires a
// uniform integer loop count n >= 1 and matching base adjacency.
Eigen::VectorXcd lift_state(const WalkerState& state, const ArcTable& engine_table,
                            const MultiLoopGraph& g);

std::vector<double> oracle_position_distribution(const Eigen::VectorXcd& state,
                                                 const MultiLoopGraph& g);

// Largest spread among loop-copy amplitudes at any vertex; the walk should
// keep all copies equal, so anything above tolerance falsifies the lift.
double max_loop_asymmetry(const Eigen::VectorXcd& state, const MultiLoopGraph& g);

struct EquivalenceReport {
    double max_marginal_deviation = 0.0;   // per-step position marginals
    double max_amplitude_deviation = 0.0;  // per-step lifted arc amplitudes
    double max_loop_asymmetry = 0.0;       // oracle loop copies drifting apart
    double overall() const;
};

// Runs the adjustable-loop engine (weight n, flip coin on `marked`) against
// the dense walk with n actual loops, both for `steps` steps, comparing
// position marginals and lifted amplitudes after every step. n = 0 compares
// the two implementations on the identical loop-free basis. The initial
// engine state is `psi0` if given, else the search initial state.
EquivalenceReport equivalence_check(const Graph& loop_free_base, int n,
                                    const std::vector<int>& marked, int steps);
EquivalenceReport equivalence_check(const Graph& loop_free_base, int n,
                                    const std::vector<int>& marked, int steps,
                                    const WalkerState& psi0);

}  // namespace qwalk
