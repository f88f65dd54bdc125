/*
 * walk.hpp — the unitary evolution core.
 *
 * One step is U = S·C: a per-vertex coin reflection followed by the
 * flip-flop shift. Two coin families are supported:
 *
 *   StandardGrover — reflection about the equal superposition of every
 *     direction in the vertex's slice; a loop arc, when present, counts as
 *     an ordinary direction ("one actual self-loop").
 *   GroverLoop — reflection about the weighted diagonal state whose loop
 *     component is sqrt(n)/sqrt(m+n) for per-vertex weight n >= 0; at n = 0
 *     the loop is inert, at integer n it reproduces n actual self-loops.
 *
 * Marked vertices get their coin block negated, which is what turns the
 * walk into a search.
 *
 * The kernels are blocked: the coin is a rank-1 update per vertex slice and
 * the shift a precomputed involution, so a step costs O(arc count).
 */
#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "qwalk/graph.hpp"

namespace qwalk {

using cxd = std::complex<double>;

enum class CoinFamily { StandardGrover, GroverLoop };

struct CoinConfig {
    CoinFamily family = CoinFamily::StandardGrover;
    std::vector<double> loop_weights;  // per vertex; GroverLoop only (empty = all zero)
    std::vector<int> marked;           // strictly ascending vertex ids

    static CoinConfig standard_grover(std::vector<int> marked = {});
    static CoinConfig grover_loop_uniform(int vertex_count, double weight,
                                          std::vector<int> marked = {});
    static CoinConfig grover_loop(std::vector<double> weights,
                                  std::vector<int> marked = {});

    // Weight of the loop direction in vertex v's diagonal state.
    double effective_weight(const ArcTable& t, int v) const;
};

// Throws std::invalid_argument if the config cannot drive a walk on t:
// weight vector sized wrong, negative/non-finite weights, positive weight on
// a loop-free vertex, coin block of dimension zero, marked ids invalid.
void validate_coin_config(const CoinConfig& cfg, const ArcTable& t);

struct WalkerState {
    std::vector<cxd> amps;

    WalkerState() = default;
    explicit WalkerState(int arc_count) : amps(arc_count) {}
    int size() const { return static_cast<int>(amps.size()); }
    double norm() const;
};

// Weighted diagonal state over vertex v's arc slice: neighbor entries
// 1/sqrt(m+n), loop entry sqrt(n)/sqrt(m+n). Unit norm by construction.
std::vector<double> diagonal_state(const ArcTable& t, int v, double loop_weight);

// Per-vertex block a -> 2<d|a>d - a (negated on marked vertices).
void apply_coin(WalkerState& state, const ArcTable& t, const CoinConfig& cfg);

// Flip-flop shift: amplitude on (j,k) moves to (k,j); loop arcs stay put.
void apply_shift(WalkerState& state, const ArcTable& t);

// One evolution step U = S·C.
void step(WalkerState& state, const ArcTable& t, const CoinConfig& cfg);

// t steps of U; hook (if set) sees the state after each step, 1-based.
using StepHook = std::function<void(int step_index, const WalkerState&)>;
void run(WalkerState& state, const ArcTable& t, const CoinConfig& cfg,
         int steps, const StepHook& hook = {});

// p_j = sum of |amplitude|^2 over vertex j's slice (loop arc included).
std::vector<double> position_distribution(const WalkerState& state,
                                          const ArcTable& t);

// Free spreading from the center of an odd x odd 2D lattice: the walker
// starts in the equal superposition of the four neighbor directions (loop
// direction excluded) and the center-vertex probability is recorded per
// step; trace[0] = 1. dims must multiply to g's vertex count. Boundary
// handling follows g; with t_max below half the smaller dimension the
// wavefront never reaches a boundary, so the flag cannot matter there.
std::vector<double> spreading_probe(const Graph& g, const std::vector<int>& dims,
                                    double loop_weight, int t_max);

}  // namespace qwalk
