/*
 * search.hpp — the spatial-search harness: initial state, target-probability
 * traces, first-peak detection, the degree-centrality weight rule, weight
 * sweeps and scaling studies.
 */
#pragma once

#include <functional>
#include <vector>

#include "qwalk/walk.hpp"

namespace qwalk {

// values[t] = probability on the marked set after t steps; [0] is pre-evolution.
using ProbabilityTrace = std::vector<double>;

struct PeakResult {
    int t_peak = 0;
    double p_peak = 0.0;
};

// Uniform-over-vertices superposition of the coin diagonal states,
// (1/sqrt N) sum_j |j>|D_j>. With all weights zero this is amplitude
// 1/sqrt(N*deg(j)) on every neighbor arc and 0 on loop arcs.
WalkerState search_initial_state(const ArcTable& t, const CoinConfig& cfg);

// Evolve the search (marked set must be nonempty) and record the marked-set
// position probability per step.
ProbabilityTrace run_search(const ArcTable& t, const CoinConfig& cfg, int t_max);

// First peak: the earliest index whose value is >= every value within a
// +-3 step window (1e-12 tie tolerance, earliest index wins). The window
// rides over the period-2 micro-oscillation of loop-free search traces; a
// monotone rising trace yields the last index, which callers treat as
// "window truncated".
PeakResult find_first_peak(const ProbabilityTrace& trace);

// n_j = deg(j)/(N-1); degrees count non-loop neighbors only.
std::vector<double> degree_centrality_weights(const Graph& g);

// Default search window, 10*ceil(sqrt(N)) steps.
int default_search_window(int vertex_count);

struct WeightPeak {
    double weight = 0.0;
    PeakResult peak;
};

// One search per grid weight (grid values >= 0), distributed over threads
// (0 = hardware), results in grid order.
std::vector<WeightPeak> weight_sweep(const Graph& g, int target,
                                     const std::vector<double>& grid, int t_max,
                                     int threads = 0);

enum class GraphFamily { Lattice2d, Lattice3d, Complete };
enum class WeightRule { Zero, DegreeCentrality, Fixed };

struct ScalingPoint {
    int size = 0;          // side length (lattices) or vertex count (complete)
    int vertex_count = 0;
    double p_peak = 0.0;
    int t_peak = 0;
    bool window_truncated = false;  // peak sits on the window boundary
};

struct ScalingResult {
    std::vector<ScalingPoint> points;
    // Least-squares slope of log t_peak vs log N over non-truncated points
    // with t_peak >= 1; NaN when fewer than two qualify.
    double fit_exponent = 0.0;
    int fitted_points = 0;
};

// Periodic lattices (side = size) or complete graphs (N = size), target
// vertex 0, one search per size. window_rule(N) sets the trace length
// (default default_search_window).
ScalingResult scaling_study(GraphFamily family, const std::vector<int>& sizes,
                            WeightRule rule, double fixed_weight = 0.0,
                            const std::function<int(int)>& window_rule = {},
                            int threads = 0);

}  // namespace qwalk
