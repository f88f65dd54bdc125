#include "qwalk/walk.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qwalk {

CoinConfig CoinConfig::standard_grover(std::vector<int> marked) {
    return CoinConfig{CoinFamily::StandardGrover, {}, std::move(marked)};
}

CoinConfig CoinConfig::grover_loop_uniform(int vertex_count, double weight,
                                           std::vector<int> marked) {
    return CoinConfig{CoinFamily::GroverLoop,
                      std::vector<double>(vertex_count, weight), std::move(marked)};
}

CoinConfig CoinConfig::grover_loop(std::vector<double> weights,
                                   std::vector<int> marked) {
    return CoinConfig{CoinFamily::GroverLoop, std::move(weights), std::move(marked)};
}

double CoinConfig::effective_weight(const ArcTable& t, int v) const {
    if (family == CoinFamily::StandardGrover) return t.has_loop(v) ? 1.0 : 0.0;
    return loop_weights.empty() ? 0.0 : loop_weights[v];
}

void validate_coin_config(const CoinConfig& cfg, const ArcTable& t) {
    const int n = t.vertex_count();
    if (cfg.family == CoinFamily::GroverLoop && !cfg.loop_weights.empty() &&
        static_cast<int>(cfg.loop_weights.size()) != n)
        throw std::invalid_argument("loop_weights must have one entry per vertex");
    for (int v = 0; v < n; ++v) {
        const double w = cfg.effective_weight(t, v);
        if (!(w >= 0.0) || !std::isfinite(w))
            throw std::invalid_argument("loop weight must be finite and >= 0");
        if (w > 0.0 && !t.has_loop(v))
            throw std::invalid_argument("positive loop weight on loop-free vertex " +
                                        std::to_string(v));
        if (t.degree(v) == 0 && w == 0.0)
            throw std::invalid_argument("coin undefined on vertex " +
                                        std::to_string(v) +
                                        ": no neighbors and zero loop weight");
    }
    if (!std::is_sorted(cfg.marked.begin(), cfg.marked.end()) ||
        std::adjacent_find(cfg.marked.begin(), cfg.marked.end()) != cfg.marked.end())
        throw std::invalid_argument("marked set must be strictly ascending");
    for (int v : cfg.marked)
        if (v < 0 || v >= n)
            throw std::invalid_argument("marked vertex id out of range");
}

double WalkerState::norm() const {
    double s = 0.0;
    for (const cxd& a : amps) s += std::norm(a);
    return std::sqrt(s);
}

std::vector<double> diagonal_state(const ArcTable& t, int v, double loop_weight) {
    if (!(loop_weight >= 0.0) || !std::isfinite(loop_weight))
        throw std::invalid_argument("loop weight must be finite and >= 0");
    if (loop_weight > 0.0 && !t.has_loop(v))
        throw std::invalid_argument("positive loop weight on loop-free vertex " +
                                    std::to_string(v));
    const int m = t.degree(v);
    if (m == 0 && loop_weight == 0.0)
        throw std::invalid_argument("diagonal state undefined: empty coin space");
    const double inv = 1.0 / std::sqrt(m + loop_weight);
    std::vector<double> d(t.slice_end(v) - t.slice_begin(v), inv);
    if (t.has_loop(v)) d.back() = std::sqrt(loop_weight) * inv;
    return d;
}

namespace {

void check_dimension(const WalkerState& state, const ArcTable& t) {
    if (state.size() != t.arc_count())
        throw std::invalid_argument("state dimension does not match arc table");
}

// Coin block at one vertex: a -> 2<d|a>d - a, optionally negated.
// With T = sum(neighbor amps) + sqrt(n)*loop amp and q = 2T/(m+n):
// neighbors get q - a, the loop gets sqrt(n)*q - a.
void coin_unchecked(WalkerState& state, const ArcTable& t, const CoinConfig& cfg) {
    cxd* a = state.amps.data();
    const int n_vertices = t.vertex_count();
    auto marked_it = cfg.marked.begin();
    for (int v = 0; v < n_vertices; ++v) {
        const int begin = t.slice_begin(v);
        const int end = t.slice_end(v);
        const bool loop = t.has_loop(v);
        const int nb_end = loop ? end - 1 : end;
        const double w = cfg.effective_weight(t, v);
        const double sq = std::sqrt(w);

        cxd total = 0.0;
        for (int id = begin; id < nb_end; ++id) total += a[id];
        if (loop) total += sq * a[end - 1];

        const cxd q = 2.0 * total / (static_cast<double>(nb_end - begin) + w);
        for (int id = begin; id < nb_end; ++id) a[id] = q - a[id];
        if (loop) a[end - 1] = sq * q - a[end - 1];

        if (marked_it != cfg.marked.end() && *marked_it == v) {
            ++marked_it;
            for (int id = begin; id < end; ++id) a[id] = -a[id];
        }
    }
}

void shift_unchecked(WalkerState& state, const ArcTable& t) {
    cxd* a = state.amps.data();
    const int count = t.arc_count();
    for (int id = 0; id < count; ++id) {
        const int rev = t.reverse(id);
        if (rev > id) std::swap(a[id], a[rev]);
    }
}

}  // namespace

void apply_coin(WalkerState& state, const ArcTable& t, const CoinConfig& cfg) {
    check_dimension(state, t);
    validate_coin_config(cfg, t);
    coin_unchecked(state, t, cfg);
}

void apply_shift(WalkerState& state, const ArcTable& t) {
    check_dimension(state, t);
    shift_unchecked(state, t);
}

void step(WalkerState& state, const ArcTable& t, const CoinConfig& cfg) {
    check_dimension(state, t);
    validate_coin_config(cfg, t);
    coin_unchecked(state, t, cfg);
    shift_unchecked(state, t);
}

void run(WalkerState& state, const ArcTable& t, const CoinConfig& cfg, int steps,
         const StepHook& hook) {
    if (steps < 0) throw std::invalid_argument("step count must be >= 0");
    check_dimension(state, t);
    validate_coin_config(cfg, t);
    for (int i = 1; i <= steps; ++i) {
        coin_unchecked(state, t, cfg);
        shift_unchecked(state, t);
        if (hook) hook(i, state);
    }
}

std::vector<double> position_distribution(const WalkerState& state,
                                          const ArcTable& t) {
    check_dimension(state, t);
    std::vector<double> p(t.vertex_count(), 0.0);
    for (int v = 0; v < t.vertex_count(); ++v) {
        double s = 0.0;
        for (int id = t.slice_begin(v); id < t.slice_end(v); ++id)
            s += std::norm(state.amps[id]);
        p[v] = s;
    }
    return p;
}

std::vector<double> spreading_probe(const Graph& g, const std::vector<int>& dims,
                                    double loop_weight, int t_max) {
    if (dims.size() != 2)
        throw std::invalid_argument("spreading probe runs on 2D lattices");
    if (dims[0] % 2 == 0 || dims[1] % 2 == 0)
        throw std::invalid_argument("no center vertex: lattice dims must be odd");
    long long n = static_cast<long long>(dims[0]) * dims[1];
    if (n != g.vertex_count())
        throw std::invalid_argument("dims do not match graph vertex count");
    if (t_max < 0) throw std::invalid_argument("step count must be >= 0");

    const ArcTable table(g);
    CoinConfig cfg = CoinConfig::grover_loop_uniform(g.vertex_count(), loop_weight);
    validate_coin_config(cfg, table);

    const int center = (dims[0] / 2) * dims[1] + dims[1] / 2;
    if (table.degree(center) != 4)
        throw std::invalid_argument("center vertex must have four neighbors");

    WalkerState state(table.arc_count());
    for (int id = table.slice_begin(center);
         id < table.slice_begin(center) + table.degree(center); ++id)
        state.amps[id] = 0.5;  // loop direction excluded from the start state

    std::vector<double> trace(t_max + 1);
    trace[0] = 1.0;
    run(state, table, cfg, t_max, [&](int s, const WalkerState& st) {
        double p = 0.0;
        for (int id = table.slice_begin(center); id < table.slice_end(center); ++id)
            p += std::norm(st.amps[id]);
        trace[s] = p;
    });
    return trace;
}

}  // namespace qwalk
