/*
 * qwalk — coined discrete-time quantum walks with adjustable self-loop
 * weights: spreading probes, spatial search, weight sweeps, scaling studies
 * and a self-verification battery. Every command emits deterministic CSV.
 *
 * Exit codes: 0 ok, 1 usage/configuration error, 2 verification failure,
 * 3 peak landed on the window boundary (trace too short to contain it).
 */
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qwalk/csv.hpp"
#include "qwalk/graph.hpp"
#include "qwalk/oracle.hpp"
#include "qwalk/search.hpp"
#include "qwalk/walk.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerifyFailed = 2;
constexpr int kExitWindowTruncated = 3;

struct RunSpec {
    std::string graph = "lattice2d";
    std::string dims_str;
    bool open_boundary = false;
    std::string edgelist_path;
    std::string loop_weight_str;     // number or "degree-centrality"
    std::string loop_weights_file;   // one weight per line, vertex order
    std::vector<int> targets;
    int steps = 0;                   // 0 = default window
    double n_from = 0.0, n_to = 2.0, n_step = 0.01;
    std::string sizes_str;
    std::string out_path;            // empty or "-" = stdout
    int threads = 0;
    unsigned long seed = 0;          // reserved; the pipeline is deterministic
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<int> parse_int_list(const std::string& text, const char* what) {
    // "20x20", "10,12,14" and "10:30:2" (inclusive range) all work.
    std::vector<int> out;
    auto colon = std::count(text.begin(), text.end(), ':');
    if (colon == 1 || colon == 2) {
        int from = 0, to = 0, step = 1;
        char c1 = 0, c2 = 0;
        std::istringstream ss(text);
        ss >> from >> c1 >> to;
        if (colon == 2) ss >> c2 >> step;
        if (!ss || ss.rdbuf()->in_avail() != 0 || c1 != ':' ||
            (colon == 2 && c2 != ':') || step <= 0 || to < from)
            throw UsageError(std::string("cannot parse ") + what + ": '" + text + "'");
        for (int v = from; v <= to; v += step) out.push_back(v);
        return out;
    }
    std::string token;
    for (char c : text + ",") {
        if (c == ',' || c == 'x' || c == 'X' || c == ' ') {
            if (token.empty()) continue;
            try {
                size_t used = 0;
                int v = std::stoi(token, &used);
                if (used != token.size()) throw std::invalid_argument(token);
                out.push_back(v);
            } catch (const std::exception&) {
                throw UsageError(std::string("cannot parse ") + what + ": '" +
                                 token + "'");
            }
            token.clear();
        } else {
            token += c;
        }
    }
    if (out.empty())
        throw UsageError(std::string("empty ") + what);
    return out;
}

enum class WeightSource { None, Scalar, DegreeCentrality, File };

WeightSource weight_source(const RunSpec& spec, double* scalar) {
    if (!spec.loop_weight_str.empty() && !spec.loop_weights_file.empty())
        throw UsageError("--loop-weight and --loop-weights are mutually exclusive");
    if (!spec.loop_weights_file.empty()) return WeightSource::File;
    if (spec.loop_weight_str.empty()) return WeightSource::None;
    if (spec.loop_weight_str == "degree-centrality")
        return WeightSource::DegreeCentrality;
    try {
        size_t used = 0;
        *scalar = std::stod(spec.loop_weight_str, &used);
        if (used != spec.loop_weight_str.size())
            throw std::invalid_argument(spec.loop_weight_str);
    } catch (const std::exception&) {
        throw UsageError("--loop-weight expects a number or 'degree-centrality'");
    }
    if (!(*scalar >= 0.0) || !std::isfinite(*scalar))
        throw UsageError("--loop-weight must be finite and >= 0");
    return WeightSource::Scalar;
}

qwalk::Graph build_graph(const RunSpec& spec, bool with_loop_slots) {
    if (spec.graph == "edgelist") {
        if (spec.edgelist_path.empty())
            throw UsageError("--graph edgelist requires --edgelist <file>");
        std::ifstream in(spec.edgelist_path);
        if (!in) throw UsageError("cannot open " + spec.edgelist_path);
        std::stringstream buf;
        buf << in.rdbuf();
        return qwalk::load_edge_list(buf.str());
    }
    if (spec.dims_str.empty()) throw UsageError("--dims is required");
    std::vector<int> dims = parse_int_list(spec.dims_str, "--dims");
    if (spec.graph == "complete") {
        if (dims.size() != 1)
            throw UsageError("--graph complete takes a single --dims value");
        return qwalk::build_complete(dims[0], with_loop_slots);
    }
    if (spec.graph == "lattice2d" || spec.graph == "lattice3d") {
        const size_t want = spec.graph == "lattice2d" ? 2 : 3;
        if (dims.size() != want)
            throw UsageError("--graph " + spec.graph + " needs " +
                             std::to_string(want) + " dims");
        return qwalk::build_lattice(dims, !spec.open_boundary, with_loop_slots);
    }
    throw UsageError("unknown --graph '" + spec.graph + "'");
}

std::vector<double> load_weights_file(const std::string& path, int vertex_count) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    std::vector<double> w;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string token;
        std::istringstream ss(line);
        if (!(ss >> token) || token[0] == '#') continue;
        try {
            size_t used = 0;
            const double value = std::stod(token, &used);
            if (used != token.size()) throw std::invalid_argument(token);
            w.push_back(value);
        } catch (const std::exception&) {
            throw UsageError(path + " line " + std::to_string(line_no) +
                             ": expected a weight, got '" + token + "'");
        }
    }
    if (static_cast<int>(w.size()) != vertex_count)
        throw UsageError(path + ": expected " + std::to_string(vertex_count) +
                         " weights, found " + std::to_string(w.size()));
    return w;
}

qwalk::CoinConfig make_coin(const RunSpec& spec, const qwalk::Graph& g,
                            std::vector<int> marked) {
    double scalar = 0.0;
    switch (weight_source(spec, &scalar)) {
        case WeightSource::None:
            return qwalk::CoinConfig::standard_grover(std::move(marked));
        case WeightSource::Scalar:
            return qwalk::CoinConfig::grover_loop_uniform(g.vertex_count(), scalar,
                                                          std::move(marked));
        case WeightSource::DegreeCentrality:
            return qwalk::CoinConfig::grover_loop(
                qwalk::degree_centrality_weights(g), std::move(marked));
        case WeightSource::File:
            return qwalk::CoinConfig::grover_loop(
                load_weights_file(spec.loop_weights_file, g.vertex_count()),
                std::move(marked));
    }
    throw UsageError("unreachable");
}

// CSV goes to --out (default stdout); summaries go to stderr so redirecting
// the CSV never mixes the two.
class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty() && path != "-") {
            file_.open(path);
            if (!file_) throw UsageError("cannot open output file " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

std::vector<int> resolve_targets(const RunSpec& spec, const qwalk::Graph& g) {
    std::vector<int> t = spec.targets.empty() ? std::vector<int>{0} : spec.targets;
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end()), t.end());
    for (int v : t)
        if (v < 0 || v >= g.vertex_count())
            throw UsageError("--target " + std::to_string(v) + " out of range");
    return t;
}

int cmd_spread(const RunSpec& spec) {
    if (spec.graph != "lattice2d")
        throw UsageError("spread runs on --graph lattice2d");
    double weight = 0.0;
    const WeightSource source = weight_source(spec, &weight);
    if (source != WeightSource::None && source != WeightSource::Scalar)
        throw UsageError("spread takes a scalar --loop-weight");
    const int steps = spec.steps > 0 ? spec.steps : 200;

    qwalk::Graph g = build_graph(spec, weight > 0.0);
    std::vector<int> dims = parse_int_list(spec.dims_str, "--dims");
    const auto trace = qwalk::spreading_probe(g, dims, weight, steps);

    Output out(spec.out_path);
    out.stream() << "step,probability\n";
    for (size_t t = 0; t < trace.size(); ++t)
        qwalk::csv_row(out.stream(), static_cast<int>(t), trace[t]);
    return kExitOk;
}

int cmd_search(const RunSpec& spec) {
    double scalar = 0.0;
    qwalk::Graph g = build_graph(spec, weight_source(spec, &scalar) !=
                                           WeightSource::None);
    qwalk::CoinConfig cfg = make_coin(spec, g, resolve_targets(spec, g));
    const qwalk::ArcTable table(g);
    const int t_max =
        spec.steps > 0 ? spec.steps : qwalk::default_search_window(g.vertex_count());

    const auto trace = qwalk::run_search(table, cfg, t_max);
    const auto peak = qwalk::find_first_peak(trace);

    Output out(spec.out_path);
    out.stream() << "step,probability\n";
    for (size_t t = 0; t < trace.size(); ++t)
        qwalk::csv_row(out.stream(), static_cast<int>(t), trace[t]);

    const bool truncated = peak.t_peak == t_max;
    std::cerr << "first peak: step=" << peak.t_peak
              << " probability=" << qwalk::format_double(peak.p_peak)
              << (truncated ? " (window-truncated)" : "") << "\n";
    return truncated ? kExitWindowTruncated : kExitOk;
}

int cmd_sweep(const RunSpec& spec) {
    if (!(spec.n_step > 0.0) && spec.n_from != spec.n_to)
        throw UsageError("--n-step must be > 0");
    if (spec.n_from < 0.0 || spec.n_to < spec.n_from)
        throw UsageError("need 0 <= --n-from <= --n-to");
    std::vector<double> grid;
    if (spec.n_from == spec.n_to) {
        grid.push_back(spec.n_from);
    } else {
        const int count =
            static_cast<int>(std::floor((spec.n_to - spec.n_from) / spec.n_step +
                                        1e-9)) + 1;
        grid.reserve(count);
        for (int i = 0; i < count; ++i) grid.push_back(spec.n_from + i * spec.n_step);
    }

    qwalk::Graph g = build_graph(spec, true);  // sweep varies the slot weight
    const auto targets = resolve_targets(spec, g);
    if (targets.size() != 1) throw UsageError("sweep takes a single --target");
    const int t_max =
        spec.steps > 0 ? spec.steps : qwalk::default_search_window(g.vertex_count());

    const auto rows = qwalk::weight_sweep(g, targets[0], grid, t_max, spec.threads);

    Output out(spec.out_path);
    out.stream() << "n,peak_probability,peak_step\n";
    bool truncated = false;
    const qwalk::WeightPeak* best = &rows[0];
    for (const auto& row : rows) {
        qwalk::csv_row(out.stream(), row.weight, row.peak.p_peak, row.peak.t_peak);
        truncated |= row.peak.t_peak == t_max;
        if (row.peak.p_peak > best->peak.p_peak) best = &row;
    }
    std::cerr << "best: n=" << qwalk::format_double(best->weight)
              << " probability=" << qwalk::format_double(best->peak.p_peak)
              << " step=" << best->peak.t_peak
              << (truncated ? " (some rows window-truncated)" : "") << "\n";
    return truncated ? kExitWindowTruncated : kExitOk;
}

int cmd_scaling(const RunSpec& spec) {
    qwalk::GraphFamily family;
    if (spec.graph == "lattice2d")
        family = qwalk::GraphFamily::Lattice2d;
    else if (spec.graph == "lattice3d")
        family = qwalk::GraphFamily::Lattice3d;
    else if (spec.graph == "complete")
        family = qwalk::GraphFamily::Complete;
    else
        throw UsageError("scaling supports complete|lattice2d|lattice3d");
    if (spec.sizes_str.empty()) throw UsageError("--sizes is required");
    const std::vector<int> sizes = parse_int_list(spec.sizes_str, "--sizes");

    double scalar = 0.0;
    qwalk::WeightRule rule;
    switch (weight_source(spec, &scalar)) {
        case WeightSource::None:
            rule = qwalk::WeightRule::Zero;
            break;
        case WeightSource::DegreeCentrality:
            rule = qwalk::WeightRule::DegreeCentrality;
            break;
        case WeightSource::Scalar:
            rule = qwalk::WeightRule::Fixed;
            break;
        default:
            throw UsageError("scaling takes --loop-weight, not --loop-weights");
    }
    std::function<int(int)> window;
    if (spec.steps > 0) window = [&spec](int) { return spec.steps; };

    const auto result =
        qwalk::scaling_study(family, sizes, rule, scalar, window, spec.threads);

    Output out(spec.out_path);
    out.stream() << "N,peak_probability,peak_step\n";
    bool truncated = false;
    for (const auto& p : result.points) {
        qwalk::csv_row(out.stream(), p.vertex_count, p.p_peak, p.t_peak);
        if (p.window_truncated) {
            truncated = true;
            std::cerr << "window-truncated: N=" << p.vertex_count << "\n";
        }
    }
    std::cerr << "fit exponent: " << qwalk::format_double(result.fit_exponent)
              << " (" << result.fitted_points << "/" << result.points.size()
              << " points)\n";
    return truncated ? kExitWindowTruncated : kExitOk;
}

// ---- verify ----------------------------------------------------------------

struct Check {
    std::string name;
    double deviation;
    double tolerance;
    bool passed() const { return deviation <= tolerance; }
};

qwalk::WalkerState random_state(const qwalk::ArcTable& t, std::mt19937& rng) {
    std::normal_distribution<double> gauss;
    qwalk::WalkerState state(t.arc_count());
    for (auto& a : state.amps) a = {gauss(rng), gauss(rng)};
    const double norm = state.norm();
    for (auto& a : state.amps) a /= norm;
    return state;
}

double max_component_diff(const qwalk::WalkerState& a, const qwalk::WalkerState& b) {
    double worst = 0.0;
    for (int i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::abs(a.amps[i] - b.amps[i]));
    return worst;
}

int cmd_verify() {
    using namespace qwalk;
    std::vector<Check> checks;
    std::mt19937 rng(20240811u);

    {  // norm drift over a long marked run with mixed weights
        Graph g = build_lattice({10, 10}, true, true);
        ArcTable table(g);
        std::uniform_real_distribution<double> uw(0.0, 2.0);
        std::vector<double> w(g.vertex_count());
        for (auto& x : w) x = uw(rng);
        CoinConfig cfg = CoinConfig::grover_loop(w, {0});
        WalkerState state = search_initial_state(table, cfg);
        double drift = 0.0;
        run(state, table, cfg, 10000, [&](int, const WalkerState& st) {
            drift = std::max(drift, std::abs(st.norm() - 1.0));
        });
        checks.push_back({"unitarity drift, 10x10 torus, 10000 steps", drift, 1e-10});
    }
    {  // involutions on an irregular open lattice with loops
        Graph g = build_lattice({4, 5}, false, true);
        ArcTable table(g);
        std::uniform_real_distribution<double> uw(0.0, 2.0);
        std::vector<double> w(g.vertex_count());
        for (auto& x : w) x = uw(rng);
        CoinConfig cfg = CoinConfig::grover_loop(w);
        WalkerState state = random_state(table, rng);
        WalkerState twice = state;
        apply_shift(twice, table);
        apply_shift(twice, table);
        checks.push_back(
            {"shift involution", max_component_diff(state, twice), 1e-12});
        twice = state;
        apply_coin(twice, table, cfg);
        apply_coin(twice, table, cfg);
        checks.push_back(
            {"unmarked coin involution", max_component_diff(state, twice), 1e-12});
    }
    {  // zero-weight Grover-loop coin equals the standard coin
        const Graph graphs[] = {
            build_complete(8, false),
            build_lattice({4, 5}, false, false),
            load_edge_list("0 1\n1 2\n2 3\n3 0\n0 2\n3 4\n4 5\n"),
        };
        double worst = 0.0;
        for (const Graph& g : graphs) {
            ArcTable table(g);
            WalkerState a = random_state(table, rng);
            WalkerState b = a;
            apply_coin(a, table, CoinConfig::standard_grover());
            apply_coin(b, table,
                       CoinConfig::grover_loop_uniform(g.vertex_count(), 0.0));
            worst = std::max(worst, max_component_diff(a, b));
        }
        checks.push_back({"Grover-loop(0) equals standard coin", worst, 1e-15});
    }
    {  // position marginal stays normalized along a search
        Graph g = build_lattice({5, 5}, true, true);
        ArcTable table(g);
        CoinConfig cfg = CoinConfig::grover_loop_uniform(25, 0.3, {0});
        WalkerState state = search_initial_state(table, cfg);
        double worst = 0.0;
        run(state, table, cfg, 200, [&](int, const WalkerState& st) {
            const auto p = position_distribution(st, table);
            double sum = 0.0;
            for (double x : p) sum += x;
            worst = std::max(worst, std::abs(sum - 1.0));
        });
        checks.push_back({"position marginal normalization", worst, 1e-10});
    }
    {  // engine vs dense oracle, loop-free and n = 1..3, plain and marked
        const struct {
            const char* name;
            Graph g;
        } bases[] = {
            {"5x5 torus", build_lattice({5, 5}, true, false)},
            {"K10", build_complete(10, false)},
        };
        for (const auto& base : bases) {
            for (int n = 0; n <= 3; ++n) {
                for (bool marked : {false, true}) {
                    const std::vector<int> m =
                        marked ? std::vector<int>{0} : std::vector<int>{};
                    const auto report = equivalence_check(base.g, n, m, 100);
                    std::ostringstream name;
                    name << "equivalence vs oracle, " << base.name << ", n=" << n
                         << (marked ? ", marked" : "");
                    checks.push_back({name.str(), report.overall(),
                                      n == 0 ? 1e-12 : 1e-10});
                }
            }
        }
    }

    bool all_ok = true;
    for (const Check& c : checks) {
        all_ok &= c.passed();
        std::printf("%s  %-46s max deviation %.3e (tolerance %.0e)\n",
                    c.passed() ? "PASS" : "FAIL", c.name.c_str(), c.deviation,
                    c.tolerance);
    }
    std::printf("%s: %zu checks, %zu failed\n", all_ok ? "OK" : "FAILED",
                checks.size(),
                static_cast<size_t>(std::count_if(
                    checks.begin(), checks.end(),
                    [](const Check& c) { return !c.passed(); })));
    return all_ok ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
    RunSpec spec;
    CLI::App app{"coined quantum walks with adjustable self-loop weights"};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "key=value config file with a [subcommand] section; "
                   "flags win on conflict (place before the subcommand)");
    app.add_option("--seed", spec.seed,
                   "reserved for future stochastic features; runs are deterministic");

    auto add_graph_opts = [&](CLI::App* cmd) {
        cmd->add_option("--graph", spec.graph,
                        "complete|lattice2d|lattice3d|edgelist")
            ->capture_default_str();
        cmd->add_option("--dims", spec.dims_str,
                        "lattice dims like 20x20, or N for complete");
        cmd->add_flag("--open-boundary", spec.open_boundary,
                      "open lattice boundaries (default periodic)");
        cmd->add_option("--edgelist", spec.edgelist_path,
                        "edge list file for --graph edgelist");
        cmd->add_option("--loop-weight", spec.loop_weight_str,
                        "self-loop weight: a number or 'degree-centrality'");
        cmd->add_option("--loop-weights", spec.loop_weights_file,
                        "file with one per-vertex weight per line");
        cmd->add_option("--out", spec.out_path, "CSV output path (default stdout)");
    };

    CLI::App* spread = app.add_subcommand(
        "spread", "center-vertex probability of a free walk on an odd lattice");
    add_graph_opts(spread);
    spread->add_option("--steps", spec.steps, "steps to record (default 200)");

    CLI::App* search = app.add_subcommand(
        "search", "marked-vertex probability trace and first peak");
    add_graph_opts(search);
    search->add_option("--target", spec.targets, "marked vertex id (repeatable)");
    search->add_option("--steps", spec.steps,
                       "window length (default 10*ceil(sqrt(N)))");

    CLI::App* sweep = app.add_subcommand(
        "sweep", "first peak for each loop weight on a grid");
    add_graph_opts(sweep);
    sweep->add_option("--target", spec.targets, "marked vertex id");
    sweep->add_option("--steps", spec.steps, "per-run window");
    sweep->add_option("--n-from", spec.n_from, "grid start")->capture_default_str();
    sweep->add_option("--n-to", spec.n_to, "grid end")->capture_default_str();
    sweep->add_option("--n-step", spec.n_step, "grid step")->capture_default_str();
    sweep->add_option("--threads", spec.threads, "worker threads (0 = hardware)");

    CLI::App* scaling = app.add_subcommand(
        "scaling", "first peak and peak step across graph sizes, with a "
                   "log-log fit of peak step vs N");
    add_graph_opts(scaling);
    scaling->add_option("--sizes", spec.sizes_str,
                        "side lengths (complete: vertex counts): 10,12,14 or 10:30:2");
    scaling->add_option("--steps", spec.steps, "fixed window for every size");
    scaling->add_option("--threads", spec.threads, "worker threads (0 = hardware)");

    CLI::App* verify = app.add_subcommand(
        "verify", "run the kernel invariants and the dense-oracle equivalence "
                  "battery");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*spread) return cmd_spread(spec);
        if (*search) return cmd_search(spec);
        if (*sweep) return cmd_sweep(spec);
        if (*scaling) return cmd_scaling(spec);
        if (*verify) return cmd_verify();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
