#include "qwalk/graph.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace qwalk {

Graph::Graph(int vertex_count, std::vector<std::vector<int>> neighbors,
             std::vector<bool> has_loop)
    : vertex_count_(vertex_count),
      neighbors_(std::move(neighbors)),
      has_loop_(std::move(has_loop)) {
    validate();
}

void Graph::validate() const {
    if (vertex_count_ < 1)
        throw std::invalid_argument("graph needs at least one vertex");
    if (static_cast<int>(neighbors_.size()) != vertex_count_ ||
        static_cast<int>(has_loop_.size()) != vertex_count_)
        throw std::invalid_argument("neighbor/loop arrays must match vertex count");
    for (int j = 0; j < vertex_count_; ++j) {
        const auto& nb = neighbors_[j];
        if (!std::is_sorted(nb.begin(), nb.end()))
            throw std::invalid_argument("neighbor lists must be sorted");
        if (std::adjacent_find(nb.begin(), nb.end()) != nb.end())
            throw std::invalid_argument("duplicate neighbor entry");
        for (int k : nb) {
            if (k < 0 || k >= vertex_count_)
                throw std::invalid_argument("neighbor id out of range");
            if (k == j)
                throw std::invalid_argument(
                    "self-loops may not appear in neighbor lists");
            const auto& back = neighbors_[k];
            if (!std::binary_search(back.begin(), back.end(), j))
                throw std::invalid_argument("adjacency is not symmetric");
        }
        if (nb.empty() && !has_loop_[j])
            throw std::invalid_argument(
                "isolated loop-free vertex " + std::to_string(j));
    }
}

bool Graph::any_loop() const {
    return std::find(has_loop_.begin(), has_loop_.end(), true) != has_loop_.end();
}

int Graph::loop_slot_count() const {
    return static_cast<int>(std::count(has_loop_.begin(), has_loop_.end(), true));
}

Graph Graph::with_uniform_loops(bool with_loop) const {
    return Graph(vertex_count_, neighbors_,
                 std::vector<bool>(vertex_count_, with_loop));
}

Graph build_complete(int n, bool with_loop) {
    if (n < 2)
        throw std::invalid_argument("complete graph needs n >= 2");
    std::vector<std::vector<int>> nb(n);
    for (int j = 0; j < n; ++j) {
        nb[j].reserve(n - 1);
        for (int k = 0; k < n; ++k)
            if (k != j) nb[j].push_back(k);
    }
    return Graph(n, std::move(nb), std::vector<bool>(n, with_loop));
}

Graph build_lattice(const std::vector<int>& dims, bool periodic, bool with_loop) {
    const int d = static_cast<int>(dims.size());
    if (d != 2 && d != 3)
        throw std::invalid_argument("lattice dims must have length 2 or 3");
    const int min_dim = periodic ? 3 : 2;
    long long n = 1;
    for (int len : dims) {
        if (len < min_dim)
            throw std::invalid_argument(
                "lattice dimension " + std::to_string(len) + " below minimum " +
                std::to_string(min_dim));
        n *= len;
    }
    const int vertex_count = static_cast<int>(n);

    // Row-major index: last dimension varies fastest.
    std::vector<int> stride(d, 1);
    for (int a = d - 2; a >= 0; --a) stride[a] = stride[a + 1] * dims[a + 1];

    std::vector<std::vector<int>> nb(vertex_count);
    std::vector<int> coord(d);
    for (int v = 0; v < vertex_count; ++v) {
        int rem = v;
        for (int a = 0; a < d; ++a) {
            coord[a] = rem / stride[a];
            rem %= stride[a];
        }
        for (int a = 0; a < d; ++a) {
            for (int delta : {-1, +1}) {
                int c = coord[a] + delta;
                if (periodic) {
                    c = (c + dims[a]) % dims[a];
                } else if (c < 0 || c >= dims[a]) {
                    continue;
                }
                nb[v].push_back(v + (c - coord[a]) * stride[a]);
            }
        }
        std::sort(nb[v].begin(), nb[v].end());
    }
    return Graph(vertex_count, std::move(nb),
                 std::vector<bool>(vertex_count, with_loop));
}

namespace {

int parse_vertex_id(std::string_view token, int line_no) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw std::runtime_error("edge list line " + std::to_string(line_no) +
                                 ": not an integer: '" + std::string(token) + "'");
    if (value < 0)
        throw std::runtime_error("edge list line " + std::to_string(line_no) +
                                 ": negative vertex id");
    return value;
}

}  // namespace

Graph load_edge_list(std::string_view text) {
    std::vector<std::pair<int, int>> edges;
    std::vector<int> loop_vertices;
    int max_id = -1;

    int line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;

        std::istringstream ss{std::string(line)};
        std::string a, b, extra;
        if (!(ss >> a)) continue;           // blank line
        if (a[0] == '#') continue;          // comment
        if (!(ss >> b) || (ss >> extra))
            throw std::runtime_error("edge list line " + std::to_string(line_no) +
                                     ": expected exactly two vertex ids");
        int u = parse_vertex_id(a, line_no);
        int v = parse_vertex_id(b, line_no);
        max_id = std::max({max_id, u, v});
        if (u == v)
            loop_vertices.push_back(u);
        else
            edges.emplace_back(u, v);
    }
    if (max_id < 0)
        throw std::runtime_error("edge list contains no edges");

    const int n = max_id + 1;
    std::vector<std::set<int>> adj(n);
    for (auto [u, v] : edges) {
        adj[u].insert(v);
        adj[v].insert(u);  // symmetric closure; duplicates collapse
    }
    std::vector<std::vector<int>> nb(n);
    for (int j = 0; j < n; ++j) nb[j].assign(adj[j].begin(), adj[j].end());
    std::vector<bool> has_loop(n, false);
    for (int v : loop_vertices) has_loop[v] = true;
    return Graph(n, std::move(nb), std::move(has_loop));
}

ArcTable::ArcTable(const Graph& g) {
    const int n = g.vertex_count();
    slice_begin_.assign(n + 1, 0);
    loop_arc_.assign(n, -1);

    int total = 0;
    for (int j = 0; j < n; ++j) {
        slice_begin_[j] = total;
        total += g.degree(j) + (g.has_loop(j) ? 1 : 0);
    }
    slice_begin_[n] = total;

    arcs_.reserve(total);
    for (int j = 0; j < n; ++j) {
        for (int k : g.neighbors(j)) arcs_.push_back({j, k});
        if (g.has_loop(j)) {
            loop_arc_[j] = static_cast<int>(arcs_.size());
            arcs_.push_back({j, j});
        }
    }

    reverse_.resize(total);
    for (int id = 0; id < total; ++id) {
        const Arc& a = arcs_[id];
        reverse_[id] = a.is_loop() ? id : index_of(a.target, a.source);
    }
}

int ArcTable::degree(int v) const {
    return slice_end(v) - slice_begin(v) - (has_loop(v) ? 1 : 0);
}

int ArcTable::index_of(int source, int target) const {
    if (source < 0 || source >= vertex_count()) return -1;
    if (source == target) return loop_arc_[source];
    const int lo = slice_begin_[source];
    const int hi = lo + degree(source);
    auto first = arcs_.begin() + lo;
    auto last = arcs_.begin() + hi;
    auto it = std::lower_bound(first, last, target,
                               [](const Arc& a, int t) { return a.target < t; });
    if (it == last || it->target != target) return -1;
    return static_cast<int>(it - arcs_.begin());
}

}  // namespace qwalk
