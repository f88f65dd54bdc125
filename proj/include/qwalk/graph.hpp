/*
 * graph.hpp — undirected graphs with one optional self-loop slot per vertex,
 * plus the canonical directed-arc table that serves as the walker's basis.
 *
 * A coined walk lives on directed arcs |j,k>: one arc per ordered neighbor
 * pair, plus one arc (j,j) for each vertex that carries a loop slot. Graph
 * and ArcTable are immutable after construction and safe to share across
 * threads.
 */
#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace qwalk {

// Undirected graph. Neighbor lists are sorted, duplicate-free and symmetric;
// self-loops are never stored as neighbors, only as a per-vertex flag.
class Graph {
public:
    Graph(int vertex_count, std::vector<std::vector<int>> neighbors,
          std::vector<bool> has_loop);

    int vertex_count() const { return vertex_count_; }
    const std::vector<int>& neighbors(int v) const { return neighbors_[v]; }
    int degree(int v) const { return static_cast<int>(neighbors_[v].size()); }
    bool has_loop(int v) const { return has_loop_[v]; }
    bool any_loop() const;
    int loop_slot_count() const;

    // Same adjacency with a loop slot on every vertex (or on none).
    Graph with_uniform_loops(bool with_loop) const;

private:
    void validate() const;

    int vertex_count_;
    std::vector<std::vector<int>> neighbors_;
    std::vector<bool> has_loop_;
};

// Complete graph on n >= 2 vertices.
Graph build_complete(int n, bool with_loop);

// Periodic (torus) or open lattice, dims of length 2 or 3, vertices indexed
// row-major (last dimension fastest). Periodic lattices require every dim
// >= 3 so wrap-around edges never duplicate; open lattices require >= 2.
Graph build_lattice(const std::vector<int>& dims, bool periodic, bool with_loop);

// One edge "u v" per line, 0-based ids; "u u" marks a loop slot on u.
// Blank lines and lines starting with '#' are skipped; duplicates and
// reversed repeats collapse. Throws with the offending line number.
Graph load_edge_list(std::string_view text);

// Directed arc; target == source marks a self-loop arc.
struct Arc {
    int source;
    int target;
    bool is_loop() const { return source == target; }
    friend bool operator==(const Arc&, const Arc&) = default;
};

// Canonical arc indexing. Each vertex owns one contiguous slice of ids:
// neighbor arcs ascending by target, then the loop arc (if any) last.
// reverse() is the flip-flop pairing (j,k) <-> (k,j); loops are fixed points.
class ArcTable {
public:
    explicit ArcTable(const Graph& g);

    int arc_count() const { return static_cast<int>(arcs_.size()); }
    int vertex_count() const { return static_cast<int>(slice_begin_.size()) - 1; }

    const Arc& arc(int id) const { return arcs_[id]; }
    int slice_begin(int v) const { return slice_begin_[v]; }
    int slice_end(int v) const { return slice_begin_[v + 1]; }
    int degree(int v) const;              // non-loop arcs in v's slice
    bool has_loop(int v) const { return loop_arc_[v] >= 0; }
    int loop_arc(int v) const { return loop_arc_[v]; }  // arc id or -1
    int reverse(int arc_id) const { return reverse_[arc_id]; }

    // Id of arc (source, target), or -1 when absent.
    int index_of(int source, int target) const;

private:
    std::vector<Arc> arcs_;
    std::vector<int> slice_begin_;  // size N+1
    std::vector<int> loop_arc_;
    std::vector<int> reverse_;
};

}  // namespace qwalk
