#pragma once

#include "steiner/rational.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace steiner {

// An edge (or arc when the owning graph is directed). `orig` is the index of
// the edge in the instance this graph descends from; it survives contraction
// and parallel-edge simplification, so solutions can always be expressed in
// original edge ids.
struct Edge {
    int u = -1;
    int v = -1;
    Rational w;
    int orig = -1;
};

// Merge-find map from original vertex ids to current representatives.
class VertexMap {
public:
    VertexMap() = default;
    explicit VertexMap(int n);

    int size() const { return static_cast<int>(parent_.size()); }
    int resolve(int v) const;
    void merge_into(int v, int rep);
    // Apply `delta` on top of this map: anything delta merges is merged here too.
    void absorb(const VertexMap& delta);

private:
    mutable std::vector<int> parent_;
};

struct TerminalSpec {
    enum class Kind { tree, forest };

    Kind kind = Kind::tree;
    std::vector<int> terminals;             // tree kind, sorted, unique
    std::optional<int> root;                // directed tree kind
    std::vector<std::pair<int, int>> pairs; // forest kind, (min,max), sorted, unique

    static TerminalSpec make_tree(std::vector<int> terminals, std::optional<int> root = {});
    // Pairs with equal endpoints are dropped; duplicates collapse.
    static TerminalSpec make_forest(std::vector<std::pair<int, int>> pairs);

    bool is_terminal(int v) const;
    // R for tree kind, the union of pair endpoints for forest kind. Sorted.
    std::vector<int> terminal_vertices() const;
    int terminal_count() const { return static_cast<int>(terminal_vertices().size()); }
};

bool operator==(const TerminalSpec& a, const TerminalSpec& b);

// Simple graph (at most one edge per vertex pair / arc per ordered pair, no
// loops); construction simplifies eagerly, keeping the lightest parallel.
// Vertices live in a fixed id universe 0..universe()-1 of which a subset is
// alive; contraction kills merged ids. Values are immutable once built.
class Graph {
public:
    Graph() = default;
    Graph(int n, bool directed, std::vector<Edge> edges);
    static Graph from_parts(int n, bool directed, std::vector<char> alive, std::vector<Edge> edges);
    // A graph that IS the instance of record: after simplification, edge
    // provenance is re-stamped to the edge's own position, so `orig` ids of
    // every derived graph index into this one's edge list.
    static Graph root_instance(int n, bool directed, std::vector<Edge> edges);

    int universe() const { return n_; }
    bool directed() const { return directed_; }
    bool alive(int v) const { return v >= 0 && v < n_ && alive_[v]; }
    int vertex_count() const;
    std::vector<int> alive_vertices() const;

    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(int id) const;
    Rational weight_of(const std::vector<int>& edge_ids) const;

    // Edge ids incident to each vertex; for directed graphs `out` selects
    // out-arcs (default) or in-arcs.
    std::vector<std::vector<int>> adjacency(bool out = true) const;

private:
    int n_ = 0;
    bool directed_ = false;
    std::vector<char> alive_;
    std::vector<Edge> edges_;

    void simplify();
};

// Structural equality: same orientation, alive set and edge list as
// (u, v, w) triples; provenance ids are ignored.
bool structurally_equal(const Graph& a, const Graph& b);

struct Instance {
    Graph graph;
    TerminalSpec spec;
};

struct Solution {
    std::vector<int> edges; // sorted edge ids into the owning instance
    Rational cost;
    bool guarantee_void = false;
};

struct ContractionResult {
    Graph graph;
    TerminalSpec spec;
    VertexMap delta;    // identity outside the merged set
    int merged_rep = -1;
};

// Merge all endpoints of `edge_ids` (which must form a connected subgraph)
// into their minimum id, dropping loops and keeping lightest parallels.
// Terminal bookkeeping: tree kind keeps the merged vertex terminal if any
// merged vertex was (and root if the root was merged); forest pairs are
// rewritten, pairs with both ends merged are deleted.
ContractionResult contract_edge_set(const Graph& g, const TerminalSpec& spec,
                                    const std::vector<int>& edge_ids);

// Same, for an explicit vertex set (must be weakly connected in g).
ContractionResult contract_vertex_set(const Graph& g, const TerminalSpec& spec,
                                      const std::vector<int>& vertices);

struct NormalizeResult {
    Graph graph;
    TerminalSpec spec;
    Rational scale;              // normalized weight = original weight * scale
    std::vector<int> zero_edges; // orig ids contracted away before scaling
    VertexMap map;               // original -> normalized vertex ids
};

// Contract zero-weight edges, then rescale so every weight is > 1
// (scale = 2/w_min, or 1 when all weights already exceed 1).
NormalizeResult normalize_weights(const Graph& g, const TerminalSpec& spec);

// Forest kind: every pair connected by the chosen edges. Tree kind: all
// terminals in one component (undirected) or reachable from the root
// (directed).
bool check_feasible(const Graph& g, const TerminalSpec& spec, const std::vector<int>& edge_ids);

// Connected components of the subgraph induced by the chosen edges (0 for an
// empty selection).
int solution_components(const Graph& g, const std::vector<int>& edge_ids);

// Non-terminal vertices touched by the chosen edges.
int solution_steiner_count(const Graph& g, const TerminalSpec& spec,
                           const std::vector<int>& edge_ids);

}  // namespace steiner
