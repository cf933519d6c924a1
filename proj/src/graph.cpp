#include "steiner/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>

namespace steiner {

VertexMap::VertexMap(int n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
}

int VertexMap::resolve(int v) const {
    int r = v;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[v] != r) {
        int next = parent_[v];
        parent_[v] = r;
        v = next;
    }
    return r;
}

void VertexMap::merge_into(int v, int rep) {
    int a = resolve(v), b = resolve(rep);
    if (a != b) parent_[a] = b;
}

void VertexMap::absorb(const VertexMap& delta) {
    for (int v = 0; v < delta.size(); v++) {
        int r = delta.resolve(v);
        if (r != v) merge_into(v, r);
    }
}

TerminalSpec TerminalSpec::make_tree(std::vector<int> terminals, std::optional<int> root) {
    std::sort(terminals.begin(), terminals.end());
    terminals.erase(std::unique(terminals.begin(), terminals.end()), terminals.end());
    TerminalSpec spec;
    spec.kind = Kind::tree;
    spec.terminals = std::move(terminals);
    spec.root = root;
    if (root && !std::binary_search(spec.terminals.begin(), spec.terminals.end(), *root))
        throw input_error("root must be a terminal");
    return spec;
}

TerminalSpec TerminalSpec::make_forest(std::vector<std::pair<int, int>> pairs) {
    std::vector<std::pair<int, int>> normalized;
    normalized.reserve(pairs.size());
    for (auto [s, t] : pairs) {
        if (s == t) continue; // already connected
        normalized.emplace_back(std::min(s, t), std::max(s, t));
    }
    std::sort(normalized.begin(), normalized.end());
    normalized.erase(std::unique(normalized.begin(), normalized.end()), normalized.end());
    TerminalSpec spec;
    spec.kind = Kind::forest;
    spec.pairs = std::move(normalized);
    return spec;
}

bool TerminalSpec::is_terminal(int v) const {
    if (kind == Kind::tree)
        return std::binary_search(terminals.begin(), terminals.end(), v);
    for (auto [s, t] : pairs)
        if (s == v || t == v) return true;
    return false;
}

std::vector<int> TerminalSpec::terminal_vertices() const {
    if (kind == Kind::tree) return terminals;
    std::vector<int> out;
    out.reserve(pairs.size() * 2);
    for (auto [s, t] : pairs) {
        out.push_back(s);
        out.push_back(t);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool operator==(const TerminalSpec& a, const TerminalSpec& b) {
    return a.kind == b.kind && a.terminals == b.terminals && a.root == b.root && a.pairs == b.pairs;
}

Graph::Graph(int n, bool directed, std::vector<Edge> edges)
    : n_(n), directed_(directed), alive_(n, 1), edges_(std::move(edges)) {
    simplify();
}

Graph Graph::root_instance(int n, bool directed, std::vector<Edge> edges) {
    Graph g(n, directed, std::move(edges));
    for (int i = 0; i < static_cast<int>(g.edges_.size()); i++) g.edges_[i].orig = i;
    return g;
}

Graph Graph::from_parts(int n, bool directed, std::vector<char> alive, std::vector<Edge> edges) {
    Graph g;
    g.n_ = n;
    g.directed_ = directed;
    g.alive_ = std::move(alive);
    g.edges_ = std::move(edges);
    g.simplify();
    return g;
}

void Graph::simplify() {
    for (const Edge& e : edges_) {
        if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_ || !alive_[e.u] || !alive_[e.v])
            throw input_error("edge endpoint outside the alive vertex set");
        if (e.w < 0) throw input_error("negative edge weight");
    }
    // Keep the lightest edge per (ordered or unordered) endpoint pair,
    // breaking ties by lowest provenance id.
    std::map<std::pair<int, int>, int> best;
    for (int i = 0; i < static_cast<int>(edges_.size()); i++) {
        const Edge& e = edges_[i];
        if (e.u == e.v) continue;
        std::pair<int, int> key = directed_ ? std::make_pair(e.u, e.v)
                                            : std::make_pair(std::min(e.u, e.v), std::max(e.u, e.v));
        auto it = best.find(key);
        if (it == best.end()) {
            best.emplace(key, i);
        } else {
            const Edge& cur = edges_[it->second];
            if (e.w < cur.w || (e.w == cur.w && e.orig < cur.orig)) it->second = i;
        }
    }
    std::vector<Edge> kept;
    kept.reserve(best.size());
    for (auto& [key, idx] : best) {
        Edge e = edges_[idx];
        if (!directed_ && e.u > e.v) std::swap(e.u, e.v);
        kept.push_back(std::move(e));
    }
    edges_ = std::move(kept);
}

int Graph::vertex_count() const {
    return static_cast<int>(std::count(alive_.begin(), alive_.end(), 1));
}

std::vector<int> Graph::alive_vertices() const {
    std::vector<int> out;
    for (int v = 0; v < n_; v++)
        if (alive_[v]) out.push_back(v);
    return out;
}

const Edge& Graph::edge(int id) const {
    if (id < 0 || id >= static_cast<int>(edges_.size()))
        throw input_error("unknown edge id " + std::to_string(id));
    return edges_[id];
}

Rational Graph::weight_of(const std::vector<int>& edge_ids) const {
    Rational total = 0;
    for (int id : edge_ids) total += edge(id).w;
    return total;
}

std::vector<std::vector<int>> Graph::adjacency(bool out) const {
    std::vector<std::vector<int>> adj(n_);
    for (int i = 0; i < static_cast<int>(edges_.size()); i++) {
        const Edge& e = edges_[i];
        if (directed_) {
            if (out)
                adj[e.u].push_back(i);
            else
                adj[e.v].push_back(i);
        } else {
            adj[e.u].push_back(i);
            adj[e.v].push_back(i);
        }
    }
    return adj;
}

bool structurally_equal(const Graph& a, const Graph& b) {
    if (a.directed() != b.directed() || a.alive_vertices() != b.alive_vertices()) return false;
    auto key = [](const Graph& g) {
        std::vector<std::tuple<int, int, Rational>> out;
        for (const Edge& e : g.edges()) out.emplace_back(e.u, e.v, e.w);
        std::sort(out.begin(), out.end());
        return out;
    };
    return key(a) == key(b);
}

namespace {

TerminalSpec rewrite_spec(const TerminalSpec& spec, const VertexMap& delta) {
    if (spec.kind == TerminalSpec::Kind::tree) {
        std::vector<int> terminals;
        terminals.reserve(spec.terminals.size());
        for (int t : spec.terminals) terminals.push_back(delta.resolve(t));
        std::optional<int> root;
        if (spec.root) root = delta.resolve(*spec.root);
        return TerminalSpec::make_tree(std::move(terminals), root);
    }
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(spec.pairs.size());
    for (auto [s, t] : spec.pairs) pairs.emplace_back(delta.resolve(s), delta.resolve(t));
    return TerminalSpec::make_forest(std::move(pairs));
}

ContractionResult contract_merged(const Graph& g, const TerminalSpec& spec,
                                  const std::vector<int>& merged_vertices) {
    int rep = *std::min_element(merged_vertices.begin(), merged_vertices.end());
    VertexMap delta(g.universe());
    for (int v : merged_vertices) delta.merge_into(v, rep);

    std::vector<char> alive(g.universe(), 0);
    for (int v : g.alive_vertices()) alive[v] = 1;
    for (int v : merged_vertices) alive[v] = 0;
    alive[rep] = 1;

    std::vector<Edge> edges;
    edges.reserve(g.edges().size());
    for (const Edge& e : g.edges()) {
        Edge moved = e;
        moved.u = delta.resolve(e.u);
        moved.v = delta.resolve(e.v);
        edges.push_back(std::move(moved));
    }

    ContractionResult result;
    result.graph = Graph::from_parts(g.universe(), g.directed(), std::move(alive), std::move(edges));
    result.spec = rewrite_spec(spec, delta);
    result.delta = delta;
    result.merged_rep = rep;
    return result;
}

// Weak connectivity of a vertex set given the incident edge list.
bool weakly_connected(const std::vector<int>& vertices, const std::vector<std::pair<int, int>>& links) {
    if (vertices.empty()) return false;
    std::map<int, int> index;
    for (int i = 0; i < static_cast<int>(vertices.size()); i++) index[vertices[i]] = i;
    std::vector<int> parent(vertices.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (auto [a, b] : links) {
        auto ia = index.find(a), ib = index.find(b);
        if (ia == index.end() || ib == index.end()) continue;
        parent[find(ia->second)] = find(ib->second);
    }
    int root = find(0);
    for (int i = 1; i < static_cast<int>(vertices.size()); i++)
        if (find(i) != root) return false;
    return true;
}

}  // namespace

ContractionResult contract_edge_set(const Graph& g, const TerminalSpec& spec,
                                    const std::vector<int>& edge_ids) {
    if (edge_ids.empty()) throw input_error("cannot contract an empty edge set");
    std::set<int> touched;
    std::vector<std::pair<int, int>> links;
    for (int id : edge_ids) {
        const Edge& e = g.edge(id);
        touched.insert(e.u);
        touched.insert(e.v);
        links.emplace_back(e.u, e.v);
    }
    std::vector<int> vertices(touched.begin(), touched.end());
    if (!weakly_connected(vertices, links))
        throw input_error("contracted edge set is not connected");
    return contract_merged(g, spec, vertices);
}

ContractionResult contract_vertex_set(const Graph& g, const TerminalSpec& spec,
                                      const std::vector<int>& vertices) {
    if (vertices.empty()) throw input_error("cannot contract an empty vertex set");
    for (int v : vertices)
        if (!g.alive(v)) throw input_error("contracted vertex is not alive");
    std::vector<int> sorted(vertices.begin(), vertices.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (sorted.size() > 1) {
        std::vector<std::pair<int, int>> links;
        for (const Edge& e : g.edges()) links.emplace_back(e.u, e.v);
        if (!weakly_connected(sorted, links))
            throw input_error("contracted vertex set is not connected");
    }
    return contract_merged(g, spec, sorted);
}

NormalizeResult normalize_weights(const Graph& g, const TerminalSpec& spec) {
    NormalizeResult result;
    result.graph = g;
    result.spec = spec;
    result.scale = 1;
    result.map = VertexMap(g.universe());

    // Contract away zero-weight edges, one connected component at a time.
    for (;;) {
        std::vector<int> zero;
        for (int i = 0; i < static_cast<int>(result.graph.edges().size()); i++)
            if (result.graph.edges()[i].w == 0) zero.push_back(i);
        if (zero.empty()) break;
        // Grow one component from the first zero edge.
        std::set<int> component{zero.front()};
        std::set<int> verts{result.graph.edge(zero.front()).u, result.graph.edge(zero.front()).v};
        bool grew = true;
        while (grew) {
            grew = false;
            for (int id : zero) {
                if (component.count(id)) continue;
                const Edge& e = result.graph.edge(id);
                if (verts.count(e.u) || verts.count(e.v)) {
                    component.insert(id);
                    verts.insert(e.u);
                    verts.insert(e.v);
                    grew = true;
                }
            }
        }
        for (int id : component) result.zero_edges.push_back(result.graph.edge(id).orig);
        ContractionResult step = contract_edge_set(
            result.graph, result.spec, std::vector<int>(component.begin(), component.end()));
        result.graph = std::move(step.graph);
        result.spec = std::move(step.spec);
        result.map.absorb(step.delta);
    }
    std::sort(result.zero_edges.begin(), result.zero_edges.end());

    if (result.graph.edges().empty()) return result;

    Rational w_min = result.graph.edges().front().w;
    for (const Edge& e : result.graph.edges()) w_min = std::min(w_min, e.w);
    if (w_min > 1) return result;

    result.scale = Rational(2) / w_min;
    std::vector<Edge> scaled = result.graph.edges();
    for (Edge& e : scaled) e.w *= result.scale;
    std::vector<char> alive(result.graph.universe(), 0);
    for (int v : result.graph.alive_vertices()) alive[v] = 1;
    result.graph = Graph::from_parts(result.graph.universe(), result.graph.directed(),
                                     std::move(alive), std::move(scaled));
    return result;
}

bool check_feasible(const Graph& g, const TerminalSpec& spec, const std::vector<int>& edge_ids) {
    for (int id : edge_ids) g.edge(id); // validates

    if (g.directed() && spec.kind == TerminalSpec::Kind::tree) {
        if (!spec.root) throw input_error("directed tree spec requires a root");
        std::vector<std::vector<int>> out(g.universe());
        for (int id : edge_ids) out[g.edge(id).u].push_back(g.edge(id).v);
        std::vector<char> seen(g.universe(), 0);
        std::queue<int> q;
        q.push(*spec.root);
        seen[*spec.root] = 1;
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int w : out[v])
                if (!seen[w]) {
                    seen[w] = 1;
                    q.push(w);
                }
        }
        for (int t : spec.terminals)
            if (!seen[t]) return false;
        return true;
    }

    VertexMap components(g.universe());
    for (int id : edge_ids) components.merge_into(g.edge(id).u, g.edge(id).v);
    if (spec.kind == TerminalSpec::Kind::forest) {
        for (auto [s, t] : spec.pairs)
            if (components.resolve(s) != components.resolve(t)) return false;
        return true;
    }
    if (spec.terminals.empty()) return true;
    int rep = components.resolve(spec.terminals.front());
    for (int t : spec.terminals)
        if (components.resolve(t) != rep) return false;
    return true;
}

int solution_components(const Graph& g, const std::vector<int>& edge_ids) {
    if (edge_ids.empty()) return 0;
    std::set<int> touched;
    VertexMap components(g.universe());
    for (int id : edge_ids) {
        const Edge& e = g.edge(id);
        touched.insert(e.u);
        touched.insert(e.v);
        components.merge_into(e.u, e.v);
    }
    std::set<int> reps;
    for (int v : touched) reps.insert(components.resolve(v));
    return static_cast<int>(reps.size());
}

int solution_steiner_count(const Graph& g, const TerminalSpec& spec,
                           const std::vector<int>& edge_ids) {
    std::set<int> touched;
    for (int id : edge_ids) {
        touched.insert(g.edge(id).u);
        touched.insert(g.edge(id).v);
    }
    int count = 0;
    for (int v : touched)
        if (!spec.is_terminal(v)) count++;
    return count;
}

}  // namespace steiner
