#include "steiner/kernelizer.hpp"

#include "steiner/exact_fpt.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

namespace steiner {

Instance st_to_sf(const Graph& g, const std::vector<int>& terminals, bool steiner_free) {
    std::vector<int> R = terminals;
    std::sort(R.begin(), R.end());
    R.erase(std::unique(R.begin(), R.end()), R.end());
    if (R.empty()) throw input_error("terminal set must be non-empty");
    for (int t : R)
        if (!g.alive(t)) throw input_error("terminal is not a vertex of the graph");
    if (g.directed()) throw input_error("st_to_sf expects an undirected graph");

    int root = R.front();
    std::vector<std::pair<int, int>> pairs;
    for (int v : R)
        if (v != root) pairs.emplace_back(v, root);

    if (!steiner_free) return {g, TerminalSpec::make_forest(pairs)};

    // twin every Steiner vertex through a zero-cost edge
    std::vector<Edge> edges = g.edges();
    int next = g.universe();
    std::set<int> term_set(R.begin(), R.end());
    for (int v : g.alive_vertices()) {
        if (term_set.count(v)) continue;
        int twin = next++;
        edges.push_back({v, twin, Rational(0), -1});
        pairs.emplace_back(v, twin);
    }
    // dead original ids stay dead in the widened universe
    std::vector<char> alive(next, 1);
    for (int v = 0; v < g.universe(); v++)
        if (!g.alive(v)) alive[v] = 0;
    Graph widened = Graph::from_parts(next, false, std::move(alive), std::move(edges));
    std::vector<Edge> stamped = widened.edges();
    for (int i = 0; i < static_cast<int>(stamped.size()); i++) stamped[i].orig = i;
    std::vector<char> alive2(next, 1);
    for (int v = 0; v < g.universe(); v++)
        if (!g.alive(v)) alive2[v] = 0;
    return {Graph::from_parts(next, false, std::move(alive2), std::move(stamped)),
            TerminalSpec::make_forest(pairs)};
}

namespace {

struct ShortestPaths {
    std::vector<Rational> dist;
    std::vector<char> reached;
    std::vector<int> pred_edge;
};

ShortestPaths dijkstra(const Graph& g, int source) {
    const int n = g.universe();
    ShortestPaths sp{std::vector<Rational>(n, Rational(0)), std::vector<char>(n, 0),
                     std::vector<int>(n, -1)};
    auto adj = g.adjacency();
    using Item = std::pair<Rational, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    sp.reached[source] = 1;
    queue.emplace(Rational(0), source);
    std::vector<char> settled(n, 0);
    while (!queue.empty()) {
        auto [d, x] = queue.top();
        queue.pop();
        if (settled[x] || d != sp.dist[x]) continue;
        settled[x] = 1;
        for (int id : adj[x]) {
            const Edge& e = g.edge(id);
            int other = e.u == x ? e.v : e.u;
            Rational cand = d + e.w;
            if (!sp.reached[other] || cand < sp.dist[other]) {
                sp.reached[other] = 1;
                sp.dist[other] = cand;
                sp.pred_edge[other] = id;
                queue.emplace(cand, other);
            }
        }
    }
    return sp;
}

std::vector<int> walk_path(const Graph& g, const ShortestPaths& sp, int source, int target) {
    std::vector<int> ids;
    int cur = target;
    while (cur != source) {
        int id = sp.pred_edge[cur];
        ids.push_back(id);
        const Edge& e = g.edge(id);
        cur = e.u == cur ? e.v : e.u;
    }
    std::reverse(ids.begin(), ids.end());
    return ids;
}

// MST weight of the metric closure over `terminals`, per pair class; an
// upper bound on twice the forest optimum with free components.
Rational terminal_mst_estimate(const TerminalSpec& spec,
                               const std::map<int, ShortestPaths>& from_terminal) {
    auto terminals = spec.terminal_vertices();
    if (terminals.size() < 2) return Rational(0);
    // classes: tree kind is one class; forest classes from pair connectivity
    std::map<int, int> class_of;
    if (spec.kind == TerminalSpec::Kind::tree) {
        for (int t : terminals) class_of[t] = 0;
    } else {
        VertexMap classes(1 + *std::max_element(terminals.begin(), terminals.end()));
        for (auto [s, t] : spec.pairs) classes.merge_into(s, t);
        for (int t : terminals) class_of[t] = classes.resolve(t);
    }
    std::map<int, std::vector<int>> members;
    for (int t : terminals) members[class_of[t]].push_back(t);

    Rational total = 0;
    for (auto& [cls, verts] : members) {
        // Prim over the closure distances
        std::set<int> in_tree{verts.front()};
        while (in_tree.size() < verts.size()) {
            Rational best;
            int pick = -1;
            for (int u : in_tree)
                for (int v : verts) {
                    if (in_tree.count(v)) continue;
                    const ShortestPaths& sp = from_terminal.at(u);
                    if (!sp.reached[v]) continue;
                    if (pick < 0 || sp.dist[v] < best) {
                        best = sp.dist[v];
                        pick = v;
                    }
                }
            if (pick < 0) throw infeasible_error("terminals of one pair class are disconnected");
            total += best;
            in_tree.insert(pick);
        }
    }
    return total;
}

Rational power_of_two_at_most(const Rational& x) {
    // largest 2^k <= x (k may be negative)
    Rational step(1);
    while (step > x) step /= 2;
    while (step * 2 <= x) step *= 2;
    return step;
}

}  // namespace

KernelInstance subset_union_kernel(const Graph& g, const TerminalSpec& spec, int subset_size,
                                   const Rational& round_eps) {
    if (subset_size < 2) throw input_error("subset size must be at least 2");
    if (round_eps < 0) throw input_error("rounding epsilon must be non-negative");
    if (g.directed()) throw input_error("no directed kernel exists; kernelize undirected instances");
    auto terminals = spec.terminal_vertices();
    const int r = static_cast<int>(terminals.size());
    if (r < 2) throw input_error("kernelization needs at least two terminals");
    if (r > 16) throw input_error("terminal count too large for subset enumeration (cap 16)");
    const int k_cap = std::min(subset_size, r);
    BigInt subsets = 0, choose = 1;
    for (int k = 1; k <= k_cap; k++) {
        choose = choose * (r - k + 1) / k;
        if (k >= 2) subsets += choose;
    }
    if (subsets > 4096)
        throw input_error("subset budget exceeded: " + subsets.str() +
                          " subset solves needed (cap 4096); lower the subset size");

    // distances from every terminal, for the pruning budget
    std::map<int, ShortestPaths> from_terminal;
    for (int t : terminals) from_terminal.emplace(t, dijkstra(g, t));
    Rational estimate = terminal_mst_estimate(spec, from_terminal);

    // far-vertex pruning: anything farther than the estimate from every
    // terminal can sit in no optimal solution
    std::vector<char> keep(g.universe(), 0);
    for (int v : g.alive_vertices()) {
        for (int t : terminals) {
            const ShortestPaths& sp = from_terminal.at(t);
            if (sp.reached[v] && sp.dist[v] <= estimate) {
                keep[v] = 1;
                break;
            }
        }
    }
    std::vector<Edge> kept_edges;
    for (const Edge& e : g.edges())
        if (keep[e.u] && keep[e.v]) kept_edges.push_back(e);
    Graph pruned = Graph::from_parts(g.universe(), false, keep, std::move(kept_edges));

    // metric closure of what remains
    std::map<int, ShortestPaths> closure;
    for (int v : pruned.alive_vertices()) closure.emplace(v, dijkstra(pruned, v));

    // one exact tree per terminal subset, solved in the closure
    std::map<std::pair<int, int>, int> kernel_edge_index;
    std::vector<Edge> kernel_edges;
    std::vector<std::vector<int>> provenance;
    std::vector<Rational> true_weight;
    std::set<int> kernel_vertices(terminals.begin(), terminals.end());

    std::vector<int> pruned_alive = pruned.alive_vertices();
    std::vector<Edge> closure_edges;
    for (std::size_t i = 0; i < pruned_alive.size(); i++)
        for (std::size_t j = i + 1; j < pruned_alive.size(); j++) {
            int u = pruned_alive[i], v = pruned_alive[j];
            const ShortestPaths& sp = closure.at(u);
            if (!sp.reached[v]) continue;
            closure_edges.push_back({u, v, sp.dist[v], static_cast<int>(closure_edges.size())});
        }
    std::vector<char> pruned_alive_flags(g.universe(), 0);
    for (int v : pruned_alive) pruned_alive_flags[v] = 1;
    Graph closure_graph =
        Graph::from_parts(g.universe(), false, pruned_alive_flags, closure_edges);

    auto add_kernel_edge = [&](const Edge& closure_edge) {
        auto key = std::make_pair(closure_edge.u, closure_edge.v);
        if (kernel_edge_index.count(key)) return;
        kernel_edge_index[key] = static_cast<int>(kernel_edges.size());
        Edge e = closure_edge;
        e.orig = static_cast<int>(kernel_edges.size());
        kernel_edges.push_back(e);
        const ShortestPaths& sp = closure.at(closure_edge.u);
        std::vector<int> path;
        for (int id : walk_path(pruned, sp, closure_edge.u, closure_edge.v))
            path.push_back(pruned.edge(id).orig);
        provenance.push_back(std::move(path));
        true_weight.push_back(closure_edge.w);
        kernel_vertices.insert(closure_edge.u);
        kernel_vertices.insert(closure_edge.v);
    };

    // enumerate subsets of sizes 2..k_cap
    std::vector<int> pick;
    auto solve_subset = [&](const std::vector<int>& subset) {
        try {
            Solution tree = dreyfus_wagner(closure_graph, subset);
            for (int id : tree.edges) add_kernel_edge(closure_graph.edge(id));
        } catch (const infeasible_error&) {
            // disconnected subset: nothing to contribute
        }
    };
    auto rec = [&](auto&& self, int from, int want) -> void {
        if (want == 0) {
            solve_subset(pick);
            return;
        }
        for (int i = from; i <= r - want; i++) {
            pick.push_back(terminals[i]);
            self(self, i + 1, want - 1);
            pick.pop_back();
        }
    };
    for (int size = 2; size <= k_cap; size++) rec(rec, 0, size);

    KernelInstance kernel;
    kernel.subset_size = subset_size;
    kernel.cost_estimate = estimate;
    kernel.provenance = std::move(provenance);
    kernel.true_weight = std::move(true_weight);
    kernel.kept_vertices.assign(kernel_vertices.begin(), kernel_vertices.end());

    kernel.grid_step = 0;
    if (round_eps > 0 && estimate > 0) {
        kernel.grid_step = power_of_two_at_most(round_eps * estimate / (4 * r));
        for (Edge& e : kernel_edges)
            if (e.w != 0) e.w = rational_ceil(e.w / kernel.grid_step) * kernel.grid_step;
    }

    std::vector<char> alive(g.universe(), 0);
    for (int v : kernel.kept_vertices) alive[v] = 1;
    Graph built = Graph::from_parts(g.universe(), false, alive, kernel_edges);
    // construction canonicalizes edge order; realign provenance with it
    if (built.edges().size() != kernel.provenance.size())
        throw std::logic_error("kernel provenance misaligned");
    std::vector<Edge> stamped = built.edges();
    std::vector<std::vector<int>> provenance_sorted;
    std::vector<Rational> true_weight_sorted;
    for (int i = 0; i < static_cast<int>(stamped.size()); i++) {
        provenance_sorted.push_back(std::move(kernel.provenance[stamped[i].orig]));
        true_weight_sorted.push_back(kernel.true_weight[stamped[i].orig]);
        stamped[i].orig = i;
    }
    kernel.provenance = std::move(provenance_sorted);
    kernel.true_weight = std::move(true_weight_sorted);
    kernel.instance = {Graph::from_parts(g.universe(), false, std::move(alive), std::move(stamped)),
                       spec};
    return kernel;
}

std::vector<int> lift_kernel_solution(const Graph& original, const TerminalSpec& original_spec,
                                      const KernelInstance& kernel,
                                      const std::vector<int>& kernel_solution) {
    if (!check_feasible(kernel.instance.graph, kernel.instance.spec, kernel_solution))
        throw input_error("solution is infeasible in the kernel");
    std::set<int> expanded;
    Rational kernel_cost = 0;
    for (int id : kernel_solution) {
        const auto& path = kernel.provenance.at(id);
        expanded.insert(path.begin(), path.end());
        kernel_cost += kernel.instance.graph.edge(id).w;
    }
    std::vector<int> lifted(expanded.begin(), expanded.end());
    if (!check_feasible(original, original_spec, lifted))
        throw std::logic_error("lifted kernel solution is infeasible in the original instance");
    if (original.weight_of(lifted) > kernel_cost)
        throw std::logic_error("lifted kernel solution exceeds the kernel cost");
    return lifted;
}

}  // namespace steiner
