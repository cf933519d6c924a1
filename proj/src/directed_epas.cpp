#include "steiner/directed_epas.hpp"

#include "steiner/exact_fpt.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace steiner {

namespace {

void require_unit_directed(const Graph& g, const TerminalSpec& spec) {
    if (!g.directed() || spec.kind != TerminalSpec::Kind::tree || !spec.root)
        throw input_error("expected a rooted directed tree instance");
    for (const Edge& e : g.edges())
        if (e.w != 1)
            throw input_error(
                "weighted directed instances are not supported: approximating weighted "
                "Directed Steiner Tree within any function of p is W[1]-hard");
}

}  // namespace

bool ExtendedNeighborhood::contains(int v) const {
    return std::binary_search(members.begin(), members.end(), v);
}

ExtendedNeighborhood extended_neighborhood(const Graph& g, const TerminalSpec& spec, int v,
                                           int k) {
    if (!g.alive(v)) throw input_error("unknown vertex " + std::to_string(v));
    if (k < 0) throw input_error("neighborhood budget must be non-negative");
    if (!g.directed()) throw input_error("extended neighborhoods are a directed notion");

    const int n = g.universe();
    const int inf = std::numeric_limits<int>::max();
    auto out = g.adjacency(true);
    auto arc_len = [&](const Edge& e) { return spec.is_terminal(e.v) ? 0 : 1; };

    // deque-based 0/1 shortest-path sweep
    std::vector<int> dist(n, inf);
    std::deque<int> deque;
    dist[v] = 0;
    deque.push_back(v);
    while (!deque.empty()) {
        int x = deque.front();
        deque.pop_front();
        for (int id : out[x]) {
            const Edge& e = g.edge(id);
            int cand = dist[x] + arc_len(e);
            if (cand < dist[e.v]) {
                dist[e.v] = cand;
                if (arc_len(e) == 0)
                    deque.push_front(e.v);
                else
                    deque.push_back(e.v);
            }
        }
    }

    ExtendedNeighborhood result;
    result.source = v;
    result.budget = k;
    for (int u = 0; u < n; u++)
        if (dist[u] != inf && dist[u] <= k) result.members.push_back(u);
    for (int u : result.members) result.steiner_distance[u] = dist[u];

    // witness arcs: hop-minimal BFS over tight arcs, ascending arc ids
    std::vector<int> hops(n, inf);
    hops[v] = 0;
    std::deque<int> queue{v};
    std::vector<int> pred_arc(n, -1);
    while (!queue.empty()) {
        int x = queue.front();
        queue.pop_front();
        for (int id : out[x]) {
            const Edge& e = g.edge(id);
            if (dist[e.v] != dist[x] + arc_len(e)) continue;
            if (hops[x] + 1 < hops[e.v]) {
                hops[e.v] = hops[x] + 1;
                pred_arc[e.v] = id;
                queue.push_back(e.v);
            }
        }
    }
    for (int u : result.members)
        if (u != v && pred_arc[u] >= 0) result.witness_arc[u] = pred_arc[u];
    return result;
}

std::vector<int> witness_path(const Graph& g, const ExtendedNeighborhood& nbhd, int target) {
    std::vector<int> arcs;
    int cur = target;
    while (cur != nbhd.source) {
        int arc = nbhd.witness_arc.at(cur);
        arcs.push_back(arc);
        cur = g.edge(arc).u;
    }
    std::reverse(arcs.begin(), arcs.end());
    return arcs;
}

namespace {

// DFS arborescence of the given arc set, rooted at `root`; ascending arc ids.
std::vector<int> dfs_arborescence(const Graph& g, const std::set<int>& arcs, int root) {
    std::map<int, std::vector<int>> out;
    for (int id : arcs) out[g.edge(id).u].push_back(id);
    std::vector<int> kept;
    std::set<int> seen{root};
    std::vector<int> stack{root};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        auto it = out.find(v);
        if (it == out.end()) continue;
        for (int id : it->second) {
            int w = g.edge(id).v;
            if (seen.count(w)) continue;
            seen.insert(w);
            kept.push_back(id);
            stack.push_back(w);
        }
    }
    std::sort(kept.begin(), kept.end());
    return kept;
}

}  // namespace

std::optional<RuleApplication> apply_r1(const Graph& g, const TerminalSpec& spec) {
    require_unit_directed(g, spec);
    int root = *spec.root;
    int pick = -1;
    for (int i = 0; i < static_cast<int>(g.edges().size()); i++) {
        const Edge& e = g.edges()[i];
        if (e.u == root && spec.is_terminal(e.v)) {
            pick = i;
            break;
        }
    }
    if (pick < 0) return std::nullopt;

    RuleApplication app;
    app.step.rule = DirectedStep::Rule::r1;
    app.step.lift_arcs = {g.edge(pick).orig};
    ContractionResult result = contract_edge_set(g, spec, {pick});
    for (int v : {g.edge(pick).u, g.edge(pick).v})
        if (v != result.merged_rep) app.step.merges.emplace_back(v, result.merged_rep);
    app.instance = {std::move(result.graph), std::move(result.spec)};
    return app;
}

std::optional<RuleApplication> apply_r2(const Graph& g, const TerminalSpec& spec, int p,
                                        const Rational& epsilon) {
    require_unit_directed(g, spec);
    if (epsilon <= 0) throw input_error("epsilon must be positive");
    if (p < 0) throw input_error("p must be non-negative");
    int root = *spec.root;
    Rational threshold = Rational(p) / epsilon;

    ExtendedNeighborhood from_root = extended_neighborhood(g, spec, root, p);
    int best_s = -1, best_count = -1;
    ExtendedNeighborhood best_nbhd;
    for (int s : from_root.members) {
        if (spec.is_terminal(s)) continue;
        ExtendedNeighborhood nbhd = extended_neighborhood(g, spec, s, 0);
        int count = 0;
        for (int u : nbhd.members)
            if (u != root && spec.is_terminal(u)) count++;
        if (Rational(count) < threshold) continue;
        if (count > best_count) {
            best_count = count;
            best_s = s;
            best_nbhd = std::move(nbhd);
        }
    }
    if (best_s < 0) return std::nullopt;

    std::vector<int> path = witness_path(g, from_root, best_s);
    std::set<int> merged_vertices{root};
    for (int id : path) {
        merged_vertices.insert(g.edge(id).u);
        merged_vertices.insert(g.edge(id).v);
    }
    std::set<int> nbhd_set(best_nbhd.members.begin(), best_nbhd.members.end());
    merged_vertices.insert(nbhd_set.begin(), nbhd_set.end());

    // Q: the path plus the subgraph induced by N^0(s)
    std::set<int> q_arcs(path.begin(), path.end());
    for (int i = 0; i < static_cast<int>(g.edges().size()); i++) {
        const Edge& e = g.edges()[i];
        if (nbhd_set.count(e.u) && nbhd_set.count(e.v)) q_arcs.insert(i);
    }
    std::vector<int> arbo = dfs_arborescence(g, q_arcs, root);
    if (arbo.size() + 1 != merged_vertices.size())
        throw std::logic_error("R2 arborescence does not span the contracted subgraph");

    RuleApplication app;
    app.step.rule = DirectedStep::Rule::r2;
    app.step.chosen_steiner = best_s;
    for (int id : arbo) app.step.lift_arcs.push_back(g.edge(id).orig);
    for (int id : path) app.step.path_arcs.push_back(g.edge(id).orig);
    app.step.neighborhood = best_nbhd.members;
    for (int id : q_arcs) app.step.subgraph_arcs.push_back(g.edge(id).orig);
    std::sort(app.step.lift_arcs.begin(), app.step.lift_arcs.end());
    std::sort(app.step.subgraph_arcs.begin(), app.step.subgraph_arcs.end());

    ContractionResult result = contract_vertex_set(
        g, spec, std::vector<int>(merged_vertices.begin(), merged_vertices.end()));
    for (int v : merged_vertices)
        if (v != result.merged_rep) app.step.merges.emplace_back(v, result.merged_rep);
    app.instance = {std::move(result.graph), std::move(result.spec)};
    return app;
}

DirectedReduction reduce_directed(const Graph& g, const TerminalSpec& spec, int p,
                                  const Rational& epsilon) {
    require_unit_directed(g, spec);
    if (epsilon <= 0) throw input_error("epsilon must be positive");
    if (p < 0) throw input_error("p must be non-negative");

    DirectedReduction red;
    red.map = VertexMap(g.universe());
    red.terminal_bound = Rational(p) * p / epsilon;

    ExtendedNeighborhood reach = extended_neighborhood(g, spec, *spec.root, p);
    for (int t : spec.terminals)
        if (!reach.contains(t)) {
            red.certified_no = true;
            red.no_reason = "terminal " + std::to_string(t) +
                            " lies outside the p-extended neighborhood of the root: no "
                            "solution with at most " +
                            std::to_string(p) + " Steiner vertices exists";
            return red;
        }

    red.instance = {g, spec};
    for (;;) {
        if (auto app = apply_r1(red.instance.graph, red.instance.spec)) {
            for (auto [v, rep] : app->step.merges) red.map.merge_into(v, rep);
            red.steps.push_back(std::move(app->step));
            red.instance = std::move(app->instance);
            continue;
        }
        if (auto app = apply_r2(red.instance.graph, red.instance.spec, p, epsilon)) {
            for (auto [v, rep] : app->step.merges) red.map.merge_into(v, rep);
            red.steps.push_back(std::move(app->step));
            red.instance = std::move(app->instance);
            continue;
        }
        break;
    }

    // the proof of the size bound counts non-root terminals
    int residual = red.instance.spec.terminal_count() - 1;
    if (Rational(residual) > red.terminal_bound) {
        red.certified_no = true;
        red.no_reason = std::to_string(residual) +
                        " terminals remain after exhaustive reduction (bound " +
                        format_rational(red.terminal_bound) + "): no solution with at most " +
                        std::to_string(p) + " Steiner vertices exists";
    }
    return red;
}

std::vector<int> lift_directed_solution(const Graph& original, const TerminalSpec& original_spec,
                                        const DirectedReduction& red,
                                        const std::vector<int>& reduced_solution) {
    std::set<int> arcs(reduced_solution.begin(), reduced_solution.end());
    for (auto it = red.steps.rbegin(); it != red.steps.rend(); ++it)
        arcs.insert(it->lift_arcs.begin(), it->lift_arcs.end());
    std::vector<int> lifted(arcs.begin(), arcs.end());

    // structural check: a Steiner arborescence of the original instance
    std::map<int, int> indeg;
    std::set<int> touched;
    int root = *original_spec.root;
    for (int id : lifted) {
        const Edge& e = original.edge(id);
        indeg[e.v]++;
        touched.insert(e.u);
        touched.insert(e.v);
    }
    bool ok = indeg.count(root) == 0;
    for (int v : touched)
        if (v != root && indeg[v] != 1) ok = false;
    if (!check_feasible(original, original_spec, lifted)) ok = false;
    if (!lifted.empty() && touched.size() != lifted.size() + 1) ok = false;
    if (!ok) throw std::logic_error("lifted solution is not a Steiner arborescence");
    return lifted;
}

DirectedOutcome epas_directed(const Graph& g, const TerminalSpec& spec, int p,
                              const Rational& epsilon) {
    DirectedOutcome outcome;
    outcome.reduction = reduce_directed(g, spec, p, epsilon);
    if (outcome.reduction.certified_no) {
        outcome.certified_no = true;
        outcome.no_reason = outcome.reduction.no_reason;
        return outcome;
    }
    const Instance& reduced = outcome.reduction.instance;
    Solution tail = dreyfus_wagner_directed(reduced.graph, reduced.spec.terminals,
                                            *reduced.spec.root);
    std::vector<int> tail_orig;
    for (int id : tail.edges) tail_orig.push_back(reduced.graph.edge(id).orig);
    outcome.solution.edges = lift_directed_solution(g, spec, outcome.reduction, tail_orig);
    outcome.solution.cost = g.weight_of(outcome.solution.edges);
    return outcome;
}

}  // namespace steiner
