#include "steiner/exact_fpt.hpp"

#include "steiner/star_contraction.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>

namespace steiner {

namespace {

struct BackPtr {
    enum Kind : std::uint8_t { seed, extend, merge };
    Kind kind = seed;
    int edge = -1;           // extend: edge walked
    int pred = -1;           // extend: vertex the tree was extended from
    std::uint32_t split = 0; // merge: one side of the split
};

struct DpState {
    std::vector<std::vector<Rational>> cost;   // [mask][vertex]
    std::vector<std::vector<char>> reached;
    std::vector<std::vector<BackPtr>> back;
};

// Multi-source Dijkstra sweep updating one mask layer in place. Directed
// graphs relax tails through their out-arcs (arborescence orientation).
void relax_layer(const Graph& g, std::vector<Rational>& cost, std::vector<char>& reached,
                 std::vector<BackPtr>& back) {
    const int n = g.universe();
    std::vector<std::vector<int>> touch(n); // edges that can relax a vertex once its partner settles
    for (int i = 0; i < static_cast<int>(g.edges().size()); i++) {
        const Edge& e = g.edges()[i];
        touch[e.v].push_back(i);
        if (!g.directed()) touch[e.u].push_back(i);
    }
    using Item = std::pair<Rational, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    std::vector<char> settled(n, 0);
    for (int v = 0; v < n; v++)
        if (reached[v]) queue.emplace(cost[v], v);
    while (!queue.empty()) {
        auto [d, x] = queue.top();
        queue.pop();
        if (settled[x] || d != cost[x]) continue;
        settled[x] = 1;
        for (int id : touch[x]) {
            const Edge& e = g.edges()[id];
            int other = e.v == x ? e.u : e.v;
            Rational cand = d + e.w;
            if (!reached[other] || cand < cost[other]) {
                reached[other] = 1;
                cost[other] = cand;
                back[other] = {BackPtr::extend, id, x, 0};
                queue.emplace(cand, other);
            }
        }
    }
}

void collect_witness(const DpState& dp, std::uint32_t mask, int v, std::set<int>& edges) {
    for (;;) {
        const BackPtr& bp = dp.back[mask][v];
        if (bp.kind == BackPtr::extend) {
            edges.insert(bp.edge);
            v = bp.pred;
        } else if (bp.kind == BackPtr::merge) {
            collect_witness(dp, bp.split, v, edges);
            mask ^= bp.split;
        } else {
            return;
        }
    }
}

// Extract the minimal clean tree/arborescence out of a witness edge set:
// spanning structure first, then iterated removal of non-terminal leaves.
std::vector<int> tidy_undirected(const Graph& g, const std::set<int>& witness,
                                 const std::vector<int>& terminals) {
    std::vector<int> ids(witness.begin(), witness.end());
    std::sort(ids.begin(), ids.end(), [&](int a, int b) {
        return std::make_pair(g.edge(a).w, a) < std::make_pair(g.edge(b).w, b);
    });
    VertexMap uf(g.universe());
    std::vector<int> kept;
    for (int id : ids) {
        const Edge& e = g.edge(id);
        if (uf.resolve(e.u) == uf.resolve(e.v)) continue;
        uf.merge_into(e.u, e.v);
        kept.push_back(id);
    }
    std::set<int> term(terminals.begin(), terminals.end());
    for (;;) {
        std::map<int, int> degree;
        for (int id : kept) {
            degree[g.edge(id).u]++;
            degree[g.edge(id).v]++;
        }
        bool removed = false;
        std::vector<int> next;
        for (int id : kept) {
            const Edge& e = g.edge(id);
            bool u_leaf = degree[e.u] == 1 && !term.count(e.u);
            bool v_leaf = degree[e.v] == 1 && !term.count(e.v);
            if (!removed && (u_leaf || v_leaf)) {
                removed = true;
                continue;
            }
            next.push_back(id);
        }
        kept = std::move(next);
        if (!removed) break;
    }
    std::sort(kept.begin(), kept.end());
    return kept;
}

std::vector<int> tidy_directed(const Graph& g, const std::set<int>& witness, int root,
                               const std::vector<int>& terminals) {
    std::map<int, std::vector<int>> out;
    for (int id : witness) out[g.edge(id).u].push_back(id);
    // DFS arborescence: first in-arc discovered wins (ids ascend for determinism)
    std::map<int, int> in_arc;
    std::vector<int> stack{root};
    std::set<int> seen{root};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        auto it = out.find(v);
        if (it == out.end()) continue;
        for (int id : it->second) {
            int w = g.edge(id).v;
            if (seen.count(w)) continue;
            seen.insert(w);
            in_arc[w] = id;
            stack.push_back(w);
        }
    }
    std::set<int> term(terminals.begin(), terminals.end());
    std::map<int, int> out_deg;
    for (auto& [w, id] : in_arc) out_deg[g.edge(id).u]++;
    std::set<int> vertices = seen;
    bool removed = true;
    while (removed) {
        removed = false;
        for (int v : std::vector<int>(vertices.begin(), vertices.end())) {
            if (v == root || term.count(v) || out_deg[v] != 0) continue;
            int id = in_arc.at(v);
            out_deg[g.edge(id).u]--;
            in_arc.erase(v);
            vertices.erase(v);
            removed = true;
        }
    }
    std::vector<int> kept;
    for (auto& [w, id] : in_arc) kept.push_back(id);
    std::sort(kept.begin(), kept.end());
    return kept;
}

Solution run_subset_dp(const Graph& g, const std::vector<int>& terminals,
                       std::optional<int> root) {
    for (int t : terminals)
        if (!g.alive(t)) throw input_error("terminal is not a vertex of the graph");
    if (root && !g.alive(*root)) throw input_error("root is not a vertex of the graph");

    std::vector<int> R = terminals;
    std::sort(R.begin(), R.end());
    R.erase(std::unique(R.begin(), R.end()), R.end());
    if (R.empty()) return {{}, Rational(0)};
    int anchor = root ? *root : R.front();
    std::vector<int> grow; // terminals the masks range over
    for (int t : R)
        if (t != anchor) grow.push_back(t);
    if (grow.empty()) return {{}, Rational(0)};
    const int k = static_cast<int>(grow.size());
    if (k > kMaxDpTerminals)
        throw input_error("terminal set too large for the subset DP: " + std::to_string(k + 1) +
                          " terminals (cap " + std::to_string(kMaxDpTerminals + 1) + ")");

    const int n = g.universe();
    const std::uint32_t full = (1u << k) - 1;
    DpState dp;
    dp.cost.assign(full + 1, {});
    dp.reached.assign(full + 1, {});
    dp.back.assign(full + 1, {});

    std::vector<std::uint32_t> order;
    for (std::uint32_t mask = 1; mask <= full; mask++) order.push_back(mask);
    std::sort(order.begin(), order.end(), [](std::uint32_t a, std::uint32_t b) {
        int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
        return pa != pb ? pa < pb : a < b;
    });

    for (std::uint32_t mask : order) {
        dp.cost[mask].assign(n, Rational(0));
        dp.reached[mask].assign(n, 0);
        dp.back[mask].assign(n, BackPtr{});
        if (__builtin_popcount(mask) == 1) {
            int t = grow[__builtin_ctz(mask)];
            dp.reached[mask][t] = 1;
        } else {
            for (int v = 0; v < n; v++) {
                if (!g.alive(v)) continue;
                std::uint32_t low = mask & (-mask);
                for (std::uint32_t sub = (mask - 1) & mask; sub > 0; sub = (sub - 1) & mask) {
                    if (!(sub & low)) continue;
                    std::uint32_t rest = mask ^ sub;
                    if (!dp.reached[sub][v] || !dp.reached[rest][v]) continue;
                    Rational cand = dp.cost[sub][v] + dp.cost[rest][v];
                    if (!dp.reached[mask][v] || cand < dp.cost[mask][v]) {
                        dp.reached[mask][v] = 1;
                        dp.cost[mask][v] = cand;
                        dp.back[mask][v] = {BackPtr::merge, -1, -1, sub};
                    }
                }
            }
        }
        relax_layer(g, dp.cost[mask], dp.reached[mask], dp.back[mask]);
    }

    if (!dp.reached[full][anchor])
        throw infeasible_error(root ? "a terminal is unreachable from the root"
                                    : "a terminal is disconnected from the rest");

    std::set<int> witness;
    collect_witness(dp, full, anchor, witness);
    std::vector<int> kept = root ? tidy_directed(g, witness, *root, R)
                                 : tidy_undirected(g, witness, R);
    Solution sol;
    sol.edges = std::move(kept);
    sol.cost = g.weight_of(sol.edges);
    if (sol.cost != dp.cost[full][anchor])
        throw std::logic_error("subset DP reconstruction does not match table value");
    return sol;
}

}  // namespace

Solution dreyfus_wagner(const Graph& g, const std::vector<int>& terminals) {
    if (g.directed()) throw input_error("dreyfus_wagner expects an undirected graph");
    return run_subset_dp(g, terminals, std::nullopt);
}

Solution dreyfus_wagner_directed(const Graph& g, const std::vector<int>& terminals, int root) {
    if (!g.directed()) throw input_error("dreyfus_wagner_directed expects a directed graph");
    std::vector<int> R = terminals;
    if (std::find(R.begin(), R.end(), root) == R.end())
        throw input_error("root must be a terminal");
    return run_subset_dp(g, R, root);
}

std::vector<std::vector<int>> enumerate_partitions(int k, int c) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(k, 0);
    auto rec = [&](auto&& self, int i, int used) -> void {
        if (i == k) {
            out.push_back(cur);
            return;
        }
        int limit = std::min(used + 1, c);
        for (int b = 0; b < limit; b++) {
            cur[i] = b;
            self(self, i + 1, std::max(used, b + 1));
        }
    };
    if (k > 0 && c > 0) rec(rec, 0, 0);
    return out;
}

Solution exact_steiner_forest(const Graph& g, const std::vector<std::pair<int, int>>& pairs,
                              int max_components) {
    if (max_components < 1) throw input_error("component bound must be at least 1");
    auto spec = TerminalSpec::make_forest(pairs);
    if (spec.pairs.empty()) return {{}, Rational(0)};

    // pair-connectivity classes: endpoints of a pair share a class,
    // transitively merged
    VertexMap classes(g.universe());
    for (auto [s, t] : spec.pairs) classes.merge_into(s, t);
    std::map<int, std::vector<int>> by_class;
    for (int v : spec.terminal_vertices()) by_class[classes.resolve(v)].push_back(v);
    std::vector<std::vector<int>> class_terms;
    for (auto& [rep, verts] : by_class) class_terms.push_back(verts);
    const int k = static_cast<int>(class_terms.size());
    if (k > kMaxDpTerminals)
        throw input_error("too many pair classes for partition enumeration");

    std::map<std::uint32_t, std::optional<Solution>> block_memo;
    auto solve_block = [&](std::uint32_t class_mask) -> const std::optional<Solution>& {
        auto it = block_memo.find(class_mask);
        if (it != block_memo.end()) return it->second;
        std::vector<int> terms;
        for (int i = 0; i < k; i++)
            if (class_mask >> i & 1)
                terms.insert(terms.end(), class_terms[i].begin(), class_terms[i].end());
        std::optional<Solution> sol;
        try {
            sol = dreyfus_wagner(g, terms);
        } catch (const infeasible_error&) {
            sol = std::nullopt;
        }
        return block_memo.emplace(class_mask, std::move(sol)).first->second;
    };

    bool have_best = false;
    Rational best_cost;
    std::vector<int> best_edges;
    std::vector<int> best_partition;
    const auto terminals = spec.terminal_vertices();

    for (const auto& partition : enumerate_partitions(k, max_components)) {
        int blocks = *std::max_element(partition.begin(), partition.end()) + 1;
        std::vector<std::uint32_t> block_masks(blocks, 0);
        for (int i = 0; i < k; i++) block_masks[partition[i]] |= 1u << i;
        std::set<int> unioned;
        bool feasible = true;
        for (std::uint32_t bm : block_masks) {
            const auto& sol = solve_block(bm);
            if (!sol) {
                feasible = false;
                break;
            }
            unioned.insert(sol->edges.begin(), sol->edges.end());
        }
        if (!feasible) continue;
        // overlapping block trees may create cycles; take a spanning
        // structure of the union before costing
        std::vector<int> tidied = tidy_undirected(g, unioned, terminals);
        Rational cost = g.weight_of(tidied);
        if (!have_best || cost < best_cost ||
            (cost == best_cost && partition < best_partition)) {
            have_best = true;
            best_cost = cost;
            best_edges = tidied;
            best_partition = partition;
        }
    }

    if (!have_best) throw infeasible_error("some terminal pair cannot be connected");
    Solution sol;
    sol.edges = std::move(best_edges);
    sol.cost = best_cost;
    return sol;
}

Solution epas_pipeline_forest(const Graph& g, const std::vector<std::pair<int, int>>& pairs,
                              const Rational& epsilon, int p, int c, PipelineReport* report) {
    if (epsilon <= 0) throw input_error("epsilon must be positive");
    if (p < 0 || c < 1) throw input_error("require p >= 0 and c >= 1");
    auto spec = TerminalSpec::make_forest(pairs);
    if (spec.pairs.empty()) return {{}, Rational(0)};

    // the preprocessing guarantee is (1 + 2eps') for internal eps', so halve
    Thresholds thr = compute_thresholds(epsilon / 2, p, c);
    NormalizeResult norm = normalize_weights(g, spec);
    ForestReduction red = reduce_forest(norm, thr);
    Solution tail = exact_steiner_forest(red.instance.graph, red.instance.spec.pairs, c);

    std::vector<int> reduced_orig;
    for (int id : tail.edges) reduced_orig.push_back(red.instance.graph.edge(id).orig);
    std::vector<int> lifted = lift_forest_solution(red, reduced_orig);

    if (!check_feasible(g, spec, lifted))
        throw std::logic_error("lifted pipeline solution is infeasible");
    if (report) {
        report->contractions = static_cast<int>(red.trace.steps.size());
        report->residual_terminals = red.instance.spec.terminal_count();
        report->tau = thr.tau;
    }
    Solution sol;
    sol.edges = std::move(lifted);
    sol.cost = g.weight_of(sol.edges);
    sol.guarantee_void = red.guarantee_void;
    return sol;
}

}  // namespace steiner
