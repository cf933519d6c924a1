#include "steiner/oracle.hpp"

#include <algorithm>

namespace steiner {

namespace {

constexpr int kMaxOracleEdges = 22;

}  // namespace

OracleResult brute_force(const Graph& g, const TerminalSpec& spec,
                         const OracleRestriction& restrict) {
    const int m = static_cast<int>(g.edges().size());
    if (m > kMaxOracleEdges)
        throw input_error("oracle cap exceeded: " + std::to_string(m) + " edges (max " +
                          std::to_string(kMaxOracleEdges) + ")");

    const auto terminals = spec.terminal_vertices();
    const bool arborescence = g.directed() && spec.kind == TerminalSpec::Kind::tree;
    if (arborescence && !spec.root) throw input_error("directed oracle requires a root");

    // Scaled integer weights over a common denominator keep the subset loop
    // off the heap; desk-scale weights always fit.
    BigInt denom = 1;
    for (const Edge& e : g.edges()) denom = boost::multiprecision::lcm(denom, denominator(e.w));
    std::vector<__int128> weight(m);
    for (int i = 0; i < m; i++) {
        BigInt scaled = numerator(g.edges()[i].w) * (denom / denominator(g.edges()[i].w));
        if (scaled > (BigInt(1) << 100)) throw input_error("oracle weights too large to scale");
        weight[i] = scaled.convert_to<__int128>();
    }

    const int n = g.universe();
    std::vector<int> parent(n), stack;
    std::vector<std::vector<int>> out_adj(n);
    std::vector<char> seen(n, 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };

    OracleResult best;
    bool have_best = false;
    __int128 best_cost = 0;

    std::vector<int> chosen;
    chosen.reserve(m);

    for (std::uint32_t mask = 0; mask < (1u << m); mask++) {
        best.subsets_enumerated++;
        chosen.clear();
        __int128 cost = 0;
        for (int i = 0; i < m; i++)
            if (mask >> i & 1) {
                chosen.push_back(i);
                cost += weight[i];
            }
        if (have_best && cost > best_cost) continue;

        bool feasible = true;
        if (arborescence) {
            for (int id : chosen) out_adj[g.edge(id).u].clear();
            for (int id : chosen) out_adj[g.edge(id).u].push_back(g.edge(id).v);
            std::fill(seen.begin(), seen.end(), 0);
            stack.assign(1, *spec.root);
            seen[*spec.root] = 1;
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                for (int w : out_adj[v])
                    if (!seen[w]) {
                        seen[w] = 1;
                        stack.push_back(w);
                    }
            }
            for (int id : chosen) out_adj[g.edge(id).u].clear();
            for (int t : terminals)
                if (!seen[t]) {
                    feasible = false;
                    break;
                }
        } else {
            // union-find over the endpoints this mask touches
            std::fill(seen.begin(), seen.end(), 0); // reused as "touched"
            for (int id : chosen) {
                const Edge& e = g.edge(id);
                parent[e.u] = e.u;
                parent[e.v] = e.v;
                seen[e.u] = seen[e.v] = 1;
            }
            for (int id : chosen) {
                const Edge& e = g.edge(id);
                parent[find(e.u)] = find(e.v);
            }
            auto connected = [&](int a, int b) {
                if (a == b) return true;
                if (!seen[a] || !seen[b]) return false;
                return find(a) == find(b);
            };
            if (spec.kind == TerminalSpec::Kind::forest) {
                for (auto [s, t] : spec.pairs)
                    if (!connected(s, t)) {
                        feasible = false;
                        break;
                    }
            } else {
                for (int t : terminals)
                    if (!connected(t, terminals[0])) {
                        feasible = false;
                        break;
                    }
            }
        }
        if (!feasible) continue;

        if (restrict.max_steiner &&
            solution_steiner_count(g, spec, chosen) > *restrict.max_steiner)
            continue;
        if (restrict.max_components && solution_components(g, chosen) > *restrict.max_components)
            continue;
        best.feasible_subsets++;

        if (!have_best || cost < best_cost || (cost == best_cost && chosen < best.witness)) {
            have_best = true;
            best_cost = cost;
            best.witness = chosen;
        }
    }

    if (!have_best) return best;
    best.feasible = true;
    best.cost = g.weight_of(best.witness);
    best.steiner_used = solution_steiner_count(g, spec, best.witness);
    best.components = solution_components(g, best.witness);
    return best;
}

}  // namespace steiner
