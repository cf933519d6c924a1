#include "steiner/generators.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace steiner {

void SetCoverInstance::validate() const {
    if (universe_size < 1) throw input_error("set cover universe must be non-empty");
    if (budget < 1) throw input_error("set cover budget must be positive");
    for (const auto& set : family)
        for (int x : set)
            if (x < 0 || x >= universe_size)
                throw input_error("set cover family member outside the universe");
}

DomsetReduction gen_dominating_set_reduction(int n,
                                             const std::vector<std::pair<int, int>>& h_edges) {
    if (n < 1) throw input_error("dominating set host graph must be non-empty");
    std::set<std::pair<int, int>> edges;
    for (auto [u, v] : h_edges) {
        if (u < 0 || u >= n || v < 0 || v >= n) throw input_error("host edge outside vertex range");
        if (u == v) throw input_error("host graph must be simple");
        edges.emplace(std::min(u, v), std::max(u, v));
    }

    DomsetReduction red;
    red.root = 0;
    red.steiner_of.resize(n);
    red.terminal_of.resize(n);
    for (int v = 0; v < n; v++) {
        red.steiner_of[v] = 1 + v;
        red.terminal_of[v] = 1 + n + v;
    }

    std::vector<Edge> arcs;
    int id = 0;
    for (int v = 0; v < n; v++) arcs.push_back({red.root, red.steiner_of[v], Rational(1), id++});
    // closed neighborhoods: v = w or v adjacent to w
    for (int w = 0; w < n; w++) arcs.push_back({red.steiner_of[w], red.terminal_of[w], Rational(0), id++});
    for (auto [u, v] : edges) {
        arcs.push_back({red.steiner_of[u], red.terminal_of[v], Rational(0), id++});
        arcs.push_back({red.steiner_of[v], red.terminal_of[u], Rational(0), id++});
    }

    std::vector<int> terminals{red.root};
    terminals.insert(terminals.end(), red.terminal_of.begin(), red.terminal_of.end());
    red.instance = {Graph::root_instance(2 * n + 1, true, std::move(arcs)),
                    TerminalSpec::make_tree(terminals, red.root)};
    return red;
}

GapComposition gen_gap_composition(const std::vector<SetCoverInstance>& instances, int gamma) {
    if (instances.empty()) throw input_error("composition needs at least one instance");
    if (gamma < 3) throw input_error("gamma must be at least 3");
    const int n = instances.front().universe_size;
    const int m = static_cast<int>(instances.front().family.size());
    const int b = instances.front().budget;
    for (const auto& inst : instances) {
        inst.validate();
        if (inst.universe_size != n || static_cast<int>(inst.family.size()) != m ||
            inst.budget != b)
            throw input_error("composed instances must share (n, m, b)");
    }
    const int t = static_cast<int>(instances.size());
    const int d = n * (gamma * b - 2);

    GapComposition comp;
    comp.root = 0;
    comp.d = d;
    comp.c_yes = BigInt(d) + BigInt(b + 1) * n;

    int next = 1;
    std::vector<int> terminal(n);
    for (int i = 0; i < n; i++) terminal[i] = next++;

    std::vector<Edge> arcs;
    int id = 0;
    auto add_path = [&](int from, int length) {
        // directed path of `length` arcs ending in a fresh vertex
        int cur = from;
        for (int step = 0; step < length; step++) {
            int nxt = next++;
            arcs.push_back({cur, nxt, Rational(1), id++});
            cur = nxt;
        }
        return cur;
    };

    for (int k = 0; k < t; k++) {
        int rk = add_path(comp.root, d);
        comp.sub_roots.push_back(rk);
        for (int j = 0; j < m; j++) {
            int skj = add_path(rk, n);
            for (int element : instances[k].family[j])
                arcs.push_back({skj, terminal[element], Rational(1), id++});
        }
    }

    std::vector<int> terminals{comp.root};
    terminals.insert(terminals.end(), terminal.begin(), terminal.end());
    comp.instance = {Graph::root_instance(next, true, std::move(arcs)),
                     TerminalSpec::make_tree(terminals, comp.root)};
    return comp;
}

SetCoverInstance make_no_instance(int n, int m, int b) {
    // singletons only: every cover needs all n of them
    SetCoverInstance inst;
    inst.universe_size = n;
    inst.budget = b;
    for (int j = 0; j < m; j++) inst.family.push_back({j % n});
    return inst;
}

SetCoverInstance make_yes_instance(int n, int m, int b, std::uint64_t seed) {
    if (m < b) throw input_error("family too small to hold the planted cover");
    std::mt19937_64 rng(seed);
    SetCoverInstance inst;
    inst.universe_size = n;
    inst.budget = b;
    inst.family.assign(m, {});
    for (int i = 0; i < n; i++) inst.family[i % b].push_back(i); // planted cover
    for (int j = b; j < m; j++) {
        for (int i = 0; i < n; i++)
            if (rng() % 2) inst.family[j].push_back(i);
    }
    return inst;
}

namespace {

std::vector<int> sample_distinct(std::mt19937_64& rng, int n, int count) {
    std::vector<int> ids(n);
    std::iota(ids.begin(), ids.end(), 0);
    for (int i = 0; i < count; i++) {
        int j = i + static_cast<int>(rng() % (n - i));
        std::swap(ids[i], ids[j]);
    }
    ids.resize(count);
    return ids;
}

}  // namespace

GeneratedInstance gen_random(const RandomInstanceParams& params) {
    if (params.n < 1 || params.edge_density < 0 || params.edge_density > 1 ||
        params.weight_lo < 0 || params.weight_hi < params.weight_lo ||
        params.weight_denominator < 1)
        throw input_error("bad generator parameters");
    if (params.pair_count > 0 && params.terminal_count > 0)
        throw input_error("choose pairs or terminals, not both");
    if (params.directed && params.pair_count > 0)
        throw input_error("directed instances take terminals, not pairs");

    std::mt19937_64 rng(params.seed);
    const int n = params.n;
    const int den = params.weight_denominator;
    auto noise_weight = [&]() {
        if (params.directed) return Rational(1);
        int lo = std::min(params.weight_lo + 1, params.weight_hi);
        int hi = params.weight_hi;
        return Rational(lo + static_cast<int>(rng() % (hi - lo + 1)), den);
    };
    const Rational plant_weight =
        params.directed ? Rational(1) : Rational(std::max(params.weight_lo, 1), den);

    std::vector<Edge> edges;
    std::set<std::pair<int, int>> planted_links;
    std::optional<Rational> planted_cost;
    TerminalSpec spec;

    if (params.directed) {
        int terminals = std::max(params.terminal_count, 1);
        if (terminals > n) throw input_error("more terminals than vertices");
        auto ids = sample_distinct(rng, n, n);
        int root = ids[0];
        std::vector<int> terms(ids.begin(), ids.begin() + terminals);

        if (params.plant) {
            auto [p, c] = *params.plant;
            (void)c; // a single arborescence
            int steiner = std::min<int>(p, n - terminals);
            std::vector<int> members(ids.begin(), ids.begin() + terminals + steiner);
            // random arborescence over members, rooted at members[0] == root
            planted_cost = Rational(0);
            for (std::size_t i = 1; i < members.size(); i++) {
                int parent = members[rng() % i];
                planted_links.emplace(parent, members[i]);
                *planted_cost += 1;
            }
        }
        for (auto [u, v] : planted_links)
            edges.push_back({u, v, Rational(1), static_cast<int>(edges.size())});
        for (int u = 0; u < n; u++)
            for (int v = 0; v < n; v++) {
                if (u == v || planted_links.count({u, v})) continue;
                if (std::uniform_real_distribution<double>(0, 1)(rng) < params.edge_density)
                    edges.push_back({u, v, noise_weight(), static_cast<int>(edges.size())});
            }
        spec = TerminalSpec::make_tree(terms, root);
    } else if (params.terminal_count > 0) {
        if (params.terminal_count > n) throw input_error("more terminals than vertices");
        auto ids = sample_distinct(rng, n, n);
        std::vector<int> terms(ids.begin(), ids.begin() + params.terminal_count);
        if (params.plant) {
            auto [p, c] = *params.plant;
            (void)c;
            int steiner = std::min<int>(p, n - params.terminal_count);
            std::vector<int> members(ids.begin(), ids.begin() + params.terminal_count + steiner);
            planted_cost = Rational(0);
            for (std::size_t i = 1; i < members.size(); i++) {
                int parent = members[rng() % i];
                auto link = std::minmax(parent, members[i]);
                planted_links.emplace(link.first, link.second);
                *planted_cost += plant_weight;
            }
        }
        for (auto [u, v] : planted_links)
            edges.push_back({u, v, plant_weight, static_cast<int>(edges.size())});
        for (int u = 0; u < n; u++)
            for (int v = u + 1; v < n; v++) {
                if (planted_links.count({u, v})) continue;
                if (std::uniform_real_distribution<double>(0, 1)(rng) < params.edge_density)
                    edges.push_back({u, v, noise_weight(), static_cast<int>(edges.size())});
            }
        spec = TerminalSpec::make_tree(terms);
    } else {
        if (params.pair_count < 1) throw input_error("need pairs or terminals");
        std::vector<std::pair<int, int>> pairs;
        if (params.plant) {
            auto [p, c] = *params.plant;
            c = std::max(1, std::min(c, params.pair_count));
            auto ids = sample_distinct(rng, n, n);
            int used = 0;
            planted_cost = Rational(0);
            // split pairs round-robin over c components
            std::vector<int> pairs_of(c, params.pair_count / c);
            for (int i = 0; i < params.pair_count % c; i++) pairs_of[i]++;
            int steiner_left = p;
            for (int comp = 0; comp < c; comp++) {
                int terminal_need = pairs_of[comp] + 1; // chain pairs over a path of terminals
                int steiner_here = steiner_left > 0 ? static_cast<int>(rng() % (steiner_left + 1)) : 0;
                steiner_left -= steiner_here;
                int want = terminal_need + steiner_here;
                if (used + want > n) {
                    steiner_here = 0;
                    want = terminal_need;
                }
                if (used + want > n) throw input_error("not enough vertices to plant components");
                std::vector<int> members(ids.begin() + used, ids.begin() + used + want);
                used += want;
                // tree over members; the first terminal_need members are terminals
                for (std::size_t i = 1; i < members.size(); i++) {
                    int parent = members[rng() % i];
                    auto link = std::minmax(parent, members[i]);
                    if (planted_links.emplace(link.first, link.second).second)
                        *planted_cost += plant_weight;
                }
                for (int i = 0; i < pairs_of[comp]; i++) pairs.emplace_back(members[i], members[i + 1]);
            }
        } else {
            for (int i = 0; i < params.pair_count; i++)
                pairs.emplace_back(static_cast<int>(rng() % n), static_cast<int>(rng() % n));
        }
        for (auto [u, v] : planted_links)
            edges.push_back({u, v, plant_weight, static_cast<int>(edges.size())});
        for (int u = 0; u < n; u++)
            for (int v = u + 1; v < n; v++) {
                if (planted_links.count({u, v})) continue;
                if (std::uniform_real_distribution<double>(0, 1)(rng) < params.edge_density)
                    edges.push_back({u, v, noise_weight(), static_cast<int>(edges.size())});
            }
        spec = TerminalSpec::make_forest(pairs);
    }

    GeneratedInstance out;
    out.instance = {Graph::root_instance(n, params.directed, std::move(edges)), spec};
    out.planted_cost = planted_cost;
    for (int i = 0; i < static_cast<int>(out.instance.graph.edges().size()); i++) {
        const Edge& e = out.instance.graph.edges()[i];
        auto link = out.instance.graph.directed() ? std::make_pair(e.u, e.v)
                                                  : std::make_pair(std::min(e.u, e.v),
                                                                   std::max(e.u, e.v));
        if (planted_links.count(link)) out.planted_edges.push_back(i);
    }
    return out;
}

}  // namespace steiner
