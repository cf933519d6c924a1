#include "steiner/star_contraction.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace steiner {

Thresholds compute_thresholds(const Rational& epsilon, int p, int c) {
    if (epsilon <= 0) throw input_error("epsilon must be positive");
    if (p < 0 || c < 1) throw input_error("require p >= 0 and c >= 1");

    Thresholds thr;
    thr.epsilon = epsilon;
    thr.p = p;
    thr.c = c;
    thr.lambda = (1 + epsilon) * (p + c) / epsilon;

    unsigned bits = 96;
    Rational s_lo, s_hi;
    for (;;) {
        s_lo = sqrt_lower_bound(1 + epsilon, bits);
        s_hi = sqrt_upper_bound(1 + epsilon, bits);
        if (s_lo > 1) break;
        bits *= 2;
    }
    thr.delta_lower = s_lo - 1;
    thr.delta_upper = s_hi - 1;

    // kappa = (1+delta)p/delta + p = p(s+1)/eps + 2p, using 1/delta = (s+1)/eps
    thr.kappa_upper = Rational(p) * (s_hi + 1) / epsilon + 2 * p;
    // tau = (kappa+c) * lambda * (1+delta)^2/(eps*delta) + 2p + c, with
    // (1+delta)^2 = 1+eps exactly
    Rational tau_upper = (thr.kappa_upper + c) * thr.lambda * (1 + epsilon) * (s_hi + 1) /
                             (epsilon * epsilon) +
                         2 * p + c;
    thr.tau = rational_ceil(tau_upper);
    if (thr.tau <= p) throw std::logic_error("tau must exceed p");
    return thr;
}

std::vector<int> Star::edge_ids(const Graph& g) const {
    std::map<std::pair<int, int>, int> lookup;
    for (int i = 0; i < static_cast<int>(g.edges().size()); i++) {
        const Edge& e = g.edges()[i];
        lookup[{e.u, e.v}] = i;
        lookup[{e.v, e.u}] = i;
    }
    std::vector<int> ids;
    ids.reserve(leaves.size());
    for (int leaf : leaves) ids.push_back(lookup.at({center, leaf}));
    return ids;
}

namespace {

// Prefix scan over the center's terminal-incident edges, sorted by weight.
std::optional<Star> star_from_incident(int center, int z,
                                       std::vector<std::pair<Rational, int>> incident) {
    std::sort(incident.begin(), incident.end());
    std::optional<Star> best;
    Rational prefix = 0;
    for (int i = 1; i <= static_cast<int>(incident.size()); i++) {
        prefix += incident[i - 1].first;
        int q = i + z;
        if (q < 2) continue;
        Rational ratio = prefix / (q - 1);
        if (!best || ratio < best->ratio) {
            Star star;
            star.center = center;
            star.center_is_terminal = z == 1;
            for (int j = 0; j < i; j++) {
                star.leaves.push_back(incident[j].second);
                star.leaf_weights.push_back(incident[j].first);
            }
            star.weight = prefix;
            star.terminal_count = q;
            star.ratio = ratio;
            best = std::move(star);
        }
    }
    return best;
}

}  // namespace

std::optional<Star> best_star_at(const Graph& g, const TerminalSpec& spec, int center) {
    if (!g.alive(center)) throw input_error("unknown star center " + std::to_string(center));
    const int z = spec.is_terminal(center) ? 1 : 0;
    std::vector<std::pair<Rational, int>> incident;  // (weight, terminal leaf)
    for (const Edge& e : g.edges()) {
        int other;
        if (e.u == center)
            other = e.v;
        else if (e.v == center)
            other = e.u;
        else
            continue;
        if (spec.is_terminal(other)) incident.emplace_back(e.w, other);
    }
    return star_from_incident(center, z, std::move(incident));
}

namespace {

bool star_precedes(const Star& a, const Star& b) {
    if (a.ratio != b.ratio) return a.ratio < b.ratio;
    if (a.leaves.size() != b.leaves.size()) return a.leaves.size() < b.leaves.size();
    if (a.center != b.center) return a.center < b.center;
    return a.leaves < b.leaves;
}

}  // namespace

std::optional<Star> best_star(const Graph& g, const TerminalSpec& spec) {
    std::optional<Star> best;
    for (int v : g.alive_vertices()) {
        auto star = best_star_at(g, spec, v);
        if (star && (!best || star_precedes(*star, *best))) best = std::move(star);
    }
    return best;
}

namespace {

int forest_terminal_count(const TerminalSpec& spec) { return spec.terminal_count(); }

}  // namespace

ForestReduction reduce_forest(const NormalizeResult& norm, const Thresholds& thresholds) {
    ForestReduction red;
    red.instance = {norm.graph, norm.spec};
    red.trace.scale = norm.scale;
    red.trace.zero_edges = norm.zero_edges;
    red.map = norm.map;
    red.thresholds = thresholds;

    // per-center cache of best stars; a contraction only invalidates the
    // merged vertices and their neighbors, everything else keeps its star
    std::vector<std::optional<std::optional<Star>>> cache(norm.graph.universe());

    while (BigInt(forest_terminal_count(red.instance.spec)) >= thresholds.tau) {
        const Graph& g = red.instance.graph;
        const TerminalSpec& spec = red.instance.spec;
        std::vector<std::vector<std::pair<Rational, int>>> incident(g.universe());
        for (const Edge& e : g.edges()) {
            if (spec.is_terminal(e.v)) incident[e.u].emplace_back(e.w, e.v);
            if (spec.is_terminal(e.u)) incident[e.v].emplace_back(e.w, e.u);
        }
        std::optional<Star> pick;
        for (int v : g.alive_vertices()) {
            if (!cache[v])
                cache[v] = star_from_incident(v, spec.is_terminal(v) ? 1 : 0,
                                              std::move(incident[v]));
            const auto& star = *cache[v];
            if (star && (!pick || star_precedes(*star, *pick))) pick = star;
        }
        if (!pick) {
            red.guarantee_void = true;
            red.stopped_by_counter = false;
            break;
        }

        std::vector<int> ids = pick->edge_ids(red.instance.graph);
        ContractionStep step;
        for (int id : ids) step.edges.push_back(red.instance.graph.edge(id).orig);
        std::sort(step.edges.begin(), step.edges.end());
        step.weight = pick->weight;
        step.center = pick->center;

        std::set<int> merged{pick->center};
        for (int leaf : pick->leaves) merged.insert(leaf);
        std::set<int> invalid;
        for (const Edge& e : red.instance.graph.edges()) {
            if (merged.count(e.u)) invalid.insert(e.v);
            if (merged.count(e.v)) invalid.insert(e.u);
        }

        ContractionResult next = contract_edge_set(red.instance.graph, red.instance.spec, ids);
        step.rep = next.merged_rep;
        for (int v : merged)
            if (v != next.merged_rep) step.merges.emplace_back(v, next.merged_rep);
        red.trace.steps.push_back(std::move(step));
        red.map.absorb(next.delta);
        red.instance = {std::move(next.graph), std::move(next.spec)};

        invalid.insert(pick->center);
        for (int v : invalid) cache[v].reset();
        for (int v : merged) cache[v].reset();
    }
    return red;
}

std::vector<int> lift_forest_solution(const ForestReduction& red,
                                      const std::vector<int>& reduced_solution) {
    // validate feasibility in the reduced instance
    std::map<int, int> by_orig;
    const Graph& rg = red.instance.graph;
    for (int i = 0; i < static_cast<int>(rg.edges().size()); i++) by_orig[rg.edges()[i].orig] = i;
    std::vector<int> reduced_ids;
    for (int orig : reduced_solution) {
        auto it = by_orig.find(orig);
        if (it == by_orig.end())
            throw input_error("solution edge " + std::to_string(orig) +
                              " is not part of the reduced instance");
        reduced_ids.push_back(it->second);
    }
    if (!check_feasible(rg, red.instance.spec, reduced_ids))
        throw input_error("solution is infeasible in the reduced instance");

    std::set<int> lifted(reduced_solution.begin(), reduced_solution.end());
    for (const ContractionStep& step : red.trace.steps)
        lifted.insert(step.edges.begin(), step.edges.end());
    lifted.insert(red.trace.zero_edges.begin(), red.trace.zero_edges.end());
    return std::vector<int>(lifted.begin(), lifted.end());
}

Instance replay_trace(const Instance& original, const ContractionTrace& trace) {
    Instance cur = original;

    // zero-weight edges first, one connected component at a time
    std::set<int> zero(trace.zero_edges.begin(), trace.zero_edges.end());
    while (!zero.empty()) {
        std::map<int, int> by_orig;
        for (int i = 0; i < static_cast<int>(cur.graph.edges().size()); i++)
            by_orig[cur.graph.edges()[i].orig] = i;
        std::set<int> component{*zero.begin()};
        std::set<int> verts;
        {
            const Edge& e = cur.graph.edge(by_orig.at(*zero.begin()));
            verts = {e.u, e.v};
        }
        bool grew = true;
        while (grew) {
            grew = false;
            for (int orig : zero) {
                if (component.count(orig)) continue;
                auto it = by_orig.find(orig);
                if (it == by_orig.end()) continue;
                const Edge& e = cur.graph.edge(it->second);
                if (verts.count(e.u) || verts.count(e.v)) {
                    component.insert(orig);
                    verts.insert(e.u);
                    verts.insert(e.v);
                    grew = true;
                }
            }
        }
        std::vector<int> ids;
        for (int orig : component) {
            zero.erase(orig);
            auto it = by_orig.find(orig);
            if (it != by_orig.end()) ids.push_back(it->second);
        }
        if (ids.empty()) continue;
        auto result = contract_edge_set(cur.graph, cur.spec, ids);
        cur = {std::move(result.graph), std::move(result.spec)};
    }

    if (trace.scale != 1) {
        std::vector<Edge> scaled = cur.graph.edges();
        for (Edge& e : scaled) e.w *= trace.scale;
        std::vector<char> alive(cur.graph.universe(), 0);
        for (int v : cur.graph.alive_vertices()) alive[v] = 1;
        cur.graph = Graph::from_parts(cur.graph.universe(), cur.graph.directed(), std::move(alive),
                                      std::move(scaled));
    }

    for (const ContractionStep& step : trace.steps) {
        std::map<int, int> by_orig;
        for (int i = 0; i < static_cast<int>(cur.graph.edges().size()); i++)
            by_orig[cur.graph.edges()[i].orig] = i;
        std::vector<int> ids;
        for (int orig : step.edges) ids.push_back(by_orig.at(orig));
        auto result = contract_edge_set(cur.graph, cur.spec, ids);
        cur = {std::move(result.graph), std::move(result.spec)};
    }
    return cur;
}

}  // namespace steiner
