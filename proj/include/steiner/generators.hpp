#pragma once

#include "steiner/graph.hpp"

#include <cstdint>
#include <optional>

namespace steiner {

struct SetCoverInstance {
    int universe_size = 0;
    std::vector<std::vector<int>> family; // subsets of 0..universe_size-1
    int budget = 1;

    void validate() const;
};

// Dominating Set -> weighted Directed Steiner Tree: root, one Steiner vertex
// and one terminal per vertex of h; weight-1 arcs root->Steiner, weight-0
// arcs over closed neighborhoods. Minimum dominating set size equals the
// optimum arborescence cost.
struct DomsetReduction {
    Instance instance;
    int root = 0;
    std::vector<int> steiner_of; // original vertex -> Steiner vertex id
    std::vector<int> terminal_of;
};

DomsetReduction gen_dominating_set_reduction(int n, const std::vector<std::pair<int, int>>& h_edges);

// Gap composition of Set Cover instances sharing (n, m, b) into one
// unweighted Directed Steiner Tree instance. A yes-instance among the inputs
// admits an arborescence with at most d + (b+1)n arcs; all-no inputs force
// at least n(2*gamma*b - 1) arcs.
struct GapComposition {
    Instance instance;
    int root = 0;
    BigInt d;
    BigInt c_yes; // d + (b+1)n
    std::vector<int> sub_roots;
};

GapComposition gen_gap_composition(const std::vector<SetCoverInstance>& instances, int gamma);

// Set Cover instances for the composition's no-side: singleton families need
// every element covered separately, so any cover has size n >= gamma*b.
SetCoverInstance make_no_instance(int n, int m, int b);
// Yes-side: plant a cover of size <= b, pad with random sets.
SetCoverInstance make_yes_instance(int n, int m, int b, std::uint64_t seed);

struct RandomInstanceParams {
    int n = 8;
    double edge_density = 0.4;
    int weight_lo = 1;
    int weight_hi = 9;
    int weight_denominator = 1; // weights are k/denominator
    bool directed = false;
    int pair_count = 0;     // forest instances
    int terminal_count = 0; // tree instances (directed picks a root)
    std::optional<std::pair<int, int>> plant; // (p, c): embed a cheap feasible forest
    std::uint64_t seed = 1;
};

struct GeneratedInstance {
    Instance instance;
    std::optional<Rational> planted_cost; // upper bound on the restricted optimum
    std::vector<int> planted_edges;
};

// Deterministic under seed. With planting, a forest with at most p Steiner
// vertices and at most c components is embedded at low weights beneath the
// noise edges.
GeneratedInstance gen_random(const RandomInstanceParams& params);

}  // namespace steiner
