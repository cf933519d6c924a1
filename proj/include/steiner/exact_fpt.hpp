#pragma once

#include "steiner/graph.hpp"

#include <cstdint>

namespace steiner {

// Hard cap on the subset-DP bitmask width (the table holds one entry per
// subset and vertex); larger reduced instances are rejected with a
// diagnostic instead of silently degrading.
constexpr int kMaxDpTerminals = 20;

// Minimum-weight tree spanning R in an undirected graph (subset DP over
// terminal bitmasks). |R| = 1 yields the empty solution.
Solution dreyfus_wagner(const Graph& g, const std::vector<int>& terminals);

// Minimum-weight arborescence rooted at `root` spanning R in a directed
// graph. Works for weighted arcs; unit weights give minimum arc count.
Solution dreyfus_wagner_directed(const Graph& g, const std::vector<int>& terminals, int root);

// Minimum-weight forest with at most `max_components` components connecting
// every pair: canonical partitions of the pair-connectivity classes into at
// most c blocks, one tree solve per block.
Solution exact_steiner_forest(const Graph& g, const std::vector<std::pair<int, int>>& pairs,
                              int max_components);

// Canonical restricted-growth strings over k classes with at most c blocks.
std::vector<std::vector<int>> enumerate_partitions(int k, int c);

struct PipelineReport {
    int contractions = 0;
    int residual_terminals = 0;
    BigInt tau = 0;
};

// Full approximation pipeline: normalize -> star-contraction preprocessing
// -> exact forest solve on the residual -> lift. Guarantees a cost within
// (1+epsilon) of the cheapest forest with <= p Steiner vertices and <= c
// components, when one exists (internal epsilon is halved).
Solution epas_pipeline_forest(const Graph& g, const std::vector<std::pair<int, int>>& pairs,
                              const Rational& epsilon, int p, int c,
                              PipelineReport* report = nullptr);

}  // namespace steiner
