#pragma once

#include "steiner/graph.hpp"

#include <cstdint>
#include <optional>

namespace steiner {

struct OracleRestriction {
    std::optional<int> max_steiner;
    std::optional<int> max_components;
};

struct OracleResult {
    bool feasible = false;
    Rational cost;
    std::vector<int> witness;  // sorted edge ids, lexicographically least among optima
    int steiner_used = 0;
    int components = 0;
    std::uint64_t subsets_enumerated = 0;
    std::uint64_t feasible_subsets = 0;
};

// Exhaustive minimum over all edge subsets. Hard cap of 22 edges.
OracleResult brute_force(const Graph& g, const TerminalSpec& spec,
                         const OracleRestriction& restrict = {});

}  // namespace steiner
