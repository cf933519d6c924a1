#pragma once

#include "steiner/graph.hpp"

#include <optional>

namespace steiner {

// Derived constants of the contraction analysis. delta = sqrt(1+eps)-1 is
// irrational, so it is carried as a rational bracket; tau is rounded up from
// the bracket's upper bound, which can only make the reduction stop later
// and never weakens the guarantee.
struct Thresholds {
    Rational epsilon;
    int p = 0;
    int c = 1;
    Rational lambda;       // (1+eps)(p+c)/eps, exact
    Rational delta_lower;  // bracket of sqrt(1+eps)-1
    Rational delta_upper;
    Rational kappa_upper;  // (1+delta)p/delta + p, evaluated at the bracket top
    BigInt tau;
};

Thresholds compute_thresholds(const Rational& epsilon, int p, int c);

// A star: edges from a center to terminal leaves, always a weight-sorted
// prefix of the center's terminal-incident edges. |Q| counts the center when
// it is itself a terminal.
struct Star {
    int center = -1;
    bool center_is_terminal = false;
    std::vector<int> leaves;  // sorted by (edge weight, leaf id)
    std::vector<Rational> leaf_weights;
    Rational weight;
    int terminal_count = 0;  // |Q| >= 2
    Rational ratio;          // weight / (|Q| - 1)

    // Resolve leaves to edge ids of the (simplified) graph.
    std::vector<int> edge_ids(const Graph& g) const;
};

// Minimum-ratio star centered at `center`: the denominator for an i-edge
// prefix is i + z - 1 with z = 1 iff the center is a terminal. Nothing if no
// prefix reaches two terminals.
std::optional<Star> best_star_at(const Graph& g, const TerminalSpec& spec, int center);

// Minimum over all centers; ties by fewer edges, then smaller center id,
// then lexicographic leaves.
std::optional<Star> best_star(const Graph& g, const TerminalSpec& spec);

struct ContractionStep {
    std::vector<int> edges;  // C_t as original edge ids, pairwise disjoint across steps
    Rational weight;         // w(C_t) in normalized units
    int center = -1;
    int rep = -1;
    std::vector<std::pair<int, int>> merges;  // vertex -> representative
};

struct ContractionTrace {
    Rational scale;
    std::vector<int> zero_edges;  // contracted before rescaling
    std::vector<ContractionStep> steps;
};

struct ForestReduction {
    Instance instance;  // reduced, normalized weights
    ContractionTrace trace;
    VertexMap map;  // original vertex ids -> reduced ids
    Thresholds thresholds;
    bool guarantee_void = false;    // best_star failed with >= tau terminals left
    bool stopped_by_counter = true; // loop exited because terminals < tau
};

// Algorithm: contract the best-ratio star until fewer than tau terminals
// remain. Expects the normalize_weights output of the instance to reduce.
ForestReduction reduce_forest(const NormalizeResult& norm, const Thresholds& thresholds);

// Union of the reduced solution (original edge ids) with every contracted
// set and the zero-weight edges. `reduced_solution` must be feasible in the
// reduced instance.
std::vector<int> lift_forest_solution(const ForestReduction& red,
                                      const std::vector<int>& reduced_solution);

// Re-applies a trace to the original instance; used to validate traces.
Instance replay_trace(const Instance& original, const ContractionTrace& trace);

}  // namespace steiner
