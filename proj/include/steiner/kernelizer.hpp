#pragma once

#include "steiner/graph.hpp"

namespace steiner {

// Steiner Tree -> Steiner Forest: pairs {v, r} against the smallest terminal
// as root. With `steiner_free`, every Steiner vertex w additionally gets a
// twin w' joined by a zero-cost edge and the pair {w, w'}, leaving an
// instance without Steiner vertices whose forest optimum equals the tree
// optimum.
Instance st_to_sf(const Graph& g, const std::vector<int>& terminals, bool steiner_free = false);

struct KernelInstance {
    Instance instance; // kernel graph over surviving original vertex ids
    Rational grid_step;            // 0 when no rounding was applied
    Rational cost_estimate;        // terminal-MST bound used for pruning
    int subset_size = 0;           // K
    std::vector<std::vector<int>> provenance; // kernel edge -> original path edge ids
    std::vector<Rational> true_weight;        // kernel edge -> unrounded metric distance
    std::vector<int> kept_vertices;
};

// Far-vertex pruning, metric closure, one exact tree solve per terminal
// subset of size <= K, union of those trees, then upward weight rounding on
// a power-of-two grid derived from round_eps (0 keeps weights exact).
// The kernel optimum is meaningful for component bounds of at least the
// number of pair classes; with K >= |R| and no rounding it is exact.
KernelInstance subset_union_kernel(const Graph& g, const TerminalSpec& spec, int subset_size,
                                   const Rational& round_eps);

// Expand kernel edges to their provenance paths. The result is feasible in
// the original instance and never costs more than the kernel solution.
std::vector<int> lift_kernel_solution(const Graph& original, const TerminalSpec& original_spec,
                                      const KernelInstance& kernel,
                                      const std::vector<int>& kernel_solution);

}  // namespace steiner
