#pragma once

#include "steiner/graph.hpp"

#include <map>
#include <optional>
#include <string>

namespace steiner {

// N^k(v): vertices reachable from v along a directed path whose vertices
// after v include at most k Steiner vertices. v always belongs.
struct ExtendedNeighborhood {
    int source = -1;
    int budget = 0;
    std::vector<int> members;            // sorted
    std::map<int, int> steiner_distance; // 0/1 distance per member
    std::map<int, int> witness_arc;      // member -> arc id entering it on a witness path

    bool contains(int v) const;
};

// Arc ids of a witness path source -> v inside the neighborhood (fewest
// Steiner vertices, then fewest arcs).
std::vector<int> witness_path(const Graph& g, const ExtendedNeighborhood& nbhd, int v);

ExtendedNeighborhood extended_neighborhood(const Graph& g, const TerminalSpec& spec, int v, int k);

struct DirectedStep {
    enum class Rule { r1, r2 };
    Rule rule = Rule::r1;
    std::vector<int> lift_arcs; // orig arc ids added on lifting (R1: one arc; R2: the arborescence A)
    std::vector<std::pair<int, int>> merges;
    // R2 bookkeeping
    int chosen_steiner = -1;
    std::vector<int> path_arcs;     // witness path P, orig ids
    std::vector<int> neighborhood;  // members of N^0(s) at application time
    std::vector<int> subgraph_arcs; // arcs of Q = P with the subgraph induced by N^0(s), orig ids
};

struct RuleApplication {
    Instance instance; // after the rule; root carried inside the spec
    DirectedStep step;
};

// R1: contract an arc from the root to a terminal (1-safe).
std::optional<RuleApplication> apply_r1(const Graph& g, const TerminalSpec& spec);

// R2: contract a witness path to a Steiner vertex with a large 0-extended
// neighborhood, together with that neighborhood ((1+eps)-safe). The
// neighborhood size test counts non-root terminals, which is what the
// lifting argument charges against.
std::optional<RuleApplication> apply_r2(const Graph& g, const TerminalSpec& spec, int p,
                                        const Rational& epsilon);

struct DirectedReduction {
    bool certified_no = false;
    std::string no_reason;
    Instance instance;
    std::vector<DirectedStep> steps;
    VertexMap map;       // original -> reduced vertex ids
    Rational terminal_bound; // p^2/eps
};

// Algorithm: R1 exhaustively, then R2, repeated until neither applies, with
// the two certified-no exits (terminal outside N^p(r); residual terminal
// count above p^2/eps). Unit arc weights required.
DirectedReduction reduce_directed(const Graph& g, const TerminalSpec& spec, int p,
                                  const Rational& epsilon);

struct DirectedOutcome {
    bool certified_no = false;
    std::string no_reason;
    Solution solution;
    DirectedReduction reduction;
};

// reduce_directed + exact arborescence solve + lifting in reverse order.
DirectedOutcome epas_directed(const Graph& g, const TerminalSpec& spec, int p,
                              const Rational& epsilon);

// Lift a reduced-instance solution (orig arc ids) through the trace; checks
// the result is a Steiner arborescence of the original instance.
std::vector<int> lift_directed_solution(const Graph& original, const TerminalSpec& original_spec,
                                        const DirectedReduction& red,
                                        const std::vector<int>& reduced_solution);

}  // namespace steiner
