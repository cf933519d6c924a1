#pragma once

#include "steiner/directed_epas.hpp"
#include "steiner/graph.hpp"
#include "steiner/kernelizer.hpp"
#include "steiner/star_contraction.hpp"

#include <map>
#include <string>

namespace steiner {

// SteinLib-style instance files with 1-based vertex ids: a Graph section
// with weighted E/A lines, a Terminals section (with an optional Root line
// for arborescence instances), and a Pairs section for forest instances.
// Plain SteinLib files parse as tree instances.
struct ParsedInstance {
    Instance instance;
    std::string name;
};

ParsedInstance parse_instance(const std::string& text);
std::string write_instance(const Instance& inst, const std::string& name = "instance");

// Solution files carry an exact objective in original weight units plus the
// guarantee flags; edges are listed by endpoints in the instance file's ids.
std::string write_solution(const Instance& inst, const Solution& sol,
                           const std::string& ratio_bound = "none");
Solution parse_solution(const Instance& inst, const std::string& text);

// Alive vertices in file order: position i holds the internal id written as
// file id i+1.
std::vector<int> file_vertex_order(const Graph& g);

// A lifting recipe maps a reduced/kernel solution file back to original edge
// ids: traces add their contracted sets, kernels expand provenance paths.
struct LiftRecipe {
    enum class Kind { forest, directed, kernel };
    Kind kind = Kind::forest;
    std::string scale = "1";
    std::string ratio_bound = "none";
    bool guarantee_void = false;
    std::vector<int> zero_edges;
    std::vector<std::vector<int>> step_edges;
    // endpoints in the reduced/kernel FILE ids -> original edge ids
    std::map<std::pair<int, int>, std::vector<int>> edge_resolution;
};

std::string write_lift_recipe(const ForestReduction& red);
std::string write_lift_recipe(const DirectedReduction& red);
std::string write_lift_recipe(const KernelInstance& kernel);
LiftRecipe parse_lift_recipe(const std::string& text);

// `solution_edges`: endpoint pairs read from a reduced/kernel solution file.
std::vector<int> lift_via_recipe(const LiftRecipe& recipe,
                                 const std::vector<std::pair<int, int>>& solution_edges);

// Endpoint pairs (file ids) of a solution file, without resolving them.
std::vector<std::pair<int, int>> solution_file_edges(const std::string& text);

}  // namespace steiner
