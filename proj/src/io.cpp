#include "steiner/io.hpp"

#include "json.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace steiner {

namespace {

constexpr const char* kMagic = "33D32945 STP File, STP Format Version 1.0";

struct LineReader {
    std::vector<std::string> lines;
    std::size_t pos = 0;

    explicit LineReader(const std::string& text) {
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            lines.push_back(line);
        }
    }
    bool done() const { return pos >= lines.size(); }
    int number() const { return static_cast<int>(pos); } // 1-based of the line just read
    std::string next() { return lines[pos++]; }
};

[[noreturn]] void fail(int line, const std::string& msg) {
    throw input_error("line " + std::to_string(line) + ": " + msg);
}

std::vector<std::string> tokens(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

int parse_count(const std::vector<std::string>& tok, int line) {
    if (tok.size() != 2) fail(line, "expected '" + tok[0] + " <count>'");
    try {
        return std::stoi(tok[1]);
    } catch (...) {
        fail(line, "bad count '" + tok[1] + "'");
    }
}

}  // namespace

std::vector<int> file_vertex_order(const Graph& g) { return g.alive_vertices(); }

ParsedInstance parse_instance(const std::string& text) {
    LineReader reader(text);
    std::string name = "instance";
    int nodes = -1;
    bool directed = false;
    std::vector<Edge> edges;
    std::vector<int> terminals;
    std::optional<int> root;
    std::vector<std::pair<int, int>> pairs;
    bool have_terminal_section = false, have_pairs_section = false;
    int declared_edges = -1, declared_terminals = -1, declared_pairs = -1;

    auto check_vertex = [&](int file_id, int line) {
        if (nodes < 0) fail(line, "vertex reference before the Graph section");
        if (file_id < 1 || file_id > nodes)
            fail(line, "dangling vertex reference " + std::to_string(file_id));
        return file_id - 1;
    };

    while (!reader.done()) {
        std::string line = reader.next();
        auto tok = tokens(line);
        if (tok.empty()) continue;
        if (line == kMagic || tok[0] == "33D32945") continue;
        if (tok[0] == "EOF") break;
        if (tok[0] != "SECTION") fail(reader.number(), "expected SECTION, got '" + tok[0] + "'");
        if (tok.size() < 2) fail(reader.number(), "SECTION without a name");
        std::string section = tok[1];

        if (section == "Comment") {
            while (!reader.done()) {
                std::string inner = reader.next();
                auto itok = tokens(inner);
                if (!itok.empty() && itok[0] == "END") break;
                if (itok.size() >= 2 && itok[0] == "Name") {
                    name = inner.substr(inner.find("Name") + 5);
                    if (name.size() >= 2 && name.front() == '"' && name.back() == '"')
                        name = name.substr(1, name.size() - 2);
                }
            }
        } else if (section == "Graph") {
            int edge_lines = 0;
            while (!reader.done()) {
                std::string inner = reader.next();
                auto itok = tokens(inner);
                if (itok.empty()) continue;
                if (itok[0] == "END") break;
                if (itok[0] == "Nodes") {
                    nodes = parse_count(itok, reader.number());
                } else if (itok[0] == "Edges" || itok[0] == "Arcs") {
                    declared_edges = parse_count(itok, reader.number());
                    directed = itok[0] == "Arcs";
                } else if (itok[0] == "E" || itok[0] == "A") {
                    if (itok.size() != 4)
                        fail(reader.number(), "expected '" + itok[0] + " <u> <v> <weight>'");
                    bool arc = itok[0] == "A";
                    if (declared_edges >= 0 && arc != directed)
                        fail(reader.number(), "edge line kind does not match the declared kind");
                    int u = check_vertex(std::stoi(itok[1]), reader.number());
                    int v = check_vertex(std::stoi(itok[2]), reader.number());
                    Rational w;
                    try {
                        w = parse_rational(itok[3]);
                    } catch (const input_error& err) {
                        fail(reader.number(), err.what());
                    }
                    if (w < 0) fail(reader.number(), "negative weight");
                    edges.push_back({u, v, w, static_cast<int>(edges.size())});
                    edge_lines++;
                } else {
                    fail(reader.number(), "unknown Graph line '" + itok[0] + "'");
                }
            }
            if (nodes < 0) fail(reader.number(), "Graph section without Nodes");
            if (declared_edges >= 0 && edge_lines != declared_edges)
                fail(reader.number(), "declared " + std::to_string(declared_edges) +
                                          " edges but found " + std::to_string(edge_lines));
        } else if (section == "Terminals") {
            have_terminal_section = true;
            int terminal_lines = 0;
            while (!reader.done()) {
                std::string inner = reader.next();
                auto itok = tokens(inner);
                if (itok.empty()) continue;
                if (itok[0] == "END") break;
                if (itok[0] == "Terminals") {
                    declared_terminals = parse_count(itok, reader.number());
                } else if (itok[0] == "T") {
                    if (itok.size() != 2) fail(reader.number(), "expected 'T <v>'");
                    terminals.push_back(check_vertex(std::stoi(itok[1]), reader.number()));
                    terminal_lines++;
                } else if (itok[0] == "Root" || itok[0] == "RootP") {
                    if (itok.size() != 2) fail(reader.number(), "expected 'Root <v>'");
                    root = check_vertex(std::stoi(itok[1]), reader.number());
                } else {
                    fail(reader.number(), "unknown Terminals line '" + itok[0] + "'");
                }
            }
            if (declared_terminals >= 0 && terminal_lines != declared_terminals)
                fail(reader.number(), "declared " + std::to_string(declared_terminals) +
                                          " terminals but found " +
                                          std::to_string(terminal_lines));
        } else if (section == "Pairs") {
            have_pairs_section = true;
            int pair_lines = 0;
            while (!reader.done()) {
                std::string inner = reader.next();
                auto itok = tokens(inner);
                if (itok.empty()) continue;
                if (itok[0] == "END") break;
                if (itok[0] == "Pairs") {
                    declared_pairs = parse_count(itok, reader.number());
                } else if (itok[0] == "P") {
                    if (itok.size() != 3) fail(reader.number(), "expected 'P <s> <t>'");
                    pairs.emplace_back(check_vertex(std::stoi(itok[1]), reader.number()),
                                       check_vertex(std::stoi(itok[2]), reader.number()));
                    pair_lines++;
                } else {
                    fail(reader.number(), "unknown Pairs line '" + itok[0] + "'");
                }
            }
            if (declared_pairs >= 0 && pair_lines != declared_pairs)
                fail(reader.number(), "declared " + std::to_string(declared_pairs) +
                                          " pairs but found " + std::to_string(pair_lines));
        } else {
            // unknown sections are skipped for SteinLib compatibility
            while (!reader.done()) {
                auto itok = tokens(reader.next());
                if (!itok.empty() && itok[0] == "END") break;
            }
        }
    }

    if (nodes < 0) throw input_error("missing Graph section");
    if (have_pairs_section && directed) throw input_error("directed forest instances are not supported");
    if (directed && !root && !terminals.empty())
        throw input_error("directed instances need a Root line");

    ParsedInstance out;
    out.name = name;
    Graph g = Graph::root_instance(nodes, directed, std::move(edges));
    TerminalSpec spec = have_pairs_section && !have_terminal_section
                            ? TerminalSpec::make_forest(pairs)
                        : have_pairs_section
                            ? TerminalSpec::make_forest(pairs) // pairs win when both appear
                            : TerminalSpec::make_tree(terminals, root);
    out.instance = {std::move(g), std::move(spec)};
    return out;
}

std::string write_instance(const Instance& inst, const std::string& name) {
    const Graph& g = inst.graph;
    std::vector<int> order = file_vertex_order(g);
    std::vector<int> file_id(g.universe(), 0);
    for (std::size_t i = 0; i < order.size(); i++) file_id[order[i]] = static_cast<int>(i) + 1;

    std::ostringstream out;
    out << kMagic << "\n\n";
    out << "SECTION Comment\n"
        << "Name \"" << name << "\"\n"
        << "END\n\n";
    out << "SECTION Graph\n";
    out << "Nodes " << order.size() << "\n";
    out << (g.directed() ? "Arcs " : "Edges ") << g.edges().size() << "\n";
    for (const Edge& e : g.edges())
        out << (g.directed() ? "A " : "E ") << file_id[e.u] << " " << file_id[e.v] << " "
            << format_rational(e.w) << "\n";
    out << "END\n\n";

    if (inst.spec.kind == TerminalSpec::Kind::tree) {
        out << "SECTION Terminals\n";
        out << "Terminals " << inst.spec.terminals.size() << "\n";
        for (int t : inst.spec.terminals) out << "T " << file_id[t] << "\n";
        if (inst.spec.root) out << "Root " << file_id[*inst.spec.root] << "\n";
        out << "END\n\n";
    } else {
        out << "SECTION Pairs\n";
        out << "Pairs " << inst.spec.pairs.size() << "\n";
        for (auto [s, t] : inst.spec.pairs) out << "P " << file_id[s] << " " << file_id[t] << "\n";
        out << "END\n\n";
    }
    out << "EOF\n";
    return out.str();
}

std::string write_solution(const Instance& inst, const Solution& sol,
                           const std::string& ratio_bound) {
    const Graph& g = inst.graph;
    std::vector<int> order = file_vertex_order(g);
    std::vector<int> file_id(g.universe(), 0);
    for (std::size_t i = 0; i < order.size(); i++) file_id[order[i]] = static_cast<int>(i) + 1;

    std::ostringstream out;
    out << "SECTION Solution\n";
    out << "Cost " << format_rational(g.weight_of(sol.edges)) << "\n";
    out << "GuaranteeVoid " << (sol.guarantee_void ? 1 : 0) << "\n";
    out << "RatioBound " << ratio_bound << "\n";
    out << (g.directed() ? "Arcs " : "Edges ") << sol.edges.size() << "\n";
    std::vector<int> ids = sol.edges;
    std::sort(ids.begin(), ids.end());
    for (int id : ids) {
        const Edge& e = g.edge(id);
        out << (g.directed() ? "A " : "E ") << file_id[e.u] << " " << file_id[e.v] << "\n";
    }
    out << "END\nEOF\n";
    return out.str();
}

std::vector<std::pair<int, int>> solution_file_edges(const std::string& text) {
    LineReader reader(text);
    std::vector<std::pair<int, int>> out;
    while (!reader.done()) {
        auto tok = tokens(reader.next());
        if (tok.empty()) continue;
        if (tok[0] == "E" || tok[0] == "A") {
            if (tok.size() != 3) fail(reader.number(), "expected '" + tok[0] + " <u> <v>'");
            out.emplace_back(std::stoi(tok[1]), std::stoi(tok[2]));
        }
    }
    return out;
}

Solution parse_solution(const Instance& inst, const std::string& text) {
    const Graph& g = inst.graph;
    std::vector<int> order = file_vertex_order(g);

    LineReader reader(text);
    Solution sol;
    std::optional<Rational> declared_cost;
    while (!reader.done()) {
        auto tok = tokens(reader.next());
        if (tok.empty()) continue;
        if (tok[0] == "Cost") {
            if (tok.size() != 2) fail(reader.number(), "expected 'Cost <value>'");
            declared_cost = parse_rational(tok[1]);
        } else if (tok[0] == "GuaranteeVoid") {
            sol.guarantee_void = tok.size() == 2 && tok[1] == "1";
        } else if (tok[0] == "E" || tok[0] == "A") {
            if (tok.size() != 3) fail(reader.number(), "expected '" + tok[0] + " <u> <v>'");
            int fu = std::stoi(tok[1]), fv = std::stoi(tok[2]);
            if (fu < 1 || fu > static_cast<int>(order.size()) || fv < 1 ||
                fv > static_cast<int>(order.size()))
                fail(reader.number(), "dangling vertex reference");
            int u = order[fu - 1], v = order[fv - 1];
            // cheapest matching edge; parallels were simplified on parse
            int pick = -1;
            for (int i = 0; i < static_cast<int>(g.edges().size()); i++) {
                const Edge& e = g.edges()[i];
                bool match = g.directed() ? (e.u == u && e.v == v)
                                          : ((e.u == u && e.v == v) || (e.u == v && e.v == u));
                if (match && (pick < 0 || e.w < g.edge(pick).w)) pick = i;
            }
            if (pick < 0) fail(reader.number(), "solution edge not present in the instance");
            sol.edges.push_back(pick);
        }
    }
    std::sort(sol.edges.begin(), sol.edges.end());
    sol.edges.erase(std::unique(sol.edges.begin(), sol.edges.end()), sol.edges.end());
    sol.cost = g.weight_of(sol.edges);
    if (declared_cost && *declared_cost != sol.cost)
        throw input_error("solution header cost " + format_rational(*declared_cost) +
                          " does not match the recomputed cost " + format_rational(sol.cost));
    return sol;
}

namespace {

using nlohmann::json;

json edge_resolution_json(const Instance& reduced) {
    const Graph& g = reduced.graph;
    std::vector<int> order = file_vertex_order(g);
    std::vector<int> file_id(g.universe(), 0);
    for (std::size_t i = 0; i < order.size(); i++) file_id[order[i]] = static_cast<int>(i) + 1;
    json arr = json::array();
    for (const Edge& e : g.edges())
        arr.push_back({file_id[e.u], file_id[e.v], json::array({e.orig})});
    return arr;
}

}  // namespace

std::string write_lift_recipe(const ForestReduction& red) {
    json j;
    j["kind"] = "forest";
    j["scale"] = format_rational(red.trace.scale);
    // the caller halved epsilon for the preprocessing; the end-to-end claim
    // is against the doubled value
    j["ratio_bound"] = red.guarantee_void
                           ? "none"
                           : format_rational(1 + 2 * red.thresholds.epsilon);
    j["guarantee_void"] = red.guarantee_void;
    j["zero_edges"] = red.trace.zero_edges;
    json steps = json::array();
    for (const auto& step : red.trace.steps) steps.push_back(step.edges);
    j["steps"] = steps;
    j["edges"] = edge_resolution_json(red.instance);
    return j.dump(2) + "\n";
}

std::string write_lift_recipe(const DirectedReduction& red) {
    json j;
    j["kind"] = "directed";
    j["scale"] = "1";
    j["guarantee_void"] = false;
    j["zero_edges"] = json::array();
    json steps = json::array();
    for (const auto& step : red.steps) steps.push_back(step.lift_arcs);
    j["steps"] = steps;
    j["edges"] = edge_resolution_json(red.instance);
    return j.dump(2) + "\n";
}

std::string write_lift_recipe(const KernelInstance& kernel) {
    json j;
    j["kind"] = "kernel";
    j["scale"] = "1";
    j["grid_step"] = format_rational(kernel.grid_step);
    j["cost_estimate"] = format_rational(kernel.cost_estimate);
    j["subset_size"] = kernel.subset_size;
    j["zero_edges"] = json::array();
    j["steps"] = json::array();
    const Graph& g = kernel.instance.graph;
    std::vector<int> order = file_vertex_order(g);
    std::vector<int> file_id(g.universe(), 0);
    for (std::size_t i = 0; i < order.size(); i++) file_id[order[i]] = static_cast<int>(i) + 1;
    json arr = json::array();
    for (int i = 0; i < static_cast<int>(g.edges().size()); i++) {
        const Edge& e = g.edges()[i];
        arr.push_back({file_id[e.u], file_id[e.v], kernel.provenance[i]});
    }
    j["edges"] = arr;
    json tw = json::array();
    for (const Rational& w : kernel.true_weight) tw.push_back(format_rational(w));
    j["true_weights"] = tw;
    return j.dump(2) + "\n";
}

LiftRecipe parse_lift_recipe(const std::string& text) {
    json j = json::parse(text, nullptr, true, true);
    LiftRecipe recipe;
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "forest")
        recipe.kind = LiftRecipe::Kind::forest;
    else if (kind == "directed")
        recipe.kind = LiftRecipe::Kind::directed;
    else if (kind == "kernel")
        recipe.kind = LiftRecipe::Kind::kernel;
    else
        throw input_error("unknown lift recipe kind '" + kind + "'");
    recipe.scale = j.value("scale", "1");
    recipe.ratio_bound = j.value("ratio_bound", "none");
    recipe.guarantee_void = j.value("guarantee_void", false);
    recipe.zero_edges = j.at("zero_edges").get<std::vector<int>>();
    for (const auto& step : j.at("steps")) recipe.step_edges.push_back(step.get<std::vector<int>>());
    for (const auto& entry : j.at("edges")) {
        int u = entry.at(0).get<int>();
        int v = entry.at(1).get<int>();
        recipe.edge_resolution[{u, v}] = entry.at(2).get<std::vector<int>>();
    }
    return recipe;
}

std::vector<int> lift_via_recipe(const LiftRecipe& recipe,
                                 const std::vector<std::pair<int, int>>& solution_edges) {
    std::set<int> lifted;
    for (auto [u, v] : solution_edges) {
        auto it = recipe.edge_resolution.find({u, v});
        if (it == recipe.edge_resolution.end()) it = recipe.edge_resolution.find({v, u});
        if (it == recipe.edge_resolution.end())
            throw input_error("solution edge (" + std::to_string(u) + ", " + std::to_string(v) +
                              ") is not part of the reduced instance");
        lifted.insert(it->second.begin(), it->second.end());
    }
    for (const auto& step : recipe.step_edges) lifted.insert(step.begin(), step.end());
    lifted.insert(recipe.zero_edges.begin(), recipe.zero_edges.end());
    return std::vector<int>(lifted.begin(), lifted.end());
}

}  // namespace steiner
