#include "steiner/directed_epas.hpp"
#include "steiner/exact_fpt.hpp"
#include "steiner/generators.hpp"
#include "steiner/io.hpp"
#include "steiner/kernelizer.hpp"
#include "steiner/oracle.hpp"
#include "steiner/star_contraction.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

using namespace steiner;
using nlohmann::json;

namespace {

constexpr int kExitSolved = 0;
constexpr int kExitInfeasible = 2;
constexpr int kExitCertifiedNo = 3;
constexpr int kExitInputError = 4;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw input_error("cannot write '" + path + "'");
    out << text;
}

double elapsed_ms(const std::chrono::steady_clock::time_point& start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

struct RunRecord {
    std::string instance;
    std::string solver;
    std::string cost = "-";
    std::string ratio_vs_oracle = "-";
    double wall_ms = 0;
    int contractions = -1;
    int residual_terminals = -1;
    std::string tau = "-";
    int good_steps = -1; // contraction diagnostic, planted instances only
    int bad_steps = -1;
    bool guarantee_void = false;
    int exit_code = kExitSolved;

    json to_json() const {
        json j;
        j["instance"] = instance;
        j["solver"] = solver;
        j["cost"] = cost;
        j["ratio_vs_oracle"] = ratio_vs_oracle;
        j["wall_ms"] = wall_ms;
        if (contractions >= 0) j["contractions"] = contractions;
        if (residual_terminals >= 0) j["residual_terminals"] = residual_terminals;
        if (tau != "-") j["tau"] = tau;
        if (good_steps >= 0) {
            j["good_contractions"] = good_steps;
            j["bad_contractions"] = bad_steps;
        }
        j["guarantee_void"] = guarantee_void;
        j["exit"] = exit_code;
        return j;
    }
};

void append_report(const std::string& path, const RunRecord& record) {
    if (path.empty()) return;
    std::ofstream out(path, std::ios::app);
    if (!out) throw input_error("cannot write report '" + path + "'");
    out << record.to_json().dump() << "\n";
}

struct ForestRun {
    Solution solution;
    PipelineReport stats;
};

// solve-sf runs this composition; `reduce` emits the same preprocessing so
// reduce + solve + lift reproduces it bit for bit.
ForestRun run_forest_pipeline(const Instance& inst, const Rational& epsilon, int p, int c) {
    ForestRun run;
    run.solution =
        epas_pipeline_forest(inst.graph, inst.spec.pairs, epsilon, p, c, &run.stats);
    return run;
}

int cmd_solve(const std::string& command, const std::string& input, const std::string& output,
              const std::string& report, const Rational& epsilon, int p, int c, bool exact) {
    auto start = std::chrono::steady_clock::now();
    ParsedInstance parsed = parse_instance(read_file(input));
    Instance& inst = parsed.instance;
    RunRecord record;
    record.instance = parsed.name;
    record.solver = command + (exact ? "/exact" : "");

    Solution sol;
    std::string ratio_bound = exact ? "1" : format_rational(1 + epsilon);
    if (command == "solve-sf") {
        if (inst.spec.kind != TerminalSpec::Kind::forest)
            throw input_error("solve-sf expects an instance with a Pairs section");
        if (exact) {
            sol = exact_steiner_forest(inst.graph, inst.spec.pairs, c);
        } else {
            ForestRun run = run_forest_pipeline(inst, epsilon, p, c);
            sol = run.solution;
            record.contractions = run.stats.contractions;
            record.residual_terminals = run.stats.residual_terminals;
            record.tau = run.stats.tau.str();
        }
    } else if (command == "solve-st") {
        if (inst.spec.kind != TerminalSpec::Kind::tree || inst.graph.directed())
            throw input_error("solve-st expects an undirected instance with a Terminals section");
        if (exact) {
            sol = dreyfus_wagner(inst.graph, inst.spec.terminals);
        } else {
            Instance forest = st_to_sf(inst.graph, inst.spec.terminals);
            ForestRun run = run_forest_pipeline(forest, epsilon, p, 1);
            sol = run.solution;
            record.contractions = run.stats.contractions;
            record.residual_terminals = run.stats.residual_terminals;
            record.tau = run.stats.tau.str();
        }
    } else { // solve-dst
        if (inst.spec.kind != TerminalSpec::Kind::tree || !inst.graph.directed())
            throw input_error("solve-dst expects a directed instance with a Root line");
        if (exact) {
            sol = dreyfus_wagner_directed(inst.graph, inst.spec.terminals, *inst.spec.root);
        } else {
            DirectedOutcome outcome = epas_directed(inst.graph, inst.spec, p, epsilon);
            record.contractions = static_cast<int>(outcome.reduction.steps.size());
            if (outcome.certified_no) {
                record.exit_code = kExitCertifiedNo;
                record.wall_ms = elapsed_ms(start);
                append_report(report, record);
                std::cerr << "certified-no: " << outcome.no_reason << "\n";
                return kExitCertifiedNo;
            }
            sol = outcome.solution;
            record.residual_terminals = outcome.reduction.instance.spec.terminal_count();
        }
    }

    record.cost = format_rational(sol.cost);
    record.guarantee_void = sol.guarantee_void;
    record.wall_ms = elapsed_ms(start);
    append_report(report, record);
    std::string text = write_solution(inst, sol, sol.guarantee_void ? "none" : ratio_bound);
    if (output.empty())
        std::cout << text;
    else
        write_file(output, text);
    if (sol.guarantee_void)
        std::cerr << "warning: no star was available above the terminal threshold; the "
                     "approximation guarantee is void (p or c likely understated)\n";
    return kExitSolved;
}

int cmd_reduce(const std::string& input, const std::string& out_instance,
               const std::string& out_trace, const Rational& epsilon, int p, int c) {
    ParsedInstance parsed = parse_instance(read_file(input));
    Instance& inst = parsed.instance;
    if (inst.spec.kind == TerminalSpec::Kind::forest) {
        Thresholds thr = compute_thresholds(epsilon / 2, p, c);
        NormalizeResult norm = normalize_weights(inst.graph, inst.spec);
        ForestReduction red = reduce_forest(norm, thr);
        write_file(out_instance, write_instance(red.instance, parsed.name + "-reduced"));
        write_file(out_trace, write_lift_recipe(red));
        std::cerr << "contracted " << red.trace.steps.size() << " stars; "
                  << red.instance.spec.terminal_count() << " terminals remain (tau "
                  << thr.tau.str() << ")\n";
        return kExitSolved;
    }
    if (!inst.graph.directed()) throw input_error("reduce expects a forest or directed instance");
    DirectedReduction red = reduce_directed(inst.graph, inst.spec, p, epsilon);
    if (red.certified_no) {
        std::cerr << "certified-no: " << red.no_reason << "\n";
        return kExitCertifiedNo;
    }
    write_file(out_instance, write_instance(red.instance, parsed.name + "-reduced"));
    write_file(out_trace, write_lift_recipe(red));
    std::cerr << "applied " << red.steps.size() << " rules; "
              << red.instance.spec.terminal_count() << " terminals remain (bound "
              << format_rational(red.terminal_bound) << ")\n";
    return kExitSolved;
}

int cmd_kernelize(const std::string& input, const std::string& out_instance,
                  const std::string& out_provenance, int subset_size, const Rational& round_eps) {
    ParsedInstance parsed = parse_instance(read_file(input));
    KernelInstance kernel =
        subset_union_kernel(parsed.instance.graph, parsed.instance.spec, subset_size, round_eps);
    write_file(out_instance, write_instance(kernel.instance, parsed.name + "-kernel"));
    write_file(out_provenance, write_lift_recipe(kernel));
    std::cerr << "kernel: " << kernel.kept_vertices.size() << " vertices, "
              << kernel.instance.graph.edges().size() << " edges, grid step "
              << format_rational(kernel.grid_step) << "\n";
    return kExitSolved;
}

int cmd_lift(const std::string& input, const std::string& trace, const std::string& solution,
             const std::string& output) {
    ParsedInstance parsed = parse_instance(read_file(input));
    LiftRecipe recipe = parse_lift_recipe(read_file(trace));
    auto lifted = lift_via_recipe(recipe, solution_file_edges(read_file(solution)));
    if (!check_feasible(parsed.instance.graph, parsed.instance.spec, lifted)) {
        std::cerr << "lifted solution is infeasible in the original instance\n";
        return kExitInfeasible;
    }
    Solution sol;
    sol.edges = lifted;
    sol.cost = parsed.instance.graph.weight_of(lifted);
    sol.guarantee_void = recipe.guarantee_void;
    std::string text = write_solution(parsed.instance, sol, recipe.ratio_bound);
    if (output.empty())
        std::cout << text;
    else
        write_file(output, text);
    return kExitSolved;
}

int cmd_oracle(const std::string& input, const std::string& output, const std::string& report,
               int max_steiner, int max_components) {
    auto start = std::chrono::steady_clock::now();
    ParsedInstance parsed = parse_instance(read_file(input));
    OracleRestriction restrict;
    if (max_steiner >= 0) restrict.max_steiner = max_steiner;
    if (max_components >= 0) restrict.max_components = max_components;
    OracleResult result = brute_force(parsed.instance.graph, parsed.instance.spec, restrict);
    RunRecord record;
    record.instance = parsed.name;
    record.solver = "oracle";
    record.wall_ms = elapsed_ms(start);
    if (!result.feasible) {
        record.exit_code = kExitInfeasible;
        append_report(report, record);
        std::cerr << "infeasible under the given restriction\n";
        return kExitInfeasible;
    }
    record.cost = format_rational(result.cost);
    append_report(report, record);
    Solution sol;
    sol.edges = result.witness;
    sol.cost = result.cost;
    std::string text = write_solution(parsed.instance, sol, "1");
    if (output.empty())
        std::cout << text;
    else
        write_file(output, text);
    return kExitSolved;
}

// Per-step contraction diagnostic against a reference solution: replay the
// contractions on the reference forest, delete a feedback edge set incident
// to the merged terminals, and compare weights. A step is good when
// w(C_t) <= (1+eps') w(D_t). Only the aggregate (1+2eps') bound is
// guaranteed; bad steps are expected and merely counted.
std::pair<int, int> classify_contractions(const Instance& inst,
                                          const std::vector<int>& reference_edges,
                                          const Rational& epsilon, int p, int c) {
    Thresholds thr = compute_thresholds(epsilon / 2, p, c);
    NormalizeResult norm = normalize_weights(inst.graph, inst.spec);
    ForestReduction red = reduce_forest(norm, thr);

    std::set<int> zero(red.trace.zero_edges.begin(), red.trace.zero_edges.end());
    struct RefEdge {
        int orig;
        int u, v;
        Rational w;
    };
    std::vector<RefEdge> forest; // surviving reference edges, original endpoints
    for (int id : reference_edges) {
        if (zero.count(id)) continue;
        const Edge& e = inst.graph.edge(id);
        forest.push_back({id, e.u, e.v, e.w * norm.scale});
    }

    VertexMap classes = norm.map;
    int good = 0, bad = 0;
    for (const ContractionStep& step : red.trace.steps) {
        std::set<int> merged_class;
        merged_class.insert(classes.resolve(step.rep));
        for (auto [v, rep] : step.merges) merged_class.insert(classes.resolve(v));
        for (auto [v, rep] : step.merges) classes.merge_into(v, rep);
        int target = classes.resolve(step.rep);

        // keep everything not incident to the merged class, then retain the
        // heaviest incident edges that do not close a cycle
        std::map<int, int> uf;
        auto find = [&](auto&& self, int x) -> int {
            auto it = uf.emplace(x, x).first;
            if (it->second != x) it->second = self(self, it->second);
            return it->second;
        };
        std::vector<RefEdge> kept;
        std::vector<const RefEdge*> incident;
        Rational deleted = 0;
        for (const RefEdge& e : forest) {
            int cu = classes.resolve(e.u), cv = classes.resolve(e.v);
            bool touches = merged_class.count(cu) || merged_class.count(cv) || cu == target ||
                           cv == target;
            if (!touches) {
                uf[find(find, cu)] = find(find, cv);
                kept.push_back(e);
            } else {
                incident.push_back(&e);
            }
        }
        std::sort(incident.begin(), incident.end(), [](const RefEdge* a, const RefEdge* b) {
            return a->w != b->w ? a->w > b->w : a->orig < b->orig;
        });
        for (const RefEdge* e : incident) {
            int cu = classes.resolve(e->u), cv = classes.resolve(e->v);
            if (cu == cv || find(find, cu) == find(find, cv)) {
                deleted += e->w; // loop or cycle-closer: joins D_t
            } else {
                uf[find(find, cu)] = find(find, cv);
                kept.push_back(*e);
            }
        }
        forest = std::move(kept);
        if (step.weight <= (1 + epsilon / 2) * deleted)
            good++;
        else
            bad++;
    }
    return {good, bad};
}

struct PlantedMeta {
    std::vector<std::pair<int, int>> edges; // 1-based file endpoints
    int p = 0;
    int c = 1;
};

std::optional<PlantedMeta> load_planted_meta(const std::string& instance_path) {
    std::ifstream in(instance_path + ".meta.json", std::ios::binary);
    if (!in) return std::nullopt;
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.contains("planted_edges")) return std::nullopt;
    PlantedMeta meta;
    for (const auto& e : j["planted_edges"])
        meta.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    meta.p = j.value("planted_p", 0);
    meta.c = j.value("planted_c", 1);
    return meta;
}

struct BenchCell {
    std::string path;
    std::string solver;
};

int cmd_bench(const std::string& manifest, const std::string& report, const Rational& epsilon,
              int p, int c) {
    std::istringstream in(read_file(manifest));
    std::vector<std::string> paths;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] != '#') paths.push_back(line);
    }
    std::vector<BenchCell> cells;
    for (const auto& path : paths)
        for (const char* solver : {"epas", "exact", "oracle"}) cells.push_back({path, solver});

    int workers = 1;
    if (const char* env = std::getenv("STEINER_WORKERS")) workers = std::max(1, std::atoi(env));

    std::vector<RunRecord> records(cells.size());
    std::mutex next_mutex;
    std::size_t next = 0;
    auto work = [&] {
        for (;;) {
            std::size_t mine;
            {
                std::lock_guard<std::mutex> lock(next_mutex);
                if (next >= cells.size()) return;
                mine = next++;
            }
            const BenchCell& cell = cells[mine];
            RunRecord& record = records[mine];
            record.solver = cell.solver;
            auto start = std::chrono::steady_clock::now();
            try {
                ParsedInstance parsed = parse_instance(read_file(cell.path));
                const Instance& inst = parsed.instance;
                record.instance = parsed.name;
                Solution sol;
                if (cell.solver == std::string("oracle")) {
                    OracleRestriction restrict;
                    restrict.max_steiner = p;
                    restrict.max_components = c;
                    OracleResult result = brute_force(inst.graph, inst.spec, restrict);
                    if (!result.feasible) throw infeasible_error("restricted oracle infeasible");
                    sol.edges = result.witness;
                    sol.cost = result.cost;
                } else if (inst.graph.directed()) {
                    if (cell.solver == std::string("exact")) {
                        sol = dreyfus_wagner_directed(inst.graph, inst.spec.terminals,
                                                      *inst.spec.root);
                    } else {
                        DirectedOutcome outcome = epas_directed(inst.graph, inst.spec, p, epsilon);
                        if (outcome.certified_no) throw infeasible_error(outcome.no_reason);
                        sol = outcome.solution;
                        record.contractions =
                            static_cast<int>(outcome.reduction.steps.size());
                    }
                } else if (inst.spec.kind == TerminalSpec::Kind::forest) {
                    if (cell.solver == std::string("exact")) {
                        sol = exact_steiner_forest(inst.graph, inst.spec.pairs, c);
                    } else {
                        ForestRun run = run_forest_pipeline(inst, epsilon, p, c);
                        sol = run.solution;
                        record.contractions = run.stats.contractions;
                        record.residual_terminals = run.stats.residual_terminals;
                        record.tau = run.stats.tau.str();
                        if (auto meta = load_planted_meta(cell.path)) {
                            std::vector<int> order = file_vertex_order(inst.graph);
                            std::vector<int> reference;
                            for (auto [fu, fv] : meta->edges) {
                                int u = order[fu - 1], v = order[fv - 1];
                                for (int i = 0; i < static_cast<int>(inst.graph.edges().size());
                                     i++) {
                                    const Edge& e = inst.graph.edges()[i];
                                    if ((e.u == u && e.v == v) || (e.u == v && e.v == u)) {
                                        reference.push_back(i);
                                        break;
                                    }
                                }
                            }
                            auto [good, bad] =
                                classify_contractions(inst, reference, epsilon, meta->p, meta->c);
                            record.good_steps = good;
                            record.bad_steps = bad;
                        }
                    }
                } else {
                    if (cell.solver == std::string("exact")) {
                        sol = dreyfus_wagner(inst.graph, inst.spec.terminals);
                    } else {
                        Instance forest = st_to_sf(inst.graph, inst.spec.terminals);
                        ForestRun run = run_forest_pipeline(forest, epsilon, p, 1);
                        sol = run.solution;
                        record.contractions = run.stats.contractions;
                        record.residual_terminals = run.stats.residual_terminals;
                        record.tau = run.stats.tau.str();
                    }
                }
                record.cost = format_rational(sol.cost);
                record.guarantee_void = sol.guarantee_void;
            } catch (const infeasible_error&) {
                record.exit_code = kExitInfeasible;
            } catch (const input_error& err) {
                record.exit_code = kExitInputError;
                if (record.instance.empty()) record.instance = cell.path;
            }
            record.wall_ms = elapsed_ms(start);
        }
    };
    std::vector<std::thread> pool;
    for (int i = 0; i < workers; i++) pool.emplace_back(work);
    for (auto& t : pool) t.join();

    // ratio column: epas/exact cost over the oracle cost of the same instance
    for (std::size_t i = 0; i < cells.size(); i++) {
        if (records[i].exit_code != kExitSolved || records[i].cost == "-") continue;
        for (std::size_t j = 0; j < cells.size(); j++) {
            if (cells[j].path == cells[i].path && cells[j].solver == std::string("oracle") &&
                records[j].exit_code == kExitSolved && records[j].cost != "-") {
                Rational mine = parse_rational(records[i].cost);
                Rational oracle = parse_rational(records[j].cost);
                if (oracle > 0) records[i].ratio_vs_oracle = format_rational(mine / oracle);
                else if (mine == 0) records[i].ratio_vs_oracle = "1";
            }
        }
    }

    std::cout << std::left << std::setw(24) << "instance" << std::setw(10) << "solver"
              << std::setw(14) << "cost" << std::setw(12) << "ratio" << std::setw(10) << "ms"
              << std::setw(8) << "steps" << std::setw(10) << "good/bad" << std::setw(10)
              << "resid|R|" << std::setw(10) << "tau" << "\n";
    for (std::size_t i = 0; i < cells.size(); i++) {
        const RunRecord& r = records[i];
        std::cout << std::left << std::setw(24) << r.instance << std::setw(10) << r.solver
                  << std::setw(14) << (r.exit_code == kExitSolved ? r.cost : "-") << std::setw(12)
                  << r.ratio_vs_oracle << std::setw(10) << std::fixed << std::setprecision(1)
                  << r.wall_ms << std::setw(8)
                  << (r.contractions >= 0 ? std::to_string(r.contractions) : "-") << std::setw(10)
                  << (r.good_steps >= 0
                          ? std::to_string(r.good_steps) + "/" + std::to_string(r.bad_steps)
                          : "-")
                  << std::setw(10)
                  << (r.residual_terminals >= 0 ? std::to_string(r.residual_terminals) : "-")
                  << std::setw(10) << r.tau << "\n";
        append_report(report, r);
    }
    return kExitSolved;
}

int cmd_gen_random(const RandomInstanceParams& params, const std::string& output,
                   const std::string& meta_path, const std::string& name) {
    GeneratedInstance gen = gen_random(params);
    write_file(output, write_instance(gen.instance, name));
    if (!meta_path.empty()) {
        json meta;
        meta["seed"] = params.seed;
        meta["n"] = params.n;
        meta["edge_density"] = params.edge_density;
        meta["directed"] = params.directed;
        if (gen.planted_cost) {
            meta["planted_cost"] = format_rational(*gen.planted_cost);
            meta["planted_p"] = params.plant->first;
            meta["planted_c"] = params.plant->second;
            std::vector<int> order = file_vertex_order(gen.instance.graph);
            std::vector<int> file_id(gen.instance.graph.universe(), 0);
            for (std::size_t i = 0; i < order.size(); i++)
                file_id[order[i]] = static_cast<int>(i) + 1;
            json edges = json::array();
            for (int id : gen.planted_edges) {
                const Edge& e = gen.instance.graph.edge(id);
                edges.push_back({file_id[e.u], file_id[e.v]});
            }
            meta["planted_edges"] = edges;
        }
        write_file(meta_path, meta.dump(2) + "\n");
    }
    return kExitSolved;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Steiner tree/forest/arborescence solver toolkit"};
    app.require_subcommand(1);

    std::string input, output, report, trace, solution, manifest, meta;
    std::string epsilon_text = "1";
    int p = 0, c = 1;
    bool exact = false;

    auto add_solver_options = [&](CLI::App* cmd, bool with_c) {
        cmd->add_option("--input,-i", input, "instance file")->required();
        cmd->add_option("--output,-o", output, "solution file (stdout when omitted)");
        cmd->add_option("--report", report, "append a JSON-lines run record here");
        cmd->add_option("--epsilon,-e", epsilon_text, "approximation parameter (> 0)");
        cmd->add_option("--p,-p", p, "Steiner-vertex budget of the reference solution");
        if (with_c) cmd->add_option("--c,-c", c, "component budget of the reference solution");
        cmd->add_flag("--exact", exact, "skip preprocessing, run the exact FPT backend");
    };

    CLI::App* solve_st = app.add_subcommand("solve-st", "undirected Steiner tree");
    add_solver_options(solve_st, false);
    CLI::App* solve_sf = app.add_subcommand("solve-sf", "Steiner forest with a component budget");
    add_solver_options(solve_sf, true);
    CLI::App* solve_dst = app.add_subcommand("solve-dst", "unweighted directed Steiner tree");
    add_solver_options(solve_dst, false);

    std::string out_instance, out_trace;
    CLI::App* reduce = app.add_subcommand("reduce", "emit the reduced instance and its trace");
    reduce->add_option("--input,-i", input)->required();
    reduce->add_option("--out-instance", out_instance)->required();
    reduce->add_option("--out-trace", out_trace)->required();
    reduce->add_option("--epsilon,-e", epsilon_text);
    reduce->add_option("--p,-p", p);
    reduce->add_option("--c,-c", c);

    int subset_size = 3;
    std::string round_eps_text = "0";
    CLI::App* kernelize = app.add_subcommand("kernelize", "subset-union lossy kernel");
    kernelize->add_option("--input,-i", input)->required();
    kernelize->add_option("--out-instance", out_instance)->required();
    kernelize->add_option("--out-provenance", out_trace)->required();
    kernelize->add_option("--subset-size,-k", subset_size, "terminal subset size K");
    kernelize->add_option("--round-eps", round_eps_text, "weight-rounding epsilon (0 = exact)");

    CLI::App* lift = app.add_subcommand("lift", "map a reduced/kernel solution back");
    lift->add_option("--input,-i", input, "original instance")->required();
    lift->add_option("--trace,-t", trace, "trace or provenance file")->required();
    lift->add_option("--solution,-s", solution, "solution of the reduced instance")->required();
    lift->add_option("--output,-o", output);

    int max_steiner = -1, max_components = -1;
    CLI::App* oracle = app.add_subcommand("oracle", "edge-subset brute force (<= 22 edges)");
    oracle->add_option("--input,-i", input)->required();
    oracle->add_option("--output,-o", output);
    oracle->add_option("--report", report);
    oracle->add_option("--max-steiner", max_steiner, "restrict Steiner vertex count");
    oracle->add_option("--max-components", max_components, "restrict component count");

    CLI::App* gen = app.add_subcommand("gen", "instance generators");
    gen->require_subcommand(1);
    RandomInstanceParams rnd;
    int plant_p = -1, plant_c = -1;
    std::string gen_name = "generated";
    CLI::App* gen_random_cmd = gen->add_subcommand("random", "seeded random instance");
    gen_random_cmd->add_option("--output,-o", output)->required();
    gen_random_cmd->add_option("--meta", meta, "metadata sidecar (JSON)");
    gen_random_cmd->add_option("--name", gen_name);
    gen_random_cmd->add_option("--n", rnd.n);
    gen_random_cmd->add_option("--density", rnd.edge_density);
    gen_random_cmd->add_option("--weight-lo", rnd.weight_lo);
    gen_random_cmd->add_option("--weight-hi", rnd.weight_hi);
    gen_random_cmd->add_option("--weight-den", rnd.weight_denominator);
    gen_random_cmd->add_flag("--directed", rnd.directed);
    gen_random_cmd->add_option("--pairs", rnd.pair_count);
    gen_random_cmd->add_option("--terminals", rnd.terminal_count);
    gen_random_cmd->add_option("--plant-p", plant_p);
    gen_random_cmd->add_option("--plant-c", plant_c);
    gen_random_cmd->add_option("--seed", rnd.seed);

    std::string host;
    CLI::App* gen_domset = gen->add_subcommand("domset", "Dominating Set reduction instance");
    gen_domset->add_option("--host", host, "undirected host graph (instance file)")->required();
    gen_domset->add_option("--output,-o", output)->required();
    gen_domset->add_option("--meta", meta);

    int gc_n = 3, gc_m = 3, gc_b = 1, gc_t = 2, gc_gamma = 3, gc_yes = 0;
    std::uint64_t gc_seed = 1;
    CLI::App* gen_gap = gen->add_subcommand("gapcomp", "Set Cover gap composition instance");
    gen_gap->add_option("--output,-o", output)->required();
    gen_gap->add_option("--meta", meta);
    gen_gap->add_option("--n", gc_n, "universe size");
    gen_gap->add_option("--m", gc_m, "family size");
    gen_gap->add_option("--b", gc_b, "budget");
    gen_gap->add_option("--t", gc_t, "number of composed instances");
    gen_gap->add_option("--gamma", gc_gamma, "gap factor (>= 3)");
    gen_gap->add_option("--yes-count", gc_yes, "number of planted yes-instances");
    gen_gap->add_option("--seed", gc_seed);

    CLI::App* bench = app.add_subcommand("bench", "instances x solvers table");
    bench->add_option("--manifest,-m", manifest, "file with one instance path per line")
        ->required();
    bench->add_option("--report", report);
    bench->add_option("--epsilon,-e", epsilon_text);
    bench->add_option("--p,-p", p);
    bench->add_option("--c,-c", c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitInputError;
    }

    try {
        Rational epsilon = parse_rational(epsilon_text);
        if (*solve_st) return cmd_solve("solve-st", input, output, report, epsilon, p, 1, exact);
        if (*solve_sf) return cmd_solve("solve-sf", input, output, report, epsilon, p, c, exact);
        if (*solve_dst) return cmd_solve("solve-dst", input, output, report, epsilon, p, 1, exact);
        if (*reduce) return cmd_reduce(input, out_instance, out_trace, epsilon, p, c);
        if (*kernelize)
            return cmd_kernelize(input, out_instance, out_trace, subset_size,
                                 parse_rational(round_eps_text));
        if (*lift) return cmd_lift(input, trace, solution, output);
        if (*oracle) return cmd_oracle(input, output, report, max_steiner, max_components);
        if (*gen_random_cmd) {
            if (plant_p >= 0 || plant_c >= 0)
                rnd.plant = {{std::max(plant_p, 0), std::max(plant_c, 1)}};
            return cmd_gen_random(rnd, output, meta, gen_name);
        }
        if (*gen_domset) {
            ParsedInstance h = parse_instance(read_file(host));
            if (h.instance.graph.directed()) throw input_error("host graph must be undirected");
            std::vector<std::pair<int, int>> h_edges;
            for (const Edge& e : h.instance.graph.edges()) h_edges.emplace_back(e.u, e.v);
            auto red = gen_dominating_set_reduction(h.instance.graph.universe(), h_edges);
            write_file(output, write_instance(red.instance, h.name + "-domset"));
            if (!meta.empty()) {
                json j;
                j["host_n"] = h.instance.graph.universe();
                j["host_m"] = h_edges.size();
                write_file(meta, j.dump(2) + "\n");
            }
            return kExitSolved;
        }
        if (*gen_gap) {
            std::vector<SetCoverInstance> instances;
            for (int k = 0; k < gc_t; k++)
                instances.push_back(k < gc_yes ? make_yes_instance(gc_n, gc_m, gc_b, gc_seed + k)
                                               : make_no_instance(gc_n, gc_m, gc_b));
            auto comp = gen_gap_composition(instances, gc_gamma);
            write_file(output, write_instance(comp.instance, "gap-composition"));
            if (!meta.empty()) {
                json j;
                j["d"] = comp.d.str();
                j["c_yes"] = comp.c_yes.str();
                j["no_bound"] = (BigInt(gc_n) * (2 * gc_gamma * gc_b - 1)).str();
                j["yes_count"] = gc_yes;
                write_file(meta, j.dump(2) + "\n");
            }
            return kExitSolved;
        }
        if (*bench) return cmd_bench(manifest, report, epsilon, p, c);
    } catch (const infeasible_error& err) {
        std::cerr << "infeasible: " << err.what() << "\n";
        return kExitInfeasible;
    } catch (const input_error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& err) {
        std::cerr << "internal error: " << err.what() << "\n";
        return 1;
    }
    return kExitInputError;
}
