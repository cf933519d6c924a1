// Acceptance suite: oracle-equivalence and invariant checks at desk scale,
// one pass/fail line per criterion. Run via ctest or directly; argv[1] must
// point at the CLI binary for the determinism criterion.

#include "steiner/directed_epas.hpp"
#include "steiner/exact_fpt.hpp"
#include "steiner/generators.hpp"
#include "steiner/io.hpp"
#include "steiner/kernelizer.hpp"
#include "steiner/oracle.hpp"
#include "steiner/star_contraction.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

using namespace steiner;

namespace {

int failures = 0;

void criterion(int number, const std::string& name, bool pass, const std::string& detail) {
    std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << number << ": " << name << " ("
              << detail << ")" << std::endl;
    if (!pass) failures++;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

std::vector<Edge> random_edges(std::mt19937_64& rng, int n, int m, bool allow_zero = false) {
    std::vector<Edge> edges;
    for (int i = 0; i < m; i++) {
        int w = allow_zero ? static_cast<int>(rng() % 9) : 1 + static_cast<int>(rng() % 9);
        edges.push_back({static_cast<int>(rng() % n), static_cast<int>(rng() % n), Rational(w), i});
    }
    return edges;
}

std::vector<int> random_terminals(std::mt19937_64& rng, int n, int k) {
    std::vector<int> ids(n);
    std::iota(ids.begin(), ids.end(), 0);
    for (int i = 0; i < k; i++) std::swap(ids[i], ids[i + rng() % (n - i)]);
    ids.resize(k);
    return ids;
}

// ---- criterion 1: Dreyfus-Wagner vs brute force, both orientations ----
void criterion_1() {
    Timer timer;
    std::mt19937_64 rng(101);
    int checked = 0, mismatches = 0;
    while (checked < 500) {
        bool directed = checked % 2 == 0;
        int n = 4 + static_cast<int>(rng() % 4);   // <= 7 vertices
        int m = 6 + static_cast<int>(rng() % 7);   // <= 12 edges
        Graph g = Graph::root_instance(n, directed, random_edges(rng, n, m));
        if (g.edges().size() > 12) continue;
        int k = 1 + static_cast<int>(rng() % std::min(4, n));
        auto R = random_terminals(rng, n, k);
        auto spec = TerminalSpec::make_tree(R, directed ? std::optional<int>(R[0]) : std::nullopt);
        OracleResult oracle = brute_force(g, spec);
        bool solver_feasible = true;
        Rational cost;
        try {
            Solution s = directed ? dreyfus_wagner_directed(g, R, R[0]) : dreyfus_wagner(g, R);
            cost = s.cost;
        } catch (const infeasible_error&) {
            solver_feasible = false;
        }
        if (solver_feasible != oracle.feasible || (oracle.feasible && cost != oracle.cost))
            mismatches++;
        checked++;
    }
    std::ostringstream detail;
    detail << checked << " instances, " << mismatches << " mismatches, " << timer.seconds()
           << "s";
    criterion(1, "subset DP equals the edge-subset oracle in both orientations",
              mismatches == 0 && timer.seconds() < 30, detail.str());
}

// ---- criterion 2: exact Steiner forest vs restricted oracle ----
void criterion_2() {
    Timer timer;
    std::mt19937_64 rng(202);
    int checked = 0, mismatches = 0;
    while (checked < 200) {
        int n = 5 + static_cast<int>(rng() % 3);
        Graph g = Graph::root_instance(n, false, random_edges(rng, n, 6 + rng() % 6));
        if (g.edges().size() > 12) continue;
        std::vector<std::pair<int, int>> pairs;
        for (int i = 0, np = 1 + static_cast<int>(rng() % 3); i < np; i++)
            pairs.emplace_back(static_cast<int>(rng() % n), static_cast<int>(rng() % n));
        auto spec = TerminalSpec::make_forest(pairs);
        if (spec.pairs.empty()) continue;
        for (int c = 1; c <= 2; c++) {
            OracleRestriction restrict;
            restrict.max_components = c;
            OracleResult oracle = brute_force(g, spec, restrict);
            try {
                Solution s = exact_steiner_forest(g, pairs, c);
                if (!oracle.feasible || s.cost != oracle.cost) mismatches++;
                if (c == 1) {
                    Solution tree = dreyfus_wagner(g, spec.terminal_vertices());
                    if (tree.cost != s.cost) mismatches++;
                }
            } catch (const infeasible_error&) {
                if (oracle.feasible) mismatches++;
            }
        }
        checked++;
    }
    std::ostringstream detail;
    detail << checked << " instances x c in {1,2}, " << mismatches << " mismatches, "
           << timer.seconds() << "s";
    criterion(2, "partition-enumeration Steiner forest is exact", mismatches == 0, detail.str());
}

// ---- criterion 3: EPAS forest ratio on planted instances ----
void criterion_3() {
    Timer timer;
    const std::vector<Rational> epsilons{Rational(1, 2), Rational(1), Rational(3)};
    int checked = 0, violations = 0, loop_fired = 0;
    std::uint64_t seed = 3000;
    while (checked < 200) {
        RandomInstanceParams params;
        params.seed = seed++;
        bool path_style = checked % 4 == 3; // many cheap terminals: the loop actually contracts
        if (path_style) {
            params.n = 9;
            params.edge_density = 0.10;
            params.pair_count = 8;
            params.plant = {{0, 1}};
        } else {
            params.n = 6 + static_cast<int>(seed % 4);
            params.edge_density = 0.25;
            params.pair_count = 2 + static_cast<int>(seed % 2);
            params.plant = {{static_cast<int>(seed % 3), 1 + static_cast<int>(seed % 2)}};
        }
        auto gen = gen_random(params);
        if (gen.instance.graph.edges().size() > 20) continue;
        auto [p, c] = *params.plant;
        OracleRestriction restrict;
        restrict.max_steiner = p;
        restrict.max_components = c;
        OracleResult oracle = brute_force(gen.instance.graph, gen.instance.spec, restrict);
        if (!oracle.feasible) continue; // planting guarantees feasibility; stay safe
        for (const Rational& eps : epsilons) {
            Solution s = epas_pipeline_forest(gen.instance.graph, gen.instance.spec.pairs, eps,
                                              p, c);
            if (s.cost > (1 + eps) * oracle.cost) violations++;
            if (!check_feasible(gen.instance.graph, gen.instance.spec, s.edges)) violations++;
        }
        // count how often the contraction loop really fires at eps=3
        Thresholds thr = compute_thresholds(Rational(3) / 2, p, c);
        auto norm = normalize_weights(gen.instance.graph, gen.instance.spec);
        if (!reduce_forest(norm, thr).trace.steps.empty()) loop_fired++;
        checked++;
    }
    std::ostringstream detail;
    detail << checked << " planted instances x 3 epsilons, " << violations << " violations, "
           << loop_fired << " with live contraction, " << timer.seconds() << "s";
    criterion(3, "forest pipeline stays within (1+eps) of the restricted oracle",
              violations == 0 && loop_fired > 0 && timer.seconds() < 300, detail.str());
}

// ---- criterion 4: min-ratio stars are sorted prefixes ----
void criterion_4() {
    Timer timer;
    std::mt19937_64 rng(404);
    int samples = 0, beaten = 0;
    while (samples < 1000) {
        int n = 5 + static_cast<int>(rng() % 4);
        Graph g(n, false, random_edges(rng, n, 4 + rng() % 10));
        std::vector<std::pair<int, int>> pairs;
        for (int i = 0; i < 3; i++)
            pairs.emplace_back(static_cast<int>(rng() % n), static_cast<int>(rng() % n));
        auto spec = TerminalSpec::make_forest(pairs);
        if (spec.pairs.empty()) continue;
        int center = static_cast<int>(rng() % n);
        auto star = best_star_at(g, spec, center);

        // subset enumeration over the center's terminal-incident edges
        std::vector<Rational> weights;
        int z = spec.is_terminal(center) ? 1 : 0;
        for (const Edge& e : g.edges()) {
            int other = e.u == center ? e.v : e.v == center ? e.u : -1;
            if (other >= 0 && spec.is_terminal(other)) weights.push_back(e.w);
        }
        std::optional<Rational> best;
        for (std::uint32_t mask = 1; mask < (1u << weights.size()); mask++) {
            Rational total = 0;
            int q = z;
            for (std::size_t i = 0; i < weights.size(); i++)
                if (mask >> i & 1) {
                    total += weights[i];
                    q++;
                }
            if (q < 2) continue;
            Rational ratio = total / (q - 1);
            if (!best || ratio < *best) best = ratio;
        }
        if (star.has_value() != best.has_value()) beaten++;
        else if (star && *best < star->ratio) beaten++;
        samples++;
    }
    std::ostringstream detail;
    detail << samples << " (graph, center) samples, " << beaten << " beaten, " << timer.seconds()
           << "s";
    criterion(4, "no edge subset at a center beats the sorted-prefix star", beaten == 0,
              detail.str());
}

// ---- criterion 5: residual size bounds ----
void criterion_5() {
    Timer timer;
    int forest_checked = 0, forest_bad = 0;
    std::uint64_t seed = 5000;
    const std::vector<std::tuple<Rational, int, int>> configs{
        {Rational(3), 0, 1}, {Rational(2), 0, 1}, {Rational(3), 0, 2}};
    while (forest_checked < 150) {
        for (const auto& [eps, p, c] : configs) {
            RandomInstanceParams params;
            params.n = 12;
            params.edge_density = 0.15;
            params.pair_count = 9;
            params.plant = {{p, c}};
            params.seed = seed++;
            auto gen = gen_random(params);
            Thresholds thr = compute_thresholds(eps, p, c);
            auto norm = normalize_weights(gen.instance.graph, gen.instance.spec);
            auto red = reduce_forest(norm, thr);
            if (red.stopped_by_counter &&
                BigInt(red.instance.spec.terminal_count()) >= thr.tau)
                forest_bad++;
            forest_checked++;
        }
    }

    int directed_checked = 0, directed_bad = 0;
    seed = 5500;
    while (directed_checked < 150) {
        RandomInstanceParams params;
        params.n = 8;
        params.edge_density = 0.3;
        params.directed = true;
        params.terminal_count = 3 + static_cast<int>(seed % 4);
        params.plant = {{1 + static_cast<int>(seed % 2), 1}};
        params.seed = seed++;
        auto gen = gen_random(params);
        if (gen.instance.graph.edges().size() > 20) continue;
        int p = params.plant->first;
        for (Rational eps : {Rational(1, 2), Rational(1)}) {
            OracleRestriction restrict;
            restrict.max_steiner = p;
            OracleResult oracle = brute_force(gen.instance.graph, gen.instance.spec, restrict);
            if (!oracle.feasible) continue;
            auto red = reduce_directed(gen.instance.graph, gen.instance.spec, p, eps);
            if (red.certified_no) {
                directed_bad++;
                continue;
            }
            if (Rational(red.instance.spec.terminal_count() - 1) >= Rational(p) * p / eps)
                directed_bad++;
        }
        directed_checked++;
    }
    std::ostringstream detail;
    detail << forest_checked << " forest reductions (" << forest_bad << " over tau), "
           << directed_checked << " directed (" << directed_bad << " over p^2/eps), "
           << timer.seconds() << "s";
    criterion(5, "residual terminal counts respect tau and p^2/eps",
              forest_bad == 0 && directed_bad == 0, detail.str());
}

// ---- criterion 6: directed EPAS ratio and no false certified-no ----
void criterion_6() {
    Timer timer;
    int checked = 0, violations = 0, false_no = 0;
    std::uint64_t seed = 6000;
    while (checked < 200) {
        RandomInstanceParams params;
        params.n = 7 + static_cast<int>(seed % 2);
        params.edge_density = 0.3;
        params.directed = true;
        params.terminal_count = 3 + static_cast<int>(seed % 3);
        params.plant = {{1 + static_cast<int>(seed % 2), 1}};
        params.seed = seed++;
        auto gen = gen_random(params);
        if (gen.instance.graph.edges().size() > 20) continue;
        int p = params.plant->first;
        OracleRestriction restrict;
        restrict.max_steiner = p;
        OracleResult oracle = brute_force(gen.instance.graph, gen.instance.spec, restrict);
        if (!oracle.feasible) continue;
        for (Rational eps : {Rational(1, 2), Rational(1)}) {
            DirectedOutcome outcome = epas_directed(gen.instance.graph, gen.instance.spec, p, eps);
            if (outcome.certified_no) {
                false_no++;
                continue;
            }
            if (outcome.solution.cost > (1 + eps) * oracle.cost) violations++;
        }
        checked++;
    }
    std::ostringstream detail;
    detail << checked << " instances x 2 epsilons, " << violations << " ratio violations, "
           << false_no << " false certified-no, " << timer.seconds() << "s";
    criterion(6, "directed pipeline stays within (1+eps); certified-no never lies",
              violations == 0 && false_no == 0, detail.str());
}

// ---- criterion 7: rule safety identities by double brute force ----
void criterion_7() {
    Timer timer;
    std::mt19937_64 rng(707);
    int r1_fired = 0, r1_bad = 0;
    while (r1_fired < 100) {
        int n = 6;
        Graph g = Graph::root_instance(n, true, [&] {
            auto edges = random_edges(rng, n, 9);
            for (Edge& e : edges) e.w = 1;
            return edges;
        }());
        if (g.edges().size() > 12) continue;
        std::vector<int> terms{0};
        for (int v = 1; v < n; v++)
            if (rng() % 2) terms.push_back(v);
        auto spec = TerminalSpec::make_tree(terms, 0);
        auto app = apply_r1(g, spec);
        if (!app) continue;
        OracleResult before = brute_force(g, spec);
        if (!before.feasible) continue;
        OracleResult after = brute_force(app->instance.graph, app->instance.spec);
        if (!after.feasible || before.cost != after.cost + 1) r1_bad++;
        r1_fired++;
    }

    int r2_fired = 0, r2_bad = 0;
    while (r2_fired < 100) {
        int rows = 2 + static_cast<int>(rng() % 2);
        int cols = 2 + static_cast<int>(rng() % 3);
        std::vector<Edge> arcs;
        int id = 0;
        for (int i = 0; i < rows; i++) arcs.push_back({0, 1 + i, Rational(1), id++});
        for (int i = 0; i < rows; i++)
            for (int j = 0; j < cols; j++)
                if (rng() % 3) arcs.push_back({1 + i, 1 + rows + j, Rational(1), id++});
        Graph g = Graph::root_instance(1 + rows + cols, true, std::move(arcs));
        if (g.edges().size() > 14) continue;
        std::vector<int> terms{0};
        for (int j = 0; j < cols; j++) terms.push_back(1 + rows + j);
        auto spec = TerminalSpec::make_tree(terms, 0);
        int p = 2;
        Rational eps(1);
        auto app = apply_r2(g, spec, p, eps);
        if (!app) continue;
        OracleResult before = brute_force(g, spec);
        if (!before.feasible) continue;
        OracleResult after = brute_force(app->instance.graph, app->instance.spec);
        if (!after.feasible) {
            r2_bad++;
            r2_fired++;
            continue;
        }
        Rational lifted = after.cost + static_cast<int>(app->step.lift_arcs.size());
        if (lifted > (1 + eps) * before.cost) r2_bad++;
        r2_fired++;
    }
    std::ostringstream detail;
    detail << r1_fired << " R1 firings (" << r1_bad << " bad), " << r2_fired << " R2 firings ("
           << r2_bad << " bad), " << timer.seconds() << "s";
    criterion(7, "R1 is exactly 1-safe and R2 is (1+eps)-safe", r1_bad == 0 && r2_bad == 0,
              detail.str());
}

// ---- criterion 8: hardness-reduction construction identities ----
void criterion_8() {
    Timer timer;
    long long domset_checked = 0, domset_bad = 0;
    for (int n = 1; n <= 6; n++) {
        std::vector<std::pair<int, int>> all_edges;
        for (int u = 0; u < n; u++)
            for (int v = u + 1; v < n; v++) all_edges.emplace_back(u, v);
        for (std::uint32_t mask = 0; mask < (1u << all_edges.size()); mask++) {
            std::vector<std::pair<int, int>> edges;
            for (std::size_t i = 0; i < all_edges.size(); i++)
                if (mask >> i & 1) edges.push_back(all_edges[i]);
            auto red = gen_dominating_set_reduction(n, edges);
            const int m = static_cast<int>(edges.size());
            bool ok = red.instance.graph.vertex_count() == 2 * n + 1;
            int root_arcs = 0, incidence_arcs = 0;
            for (const Edge& e : red.instance.graph.edges())
                (e.u == red.root ? root_arcs : incidence_arcs)++;
            ok = ok && root_arcs == n && incidence_arcs == n + 2 * m;

            // exhaustive dominating set
            std::vector<std::uint32_t> closed(n);
            for (int v = 0; v < n; v++) closed[v] = 1u << v;
            for (auto [u, v] : edges) {
                closed[u] |= 1u << v;
                closed[v] |= 1u << u;
            }
            int best = n;
            for (std::uint32_t pick = 0; pick < (1u << n); pick++) {
                std::uint32_t dom = 0;
                for (int v = 0; v < n; v++)
                    if (pick >> v & 1) dom |= closed[v];
                if (dom == (1u << n) - 1) best = std::min(best, __builtin_popcount(pick));
            }
            Solution s = dreyfus_wagner_directed(red.instance.graph,
                                                 red.instance.spec.terminals, red.root);
            ok = ok && s.cost == Rational(best);
            if (!ok) domset_bad++;
            domset_checked++;
        }
    }

    bool gap_ok = true;
    {
        // yes-side: one planted cover among no-instances
        std::vector<SetCoverInstance> yes_side{make_yes_instance(2, 2, 1, 88),
                                               make_no_instance(2, 2, 1)};
        auto comp = gen_gap_composition(yes_side, 3);
        Solution s = dreyfus_wagner_directed(comp.instance.graph, comp.instance.spec.terminals,
                                             comp.root);
        gap_ok = gap_ok && s.cost <= Rational(comp.c_yes);
        int out_deg = 0;
        for (const Edge& e : comp.instance.graph.edges())
            if (e.u == comp.root) out_deg++;
        gap_ok = gap_ok && out_deg == 2 && comp.instance.spec.terminal_count() == 3;

        // no-side: singleton families with n >= gamma*b
        std::vector<SetCoverInstance> no_side{make_no_instance(3, 3, 1), make_no_instance(3, 3, 1)};
        auto comp_no = gen_gap_composition(no_side, 3);
        Solution s_no = dreyfus_wagner_directed(comp_no.instance.graph,
                                                comp_no.instance.spec.terminals, comp_no.root);
        gap_ok = gap_ok && s_no.cost >= Rational(3 * (2 * 3 * 1 - 1));
    }
    std::ostringstream detail;
    detail << domset_checked << " host graphs exhaustively (" << domset_bad
           << " bad), gap bounds " << (gap_ok ? "hold" : "violated") << ", " << timer.seconds()
           << "s";
    criterion(8, "reduction constructions match their combinatorial identities",
              domset_bad == 0 && gap_ok, detail.str());
}

// ---- criterion 9: kernelizer exact regime and rounding regime ----
void criterion_9() {
    Timer timer;
    int exact_checked = 0, exact_bad = 0, round_checked = 0, round_bad = 0;
    std::uint64_t seed = 9000;
    while (exact_checked < 100) {
        RandomInstanceParams params;
        params.n = 7 + static_cast<int>(seed % 2);
        params.edge_density = 0.4;
        params.terminal_count = 3 + static_cast<int>(seed % 2);
        params.weight_denominator = 1 + static_cast<int>(seed % 3);
        params.seed = seed++;
        auto gen = gen_random(params);
        Instance forest = st_to_sf(gen.instance.graph, gen.instance.spec.terminals);
        if (forest.spec.pairs.empty()) continue;
        try {
            Solution truth = exact_steiner_forest(gen.instance.graph, forest.spec.pairs, 1);
            int r = forest.spec.terminal_count();
            auto kernel = subset_union_kernel(gen.instance.graph, forest.spec, r, Rational(0));
            Solution in_kernel = exact_steiner_forest(kernel.instance.graph, forest.spec.pairs, 1);
            auto lifted =
                lift_kernel_solution(gen.instance.graph, forest.spec, kernel, in_kernel.edges);
            if (gen.instance.graph.weight_of(lifted) != truth.cost) exact_bad++;
            exact_checked++;

            Rational eps(1, 2);
            auto rounded = subset_union_kernel(gen.instance.graph, forest.spec, r, eps);
            Solution in_rounded =
                exact_steiner_forest(rounded.instance.graph, forest.spec.pairs, 1);
            auto lifted_rounded = lift_kernel_solution(gen.instance.graph, forest.spec, rounded,
                                                       in_rounded.edges);
            if (rounded.grid_step > 0 &&
                gen.instance.graph.weight_of(lifted_rounded) > (1 + eps) * truth.cost)
                round_bad++;
            round_checked++;
        } catch (const infeasible_error&) {
        }
    }
    std::ostringstream detail;
    detail << exact_checked << " exact-regime (" << exact_bad << " bad), " << round_checked
           << " rounded (" << round_bad << " bad), " << timer.seconds() << "s";
    criterion(9, "kernel is exact at K >= |R| and (1+eps)-bounded with rounding",
              exact_bad == 0 && round_bad == 0, detail.str());
}

// ---- criterion 10: determinism and file round trips ----
void criterion_10(const std::string& cli) {
    Timer timer;
    bool roundtrip_ok = true;
    std::uint64_t seed = 10100;
    for (int iter = 0; iter < 100; iter++) {
        RandomInstanceParams params;
        params.n = 4 + static_cast<int>(seed % 8);
        params.edge_density = 0.4;
        params.seed = seed++;
        int mode = iter % 3;
        if (mode == 0) params.pair_count = 1 + static_cast<int>(seed % 4);
        if (mode == 1) params.terminal_count = 2 + static_cast<int>(seed % 3);
        if (mode == 2) {
            params.directed = true;
            params.terminal_count = 2 + static_cast<int>(seed % 3);
        }
        auto gen = gen_random(params);
        auto parsed = parse_instance(write_instance(gen.instance, "rt"));
        if (!structurally_equal(parsed.instance.graph, gen.instance.graph) ||
            !(parsed.instance.spec == gen.instance.spec))
            roundtrip_ok = false;
    }

    bool determinism_ok = true;
    std::string detail_extra;
    if (cli.empty() || !std::filesystem::exists(cli)) {
        determinism_ok = false;
        detail_extra = "; CLI binary not found";
    } else {
        namespace fs = std::filesystem;
        fs::path dir = fs::temp_directory_path() / "steiner-acceptance";
        fs::remove_all(dir);
        fs::create_directories(dir);
        auto run = [&](const std::string& args) {
            std::string cmd = cli + " " + args + " >/dev/null 2>&1";
            return std::system(cmd.c_str()) == 0;
        };
        auto slurp = [](const fs::path& p) {
            std::ifstream in(p, std::ios::binary);
            std::ostringstream buf;
            buf << in.rdbuf();
            return buf.str();
        };
        std::string inst = (dir / "a.stp").string();
        determinism_ok =
            run("gen random --output " + inst + " --n 9 --density 0.4 --pairs 3 --plant-p 1 "
                "--plant-c 1 --seed 4242");
        for (int round = 0; round < 2 && determinism_ok; round++) {
            determinism_ok =
                run("solve-sf -i " + inst + " -e 1 -p 1 -c 1 -o " + (dir / "s1.sol").string()) &&
                run("solve-sf -i " + inst + " -e 1 -p 1 -c 1 -o " + (dir / "s2.sol").string());
            determinism_ok =
                determinism_ok && slurp(dir / "s1.sol") == slurp(dir / "s2.sol") &&
                !slurp(dir / "s1.sol").empty();
        }
        std::string dinst = (dir / "d.stp").string();
        determinism_ok = determinism_ok &&
                         run("gen random --output " + dinst +
                             " --n 8 --density 0.35 --directed --terminals 4 --plant-p 2 "
                             "--seed 77");
        determinism_ok = determinism_ok &&
                         run("solve-dst -i " + dinst + " -e 1 -p 2 -o " +
                             (dir / "d1.sol").string()) &&
                         run("solve-dst -i " + dinst + " -e 1 -p 2 -o " +
                             (dir / "d2.sol").string()) &&
                         slurp(dir / "d1.sol") == slurp(dir / "d2.sol") &&
                         !slurp(dir / "d1.sol").empty();
    }
    std::ostringstream detail;
    detail << "100 round trips " << (roundtrip_ok ? "ok" : "broken") << ", repeated CLI runs "
           << (determinism_ok ? "byte-identical" : "diverged") << detail_extra << ", "
           << timer.seconds() << "s";
    criterion(10, "solution files are deterministic; parse-write is the identity",
              roundtrip_ok && determinism_ok, detail.str());
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli = argc > 1 ? argv[1] : "";
    Timer total;
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10(cli);
    std::cout << (failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED") << " ("
              << total.seconds() << "s total)" << std::endl;
    return failures == 0 ? 0 : 1;
}
