#include <atomic>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "equitree/constructive.hpp"
#include "equitree/exact.hpp"
#include "equitree/generators.hpp"
#include "equitree/graph_io.hpp"
#include "equitree/json_io.hpp"

namespace et = equitree;
using nlohmann::json;

namespace {

using clock_type = std::chrono::steady_clock;

double ms_since(clock_type::time_point start) {
    return std::chrono::duration<double, std::milli>(clock_type::now() - start).count();
}

et::GraphFormat parse_format(const std::string& fmt) {
    if (fmt == "edgelist") return et::GraphFormat::edge_list;
    if (fmt == "dimacs") return et::GraphFormat::dimacs;
    throw std::invalid_argument("unknown format '" + fmt + "'");
}

int theorem_min_k(const et::Graph& g) { return g.max_degree() / 2 + 1; }

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << content;
}

void emit(const std::string& path, const std::string& content) {
    if (path.empty())
        std::cout << content;
    else
        write_text_file(path, content);
}

struct SolveArgs {
    std::string input;
    std::string format = "edgelist";
    int k = 0;  // 0 = use theorem-min policy
    int k_offset = 0;
    std::string output;
    std::string stuck_report;
    std::string snapshot;
    bool debug = false;
    bool fallback_exact = false;
    long long budget_nodes = et::SearchBudget{}.node_limit;
    double budget_secs = et::SearchBudget{}.time_limit_secs;
};

int run_solve(const SolveArgs& a) {
    et::Graph g = et::read_graph_file(a.input, parse_format(a.format));
    int k = (a.k > 0) ? a.k : theorem_min_k(g) + a.k_offset;
    if (k < 1) throw std::invalid_argument("resolved k = " + std::to_string(k) + " < 1");

    if (a.fallback_exact && g.n <= 24) {
        et::SearchBudget budget{a.budget_nodes, a.budget_secs};
        et::Decision dec = et::exact_equitable_tree_k(g, k, budget);
        if (dec.verdict == et::Verdict::sat) {
            et::VerificationReport rep = et::verify(g, *dec.witness);
            if (!rep.ok()) throw et::internal_error("exact witness failed verification");
            emit(a.output, et::coloring_to_json(*dec.witness));
            std::cerr << "solved exactly: n=" << g.n << " k=" << k << " verification "
                      << rep.summary() << "\n";
            return 0;
        }
        emit(a.output, et::decision_to_json(k, dec));
        std::cerr << "exact verdict: " << et::verdict_name(dec.verdict) << "\n";
        return 1;
    }

    et::SolveOptions opts;
    opts.debug_checks = a.debug;
    et::SolveStats stats;
    et::SolveResult res = et::equitable_tree_color(g, k, opts, &stats);
    if (std::holds_alternative<et::Coloring>(res)) {
        const et::Coloring& col = std::get<et::Coloring>(res);
        et::VerificationReport rep = et::verify(g, col);
        if (!rep.ok())
            throw et::internal_error("coloring failed re-verification: " + rep.summary());
        emit(a.output, et::coloring_to_json(col));
        std::cerr << "solved: n=" << g.n << " k=" << k
                  << " greedy=" << stats.greedy_placements
                  << " insertions=" << stats.case2_insertions
                  << " witness_moves=" << stats.witness_moves
                  << " max_layer=" << stats.max_layer_depth
                  << " verification " << rep.summary() << "\n";
        return 0;
    }
    const et::StuckReport& rep = std::get<et::StuckReport>(res);
    std::string snap_path = a.snapshot;
    if (snap_path.empty() && !a.stuck_report.empty())
        snap_path = a.stuck_report + ".snapshot.json";
    if (!snap_path.empty())
        write_text_file(snap_path, et::snapshot_to_json(rep.snapshot));
    emit(a.stuck_report, et::stuck_report_to_json(rep, snap_path));
    std::cerr << "stuck at vertex " << rep.failing_vertex << " (case " << rep.case_id
              << "); " << rep.violated.size() << " inequality chains violated\n";
    return 1;
}

struct ExactArgs {
    std::string input;
    std::string format = "edgelist";
    int k = 0;
    bool va_eq = false;
    bool va_eq_star = false;
    std::string output;
    long long budget_nodes = et::SearchBudget{}.node_limit;
    double budget_secs = et::SearchBudget{}.time_limit_secs;
};

int run_exact(const ExactArgs& a) {
    et::Graph g = et::read_graph_file(a.input, parse_format(a.format));
    et::SearchBudget budget{a.budget_nodes, a.budget_secs};
    if (a.va_eq || a.va_eq_star) {
        et::VaEqResult r = a.va_eq ? et::va_eq(g, budget) : et::va_eq_star(g, budget);
        json j;
        j["mode"] = a.va_eq ? "va_eq" : "va_eq_star";
        j["value"] = r.value;
        j["verdict"] = et::verdict_name(r.verdict);
        j["nodes"] = r.nodes;
        j["millis"] = r.millis;
        emit(a.output, j.dump(2) + "\n");
        return r.verdict == et::Verdict::sat ? 0 : 1;
    }
    if (a.k < 1) throw std::invalid_argument("exact: need --k, --va-eq, or --va-eq-star");
    et::Decision dec = et::exact_equitable_tree_k(g, a.k, budget);
    emit(a.output, et::decision_to_json(a.k, dec));
    return dec.verdict == et::Verdict::sat ? 0 : 1;
}

struct GenArgs {
    std::string spec_file;
    std::string kind;
    int n = 0, d = 0, a = 0, b = 0, s_count = 0;
    std::string attach = "uniform";
    std::uint64_t seed = 0;
    int min_delta = 0;
    std::string output;
    std::string format = "edgelist";
};

int run_gen(const GenArgs& a) {
    et::GenSpec spec;
    if (!a.spec_file.empty()) {
        spec = et::gen_spec_from_json(read_text_file(a.spec_file));
    } else {
        if (a.kind.empty())
            throw std::invalid_argument("gen: need --kind or --spec");
        spec.kind = a.kind;
        spec.n = a.n;
        spec.d = a.d;
        spec.a = a.a;
        spec.b = a.b;
        spec.s_count = a.s_count;
        spec.attach = (a.attach == "skewed") ? et::Attachment::skewed
                                             : et::Attachment::uniform;
        spec.seed = a.seed;
        spec.min_delta = a.min_delta;
    }
    et::GenInfo info;
    et::Graph g = et::generate(spec, &info);
    std::ostringstream out;
    if (parse_format(a.format) == et::GraphFormat::edge_list)
        et::write_edge_list(out, g);
    else
        et::write_dimacs(out, g);
    emit(a.output, out.str());
    et::DegeneracyResult dres = et::degeneracy_ordering(g);
    std::cerr << "generated " << spec.kind << ": n=" << g.n << " m=" << g.m
              << " degeneracy=" << dres.degeneracy << " max_degree=" << g.max_degree()
              << " seed_used=" << info.seed_used << " attempts=" << info.attempts << "\n";
    return 0;
}

struct VerifyArgs {
    std::string input;
    std::string format = "edgelist";
    std::string coloring;
    std::string output;
};

int run_verify(const VerifyArgs& a) {
    et::Graph g = et::read_graph_file(a.input, parse_format(a.format));
    et::Coloring col = et::coloring_from_json(read_text_file(a.coloring));
    if (col.n() != g.n)
        throw std::invalid_argument("coloring has " + std::to_string(col.n()) +
                                    " vertices, graph has " + std::to_string(g.n));
    et::VerificationReport rep = et::verify(g, col);
    emit(a.output, et::verification_to_json(rep));
    std::cerr << "verification: " << rep.summary() << "\n";
    return rep.ok() ? 0 : 1;
}

// ---------------------------------------------------------------------------
// Experiment runner

struct KPolicy {
    std::string kind = "theorem-min";  // theorem-min | fixed | sweep
    int offset = 0;
    int k = 0;
    int from = 0, to = 0;
};

struct RowTask {
    int instance = 0;
    et::GenSpec spec;     // seed already advanced for this repetition
    int fixed_k = 0;      // 0 = theorem-min (+offset) computed after generation
    int k_offset = 0;
};

struct ExperimentConfig {
    std::string output;
    std::string solver = "constructive";
    KPolicy policy;
    bool debug = false;
    bool fallback_exact = false;
    et::SearchBudget budget;
    int jobs = 0;
    std::vector<RowTask> tasks;
};

ExperimentConfig parse_experiment_config(const std::string& text) {
    json j = json::parse(text);
    ExperimentConfig cfg;
    cfg.output = j.value("output", std::string{});
    cfg.solver = j.value("solver", std::string{"constructive"});
    if (cfg.solver != "constructive" && cfg.solver != "exact")
        throw std::invalid_argument("config: solver must be constructive or exact");
    cfg.debug = j.value("debug", false);
    cfg.fallback_exact = j.value("fallback_exact", false);
    cfg.jobs = j.value("jobs", 0);
    if (j.contains("budget")) {
        cfg.budget.node_limit = j["budget"].value("nodes", cfg.budget.node_limit);
        cfg.budget.time_limit_secs = j["budget"].value("secs", cfg.budget.time_limit_secs);
    }
    if (j.contains("k_policy")) {
        const json& p = j["k_policy"];
        cfg.policy.kind = p.value("kind", std::string{"theorem-min"});
        cfg.policy.offset = p.value("offset", 0);
        cfg.policy.k = p.value("k", 0);
        cfg.policy.from = p.value("from", 0);
        cfg.policy.to = p.value("to", 0);
        if (cfg.policy.kind == "fixed" && cfg.policy.k < 1)
            throw std::invalid_argument("config: fixed k_policy needs k >= 1");
        if (cfg.policy.kind == "sweep" &&
            (cfg.policy.from < 1 || cfg.policy.to < cfg.policy.from))
            throw std::invalid_argument("config: sweep k_policy needs 1 <= from <= to");
        if (cfg.policy.kind != "theorem-min" && cfg.policy.kind != "fixed" &&
            cfg.policy.kind != "sweep")
            throw std::invalid_argument("config: unknown k_policy kind " + cfg.policy.kind);
    }
    if (!j.contains("instances") || !j["instances"].is_array() || j["instances"].empty())
        throw std::invalid_argument("config: need a non-empty instances array");
    int idx = 0;
    for (const json& inst : j["instances"]) {
        if (!inst.contains("generator"))
            throw std::invalid_argument("config: each instance needs a generator object");
        et::GenSpec base = et::gen_spec_from_json(inst["generator"].dump());
        int reps = inst.value("repetitions", 1);
        std::uint64_t stride = inst.value("seed_stride", std::uint64_t{1});
        if (reps < 1) throw std::invalid_argument("config: repetitions must be >= 1");
        for (int rep = 0; rep < reps; ++rep) {
            et::GenSpec spec = base;
            spec.seed = base.seed + stride * static_cast<std::uint64_t>(rep);
            if (cfg.policy.kind == "sweep") {
                for (int k = cfg.policy.from; k <= cfg.policy.to; ++k)
                    cfg.tasks.push_back({idx, spec, k, 0});
            } else if (cfg.policy.kind == "fixed") {
                cfg.tasks.push_back({idx, spec, cfg.policy.k, 0});
            } else {
                cfg.tasks.push_back({idx, spec, 0, cfg.policy.offset});
            }
        }
        ++idx;
    }
    return cfg;
}

std::string sanitize_csv(std::string s) {
    for (char& c : s)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return s;
}

std::string run_one_task(const ExperimentConfig& cfg, const RowTask& task) {
    std::ostringstream row;
    auto t0 = clock_type::now();
    try {
        et::GenInfo info;
        et::Graph g = et::generate(task.spec, &info);
        et::DegeneracyResult dres = et::degeneracy_ordering(g);
        int delta = g.max_degree();
        int k = (task.fixed_k > 0) ? task.fixed_k : delta / 2 + 1 + task.k_offset;
        double setup_ms = ms_since(t0);

        std::string outcome;
        long long nodes = 0;
        et::SolveStats stats;
        double solve_ms = 0, verify_ms = 0;
        if (k < 1) {
            outcome = "error:resolved k < 1";
        } else if (cfg.solver == "exact" || (cfg.fallback_exact && g.n <= 24)) {
            auto s0 = clock_type::now();
            et::Decision dec = et::exact_equitable_tree_k(g, k, cfg.budget);
            solve_ms = ms_since(s0);
            nodes = dec.nodes;
            outcome = et::verdict_name(dec.verdict);
            if (dec.witness) {
                auto v0 = clock_type::now();
                if (!et::verify(g, *dec.witness).ok()) outcome = "error:verification failed";
                verify_ms = ms_since(v0);
            }
        } else {
            et::SolveOptions opts;
            opts.debug_checks = cfg.debug;
            auto s0 = clock_type::now();
            et::SolveResult res = et::equitable_tree_color(g, k, opts, &stats);
            solve_ms = ms_since(s0);
            if (std::holds_alternative<et::Coloring>(res)) {
                auto v0 = clock_type::now();
                outcome = et::verify(g, std::get<et::Coloring>(res)).ok()
                              ? "success"
                              : "error:verification failed";
                verify_ms = ms_since(v0);
            } else {
                outcome = "stuck";
            }
        }
        row << task.instance << ',' << task.spec.kind << ',' << info.seed_used << ','
            << g.n << ',' << g.m << ',' << dres.degeneracy << ',' << delta << ',' << k
            << ',' << cfg.solver << ',' << sanitize_csv(outcome) << ',' << nodes << ','
            << stats.case2_insertions << ',' << stats.witness_moves << ','
            << stats.max_layer_depth << ',' << std::fixed << std::setprecision(3)
            << setup_ms << ',' << solve_ms << ',' << verify_ms << ',' << ms_since(t0);
    } catch (const std::exception& e) {
        row.str("");
        row << task.instance << ',' << task.spec.kind << ',' << task.spec.seed
            << ",0,0,0,0,0," << cfg.solver << ",error:" << sanitize_csv(e.what())
            << ",0,0,0,0,0,0,0," << std::fixed << std::setprecision(3) << ms_since(t0);
    }
    return row.str();
}

int run_experiment(const std::string& config_path, int jobs_override,
                   const std::string& output_override) {
    ExperimentConfig cfg = parse_experiment_config(read_text_file(config_path));
    if (jobs_override > 0) cfg.jobs = jobs_override;
    if (!output_override.empty()) cfg.output = output_override;
    unsigned jobs = cfg.jobs > 0 ? static_cast<unsigned>(cfg.jobs)
                                 : std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min<unsigned>(jobs, cfg.tasks.size());

    std::vector<std::string> rows(cfg.tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= cfg.tasks.size()) break;
            rows[i] = run_one_task(cfg, cfg.tasks[i]);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < jobs; ++w) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    std::size_t successes = 0;
    for (const std::string& r : rows) {
        std::size_t a = r.find(','), b = r.find(',', a + 1);  // skip to outcome col 10
        (void)b;
        std::istringstream ss(r);
        std::string field;
        for (int c = 0; c < 10 && std::getline(ss, field, ','); ++c) {}
        if (field == "success" || field == "sat") ++successes;
    }
    std::ostringstream out;
    out << "# equitree-experiment-csv v1\n";
    out << "instance,kind,seed,n,m,d,delta,k,solver,outcome,nodes,case2_insertions,"
           "witness_moves,max_layer_depth,setup_ms,solve_ms,verify_ms,total_ms\n";
    for (const std::string& r : rows) out << r << '\n';
    out << "# rows=" << rows.size() << " successes=" << successes << " success_rate="
        << std::fixed << std::setprecision(4)
        << (rows.empty() ? 0.0 : double(successes) / double(rows.size())) << "\n";
    emit(cfg.output, out.str());
    std::cerr << "experiment: " << rows.size() << " rows, " << successes
              << " successes, " << jobs << " workers\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"equitable tree-k-coloring toolkit"};
    app.require_subcommand(1);

    SolveArgs sa;
    CLI::App* solve = app.add_subcommand(
        "solve", "constructively color a graph; k defaults to max_degree/2 + 1");
    solve->add_option("--input,-i", sa.input, "graph file")->required();
    solve->add_option("--format", sa.format)->check(CLI::IsMember({"edgelist", "dimacs"}));
    solve->add_option("--k,-k", sa.k, "class count (omit for the degree-based minimum)");
    solve->add_option("--k-offset", sa.k_offset, "added to the degree-based minimum");
    solve->add_option("--output,-o", sa.output, "coloring JSON path (default stdout)");
    solve->add_option("--stuck-report", sa.stuck_report, "stuck report path (default stdout)");
    solve->add_option("--snapshot", sa.snapshot, "stuck snapshot path");
    solve->add_flag("--debug", sa.debug, "per-step invariant checks (slow)");
    solve->add_flag("--fallback-exact", sa.fallback_exact,
                    "route graphs with n <= 24 to the exact solver");
    solve->add_option("--budget-nodes", sa.budget_nodes);
    solve->add_option("--budget-secs", sa.budget_secs);

    ExactArgs ea;
    CLI::App* exact = app.add_subcommand("exact", "exact decision / threshold search");
    exact->add_option("--input,-i", ea.input)->required();
    exact->add_option("--format", ea.format)->check(CLI::IsMember({"edgelist", "dimacs"}));
    exact->add_option("--k,-k", ea.k, "decide this k");
    exact->add_flag("--va-eq", ea.va_eq, "smallest feasible k");
    exact->add_flag("--va-eq-star", ea.va_eq_star, "threshold above which all k work");
    exact->add_option("--output,-o", ea.output);
    exact->add_option("--budget-nodes", ea.budget_nodes);
    exact->add_option("--budget-secs", ea.budget_secs);

    GenArgs ga;
    CLI::App* gen = app.add_subcommand("gen", "generate a graph");
    gen->add_option("--spec", ga.spec_file, "generator spec JSON file");
    gen->add_option("--kind", ga.kind,
                    "random-d-degenerate | complete | complete-bipartite | cycle | path | "
                    "treewidth-gadget");
    gen->add_option("--n", ga.n);
    gen->add_option("--d", ga.d);
    gen->add_option("--a", ga.a);
    gen->add_option("--b", ga.b);
    gen->add_option("--s-count", ga.s_count);
    gen->add_option("--attach", ga.attach)->check(CLI::IsMember({"uniform", "skewed"}));
    gen->add_option("--seed", ga.seed);
    gen->add_option("--min-delta", ga.min_delta, "regenerate until max degree reaches this");
    gen->add_option("--output,-o", ga.output);
    gen->add_option("--format", ga.format)->check(CLI::IsMember({"edgelist", "dimacs"}));

    VerifyArgs va;
    CLI::App* verify = app.add_subcommand("verify", "verify a coloring JSON against a graph");
    verify->add_option("--input,-i", va.input)->required();
    verify->add_option("--format", va.format)->check(CLI::IsMember({"edgelist", "dimacs"}));
    verify->add_option("--coloring,-c", va.coloring)->required();
    verify->add_option("--output,-o", va.output);

    std::string config_path, exp_output;
    int jobs = 0;
    CLI::App* experiment = app.add_subcommand("experiment", "batch runner, CSV output");
    experiment->add_option("--config", config_path)->required();
    experiment->add_option("--jobs", jobs, "worker threads (0 = hardware)");
    experiment->add_option("--output,-o", exp_output, "overrides the config output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (solve->parsed()) return run_solve(sa);
        if (exact->parsed()) return run_exact(ea);
        if (gen->parsed()) return run_gen(ga);
        if (verify->parsed()) return run_verify(va);
        if (experiment->parsed()) return run_experiment(config_path, jobs, exp_output);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
