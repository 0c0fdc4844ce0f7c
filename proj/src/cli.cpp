// Copyright (c) allendl contributors.
// SPDX-License-Identifier: Apache-2.0
#include "allendl/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "allendl/instances.hpp"
#include "allendl/json_io.hpp"
#include "allendl/network.hpp"
#include "allendl/solver.hpp"

namespace allendl {

namespace {

namespace fs = std::filesystem;

struct GlobalFlags {
    bool json = false;
    std::uint64_t seed = 1;
    std::optional<double> timeout_s;
    int jobs = 1;
    bool allow_point_intervals = false;
    bool no_closure = false;
    bool no_forward_check = false;
    bool backjump = false;
    std::string order = "fail-first";

    SolveOptions solve_options() const {
        SolveOptions opts;
        opts.allow_point_intervals = allow_point_intervals;
        opts.use_closure = !no_closure;
        opts.forward_check = !no_forward_check;
        opts.backjump = backjump;
        opts.order = order == "wdeg" ? DecisionOrder::weighted_degree : DecisionOrder::fail_first;
        opts.timeout_s = timeout_s;
        return opts;
    }
};

int status_exit(Status s) {
    switch (s) {
        case Status::sat: return kExitSat;
        case Status::unsat: return kExitUnsat;
        case Status::aborted: return kExitAborted;
    }
    return kExitFailure;
}

Qcn load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    return parse_qcn(in);
}

std::string format_number(double v) {
    std::ostringstream ss;
    ss << v;
    return ss.str();
}

void print_stats(std::ostream& out, const SolveStats& stats) {
    out << "stats: decisions=" << stats.decisions << " conflicts=" << stats.conflicts
        << " propagations=" << stats.propagations << " wall_ms=" << stats.wall_ms << '\n';
}

void print_scenario(std::ostream& out, const Scenario& scenario) {
    out << "scenario:\n";
    for (const EdgeChoice& c : scenario.choices) {
        out << "  " << c.i << ' ' << c.j << ' ' << token(c.rel) << '\n';
    }
}

void print_solution(std::ostream& out, const IntervalSolution& solution) {
    out << "solution:\n";
    for (std::size_t v = 0; v < solution.intervals.size(); ++v) {
        out << "  " << v << ": [" << solution.intervals[v].first << ", "
            << solution.intervals[v].second << "]\n";
    }
}

// ---- solve / backbone / union / enumerate -------------------------------

int cmd_solve(const std::string& file, const GlobalFlags& flags, std::ostream& out) {
    Solver solver(load_instance(file), flags.solve_options());
    const SolveResult res = solver.solve();
    if (flags.json) {
        out << to_json(res).dump(2) << '\n';
    } else {
        out << "status: " << to_string(res.status) << '\n';
        if (res.scenario) {
            print_scenario(out, *res.scenario);
        }
        if (res.solution) {
            print_solution(out, *res.solution);
        }
        print_stats(out, res.stats);
    }
    return status_exit(res.status);
}

int cmd_backbone(const std::string& file, const GlobalFlags& flags, std::ostream& out) {
    Solver solver(load_instance(file), flags.solve_options());
    const BackboneResult res = solver.backbone();
    if (flags.json) {
        out << to_json(res).dump(2) << '\n';
    } else {
        out << "status: " << to_string(res.status) << '\n';
        if (res.status == Status::sat) {
            out << "backbone:" << (res.backbone.empty() ? " (empty)\n" : "\n");
            for (const EdgeChoice& c : res.backbone) {
                out << "  " << c.i << ' ' << c.j << ' ' << token(c.rel) << '\n';
            }
        }
        print_stats(out, res.stats);
    }
    return status_exit(res.status);
}

int cmd_union(const std::string& file, const GlobalFlags& flags, std::ostream& out) {
    Solver solver(load_instance(file), flags.solve_options());
    const UnionResult res = solver.union_labels();
    if (flags.json) {
        out << to_json(res).dump(2) << '\n';
    } else {
        out << "status: " << to_string(res.status) << '\n';
        if (res.status == Status::sat) {
            out << "union:\n";
            for (const EdgeRelation& u : res.unions) {
                out << "  " << u.edge.i << ' ' << u.edge.j << " (" << to_string(u.rels) << ")\n";
            }
        }
        print_stats(out, res.stats);
    }
    return status_exit(res.status);
}

int cmd_enumerate(const std::string& file, std::uint64_t limit, const GlobalFlags& flags,
                  std::ostream& out) {
    Solver solver(load_instance(file), flags.solve_options());
    const EnumerateResult res = solver.enumerate(limit);
    if (flags.json) {
        out << to_json(res).dump(2) << '\n';
    } else {
        out << "status: " << to_string(res.status) << '\n';
        out << "count: " << res.scenarios.size() << (res.exhausted ? " (exhaustive)" : "")
            << '\n';
        for (std::size_t s = 0; s < res.scenarios.size(); ++s) {
            out << "scenario " << (s + 1) << ":";
            for (const EdgeChoice& c : res.scenarios[s].choices) {
                out << ' ' << c.i << ' ' << c.j << ' ' << token(c.rel) << ';';
            }
            out << '\n';
        }
        print_stats(out, res.stats);
    }
    return status_exit(res.status);
}

// ---- generate ------------------------------------------------------------

std::vector<Relation> resolve_pool(const std::string& pool_arg) {
    if (pool_arg.empty() || pool_arg == "default") {
        return default_hard_pool();
    }
    std::ifstream in(pool_arg);
    if (!in) {
        throw std::runtime_error("cannot open pool file '" + pool_arg + "'");
    }
    return load_pool(in);
}

std::string instance_name(const std::string& model, int n, double d, double s,
                          std::uint64_t seed) {
    std::ostringstream name;
    name << model << "-n" << n << "-d" << format_number(d);
    if (model == "A") {
        name << "-s" << format_number(s);
    }
    name << '-' << seed;
    return name.str();
}

Qcn generate_instance(const std::string& model, int n, double d, double s,
                      const std::vector<Relation>& pool, std::uint64_t seed) {
    if (model == "A") {
        return generate_a(GenSpecA{n, d, s, seed});
    }
    return generate_h(GenSpecH{n, d, seed, pool});
}

int cmd_generate(const std::string& model, int n, double d, double s, int count,
                 const std::string& outdir, const std::string& pool_arg,
                 const GlobalFlags& flags, std::ostream& out) {
    std::vector<Relation> pool;
    if (model == "H") {
        pool = resolve_pool(pool_arg);
    }
    fs::create_directories(outdir);
    Json manifest = Json::array();
    for (int k = 0; k < count; ++k) {
        const std::uint64_t seed = flags.seed + static_cast<std::uint64_t>(k);
        const Qcn q = generate_instance(model, n, d, s, pool, seed);
        const std::string name = instance_name(model, n, d, s, seed) + ".csp";
        const fs::path path = fs::path(outdir) / name;
        std::ofstream file(path);
        if (!file) {
            throw std::runtime_error("cannot write '" + path.string() + "'");
        }
        file << serialize_qcn(q);
        Json entry{{"file", name}, {"model", model}, {"n", n}, {"d", d}, {"seed", seed}};
        if (model == "A") {
            entry["s"] = s;
        }
        manifest.push_back(std::move(entry));
        out << path.string() << '\n';
    }
    std::ofstream mf(fs::path(outdir) / "manifest.json");
    mf << manifest.dump(2) << '\n';
    return 0;
}

// ---- bench ---------------------------------------------------------------

struct RunRecord {
    std::string id;
    std::string mode;
    Status status = Status::unsat;
    std::int64_t wall_ms = 0;
    std::int64_t decisions = 0;
    std::int64_t conflicts = 0;
};

RunRecord run_one(const std::string& id, const std::string& mode, const Qcn& q,
                  const SolveOptions& opts) {
    RunRecord rec;
    rec.id = id;
    rec.mode = mode;
    SolveStats stats;
    Solver solver(q, opts);
    if (mode == "backbone") {
        const BackboneResult r = solver.backbone();
        rec.status = r.status;
        stats = r.stats;
    } else if (mode == "union") {
        const UnionResult r = solver.union_labels();
        rec.status = r.status;
        stats = r.stats;
    } else {
        const SolveResult r = solver.solve();
        rec.status = r.status;
        stats = r.stats;
    }
    rec.wall_ms = stats.wall_ms;
    rec.decisions = stats.decisions;
    rec.conflicts = stats.conflicts;
    return rec;
}

double median(std::vector<std::int64_t> xs) {
    std::sort(xs.begin(), xs.end());
    const std::size_t n = xs.size();
    if (n == 0) {
        return 0;
    }
    if (n % 2 == 1) {
        return static_cast<double>(xs[n / 2]);
    }
    return (static_cast<double>(xs[n / 2 - 1]) + static_cast<double>(xs[n / 2])) / 2.0;
}

int cmd_bench(const std::string& model, int n, double d_min, double d_max, double d_step,
              double s, int count, const std::string& mode, const std::string& pool_arg,
              const std::string& csv_path, const GlobalFlags& flags, std::ostream& out) {
    std::vector<Relation> pool;
    if (model == "H") {
        pool = resolve_pool(pool_arg);
    }
    SolveOptions opts = flags.solve_options();
    if (!opts.timeout_s) {
        opts.timeout_s = 300.0;  // per-instance budget
    }

    struct Task {
        double d;
        std::uint64_t seed;
        std::string id;
    };
    std::vector<Task> tasks;
    for (double d = d_min; d <= d_max + 1e-9; d += d_step) {
        for (int k = 0; k < count; ++k) {
            const std::uint64_t seed = flags.seed + static_cast<std::uint64_t>(k);
            tasks.push_back(Task{d, seed, instance_name(model, n, d, s, seed)});
        }
    }

    std::vector<RunRecord> records(tasks.size());
    std::atomic<std::size_t> next{0};
    const int jobs = std::max(1, flags.jobs);
    auto worker = [&] {
        while (true) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= tasks.size()) {
                return;
            }
            const Task& t = tasks[idx];
            const Qcn q = generate_instance(model, n, t.d, s, pool, t.seed);
            records[idx] = run_one(t.id, mode, q, opts);
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(static_cast<std::size_t>(jobs));
        for (int t = 0; t < jobs; ++t) {
            threads.emplace_back(worker);
        }
        for (auto& t : threads) {
            t.join();
        }
    }

    if (!csv_path.empty()) {
        const bool fresh = !fs::exists(csv_path) || fs::file_size(csv_path) == 0;
        std::ofstream csv(csv_path, std::ios::app);
        if (fresh) {
            csv << "instance,mode,status,wall_ms,decisions,conflicts\n";
        }
        for (const RunRecord& r : records) {
            csv << r.id << ',' << r.mode << ',' << to_string(r.status) << ',' << r.wall_ms
                << ',' << r.decisions << ',' << r.conflicts << '\n';
        }
    }

    // per-degree summary over completed runs; aborted runs counted separately
    Json summary = Json::array();
    std::size_t idx = 0;
    if (!flags.json) {
        out << "d       sat_frac  median_ms  mean_ms    max_ms     aborted\n";
    }
    for (double d = d_min; d <= d_max + 1e-9; d += d_step) {
        std::vector<std::int64_t> times;
        int sat = 0;
        int completed = 0;
        int aborted = 0;
        for (int k = 0; k < count; ++k, ++idx) {
            const RunRecord& r = records[idx];
            if (r.status == Status::aborted) {
                ++aborted;
                continue;
            }
            ++completed;
            times.push_back(r.wall_ms);
            if (r.status == Status::sat) {
                ++sat;
            }
        }
        const double frac =
            completed == 0 ? 0.0 : static_cast<double>(sat) / static_cast<double>(completed);
        double mean = 0;
        std::int64_t max_ms = 0;
        for (const std::int64_t t : times) {
            mean += static_cast<double>(t);
            max_ms = std::max(max_ms, t);
        }
        mean = times.empty() ? 0.0 : mean / static_cast<double>(times.size());
        if (flags.json) {
            summary.push_back({{"d", d},
                               {"sat_fraction", frac},
                               {"median_ms", median(times)},
                               {"mean_ms", mean},
                               {"max_ms", max_ms},
                               {"completed", completed},
                               {"aborted", aborted}});
        } else {
            std::ostringstream line;
            line << format_number(d);
            out << line.str() << std::string(line.str().size() < 8 ? 8 - line.str().size() : 1, ' ')
                << frac << "      " << median(times) << "  " << mean << "  " << max_ms << "  "
                << aborted << '\n';
        }
    }
    if (flags.json) {
        out << Json{{"mode", mode}, {"model", model}, {"n", n}, {"per_degree", summary}}.dump(2)
            << '\n';
    }
    return 0;
}

// ---- oracle ---------------------------------------------------------------

bool scenario_sets_equal(std::vector<EdgeChoice> a, std::vector<EdgeChoice> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

int cmd_oracle(const std::string& file, int max_n, std::uint64_t max_scenarios,
               bool against_solver, const GlobalFlags& flags, std::ostream& out,
               std::ostream& err) {
    const Qcn q = load_instance(file);
    OracleLimits limits;
    limits.max_n = max_n;
    limits.max_scenarios = max_scenarios;
    limits.allow_point_intervals = flags.allow_point_intervals;
    const OracleReport report = oracle(q, limits);

    if (flags.json) {
        out << to_json(report).dump(2) << '\n';
    } else {
        out << "sat: " << (report.sat ? "true" : "false") << '\n';
        out << "scenario_count: " << report.scenario_count << '\n';
        out << "backbone:" << (report.backbone.empty() ? " (empty)\n" : "\n");
        for (const EdgeChoice& c : report.backbone) {
            out << "  " << c.i << ' ' << c.j << ' ' << token(c.rel) << '\n';
        }
        out << "union:\n";
        for (const EdgeRelation& u : report.unions) {
            out << "  " << u.edge.i << ' ' << u.edge.j << " (" << to_string(u.rels) << ")\n";
        }
    }

    if (!against_solver) {
        return report.sat ? kExitSat : kExitUnsat;
    }

    Solver solver(q, flags.solve_options());
    const SolveResult sres = solver.solve();
    if (sres.status == Status::aborted) {
        err << "solver aborted\n";
        return kExitAborted;
    }
    std::vector<std::string> diffs;
    if ((sres.status == Status::sat) != report.sat) {
        diffs.push_back("sat disagreement: solver says " + std::string(to_string(sres.status)));
    } else if (report.sat) {
        const EnumerateResult enumr = solver.enumerate(report.scenario_count + 1);
        if (enumr.scenarios.size() != report.scenario_count) {
            diffs.push_back("scenario count: solver " + std::to_string(enumr.scenarios.size()) +
                            " vs oracle " + std::to_string(report.scenario_count));
        }
        const BackboneResult bres = solver.backbone();
        if (bres.status != Status::sat || !scenario_sets_equal(bres.backbone, report.backbone)) {
            diffs.push_back("backbone disagreement");
        }
        const UnionResult ures = solver.union_labels();
        if (ures.status != Status::sat || ures.unions != report.unions) {
            diffs.push_back("union disagreement");
        }
    }
    if (!diffs.empty()) {
        for (const std::string& d : diffs) {
            err << "mismatch: " << d << '\n';
        }
        return kExitFailure;
    }
    out << "solver agrees\n";
    return 0;
}

// ---- table ----------------------------------------------------------------

int cmd_table(bool check, const GlobalFlags& flags, std::ostream& out, std::ostream& err) {
    const CompositionTable& table = CompositionTable::get(flags.allow_point_intervals);
    if (flags.json) {
        Json rows = Json::object();
        for (BaseRelation b : all_base_relations()) {
            Json row = Json::object();
            for (BaseRelation b2 : all_base_relations()) {
                Json rels = Json::array();
                for (BaseRelation r : table.compose(b, b2).members()) {
                    rels.push_back(std::string(token(r)));
                }
                row[std::string(token(b2))] = std::move(rels);
            }
            rows[std::string(token(b))] = std::move(row);
        }
        out << rows.dump(2) << '\n';
    } else {
        for (BaseRelation b : all_base_relations()) {
            for (BaseRelation b2 : all_base_relations()) {
                out << token(b) << " ; " << token(b2) << " = ("
                    << to_string(table.compose(b, b2)) << ")\n";
            }
        }
    }

    if (!check) {
        return 0;
    }
    int failures = 0;
    auto expect = [&](bool ok, const std::string& what) {
        if (!ok) {
            ++failures;
            err << "identity failed: " << what << '\n';
        }
    };
    for (BaseRelation b : all_base_relations()) {
        expect(converse(converse(b)) == b, "converse involution at " + std::string(token(b)));
        expect(table.compose(b, BaseRelation::eq) == Relation::singleton(b),
               "right identity at " + std::string(token(b)));
        expect(table.compose(BaseRelation::eq, b) == Relation::singleton(b),
               "left identity at " + std::string(token(b)));
        expect(table.compose(b, converse(b)).contains(BaseRelation::eq),
               "eq in b;b^-1 at " + std::string(token(b)));
        for (BaseRelation b2 : all_base_relations()) {
            expect(!table.compose(b, b2).empty(), "empty entry");
            expect(converse(table.compose(b, b2)) == table.compose(converse(b2), converse(b)),
                   "converse duality at (" + std::string(token(b)) + ", " +
                       std::string(token(b2)) + ")");
        }
    }
    if (!flags.allow_point_intervals) {
        expect(table.compose(BaseRelation::p, BaseRelation::p) ==
                   Relation::singleton(BaseRelation::p),
               "p;p = p");
        expect(table.compose(BaseRelation::m, BaseRelation::m) ==
                   Relation::singleton(BaseRelation::p),
               "m;m = p");
        expect(table.compose(BaseRelation::p, BaseRelation::pi).is_universal(), "p;pi = B");
    }
    if (failures == 0) {
        err << "all identities hold\n";
        return 0;
    }
    return kExitFailure;
}

// ---- convert / pool -------------------------------------------------------

int cmd_convert(const std::string& input, const std::string& output, const std::string& to,
                std::ostream& out) {
    std::ifstream in(input);
    if (!in) {
        throw std::runtime_error("cannot open '" + input + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();

    const std::size_t first = text.find_first_not_of(" \t\r\n");
    const bool input_is_json = first != std::string::npos && text[first] == '{';
    std::string target = to;
    if (target.empty()) {
        target = input_is_json ? "text" : "json";
    }

    Qcn q = input_is_json ? qcn_from_json(Json::parse(text)) : parse_qcn(text);
    std::string result =
        target == "json" ? qcn_to_json(q).dump(2) + "\n" : serialize_qcn(q);

    if (output.empty()) {
        out << result;
    } else {
        std::ofstream of(output);
        if (!of) {
            throw std::runtime_error("cannot write '" + output + "'");
        }
        of << result;
    }
    return 0;
}

int cmd_pool(const std::string& output, std::ostream& out) {
    const std::string text = serialize_pool(default_hard_pool(), true);
    if (output.empty()) {
        out << text;
    } else {
        std::ofstream of(output);
        if (!of) {
            throw std::runtime_error("cannot write '" + output + "'");
        }
        of << text;
    }
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"qualitative temporal reasoner for Allen's interval algebra"};
    app.require_subcommand(1);

    GlobalFlags flags;
    app.add_flag("--json", flags.json, "emit JSON instead of text");
    app.add_option("--seed", flags.seed, "base random seed");
    double timeout_s = -1;
    app.add_option("--timeout-s", timeout_s, "wall clock budget per query (seconds)");
    app.add_option("--jobs", flags.jobs, "worker threads for bench");
    app.add_flag("--allow-point-intervals", flags.allow_point_intervals,
                 "permit zero-length intervals (start <= end)");
    app.add_flag("--no-closure", flags.no_closure, "disable algebraic closure preprocessing");
    app.add_flag("--no-forward-check", flags.no_forward_check,
                 "disable forward checking during search");
    app.add_flag("--backjump", flags.backjump,
                 "conflict-directed backjumping from negative-cycle origins");
    app.add_option("--order", flags.order, "decision ordering")
        ->check(CLI::IsMember({"fail-first", "wdeg"}));

    std::string file;
    std::uint64_t limit = 10;
    std::string model = "A";
    int n = 30;
    double d = 8;
    double d_min = 2;
    double d_max = 20;
    double d_step = 1;
    double s = 6.5;
    int count = 10;
    std::string outdir = ".";
    std::string pool_arg = "default";
    std::string mode = "solve";
    std::string csv_path;
    int max_n = 5;
    std::uint64_t max_scenarios = 10'000'000;
    bool against_solver = false;
    bool check = false;
    std::string output;
    std::string to;

    CLI::App* solve = app.add_subcommand("solve", "decide satisfiability, print a witness");
    solve->fallthrough();
    solve->add_option("file", file, "instance file")->required();

    CLI::App* backbone = app.add_subcommand("backbone", "intersection of solutions");
    backbone->fallthrough();
    backbone->add_option("file", file, "instance file")->required();

    CLI::App* union_cmd = app.add_subcommand("union", "union of solutions (minimal labeling)");
    union_cmd->fallthrough();
    union_cmd->add_option("file", file, "instance file")->required();

    CLI::App* enumerate = app.add_subcommand("enumerate", "list consistent scenarios");
    enumerate->fallthrough();
    enumerate->add_option("file", file, "instance file")->required();
    enumerate->add_option("--limit", limit, "maximum scenarios to list");

    CLI::App* generate = app.add_subcommand("generate", "write random instances");
    generate->fallthrough();
    generate->add_option("--model", model, "A or H")->check(CLI::IsMember({"A", "H"}));
    generate->add_option("--n", n, "variables")->required();
    generate->add_option("--d", d, "average degree")->required();
    generate->add_option("--s", s, "average label size (model A)");
    generate->add_option("--count", count, "instances to generate");
    generate->add_option("--outdir", outdir, "output directory");
    generate->add_option("--pool", pool_arg, "pool file or 'default' (model H)");

    CLI::App* bench = app.add_subcommand("bench", "run a degree sweep and report medians");
    bench->fallthrough();
    bench->add_option("--model", model, "A or H")->check(CLI::IsMember({"A", "H"}));
    bench->add_option("--n", n, "variables");
    bench->add_option("--d-min", d_min, "sweep start");
    bench->add_option("--d-max", d_max, "sweep end");
    bench->add_option("--d-step", d_step, "sweep step");
    bench->add_option("--s", s, "average label size (model A)");
    bench->add_option("--count", count, "instances per degree");
    bench->add_option("--mode", mode, "solve, backbone or union")
        ->check(CLI::IsMember({"solve", "backbone", "union"}));
    bench->add_option("--pool", pool_arg, "pool file or 'default' (model H)");
    bench->add_option("--csv", csv_path, "append per-instance rows to this file");

    CLI::App* oracle_cmd = app.add_subcommand("oracle", "exhaustive ground truth (small n)");
    oracle_cmd->fallthrough();
    oracle_cmd->add_option("file", file, "instance file")->required();
    oracle_cmd->add_option("--max-n", max_n, "variable cap");
    oracle_cmd->add_option("--max-scenarios", max_scenarios, "scenario cap");
    oracle_cmd->add_flag("--against-solver", against_solver,
                         "also run the solver and fail on any disagreement");

    CLI::App* table = app.add_subcommand("table", "print the composition table");
    table->fallthrough();
    table->add_flag("--check", check, "verify the algebraic identities");

    CLI::App* convert = app.add_subcommand("convert", "convert between text and JSON");
    convert->fallthrough();
    convert->add_option("input", file, "input file")->required();
    convert->add_option("-o,--output", output, "output file (stdout otherwise)");
    convert->add_option("--to", to, "target format")->check(CLI::IsMember({"text", "json"}));

    CLI::App* pool = app.add_subcommand("pool", "emit the derived hard relation pool");
    pool->fallthrough();
    pool->add_option("-o,--output", output, "output file (stdout otherwise)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return kExitUsage;
    }
    if (timeout_s >= 0) {
        flags.timeout_s = timeout_s;
    }

    try {
        if (solve->parsed()) {
            return cmd_solve(file, flags, out);
        }
        if (backbone->parsed()) {
            return cmd_backbone(file, flags, out);
        }
        if (union_cmd->parsed()) {
            return cmd_union(file, flags, out);
        }
        if (enumerate->parsed()) {
            if (limit < 1) {
                err << "--limit must be at least 1\n";
                return kExitUsage;
            }
            return cmd_enumerate(file, limit, flags, out);
        }
        if (generate->parsed()) {
            return cmd_generate(model, n, d, s, count, outdir, pool_arg, flags, out);
        }
        if (bench->parsed()) {
            return cmd_bench(model, n, d_min, d_max, d_step, s, count, mode, pool_arg, csv_path,
                             flags, out);
        }
        if (oracle_cmd->parsed()) {
            return cmd_oracle(file, max_n, max_scenarios, against_solver, flags, out, err);
        }
        if (table->parsed()) {
            return cmd_table(check, flags, out, err);
        }
        if (convert->parsed()) {
            return cmd_convert(file, output, to, out);
        }
        if (pool->parsed()) {
            return cmd_pool(output, out);
        }
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

int run_cli(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }
    return run_cli(args, std::cout, std::cerr);
}

}  // namespace allendl
