#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ultinet/checks.hpp"
#include "ultinet/runner.hpp"

namespace fs = std::filesystem;
using namespace ultinet;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spill(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

// every tunable a subcommand may override on top of a config file
struct FlagBundle {
    std::string config_path;
    int n = 50;
    double fs = 1.0 / 3.0, dsh = 1.0 / 3.0, dsr = 1.0 / 3.0;
    std::int64_t iterations = 3000;
    int reps = 50;
    bool rewiring = false, reputation = false, volunteering = false;
    double lambda = 0.02, k = 0.001, sigma_floor = 1e-7, sigma0 = 1.0;
    std::uint64_t seed = 1;
    std::string pair_selection = "auto", trace_mode = "auto";
    int workers = 0;
    std::string out_dir = ".";
    std::string format = "csv";
    std::string trace_out, graph_out;
};

void add_common_flags(CLI::App* cmd, FlagBundle& f) {
    cmd->add_option("--config", f.config_path, "JSON config file; explicit flags override it");
    cmd->add_option("--n", f.n, "population size");
    cmd->add_option("--fs", f.fs, "fixed-strategy agent fraction");
    cmd->add_option("--dsh", f.dsh, "human-anchored learner fraction");
    cmd->add_option("--dsr", f.dsr, "rational-corner learner fraction");
    cmd->add_option("--iterations-per-agent", f.iterations, "games per agent (default 3000)");
    cmd->add_option("--reps", f.reps, "independent repetitions (default 50)");
    cmd->add_flag("--rewiring,!--no-rewiring", f.rewiring, "enable experience-driven rewiring");
    cmd->add_flag("--reputation,!--no-reputation", f.reputation, "enable reputation broadcast");
    cmd->add_flag("--volunteering,!--no-volunteering", f.volunteering,
                  "enable optional participation");
    cmd->add_option("--lambda", f.lambda, "automaton learning rate");
    cmd->add_option("--k", f.k, "automaton variance decay gain");
    cmd->add_option("--sigma-floor", f.sigma_floor, "automaton exploration floor");
    cmd->add_option("--sigma0", f.sigma0, "initial exploration width");
    cmd->add_option("--seed", f.seed, "master seed");
    cmd->add_option("--pair-selection", f.pair_selection,
                    "auto | edge-uniform | preference | preference-raw")
        ->check(CLI::IsMember({"auto", "edge-uniform", "preference", "preference-raw"}));
    cmd->add_option("--trace-mode", f.trace_mode, "auto | full | blocked")
        ->check(CLI::IsMember({"auto", "full", "blocked"}));
    cmd->add_option("--workers", f.workers, "parallel runs (0 = hardware threads, 1 = serial)");
    cmd->add_option("--out", f.out_dir, "output directory");
    cmd->add_option("--format", f.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--trace-out", f.trace_out,
                    "write repetition 0's average-strategy trajectory to this CSV file");
    cmd->add_option("--graph-out", f.graph_out,
                    "write repetition 0's final interaction network as an edge list");
}

ExperimentConfig build_config(const CLI::App* cmd, const FlagBundle& f) {
    ExperimentConfig c;
    if (!f.config_path.empty()) c = config_from_json(slurp(f.config_path));
    if (cmd->count("--n")) c.n = f.n;
    if (cmd->count("--fs")) c.frac_fs = f.fs;
    if (cmd->count("--dsh")) c.frac_dsh = f.dsh;
    if (cmd->count("--dsr")) c.frac_dsr = f.dsr;
    if (cmd->count("--iterations-per-agent")) c.iterations_per_agent = f.iterations;
    if (cmd->count("--reps")) c.repetitions = f.reps;
    if (cmd->count("--rewiring") || cmd->count("--no-rewiring")) c.rewiring = f.rewiring;
    if (cmd->count("--reputation") || cmd->count("--no-reputation")) c.reputation = f.reputation;
    if (cmd->count("--volunteering") || cmd->count("--no-volunteering"))
        c.volunteering = f.volunteering;
    if (cmd->count("--lambda")) c.lambda = f.lambda;
    if (cmd->count("--k")) c.big_k = f.k;
    if (cmd->count("--sigma-floor")) c.sigma_floor = f.sigma_floor;
    if (cmd->count("--sigma0")) c.sigma0 = f.sigma0;
    if (cmd->count("--seed")) c.master_seed = f.seed;
    if (cmd->count("--pair-selection"))
        c.pair_selection = pair_selection_from_name(f.pair_selection);
    if (cmd->count("--trace-mode")) c.trace_mode = trace_mode_from_name(f.trace_mode);
    c.validate();
    return c;
}

void print_summaries(const ExperimentResult& result) {
    std::printf("%-18s %10s %10s %10s %10s %10s %10s\n", "metric", "min", "q1", "median",
                "q3", "max", "mean");
    for (const auto& [name, s] : experiment_summaries(result))
        std::printf("%-18s %10.4f %10.4f %10.4f %10.4f %10.4f %10.4f\n", name.c_str(), s.min,
                    s.q1, s.median, s.q3, s.max, s.mean);
}

void write_rep0_artifacts(const ExperimentConfig& config, const FlagBundle& f) {
    if (f.trace_out.empty() && f.graph_out.empty()) return;
    TraceDump dump;
    std::optional<InteractionGraph> graph;
    RunCapture capture;
    if (!f.trace_out.empty()) capture.trace = &dump;
    if (!f.graph_out.empty()) capture.final_graph = &graph;
    run_simulation(config, repetition_seed(config.master_seed, 0), 0, nullptr, capture);
    if (!f.trace_out.empty()) {
        spill(f.trace_out, trace_csv(dump));
        std::printf("trace written to %s (%zu rows)\n", f.trace_out.c_str(), dump.rows.size());
    }
    if (!f.graph_out.empty()) {
        std::ofstream out(f.graph_out, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + f.graph_out);
        graph->write_edge_list(out);
        std::printf("edge list written to %s (%d edges)\n", f.graph_out.c_str(),
                    graph->edge_count());
    }
}

int run_simulate(const CLI::App* cmd, const FlagBundle& f) {
    const ExperimentConfig config = build_config(cmd, f);
    const ExperimentResult result = run_experiment(config, f.workers);
    fs::create_directories(f.out_dir);
    if (f.format == "json") {
        const fs::path path = fs::path(f.out_dir) / "results.json";
        spill(path, experiment_to_json(result));
        std::printf("results written to %s\n", path.string().c_str());
    } else {
        const fs::path path = fs::path(f.out_dir) / "runs.csv";
        spill(path, runs_csv(result));
        std::printf("per-run table written to %s\n", path.string().c_str());
    }
    print_summaries(result);
    write_rep0_artifacts(config, f);
    return 0;
}

int run_sweep(const CLI::App* cmd, const FlagBundle& f, const std::string& axis_name,
              const std::vector<double>& values) {
    const ExperimentConfig base = build_config(cmd, f);
    const SweepAxis axis = axis_name == "population-size" ? SweepAxis::PopulationSize
                                                          : SweepAxis::FsFraction;
    const std::vector<SweepRow> rows = sweep(base, axis, values, f.workers);
    fs::create_directories(f.out_dir);
    if (f.format == "json") {
        const fs::path path = fs::path(f.out_dir) / "sweep.json";
        spill(path, sweep_to_json(rows));
        std::printf("sweep written to %s\n", path.string().c_str());
    } else {
        spill(fs::path(f.out_dir) / "runs.csv", sweep_runs_csv(rows));
        for (const auto& metric : summary_metric_names())
            spill(fs::path(f.out_dir) / ("summary_" + metric + ".csv"),
                  sweep_summary_csv(rows, metric));
        std::printf("per-run table and per-metric summaries written to %s\n",
                    f.out_dir.c_str());
    }
    std::printf("%12s %16s %12s %16s\n", "axis_value", "learned(mean)", "perf(mean)",
                "games/agent(mean)");
    for (const auto& row : rows) {
        const BoxStats learned = summarize_runs([&] {
            std::vector<double> v;
            for (const auto& run : row.result.runs) v.push_back(run.metrics.learned_strategy);
            return v;
        }());
        const BoxStats perf = summarize_runs([&] {
            std::vector<double> v;
            for (const auto& run : row.result.runs) v.push_back(run.metrics.performance);
            return v;
        }());
        const BoxStats games = summarize_runs([&] {
            std::vector<double> v;
            for (const auto& run : row.result.runs) v.push_back(run.metrics.games_per_agent);
            return v;
        }());
        std::printf("%12.4f %16.4f %12.4f %16.2f\n", row.axis_value, learned.mean, perf.mean,
                    games.mean);
    }
    return 0;
}

int run_verify(std::uint64_t seed) {
    const std::vector<CheckResult> results = run_all_checks(seed);
    int failures = 0;
    for (const auto& r : results) {
        std::printf("[%s] %-38s %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                    r.detail.c_str());
        if (!r.pass) ++failures;
    }
    std::printf("%zu checks, %d failures\n", results.size(), failures);
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Continuous ultimatum-game agreement simulator on scale-free networks"};
    app.require_subcommand(1);

    FlagBundle sim_flags;
    CLI::App* simulate = app.add_subcommand("simulate", "run one configuration");
    add_common_flags(simulate, sim_flags);

    FlagBundle sweep_flags;
    std::string axis = "population-size";
    std::vector<double> values;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "run one configuration per axis value");
    add_common_flags(sweep_cmd, sweep_flags);
    sweep_cmd->add_option("--axis", axis, "population-size | fs-fraction")
        ->check(CLI::IsMember({"population-size", "fs-fraction"}));
    sweep_cmd->add_option("--values", values, "axis values")
        ->required()
        ->delimiter(',');

    std::uint64_t verify_seed = 1;
    CLI::App* verify = app.add_subcommand("verify", "run the module property suites");
    verify->add_option("--seed", verify_seed, "seed for the property suites");

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) return run_simulate(simulate, sim_flags);
        if (sweep_cmd->parsed()) return run_sweep(sweep_cmd, sweep_flags, axis, values);
        if (verify->parsed()) return run_verify(verify_seed);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
