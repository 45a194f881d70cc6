#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ultinet/analysis.hpp"
#include "ultinet/game.hpp"
#include "ultinet/graph.hpp"
#include "ultinet/population.hpp"
#include "ultinet/rng.hpp"

namespace ultinet {

enum class PairSelection {
    Auto,           // Preference when reputation is enabled, else EdgeUniform
    EdgeUniform,    // pick an interaction edge uniformly at random
    Preference,     // pick an agent uniformly, then a neighbor by preference
    PreferenceRaw,  // as Preference but with the literal unnormalized weights
};

struct ExperimentConfig {
    int n = 50;
    double frac_fs = 1.0 / 3.0;
    double frac_dsh = 1.0 / 3.0;
    double frac_dsr = 1.0 / 3.0;
    std::int64_t iterations_per_agent = 3000;
    int repetitions = 50;
    bool rewiring = false;
    bool reputation = false;
    bool volunteering = false;
    double lambda = 0.02;
    double big_k = 0.001;
    double sigma_floor = 1e-7;
    double sigma0 = 1.0;
    double stake = 10.0;
    int hops = 5;
    double forced_play_prob = 0.1;
    std::uint64_t master_seed = 1;
    PairSelection pair_selection = PairSelection::Auto;
    TraceMode trace_mode = TraceMode::Auto;

    void validate() const;  // throws std::invalid_argument
    PairSelection effective_pair_selection() const;
    std::int64_t total_iterations() const {
        return iterations_per_agent * static_cast<std::int64_t>(n);
    }
};

struct RunMetrics {
    double games_per_agent = 0.0;   // convergence point over n
    double learned_strategy = 0.0;  // avg(t) at the convergence point
    double performance = 0.0;       // frozen-strategy agreement rate
    double played_fraction = 1.0;   // measurement games passing the gate
    int max_degree = 0;
    double mean_degree = 0.0;
    std::int64_t rewire_count = 0;  // successful rewires, all triggers
    bool converged = false;
};

struct RunResult {
    int run_id = 0;
    std::uint64_t seed = 0;
    RunMetrics metrics;
};

struct ExperimentResult {
    ExperimentConfig config;
    std::vector<RunResult> runs;  // ordered by repetition index
};

// test/diagnostic counters a caller may collect from one run
struct RunProbe {
    std::int64_t iterations = 0;
    std::int64_t games_played = 0;
    std::int64_t games_refused = 0;
    std::int64_t trace_length = 0;
    std::int64_t experience_rewires = 0;
    std::int64_t reputation_rewires = 0;
    std::size_t belief_entries = 0;
};

// the population-average trajectory, decimated to at most max_rows rows
struct TraceDump {
    std::int64_t max_rows = 100000;
    std::int64_t stride = 1;
    std::vector<std::pair<std::int64_t, double>> rows;  // (t, avg(t))
};

// optional artifacts a caller may request from one run
struct RunCapture {
    TraceDump* trace = nullptr;
    std::optional<InteractionGraph>* final_graph = nullptr;
};

// documented splitter: the seed of repetition r under a master seed
std::uint64_t repetition_seed(std::uint64_t master_seed, int repetition);

// One full simulation: build population and networks from the run seed's
// named sub-streams, play 3000*n sequential games (pair selection, random
// roles, optional volunteering gate, the pairwise game, optional reputation
// broadcast, optional rewiring, trace append), then measure convergence,
// frozen-strategy performance, and degree structure.
RunResult run_simulation(const ExperimentConfig& config, std::uint64_t run_seed, int run_id = 0,
                         RunProbe* probe = nullptr, RunCapture capture = {});

// `repetitions` independent runs seeded from the master seed; results are
// merged by repetition index regardless of execution order. workers == 1
// runs the serial reference path; workers == 0 uses all hardware threads;
// anything else sets the parallel team size.
ExperimentResult run_experiment(const ExperimentConfig& config, int workers = 0);
ExperimentResult run_experiment_serial(const ExperimentConfig& config);

// per-metric cross-run statistics, in a fixed report order
std::vector<std::pair<std::string, BoxStats>> experiment_summaries(const ExperimentResult& r);

enum class SweepAxis { PopulationSize, FsFraction };

struct SweepRow {
    double axis_value = 0.0;
    ExperimentResult result;
};

// run_experiment once per axis value. The population-size axis keeps the
// template fractions; the fs-fraction axis assigns the remainder half to
// DS_h and half to DS_r.
std::vector<SweepRow> sweep(const ExperimentConfig& base, SweepAxis axis,
                            const std::vector<double>& values, int workers = 0);

// ---- serialization ----------------------------------------------------

std::string runs_csv_header();
std::string runs_csv(const ExperimentResult& r);
std::string sweep_runs_csv(const std::vector<SweepRow>& rows);
// one row per axis value for a single metric: axis_value,min,q1,median,q3,max,mean
std::string sweep_summary_csv(const std::vector<SweepRow>& rows, const std::string& metric);
std::vector<std::string> summary_metric_names();
std::string trace_csv(const TraceDump& dump);

std::string config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const std::string& text);
std::string experiment_to_json(const ExperimentResult& r);
std::string sweep_to_json(const std::vector<SweepRow>& rows);

const char* pair_selection_name(PairSelection p);
PairSelection pair_selection_from_name(const std::string& name);
const char* trace_mode_name(TraceMode m);
TraceMode trace_mode_from_name(const std::string& name);

}  // namespace ultinet
