#include "ultinet/runner.hpp"

#include <charconv>
#include <cmath>
#include <exception>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <json.hpp>

#include "ultinet/social.hpp"

namespace ultinet {

void ExperimentConfig::validate() const {
    if (n < 2) throw std::invalid_argument("config: n must be at least 2");
    if (frac_fs < 0.0 || frac_dsh < 0.0 || frac_dsr < 0.0)
        throw std::invalid_argument("config: negative fraction");
    if (std::fabs(frac_fs + frac_dsh + frac_dsr - 1.0) > 1e-9)
        throw std::invalid_argument("config: fractions must sum to 1");
    if (iterations_per_agent < 1)
        throw std::invalid_argument("config: iterations_per_agent must be positive");
    if (repetitions < 1) throw std::invalid_argument("config: repetitions must be positive");
    CalaParams{lambda, big_k, sigma_floor}.validate();
    if (!(sigma0 > 0.0) || !std::isfinite(sigma0))
        throw std::invalid_argument("config: sigma0 must be positive");
    if (!(stake > 0.0) || !std::isfinite(stake))
        throw std::invalid_argument("config: stake must be positive");
    if (hops < 1) throw std::invalid_argument("config: hops must be at least 1");
    if (!(forced_play_prob >= 0.0 && forced_play_prob <= 1.0))
        throw std::invalid_argument("config: forced_play_prob must lie in [0,1]");
}

PairSelection ExperimentConfig::effective_pair_selection() const {
    if (pair_selection != PairSelection::Auto) return pair_selection;
    return reputation ? PairSelection::Preference : PairSelection::EdgeUniform;
}

std::uint64_t repetition_seed(std::uint64_t master_seed, int repetition) {
    return derive_seed(master_seed, static_cast<std::uint64_t>(repetition));
}

RunResult run_simulation(const ExperimentConfig& config, std::uint64_t run_seed, int run_id,
                         RunProbe* probe, RunCapture capture) {
    config.validate();
    const int n = config.n;
    const CalaParams cala_params{config.lambda, config.big_k, config.sigma_floor};

    Rng pop_rng(stream_seed(run_seed, Stream::PopulationInit));
    Population pop = Population::init(
        n, {config.frac_fs, config.frac_dsh, config.frac_dsr}, config.sigma0, cala_params,
        pop_rng);

    Rng graph_rng(stream_seed(run_seed, Stream::InteractionGraph));
    InteractionGraph graph = generate_ba(n, graph_rng);

    std::optional<ReputationGraph> reputation;
    if (config.reputation) {
        Rng rep_rng(stream_seed(run_seed, Stream::ReputationGraph));
        reputation.emplace(generate_ba(n, rep_rng), config.hops);
    }
    BeliefStore beliefs(n);  // stays empty unless reputation writes it

    const PairSelection selection = config.effective_pair_selection();
    const bool preference = selection == PairSelection::Preference ||
                            selection == PairSelection::PreferenceRaw;
    const bool raw_weights = selection == PairSelection::PreferenceRaw;

    Rng rng(stream_seed(run_seed, Stream::GameLoop));
    const std::int64_t total = config.total_iterations();
    StrategyTrace trace(total, config.trace_mode, n);

    TraceDump* dump = capture.trace;
    if (dump) {
        dump->rows.clear();
        if (dump->max_rows < 1) dump->max_rows = 1;
        dump->stride = (total + dump->max_rows - 1) / dump->max_rows;
        if (dump->stride < 1) dump->stride = 1;
    }

    const GameRules rules{config.stake, true};
    std::int64_t rewire_count = 0;
    std::int64_t games_played = 0, games_refused = 0;
    std::int64_t experience_rewires = 0, reputation_rewires = 0;
    std::vector<int> recipients;

    for (std::int64_t t = 1; t <= total; ++t) {
        int a, b;
        if (preference) {
            a = rng.index(n);
            b = partner_preference(a, graph.neighbors(a), beliefs, pop, rng, raw_weights);
        } else {
            const auto [u, v] = graph.edge(rng.index(graph.edge_count()));
            a = u;
            b = v;
        }
        const bool flip = rng.below(2) == 1;
        const int proposer = flip ? b : a;
        const int responder = flip ? a : b;

        const bool play = !config.volunteering ||
                          volunteer(proposer, responder, beliefs, pop, rng,
                                    config.forced_play_prob);
        if (play) {
            ++games_played;
            const InteractionRecord rec = play_pairwise(pop, proposer, responder, rules, rng);
            // reputation concerns the strategy-offer the proposer just made
            const double offer_info = rec.mu_play.offer;
            recipients.clear();
            if (config.reputation) {
                beliefs.set(responder, proposer, offer_info);
                broadcast_offer(*reputation, responder, proposer, offer_info, beliefs, rng,
                                config.rewiring ? &recipients : nullptr);
            }
            if (config.rewiring) {
                // experience-driven: the responder reconsiders its link,
                // comparing post-update strategies
                const double p = rewire_probability(pop.current_strategy(responder),
                                                    pop.current_strategy(proposer),
                                                    config.stake);
                if (rng.bernoulli(p)) {
                    if (graph.rewire(responder, proposer, rng).kind ==
                        RewireResult::Kind::Rewired) {
                        ++rewire_count;
                        ++experience_rewires;
                    }
                }
                // gossip-driven: recipients neighboring the proposer reconsider too
                for (int v : recipients) {
                    if (!graph.has_edge(v, proposer)) continue;
                    const auto rr = reputation_triggered_rewire(v, proposer, offer_info,
                                                                graph, pop, rng);
                    if (rr && rr->kind == RewireResult::Kind::Rewired) {
                        ++rewire_count;
                        ++reputation_rewires;
                    }
                }
            }
        } else {
            ++games_refused;
        }

        if (t % n == 0) pop.refresh_average();  // shed running-sum drift
        const double avg = pop.average();
        trace.push(avg);
        if (dump && (t - 1) % dump->stride == 0) dump->rows.emplace_back(t, avg);
    }

    const ConvergenceReport conv = detect_convergence(trace, n);
    const PerformanceReport perf = measure_performance(
        pop, graph, config.volunteering, &beliefs, &rng, config.forced_play_prob);
    const BoxStats degrees = degree_summary(graph);

    RunResult result;
    result.run_id = run_id;
    result.seed = run_seed;
    result.metrics.games_per_agent = conv.games_per_agent;
    result.metrics.learned_strategy = conv.learned_strategy;
    result.metrics.performance = perf.performance;
    result.metrics.played_fraction = perf.played_fraction;
    result.metrics.max_degree = static_cast<int>(degrees.max);
    result.metrics.mean_degree = degrees.mean;
    result.metrics.rewire_count = rewire_count;
    result.metrics.converged = conv.converged;

    if (probe) {
        probe->iterations = total;
        probe->games_played = games_played;
        probe->games_refused = games_refused;
        probe->trace_length = trace.size();
        probe->experience_rewires = experience_rewires;
        probe->reputation_rewires = reputation_rewires;
        probe->belief_entries = beliefs.total_entries();
    }
    if (capture.final_graph) *capture.final_graph = std::move(graph);
    return result;
}

ExperimentResult run_experiment_serial(const ExperimentConfig& config) {
    config.validate();
    ExperimentResult result;
    result.config = config;
    result.runs.resize(static_cast<std::size_t>(config.repetitions));
    for (int r = 0; r < config.repetitions; ++r)
        result.runs[static_cast<std::size_t>(r)] =
            run_simulation(config, repetition_seed(config.master_seed, r), r);
    return result;
}

ExperimentResult run_experiment(const ExperimentConfig& config, int workers) {
    if (workers == 1) return run_experiment_serial(config);
#ifndef _OPENMP
    return run_experiment_serial(config);
#else
    config.validate();
    const int team = workers <= 0 ? omp_get_max_threads() : workers;
    ExperimentResult result;
    result.config = config;
    result.runs.resize(static_cast<std::size_t>(config.repetitions));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(config.repetitions));
    const int reps = config.repetitions;
#pragma omp parallel for schedule(dynamic, 1) num_threads(team)
    for (int r = 0; r < reps; ++r) {
        try {
            result.runs[static_cast<std::size_t>(r)] =
                run_simulation(config, repetition_seed(config.master_seed, r), r);
        } catch (...) {
            errors[static_cast<std::size_t>(r)] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return result;
#endif
}

namespace {

double metric_value(const RunResult& run, const std::string& metric) {
    const RunMetrics& m = run.metrics;
    if (metric == "games_per_agent") return m.games_per_agent;
    if (metric == "learned_strategy") return m.learned_strategy;
    if (metric == "performance") return m.performance;
    if (metric == "played_fraction") return m.played_fraction;
    if (metric == "max_degree") return static_cast<double>(m.max_degree);
    if (metric == "mean_degree") return m.mean_degree;
    if (metric == "rewire_count") return static_cast<double>(m.rewire_count);
    if (metric == "converged") return m.converged ? 1.0 : 0.0;
    throw std::invalid_argument("unknown metric: " + metric);
}

std::vector<double> metric_values(const ExperimentResult& r, const std::string& metric) {
    std::vector<double> values;
    values.reserve(r.runs.size());
    for (const auto& run : r.runs) values.push_back(metric_value(run, metric));
    return values;
}

void append_double(std::string& out, double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out.append(buf, res.ptr);
}

void append_int(std::string& out, std::int64_t v) { out += std::to_string(v); }

void append_run_row(std::string& out, const ExperimentConfig& c, const RunResult& run) {
    append_int(out, run.run_id);
    out += ',';
    out += std::to_string(run.seed);
    out += ',';
    append_int(out, c.n);
    out += ',';
    append_double(out, c.frac_fs);
    out += ',';
    out += c.rewiring ? '1' : '0';
    out += ',';
    out += c.reputation ? '1' : '0';
    out += ',';
    out += c.volunteering ? '1' : '0';
    out += ',';
    append_double(out, run.metrics.games_per_agent);
    out += ',';
    append_double(out, run.metrics.learned_strategy);
    out += ',';
    append_double(out, run.metrics.performance);
    out += ',';
    append_double(out, run.metrics.played_fraction);
    out += ',';
    append_int(out, run.metrics.max_degree);
    out += ',';
    append_double(out, run.metrics.mean_degree);
    out += ',';
    append_int(out, run.metrics.rewire_count);
    out += ',';
    out += run.metrics.converged ? '1' : '0';
    out += '\n';
}

}  // namespace

std::vector<std::pair<std::string, BoxStats>> experiment_summaries(const ExperimentResult& r) {
    std::vector<std::pair<std::string, BoxStats>> out;
    for (const auto& name : summary_metric_names())
        out.emplace_back(name, summarize_runs(metric_values(r, name)));
    return out;
}

std::vector<SweepRow> sweep(const ExperimentConfig& base, SweepAxis axis,
                            const std::vector<double>& values, int workers) {
    std::vector<SweepRow> rows;
    rows.reserve(values.size());
    for (double value : values) {
        ExperimentConfig config = base;
        if (axis == SweepAxis::PopulationSize) {
            config.n = static_cast<int>(std::llround(value));
        } else {
            config.frac_fs = value;
            const double rest = 1.0 - value;
            config.frac_dsh = rest / 2.0;
            config.frac_dsr = rest / 2.0;
        }
        rows.push_back({value, run_experiment(config, workers)});
    }
    return rows;
}

std::string runs_csv_header() {
    return "run_id,seed,n,frac_fs,rewiring,reputation,volunteering,games_per_agent,"
           "learned_strategy,performance,played_fraction,max_degree,mean_degree,"
           "rewire_count,converged";
}

std::string runs_csv(const ExperimentResult& r) {
    std::string out = runs_csv_header() + "\n";
    for (const auto& run : r.runs) append_run_row(out, r.config, run);
    return out;
}

std::string sweep_runs_csv(const std::vector<SweepRow>& rows) {
    std::string out = runs_csv_header() + "\n";
    for (const auto& row : rows)
        for (const auto& run : row.result.runs) append_run_row(out, row.result.config, run);
    return out;
}

std::string sweep_summary_csv(const std::vector<SweepRow>& rows, const std::string& metric) {
    std::string out = "axis_value,min,q1,median,q3,max,mean\n";
    for (const auto& row : rows) {
        const BoxStats s = summarize_runs(metric_values(row.result, metric));
        append_double(out, row.axis_value);
        for (double v : {s.min, s.q1, s.median, s.q3, s.max, s.mean}) {
            out += ',';
            append_double(out, v);
        }
        out += '\n';
    }
    return out;
}

std::vector<std::string> summary_metric_names() {
    return {"games_per_agent", "learned_strategy", "performance", "played_fraction",
            "max_degree",      "mean_degree",      "rewire_count", "converged"};
}

std::string trace_csv(const TraceDump& dump) {
    std::string out = "t,avg\n";
    for (const auto& [t, avg] : dump.rows) {
        append_int(out, t);
        out += ',';
        append_double(out, avg);
        out += '\n';
    }
    return out;
}

const char* pair_selection_name(PairSelection p) {
    switch (p) {
        case PairSelection::Auto: return "auto";
        case PairSelection::EdgeUniform: return "edge-uniform";
        case PairSelection::Preference: return "preference";
        case PairSelection::PreferenceRaw: return "preference-raw";
    }
    return "auto";
}

PairSelection pair_selection_from_name(const std::string& name) {
    if (name == "auto") return PairSelection::Auto;
    if (name == "edge-uniform") return PairSelection::EdgeUniform;
    if (name == "preference") return PairSelection::Preference;
    if (name == "preference-raw") return PairSelection::PreferenceRaw;
    throw std::invalid_argument("unknown pair selection: " + name);
}

const char* trace_mode_name(TraceMode m) {
    switch (m) {
        case TraceMode::Auto: return "auto";
        case TraceMode::Full: return "full";
        case TraceMode::Blocked: return "blocked";
    }
    return "auto";
}

TraceMode trace_mode_from_name(const std::string& name) {
    if (name == "auto") return TraceMode::Auto;
    if (name == "full") return TraceMode::Full;
    if (name == "blocked") return TraceMode::Blocked;
    throw std::invalid_argument("unknown trace mode: " + name);
}

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json config_json(const ExperimentConfig& c) {
    ordered_json j;
    j["n"] = c.n;
    j["frac_fs"] = c.frac_fs;
    j["frac_dsh"] = c.frac_dsh;
    j["frac_dsr"] = c.frac_dsr;
    j["iterations_per_agent"] = c.iterations_per_agent;
    j["repetitions"] = c.repetitions;
    j["rewiring"] = c.rewiring;
    j["reputation"] = c.reputation;
    j["volunteering"] = c.volunteering;
    j["lambda"] = c.lambda;
    j["big_k"] = c.big_k;
    j["sigma_floor"] = c.sigma_floor;
    j["sigma0"] = c.sigma0;
    j["stake"] = c.stake;
    j["hops"] = c.hops;
    j["forced_play_prob"] = c.forced_play_prob;
    j["master_seed"] = c.master_seed;
    j["pair_selection"] = pair_selection_name(c.pair_selection);
    j["trace_mode"] = trace_mode_name(c.trace_mode);
    return j;
}

ordered_json run_json(const RunResult& run) {
    ordered_json j;
    j["run_id"] = run.run_id;
    j["seed"] = run.seed;
    j["games_per_agent"] = run.metrics.games_per_agent;
    j["learned_strategy"] = run.metrics.learned_strategy;
    j["performance"] = run.metrics.performance;
    j["played_fraction"] = run.metrics.played_fraction;
    j["max_degree"] = run.metrics.max_degree;
    j["mean_degree"] = run.metrics.mean_degree;
    j["rewire_count"] = run.metrics.rewire_count;
    j["converged"] = run.metrics.converged;
    return j;
}

ordered_json summary_json(const ExperimentResult& r) {
    ordered_json j;
    for (const auto& [name, s] : experiment_summaries(r)) {
        ordered_json row;
        row["min"] = s.min;
        row["q1"] = s.q1;
        row["median"] = s.median;
        row["q3"] = s.q3;
        row["max"] = s.max;
        row["mean"] = s.mean;
        j[name] = row;
    }
    return j;
}

ordered_json experiment_json(const ExperimentResult& r) {
    ordered_json j;
    j["config"] = config_json(r.config);
    j["runs"] = ordered_json::array();
    for (const auto& run : r.runs) j["runs"].push_back(run_json(run));
    j["summary"] = summary_json(r);
    return j;
}

}  // namespace

std::string config_to_json(const ExperimentConfig& config) {
    return config_json(config).dump(2) + "\n";
}

ExperimentConfig config_from_json(const std::string& text) {
    const auto j = ordered_json::parse(text);
    if (!j.is_object()) throw std::invalid_argument("config json: expected an object");
    ExperimentConfig c;
    for (const auto& [key, value] : j.items()) {
        if (key == "n") c.n = value.get<int>();
        else if (key == "frac_fs") c.frac_fs = value.get<double>();
        else if (key == "frac_dsh") c.frac_dsh = value.get<double>();
        else if (key == "frac_dsr") c.frac_dsr = value.get<double>();
        else if (key == "iterations_per_agent") c.iterations_per_agent = value.get<std::int64_t>();
        else if (key == "repetitions") c.repetitions = value.get<int>();
        else if (key == "rewiring") c.rewiring = value.get<bool>();
        else if (key == "reputation") c.reputation = value.get<bool>();
        else if (key == "volunteering") c.volunteering = value.get<bool>();
        else if (key == "lambda") c.lambda = value.get<double>();
        else if (key == "big_k") c.big_k = value.get<double>();
        else if (key == "sigma_floor") c.sigma_floor = value.get<double>();
        else if (key == "sigma0") c.sigma0 = value.get<double>();
        else if (key == "stake") c.stake = value.get<double>();
        else if (key == "hops") c.hops = value.get<int>();
        else if (key == "forced_play_prob") c.forced_play_prob = value.get<double>();
        else if (key == "master_seed") c.master_seed = value.get<std::uint64_t>();
        else if (key == "pair_selection") c.pair_selection = pair_selection_from_name(value.get<std::string>());
        else if (key == "trace_mode") c.trace_mode = trace_mode_from_name(value.get<std::string>());
        else throw std::invalid_argument("config json: unknown key '" + key + "'");
    }
    return c;
}

std::string experiment_to_json(const ExperimentResult& r) {
    return experiment_json(r).dump(2) + "\n";
}

std::string sweep_to_json(const std::vector<SweepRow>& rows) {
    ordered_json j;
    j["rows"] = ordered_json::array();
    for (const auto& row : rows) {
        ordered_json entry;
        entry["axis_value"] = row.axis_value;
        entry["experiment"] = experiment_json(row.result);
        j["rows"].push_back(entry);
    }
    return j.dump(2) + "\n";
}

}  // namespace ultinet
