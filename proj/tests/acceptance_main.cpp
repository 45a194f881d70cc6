// Acceptance gate: end-to-end statistical and property checks for the
// simulator. Each numbered line is an independent pass/fail criterion; the
// exit status is the number of failed criteria.
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "ultinet/checks.hpp"
#include "ultinet/runner.hpp"

using namespace ultinet;

namespace {

constexpr std::uint64_t kMasterSeed = 20260814;
constexpr int kReps = 30;

int g_failures = 0;

std::string fmt(const char* pattern, double a = 0.0, double b = 0.0, double c = 0.0,
                double d = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), pattern, a, b, c, d);
    return buf;
}

void report(int index, const std::string& label, bool pass, const std::string& detail) {
    std::printf("[%s] %02d %s — %s\n", pass ? "PASS" : "FAIL", index, label.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

void soft(const std::string& label, bool pass, const std::string& detail) {
    std::printf("[%s] -- %s — %s\n", pass ? "soft-pass" : "soft-fail", label.c_str(),
                detail.c_str());
    std::fflush(stdout);
}

ExperimentConfig table_config(int n, double fs, bool rewiring) {
    ExperimentConfig cfg;
    cfg.n = n;
    cfg.frac_fs = fs;
    cfg.frac_dsh = (1.0 - fs) / 2;
    cfg.frac_dsr = (1.0 - fs) / 2;
    cfg.rewiring = rewiring;
    cfg.repetitions = kReps;
    cfg.master_seed = kMasterSeed;
    return cfg;
}

double mean_of(const ExperimentResult& result, double (*get)(const RunMetrics&)) {
    double sum = 0.0;
    for (const auto& run : result.runs) sum += get(run.metrics);
    return sum / double(result.runs.size());
}

double mean_learned(const ExperimentResult& r) {
    return mean_of(r, [](const RunMetrics& m) { return m.learned_strategy; });
}
double mean_perf(const ExperimentResult& r) {
    return mean_of(r, [](const RunMetrics& m) { return m.performance; });
}
double mean_games(const ExperimentResult& r) {
    return mean_of(r, [](const RunMetrics& m) { return m.games_per_agent; });
}
double mean_played(const ExperimentResult& r) {
    return mean_of(r, [](const RunMetrics& m) { return m.played_fraction; });
}
double mean_maxdeg(const ExperimentResult& r) {
    return mean_of(r, [](const RunMetrics& m) { return double(m.max_degree); });
}
double mean_rewires(const ExperimentResult& r) {
    return mean_of(r, [](const RunMetrics& m) { return double(m.rewire_count); });
}

bool within(double value, double center, double tol) {
    return std::abs(value - center) <= tol;
}

void report_suite(int index, const std::string& label,
                  const std::vector<CheckResult>& results) {
    bool pass = true;
    std::string detail;
    for (const CheckResult& r : results) {
        if (r.pass) continue;
        pass = false;
        if (!detail.empty()) detail += "; ";
        detail += r.name + ": " + r.detail;
    }
    if (pass) detail = fmt("%.0f/%.0f checks passed", double(results.size()),
                           double(results.size()));
    report(index, label, pass, detail);
}

}  // namespace

int main() {
    std::printf("acceptance gate: %d repetitions per experiment, master seed %llu\n",
                kReps, static_cast<unsigned long long>(kMasterSeed));
    std::fflush(stdout);

    const ExperimentResult a = run_experiment(table_config(50, 0.0, false), 1);
    const ExperimentResult b = run_experiment(table_config(50, 0.3, false), 1);
    const ExperimentResult c = run_experiment(table_config(50, 0.3, true), 1);
    const ExperimentResult d = run_experiment(table_config(50, 0.8, true), 1);
    const ExperimentResult e = run_experiment(table_config(200, 0.3, true), 1);
    const ExperimentResult f = run_experiment(table_config(200, 0.8, true), 1);
    const ExperimentResult g = run_experiment(table_config(500, 0.3, true), 1);
    const ExperimentResult h = run_experiment(table_config(500, 0.8, true), 1);
    const ExperimentResult i = run_experiment(table_config(500, 0.3, false), 1);

    ExperimentConfig cfg_rep = table_config(50, 0.3, true);
    cfg_rep.reputation = true;
    const ExperimentResult j = run_experiment(cfg_rep, 1);

    ExperimentConfig cfg_vol = table_config(50, 0.3, true);
    cfg_vol.volunteering = true;
    const ExperimentResult k = run_experiment(cfg_vol, 1);

    {
        const double learned = mean_learned(a), perf = mean_perf(a);
        report(1, "learners alone drift to near-zero offers (n=50, 0% fixed)",
               learned < 0.2 && within(perf, 0.63, 0.07),
               fmt("learned %.3f (< 0.2), performance %.3f (0.63 +/- 0.07)", learned,
                   perf));
    }
    {
        const double learned = mean_learned(b), perf = mean_perf(b);
        const double games = mean_games(b);
        report(2, "static network with 30% fixed anchors stalls below fair",
               within(learned, 2.87, 0.4) && within(perf, 0.59, 0.07) && games > 1500.0,
               fmt("learned %.3f (2.87 +/- 0.4), performance %.3f (0.59 +/- 0.07), "
                   "games/agent %.0f (> 1500)",
                   learned, perf, games));
    }
    {
        const double learned = mean_learned(c), perf = mean_perf(c);
        const double games = mean_games(c);
        report(3, "rewiring reaches agreement near the anchor (n=50, 30% fixed)",
               within(learned, 4.45, 0.15) && within(perf, 0.81, 0.07) &&
                   games >= 300.0 && games <= 900.0,
               fmt("learned %.3f (4.45 +/- 0.15), performance %.3f (0.81 +/- 0.07), "
                   "games/agent %.0f (in [300, 900])",
                   learned, perf, games));
    }
    {
        const double learned = mean_learned(d), perf = mean_perf(d);
        report(4, "dense anchors push performance near one (n=50, 80% fixed)",
               within(learned, 4.49, 0.1) && within(perf, 0.96, 0.04),
               fmt("learned %.3f (4.49 +/- 0.1), performance %.3f (0.96 +/- 0.04)",
                   learned, perf));
    }
    {
        const double le = mean_learned(e), pe = mean_perf(e);
        const double lg = mean_learned(g), pg = mean_perf(g);
        const double lf = mean_learned(f), pf = mean_perf(f);
        const double lh = mean_learned(h), ph = mean_perf(h);
        const double g50 = mean_games(c), g200 = mean_games(e), g500 = mean_games(g);
        const double ratio = std::max({g50, g200, g500}) / std::min({g50, g200, g500});
        const bool pass = within(le, 4.45, 0.15) && within(pe, 0.87, 0.07) &&
                          within(lg, 4.45, 0.15) && within(pg, 0.87, 0.07) &&
                          within(lf, 4.49, 0.1) && within(pf, 0.97, 0.04) &&
                          within(lh, 4.49, 0.1) && within(ph, 0.97, 0.04) &&
                          ratio < 2.0;
        report(5, "results scale to n=200 and n=500",
               pass,
               fmt("30%% fixed: learned %.3f/%.3f, performance %.3f/%.3f; ", le, lg, pe,
                   pg) +
                   fmt("80%% fixed: learned %.3f/%.3f, performance %.3f/%.3f; ", lf, lh,
                       pf, ph) +
                   fmt("games/agent spread %.2fx (< 2x; %.0f/%.0f/%.0f)", ratio, g50,
                       g200, g500));
    }
    {
        const double with_rw = mean_maxdeg(g), without_rw = mean_maxdeg(i);
        report(6, "rewiring amplifies hubs (n=500 max degree)",
               with_rw >= 2.0 * without_rw,
               fmt("mean max degree %.1f with rewiring vs %.1f without (>= 2x)", with_rw,
                   without_rw));
    }
    {
        const double perf = mean_perf(j);
        report(7, "gossip leaves agreement performance unchanged",
               within(perf, 0.81, 0.07),
               fmt("performance %.3f (0.81 +/- 0.07)", perf));
    }
    {
        const double played = mean_played(k), perf = mean_perf(k);
        report(8, "optional participation plays about half the games",
               within(played, 0.5, 0.15) && perf > 0.75,
               fmt("played fraction %.3f (0.5 +/- 0.15), performance among played %.3f "
                   "(> 0.75)",
                   played, perf));
    }

    report_suite(9, "learner property suite", automaton_checks(kMasterSeed));
    report_suite(10, "payoff property suite", game_checks(kMasterSeed));
    report_suite(11, "network property suite", network_checks(kMasterSeed));
    report_suite(12, "analysis property suite", analysis_checks(kMasterSeed));

    {
        ExperimentConfig cfg = table_config(50, 0.3, true);
        cfg.reputation = true;
        cfg.volunteering = true;
        cfg.repetitions = 8;
        const std::string serial_once = runs_csv(run_experiment(cfg, 1));
        const std::string serial_twice = runs_csv(run_experiment(cfg, 1));
        const std::string four_workers = runs_csv(run_experiment(cfg, 4));
        report(13, "byte-identical tables across replays and worker counts",
               serial_once == serial_twice && serial_once == four_workers,
               serial_once == serial_twice
                   ? (serial_once == four_workers ? "serial replay and 4-worker run match"
                                                  : "4-worker run diverged")
                   : "serial replay diverged");
    }

    {
        ExperimentConfig smoke = table_config(10000, 0.3, true);
        smoke.repetitions = 1;
        bool ok = false;
        std::string detail;
        try {
            const RunMetrics m =
                run_simulation(smoke, repetition_seed(smoke.master_seed, 0)).metrics;
            ok = std::isfinite(m.learned_strategy) && std::isfinite(m.performance) &&
                 m.games_per_agent > 0.0;
            detail = fmt("learned %.3f, performance %.3f, games/agent %.0f",
                         m.learned_strategy, m.performance, m.games_per_agent);
        } catch (const std::exception& ex) {
            detail = std::string("threw: ") + ex.what();
        }
        report(14, "large-population smoke run completes (n=10000)", ok, detail);
    }

    soft("rewire volume stays moderate (n=50, 30% fixed)", mean_rewires(c) < 1000.0,
         fmt("mean rewires per run %.0f", mean_rewires(c)));

    std::printf("%s: %d criterion failure(s)\n", g_failures == 0 ? "ACCEPTED" : "REJECTED",
                g_failures);
    return g_failures;
}
