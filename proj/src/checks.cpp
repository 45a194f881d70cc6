#include "ultinet/checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <unordered_set>

#include "ultinet/analysis.hpp"
#include "ultinet/cala.hpp"
#include "ultinet/game.hpp"
#include "ultinet/graph.hpp"
#include "ultinet/population.hpp"
#include "ultinet/rng.hpp"
#include "ultinet/runner.hpp"
#include "ultinet/social.hpp"

namespace ultinet {

namespace {

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), pattern, a, b, c);
    return buf;
}

CheckResult make_result(std::string name, bool pass, std::string detail) {
    return {std::move(name), pass, std::move(detail)};
}

// ---- automaton ---------------------------------------------------------

CheckResult check_variance_floor(std::uint64_t seed) {
    Rng rng(seed);
    const CalaParams params;
    bool ok = true;
    double min_sigma = 1e9;
    for (int trial = 0; trial < 200 && ok; ++trial) {
        Cala cala(rng.uniform01() * 10.0, 1e-7 + rng.uniform01() * 2.0, params);
        for (int step = 0; step < 500; ++step) {
            const double x = cala.sample(rng);
            cala.update(x, rng.uniform01() * 20.0 - 10.0, rng.uniform01() * 20.0 - 10.0);
            min_sigma = std::min(min_sigma, cala.sigma());
            if (cala.sigma() < params.sigma_floor) ok = false;
        }
    }
    // sustained downward pressure must land exactly on the floor, not below
    Cala pressured(5.0, 1.0, params);
    for (int step = 0; step < 5000; ++step)
        pressured.update(pressured.mu() + 1e-12, 0.0, 10.0);
    ok = ok && pressured.sigma() >= params.sigma_floor &&
         pressured.sigma() < params.sigma_floor * 2.0;
    return make_result("variance-floor", ok,
                       fmt("min sigma %.3e, pressured sigma %.3e", min_sigma,
                           pressured.sigma()));
}

CheckResult check_zero_difference_stationarity(std::uint64_t seed) {
    Rng rng(seed);
    const CalaParams params;
    bool ok = true;
    for (int trial = 0; trial < 10000 && ok; ++trial) {
        const double mu = rng.uniform01() * 10.0;
        const double sigma = 1e-6 + rng.uniform01() * 2.0;
        Cala cala(mu, sigma, params);
        const double beta = rng.uniform01() * 20.0 - 10.0;
        cala.update(cala.sample(rng), beta, beta);
        if (cala.mu() != mu) ok = false;                // equal feedback moves nothing
        if (cala.sigma() > sigma) ok = false;           // only the decay term acts
    }
    return make_result("zero-difference-stationarity", ok,
                       ok ? "mu bitwise unchanged over 1e4 trials" : "mu moved");
}

CheckResult check_feedback_sign(std::uint64_t seed) {
    Rng rng(seed);
    const CalaParams params;
    bool ok = true;
    for (int trial = 0; trial < 10000 && ok; ++trial) {
        const double mu = rng.uniform01() * 10.0;
        const double sigma = 0.05 + rng.uniform01() * 2.0;
        double x = mu;
        while (x == mu) x = rng.uniform01() * 10.0;
        const double beta_mu = rng.uniform01() * 10.0 - 5.0;
        double beta_x = beta_mu;
        while (beta_x == beta_mu) beta_x = rng.uniform01() * 10.0 - 5.0;
        Cala cala(mu, sigma, params);
        cala.update(x, beta_mu, beta_x);
        const double moved = cala.mu() - mu;
        const double expected_sign = (beta_x > beta_mu ? 1.0 : -1.0) * (x > mu ? 1.0 : -1.0);
        if (moved * expected_sign <= 0.0) ok = false;
    }
    return make_result("feedback-sign", ok,
                       ok ? "mu moves toward better-rewarded action" : "sign violated");
}

CheckResult check_quadratic_convergence(std::uint64_t seed) {
    Rng rng(seed);
    const CalaParams params;
    const double c = 3.7;
    Cala cala(9.0, 1.0, params);
    for (int step = 0; step < 50000; ++step) {
        const double mu = cala.mu();
        const double x = cala.sample(rng);
        const auto reward = [c](double a) { return -(a - c) * (a - c); };
        cala.update(x, reward(mu), reward(x));
    }
    const double err = std::fabs(cala.mu() - c);
    return make_result("quadratic-convergence", err < 0.1,
                       fmt("|mu - c| = %.4f after 5e4 steps", err));
}

// ---- game --------------------------------------------------------------

CheckResult check_payoff_conservation(std::uint64_t seed) {
    Rng rng(seed);
    bool ok = true;
    for (int trial = 0; trial < 1000000 && ok; ++trial) {
        const double offer = rng.uniform01() * 10.0;
        const double threshold = rng.uniform01() * 10.0;
        const UltimatumOutcome out = payoff(offer, threshold);
        const double sum = out.proposer_payoff + out.responder_payoff;
        if (out.agreed ? sum != 10.0 : sum != 0.0) ok = false;
        if (out.agreed != (offer >= threshold)) ok = false;
    }
    return make_result("payoff-conservation", ok,
                       ok ? "sum in {0,10} exactly over 1e6 plays" : "leaked value");
}

CheckResult check_zfa_direction(std::uint64_t seed) {
    Rng rng(seed);
    const CalaParams params;
    bool ok = true;
    for (int trial = 0; trial < 10000 && ok; ++trial) {
        const double mu = rng.uniform01() * 14.0 - 2.0;
        const double sigma = 0.01 + rng.uniform01() * 3.0;
        double x = mu;
        while (x == mu) x = rng.uniform01() * 20.0 - 5.0;

        Cala proposer(mu, sigma, params);
        proposer.update(x, apply_zfa(Role::Proposer, mu, x, 0.0, 0.0), 0.0);
        if (!(proposer.mu() > mu)) ok = false;  // proposers get pushed upward

        Cala responder(mu, sigma, params);
        responder.update(x, apply_zfa(Role::Responder, mu, x, 0.0, 0.0), 0.0);
        if (!(responder.mu() < mu)) ok = false;  // responders get pushed downward
    }
    return make_result("zfa-direction", ok,
                       ok ? "strict push on 1e4 all-zero cases" : "wrong direction");
}

CheckResult check_sul_clamp(std::uint64_t seed) {
    Rng rng(seed);
    const CalaParams params;
    bool ok = true;
    double worst = 0.0;
    for (int trial = 0; trial < 10000 && ok; ++trial) {
        const double mu = rng.uniform01() * 10.0;
        const double sigma = 1e-7 + rng.uniform01() * 2.0;
        const double x = mu + (rng.uniform01() * 20.0 - 10.0);
        const double beta_mu = (rng.uniform01() * 2.0 - 1.0) * 1e6;
        const double beta_x = (rng.uniform01() * 2.0 - 1.0) * 1e6;
        Cala cala(mu, sigma, params);
        cala.update(x, beta_mu, beta_x);
        // |delta mu| can never exceed one clamped step; allow a few ulp of mu
        // for the rounding of the additive update itself
        const double bound = params.lambda * std::fabs(x - mu) / phi(sigma, params.sigma_floor);
        const double slack =
            bound * 1e-12 + 8.0 * std::numeric_limits<double>::epsilon() * (std::fabs(mu) + 1.0);
        const double delta = std::fabs(cala.mu() - mu);
        worst = std::max(worst, delta - bound);
        if (delta > bound + slack) ok = false;
    }
    return make_result("sul-clamp", ok, fmt("max excess over bound %.3e", worst));
}

CheckResult check_pairwise_zfa(std::uint64_t seed) {
    Rng rng(seed);
    const CalaParams params;
    // one fixed-strategy agent and one learner
    Population pop = Population::init(2, {0.5, 0.0, 0.5}, 1.0, params, rng);
    const int ds = pop.agent(0).kind == AgentKind::FixedStrategy ? 1 : 0;
    const int fs = 1 - ds;
    const GameRules rules;
    bool ok = true;
    int zfa_seen = 0;
    for (int trial = 0; trial < 10000 && ok; ++trial) {
        const double mu = rng.uniform01() * 4.0 - 1.0;  // stays below the 4.5 bar
        pop.set_mu(ds, mu);
        const InteractionRecord rec = play_pairwise(pop, ds, fs, rules, rng);
        const double after = pop.agent(ds).cala.mu();
        if (rec.zfa_proposer) {
            ++zfa_seen;
            if (!(after >= mu)) ok = false;  // a rejected learner proposes more next time
        }
        if (rec.zfa_proposer &&
            (rec.mu_play.proposer_payoff != 0.0 || rec.x_play.proposer_payoff != 0.0))
            ok = false;  // flag only when both payoffs were zero
    }
    return make_result("pairwise-zfa", ok && zfa_seen > 5000,
                       fmt("%.0f adjusted games, monotone push", static_cast<double>(zfa_seen)));
}

// ---- network -----------------------------------------------------------

CheckResult check_rewire_invariants(std::uint64_t seed) {
    Rng rng(seed);
    InteractionGraph g = generate_ba(500, rng);
    const int edges_before = g.edge_count();
    bool ok = true;
    int rewired = 0;
    for (int step = 0; step < 100000 && ok; ++step) {
        const auto [u, v] = g.edge(rng.index(g.edge_count()));
        const bool flip = rng.below(2) == 1;
        const int i = flip ? v : u;
        const int j = flip ? u : v;
        const RewireResult r = g.rewire(i, j, rng);
        if (r.kind == RewireResult::Kind::Rewired) {
            ++rewired;
            if (g.degree(j) < 1 || r.new_neighbor == i || r.new_neighbor == j) ok = false;
        }
        if (g.edge_count() != edges_before) ok = false;
        if (step % 2000 == 0) g.check_invariants();
    }
    g.check_invariants();
    int min_degree = g.size();
    for (int v = 0; v < g.size(); ++v) min_degree = std::min(min_degree, g.degree(v));
    ok = ok && min_degree >= 1;
    return make_result("rewire-invariants", ok,
                       fmt("%.0f rewires, min degree %.0f, edges %.0f",
                           static_cast<double>(rewired), static_cast<double>(min_degree),
                           static_cast<double>(g.edge_count())));
}

CheckResult check_attachment_frequency(std::uint64_t seed) {
    Rng rng(seed);
    // path 0-1-2: degrees {1,2,1}, so node 1 carries half the attachment mass
    InteractionGraph g(3);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    const DegreeSampler sampler = DegreeSampler::from_graph(g);
    int hits = 0;
    const int trials = 100000;
    for (int t = 0; t < trials; ++t)
        if (sampler.pick(rng) == 1) ++hits;
    const double freq = static_cast<double>(hits) / trials;
    const bool ok = std::fabs(freq - 0.5) <= 0.01;
    return make_result("attachment-frequency", ok, fmt("degree-2 node drawn %.4f", freq));
}

InteractionGraph matched_random_graph(int n, int edges, Rng& rng) {
    InteractionGraph g(n);
    while (g.edge_count() < edges) {
        const int u = rng.index(n);
        const int v = rng.index(n);
        if (u == v || g.has_edge(u, v)) continue;
        g.add_edge(u, v);
    }
    return g;
}

CheckResult check_heavy_tail(std::uint64_t seed) {
    Rng rng(seed);
    const int n = 2000;
    InteractionGraph ba = generate_ba(n, rng);
    InteractionGraph er = matched_random_graph(n, ba.edge_count(), rng);
    const auto tail = [n](const InteractionGraph& g) {
        int count = 0;
        for (int v = 0; v < n; ++v)
            if (g.degree(v) >= 20) ++count;
        return static_cast<double>(count) / n;
    };
    const auto max_deg = [n](const InteractionGraph& g) {
        int best = 0;
        for (int v = 0; v < n; ++v) best = std::max(best, g.degree(v));
        return best;
    };
    const double ba_tail = tail(ba), er_tail = tail(er);
    const int ba_max = max_deg(ba), er_max = max_deg(er);
    const bool ok = ba_tail > 0.0 && ba_tail >= 10.0 * er_tail &&
                    ba_max >= 2 * std::max(er_max, 1);
    return make_result("heavy-tail", ok,
                       fmt("tail frac %.4f vs %.4f, max degree %.0f", ba_tail, er_tail,
                           static_cast<double>(ba_max)) +
                           fmt(" vs %.0f", static_cast<double>(er_max)));
}

CheckResult check_generator_structure(std::uint64_t seed) {
    Rng rng(seed);
    InteractionGraph g = generate_ba(10000, rng);
    g.check_invariants();
    bool ok = g.has_edge(0, 1);
    int min_degree = g.size();
    for (int v = 0; v < g.size(); ++v) min_degree = std::min(min_degree, g.degree(v));
    ok = ok && min_degree >= 1 && g.edge_count() >= g.size() - 1;
    return make_result("generator-structure", ok,
                       fmt("n=10000, edges %.0f, min degree %.0f",
                           static_cast<double>(g.edge_count()),
                           static_cast<double>(min_degree)));
}

// ---- analysis ----------------------------------------------------------

struct OracleReport {
    std::int64_t t = 0;
    bool converged = false;
};

// brute force: recompute the suffix deviation from scratch for every t
OracleReport convergence_oracle(const std::vector<double>& trace, double threshold) {
    const auto T = static_cast<std::int64_t>(trace.size());
    OracleReport rep{T, false};
    for (std::int64_t t = 1; t <= T; ++t) {
        double mean = 0.0;
        for (std::int64_t j = t; j <= T; ++j) mean += trace[static_cast<std::size_t>(j - 1)];
        const double m = static_cast<double>(T - t + 1);
        mean /= m;
        double var = 0.0;
        for (std::int64_t j = t; j <= T; ++j) {
            const double d = trace[static_cast<std::size_t>(j - 1)] - mean;
            var += d * d;
        }
        var /= m;
        if (std::sqrt(var) <= threshold) {
            if (t < T) {
                rep.t = t;
                rep.converged = true;
            }
            return rep;  // earliest qualifying suffix found
        }
    }
    return rep;
}

std::vector<double> random_trace(Rng& rng, std::int64_t length) {
    std::vector<double> trace(static_cast<std::size_t>(length));
    const double target = rng.uniform01() * 10.0;
    const double start = rng.uniform01() * 10.0;
    const double noise0 = std::pow(10.0, -1.0 - 4.0 * rng.uniform01());
    const double tau = 1.0 + rng.uniform01() * static_cast<double>(length);
    for (std::int64_t t = 0; t < length; ++t) {
        const double decay = std::exp(-static_cast<double>(t) / tau);
        const double level = target + (start - target) * decay;
        const double noise = noise0 * decay + 1e-9;
        trace[static_cast<std::size_t>(t)] =
            clamp_strategy(level + rng.normal(0.0, noise));
    }
    return trace;
}

CheckResult check_convergence_oracle(std::uint64_t seed) {
    Rng rng(seed);
    bool ok = true;
    std::string detail = "100 traces matched";
    for (int trial = 0; trial < 100 && ok; ++trial) {
        const std::int64_t length = 2 + static_cast<std::int64_t>(rng.below(9999));
        const std::vector<double> values = random_trace(rng, length);

        StrategyTrace trace(length, TraceMode::Full);
        for (double v : values) trace.push(v);
        const ConvergenceReport fast = detect_convergence(trace, 1);
        const OracleReport oracle = convergence_oracle(values, 1e-3);
        if (fast.t != oracle.t || fast.converged != oracle.converged) {
            ok = false;
            detail = fmt("trial %.0f: fast t=%.0f oracle t=%.0f",
                         static_cast<double>(trial), static_cast<double>(fast.t),
                         static_cast<double>(oracle.t));
        }

        // blocked mode: the reported time must be a block start whose suffix
        // genuinely qualifies under the oracle's arithmetic
        const std::int64_t block = 1 + static_cast<std::int64_t>(rng.below(50));
        StrategyTrace coarse(length, TraceMode::Blocked, block);
        for (double v : values) coarse.push(v);
        const ConvergenceReport rough = detect_convergence(coarse, 1);
        if (rough.converged) {
            if ((rough.t - 1) % block != 0) ok = false;
            double mean = 0.0;
            for (std::int64_t j = rough.t; j <= length; ++j)
                mean += values[static_cast<std::size_t>(j - 1)];
            const double m = static_cast<double>(length - rough.t + 1);
            mean /= m;
            double var = 0.0;
            for (std::int64_t j = rough.t; j <= length; ++j) {
                const double d = values[static_cast<std::size_t>(j - 1)] - mean;
                var += d * d;
            }
            if (std::sqrt(var / m) > 1e-3 * (1.0 + 1e-9)) ok = false;
        }
    }
    return make_result("convergence-oracle", ok, detail);
}

CheckResult check_homogeneous_performance(std::uint64_t seed) {
    Rng rng(seed);
    const CalaParams params;
    bool ok = true;
    for (int trial = 0; trial < 30 && ok; ++trial) {
        const int n = 5 + rng.index(96);
        Population pop = Population::init(n, {0.0, 0.0, 1.0}, 1.0, params, rng);
        const double v = rng.uniform01() * 10.0;
        for (int id = 0; id < n; ++id) pop.set_mu(id, v);
        InteractionGraph g = generate_ba(n, rng);
        const PerformanceReport serial = measure_performance(pop, g);
        const PerformanceReport parallel = measure_performance_parallel(pop, g);
        if (serial.performance != 1.0 || serial.played_fraction != 1.0) ok = false;
        if (parallel.successes != serial.successes || parallel.played != serial.played)
            ok = false;
    }
    return make_result("homogeneous-performance", ok,
                       ok ? "exactly 1.0, serial == parallel" : "disagreement");
}

CheckResult check_boxstats(std::uint64_t seed) {
    Rng rng(seed);
    bool ok = true;
    for (int trial = 0; trial < 200 && ok; ++trial) {
        const int len = 1 + rng.index(200);
        std::vector<double> values(static_cast<std::size_t>(len));
        for (auto& v : values) v = rng.uniform01() * 1000.0 - 500.0;
        const BoxStats s = summarize_runs(values);
        if (!(s.min <= s.q1 && s.q1 <= s.median && s.median <= s.q3 && s.q3 <= s.max))
            ok = false;
        if (!(s.mean >= s.min && s.mean <= s.max)) ok = false;
    }
    const BoxStats known = summarize_runs({1, 2, 3, 4, 5});
    ok = ok && known.min == 1 && known.q1 == 2 && known.median == 3 && known.q3 == 4 &&
         known.max == 5 && known.mean == 3;
    const BoxStats single = summarize_runs({7});
    ok = ok && single.min == 7 && single.q1 == 7 && single.median == 7 && single.q3 == 7 &&
         single.max == 7 && single.mean == 7;
    return make_result("boxstats-ordering", ok, ok ? "ordering and oracles hold" : "violated");
}

// ---- runner ------------------------------------------------------------

CheckResult check_iteration_invariance(std::uint64_t seed) {
    ExperimentConfig base;
    base.n = 24;
    base.iterations_per_agent = 200;
    base.repetitions = 1;
    base.master_seed = seed;
    bool ok = true;
    for (int mask = 0; mask < 8 && ok; ++mask) {
        ExperimentConfig c = base;
        c.rewiring = mask & 1;
        c.reputation = mask & 2;
        c.volunteering = mask & 4;
        RunProbe probe;
        run_simulation(c, repetition_seed(c.master_seed, 0), 0, &probe);
        const std::int64_t expect = c.total_iterations();
        if (probe.iterations != expect || probe.trace_length != expect) ok = false;
        if (probe.games_played + probe.games_refused != expect) ok = false;
        if (!c.volunteering && probe.games_refused != 0) ok = false;
        if (!c.reputation && probe.belief_entries != 0) ok = false;
    }
    return make_result("iteration-invariance", ok,
                       ok ? "3000n budget holds across all 8 toggle combinations"
                          : "budget violated");
}

CheckResult check_serial_parallel_identity(std::uint64_t seed) {
    ExperimentConfig c;
    c.n = 24;
    c.iterations_per_agent = 200;
    c.repetitions = 6;
    c.rewiring = true;
    c.reputation = true;
    c.volunteering = true;
    c.master_seed = seed;
    const std::string serial = runs_csv(run_experiment_serial(c));
    const std::string parallel = runs_csv(run_experiment(c, 4));
    const std::string again = runs_csv(run_experiment(c, 4));
    const bool ok = serial == parallel && parallel == again;
    return make_result("serial-parallel-identity", ok,
                       ok ? "byte-identical CSV from 1 and 4 workers" : "outputs differ");
}

}  // namespace

std::vector<CheckResult> automaton_checks(std::uint64_t seed) {
    return {check_variance_floor(derive_seed(seed, 11)),
            check_zero_difference_stationarity(derive_seed(seed, 12)),
            check_feedback_sign(derive_seed(seed, 13)),
            check_quadratic_convergence(derive_seed(seed, 14))};
}

std::vector<CheckResult> game_checks(std::uint64_t seed) {
    return {check_payoff_conservation(derive_seed(seed, 21)),
            check_zfa_direction(derive_seed(seed, 22)),
            check_sul_clamp(derive_seed(seed, 23)),
            check_pairwise_zfa(derive_seed(seed, 24))};
}

std::vector<CheckResult> network_checks(std::uint64_t seed) {
    return {check_rewire_invariants(derive_seed(seed, 31)),
            check_attachment_frequency(derive_seed(seed, 32)),
            check_heavy_tail(derive_seed(seed, 33)),
            check_generator_structure(derive_seed(seed, 34))};
}

std::vector<CheckResult> analysis_checks(std::uint64_t seed) {
    return {check_convergence_oracle(derive_seed(seed, 41)),
            check_homogeneous_performance(derive_seed(seed, 42)),
            check_boxstats(derive_seed(seed, 43))};
}

std::vector<CheckResult> runner_checks(std::uint64_t seed) {
    return {check_iteration_invariance(derive_seed(seed, 51)),
            check_serial_parallel_identity(derive_seed(seed, 52))};
}

std::vector<CheckResult> run_all_checks(std::uint64_t seed) {
    std::vector<CheckResult> all;
    const auto collect = [&all](const char* prefix, std::vector<CheckResult> results) {
        for (auto& r : results) {
            r.name = std::string(prefix) + "/" + r.name;
            all.push_back(std::move(r));
        }
    };
    collect("automaton", automaton_checks(seed));
    collect("game", game_checks(seed));
    collect("network", network_checks(seed));
    collect("analysis", analysis_checks(seed));
    collect("runner", runner_checks(seed));
    return all;
}

bool all_passed(const std::vector<CheckResult>& results) {
    return std::all_of(results.begin(), results.end(),
                       [](const CheckResult& r) { return r.pass; });
}

}  // namespace ultinet
