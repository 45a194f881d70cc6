#include "ultinet/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ultinet {

namespace {
// full-trace storage above this length costs more memory than the blocked
// aggregates are worth (8 bytes per game, ~32 MB at the limit)
constexpr std::int64_t kFullTraceLimit = 4'000'000;
}  // namespace

StrategyTrace::StrategyTrace(std::int64_t expected_length, TraceMode mode,
                             std::int64_t block_size) {
    switch (mode) {
        case TraceMode::Full: full_mode_ = true; break;
        case TraceMode::Blocked: full_mode_ = false; break;
        case TraceMode::Auto: full_mode_ = expected_length <= kFullTraceLimit; break;
    }
    if (full_mode_) {
        values_.reserve(static_cast<std::size_t>(std::max<std::int64_t>(expected_length, 0)));
    } else {
        block_size_ = block_size > 0 ? block_size : 1;
        blocks_.reserve(static_cast<std::size_t>(
            std::max<std::int64_t>(expected_length / block_size_ + 2, 2)));
    }
}

void StrategyTrace::push(double v) {
    ++count_;
    last_ = v;
    if (full_mode_) {
        values_.push_back(v);
        return;
    }
    if (blocks_.empty() || blocks_.back().count == block_size_) {
        Block b;
        b.start = count_;
        b.first = v;
        blocks_.push_back(b);
    }
    Block& b = blocks_.back();
    ++b.count;
    b.sum += v;
    b.sum_sq += v * v;
}

double StrategyTrace::value(std::int64_t t) const {
    if (!full_mode_) throw std::logic_error("trace: per-value access needs full mode");
    if (t < 1 || t > count_) throw std::out_of_range("trace: index out of range");
    return values_[static_cast<std::size_t>(t - 1)];
}

double StrategyTrace::last() const {
    if (count_ == 0) throw std::logic_error("trace: empty");
    return last_;
}

ConvergenceReport detect_convergence(const StrategyTrace& trace, int n_agents,
                                     double threshold) {
    const std::int64_t T = trace.size();
    if (T == 0) throw std::invalid_argument("detect_convergence: empty trace");
    const double var_limit = threshold * threshold;

    std::int64_t best = -1;
    double best_avg = 0.0;

    if (trace.is_full_mode()) {
        // backward Welford over the suffix; numerically stable at T ~ 3e7
        double mean = 0.0, m2 = 0.0;
        std::int64_t count = 0;
        for (std::int64_t t = T; t >= 1; --t) {
            const double v = trace.value(t);
            ++count;
            const double d = v - mean;
            mean += d / static_cast<double>(count);
            m2 += d * (v - mean);
            if (m2 <= var_limit * static_cast<double>(count)) {
                best = t;
                best_avg = v;
            }
        }
    } else {
        // candidates are block starts; aggregate blocks from the tail
        double sum = 0.0, sum_sq = 0.0;
        std::int64_t count = 0;
        for (std::int64_t b = trace.block_count() - 1; b >= 0; --b) {
            const auto& blk = trace.block(b);
            sum += blk.sum;
            sum_sq += blk.sum_sq;
            count += blk.count;
            const double m = static_cast<double>(count);
            const double mean = sum / m;
            const double var = std::max(0.0, sum_sq / m - mean * mean);
            if (var <= var_limit) {
                best = blk.start;
                best_avg = blk.first;
            }
        }
    }

    ConvergenceReport rep;
    if (best >= 1 && best < T) {
        rep.t = best;
        rep.learned_strategy = best_avg;
        rep.converged = true;
    } else {
        // only the trivial single-value suffix (or nothing) qualified
        rep.t = T;
        rep.learned_strategy = trace.is_full_mode() ? trace.value(T) : trace.last();
        rep.converged = false;
    }
    rep.games_per_agent = static_cast<double>(rep.t) / static_cast<double>(n_agents);
    return rep;
}

namespace {

double quantile_sorted(const std::vector<double>& sorted, double p) {
    const auto last = static_cast<double>(sorted.size() - 1);
    const double h = last * p;
    const auto lo = static_cast<std::size_t>(h);
    const double frac = h - static_cast<double>(lo);
    if (lo + 1 >= sorted.size()) return sorted.back();
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

BoxStats summarize_runs(const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("summarize_runs: empty input");
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    BoxStats s;
    s.min = sorted.front();
    s.q1 = quantile_sorted(sorted, 0.25);
    s.median = quantile_sorted(sorted, 0.5);
    s.q3 = quantile_sorted(sorted, 0.75);
    s.max = sorted.back();
    double sum = 0.0;
    for (double v : sorted) sum += v;
    s.mean = sum / static_cast<double>(sorted.size());
    return s;
}

BoxStats degree_summary(const InteractionGraph& g) {
    std::vector<double> degrees(static_cast<std::size_t>(g.size()));
    for (int v = 0; v < g.size(); ++v)
        degrees[static_cast<std::size_t>(v)] = static_cast<double>(g.degree(v));
    return summarize_runs(degrees);
}

double population_average(const Population& pop) {
    double sum = 0.0;
    for (int id = 0; id < pop.size(); ++id) sum += pop.current_strategy(id);
    return sum / static_cast<double>(pop.size());
}

PerformanceReport measure_performance(const Population& pop, const InteractionGraph& g,
                                      bool volunteering, const BeliefStore* beliefs, Rng* rng,
                                      double forced_play_prob) {
    if (volunteering && (beliefs == nullptr || rng == nullptr))
        throw std::invalid_argument("measure_performance: volunteering needs beliefs and rng");
    PerformanceReport rep;
    rep.total = 2 * static_cast<std::int64_t>(g.edge_count());
    for (int proposer = 0; proposer < g.size(); ++proposer) {
        const double offer = pop.current_strategy(proposer);
        for (int responder : g.neighbors(proposer)) {
            if (volunteering &&
                !volunteer(proposer, responder, *beliefs, pop, *rng, forced_play_prob))
                continue;
            ++rep.played;
            if (offer >= 0.99 * pop.current_strategy(responder)) ++rep.successes;
        }
    }
    rep.performance = rep.played > 0
                          ? static_cast<double>(rep.successes) / static_cast<double>(rep.played)
                          : 0.0;
    rep.played_fraction =
        rep.total > 0 ? static_cast<double>(rep.played) / static_cast<double>(rep.total) : 0.0;
    return rep;
}

PerformanceReport measure_performance_parallel(const Population& pop,
                                               const InteractionGraph& g) {
    PerformanceReport rep;
    rep.total = 2 * static_cast<std::int64_t>(g.edge_count());
    std::int64_t successes = 0;
    const int n = g.size();
#pragma omp parallel for schedule(static) reduction(+ : successes)
    for (int proposer = 0; proposer < n; ++proposer) {
        const double offer = pop.current_strategy(proposer);
        for (int responder : g.neighbors(proposer))
            if (offer >= 0.99 * pop.current_strategy(responder)) ++successes;
    }
    rep.successes = successes;
    rep.played = rep.total;
    rep.performance = rep.played > 0
                          ? static_cast<double>(rep.successes) / static_cast<double>(rep.played)
                          : 0.0;
    rep.played_fraction = rep.total > 0 ? 1.0 : 0.0;
    return rep;
}

}  // namespace ultinet
