#pragma once

#include <cstdint>
#include <vector>

#include "ultinet/graph.hpp"
#include "ultinet/population.hpp"
#include "ultinet/social.hpp"

namespace ultinet {

enum class TraceMode {
    Auto,     // Full when the expected length fits comfortably, else Blocked
    Full,     // store every value
    Blocked,  // store per-block running moments only (bounded memory)
};

// Append-only record of the population-average strategy after each game,
// avg(t) for t = 1..T. Blocked mode keeps one aggregate per block of
// `block_size` consecutive values instead of the values themselves, which
// caps memory for very long runs at the cost of convergence-time resolution
// (block starts are the only candidate times).
class StrategyTrace {
public:
    struct Block {
        std::int64_t start = 0;  // 1-based index of the block's first value
        std::int64_t count = 0;
        double sum = 0.0;
        double sum_sq = 0.0;
        double first = 0.0;  // avg(start)
    };

    explicit StrategyTrace(std::int64_t expected_length, TraceMode mode = TraceMode::Auto,
                           std::int64_t block_size = 0);

    void push(double v);

    std::int64_t size() const { return count_; }
    bool is_full_mode() const { return full_mode_; }
    double value(std::int64_t t) const;  // 1-based; full mode only
    double last() const;

    std::int64_t block_count() const { return static_cast<std::int64_t>(blocks_.size()); }
    const Block& block(std::int64_t b) const { return blocks_[static_cast<std::size_t>(b)]; }

private:
    bool full_mode_ = true;
    std::int64_t count_ = 0;
    std::int64_t block_size_ = 1;
    std::vector<double> values_;
    std::vector<Block> blocks_;
    double last_ = 0.0;
};

struct ConvergenceReport {
    std::int64_t t = 0;              // earliest stable suffix start (or T)
    double games_per_agent = 0.0;    // t / n
    double learned_strategy = 0.0;   // avg(t)
    bool converged = false;          // false when only the trivial suffix qualifies
};

// Earliest t whose suffix {avg(t)..avg(T)} has population (divide-by-count)
// standard deviation at most `threshold`. Scans once backwards with running
// moments (Welford in full mode, block aggregation in blocked mode). When no
// suffix of length >= 2 qualifies, reports t = T, learned = avg(T), and
// converged = false.
ConvergenceReport detect_convergence(const StrategyTrace& trace, int n_agents,
                                     double threshold = 1e-3);

struct BoxStats {
    double min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0, mean = 0.0;
};

// order statistics with linearly interpolated quartiles, plus the mean
BoxStats summarize_runs(const std::vector<double>& values);

BoxStats degree_summary(const InteractionGraph& g);

double population_average(const Population& pop);  // exact O(n) mean

struct PerformanceReport {
    std::int64_t successes = 0;
    std::int64_t played = 0;
    std::int64_t total = 0;            // 2 * edge_count directed games
    double performance = 0.0;          // successes / played
    double played_fraction = 0.0;      // played / total
};

// Frozen-strategy measurement: every agent proposes its current strategy to
// each neighbor once; the neighbor accepts iff offer >= 0.99 * its own
// strategy. With volunteering, each directed game first passes the mutual
// consent gate (beliefs and rng required), and performance is reported among
// the games actually played.
PerformanceReport measure_performance(const Population& pop, const InteractionGraph& g,
                                      bool volunteering = false,
                                      const BeliefStore* beliefs = nullptr, Rng* rng = nullptr,
                                      double forced_play_prob = kForcedPlayProb);

// Same result as the serial version without volunteering, computed with a
// parallel reduction over proposers.
PerformanceReport measure_performance_parallel(const Population& pop,
                                               const InteractionGraph& g);

}  // namespace ultinet
