#pragma once

#include <vector>

#include "ultinet/cala.hpp"
#include "ultinet/rng.hpp"

namespace ultinet {

inline constexpr double kStrategyMin = 0.0;
inline constexpr double kStrategyMax = 10.0;
inline constexpr double kFixedStrategyValue = 4.5;  // the human-like anchor

enum class AgentKind {
    DynamicRational,  // starts near the subgame-perfect corner
    DynamicHuman,     // starts near the human anchor
    FixedStrategy,    // plays 4.5 forever, never learns
};

struct Agent {
    AgentKind kind = AgentKind::DynamicRational;
    Cala cala{};                              // meaningful for dynamic kinds only
    double fixed_value = kFixedStrategyValue; // meaningful for FixedStrategy only
};

// clamp a raw automaton mean into the playable interval
double clamp_strategy(double v);

struct PopulationFractions {
    double fs = 0.0;   // fixed-strategy share
    double dsh = 0.0;  // dynamic, human-anchored start
    double dsr = 0.0;  // dynamic, rational-corner start
};

// Roster of agents, ids 0..n-1 (same ids as network nodes). Keeps a running
// strategy sum so the population average is O(1) per query; callers refresh
// it periodically to shed accumulated rounding error.
class Population {
public:
    // Counts: round(n*frac) for FS and DS_h, remainder to DS_r. Kinds are
    // placed on ids by a random permutation so agent type is independent of
    // node age in the interaction network. Initial means: DS_r ~ N(0.01, 1),
    // DS_h ~ N(4.5, 1), both clamped; initial sigma is sigma0 for all.
    static Population init(int n, const PopulationFractions& fracs, double sigma0,
                           const CalaParams& params, Rng& rng);

    int size() const { return static_cast<int>(agents_.size()); }
    const Agent& agent(int id) const { return agents_[static_cast<std::size_t>(id)]; }
    bool is_dynamic(int id) const {
        return agents_[static_cast<std::size_t>(id)].kind != AgentKind::FixedStrategy;
    }

    // current strategy: clamp(mu) for dynamic agents, the fixed value otherwise
    double current_strategy(int id) const;

    double average() const { return strategy_sum_ / static_cast<double>(agents_.size()); }
    void refresh_average();  // exact O(n) recompute of the running sum

    // the only learning path: one automaton step, keeping the sum in sync
    void apply_cala_update(int id, double x, double beta_mu, double beta_x);

    // place a dynamic agent's policy mean directly (fixtures, measurements)
    void set_mu(int id, double mu);

    int count_fs = 0;
    int count_dsh = 0;
    int count_dsr = 0;

private:
    std::vector<Agent> agents_;
    double strategy_sum_ = 0.0;
};

}  // namespace ultinet
