#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "ultinet/graph.hpp"
#include "ultinet/population.hpp"
#include "ultinet/rng.hpp"

namespace ultinet {

inline constexpr int kDefaultHops = 5;           // broadcast horizon H
inline constexpr double kForcedPlayProb = 0.1;   // volunteering override

// Per-agent map subject-id -> last observed offer; insertion overwrites.
// Written only by broadcast delivery and by a responder's own experience.
class BeliefStore {
public:
    explicit BeliefStore(int n) : beliefs_(static_cast<std::size_t>(n)) {}

    std::optional<double> get(int owner, int subject) const;
    void set(int owner, int subject, double offer);
    std::size_t total_entries() const;

private:
    std::vector<std::unordered_map<int, double>> beliefs_;
};

// Static scale-free gossip substrate over the same node set as the
// interaction network, generated independently. Hop distances from any
// sender are served from a precomputed table when it fits in memory and
// recomputed per broadcast otherwise; both paths yield identical draws.
class ReputationGraph {
public:
    static constexpr std::uint8_t kFar = 255;  // beyond the hops-1 horizon

    explicit ReputationGraph(InteractionGraph g, int hops = kDefaultHops);

    const InteractionGraph& graph() const { return graph_; }
    int hops() const { return hops_; }

    // hop distances from `sender`, capped at hops-1; 255 means farther
    const std::uint8_t* distances_from(int sender) const;

private:
    InteractionGraph graph_;
    int hops_;
    bool precomputed_;
    std::vector<std::uint8_t> table_;          // n*n rows when precomputed
    mutable std::vector<std::uint8_t> row_;    // scratch otherwise
    mutable std::vector<int> frontier_, next_; // BFS scratch

    void fill_row(int sender, std::uint8_t* row) const;
};

// Hop-limited probabilistic broadcast: every node v (not sender, not
// subject) within hops-1 of the sender receives (subject, offer) with
// probability 1 - d/hops, overwriting beliefs[v][subject]. Draws are made in
// ascending node-id order; nodes out of range consume no draw. Returns the
// delivery count; recipients_out (optional) collects who received it.
int broadcast_offer(const ReputationGraph& rep, int sender, int subject, double offer,
                    BeliefStore& beliefs, Rng& rng,
                    std::vector<int>* recipients_out = nullptr);

// believed strategy of j from i's viewpoint; falls back to the centralized
// population-average strategy when i holds no belief about j
double estimate_strategy(int i, int j, const BeliefStore& beliefs, const Population& pop);

// Partner choice among neighbors, weight w_j = max(0, estimate - s_i),
// normalized; all weights zero -> uniform. `raw_mode` instead applies the
// unnormalized form p_j = (estimate_j - s_i) / sum_k estimate_k directly:
// negative mass is ignored, total mass above 1 is renormalized, and any
// leftover mass falls back to a uniform pick. Raw mode exists for
// comparison only and is not the default anywhere.
int partner_preference(int i, const std::vector<int>& neighbors, const BeliefStore& beliefs,
                       const Population& pop, Rng& rng, bool raw_mode = false);

// Mutual consent gate: each side agrees iff its estimate of the other is at
// least its own strategy (ties cooperate). The game happens iff both agree,
// or — only then drawing — a single forced draw succeeds.
bool volunteer(int proposer_id, int responder_id, const BeliefStore& beliefs,
               const Population& pop, Rng& rng, double forced_play_prob = kForcedPlayProb);

// Gossip-driven unwiring: recipient i, holding fresh offer information about
// its neighbor j, attempts graph.rewire(i, j) with probability
// rewire_probability(s_i, offer_info). nullopt when no attempt was made.
std::optional<RewireResult> reputation_triggered_rewire(int i, int j, double offer_info,
                                                        InteractionGraph& graph,
                                                        const Population& pop, Rng& rng);

}  // namespace ultinet
