#pragma once

#include "ultinet/population.hpp"
#include "ultinet/rng.hpp"

namespace ultinet {

inline constexpr double kDefaultStake = 10.0;

enum class Role { Proposer, Responder };

struct UltimatumOutcome {
    double offer = 0.0;
    double threshold = 0.0;
    bool agreed = false;
    double proposer_payoff = 0.0;
    double responder_payoff = 0.0;
};

// One ultimatum interaction: accept iff offer >= threshold (ties accept).
// Agreement splits the stake (stake - offer, offer); refusal pays (0, 0).
UltimatumOutcome payoff(double offer, double threshold, double stake = kDefaultStake);

// Zero-feedback adjustment: when both of an agent's payoffs are zero the
// learner would stall (feedback difference 0), so the mu-play feedback is
// replaced by a directional nudge computed from the raw (unclamped) actions:
// proposers get mu - x (rewarding higher trial offers), responders x - mu
// (rewarding lower trial demands); the x-play feedback stays zero.
// Throws if either supplied feedback is nonzero (protocol violation).
double apply_zfa(Role role, double mu, double x, double beta_mu, double beta_x);

struct GameRules {
    double stake = kDefaultStake;
    bool zfa_enabled = true;
};

// What one pairwise round did; enough to audit invariants afterwards.
struct InteractionRecord {
    int proposer_id = -1;
    int responder_id = -1;
    UltimatumOutcome mu_play;  // both sides play their means
    UltimatumOutcome x_play;   // both sides play their sampled actions
    bool zfa_proposer = false;   // proposer's feedback came from the adjustment
    bool zfa_responder = false;  // responder's feedback came from the adjustment
};

// One full round between two distinct agents: each side forms a mean action
// and (dynamic agents only) a sampled action, both games are scored on values
// clamped to the playable interval, feedbacks are gathered per agent across
// its two payoffs, the adjustment is applied where both are zero, and every
// dynamic agent takes exactly one automaton step using its raw actions.
InteractionRecord play_pairwise(Population& pop, int proposer_id, int responder_id,
                                const GameRules& rules, Rng& rng);

}  // namespace ultinet
