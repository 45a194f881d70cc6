#include "ultinet/game.hpp"

#include <cmath>
#include <stdexcept>

namespace ultinet {

UltimatumOutcome payoff(double offer, double threshold, double stake) {
    if (!std::isfinite(offer) || !std::isfinite(threshold) || !std::isfinite(stake))
        throw std::invalid_argument("payoff: non-finite input");
    UltimatumOutcome out;
    out.offer = offer;
    out.threshold = threshold;
    out.agreed = offer >= threshold;
    if (out.agreed) {
        out.proposer_payoff = stake - offer;
        out.responder_payoff = offer;
    }
    return out;
}

double apply_zfa(Role role, double mu, double x, double beta_mu, double beta_x) {
    if (beta_mu != 0.0 || beta_x != 0.0)
        throw std::invalid_argument("zfa: feedbacks must both be zero");
    if (!std::isfinite(mu) || !std::isfinite(x))
        throw std::invalid_argument("zfa: non-finite action");
    return role == Role::Proposer ? mu - x : x - mu;
}

namespace {

struct SideActions {
    bool dynamic = false;
    double mu_raw = 0.0;
    double x_raw = 0.0;
    double mu_played = 0.0;
    double x_played = 0.0;
};

SideActions form_actions(const Population& pop, int id, Rng& rng) {
    SideActions s;
    const Agent& a = pop.agent(id);
    if (a.kind == AgentKind::FixedStrategy) {
        s.mu_raw = s.x_raw = a.fixed_value;
    } else {
        s.dynamic = true;
        s.mu_raw = a.cala.mu();
        s.x_raw = a.cala.sample(rng);
    }
    s.mu_played = clamp_strategy(s.mu_raw);
    s.x_played = clamp_strategy(s.x_raw);
    return s;
}

}  // namespace

InteractionRecord play_pairwise(Population& pop, int proposer_id, int responder_id,
                                const GameRules& rules, Rng& rng) {
    if (proposer_id == responder_id)
        throw std::invalid_argument("play_pairwise: agents must be distinct");

    // proposer draws first, then responder
    const SideActions p = form_actions(pop, proposer_id, rng);
    const SideActions r = form_actions(pop, responder_id, rng);

    InteractionRecord rec;
    rec.proposer_id = proposer_id;
    rec.responder_id = responder_id;
    rec.mu_play = payoff(p.mu_played, r.mu_played, rules.stake);
    rec.x_play = payoff(p.x_played, r.x_played, rules.stake);

    // per-agent feedback across its two payoffs, before any update
    double p_beta_mu = rec.mu_play.proposer_payoff;
    double p_beta_x = rec.x_play.proposer_payoff;
    double r_beta_mu = rec.mu_play.responder_payoff;
    double r_beta_x = rec.x_play.responder_payoff;

    if (p.dynamic && rules.zfa_enabled && p_beta_mu == 0.0 && p_beta_x == 0.0) {
        p_beta_mu = apply_zfa(Role::Proposer, p.mu_raw, p.x_raw, 0.0, 0.0);
        rec.zfa_proposer = true;
    }
    if (r.dynamic && rules.zfa_enabled && r_beta_mu == 0.0 && r_beta_x == 0.0) {
        r_beta_mu = apply_zfa(Role::Responder, r.mu_raw, r.x_raw, 0.0, 0.0);
        rec.zfa_responder = true;
    }

    if (p.dynamic) pop.apply_cala_update(proposer_id, p.x_raw, p_beta_mu, p_beta_x);
    if (r.dynamic) pop.apply_cala_update(responder_id, r.x_raw, r_beta_mu, r_beta_x);
    return rec;
}

}  // namespace ultinet
