#include <doctest.h>

#include <stdexcept>

#include "ultinet/game.hpp"
#include "ultinet/population.hpp"

using namespace ultinet;

namespace {
const CalaParams kParams{};

// smallest mixed roster: one learner, one fixed-strategy agent
struct TwoAgents {
    Population pop;
    int ds;
    int fs;
    static TwoAgents make(std::uint64_t seed) {
        Rng rng(seed);
        Population pop = Population::init(2, {0.5, 0.0, 0.5}, 1.0, kParams, rng);
        const int ds = pop.agent(0).kind == AgentKind::FixedStrategy ? 1 : 0;
        return {std::move(pop), ds, 1 - ds};
    }
};
}  // namespace

TEST_CASE("payoff splits on agreement and burns on refusal") {
    const UltimatumOutcome deal = payoff(4.0, 3.0);
    CHECK(deal.agreed);
    CHECK(deal.proposer_payoff == 6.0);
    CHECK(deal.responder_payoff == 4.0);

    const UltimatumOutcome refusal = payoff(2.0, 8.0);
    CHECK_FALSE(refusal.agreed);
    CHECK(refusal.proposer_payoff == 0.0);
    CHECK(refusal.responder_payoff == 0.0);
}

TEST_CASE("ties accept") {
    const UltimatumOutcome out = payoff(4.5, 4.5);
    CHECK(out.agreed);
    CHECK(out.proposer_payoff == 5.5);
    CHECK(out.responder_payoff == 4.5);
}

TEST_CASE("zero-feedback adjustment points proposers up and responders down") {
    CHECK(apply_zfa(Role::Proposer, 2.0, 3.5, 0.0, 0.0) == -1.5);  // mu - x
    CHECK(apply_zfa(Role::Responder, 2.0, 3.5, 0.0, 0.0) == 1.5);  // x - mu
    // raw (unclamped) actions feed the adjustment
    CHECK(apply_zfa(Role::Proposer, -1.0, 0.5, 0.0, 0.0) == -1.5);
}

TEST_CASE("the adjustment refuses nonzero feedback") {
    CHECK_THROWS_AS(apply_zfa(Role::Proposer, 2.0, 3.0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(apply_zfa(Role::Responder, 2.0, 3.0, 0.0, -1.0), std::invalid_argument);
}

TEST_CASE("play_pairwise rejects self-play") {
    auto two = TwoAgents::make(3);
    Rng rng(4);
    CHECK_THROWS_AS(play_pairwise(two.pop, two.ds, two.ds, GameRules{}, rng),
                    std::invalid_argument);
}

TEST_CASE("fixed-strategy agents never move") {
    auto two = TwoAgents::make(5);
    Rng rng(6);
    for (int i = 0; i < 200; ++i) {
        play_pairwise(two.pop, two.ds, two.fs, GameRules{}, rng);
        play_pairwise(two.pop, two.fs, two.ds, GameRules{}, rng);
        CHECK(two.pop.current_strategy(two.fs) == kFixedStrategyValue);
    }
}

TEST_CASE("learners take exactly one step per game in either role") {
    auto two = TwoAgents::make(7);
    Rng rng(8);
    two.pop.set_mu(two.ds, 5.0);
    const double sigma_before = two.pop.agent(two.ds).cala.sigma();
    play_pairwise(two.pop, two.ds, two.fs, GameRules{}, rng);
    // any update touches sigma (decay acts even with ratio 0)
    CHECK(two.pop.agent(two.ds).cala.sigma() != sigma_before);
}

TEST_CASE("adjustment flags imply the agent saw only zero payoffs") {
    auto two = TwoAgents::make(9);
    Rng rng(10);
    int flagged = 0;
    for (int i = 0; i < 2000; ++i) {
        two.pop.set_mu(two.ds, 1.0);  // learner proposes far below the 4.5 bar
        const InteractionRecord rec =
            play_pairwise(two.pop, two.ds, two.fs, GameRules{}, rng);
        if (rec.zfa_proposer) {
            ++flagged;
            CHECK(rec.mu_play.proposer_payoff == 0.0);
            CHECK(rec.x_play.proposer_payoff == 0.0);
        }
        CHECK_FALSE(rec.zfa_responder);  // the fixed responder never updates
    }
    CHECK(flagged > 1500);  // mu 1.0, sigma small: rejection dominates
}

TEST_CASE("disabling the adjustment leaves mu still on all-zero games") {
    auto two = TwoAgents::make(11);
    Rng rng(12);
    GameRules rules;
    rules.zfa_enabled = false;
    for (int i = 0; i < 500; ++i) {
        two.pop.set_mu(two.ds, 0.5);
        const InteractionRecord rec = play_pairwise(two.pop, two.ds, two.fs, rules, rng);
        if (rec.mu_play.proposer_payoff == 0.0 && rec.x_play.proposer_payoff == 0.0)
            CHECK(two.pop.agent(two.ds).cala.mu() == 0.5);  // ratio 0: no drift
        CHECK_FALSE(rec.zfa_proposer);
    }
}

TEST_CASE("played values are clamped but updates use raw actions") {
    Rng init(13);
    Population pop = Population::init(2, {0.0, 0.0, 1.0}, 1.0, kParams, init);
    pop.set_mu(0, -2.0);  // raw mean below the playable range
    pop.set_mu(1, 0.0);
    Rng rng(14);
    const InteractionRecord rec = play_pairwise(pop, 0, 1, GameRules{}, rng);
    CHECK(rec.mu_play.offer == 0.0);  // clamped at the table
    CHECK(rec.mu_play.agreed);        // responder threshold 0 accepts 0
}
