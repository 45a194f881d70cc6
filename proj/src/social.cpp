#include "ultinet/social.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>

namespace ultinet {

namespace {
// above this node count the dense distance table would dominate memory
constexpr int kPrecomputeLimit = 4096;
constexpr std::uint8_t kFar = ReputationGraph::kFar;
}  // namespace

std::optional<double> BeliefStore::get(int owner, int subject) const {
    const auto& m = beliefs_[static_cast<std::size_t>(owner)];
    const auto it = m.find(subject);
    if (it == m.end()) return std::nullopt;
    return it->second;
}

void BeliefStore::set(int owner, int subject, double offer) {
    beliefs_[static_cast<std::size_t>(owner)][subject] = offer;
}

std::size_t BeliefStore::total_entries() const {
    std::size_t total = 0;
    for (const auto& m : beliefs_) total += m.size();
    return total;
}

ReputationGraph::ReputationGraph(InteractionGraph g, int hops)
    : graph_(std::move(g)), hops_(hops) {
    if (hops_ < 1) throw std::invalid_argument("reputation: hops must be >= 1");
    const int n = graph_.size();
    precomputed_ = n <= kPrecomputeLimit;
    if (precomputed_) {
        table_.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), kFar);
        for (int v = 0; v < n; ++v)
            fill_row(v, table_.data() + static_cast<std::size_t>(v) * static_cast<std::size_t>(n));
    } else {
        row_.assign(static_cast<std::size_t>(n), kFar);
    }
}

void ReputationGraph::fill_row(int sender, std::uint8_t* row) const {
    const int n = graph_.size();
    std::memset(row, kFar, static_cast<std::size_t>(n));
    row[sender] = 0;
    frontier_.clear();
    frontier_.push_back(sender);
    const int limit = hops_ - 1;  // beyond this the delivery probability is 0
    for (int d = 0; d < limit && !frontier_.empty(); ++d) {
        next_.clear();
        for (int u : frontier_) {
            for (int v : graph_.neighbors(u)) {
                auto& cell = row[static_cast<std::size_t>(v)];
                if (cell != kFar) continue;
                cell = static_cast<std::uint8_t>(d + 1);
                next_.push_back(v);
            }
        }
        frontier_.swap(next_);
    }
}

const std::uint8_t* ReputationGraph::distances_from(int sender) const {
    if (precomputed_)
        return table_.data() +
               static_cast<std::size_t>(sender) * static_cast<std::size_t>(graph_.size());
    fill_row(sender, row_.data());
    return row_.data();
}

int broadcast_offer(const ReputationGraph& rep, int sender, int subject, double offer,
                    BeliefStore& beliefs, Rng& rng, std::vector<int>* recipients_out) {
    if (sender == subject) throw std::invalid_argument("broadcast: sender is the subject");
    if (recipients_out) recipients_out->clear();
    const std::uint8_t* dist = rep.distances_from(sender);
    const int n = rep.graph().size();
    const double hops = static_cast<double>(rep.hops());
    int delivered = 0;
    for (int v = 0; v < n; ++v) {
        if (v == sender || v == subject) continue;
        const std::uint8_t d = dist[static_cast<std::size_t>(v)];
        if (d == 0 || d == kFar) continue;  // unreachable within hops-1: probability 0
        if (rng.bernoulli(1.0 - static_cast<double>(d) / hops)) {
            beliefs.set(v, subject, offer);
            ++delivered;
            if (recipients_out) recipients_out->push_back(v);
        }
    }
    return delivered;
}

double estimate_strategy(int i, int j, const BeliefStore& beliefs, const Population& pop) {
    if (const auto b = beliefs.get(i, j)) return *b;
    return pop.average();
}

int partner_preference(int i, const std::vector<int>& neighbors, const BeliefStore& beliefs,
                       const Population& pop, Rng& rng, bool raw_mode) {
    if (neighbors.empty()) throw std::invalid_argument("partner_preference: no neighbors");
    const int count = static_cast<int>(neighbors.size());
    if (count == 1) return neighbors[0];
    const double own = pop.current_strategy(i);

    if (!raw_mode) {
        double total = 0.0;
        for (int j : neighbors) total += std::max(0.0, estimate_strategy(i, j, beliefs, pop) - own);
        if (total <= 0.0) return neighbors[static_cast<std::size_t>(rng.index(count))];
        double x = rng.uniform01() * total;
        for (int j : neighbors) {
            x -= std::max(0.0, estimate_strategy(i, j, beliefs, pop) - own);
            if (x < 0.0) return j;
        }
        return neighbors.back();  // rounding spill
    }

    // literal published form: p_j = (estimate_j - s_i) / sum_k estimate_k.
    // Negative terms carry no mass; mass above 1 renormalizes; mass below 1
    // leaves a uniform remainder.
    double denom = 0.0;
    for (int j : neighbors) denom += estimate_strategy(i, j, beliefs, pop);
    if (denom <= 0.0) return neighbors[static_cast<std::size_t>(rng.index(count))];
    double mass = 0.0;
    for (int j : neighbors)
        mass += std::max(0.0, (estimate_strategy(i, j, beliefs, pop) - own) / denom);
    if (mass <= 0.0) return neighbors[static_cast<std::size_t>(rng.index(count))];
    const double scale = mass > 1.0 ? mass : 1.0;
    double x = rng.uniform01() * scale;
    for (int j : neighbors) {
        x -= std::max(0.0, (estimate_strategy(i, j, beliefs, pop) - own) / denom);
        if (x < 0.0) return j;
    }
    return neighbors[static_cast<std::size_t>(rng.index(count))];  // leftover mass
}

bool volunteer(int proposer_id, int responder_id, const BeliefStore& beliefs,
               const Population& pop, Rng& rng, double forced_play_prob) {
    const bool proposer_agrees =
        estimate_strategy(proposer_id, responder_id, beliefs, pop) >=
        pop.current_strategy(proposer_id);
    const bool responder_agrees =
        estimate_strategy(responder_id, proposer_id, beliefs, pop) >=
        pop.current_strategy(responder_id);
    if (proposer_agrees && responder_agrees) return true;
    return rng.bernoulli(forced_play_prob);
}

std::optional<RewireResult> reputation_triggered_rewire(int i, int j, double offer_info,
                                                        InteractionGraph& graph,
                                                        const Population& pop, Rng& rng) {
    const double p = rewire_probability(pop.current_strategy(i), offer_info);
    if (!rng.bernoulli(p)) return std::nullopt;
    return graph.rewire(i, j, rng);
}

}  // namespace ultinet
