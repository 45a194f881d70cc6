#include "ultinet/graph.hpp"

#include <algorithm>
#include <deque>
#include <ostream>
#include <stdexcept>

namespace ultinet {

InteractionGraph::InteractionGraph(int n) : n_(n) {
    if (n < 2) throw std::invalid_argument("graph: need at least 2 nodes");
    adj_.resize(static_cast<std::size_t>(n));
    mark_.assign(static_cast<std::size_t>(n), 0);
}

std::uint64_t InteractionGraph::key(int u, int v) {
    const auto a = static_cast<std::uint64_t>(std::min(u, v));
    const auto b = static_cast<std::uint64_t>(std::max(u, v));
    return (a << 32) | b;
}

bool InteractionGraph::has_edge(int u, int v) const {
    return slot_.count(key(u, v)) != 0;
}

void InteractionGraph::add_edge(int u, int v) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_)
        throw std::out_of_range("graph: node id out of range");
    if (u == v) throw std::invalid_argument("graph: self-loop");
    if (has_edge(u, v)) throw std::invalid_argument("graph: duplicate edge");
    slot_[key(u, v)] = static_cast<int>(edges_.size());
    edges_.emplace_back(u, v);
    adj_[static_cast<std::size_t>(u)].push_back(v);
    adj_[static_cast<std::size_t>(v)].push_back(u);
}

RewireResult InteractionGraph::rewire(int i, int j, Rng& rng) {
    const auto it = slot_.find(key(i, j));
    if (it == slot_.end()) throw std::invalid_argument("rewire: no such edge");

    if (degree(i) == 1 || degree(j) == 1)
        return {RewireResult::Kind::BlockedLastLink, -1};

    auto& adj_i = adj_[static_cast<std::size_t>(i)];
    auto& adj_j = adj_[static_cast<std::size_t>(j)];

    mark_[static_cast<std::size_t>(i)] = 1;
    for (int v : adj_i) mark_[static_cast<std::size_t>(v)] = 1;
    candidates_.clear();
    for (int v : adj_j)
        if (!mark_[static_cast<std::size_t>(v)]) candidates_.push_back(v);
    mark_[static_cast<std::size_t>(i)] = 0;
    for (int v : adj_i) mark_[static_cast<std::size_t>(v)] = 0;

    if (candidates_.empty()) return {RewireResult::Kind::BlockedNoTarget, -1};

    const int k = candidates_[static_cast<std::size_t>(
        rng.index(static_cast<int>(candidates_.size())))];

    // swap edge (i,j) for (i,k), reusing the slot
    const int slot = it->second;
    slot_.erase(it);
    slot_[key(i, k)] = slot;
    edges_[static_cast<std::size_t>(slot)] = {i, k};
    *std::find(adj_i.begin(), adj_i.end(), j) = k;
    auto ji = std::find(adj_j.begin(), adj_j.end(), i);
    *ji = adj_j.back();
    adj_j.pop_back();
    adj_[static_cast<std::size_t>(k)].push_back(i);

    return {RewireResult::Kind::Rewired, k};
}

void InteractionGraph::write_edge_list(std::ostream& os) const {
    for (const auto& [u, v] : edges_) os << u << ' ' << v << '\n';
}

void InteractionGraph::check_invariants() const {
    std::size_t deg_sum = 0;
    for (int v = 0; v < n_; ++v) {
        const auto& nb = adj_[static_cast<std::size_t>(v)];
        deg_sum += nb.size();
        for (int u : nb) {
            if (u == v) throw std::logic_error("graph invariant: self-loop");
            if (!has_edge(u, v)) throw std::logic_error("graph invariant: stray adjacency");
            const auto& back = adj_[static_cast<std::size_t>(u)];
            if (std::find(back.begin(), back.end(), v) == back.end())
                throw std::logic_error("graph invariant: asymmetric adjacency");
        }
        std::vector<int> sorted = nb;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::logic_error("graph invariant: duplicate adjacency");
    }
    if (deg_sum != 2 * edges_.size())
        throw std::logic_error("graph invariant: degree sum != 2E");
    if (slot_.size() != edges_.size())
        throw std::logic_error("graph invariant: slot map out of sync");
    for (std::size_t s = 0; s < edges_.size(); ++s) {
        const auto [u, v] = edges_[s];
        const auto it = slot_.find(key(u, v));
        if (it == slot_.end() || it->second != static_cast<int>(s))
            throw std::logic_error("graph invariant: edge slot mismatch");
    }
}

DegreeSampler DegreeSampler::from_graph(const InteractionGraph& g) {
    DegreeSampler s;
    s.bag_.reserve(static_cast<std::size_t>(g.edge_count()) * 2);
    for (int e = 0; e < g.edge_count(); ++e) {
        const auto [u, v] = g.edge(e);
        s.record_edge(u, v);
    }
    return s;
}

void DegreeSampler::record_edge(int u, int v) {
    bag_.push_back(u);
    bag_.push_back(v);
}

int DegreeSampler::pick(Rng& rng) const {
    if (bag_.empty()) throw std::logic_error("degree sampler: empty bag");
    return bag_[rng.below(bag_.size())];
}

InteractionGraph generate_ba(int n, Rng& rng) {
    InteractionGraph g(n);
    g.add_edge(0, 1);
    DegreeSampler sampler = DegreeSampler::from_graph(g);

    std::vector<int> chosen;
    for (int v = 2; v < n; ++v) {
        const int m = std::min(1 + rng.index(3), v);
        chosen.clear();
        while (static_cast<int>(chosen.size()) < m) {
            const int c = sampler.pick(rng);
            if (std::find(chosen.begin(), chosen.end(), c) == chosen.end())
                chosen.push_back(c);
        }
        // attach after all picks so the new links don't bias this node's own draw
        for (int c : chosen) {
            g.add_edge(v, c);
            sampler.record_edge(v, c);
        }
    }
    return g;
}

double rewire_probability(double responder_strategy, double proposer_strategy,
                          double stake) {
    return std::max(0.0, (responder_strategy - proposer_strategy) / stake);
}

int bfs_distance(const InteractionGraph& g, int a, int b, int max_hops) {
    if (a == b) return 0;
    std::vector<int> dist(static_cast<std::size_t>(g.size()), -1);
    std::deque<int> queue;
    dist[static_cast<std::size_t>(a)] = 0;
    queue.push_back(a);
    while (!queue.empty()) {
        const int u = queue.front();
        queue.pop_front();
        const int d = dist[static_cast<std::size_t>(u)];
        if (d >= max_hops) continue;
        for (int v : g.neighbors(u)) {
            if (dist[static_cast<std::size_t>(v)] != -1) continue;
            if (v == b) return d + 1;
            dist[static_cast<std::size_t>(v)] = d + 1;
            queue.push_back(v);
        }
    }
    return kUnreachable;
}

}  // namespace ultinet
