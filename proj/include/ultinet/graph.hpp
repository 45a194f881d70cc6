#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ultinet/rng.hpp"

namespace ultinet {

inline constexpr int kUnreachable = std::numeric_limits<int>::max();

struct RewireResult {
    enum class Kind {
        Rewired,          // edge (i,j) became (i,k)
        BlockedLastLink,  // an endpoint had degree 1; nobody is disconnected
        BlockedNoTarget,  // j had no neighbor outside i's neighborhood
    };
    Kind kind = Kind::BlockedNoTarget;
    int new_neighbor = -1;  // k, valid only for Kind::Rewired
};

// Undirected simple graph over nodes 0..n-1 with O(1) uniform edge pick and
// O(deg) rewiring. Adjacency lists carry membership; the edge array plus a
// slot map keeps edge identity stable across rewires.
class InteractionGraph {
public:
    explicit InteractionGraph(int n);

    int size() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    int degree(int v) const { return static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); }
    const std::vector<int>& neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
    bool has_edge(int u, int v) const;
    std::pair<int, int> edge(int slot) const { return edges_[static_cast<std::size_t>(slot)]; }

    void add_edge(int u, int v);  // throws on self-loop, duplicate, bad id

    // Replace edge (i,j) by (i,k), k drawn uniformly from j's neighbors that
    // are neither i nor adjacent to i. Refuses to touch an edge whose removal
    // would strand an endpoint. Total edge count is invariant; no retry on a
    // blocked attempt. Throws if (i,j) is not an edge.
    RewireResult rewire(int i, int j, Rng& rng);

    void write_edge_list(std::ostream& os) const;  // one "u v" line per edge

    void check_invariants() const;  // throws std::logic_error on corruption

private:
    static std::uint64_t key(int u, int v);

    int n_ = 0;
    std::vector<std::vector<int>> adj_;
    std::vector<std::pair<int, int>> edges_;
    std::unordered_map<std::uint64_t, int> slot_;
    mutable std::vector<std::uint8_t> mark_;   // scratch: i's neighborhood
    mutable std::vector<int> candidates_;      // scratch: rewire targets
};

// Degree-proportional node sampler: a bag holding each edge's two endpoints,
// so a uniform bag pick lands on v with probability deg(v)/(2E). Shared by
// the generator below and by tests probing attachment frequencies.
class DegreeSampler {
public:
    static DegreeSampler from_graph(const InteractionGraph& g);
    void record_edge(int u, int v);
    int pick(Rng& rng) const;
    bool empty() const { return bag_.empty(); }

private:
    std::vector<int> bag_;
};

// Preferential-attachment generator: nodes 0 and 1 start linked; each later
// node draws its link count m uniformly from {1,2,3} (capped at the number
// of existing nodes) and attaches to m distinct existing nodes chosen
// degree-proportionally (duplicates redrawn). Own links count only after the
// node has finished attaching.
InteractionGraph generate_ba(int n, Rng& rng);

// rewire probability from the two post-update strategies: responder i keeps
// proposer j with certainty unless i's strategy exceeds j's
double rewire_probability(double responder_strategy, double proposer_strategy,
                          double stake = 10.0);

// hop count from a to b, or kUnreachable if farther than max_hops
int bfs_distance(const InteractionGraph& g, int a, int b, int max_hops);

}  // namespace ultinet
