#include <doctest.h>

#include <algorithm>
#include <stdexcept>

#include "ultinet/graph.hpp"

using namespace ultinet;

TEST_CASE("edges are symmetric, unique and never self-referential") {
    InteractionGraph g(4);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(1, 0));
    CHECK_FALSE(g.has_edge(0, 2));
    CHECK(g.edge_count() == 2);
    CHECK(g.degree(1) == 2);
    CHECK_THROWS_AS(g.add_edge(2, 2), std::invalid_argument);
    CHECK_THROWS_AS(g.add_edge(0, 1), std::invalid_argument);
    CHECK_THROWS_AS(g.add_edge(0, 4), std::out_of_range);
    g.check_invariants();
}

TEST_CASE("preferential sampler tracks endpoint frequencies") {
    InteractionGraph g(3);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    const DegreeSampler sampler = DegreeSampler::from_graph(g);
    Rng rng(11);
    const int draws = 100000;
    int middle = 0;
    for (int i = 0; i < draws; ++i)
        if (sampler.pick(rng) == 1) ++middle;
    // node 1 holds 2 of the 4 edge endpoints
    CHECK(middle / double(draws) == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("scale-free generator output is connected and anchored on the seed pair") {
    Rng rng(12);
    const InteractionGraph g = generate_ba(500, rng);
    g.check_invariants();
    CHECK(g.has_edge(0, 1));
    CHECK(g.edge_count() >= 499);     // connectivity lower bound
    CHECK(g.edge_count() <= 3 * 500); // at most three links per arrival
    for (int v = 0; v < 500; ++v) CHECK(g.degree(v) >= 1);
    for (int v = 0; v < 500; ++v)
        CHECK(bfs_distance(g, 0, v, 500) != kUnreachable);
}

TEST_CASE("rewiring moves the responder end of one link") {
    // path 0-1-2-3: rewiring (1,2) must land on 3, the only neighbour of 2
    // that is neither 1 nor adjacent to 1
    InteractionGraph g(4);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(2, 3);
    Rng rng(13);
    const RewireResult res = g.rewire(1, 2, rng);
    CHECK(res.kind == RewireResult::Kind::Rewired);
    CHECK(res.new_neighbor == 3);
    CHECK_FALSE(g.has_edge(1, 2));
    CHECK(g.has_edge(1, 3));
    CHECK(g.edge_count() == 3);
    CHECK(g.degree(2) == 1);
    CHECK(g.degree(3) == 2);
    g.check_invariants();
}

TEST_CASE("rewiring is blocked when it would strand either endpoint") {
    InteractionGraph star(4);
    star.add_edge(0, 1);
    star.add_edge(0, 2);
    star.add_edge(0, 3);
    Rng rng(14);
    // leaf 1 has a single link: breaking it would disconnect the leaf
    CHECK(star.rewire(1, 0, rng).kind == RewireResult::Kind::BlockedLastLink);
    CHECK(star.rewire(0, 1, rng).kind == RewireResult::Kind::BlockedLastLink);
    CHECK(star.has_edge(0, 1));
    CHECK(star.edge_count() == 3);
}

TEST_CASE("rewiring is blocked when the partner offers no fresh contact") {
    // triangle 0-1-2 plus spur 2-3: every neighbour of 1 is already known to 0
    InteractionGraph g(4);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(0, 2);
    g.add_edge(2, 3);
    Rng rng(15);
    const RewireResult res = g.rewire(0, 1, rng);
    CHECK(res.kind == RewireResult::Kind::BlockedNoTarget);
    CHECK(g.has_edge(0, 1));
    CHECK(g.edge_count() == 4);
    g.check_invariants();
}

TEST_CASE("rewiring an absent link is a protocol error") {
    InteractionGraph g(3);
    g.add_edge(0, 1);
    Rng rng(16);
    CHECK_THROWS_AS(g.rewire(0, 2, rng), std::invalid_argument);
}

TEST_CASE("dissatisfaction maps to a clipped probability") {
    CHECK(rewire_probability(5.0, 1.0, 10.0) == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(rewire_probability(1.0, 5.0, 10.0) == 0.0);
    CHECK(rewire_probability(3.0, 3.0, 10.0) == 0.0);
    CHECK(rewire_probability(10.0, 0.0, 10.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("hop counting respects the cutoff") {
    InteractionGraph g(5);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(2, 3);
    CHECK(bfs_distance(g, 0, 0, 4) == 0);
    CHECK(bfs_distance(g, 0, 1, 4) == 1);
    CHECK(bfs_distance(g, 0, 3, 4) == 3);
    CHECK(bfs_distance(g, 0, 3, 2) == kUnreachable);  // beyond the cutoff
    CHECK(bfs_distance(g, 0, 4, 4) == kUnreachable);  // disconnected node
}
