#include <doctest.h>

#include <cmath>
#include <set>

#include "ultinet/rng.hpp"

using namespace ultinet;

TEST_CASE("identical seeds give identical streams") {
    Rng a(42), b(42);
    for (int i = 0; i < 1000; ++i) {
        CHECK(a.uniform01() == b.uniform01());
        CHECK(a.below(17) == b.below(17));
        CHECK(a.normal(0.0, 1.0) == b.normal(0.0, 1.0));
    }
}

TEST_CASE("uniform01 stays in [0,1)") {
    Rng rng(7);
    double lo = 1.0, hi = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.uniform01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        lo = std::min(lo, u);
        hi = std::max(hi, u);
    }
    CHECK(lo < 0.001);  // the range is actually exercised
    CHECK(hi > 0.999);
}

TEST_CASE("below is bounded and roughly uniform") {
    Rng rng(11);
    int counts[10] = {};
    for (int i = 0; i < 100000; ++i) {
        const auto v = rng.below(10);
        REQUIRE(v < 10);
        ++counts[v];
    }
    for (int c : counts) {
        CHECK(c > 9000);  // 10000 expected, ~±300 at 3 sigma
        CHECK(c < 11000);
    }
}

TEST_CASE("normal deviates have the requested moments") {
    Rng rng(13);
    const int trials = 100000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < trials; ++i) {
        const double v = rng.normal(3.0, 2.0);
        sum += v;
        sum_sq += v * v;
    }
    const double mean = sum / trials;
    const double sd = std::sqrt(sum_sq / trials - mean * mean);
    CHECK(mean == doctest::Approx(3.0).epsilon(0.01));
    CHECK(sd == doctest::Approx(2.0).epsilon(0.01));
}

TEST_CASE("derive_seed is deterministic and spreads indices") {
    CHECK(derive_seed(1, 0) == derive_seed(1, 0));
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_seed(12345, i));
    CHECK(seen.size() == 1000);
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
    CHECK(stream_seed(9, Stream::PopulationInit) != stream_seed(9, Stream::GameLoop));
}
