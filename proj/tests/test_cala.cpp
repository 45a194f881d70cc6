#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "ultinet/cala.hpp"

using namespace ultinet;

namespace {
const CalaParams kParams{};  // lambda 0.02, decay 0.001, floor 1e-7
}

TEST_CASE("phi floors the width") {
    CHECK(phi(1.0, 1e-7) == 1.0);
    CHECK(phi(0.0, 1e-7) == 1e-7);
    CHECK(phi(-3.0, 1e-7) == 1e-7);
}

TEST_CASE("feedback ratio is clamped to [-1, 1]") {
    CHECK(clamped_feedback_ratio(0.0, 1.0, 1.0) == 1.0);
    CHECK(clamped_feedback_ratio(0.0, 0.5, 1.0) == 0.5);
    CHECK(clamped_feedback_ratio(0.0, 100.0, 1.0) == 1.0);
    CHECK(clamped_feedback_ratio(100.0, 0.0, 1.0) == -1.0);
    CHECK(clamped_feedback_ratio(3.0, 3.0, 0.5) == 0.0);
}

TEST_CASE("single update reproduces the worked example") {
    // mu 5, sigma 1, sample 6, x-feedback 1, mu-feedback 0:
    // ratio 1, step 1 -> mu 5.02; sigma 1 - lambda*K*(1 - floor)
    Cala cala(5.0, 1.0, kParams);
    cala.update(6.0, 0.0, 1.0);
    CHECK(cala.mu() == doctest::Approx(5.02).epsilon(1e-12));
    const double expected_sigma = 1.0 - 0.02 * 0.001 * (1.0 - 1e-7);
    CHECK(cala.sigma() == doctest::Approx(expected_sigma).epsilon(1e-12));
    CHECK(cala.sigma() == doctest::Approx(0.99998).epsilon(1e-9));
}

TEST_CASE("equal feedback leaves mu bitwise unchanged") {
    Cala cala(5.0, 1.0, kParams);
    cala.update(6.0, 2.5, 2.5);
    CHECK(cala.mu() == 5.0);
    CHECK(cala.sigma() < 1.0);  // only the decay term acted
}

TEST_CASE("sigma never drops below the floor") {
    Cala cala(0.0, 1e-7, kParams);
    for (int i = 0; i < 1000; ++i) {
        cala.update(cala.mu() + 1e-9, 0.0, 5.0);
        CHECK(cala.sigma() >= kParams.sigma_floor);
    }
}

TEST_CASE("negative ratio moves mu away from the sample") {
    Cala cala(5.0, 1.0, kParams);
    cala.update(6.0, 4.0, 1.0);  // playing x was worse
    CHECK(cala.mu() < 5.0);
}

TEST_CASE("non-finite inputs are rejected") {
    Cala cala(5.0, 1.0, kParams);
    CHECK_THROWS_AS(cala.update(std::nan(""), 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(cala.update(6.0, INFINITY, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(cala.update(6.0, 0.0, -INFINITY), std::invalid_argument);
}

TEST_CASE("parameters must be positive") {
    CHECK_THROWS_AS(Cala(0.0, 1.0, CalaParams{-0.1, 0.001, 1e-7}), std::invalid_argument);
    CHECK_THROWS_AS(Cala(0.0, 1.0, CalaParams{0.02, 0.0, 1e-7}), std::invalid_argument);
    CHECK_THROWS_AS(Cala(0.0, 1.0, CalaParams{0.02, 0.001, 0.0}), std::invalid_argument);
}

TEST_CASE("samples follow the policy's moments") {
    Rng rng(101);
    Cala cala(4.0, 0.5, kParams);
    const int trials = 100000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < trials; ++i) {
        const double v = cala.sample(rng);
        sum += v;
        sum_sq += v * v;
    }
    const double mean = sum / trials;
    const double sd = std::sqrt(sum_sq / trials - mean * mean);
    CHECK(std::fabs(mean - 4.0) < 0.01);
    CHECK(std::fabs(sd - 0.5) < 0.01);
}

TEST_CASE("a collapsed policy samples its mean") {
    Rng rng(5);
    Cala cala(2.0, 1e-7, kParams);
    for (int i = 0; i < 100; ++i)
        CHECK(cala.sample(rng) == doctest::Approx(2.0).epsilon(1e-5));
}
