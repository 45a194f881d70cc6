#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ultinet {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;  // short evidence, filled on pass and fail alike
};

// Named property suites over the core modules. Deterministic given the seed;
// every statistical bound below was chosen with comfortable slack for the
// sample sizes used, so a failure indicates a real defect, not bad luck.
std::vector<CheckResult> automaton_checks(std::uint64_t seed);
std::vector<CheckResult> game_checks(std::uint64_t seed);
std::vector<CheckResult> network_checks(std::uint64_t seed);
std::vector<CheckResult> analysis_checks(std::uint64_t seed);
std::vector<CheckResult> runner_checks(std::uint64_t seed);

// all suites, names prefixed with their module
std::vector<CheckResult> run_all_checks(std::uint64_t seed);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace ultinet
