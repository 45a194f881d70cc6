#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ultinet/analysis.hpp"
#include "ultinet/graph.hpp"
#include "ultinet/population.hpp"
#include "ultinet/rng.hpp"
#include "ultinet/runner.hpp"

using namespace ultinet;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point start) {
    return std::chrono::duration<double>(clock_type::now() - start).count();
}

void bench_replications(int threads) {
    ExperimentConfig config;
    config.n = 100;
    config.frac_fs = 0.3;
    config.frac_dsh = 0.35;
    config.frac_dsr = 0.35;
    config.iterations_per_agent = 500;
    config.repetitions = 8;
    config.rewiring = true;
    config.master_seed = 99;

    auto start = clock_type::now();
    const ExperimentResult serial = run_experiment_serial(config);
    const double serial_s = seconds_since(start);

    start = clock_type::now();
    const ExperimentResult parallel = run_experiment(config, threads);
    const double parallel_s = seconds_since(start);

    const bool identical = runs_csv(serial) == runs_csv(parallel);
    std::printf("replication loop   (%d runs x %lld games):\n", config.repetitions,
                static_cast<long long>(config.total_iterations()));
    std::printf("  serial    %8.3f s\n", serial_s);
    std::printf("  %2d-thread %8.3f s   speedup %.2fx   results %s\n", threads, parallel_s,
                serial_s / parallel_s, identical ? "identical" : "DIFFER");
}

void bench_measurement(int threads) {
    Rng rng(7);
    const CalaParams params;
    const int n = 20000;
    Population pop = Population::init(n, {0.3, 0.35, 0.35}, 1.0, params, rng);
    InteractionGraph graph = generate_ba(n, rng);
    const int rounds = 200;

    auto start = clock_type::now();
    PerformanceReport serial;
    for (int r = 0; r < rounds; ++r) serial = measure_performance(pop, graph);
    const double serial_s = seconds_since(start);

    start = clock_type::now();
    PerformanceReport parallel;
    for (int r = 0; r < rounds; ++r) parallel = measure_performance_parallel(pop, graph);
    const double parallel_s = seconds_since(start);

    const bool identical = serial.successes == parallel.successes &&
                           serial.played == parallel.played;
    std::printf("measurement kernel (%d nodes, %d edges, %d rounds):\n", n, graph.edge_count(),
                rounds);
    std::printf("  serial    %8.3f s\n", serial_s);
    std::printf("  %2d-thread %8.3f s   speedup %.2fx   results %s\n", threads, parallel_s,
                serial_s / parallel_s, identical ? "identical" : "DIFFER");
}

}  // namespace

int main(int argc, char** argv) {
    int threads = 0;
    if (argc > 1) threads = std::atoi(argv[1]);
#ifdef _OPENMP
    if (threads <= 0) threads = omp_get_max_threads();
#else
    if (threads <= 0) threads = 1;
#endif
    std::printf("comparing the serial reference against the parallel paths (%d threads)\n\n",
                threads);
    bench_replications(threads);
    std::printf("\n");
    bench_measurement(threads);
    return 0;
}
