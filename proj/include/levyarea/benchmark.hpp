#pragma once

#include <vector>

#include "levyarea/iterated_integrals.hpp"

namespace levyarea {

struct BenchRow {
    AlgorithmId alg;
    int m;
    double h;
    std::int64_t p;
    double wall_ns_mean;
    double wall_ns_min;
    int reps;
};

struct BenchSpec {
    int m;
    std::vector<double> h_grid;
    std::optional<double> eps;      // per-h default h^{3/2}
    ErrorNorm norm = ErrorNorm::MaxL2;
    int reps = 100;
    std::uint64_t seed = 0;
    std::vector<AlgorithmId> algorithms{std::begin(kAllAlgorithms),
                                        std::end(kAllAlgorithms)};
    // cells whose draw count exceeds this are skipped, so the slow
    // algorithms do not stall the grid at tiny step sizes
    std::uint64_t max_cost = 200'000'000;
};

/// Times full I(h) generation per (algorithm, h) cell with p from the cut-off
/// formulas. One untimed warm-up run per cell primes buffers and the
/// allocator. reps = 1 is allowed (min == mean).
std::vector<BenchRow> run_benchmark(const BenchSpec& spec);

} // namespace levyarea
