#include "levyarea/benchmark.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace levyarea {

std::vector<BenchRow> run_benchmark(const BenchSpec& spec) {
    if (spec.m < 1) throw std::invalid_argument("run_benchmark: m must be >= 1");
    if (spec.reps < 1) throw std::invalid_argument("run_benchmark: reps must be >= 1");
    if (spec.h_grid.empty()) throw std::invalid_argument("run_benchmark: empty h grid");

    using clock = std::chrono::steady_clock;
    std::vector<BenchRow> rows;
    GaussianSource src(spec.seed);

    for (AlgorithmId alg : spec.algorithms) {
        for (double h : spec.h_grid) {
            const double eps = spec.eps.value_or(std::pow(h, 1.5));
            const SelectionQuery q{spec.m, h, eps, spec.norm};
            const std::int64_t p = cutoff(alg, q);
            if (cost(alg, spec.m, p) > spec.max_cost) {
                continue;
            }
            const Vector w_vals = std::sqrt(h) * src.draw_vector(spec.m);
            const WienerIncrement w(w_vals, h);
            SimulateOptions opts;
            opts.eps = eps;
            opts.norm = spec.norm;
            opts.alg = alg;
            opts.p = p;

            (void)simulate(w, src, opts);  // warm-up, untimed

            double total_ns = 0.0;
            double min_ns = std::numeric_limits<double>::infinity();
            for (int rep = 0; rep < spec.reps; ++rep) {
                const auto t0 = clock::now();
                (void)simulate(w, src, opts);
                const auto t1 = clock::now();
                const double ns =
                    std::chrono::duration<double, std::nano>(t1 - t0).count();
                total_ns += ns;
                min_ns = std::min(min_ns, ns);
            }
            rows.push_back(BenchRow{alg, spec.m, h, p,
                                    total_ns / spec.reps, min_ns, spec.reps});
        }
    }
    return rows;
}

} // namespace levyarea
