// Command-line front-end for the iterated-integral simulator: single-shot
// simulation, algorithm selection queries, coupled convergence studies and
// timing benchmarks, all as machine-readable CSV with reproducible seeds.

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "levyarea/benchmark.hpp"
#include "levyarea/coupling_oracle.hpp"

namespace {

using namespace levyarea;

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::uint64_t entropy_seed() {
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

struct Output {
    std::ofstream file;
    std::ostream* stream = &std::cout;

    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file.open(path);
            if (!file) {
                throw std::runtime_error("cannot open output file: " + path);
            }
            stream = &file;
        }
    }
    std::ostream& out() { return *stream; }
};

AlgorithmId require_algorithm(const std::string& name) {
    const auto alg = parse_algorithm(name);
    if (!alg) throw CLI::ValidationError("--alg", "unknown algorithm: " + name);
    return *alg;
}

ErrorNorm require_norm(const std::string& name) {
    const auto norm = parse_norm(name);
    if (!norm) throw CLI::ValidationError("--norm", "unknown norm: " + name);
    return *norm;
}

Vector read_eigenvalues(const std::string& path, int m) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open eigenvalue file: " + path);
    std::vector<double> vals;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ss(line);
        double v;
        if (ss >> v) vals.push_back(v);
    }
    if (static_cast<int>(vals.size()) != m) {
        throw std::runtime_error("eigenvalue file must hold exactly --dim values");
    }
    Vector eta(m);
    for (int i = 0; i < m; ++i) {
        if (!(vals[i] > 0.0)) throw std::runtime_error("eigenvalues must be positive");
        eta(i) = vals[i];
    }
    return eta;
}

int cmd_simulate(int m, double h, double eps_flag, bool eps_set,
                 const std::string& norm_name, const std::string& alg_name,
                 std::int64_t p_flag, std::uint64_t seed, bool seed_set,
                 const std::string& qwiener_file, const std::string& out_path) {
    Output output(out_path);
    const std::uint64_t seed_used = seed_set ? seed : entropy_seed();
    GaussianSource src(seed_used);

    const bool qwiener = !qwiener_file.empty();
    ErrorNorm norm = norm_name.empty()
                         ? (qwiener ? ErrorNorm::FrobeniusL2 : ErrorNorm::MaxL2)
                         : require_norm(norm_name);
    std::optional<AlgorithmId> alg;
    if (!alg_name.empty() && alg_name != "auto") alg = require_algorithm(alg_name);
    std::optional<double> eps;
    if (eps_set) eps = eps_flag;
    std::optional<std::int64_t> p;
    if (p_flag > 0) p = p_flag;

    SimulationResult result = [&] {
        if (qwiener) {
            const Vector eta = read_eigenvalues(qwiener_file, m);
            const QWienerSpec spec(eta.cwiseSqrt());
            const Vector z = src.draw_vector(m);
            const Vector qw =
                std::sqrt(h) * spec.sqrt_eigenvalues().cwiseProduct(z);
            SimulateQWienerOptions opts{eps, norm, alg, p, {}};
            return simulate_qwiener(WienerIncrement(qw, h), spec, src, opts);
        }
        const Vector w = std::sqrt(h) * src.draw_vector(m);
        SimulateOptions opts{eps, norm, alg, p, {}};
        return simulate(WienerIncrement(w, h), src, opts);
    }();

    auto& os = output.out();
    os << "# algorithm=" << to_string(result.algorithm) << "\n";
    os << "# p=" << result.p << "\n";
    os << "# gaussians=" << result.gaussians << "\n";
    os << "# seed=" << seed_used << "\n";
    os << "# eps=" << fmt(result.eps) << "\n";
    os << "# norm=" << to_string(result.norm) << "\n";
    os << "# dim=" << m << "\n";
    os << "# stepsize=" << fmt(h) << "\n";
    const Matrix& mat = result.integrals.matrix();
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            os << (j ? "," : "") << fmt(mat(i, j));
        }
        os << "\n";
    }
    return 0;
}

int cmd_optimal(int m, double h, double eps_flag, bool eps_set,
                const std::string& norm_name, const std::string& out_path) {
    Output output(out_path);
    const double eps = eps_set ? eps_flag : std::pow(h, 1.5);
    const ErrorNorm norm = norm_name.empty() ? ErrorNorm::MaxL2 : require_norm(norm_name);
    const CostReport report = optimal_algorithm(SelectionQuery{m, h, eps, norm});
    output.out() << to_string(report.algorithm) << "," << report.p << ","
                 << report.gaussians << "\n";
    return 0;
}

int cmd_convergence(int m, double h, const std::string& norm_name, int reps,
                    std::int64_t p_ref, std::int64_t p_max,
                    std::uint64_t seed, bool seed_set, const std::string& out_path) {
    Output output(out_path);
    const std::uint64_t seed_used = seed_set ? seed : entropy_seed();
    StudySpec spec;
    spec.m = m;
    spec.h = h;
    for (std::int64_t p = 4; p <= p_max; p *= 2) spec.p_grid.push_back(p);
    if (spec.p_grid.empty()) throw std::runtime_error("--pmax must be at least 4");
    spec.p_ref = p_ref;
    spec.reps = reps;
    spec.norm = norm_name.empty() ? ErrorNorm::MaxL2 : require_norm(norm_name);
    spec.seed = seed_used;

    const std::vector<StudyRow> rows = convergence_study(spec);
    auto& os = output.out();
    os << "# pref=" << p_ref << "\n";
    os << "# seed=" << seed_used << "\n";
    os << "alg,m,h,p,cost,error_est,error_se,bound,reps,seed\n";
    for (const StudyRow& r : rows) {
        os << to_string(r.alg) << "," << r.m << "," << fmt(r.h) << "," << r.p << ","
           << r.cost << "," << fmt(r.error_est) << "," << fmt(r.error_se) << ","
           << fmt(r.bound) << "," << r.reps << "," << r.seed << "\n";
    }
    return 0;
}

int cmd_bench(int m, double eps_flag, bool eps_set, const std::string& norm_name,
              int reps, double h_max, double h_min, std::uint64_t max_cost,
              std::uint64_t seed, bool seed_set, const std::string& out_path) {
    Output output(out_path);
    const std::uint64_t seed_used = seed_set ? seed : entropy_seed();
    BenchSpec spec;
    spec.m = m;
    for (double h = h_max; h >= h_min * (1.0 - 1e-12); h /= 10.0) {
        spec.h_grid.push_back(h);
    }
    if (eps_set) spec.eps = eps_flag;
    spec.norm = norm_name.empty() ? ErrorNorm::MaxL2 : require_norm(norm_name);
    spec.reps = reps;
    spec.seed = seed_used;
    spec.max_cost = max_cost;

    const std::vector<BenchRow> rows = run_benchmark(spec);
    auto& os = output.out();
    os << "# seed=" << seed_used << "\n";
    os << "alg,m,h,p,wall_ns_mean,wall_ns_min,reps\n";
    for (const BenchRow& r : rows) {
        os << to_string(r.alg) << "," << r.m << "," << fmt(r.h) << "," << r.p << ","
           << fmt(r.wall_ns_mean) << "," << fmt(r.wall_ns_min) << "," << r.reps << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulation of twofold iterated stochastic integrals and Levy areas"};
    app.require_subcommand(1);

    int m = 1;
    double h = 1.0;
    double eps = 0.0;
    std::int64_t p = 0;
    std::uint64_t seed = 0;
    std::string norm_name, alg_name, qwiener_file, out_path;
    int reps = 100;
    std::int64_t p_ref = 100000, p_max = 1024;
    double h_max = 1.0, h_min = 1e-8;
    std::uint64_t max_cost = 200'000'000ULL;

    auto add_common = [&](CLI::App* cmd, bool with_h) {
        cmd->add_option("--dim,-m", m, "dimension of the Wiener process")
            ->required()->check(CLI::PositiveNumber);
        if (with_h) {
            cmd->add_option("--stepsize", h, "step size h")->check(CLI::PositiveNumber);
        }
        cmd->add_option("--norm", norm_name, "error norm: maxl2 | frobeniusl2");
        cmd->add_option("--output", out_path, "output file (default: stdout)");
    };

    CLI::App* sim = app.add_subcommand("simulate", "simulate one matrix I(h)");
    add_common(sim, true);
    CLI::Option* sim_eps = sim->add_option("--eps", eps, "precision (default h^1.5)");
    sim->add_option("--alg", alg_name, "fourier | milstein | wiktorsson | mronroe | auto");
    sim->add_option("--p", p, "explicit truncation parameter (requires --alg)");
    CLI::Option* sim_seed = sim->add_option("--seed", seed, "RNG seed");
    sim->add_option("--qwiener-file", qwiener_file,
                    "file of covariance eigenvalues, one per line (Q-Wiener mode)");

    CLI::App* opt = app.add_subcommand("optimal", "report the cost-optimal algorithm");
    add_common(opt, true);
    CLI::Option* opt_eps = opt->add_option("--eps", eps, "precision (default h^1.5)");

    CLI::App* conv = app.add_subcommand("convergence", "coupled convergence study");
    add_common(conv, true);
    conv->add_option("--reps", reps, "realizations per cell")->check(CLI::Range(2, 1 << 30));
    conv->add_option("--pref", p_ref, "reference truncation p_ref")->check(CLI::PositiveNumber);
    conv->add_option("--pmax", p_max, "largest p of the dyadic grid 4,8,...")
        ->check(CLI::PositiveNumber);
    CLI::Option* conv_seed = conv->add_option("--seed", seed, "RNG seed");

    CLI::App* bench = app.add_subcommand("bench", "wall-clock timings over an h grid");
    add_common(bench, false);
    CLI::Option* bench_eps = bench->add_option("--eps", eps, "fixed precision (default h^1.5 per h)");
    bench->add_option("--reps", reps, "timed repetitions per cell")->check(CLI::PositiveNumber);
    bench->add_option("--hmax", h_max, "largest step size")->check(CLI::PositiveNumber);
    bench->add_option("--hmin", h_min, "smallest step size")->check(CLI::PositiveNumber);
    bench->add_option("--max-cost", max_cost, "skip cells above this draw count");
    CLI::Option* bench_seed = bench->add_option("--seed", seed, "RNG seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) {
            return cmd_simulate(m, h, eps, !sim_eps->empty(), norm_name, alg_name, p,
                                seed, !sim_seed->empty(), qwiener_file, out_path);
        }
        if (opt->parsed()) {
            return cmd_optimal(m, h, eps, !opt_eps->empty(), norm_name, out_path);
        }
        if (conv->parsed()) {
            return cmd_convergence(m, h, norm_name, reps, p_ref, p_max, seed,
                                   !conv_seed->empty(), out_path);
        }
        if (bench->parsed()) {
            return cmd_bench(m, eps, !bench_eps->empty(), norm_name, reps, h_max, h_min,
                             max_cost, seed, !bench_seed->empty(), out_path);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
