#include "levyarea/iterated_integrals.hpp"

#include <cmath>
#include <stdexcept>

namespace levyarea {

IteratedIntegrals assemble(const WienerIncrement& w, const LevyArea& a_std) {
    const int m = w.dim();
    if (a_std.dim() != m) {
        throw std::invalid_argument("assemble: dimension mismatch between increment and Levy area");
    }
    const Vector w_std = StandardizedIncrement(w).values();
    Matrix entries = 0.5 * w_std * w_std.transpose();
    entries.diagonal().array() -= 0.5;
    entries += a_std.matrix();
    entries *= w.step();
    // exact diagonal: ((W_h^i)^2 - h)/2
    for (int i = 0; i < m; ++i) {
        const double wi = w.values()(i);
        entries(i, i) = 0.5 * (wi * wi - w.step());
    }
    return IteratedIntegrals(std::move(entries));
}

namespace {

SimulationResult simulate_impl(const WienerIncrement& w, GaussianSource& src,
                               std::optional<double> eps_opt, ErrorNorm norm,
                               std::optional<AlgorithmId> alg_opt,
                               std::optional<std::int64_t> p_opt,
                               const SeriesKernelConfig& kernel) {
    const int m = w.dim();
    const double eps = eps_opt.value_or(std::pow(w.step(), 1.5));
    if (!(eps > 0.0)) {
        throw std::invalid_argument("simulate: eps must be positive");
    }
    if (p_opt && !alg_opt) {
        throw std::invalid_argument("simulate: explicit p requires an explicit algorithm");
    }

    if (m == 1) {
        const double wi = w.values()(0);
        Matrix entries(1, 1);
        entries(0, 0) = 0.5 * (wi * wi - w.step());
        return SimulationResult{IteratedIntegrals(std::move(entries)),
                                alg_opt.value_or(AlgorithmId::Fourier), 1, 0, eps, norm};
    }

    AlgorithmId alg;
    std::int64_t p;
    if (alg_opt) {
        alg = *alg_opt;
        p = p_opt ? *p_opt : cutoff(alg, SelectionQuery{m, w.step(), eps, norm});
        if (p < 1) throw std::invalid_argument("simulate: p must be >= 1");
    } else {
        const CostReport report = optimal_algorithm(SelectionQuery{m, w.step(), eps, norm});
        alg = report.algorithm;
        p = report.p;
    }

    const std::uint64_t before = src.draw_count();
    const LevyArea a = levy_area(alg, w.standardized(), p, kernel, src);
    const std::uint64_t drawn = src.draw_count() - before;
    return SimulationResult{assemble(w, a), alg, p, drawn, eps, norm};
}

} // namespace

SimulationResult simulate(const WienerIncrement& w, GaussianSource& src,
                          const SimulateOptions& opts) {
    return simulate_impl(w, src, opts.eps, opts.norm, opts.alg, opts.p, opts.kernel);
}

QWienerSpec::QWienerSpec(Vector sqrt_eigenvalues)
    : sqrt_eigenvalues_(std::move(sqrt_eigenvalues)) {
    if (sqrt_eigenvalues_.size() < 1) {
        throw std::invalid_argument("QWienerSpec: dimension must be >= 1");
    }
    for (Eigen::Index i = 0; i < sqrt_eigenvalues_.size(); ++i) {
        const double s = sqrt_eigenvalues_(i);
        if (!(s > 0.0) || !std::isfinite(s)) {
            throw std::invalid_argument("QWienerSpec: degenerate eigenvalue (all must be strictly positive and finite)");
        }
    }
}

double qwiener_internal_tolerance(const QWienerSpec& spec, double eps, ErrorNorm norm) {
    if (!(eps > 0.0)) {
        throw std::invalid_argument("qwiener_internal_tolerance: eps must be positive");
    }
    const Vector eta = spec.sqrt_eigenvalues().array().square();
    if (norm == ErrorNorm::MaxL2) {
        return eps / eta.maxCoeff();
    }
    const int m = spec.dim();
    if (m == 1) {
        // no off-diagonal entries; the diagonal is exact, any tolerance works
        return eps;
    }
    const double sum = eta.sum();
    const double sum_sq = eta.array().square().sum();
    const double off_diag_mass = sum * sum - sum_sq;  // sum_{i != j} eta_i eta_j
    return eps * std::sqrt(static_cast<double>(m) * m - m) / std::sqrt(off_diag_mass);
}

SimulationResult simulate_qwiener(const WienerIncrement& qw, const QWienerSpec& spec,
                                  GaussianSource& src,
                                  const SimulateQWienerOptions& opts) {
    if (spec.dim() != qw.dim()) {
        throw std::invalid_argument("simulate_qwiener: eigenvalue count must match the increment dimension");
    }
    const double eps = opts.eps.value_or(std::pow(qw.step(), 1.5));
    const double internal_eps = qwiener_internal_tolerance(spec, eps, opts.norm);

    const Vector& s = spec.sqrt_eigenvalues();
    const WienerIncrement w(qw.values().cwiseQuotient(s), qw.step());
    SimulationResult result = simulate_impl(w, src, internal_eps, opts.norm,
                                            opts.alg, opts.p, opts.kernel);

    Matrix scaled = s.asDiagonal() * result.integrals.matrix();
    scaled = scaled * s.asDiagonal();
    return SimulationResult{IteratedIntegrals(std::move(scaled)), result.algorithm,
                            result.p, result.gaussians, eps, opts.norm};
}

} // namespace levyarea
