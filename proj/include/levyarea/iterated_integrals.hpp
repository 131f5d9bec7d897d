#pragma once

#include <optional>

#include "levyarea/levy_area.hpp"
#include "levyarea/selection.hpp"

namespace levyarea {

/// I(h) = h * (1/2 W_std W_std^T - 1/2 I_m + A_std) with the diagonal written
/// as the exact formula I_(i,i) = ((W_h^i)^2 - h)/2.
IteratedIntegrals assemble(const WienerIncrement& w, const LevyArea& a_std);

struct SimulateOptions {
    std::optional<double> eps;              // default h^{3/2}
    ErrorNorm norm = ErrorNorm::MaxL2;
    std::optional<AlgorithmId> alg;         // default: cost-optimal choice
    std::optional<std::int64_t> p;          // explicit truncation, bypasses eps
    SeriesKernelConfig kernel;
};

/// What a simulation actually did, for provenance headers and cost checks.
struct SimulationResult {
    IteratedIntegrals integrals;
    AlgorithmId algorithm;
    std::int64_t p;
    std::uint64_t gaussians;
    double eps;
    ErrorNorm norm;
};

/// Simulates I(h) for the given increment to mean-square precision eps
/// (coupled sense). m = 1 short-circuits to the exact 1x1 integral with zero
/// extra draws. An explicit p requires an explicit algorithm.
SimulationResult simulate(const WienerIncrement& w, GaussianSource& src,
                          const SimulateOptions& opts = {});

/// Square roots of the covariance eigenvalues of the Q-Wiener projection.
struct QWienerSpec {
    explicit QWienerSpec(Vector sqrt_eigenvalues);
    const Vector& sqrt_eigenvalues() const { return sqrt_eigenvalues_; }
    int dim() const { return static_cast<int>(sqrt_eigenvalues_.size()); }

private:
    Vector sqrt_eigenvalues_;
};

/// Internal tolerance guaranteeing the requested precision after the
/// diag(sqrt(eta)) * I * diag(sqrt(eta)) congruence: eps / max(eta) in max,L2
/// and eps * sqrt(m^2-m) / sqrt(sum_{i != j} eta_i eta_j) in FrobeniusL2
/// (entrywise errors scale by sqrt(eta_i eta_j); both bounds conservative).
double qwiener_internal_tolerance(const QWienerSpec& spec, double eps, ErrorNorm norm);

struct SimulateQWienerOptions {
    std::optional<double> eps;              // default h^{3/2}
    ErrorNorm norm = ErrorNorm::FrobeniusL2;
    std::optional<AlgorithmId> alg;
    std::optional<std::int64_t> p;
    SeriesKernelConfig kernel;
};

/// Simulates I^{Q_m}(h) given the increment of the projected Q-Wiener process
/// (already scaled by sqrt(eta)). Unscales, simulates at the adjusted internal
/// tolerance, and applies the diagonal congruence.
SimulationResult simulate_qwiener(const WienerIncrement& qw, const QWienerSpec& spec,
                                  GaussianSource& src,
                                  const SimulateQWienerOptions& opts = {});

} // namespace levyarea
