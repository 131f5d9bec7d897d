#include "levyarea/selection.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace levyarea {

namespace {

constexpr double kPi = std::numbers::pi;

void validate(const SelectionQuery& q) {
    if (q.m < 1) throw std::invalid_argument("selection: m must be >= 1");
    if (!(q.h > 0.0) || !std::isfinite(q.h))
        throw std::invalid_argument("selection: h must be positive and finite");
    if (!(q.eps > 0.0) || !std::isfinite(q.eps))
        throw std::invalid_argument("selection: eps must be positive and finite");
}

/// sqrt(m^2 - m), the conversion factor between the two norms.
double frob_factor(int m) {
    return std::sqrt(static_cast<double>(m) * m - m);
}

int preference_rank(AlgorithmId alg) {
    switch (alg) {
        case AlgorithmId::MronRoe: return 0;
        case AlgorithmId::Milstein: return 1;
        case AlgorithmId::Fourier: return 2;
        case AlgorithmId::Wiktorsson: return 3;
    }
    return 4;
}

} // namespace

double error_bound(AlgorithmId alg, int m, double h, std::int64_t p, ErrorNorm norm) {
    if (p < 1) throw std::invalid_argument("error_bound: p must be >= 1");
    const double pd = static_cast<double>(p);
    double bound = 0.0;
    switch (alg) {
        case AlgorithmId::Fourier:
            bound = std::sqrt(3.0 / (2.0 * kPi * kPi)) * h / std::sqrt(pd);
            break;
        case AlgorithmId::Milstein:
            bound = std::sqrt(1.0 / (2.0 * kPi * kPi)) * h / std::sqrt(pd);
            break;
        case AlgorithmId::Wiktorsson:
            bound = std::sqrt(5.0 * m / (12.0 * kPi * kPi)) * h / pd;
            break;
        case AlgorithmId::MronRoe:
            bound = std::sqrt(static_cast<double>(m) / (12.0 * kPi * kPi)) * h / pd;
            break;
    }
    if (norm == ErrorNorm::FrobeniusL2) {
        bound *= frob_factor(m);
    }
    return bound;
}

double cutoff_real(AlgorithmId alg, const SelectionQuery& q) {
    validate(q);
    const double m = static_cast<double>(q.m);
    const double h = q.h;
    const double eps = q.eps;
    // FrobeniusL2 rows are the MaxL2 rows at eps / sqrt(m^2 - m)
    const double mm = (q.norm == ErrorNorm::FrobeniusL2) ? (m * m - m) : 1.0;
    switch (alg) {
        case AlgorithmId::Fourier:
            return 3.0 * h * h * mm / (2.0 * kPi * kPi * eps * eps);
        case AlgorithmId::Milstein:
            return h * h * mm / (2.0 * kPi * kPi * eps * eps);
        case AlgorithmId::Wiktorsson:
            return std::sqrt(5.0) * h * std::sqrt(m * mm) / (std::sqrt(12.0) * kPi * eps);
        case AlgorithmId::MronRoe:
            return h * std::sqrt(m * mm) / (std::sqrt(12.0) * kPi * eps);
    }
    throw std::invalid_argument("cutoff_real: unknown algorithm");
}

std::int64_t cutoff(AlgorithmId alg, const SelectionQuery& q) {
    const double raw = cutoff_real(alg, q);
    if (!(raw >= 1.0)) {
        return 1;
    }
    if (raw >= 1.0e15) {
        throw std::invalid_argument("cutoff: truncation parameter overflows");
    }
    return static_cast<std::int64_t>(std::ceil(raw));
}

std::uint64_t cost_overhead(AlgorithmId alg, int m) {
    const std::uint64_t mu = static_cast<std::uint64_t>(m);
    switch (alg) {
        case AlgorithmId::Fourier: return 0;
        case AlgorithmId::Milstein: return mu;
        case AlgorithmId::Wiktorsson: return mu * (mu - 1) / 2;
        case AlgorithmId::MronRoe: return mu * (mu - 1) / 2 + mu;
    }
    throw std::invalid_argument("cost_overhead: unknown algorithm");
}

std::uint64_t cost(AlgorithmId alg, int m, std::int64_t p) {
    if (m < 1 || p < 1) throw std::invalid_argument("cost: m and p must be >= 1");
    return 2 * static_cast<std::uint64_t>(p) * static_cast<std::uint64_t>(m) +
           cost_overhead(alg, m);
}

double smooth_cost(AlgorithmId alg, const SelectionQuery& q) {
    return 2.0 * static_cast<double>(q.m) * cutoff_real(alg, q) +
           static_cast<double>(cost_overhead(alg, q.m));
}

double achievable_error(AlgorithmId alg, int m, double h, std::uint64_t budget,
                        ErrorNorm norm) {
    if (m < 1) throw std::invalid_argument("achievable_error: m must be >= 1");
    if (!(h > 0.0)) throw std::invalid_argument("achievable_error: h must be positive");
    const std::uint64_t overhead = cost_overhead(alg, m);
    if (budget <= overhead) {
        throw std::invalid_argument("achievable_error: budget exhausted by overhead");
    }
    const double md = static_cast<double>(m);
    const double c = static_cast<double>(budget);
    // MaxL2 rows; FrobeniusL2 multiplies by m*sqrt(m-1)/sqrt(m) = sqrt(m^2-m)
    double err = 0.0;
    switch (alg) {
        case AlgorithmId::Fourier:
            err = std::sqrt(3.0) / kPi * h * std::sqrt(md) / std::sqrt(c);
            break;
        case AlgorithmId::Milstein:
            err = 1.0 / kPi * h * std::sqrt(md) / std::sqrt(c - md);
            break;
        case AlgorithmId::Wiktorsson:
            err = 2.0 * std::sqrt(5.0) / (std::sqrt(3.0) * kPi) * h * md * std::sqrt(md) /
                  (2.0 * c - md * md + md);
            break;
        case AlgorithmId::MronRoe:
            err = 2.0 / (std::sqrt(3.0) * kPi) * h * md * std::sqrt(md) /
                  (2.0 * c - md * md - md);
            break;
    }
    if (norm == ErrorNorm::FrobeniusL2) {
        err *= frob_factor(m);
    }
    return err;
}

CostReport optimal_algorithm(const SelectionQuery& q) {
    validate(q);
    if (q.m == 1) {
        // No Levy area in one dimension: the iterated integral is exact and
        // costs nothing beyond the given increment.
        return CostReport{AlgorithmId::Fourier, 1, 0};
    }
    bool have = false;
    AlgorithmId best = AlgorithmId::Fourier;
    double best_cost = 0.0;
    for (AlgorithmId alg : kAllAlgorithms) {
        const double c = smooth_cost(alg, q);
        if (!have || c < best_cost ||
            (c == best_cost && preference_rank(alg) < preference_rank(best))) {
            have = true;
            best = alg;
            best_cost = c;
        }
    }
    const std::int64_t p = cutoff(best, q);
    return CostReport{best, p, cost(best, q.m, p)};
}

} // namespace levyarea
