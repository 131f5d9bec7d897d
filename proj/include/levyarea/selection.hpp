#pragma once

#include <cstdint>

#include "levyarea/types.hpp"

namespace levyarea {

/// Inputs of the cut-off / cost / chooser formulas.
struct SelectionQuery {
    int m;
    double h;
    double eps;
    ErrorNorm norm = ErrorNorm::MaxL2;
};

/// Chooser verdict: the algorithm, its cut-off, and the exact number of
/// standard normals it will draw (the draw-count formula evaluated at p).
struct CostReport {
    AlgorithmId algorithm;
    std::int64_t p;
    std::uint64_t gaussians;
};

/// Mean-square error bound of the given algorithm at truncation p:
///   Fourier    sqrt(3/(2 pi^2)) * h / sqrt(p)
///   Milstein   sqrt(1/(2 pi^2)) * h / sqrt(p)
///   Wiktorsson sqrt(5m/(12 pi^2)) * h / p
///   MronRoe    sqrt( m/(12 pi^2)) * h / p
/// in max,L2; the FrobeniusL2 bound is sqrt(m^2-m) times larger.
double error_bound(AlgorithmId alg, int m, double h, std::int64_t p, ErrorNorm norm);

/// Real-valued cut-off lower bound p(m,h,eps) for the requested norm.
double cutoff_real(AlgorithmId alg, const SelectionQuery& q);

/// Minimal integer truncation parameter guaranteeing the error bound <= eps:
/// max(1, ceil(cutoff_real)). For m = 1 under FrobeniusL2 the formula
/// degenerates to zero and p = 1 is returned (no Levy area exists).
std::int64_t cutoff(AlgorithmId alg, const SelectionQuery& q);

/// Exact number of standard normals drawn per call:
///   Fourier 2pm; Milstein 2pm + m; Wiktorsson 2pm + (m^2-m)/2;
///   MronRoe 2pm + (m^2-m)/2 + m.
std::uint64_t cost(AlgorithmId alg, int m, std::int64_t p);

/// Fixed draw overhead on top of the 2pm series coefficients.
std::uint64_t cost_overhead(AlgorithmId alg, int m);

/// Real-valued cost c(m,h,eps) of meeting precision eps (cut-off row
/// substituted into the cost row; no ceiling). This is the objective the
/// chooser minimizes.
double smooth_cost(AlgorithmId alg, const SelectionQuery& q);

/// Minimal achievable error eps(m,h,budget) given a draw budget. Throws
/// std::invalid_argument when the budget does not exceed the algorithm's
/// fixed overhead.
double achievable_error(AlgorithmId alg, int m, double h, std::uint64_t budget,
                        ErrorNorm norm);

/// Cheapest algorithm for the query, by the smooth cost model; ties prefer
/// MronRoe, then Milstein, then Fourier, then Wiktorsson (smaller error
/// constant at equal cost). m = 1 short-circuits to {Fourier, p=1, 0 draws}
/// since no Levy area is ever generated in one dimension.
CostReport optimal_algorithm(const SelectionQuery& q);

} // namespace levyarea
