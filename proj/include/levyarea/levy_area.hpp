#pragma once

#include "levyarea/series_kernel.hpp"

namespace levyarea {

/// The four generators below simulate the Levy area A(1) of the standardized
/// increment; rescaling to step h lives in the iterated-integrals layer.
///
/// Draw order is fixed and part of the reproducibility contract: the series
/// coefficients (alpha block then beta block, per block), then gamma_1
/// (Milstein, MronRoe), then the strictly lower triangular Gamma
/// (Wiktorsson) or Gamma_2 (MronRoe).
///
/// Total draws per call: Fourier 2pm, Milstein 2pm + m,
/// Wiktorsson 2pm + m(m-1)/2, MronRoe 2pm + m(m-1)/2 + m.
LevyArea fourier_levy_area(const StandardizedIncrement& w_std, std::int64_t p,
                           const SeriesKernelConfig& cfg, GaussianSource& src);
LevyArea milstein_levy_area(const StandardizedIncrement& w_std, std::int64_t p,
                            const SeriesKernelConfig& cfg, GaussianSource& src);
LevyArea wiktorsson_levy_area(const StandardizedIncrement& w_std, std::int64_t p,
                              const SeriesKernelConfig& cfg, GaussianSource& src);
LevyArea mronroe_levy_area(const StandardizedIncrement& w_std, std::int64_t p,
                           const SeriesKernelConfig& cfg, GaussianSource& src);

LevyArea levy_area(AlgorithmId alg, const StandardizedIncrement& w_std,
                   std::int64_t p, const SeriesKernelConfig& cfg, GaussianSource& src);

/// Deterministic tail terms added to the series matrix S before the final
/// (S - S^T)/(2 pi) assembly. `scale` is sqrt(2 psi_1(p+1)) in production;
/// the coupled reference oracle passes its finite-tail analogue.
///
/// Milstein:   scale * W gamma_1^T
/// Wiktorsson: scale * ((Gamma - Gamma^T) W W^T / (1 + sqrt(1 + |W|^2)) + Gamma)
/// MronRoe:    scale * (W gamma_1^T + Gamma_2)
Matrix milstein_tail_term(const StandardizedIncrement& w_std, double scale,
                          const Vector& gamma1);
Matrix wiktorsson_tail_term(const StandardizedIncrement& w_std, double scale,
                            const Matrix& gamma_lower);
Matrix mronroe_tail_term(const StandardizedIncrement& w_std, double scale,
                         const Vector& gamma1, const Matrix& gamma2_lower);

/// sqrt(2 psi_1(p+1)): the rest-term standard deviation shared by the three
/// tail-approximating algorithms.
double tail_scale(std::int64_t p);

} // namespace levyarea
