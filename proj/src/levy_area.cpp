#include "levyarea/levy_area.hpp"

#include <cmath>
#include <stdexcept>

#include "levyarea/trigamma.hpp"

namespace levyarea {

double tail_scale(std::int64_t p) {
    return std::sqrt(2.0 * trigamma_tail(static_cast<std::uint64_t>(p)));
}

Matrix milstein_tail_term(const StandardizedIncrement& w_std, double scale,
                          const Vector& gamma1) {
    return scale * w_std.values() * gamma1.transpose();
}

Matrix wiktorsson_tail_term(const StandardizedIncrement& w_std, double scale,
                            const Matrix& gamma_lower) {
    const Vector& w = w_std.values();
    const double denom = 1.0 + std::sqrt(1.0 + w.squaredNorm());
    // ((Gamma - Gamma^T) W) W^T keeps the cost at O(m^2)
    const Vector gw = gamma_lower * w - gamma_lower.transpose() * w;
    Matrix term = (scale / denom) * gw * w.transpose();
    term.noalias() += scale * gamma_lower;
    return term;
}

Matrix mronroe_tail_term(const StandardizedIncrement& w_std, double scale,
                         const Vector& gamma1, const Matrix& gamma2_lower) {
    Matrix term = scale * w_std.values() * gamma1.transpose();
    term.noalias() += scale * gamma2_lower;
    return term;
}

LevyArea fourier_levy_area(const StandardizedIncrement& w_std, std::int64_t p,
                           const SeriesKernelConfig& cfg, GaussianSource& src) {
    return LevyArea::from_series(truncated_series_S(w_std, p, cfg, src));
}

LevyArea milstein_levy_area(const StandardizedIncrement& w_std, std::int64_t p,
                            const SeriesKernelConfig& cfg, GaussianSource& src) {
    Matrix s = truncated_series_S(w_std, p, cfg, src);
    const Vector gamma1 = src.draw_vector(w_std.dim());
    s += milstein_tail_term(w_std, tail_scale(p), gamma1);
    return LevyArea::from_series(s);
}

LevyArea wiktorsson_levy_area(const StandardizedIncrement& w_std, std::int64_t p,
                              const SeriesKernelConfig& cfg, GaussianSource& src) {
    Matrix s = truncated_series_S(w_std, p, cfg, src);
    const Matrix gamma = src.draw_strict_lower(w_std.dim());
    s += wiktorsson_tail_term(w_std, tail_scale(p), gamma);
    return LevyArea::from_series(s);
}

LevyArea mronroe_levy_area(const StandardizedIncrement& w_std, std::int64_t p,
                           const SeriesKernelConfig& cfg, GaussianSource& src) {
    Matrix s = truncated_series_S(w_std, p, cfg, src);
    const Vector gamma1 = src.draw_vector(w_std.dim());
    const Matrix gamma2 = src.draw_strict_lower(w_std.dim());
    s += mronroe_tail_term(w_std, tail_scale(p), gamma1, gamma2);
    return LevyArea::from_series(s);
}

LevyArea levy_area(AlgorithmId alg, const StandardizedIncrement& w_std,
                   std::int64_t p, const SeriesKernelConfig& cfg, GaussianSource& src) {
    switch (alg) {
        case AlgorithmId::Fourier: return fourier_levy_area(w_std, p, cfg, src);
        case AlgorithmId::Milstein: return milstein_levy_area(w_std, p, cfg, src);
        case AlgorithmId::Wiktorsson: return wiktorsson_levy_area(w_std, p, cfg, src);
        case AlgorithmId::MronRoe: return mronroe_levy_area(w_std, p, cfg, src);
    }
    throw std::invalid_argument("levy_area: unknown algorithm");
}

} // namespace levyarea
