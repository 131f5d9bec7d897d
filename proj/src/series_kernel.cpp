#include "levyarea/series_kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace levyarea {

CoefficientProvider drawing_provider(GaussianSource& src) {
    return [&src](Eigen::Ref<Matrix> alpha, Eigen::Ref<Matrix> beta, std::int64_t) {
        const Eigen::Index m = alpha.rows();
        const Eigen::Index n = alpha.cols();
        alpha = src.draw_matrix(m, n);
        beta = src.draw_matrix(m, n);
    };
}

std::int64_t effective_block_size(std::int64_t p, int m, const SeriesKernelConfig& cfg) {
    if (cfg.memory_cap < 2 * static_cast<std::int64_t>(m)) {
        throw std::runtime_error(
            "series kernel: scratch for a single mode exceeds memory_cap");
    }
    const std::int64_t cap_cols = cfg.memory_cap / (2 * static_cast<std::int64_t>(m));
    std::int64_t n = cfg.block_size > 0 ? cfg.block_size : p;
    if (n > p) n = p;
    if (n > cap_cols) n = cap_cols;
    return n;
}

Matrix truncated_series_S(const StandardizedIncrement& w_std, std::int64_t p,
                          const SeriesKernelConfig& cfg,
                          const CoefficientProvider& provider) {
    if (p < 1) {
        throw std::invalid_argument("truncated_series_S: p must be >= 1");
    }
    const int m = w_std.dim();
    const std::int64_t n = effective_block_size(p, m, cfg);
    const Vector sqrt2_w = std::sqrt(2.0) * w_std.values();

    Matrix alpha(m, n);
    Matrix beta(m, n);
    Matrix s = Matrix::Zero(m, m);

    for (std::int64_t first = 1; first <= p; first += n) {
        const std::int64_t cols = std::min(n, p - first + 1);
        auto alpha_block = alpha.leftCols(cols);
        auto beta_block = beta.leftCols(cols);
        provider(alpha_block, beta_block, first);
        for (std::int64_t c = 0; c < cols; ++c) {
            const double r = static_cast<double>(first + c);
            beta_block.col(c) = (beta_block.col(c) - sqrt2_w) / r;
        }
        s.noalias() += alpha_block * beta_block.transpose();
    }
    return s;
}

Matrix truncated_series_S(const StandardizedIncrement& w_std, std::int64_t p,
                          const SeriesKernelConfig& cfg, GaussianSource& src) {
    return truncated_series_S(w_std, p, cfg, drawing_provider(src));
}

} // namespace levyarea
