#pragma once

#include <cstdint>
#include <functional>

#include "levyarea/types.hpp"

namespace levyarea {

/// Blocking controls for the truncated-series kernel.
///
/// block_size = 0 picks the default min(p, ceil(memory_cap / (2m))): one big
/// matrix product when it fits, partitioned otherwise. memory_cap limits the
/// scratch (alpha and beta blocks) to that many scalars.
struct SeriesKernelConfig {
    std::int64_t block_size = 0;
    std::int64_t memory_cap = std::int64_t{1} << 26;
};

/// Fills the m x n coefficient blocks for Fourier modes
/// first_mode .. first_mode + n - 1 (1-based). The default provider draws
/// alpha then beta from a GaussianSource; tests and the coupled reference
/// substitute stored coefficients here.
using CoefficientProvider =
    std::function<void(Eigen::Ref<Matrix> alpha, Eigen::Ref<Matrix> beta,
                       std::int64_t first_mode)>;

CoefficientProvider drawing_provider(GaussianSource& src);

/// S^(p) = sum_{r=1..p} (1/r) alpha_r (beta_r - sqrt(2) W)^T for h = 1,
/// evaluated as ceil(p/n) dense matrix products over coefficient blocks.
/// Throws std::runtime_error if even a single-column block exceeds memory_cap.
Matrix truncated_series_S(const StandardizedIncrement& w_std, std::int64_t p,
                          const SeriesKernelConfig& cfg,
                          const CoefficientProvider& provider);

/// Same, drawing 2pm normals from `src` (alpha block then beta block, in
/// ascending mode order).
Matrix truncated_series_S(const StandardizedIncrement& w_std, std::int64_t p,
                          const SeriesKernelConfig& cfg, GaussianSource& src);

/// Resolved block size for a given (p, m) under cfg.
std::int64_t effective_block_size(std::int64_t p, int m, const SeriesKernelConfig& cfg);

} // namespace levyarea
