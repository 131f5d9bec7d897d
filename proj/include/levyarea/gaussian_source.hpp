#pragma once

#include <cstdint>
#include <Eigen/Dense>

namespace levyarea {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Counting source of i.i.d. standard normal variates.
///
/// The generator is fixed for reproducibility: a xoshiro256++ core seeded by
/// splitmix64 expansion of the 64-bit seed, with normals produced by the
/// Marsaglia polar transform. The same seed always yields the same sequence of
/// emitted normals, independent of how the sequence is chunked into matrix or
/// vector requests. `draw_count()` equals the total number of normals emitted.
///
/// Independent streams are derived via `derive(k)`, which reseeds with
///   seed_k = splitmix64_mix(seed + (k + 1) * 0x9E3779B97F4A7C15)
/// so concurrent tasks can each own a source of their own.
class GaussianSource {
public:
    explicit GaussianSource(std::uint64_t seed);

    GaussianSource(const GaussianSource&) = delete;
    GaussianSource& operator=(const GaussianSource&) = delete;
    GaussianSource(GaussianSource&&) = default;
    GaussianSource& operator=(GaussianSource&&) = default;

    /// Next N(0,1) variate; increments draw_count by one.
    double normal();

    /// rows x cols matrix of i.i.d. N(0,1) values, filled column by column.
    /// draw_count increases by exactly rows*cols.
    Matrix draw_matrix(Eigen::Index rows, Eigen::Index cols);

    /// Length-n vector of i.i.d. N(0,1) values; draw_count += n.
    Vector draw_vector(Eigen::Index n);

    /// m x m matrix whose strictly lower triangle holds m(m-1)/2 i.i.d. N(0,1)
    /// values (filled column by column); all other entries are exactly zero.
    /// Draws exactly m(m-1)/2 normals, never m^2.
    Matrix draw_strict_lower(Eigen::Index m);

    std::uint64_t draw_count() const { return draw_count_; }
    std::uint64_t seed() const { return seed_; }

    /// Independent stream k derived from this source's seed (see class docs).
    GaussianSource derive(std::uint64_t k) const;

    /// The seed `derive(k)` would use; exposed so external drivers can record it.
    static std::uint64_t derived_seed(std::uint64_t seed, std::uint64_t k);

private:
    double uniform01();
    std::uint64_t next_u64();

    std::uint64_t seed_;
    std::uint64_t state_[4];
    std::uint64_t draw_count_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace levyarea
