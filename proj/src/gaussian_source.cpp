#include "levyarea/gaussian_source.hpp"

#include <cmath>
#include <stdexcept>

namespace levyarea {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t splitmix64_mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

} // namespace

GaussianSource::GaussianSource(std::uint64_t seed) : seed_(seed) {
    // splitmix64 state expansion, per the xoshiro authors' recommendation
    std::uint64_t s = seed;
    for (auto& word : state_) {
        s += kGolden;
        word = splitmix64_mix(s);
    }
}

std::uint64_t GaussianSource::next_u64() {
    // xoshiro256++
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double GaussianSource::uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double GaussianSource::normal() {
    ++draw_count_;
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform01() - 1.0;
        v = 2.0 * uniform01() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
}

Matrix GaussianSource::draw_matrix(Eigen::Index rows, Eigen::Index cols) {
    if (rows < 0 || cols < 0) {
        throw std::invalid_argument("draw_matrix: negative shape");
    }
    Matrix out(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c) {
        for (Eigen::Index r = 0; r < rows; ++r) {
            out(r, c) = normal();
        }
    }
    return out;
}

Vector GaussianSource::draw_vector(Eigen::Index n) {
    if (n < 0) {
        throw std::invalid_argument("draw_vector: negative length");
    }
    Vector out(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        out(i) = normal();
    }
    return out;
}

Matrix GaussianSource::draw_strict_lower(Eigen::Index m) {
    if (m < 1) {
        throw std::invalid_argument("draw_strict_lower: m must be >= 1");
    }
    Matrix out = Matrix::Zero(m, m);
    for (Eigen::Index j = 0; j < m; ++j) {
        for (Eigen::Index i = j + 1; i < m; ++i) {
            out(i, j) = normal();
        }
    }
    return out;
}

std::uint64_t GaussianSource::derived_seed(std::uint64_t seed, std::uint64_t k) {
    return splitmix64_mix(seed + (k + 1) * kGolden);
}

GaussianSource GaussianSource::derive(std::uint64_t k) const {
    return GaussianSource(derived_seed(seed_, k));
}

} // namespace levyarea
