#include "levyarea/trigamma.hpp"

namespace levyarea {

double trigamma_tail(std::uint64_t p) {
    // psi_1(z) for z = p+1 >= 1. Shift z upward until the asymptotic series
    // converges fast, accumulating the skipped 1/z^2 terms exactly.
    double z = static_cast<double>(p) + 1.0;
    double acc = 0.0;
    while (z < 30.0) {
        acc += 1.0 / (z * z);
        z += 1.0;
    }
    // psi_1(z) ~ 1/z + 1/(2z^2) + sum_k B_{2k} / z^{2k+1}
    const double zi = 1.0 / z;
    const double zi2 = zi * zi;
    const double series =
        1.0 / 6.0
        - zi2 * (1.0 / 30.0
        - zi2 * (1.0 / 42.0
        - zi2 * (1.0 / 30.0
        - zi2 * (5.0 / 66.0
        - zi2 * (691.0 / 2730.0
        - zi2 * (7.0 / 6.0))))));
    return acc + zi + 0.5 * zi2 + zi * zi2 * series;
}

} // namespace levyarea
