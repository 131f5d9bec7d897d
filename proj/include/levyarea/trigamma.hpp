#pragma once

#include <cstdint>

namespace levyarea {

/// Tail value psi_1(p+1) = sum_{r > p} 1/r^2 of the Basel series.
///
/// This is the trigamma function at p+1; it is the exact variance factor of
/// every truncated-series rest term. Evaluated by upward recurrence into the
/// asymptotic Bernoulli expansion, accurate to a few ulps for all p >= 0
/// (relative error well below 1e-12 over the whole contract range p <= 1e8).
double trigamma_tail(std::uint64_t p);

} // namespace levyarea
