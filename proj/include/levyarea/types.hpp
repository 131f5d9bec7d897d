#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "levyarea/gaussian_source.hpp"

namespace levyarea {

/// The four Levy-area generators.
enum class AlgorithmId { Fourier, Milstein, Wiktorsson, MronRoe };

/// Error criteria: max of entrywise L2(Omega) norms, or L2(Omega) norm of the
/// Frobenius norm.
enum class ErrorNorm { MaxL2, FrobeniusL2 };

std::string_view to_string(AlgorithmId alg);
std::string_view to_string(ErrorNorm norm);
std::optional<AlgorithmId> parse_algorithm(std::string_view name);
std::optional<ErrorNorm> parse_norm(std::string_view name);

inline constexpr AlgorithmId kAllAlgorithms[] = {
    AlgorithmId::Fourier, AlgorithmId::Milstein,
    AlgorithmId::Wiktorsson, AlgorithmId::MronRoe};

/// Multiplicative factor converting an error bound in `from` to the
/// corresponding bound in `to`, valid for skew-symmetric random matrices with
/// identically distributed off-diagonal entries:
///   ||A||_{L2,F} = sqrt(m^2 - m) * ||A||_{max,L2}.
/// Throws std::domain_error for m = 1 with FrobeniusL2 -> MaxL2 (the factor
/// would divide by zero; a 1x1 skew matrix carries no information).
double norm_factor(int m, ErrorNorm from, ErrorNorm to);

class StandardizedIncrement;

/// Increment W_h of an m-dimensional Wiener process over a step h > 0.
class WienerIncrement {
public:
    WienerIncrement(Vector values, double step);

    const Vector& values() const { return values_; }
    double step() const { return step_; }
    int dim() const { return static_cast<int>(values_.size()); }

    StandardizedIncrement standardized() const;

private:
    Vector values_;
    double step_;
};

/// W_h / sqrt(h): the dimensionless increment every Levy-area algorithm
/// consumes. Only obtainable by standardizing a WienerIncrement.
class StandardizedIncrement {
public:
    explicit StandardizedIncrement(const WienerIncrement& w);

    const Vector& values() const { return values_; }
    int dim() const { return static_cast<int>(values_.size()); }

private:
    Vector values_;
};

/// Skew-symmetric m x m Levy-area matrix. Construction enforces exact
/// skew-symmetry (entries == -entries^T bitwise) and a zero diagonal.
class LevyArea {
public:
    explicit LevyArea(Matrix entries);

    /// A = (S - S^T) / (2 pi); skew-symmetric by construction.
    static LevyArea from_series(const Matrix& series);

    const Matrix& matrix() const { return entries_; }
    int dim() const { return static_cast<int>(entries_.rows()); }

private:
    struct Unchecked {};
    LevyArea(Matrix entries, Unchecked) : entries_(std::move(entries)) {}

    Matrix entries_;
};

/// The full m x m matrix of twofold iterated integrals I(h); the symmetric
/// part is determined by the increment, the skew part is a Levy area.
class IteratedIntegrals {
public:
    explicit IteratedIntegrals(Matrix entries) : entries_(std::move(entries)) {}

    const Matrix& matrix() const { return entries_; }
    int dim() const { return static_cast<int>(entries_.rows()); }

private:
    Matrix entries_;
};

} // namespace levyarea
