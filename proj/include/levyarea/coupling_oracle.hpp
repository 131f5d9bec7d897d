#pragma once

#include <utility>
#include <vector>

#include "levyarea/iterated_integrals.hpp"
#include "levyarea/vec_ops.hpp"

namespace levyarea {

/// A stored realization of the h = 1 increment together with all standardized
/// Fourier coefficients up to p_ref. Every coupled approximation and the
/// high-accuracy reference are deterministic functions of one StoredPath, so
/// pathwise L2 distances between them are meaningful.
class StoredPath {
public:
    StoredPath(Vector w_std, Matrix alpha, Matrix beta);

    /// Draws a fresh path: W (m values), then alpha, then beta (column by
    /// column). Consumes exactly m + 2 m p_ref normals.
    static StoredPath simulate(int m, std::int64_t p_ref, GaussianSource& src);

    const Vector& w_std() const { return w_std_; }
    const Matrix& alpha() const { return alpha_; }
    const Matrix& beta() const { return beta_; }
    int dim() const { return static_cast<int>(w_std_.size()); }
    std::int64_t p_ref() const { return alpha_.cols(); }

private:
    Vector w_std_;
    Matrix alpha_;
    Matrix beta_;
};

/// Closed-form square root of Sigma_inf = I_M + K(I-P)(W W^T kron I)(I-P)K^T
/// (h = 1):  (Sigma_inf + sqrt(1+|W|^2) I) / (1 + sqrt(1+|W|^2)).
Matrix sqrt_sigma_inf(const StandardizedIncrement& w_std);

/// Tail covariance of the whitened rest vector; symmetric PSD up to rounding.
struct TailCovariance {
    Matrix matrix;
};

/// Finite-tail versions of the two conditional covariance matrices over modes
/// r = p+1 .. p_ref, normalized by the exact tail sum sum r^-2 (in place of
/// psi_1(p+1)) so that the extracted vectors are exactly whitened:
///   Sigma^(p)   from (1/N) sum r^-2 (beta_r - sqrt(2) W)(beta_r - sqrt(2) W)^T
///   Sigma_2^(p) from (1/N) sum r^-2 alpha_r alpha_r^T
/// both mapped through (1/2) K (I-P)(. kron I)(I-P) K^T.
std::pair<TailCovariance, TailCovariance>
tail_covariances(const StoredPath& path, std::int64_t p);

struct ExtractedGammas {
    Vector gamma1;  // length m
    Vector gamma;   // length M, whitened with (Sigma^(p))^{-1/2}
    Vector gamma2;  // length M, whitened with (Sigma_2^(p))^{-1/2}
};

/// Recovers from the stored tail the standard Gaussian vectors that, fed back
/// into the tail terms at truncation p (with the finite-tail scale), produce
/// approximations coupled to the reference realization.
ExtractedGammas extract_gammas(const StoredPath& path, std::int64_t p);

/// Fourier assembly at p = p_ref with h = 1 from the stored coefficients;
/// deterministic, performs no draws.
IteratedIntegrals reference_integrals(const StoredPath& path);

/// One cell of a coupled Monte-Carlo error study.
struct StudyRow {
    AlgorithmId alg;
    int m;
    double h;
    std::int64_t p;
    std::uint64_t cost;      // draws the approximation would consume
    double error_est;
    double error_se;
    double bound;            // closed-form error bound at (alg, m, h, p)
    int reps;
    std::uint64_t seed;
};

struct StudySpec {
    int m;
    double h = 1.0;
    std::vector<std::int64_t> p_grid;
    std::int64_t p_ref;
    int reps;
    ErrorNorm norm = ErrorNorm::MaxL2;
    std::uint64_t seed;
    std::vector<AlgorithmId> algorithms{std::begin(kAllAlgorithms),
                                        std::end(kAllAlgorithms)};
};

/// Runs the coupled study: reps paths (stream k derived from the seed), and
/// for every (algorithm, p) cell the pathwise difference to the shared
/// reference. Estimates are max,L2 or L2,F sample norms of the difference;
/// standard errors come from the delta method on the per-rep squared norms.
/// Rows appear in algorithm-major, then ascending-p order.
std::vector<StudyRow> convergence_study(const StudySpec& spec);

struct McError {
    double estimate;
    double std_error;
};

/// Coupled Monte-Carlo error of one algorithm at truncation p against the
/// p_ref reference (h = 1). reps >= 2; p <= p_ref, with p = p_ref admitted
/// only for the Fourier algorithm (empty tail).
McError mc_error(AlgorithmId alg, int m, std::int64_t p, std::int64_t p_ref,
                 int reps, ErrorNorm norm, std::uint64_t seed);

} // namespace levyarea
