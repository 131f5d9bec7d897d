#include "levyarea/coupling_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace levyarea {

namespace {

constexpr double kInvTwoPi = 1.0 / (2.0 * std::numbers::pi);
constexpr double kEigFloorRel = 1e-12;

StandardizedIncrement as_standardized(const Vector& w_std) {
    return StandardizedIncrement(WienerIncrement(w_std, 1.0));
}

/// Compensated suffix sum of r^-2 over r = from .. to (inclusive).
double tail_square_sum(std::int64_t from, std::int64_t to) {
    double sum = 0.0, comp = 0.0;
    for (std::int64_t r = to; r >= from; --r) {
        const double term = 1.0 / (static_cast<double>(r) * static_cast<double>(r));
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

/// V diag(1/sqrt(max(lambda, floor))) V^T with floor = 1e-12 * lambda_max.
Matrix inverse_sqrt_psd(const Matrix& sigma) {
    if (sigma.rows() == 0) {
        return sigma;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(sigma);
    const double lambda_max = es.eigenvalues().maxCoeff();
    if (!(lambda_max > 0.0)) {
        throw std::runtime_error(
            "coupling oracle: tail covariance numerically singular beyond clamp tolerance");
    }
    const double floor = kEigFloorRel * lambda_max;
    Vector d = es.eigenvalues();
    for (Eigen::Index i = 0; i < d.size(); ++i) {
        d(i) = 1.0 / std::sqrt(std::max(d(i), floor));
    }
    return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().transpose();
}

struct TailMoments {
    double n;        // sum_{r=p+1}^{p_ref} r^-2
    Vector g1;       // sum (1/r) alpha_r
    Matrix t;        // sum (1/r) alpha_r (beta_r - sqrt(2) W)^T
    Matrix t2;       // sum (1/r) alpha_r beta_r^T
    Matrix b_bar;    // (1/n) sum r^-2 (beta_r - sqrt(2) W)(beta_r - sqrt(2) W)^T
    Matrix c_bar;    // (1/n) sum r^-2 alpha_r alpha_r^T
};

TailMoments tail_moments(const StoredPath& path, std::int64_t p) {
    const std::int64_t p_ref = path.p_ref();
    if (p < 1 || p >= p_ref) {
        throw std::invalid_argument("coupling oracle: need 1 <= p < p_ref (empty tail)");
    }
    const int m = path.dim();
    TailMoments tm;
    tm.n = tail_square_sum(p + 1, p_ref);
    tm.g1 = Vector::Zero(m);
    tm.t = Matrix::Zero(m, m);
    tm.t2 = Matrix::Zero(m, m);
    tm.b_bar = Matrix::Zero(m, m);
    tm.c_bar = Matrix::Zero(m, m);
    const Vector sqrt2_w = std::sqrt(2.0) * path.w_std();
    for (std::int64_t col = p; col < p_ref; ++col) {
        const double inv_r = 1.0 / static_cast<double>(col + 1);
        const Vector a = path.alpha().col(col);
        const Vector bt = path.beta().col(col) - sqrt2_w;
        tm.g1.noalias() += inv_r * a;
        tm.t.noalias() += inv_r * a * bt.transpose();
        tm.t2.noalias() += inv_r * a * path.beta().col(col).transpose();
        tm.b_bar.noalias() += (inv_r * inv_r) * bt * bt.transpose();
        tm.c_bar.noalias() += (inv_r * inv_r) * a * a.transpose();
    }
    tm.b_bar /= tm.n;
    tm.c_bar /= tm.n;
    return tm;
}

} // namespace

StoredPath::StoredPath(Vector w_std, Matrix alpha, Matrix beta)
    : w_std_(std::move(w_std)), alpha_(std::move(alpha)), beta_(std::move(beta)) {
    if (alpha_.rows() != w_std_.size() || beta_.rows() != w_std_.size() ||
        alpha_.cols() != beta_.cols() || alpha_.cols() < 1) {
        throw std::invalid_argument("StoredPath: inconsistent shapes");
    }
}

StoredPath StoredPath::simulate(int m, std::int64_t p_ref, GaussianSource& src) {
    if (m < 1 || p_ref < 1) {
        throw std::invalid_argument("StoredPath::simulate: m and p_ref must be >= 1");
    }
    Vector w = src.draw_vector(m);
    Matrix alpha = src.draw_matrix(m, p_ref);
    Matrix beta = src.draw_matrix(m, p_ref);
    return StoredPath(std::move(w), std::move(alpha), std::move(beta));
}

Matrix sqrt_sigma_inf(const StandardizedIncrement& w_std) {
    const int m = w_std.dim();
    const int M = m * (m - 1) / 2;
    if (M == 0) {
        return Matrix(0, 0);
    }
    const Vector& w = w_std.values();
    Matrix sigma = 2.0 * skew_projected_covariance(w * w.transpose());
    sigma.diagonal().array() += 1.0;
    const double c = std::sqrt(1.0 + w.squaredNorm());
    Matrix root = sigma;
    root.diagonal().array() += c;
    root /= (1.0 + c);
    return root;
}

std::pair<TailCovariance, TailCovariance>
tail_covariances(const StoredPath& path, std::int64_t p) {
    if (path.dim() == 1) {
        return {TailCovariance{Matrix(0, 0)}, TailCovariance{Matrix(0, 0)}};
    }
    const TailMoments tm = tail_moments(path, p);
    return {TailCovariance{skew_projected_covariance(tm.b_bar)},
            TailCovariance{skew_projected_covariance(tm.c_bar)}};
}

ExtractedGammas extract_gammas(const StoredPath& path, std::int64_t p) {
    const int m = path.dim();
    const TailMoments tm = tail_moments(path, p);
    ExtractedGammas out;
    out.gamma1 = tm.g1 / std::sqrt(tm.n);
    if (m == 1) {
        out.gamma = Vector(0);
        out.gamma2 = Vector(0);
        return out;
    }
    const double scale = std::sqrt(2.0 * tm.n);
    const Matrix inv_root = inverse_sqrt_psd(skew_projected_covariance(tm.b_bar));
    const Matrix inv_root2 = inverse_sqrt_psd(skew_projected_covariance(tm.c_bar));
    out.gamma = inv_root * strict_lower_vec(tm.t - tm.t.transpose()) / scale;
    out.gamma2 = inv_root2 * strict_lower_vec(tm.t2 - tm.t2.transpose()) / scale;
    return out;
}

IteratedIntegrals reference_integrals(const StoredPath& path) {
    const auto provider = [&path](Eigen::Ref<Matrix> alpha, Eigen::Ref<Matrix> beta,
                                  std::int64_t first_mode) {
        alpha = path.alpha().middleCols(first_mode - 1, alpha.cols());
        beta = path.beta().middleCols(first_mode - 1, beta.cols());
    };
    const StandardizedIncrement w_std = as_standardized(path.w_std());
    const Matrix s = truncated_series_S(w_std, path.p_ref(), SeriesKernelConfig{}, provider);
    return assemble(WienerIncrement(path.w_std(), 1.0), LevyArea::from_series(s));
}

namespace {

struct CellAccum {
    Matrix sum_sq;   // per-entry sum of Delta^2, strictly lower triangle
    Matrix sum_qd;   // per-entry sum of Delta^4
    double sum_f2 = 0.0;
    double sum_f4 = 0.0;
};

bool needs_gamma1(AlgorithmId alg) {
    return alg == AlgorithmId::Milstein || alg == AlgorithmId::MronRoe;
}

} // namespace

std::vector<StudyRow> convergence_study(const StudySpec& spec) {
    if (spec.m < 1) throw std::invalid_argument("convergence_study: m must be >= 1");
    if (spec.reps < 2) throw std::invalid_argument("convergence_study: reps must be >= 2");
    if (spec.p_ref < 1) throw std::invalid_argument("convergence_study: p_ref must be >= 1");
    if (spec.p_grid.empty()) throw std::invalid_argument("convergence_study: empty p grid");
    if (spec.algorithms.empty()) throw std::invalid_argument("convergence_study: no algorithms");
    if (!(spec.h > 0.0)) throw std::invalid_argument("convergence_study: h must be positive");

    std::vector<std::int64_t> grid = spec.p_grid;
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    if (grid.front() < 1 || grid.back() > spec.p_ref) {
        throw std::invalid_argument("convergence_study: p grid must lie within [1, p_ref]");
    }
    const bool tail_needed =
        std::any_of(spec.algorithms.begin(), spec.algorithms.end(),
                    [](AlgorithmId a) { return a != AlgorithmId::Fourier; });
    if (tail_needed && grid.back() == spec.p_ref) {
        throw std::invalid_argument(
            "convergence_study: p = p_ref leaves an empty tail for non-Fourier algorithms");
    }

    const int m = spec.m;
    const std::int64_t p_ref = spec.p_ref;
    const std::size_t n_p = grid.size();
    const std::size_t n_alg = spec.algorithms.size();

    // exact tail sums N_p = sum_{r=p+1}^{p_ref} r^-2 per grid point
    std::vector<double> tail_sums(n_p);
    {
        double sum = 0.0, comp = 0.0;
        std::size_t gi = n_p;
        while (gi > 0 && grid[gi - 1] == p_ref) {
            tail_sums[--gi] = 0.0;
        }
        for (std::int64_t r = p_ref; r >= 1 && gi > 0; --r) {
            const double term = 1.0 / (static_cast<double>(r) * static_cast<double>(r));
            const double y = term - comp;
            const double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
            while (gi > 0 && grid[gi - 1] == r - 1) {
                tail_sums[--gi] = sum;
            }
        }
    }

    std::vector<std::vector<CellAccum>> cells(n_alg, std::vector<CellAccum>(n_p));
    for (auto& row : cells) {
        for (auto& c : row) {
            c.sum_sq = Matrix::Zero(m, m);
            c.sum_qd = Matrix::Zero(m, m);
        }
    }

    // reusable per-rep buffers
    Matrix alpha_s(m, p_ref);       // alpha with column r scaled by 1/r
    Matrix beta(m, p_ref);
    Matrix beta_tilde_s(m, p_ref);  // (beta - sqrt(2) W) with column r scaled by 1/r
    std::vector<Matrix> t2_pre(n_p), b_pre(n_p), c_pre(n_p), s_pre(n_p);
    std::vector<Vector> g1_pre(n_p);
    Matrix delta(m, m);

    const bool any_wik = std::count(spec.algorithms.begin(), spec.algorithms.end(),
                                    AlgorithmId::Wiktorsson) > 0;
    const bool any_mr = std::count(spec.algorithms.begin(), spec.algorithms.end(),
                                   AlgorithmId::MronRoe) > 0;
    const bool any_g1 = std::any_of(spec.algorithms.begin(), spec.algorithms.end(),
                                    needs_gamma1);

    for (int rep = 0; rep < spec.reps; ++rep) {
        GaussianSource src(GaussianSource::derived_seed(spec.seed, static_cast<std::uint64_t>(rep)));
        Vector w(m);
        for (int i = 0; i < m; ++i) w(i) = src.normal();
        for (std::int64_t c = 0; c < p_ref; ++c) {
            for (int r = 0; r < m; ++r) alpha_s(r, c) = src.normal();
        }
        for (std::int64_t c = 0; c < p_ref; ++c) {
            for (int r = 0; r < m; ++r) beta(r, c) = src.normal();
        }
        const Vector sqrt2_w = std::sqrt(2.0) * w;
        for (std::int64_t c = 0; c < p_ref; ++c) {
            const double inv_r = 1.0 / static_cast<double>(c + 1);
            beta_tilde_s.col(c) = inv_r * (beta.col(c) - sqrt2_w);
            alpha_s.col(c) *= inv_r;
        }

        // prefix moments at the grid points, accumulated segment by segment
        Matrix t2_acc = Matrix::Zero(m, m);  // sum (1/r) alpha_r beta_r^T
        Matrix b_acc = Matrix::Zero(m, m);   // sum r^-2 beta~ beta~^T
        Matrix c_acc = Matrix::Zero(m, m);   // sum r^-2 alpha alpha^T
        Matrix s_acc = Matrix::Zero(m, m);   // sum (1/r) alpha_r beta~_r^T
        Vector g1_acc = Vector::Zero(m);
        std::int64_t done = 0;
        auto advance_to = [&](std::int64_t p) {
            const std::int64_t cols = p - done;
            if (cols > 0) {
                const auto a_seg = alpha_s.middleCols(done, cols);
                const auto b_seg = beta.middleCols(done, cols);
                const auto bt_seg = beta_tilde_s.middleCols(done, cols);
                t2_acc.noalias() += a_seg * b_seg.transpose();
                b_acc.noalias() += bt_seg * bt_seg.transpose();
                c_acc.noalias() += a_seg * a_seg.transpose();
                g1_acc.noalias() += a_seg.rowwise().sum();
                done = p;
            }
        };
        for (std::size_t gi = 0; gi < n_p; ++gi) {
            advance_to(grid[gi]);
            t2_pre[gi] = t2_acc;
            b_pre[gi] = b_acc;
            c_pre[gi] = c_acc;
            g1_pre[gi] = g1_acc;
            // S = sum (1/r) alpha (beta - sqrt(2) W)^T = T2 - sqrt(2) g1 W^T
            s_pre[gi] = t2_acc - std::sqrt(2.0) * g1_acc * w.transpose();
        }
        advance_to(p_ref);
        const Matrix s_ref = t2_acc - std::sqrt(2.0) * g1_acc * w.transpose();
        const Matrix t2_ref = t2_acc;
        const Matrix b_ref = b_acc;
        const Matrix c_ref = c_acc;
        const Vector g1_ref = g1_acc;
        const StandardizedIncrement w_std = as_standardized(w);

        for (std::size_t gi = 0; gi < n_p; ++gi) {
            const double n_tail = tail_sums[gi];
            const double scale = std::sqrt(2.0 * n_tail);
            Vector gamma1;
            Matrix gamma_low, gamma2_low;
            if (m > 1) {
                if (any_g1) {
                    gamma1 = (g1_ref - g1_pre[gi]) / std::sqrt(n_tail);
                }
                if (any_wik) {
                    const Matrix t_tail = s_ref - s_pre[gi];
                    const Matrix bbar = (b_ref - b_pre[gi]) / n_tail;
                    const Matrix inv_root = inverse_sqrt_psd(skew_projected_covariance(bbar));
                    const Vector gamma =
                        inv_root * strict_lower_vec(t_tail - t_tail.transpose()) / scale;
                    gamma_low = strict_lower_unvec(gamma, m);
                }
                if (any_mr) {
                    const Matrix t2_tail = t2_ref - t2_pre[gi];
                    const Matrix cbar = (c_ref - c_pre[gi]) / n_tail;
                    const Matrix inv_root2 = inverse_sqrt_psd(skew_projected_covariance(cbar));
                    const Vector gamma2 =
                        inv_root2 * strict_lower_vec(t2_tail - t2_tail.transpose()) / scale;
                    gamma2_low = strict_lower_unvec(gamma2, m);
                }
            }

            for (std::size_t ai = 0; ai < n_alg; ++ai) {
                const AlgorithmId alg = spec.algorithms[ai];
                Matrix s_coupled = s_pre[gi];
                if (m > 1) {
                    switch (alg) {
                        case AlgorithmId::Fourier:
                            break;
                        case AlgorithmId::Milstein:
                            s_coupled += milstein_tail_term(w_std, scale, gamma1);
                            break;
                        case AlgorithmId::Wiktorsson:
                            s_coupled += wiktorsson_tail_term(w_std, scale, gamma_low);
                            break;
                        case AlgorithmId::MronRoe:
                            s_coupled += mronroe_tail_term(w_std, scale, gamma1, gamma2_low);
                            break;
                    }
                }
                const Matrix d = s_ref - s_coupled;
                CellAccum& acc = cells[ai][gi];
                double frob2 = 0.0;
                for (int j = 0; j < m; ++j) {
                    for (int i = j + 1; i < m; ++i) {
                        const double e = (d(i, j) - d(j, i)) * kInvTwoPi;
                        const double e2 = e * e;
                        acc.sum_sq(i, j) += e2;
                        acc.sum_qd(i, j) += e2 * e2;
                        frob2 += 2.0 * e2;
                    }
                }
                acc.sum_f2 += frob2;
                acc.sum_f4 += frob2 * frob2;
            }
        }
    }

    const double n = static_cast<double>(spec.reps);
    std::vector<StudyRow> rows;
    rows.reserve(n_alg * n_p);
    for (std::size_t ai = 0; ai < n_alg; ++ai) {
        const AlgorithmId alg = spec.algorithms[ai];
        for (std::size_t gi = 0; gi < n_p; ++gi) {
            const CellAccum& acc = cells[ai][gi];
            double sum_x = 0.0, sum_x2 = 0.0;
            if (spec.norm == ErrorNorm::MaxL2) {
                if (m > 1) {
                    int bi = 1, bj = 0;
                    for (int j = 0; j < m; ++j) {
                        for (int i = j + 1; i < m; ++i) {
                            if (acc.sum_sq(i, j) > acc.sum_sq(bi, bj)) { bi = i; bj = j; }
                        }
                    }
                    sum_x = acc.sum_sq(bi, bj);
                    sum_x2 = acc.sum_qd(bi, bj);
                }
            } else {
                sum_x = acc.sum_f2;
                sum_x2 = acc.sum_f4;
            }
            const double mean_sq = sum_x / n;
            const double estimate = std::sqrt(mean_sq);
            double se = 0.0;
            if (estimate > 0.0 && spec.reps > 1) {
                const double var_x = std::max(0.0, (sum_x2 - sum_x * sum_x / n) / (n - 1.0));
                se = std::sqrt(var_x / n) / (2.0 * estimate);
            }
            rows.push_back(StudyRow{
                alg, m, spec.h, grid[gi], cost(alg, m, grid[gi]),
                estimate * spec.h, se * spec.h,
                error_bound(alg, m, spec.h, grid[gi], spec.norm),
                spec.reps, spec.seed});
        }
    }
    return rows;
}

McError mc_error(AlgorithmId alg, int m, std::int64_t p, std::int64_t p_ref,
                 int reps, ErrorNorm norm, std::uint64_t seed) {
    StudySpec spec;
    spec.m = m;
    spec.h = 1.0;
    spec.p_grid = {p};
    spec.p_ref = p_ref;
    spec.reps = reps;
    spec.norm = norm;
    spec.seed = seed;
    spec.algorithms = {alg};
    const std::vector<StudyRow> rows = convergence_study(spec);
    return McError{rows.front().error_est, rows.front().error_se};
}

} // namespace levyarea
