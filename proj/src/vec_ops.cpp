#include "levyarea/vec_ops.hpp"

#include <stdexcept>

namespace levyarea {

VecOps make_vec_ops(int m) {
    if (m < 1 || m > 16) {
        throw std::invalid_argument("make_vec_ops: m must be in [1, 16] (dense m^4 guard)");
    }
    const int mm = m * m;
    const int M = m * (m - 1) / 2;
    VecOps ops{m, M, Matrix::Zero(M, mm), Matrix::Zero(mm, mm)};
    // P = sum_{i,j} e_i e_j^T kron e_j e_i^T, i.e. P[vec index of (i,j)] -> (j,i)
    for (int j = 0; j < m; ++j) {
        for (int i = 0; i < m; ++i) {
            ops.P(j * m + i, i * m + j) = 1.0;
        }
    }
    for (int j = 0; j < m; ++j) {
        for (int i = j + 1; i < m; ++i) {
            ops.K(strict_lower_index(i, j, m), j * m + i) = 1.0;
        }
    }
    return ops;
}

Vector strict_lower_vec(const Matrix& a) {
    const int m = static_cast<int>(a.rows());
    Vector v(m * (m - 1) / 2);
    int k = 0;
    for (int j = 0; j < m; ++j) {
        for (int i = j + 1; i < m; ++i) {
            v(k++) = a(i, j);
        }
    }
    return v;
}

Matrix strict_lower_unvec(const Vector& v, int m) {
    if (v.size() != static_cast<Eigen::Index>(m) * (m - 1) / 2) {
        throw std::invalid_argument("strict_lower_unvec: length must be m(m-1)/2");
    }
    Matrix a = Matrix::Zero(m, m);
    int k = 0;
    for (int j = 0; j < m; ++j) {
        for (int i = j + 1; i < m; ++i) {
            a(i, j) = v(k++);
        }
    }
    return a;
}

Matrix skew_projected_covariance(const Matrix& g) {
    const int m = static_cast<int>(g.rows());
    const int M = m * (m - 1) / 2;
    Matrix sigma(M, M);
    int row = 0;
    for (int j = 0; j < m; ++j) {
        for (int i = j + 1; i < m; ++i, ++row) {
            int col = 0;
            for (int l = 0; l < m; ++l) {
                for (int k = l + 1; k < m; ++k, ++col) {
                    double v = 0.0;
                    if (i == k) v += g(j, l);
                    if (i == l) v -= g(j, k);
                    if (j == k) v -= g(i, l);
                    if (j == l) v += g(i, k);
                    sigma(row, col) = 0.5 * v;
                }
            }
        }
    }
    return sigma;
}

} // namespace levyarea
