#pragma once

#include "levyarea/types.hpp"

namespace levyarea {

/// Dense selection and permutation matrices of the column-stacking vec
/// calculus: P vec(A) = vec(A^T) and K selects the m(m-1)/2 entries below the
/// diagonal of a vectorised m x m matrix (column by column). These are only
/// ever materialised by the reference oracle; the production algorithms use
/// the eliminated forms.
struct VecOps {
    int m;
    int M;          // m(m-1)/2
    Matrix K;       // M x m^2
    Matrix P;       // m^2 x m^2
};

/// Builds K and P from the canonical-basis formulas. Guarded at m <= 16: the
/// dense operators cost O(m^4) memory and nothing in production needs them
/// beyond oracle dimensions.
VecOps make_vec_ops(int m);

/// Position of strictly-lower entry (i, j), i > j (0-based), in the
/// column-by-column lower-triangle ordering used by K and Gamma reshaping.
inline int strict_lower_index(int i, int j, int m) {
    return j * m + i - (j + 1) * (j + 2) / 2;
}

/// M-vector of the strictly lower entries of a (column-by-column order);
/// equals K vec(a).
Vector strict_lower_vec(const Matrix& a);

/// Strictly lower triangular m x m matrix holding v; equals mat(K^T v).
Matrix strict_lower_unvec(const Vector& v, int m);

/// For symmetric G, the M x M matrix (1/2) K (I - P)(G kron I)(I - P) K^T,
/// assembled entrywise:
///   [(i,j),(k,l)] = (d_ik G_jl - d_il G_jk - d_jk G_il + d_jl G_ik) / 2.
/// This is the common shape of every tail covariance in the oracle.
Matrix skew_projected_covariance(const Matrix& g);

} // namespace levyarea
