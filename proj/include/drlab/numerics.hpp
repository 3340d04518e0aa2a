#pragma once

#include <vector>

#include "drlab/matrix.hpp"

namespace drlab {

/// Relative rank tolerance used when callers do not pass one.
inline constexpr double kDefaultRankTol = 1e-10;

/// Pivots smaller than this times the row scale make `solve` fail.
inline constexpr double kPivotTol = 1e-12;

struct SymmetricEigen {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column i pairs with values[i]
};

/// Cyclic Jacobi on the symmetrized matrix ½(M + Mᵀ). No symmetry check.
SymmetricEigen jacobi_eigen(const Matrix& m);

/// Eigenvalues in ascending order. Throws Errc::NotSymmetric when
/// ‖M − Mᵀ‖ > 1e-10·‖M‖.
std::vector<double> symmetric_eigenvalues(const Matrix& m);

/// Largest singular value, computed as √λmax(MᵀM).
double spectral_norm(const Matrix& m);

/// Singular values of M (descending) via one-sided Jacobi.
std::vector<double> singular_values(const Matrix& m);

/// Solves M X = rhs with scaled partial pivoting.
/// Throws Errc::SingularMatrix when a pivot drops below kPivotTol times the
/// scale of its original row.
Matrix solve(const Matrix& m, const Matrix& rhs);

/// Orthonormal basis (as columns) of ker M. A right singular vector is kept
/// when its singular value is at most tol·‖M‖.
Matrix kernel_basis(const Matrix& m, double tol = kDefaultRankTol);

/// As above, but singular values are compared against tol·reference_norm, so
/// a matrix that is zero up to rounding has a full kernel.
Matrix kernel_basis(const Matrix& m, double tol, double reference_norm);

/// Orthonormal basis of the column space of V by modified Gram-Schmidt with
/// one reorthogonalization pass. Columns whose residual falls to tol times the
/// largest input column norm are dropped.
Matrix orthonormalize(const Matrix& v, double tol = kDefaultRankTol);

/// As above, but residuals are compared against tol·reference_norm.
Matrix orthonormalize(const Matrix& v, double tol, double reference_norm);

/// Orthogonal projector V Vᵀ for a matrix with orthonormal columns.
Matrix projector(const Matrix& orthonormal_basis);

}  // namespace drlab
