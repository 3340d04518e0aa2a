#include "drlab/linrel.hpp"

#include <cmath>
#include <string>

#include "drlab/error.hpp"

namespace drlab {

std::string_view to_string(RelationKind kind) noexcept {
  switch (kind) {
    case RelationKind::Matrix: return "matrix";
    case RelationKind::NormalCone: return "normal_cone";
    case RelationKind::Resolvent: return "resolvent";
    case RelationKind::Unspecified: break;
  }
  return "unspecified";
}

std::optional<RelationKind> relation_kind_from_string(std::string_view s) noexcept {
  if (s == "matrix") return RelationKind::Matrix;
  if (s == "normal_cone") return RelationKind::NormalCone;
  if (s == "resolvent") return RelationKind::Resolvent;
  if (s == "unspecified") return RelationKind::Unspecified;
  return std::nullopt;
}

LinearRelation::LinearRelation(std::size_t n, const Matrix& graph_spanning, RelationKind kind)
    : n_(n), kind_(kind) {
  if (graph_spanning.rows() != 2 * n) {
    throw Error(Errc::DimensionMismatch, "graph basis needs 2n = " + std::to_string(2 * n) +
                                             " rows, got " + std::to_string(graph_spanning.rows()));
  }
  basis_ = orthonormalize(graph_spanning);
}

LinearRelation::LinearRelation(Trusted, std::size_t n, Matrix basis, RelationKind kind)
    : n_(n), basis_(std::move(basis)), kind_(kind) {}

LinearRelation LinearRelation::from_basis(std::size_t n, Matrix basis, RelationKind kind) {
  if (basis.rows() != 2 * n) return LinearRelation(n, basis, kind);  // throws
  const Matrix gram = basis.transpose() * basis;
  if (basis.cols() > 0 && max_abs_diff(gram, Matrix::identity(basis.cols())) > 1e-12) {
    return LinearRelation(n, basis, kind);
  }
  return LinearRelation(Trusted{}, n, std::move(basis), kind);
}

ResolventMatrix::ResolventMatrix(Matrix j, double tol) : j_(std::move(j)) {
  if (!j_.is_square()) throw Error(Errc::DimensionMismatch, "resolvent matrix must be square");
  if (!is_firmly_nonexpansive(j_, tol)) {
    const double r = spectral_norm(2.0 * j_ - Matrix::identity(j_.rows()));
    throw Error(Errc::NotFirmlyNonexpansive, "‖2J − I‖ = " + std::to_string(r));
  }
}

ResolventMatrix ResolventMatrix::unchecked(Matrix j) { return ResolventMatrix(Unchecked{}, std::move(j)); }

bool is_firmly_nonexpansive(const Matrix& j, double tol) {
  if (!j.is_square()) return false;
  return spectral_norm(2.0 * j - Matrix::identity(j.rows())) <= 1.0 + tol;
}

LinearRelation from_matrix(const Matrix& m) {
  if (!m.is_square()) throw Error(Errc::DimensionMismatch, "from_matrix needs a square matrix");
  return LinearRelation(m.rows(), vstack(Matrix::identity(m.rows()), m), RelationKind::Matrix);
}

LinearRelation normal_cone_of_subspace(const Matrix& v_basis, double rank_tol) {
  const std::size_t n = v_basis.rows();
  const Matrix v = orthonormalize(v_basis, rank_tol);
  const Matrix v_perp = kernel_basis(v.transpose(), rank_tol);
  const Matrix graph = vstack(hstack(v, Matrix(n, v_perp.cols())), hstack(Matrix(n, v.cols()), v_perp));
  return LinearRelation(n, graph, RelationKind::NormalCone);
}

LinearRelation from_resolvent(const ResolventMatrix& j) {
  const std::size_t n = j.n();
  const Matrix& jm = j.matrix();
  return LinearRelation(n, vstack(jm, Matrix::identity(n) - jm), RelationKind::Resolvent);
}

ResolventMatrix resolvent_of(const LinearRelation& a, double tol) {
  if (a.graph_dim() != a.n()) {
    throw Error(Errc::NotMaximallyMonotone, "graph dimension " + std::to_string(a.graph_dim()) +
                                                " != n = " + std::to_string(a.n()));
  }
  if (!is_monotone(a, tol)) throw Error(Errc::NotMaximallyMonotone, "relation is not monotone");
  const Matrix u = a.points();
  const Matrix w = a.values();
  try {
    // J (U + W) = U, solved transposed.
    Matrix jt = solve((u + w).transpose(), u.transpose());
    return ResolventMatrix::unchecked(jt.transpose());
  } catch (const Error& e) {
    if (e.code() != Errc::SingularMatrix) throw;
    throw Error(Errc::NotMaximallyMonotone, "U + W is singular");
  }
}

bool is_monotone(const LinearRelation& a, double tol) {
  if (a.graph_dim() == 0) return true;
  const Matrix uw = a.points().transpose() * a.values();
  return jacobi_eigen(uw).values.front() >= -tol;
}

bool is_maximally_monotone(const LinearRelation& a, double tol) {
  return a.graph_dim() == a.n() && is_monotone(a, tol);
}

bool is_symmetric(const LinearRelation& a, double tol) {
  const Matrix j = resolvent_of(a, tol).matrix();
  return spectral_norm(j - j.transpose()) <= tol;
}

double graph_skewness(const LinearRelation& a) {
  if (a.graph_dim() == 0) return 0.0;
  const Matrix uw = a.points().transpose() * a.values();
  return spectral_norm(uw - uw.transpose());
}

double dist(const LinearRelation& a1, const LinearRelation& a2) {
  if (a1.n() != a2.n()) {
    throw Error(Errc::DimensionMismatch,
                "dist between n = " + std::to_string(a1.n()) + " and n = " + std::to_string(a2.n()));
  }
  return spectral_norm(resolvent_of(a1).matrix() - resolvent_of(a2).matrix());
}

double graph_distance(const LinearRelation& a1, const LinearRelation& a2) {
  if (a1.n() != a2.n()) throw Error(Errc::DimensionMismatch, "graph_distance dimension");
  return spectral_norm(projector(a1.graph_basis()) - projector(a2.graph_basis()));
}

std::optional<Matrix> as_matrix(const LinearRelation& a) {
  if (a.graph_dim() != a.n()) return std::nullopt;
  try {
    // M U = W, solved transposed.
    return solve(a.points().transpose(), a.values().transpose()).transpose();
  } catch (const Error& e) {
    if (e.code() != Errc::SingularMatrix) throw;
    return std::nullopt;
  }
}

}  // namespace drlab
