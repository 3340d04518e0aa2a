#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "drlab/matrix.hpp"
#include "drlab/numerics.hpp"

namespace drlab {

/// Default absolute tolerance for monotonicity and symmetry tests.
inline constexpr double kDefaultTol = 1e-9;
/// Slack allowed in ‖2J − I‖ ≤ 1 when validating a resolvent.
inline constexpr double kFirmTol = 1e-10;

/// Where a relation came from. Carried into reports only.
enum class RelationKind { Unspecified, Matrix, NormalCone, Resolvent };

std::string_view to_string(RelationKind kind) noexcept;
std::optional<RelationKind> relation_kind_from_string(std::string_view s) noexcept;

/// A linear relation on ℝⁿ, stored as an orthonormal basis of its graph.
///
/// The graph basis is 2n×k: the top n rows hold points u, the bottom n rows
/// hold values w, and the columns (u; w) span gr A. Two relations are equal
/// exactly when their graph projectors agree.
class LinearRelation {
 public:
  /// Orthonormalizes the columns of `graph_spanning` (2n rows, any count).
  LinearRelation(std::size_t n, const Matrix& graph_spanning,
                 RelationKind kind = RelationKind::Unspecified);

  /// Keeps `basis` bit-for-bit when its columns are orthonormal to 1e-12,
  /// otherwise falls back to orthonormalizing.
  static LinearRelation from_basis(std::size_t n, Matrix basis,
                                   RelationKind kind = RelationKind::Unspecified);

  std::size_t n() const noexcept { return n_; }
  const Matrix& graph_basis() const noexcept { return basis_; }
  std::size_t graph_dim() const noexcept { return basis_.cols(); }
  RelationKind kind() const noexcept { return kind_; }

  /// Top block U.
  Matrix points() const { return basis_.block(0, 0, n_, basis_.cols()); }
  /// Bottom block W.
  Matrix values() const { return basis_.block(n_, 0, n_, basis_.cols()); }

 private:
  struct Trusted {};
  LinearRelation(Trusted, std::size_t n, Matrix basis, RelationKind kind);

  std::size_t n_ = 0;
  Matrix basis_;
  RelationKind kind_ = RelationKind::Unspecified;
};

/// A firmly nonexpansive square matrix, ‖2J − I‖ ≤ 1.
class ResolventMatrix {
 public:
  /// Throws Errc::NotFirmlyNonexpansive when ‖2J − I‖ > 1 + tol.
  explicit ResolventMatrix(Matrix j, double tol = kFirmTol);

  /// Skips validation. For matrices that are firmly nonexpansive by
  /// construction.
  static ResolventMatrix unchecked(Matrix j);

  const Matrix& matrix() const noexcept { return j_; }
  std::size_t n() const noexcept { return j_.rows(); }

 private:
  struct Unchecked {};
  ResolventMatrix(Unchecked, Matrix j) : j_(std::move(j)) {}
  Matrix j_;
};

/// ‖2J − I‖ ≤ 1 + tol.
bool is_firmly_nonexpansive(const Matrix& j, double tol = kFirmTol);

/// Graph {(x, Mx)}.
LinearRelation from_matrix(const Matrix& m);

/// Graph V × V^⊥ for V spanned by the columns of `v_basis`.
LinearRelation normal_cone_of_subspace(const Matrix& v_basis, double rank_tol = kDefaultRankTol);

/// Graph {(Jx, x − Jx)}.
LinearRelation from_resolvent(const ResolventMatrix& j);

/// J = U(U + W)⁻¹. Throws Errc::NotMaximallyMonotone unless the relation is
/// monotone (at `tol`) with an n-dimensional graph.
ResolventMatrix resolvent_of(const LinearRelation& a, double tol = kDefaultTol);

/// Symmetric part of UᵀW has smallest eigenvalue ≥ −tol.
bool is_monotone(const LinearRelation& a, double tol = kDefaultTol);

bool is_maximally_monotone(const LinearRelation& a, double tol = kDefaultTol);

/// ‖J − Jᵀ‖ ≤ tol for the resolvent J. Propagates NotMaximallyMonotone.
bool is_symmetric(const LinearRelation& a, double tol = kDefaultTol);

/// ‖UᵀW − WᵀU‖ on the canonical basis. Zero exactly for symmetric relations;
/// independent of the resolvent route used by is_symmetric.
double graph_skewness(const LinearRelation& a);

/// ‖J_{A1} − J_{A2}‖. Throws Errc::DimensionMismatch on differing n.
double dist(const LinearRelation& a1, const LinearRelation& a2);

/// ‖P_{gr A1} − P_{gr A2}‖; zero exactly when the graphs coincide.
double graph_distance(const LinearRelation& a1, const LinearRelation& a2);

/// The matrix M with gr A = {(x, Mx)}, when A is single-valued and total.
std::optional<Matrix> as_matrix(const LinearRelation& a);

}  // namespace drlab
