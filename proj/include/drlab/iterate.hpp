#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "drlab/linrel.hpp"
#include "drlab/matrix.hpp"

namespace drlab {

inline constexpr std::size_t kDefaultMaxIter = 10000;
inline constexpr double kDefaultIterTol = 1e-12;

/// Orbit of x_{k+1} = T x_k together with its shadow J_A x_k.
///
/// `iterates` holds x_0 … x_m where m = iterations_used; step_norms[k] is
/// ‖x_{k+1} − x_k‖. A run converges once a step falls to the tolerance, in
/// which case `limit` is the last iterate.
struct IterationTrace {
  std::vector<Vector> iterates;
  std::vector<Vector> shadows;
  std::vector<double> step_norms;
  bool converged = false;
  std::optional<Vector> limit;
  std::optional<Vector> shadow_limit;
  std::size_t iterations_used = 0;
};

/// Iterates T = T_{A,B} from x0. Reaching max_iter without a small step is
/// reported through `converged == false`, not as an error.
IterationTrace run_dr(const LinearRelation& a, const LinearRelation& b, std::span<const double> x0,
                      std::size_t max_iter = kDefaultMaxIter, double tol = kDefaultIterTol);

/// Same iteration for an explicit operator T and shadow map J.
IterationTrace run_fixed_point(const Matrix& t, const Matrix& shadow_map, std::span<const double> x0,
                               std::size_t max_iter = kDefaultMaxIter, double tol = kDefaultIterTol);

/// Orthonormal basis of ker(T − I).
Matrix fixed_point_subspace(const Matrix& t, double tol = kDefaultRankTol);

/// Z = {x : 0 ∈ Ax + Bx}, a subspace containing 0.
struct SolutionSet {
  Matrix basis;             // orthonormal columns, possibly none
  double route_gap = 0.0;   // ‖P_direct − P_shadow‖ between the two constructions
};

/// Z from the graphs: x = U_A a = U_B b with W_A a = −W_B b.
Matrix solution_set_direct(const LinearRelation& a, const LinearRelation& b,
                           double rank_tol = kDefaultRankTol);

/// Z as J_A(Fix T_{A,B}).
Matrix solution_set_from_fixed_points(const LinearRelation& a, const LinearRelation& b,
                                      double rank_tol = kDefaultRankTol);

/// Computes Z both ways and returns the direct basis. Throws
/// Errc::InternalInconsistency when the projectors differ by more than
/// agree_tol.
SolutionSet solution_set(const LinearRelation& a, const LinearRelation& b,
                         double rank_tol = kDefaultRankTol, double agree_tol = 1e-8);

/// ‖P_1 − P_2‖ for orthonormal bases; 1 when the dimensions differ.
double subspace_distance(const Matrix& basis1, const Matrix& basis2);

/// ‖x − P x‖ for the projector P onto span(basis).
double distance_to_subspace(std::span<const double> x, const Matrix& basis);

}  // namespace drlab
