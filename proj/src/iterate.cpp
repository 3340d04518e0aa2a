#include "drlab/iterate.hpp"

#include <string>

#include "drlab/drcalc.hpp"
#include "drlab/error.hpp"
#include "drlab/numerics.hpp"

namespace drlab {

IterationTrace run_fixed_point(const Matrix& t, const Matrix& shadow_map, std::span<const double> x0,
                               std::size_t max_iter, double tol) {
  if (!t.is_square() || t.rows() != x0.size() || shadow_map.cols() != x0.size()) {
    throw Error(Errc::DimensionMismatch, "x0 length does not match the operator");
  }
  if (max_iter == 0) throw Error(Errc::InvalidInput, "max_iter must be at least 1");
  if (!(tol > 0.0)) throw Error(Errc::InvalidInput, "tol must be positive");

  IterationTrace trace;
  Vector x(x0.begin(), x0.end());
  trace.iterates.push_back(x);
  trace.shadows.push_back(shadow_map * x);

  for (std::size_t k = 0; k < max_iter; ++k) {
    Vector next = t * x;
    const double step = norm2(axpy(-1.0, x, next));
    x = std::move(next);
    trace.iterates.push_back(x);
    trace.shadows.push_back(shadow_map * x);
    trace.step_norms.push_back(step);
    trace.iterations_used = k + 1;
    if (step <= tol) {
      trace.converged = true;
      break;
    }
  }
  if (trace.converged) {
    trace.limit = trace.iterates.back();
    trace.shadow_limit = trace.shadows.back();
  }
  return trace;
}

IterationTrace run_dr(const LinearRelation& a, const LinearRelation& b, std::span<const double> x0,
                      std::size_t max_iter, double tol) {
  const DrDiagnosis diag = dr_operator(a, b);
  return run_fixed_point(diag.T, resolvent_of(a).matrix(), x0, max_iter, tol);
}

Matrix fixed_point_subspace(const Matrix& t, double tol) {
  if (!t.is_square()) throw Error(Errc::DimensionMismatch, "fixed_point_subspace needs a square matrix");
  // T is nonexpansive, so unit scale is the natural reference for T − I.
  return kernel_basis(t - Matrix::identity(t.rows()), tol, 1.0);
}

Matrix solution_set_direct(const LinearRelation& a, const LinearRelation& b, double rank_tol) {
  if (a.n() != b.n()) throw Error(Errc::DimensionMismatch, "solution_set dimension");
  const Matrix ua = a.points(), wa = a.values();
  const Matrix ub = b.points(), wb = b.values();
  // [U_A  −U_B] [α]   [0]
  // [W_A   W_B] [β] = [0]
  const Matrix stacked = vstack(hstack(ua, -1.0 * ub), hstack(wa, wb));
  const Matrix k = kernel_basis(stacked, rank_tol, 1.0);
  const Matrix alpha = k.block(0, 0, a.graph_dim(), k.cols());
  // Kernel columns are unit vectors, so U_A α has norm at most 1.
  return orthonormalize(ua * alpha, rank_tol, 1.0);
}

Matrix solution_set_from_fixed_points(const LinearRelation& a, const LinearRelation& b, double rank_tol) {
  const DrDiagnosis diag = dr_operator(a, b);
  const Matrix fix = fixed_point_subspace(diag.T, rank_tol);
  return orthonormalize(resolvent_of(a).matrix() * fix, rank_tol, 1.0);
}

SolutionSet solution_set(const LinearRelation& a, const LinearRelation& b, double rank_tol,
                         double agree_tol) {
  Matrix direct = solution_set_direct(a, b, rank_tol);
  const Matrix shadow = solution_set_from_fixed_points(a, b, rank_tol);
  const double gap = subspace_distance(direct, shadow);
  if (gap > agree_tol) {
    throw Error(Errc::InternalInconsistency,
                "solution set routes disagree: dim " + std::to_string(direct.cols()) + " vs " +
                    std::to_string(shadow.cols()) + ", gap " + std::to_string(gap));
  }
  return SolutionSet{std::move(direct), gap};
}

double subspace_distance(const Matrix& basis1, const Matrix& basis2) {
  if (basis1.rows() != basis2.rows()) throw Error(Errc::DimensionMismatch, "subspace_distance");
  if (basis1.cols() != basis2.cols()) return 1.0;
  return spectral_norm(projector(basis1) - projector(basis2));
}

double distance_to_subspace(std::span<const double> x, const Matrix& basis) {
  const Vector px = projector(basis) * x;
  return norm2(axpy(-1.0, px, x));
}

}  // namespace drlab
