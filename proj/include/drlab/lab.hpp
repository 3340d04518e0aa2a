#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "drlab/linrel.hpp"
#include "drlab/matrix.hpp"
#include "drlab/rng.hpp"

namespace drlab {

/// Commutator threshold below which a pair counts as a member of D, the set
/// of symmetric pairs whose DR operator is a proximal map.
inline constexpr double kDefaultCommuteTol = 1e-8;

struct SweepConfig {
  std::size_t n = 3;
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  double commute_tol = kDefaultCommuteTol;
  double lambda_escape = 1e-3;

  /// Throws Errc::InvalidInput unless n ≥ 1, trials ≥ 1, commute_tol > 0 and
  /// lambda_escape ∈ (0, 1).
  void validate() const;
};

struct SweepRecord {
  std::size_t trial = 0;
  double commutator_norm = 0.0;
  bool in_D = false;     // commutator_norm ≤ commute_tol
  bool proximal = false;  // is_proximal(T, commute_tol / 2)
  std::optional<double> dist_to_perturbed;  // set when the escape ran (in_D trials)

  bool operator==(const SweepRecord&) const = default;
};

/// Haar-distributed orthogonal matrix: Gram-Schmidt on a Gaussian matrix,
/// which fixes the signs so that the triangular factor has a positive diagonal.
Matrix haar_orthogonal(std::size_t n, Rng& rng);

/// The relation with resolvent Q diag(d) Qᵀ. Requires d ⊂ [0, 1].
LinearRelation symmetric_relation_from_spectrum(const Matrix& q, std::span<const double> d);

/// Resolvent eigenvalues uniform on [0, 1], eigenvectors Haar.
LinearRelation sample_symmetric_relation(std::size_t n, Rng& rng);

/// ‖R_A R_B − R_B R_A‖.
double reflected_commutator_norm(const LinearRelation& a, const LinearRelation& b);

/// Both relations symmetric and maximally monotone, commutator within tol.
bool in_D(const LinearRelation& a, const LinearRelation& b, double commute_tol = kDefaultCommuteTol);

/// One record per trial, ordered by trial index. Trial t samples A then B from
/// Rng::for_trial(seed, t), so output is identical for any thread count.
std::vector<SweepRecord> genericity_sweep(const SweepConfig& cfg, unsigned threads = 1);

/// Fraction of records with in_D set.
double fraction_in_D(std::span<const SweepRecord> records);

struct EscapeReport {
  LinearRelation a_lambda;
  LinearRelation b_lambda;
  double lambda_requested = 0.0;
  double lambda_used = 0.0;
  bool retried = false;
  double commutator_norm = 0.0;
  double dist_a = 0.0;
  double dist_b = 0.0;
  double dist = 0.0;  // dist_a + dist_b
  double commute_tol = 0.0;
};

/// Moves a pair in D toward the non-commuting endpoints (R1, S1) of the
/// coolmat family: R_{A_λ} = (1−λ)R_{A0} + λR1, R_{B_λ} = (1−λ)R_{B0} + λS1.
///
/// Retries once at λ/2 if the new pair still commutes. Errors: NotInD,
/// DimensionTooSmall for n < 2, PreconditionViolated for λ ∉ (0,1),
/// EscapeFailed if the retry also lands in D.
EscapeReport escape_from_D(const LinearRelation& a0, const LinearRelation& b0, double lambda,
                           double commute_tol = kDefaultCommuteTol);

struct ClosednessStep {
  std::size_t k = 0;
  double dist_to_limit = 0.0;
  double commutator_norm = 0.0;
  bool in_D = false;
  bool proximal = false;
};

struct ClosednessReport {
  std::vector<ClosednessStep> steps;
  bool all_terms_in_D = false;
  bool dist_to_zero = false;  // dist_k ≤ dist_1 / k and nonincreasing
  bool limit_proximal = false;
  bool passed = false;
};

/// Follows (A_k, B_k) with J_{A_k} = (1 − 1/k) J_A + (1/k) J_P (same for B
/// with Q) for k = 1 … k_max, where (P, Q) defaults to the zero pair.
/// Throws Errc::NotInD if (A, B) is not in D.
ClosednessReport closedness_probe(
    const LinearRelation& a, const LinearRelation& b, std::size_t k_max,
    double commute_tol = kDefaultCommuteTol,
    const std::optional<std::pair<LinearRelation, LinearRelation>>& partner = std::nullopt);

}  // namespace drlab
