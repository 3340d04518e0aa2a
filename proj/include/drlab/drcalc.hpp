#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "drlab/linrel.hpp"
#include "drlab/matrix.hpp"

namespace drlab {

/// The two algebraic forms of the DR operator may differ by at most this much
/// before dr_operator reports an internal inconsistency.
inline constexpr double kFormulaAgreementTol = 1e-10;

/// Result of analysing the Douglas–Rachford operator of a pair (A, B).
struct DrDiagnosis {
  Matrix T;
  bool symmetric = false;
  bool firmly_nonexpansive = false;
  bool proximal = false;                  // symmetric && firmly_nonexpansive
  std::optional<double> commutator_norm;  // ‖R_B R_A − R_A R_B‖, symmetric inputs only
  LinearRelation recovered_C;             // T = J_C
  double formula_gap = 0.0;               // max entry gap between the two forms of T
};

/// R_A = 2J_A − I.
Matrix reflected_resolvent(const LinearRelation& a, double tol = kDefaultTol);

/// T = ½(I + R_B R_A), cross-checked against I − J_A + J_B R_A.
///
/// Symmetry and firm nonexpansiveness are judged at `tol`. Throws
/// Errc::DimensionMismatch for unequal n and Errc::InternalInconsistency if
/// the two forms of T disagree by more than kFormulaAgreementTol.
DrDiagnosis dr_operator(const LinearRelation& a, const LinearRelation& b, double tol = kDefaultTol);

/// T is a proximal mapping iff it is firmly nonexpansive and symmetric.
bool is_proximal(const Matrix& t, double tol = kDefaultTol);

/// RS − SR.
Matrix commutator(const Matrix& r, const Matrix& s);

/// Endpoints of the segments R_λ = (1−λ)R0 + λR1 and S_λ = (1−λ)S0 + λS1.
class SegmentFamily {
 public:
  /// Throws Errc::DimensionMismatch on shape disagreement and
  /// Errc::PreconditionViolated when an endpoint has norm above 1 + 1e-10.
  SegmentFamily(Matrix r0, Matrix s0, Matrix r1, Matrix s1);

  const Matrix& r0() const noexcept { return r0_; }
  const Matrix& s0() const noexcept { return s0_; }
  const Matrix& r1() const noexcept { return r1_; }
  const Matrix& s1() const noexcept { return s1_; }
  std::size_t n() const noexcept { return r0_.rows(); }

  Matrix r_at(double lambda) const;
  Matrix s_at(double lambda) const;
  /// M_λ = R_λ S_λ − S_λ R_λ.
  Matrix commutator_at(double lambda) const;

 private:
  Matrix r0_, s0_, r1_, s1_;
};

/// q(λ) = c0 + c1 λ + c2 λ², the (i, j) entry of M_λ.
struct CommutatorPolynomial {
  std::size_t i = 0;
  std::size_t j = 0;
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;

  double operator()(double lambda) const { return c0 + lambda * (c1 + lambda * c2); }
};

/// R0 = R1 = diag(1, −1, 0, …), S0 = diag(−1, 1, 0, …), S1 = [[0,1],[1,0]]
/// in the top-left block. Throws Errc::DimensionTooSmall for n < 2.
SegmentFamily coolmat_family(std::size_t n);

/// One polynomial per entry, row-major. With dR = R1 − R0 and dS = S1 − S0:
/// c0 = [R0,S0], c1 = [R0,dS] + [dR,S0], c2 = [dR,dS].
std::vector<CommutatorPolynomial> commutator_polynomials(const SegmentFamily& f);

/// The λ ∈ (0,1) at which R_λ commutes with S_λ.
///
/// Requires ‖M0‖ ≤ tol < ‖M1‖ (else Errc::PreconditionViolated). Since
/// q(0) = 0 for every entry, each nontrivial entry contributes the single
/// closed-form root −c1/c2; roots are intersected across entries at 1e-9 and
/// survivors must satisfy ‖M_λ‖ ≤ tol. The result has at most one element.
std::vector<double> commuting_lambdas(const SegmentFamily& f, double tol = kDefaultTol);

}  // namespace drlab
