#include "drlab/drcalc.hpp"

#include <cmath>
#include <string>

#include "drlab/error.hpp"
#include "drlab/numerics.hpp"

namespace drlab {

namespace {

// Roots this close to the segment ends belong to the endpoints, not to (0,1).
constexpr double kEndpointMargin = 1e-9;
constexpr double kRootMatchTol = 1e-9;

}  // namespace

Matrix reflected_resolvent(const LinearRelation& a, double tol) {
  return 2.0 * resolvent_of(a, tol).matrix() - Matrix::identity(a.n());
}

DrDiagnosis dr_operator(const LinearRelation& a, const LinearRelation& b, double tol) {
  if (a.n() != b.n()) {
    throw Error(Errc::DimensionMismatch,
                "dr_operator on n = " + std::to_string(a.n()) + " and n = " + std::to_string(b.n()));
  }
  const std::size_t n = a.n();
  const Matrix id = Matrix::identity(n);
  const Matrix ja = resolvent_of(a, tol).matrix();
  const Matrix jb = resolvent_of(b, tol).matrix();
  const Matrix ra = 2.0 * ja - id;
  const Matrix rb = 2.0 * jb - id;

  Matrix t = 0.5 * (id + rb * ra);
  const Matrix t_alt = id - ja + jb * ra;
  const double gap = max_abs_diff(t, t_alt);
  if (gap > kFormulaAgreementTol) {
    throw Error(Errc::InternalInconsistency, "DR operator forms differ by " + std::to_string(gap));
  }

  const bool symmetric = spectral_norm(t - t.transpose()) <= tol;
  const bool firm = is_firmly_nonexpansive(t, tol);

  std::optional<double> comm;
  if (spectral_norm(ja - ja.transpose()) <= tol && spectral_norm(jb - jb.transpose()) <= tol) {
    comm = spectral_norm(commutator(rb, ra));
  }

  LinearRelation c = from_resolvent(ResolventMatrix::unchecked(t));
  return DrDiagnosis{std::move(t), symmetric, firm, symmetric && firm, comm, std::move(c), gap};
}

bool is_proximal(const Matrix& t, double tol) {
  if (!t.is_square()) return false;
  return is_firmly_nonexpansive(t, tol) && spectral_norm(t - t.transpose()) <= tol;
}

Matrix commutator(const Matrix& r, const Matrix& s) {
  if (!r.is_square() || r.rows() != s.rows() || r.cols() != s.cols()) {
    throw Error(Errc::DimensionMismatch, "commutator needs equal square shapes");
  }
  return r * s - s * r;
}

SegmentFamily::SegmentFamily(Matrix r0, Matrix s0, Matrix r1, Matrix s1)
    : r0_(std::move(r0)), s0_(std::move(s0)), r1_(std::move(r1)), s1_(std::move(s1)) {
  for (const Matrix* m : {&r0_, &s0_, &r1_, &s1_}) {
    if (!m->is_square() || m->rows() != r0_.rows()) {
      throw Error(Errc::DimensionMismatch, "segment endpoints must share one square shape");
    }
    if (spectral_norm(*m) > 1.0 + 1e-10) {
      throw Error(Errc::PreconditionViolated, "segment endpoint is not nonexpansive");
    }
  }
}

Matrix SegmentFamily::r_at(double lambda) const { return (1.0 - lambda) * r0_ + lambda * r1_; }
Matrix SegmentFamily::s_at(double lambda) const { return (1.0 - lambda) * s0_ + lambda * s1_; }
Matrix SegmentFamily::commutator_at(double lambda) const { return commutator(r_at(lambda), s_at(lambda)); }

SegmentFamily coolmat_family(std::size_t n) {
  if (n < 2) throw Error(Errc::DimensionTooSmall, "coolmat family needs n >= 2");
  Matrix r(n, n), s0(n, n), s1(n, n);
  r(0, 0) = 1.0;
  r(1, 1) = -1.0;
  s0(0, 0) = -1.0;
  s0(1, 1) = 1.0;
  s1(0, 1) = 1.0;
  s1(1, 0) = 1.0;
  return SegmentFamily(r, s0, r, s1);
}

std::vector<CommutatorPolynomial> commutator_polynomials(const SegmentFamily& f) {
  const Matrix dr = f.r1() - f.r0();
  const Matrix ds = f.s1() - f.s0();
  const Matrix c0 = commutator(f.r0(), f.s0());
  const Matrix c1 = commutator(f.r0(), ds) + commutator(dr, f.s0());
  const Matrix c2 = commutator(dr, ds);

  std::vector<CommutatorPolynomial> out;
  out.reserve(f.n() * f.n());
  for (std::size_t i = 0; i < f.n(); ++i)
    for (std::size_t j = 0; j < f.n(); ++j) out.push_back({i, j, c0(i, j), c1(i, j), c2(i, j)});
  return out;
}

std::vector<double> commuting_lambdas(const SegmentFamily& f, double tol) {
  const double m0 = spectral_norm(commutator(f.r0(), f.s0()));
  const double m1 = spectral_norm(commutator(f.r1(), f.s1()));
  if (m0 > tol) {
    throw Error(Errc::PreconditionViolated, "R0 and S0 do not commute: ‖M0‖ = " + std::to_string(m0));
  }
  if (m1 <= tol) {
    throw Error(Errc::PreconditionViolated, "R1 and S1 commute: ‖M1‖ = " + std::to_string(m1));
  }

  // q(0) = 0 up to tol, so q(λ)/λ = c1 + c2 λ carries the only interior root.
  struct EntryRoot {
    double root;
    double weight;  // |c2|; larger means a better conditioned root
  };
  std::vector<EntryRoot> roots;
  for (const CommutatorPolynomial& q : commutator_polynomials(f)) {
    if (std::abs(q.c1) + std::abs(q.c2) <= tol) continue;
    if (q.c2 == 0.0) return {};
    const double root = -q.c1 / q.c2;
    if (!(root > kEndpointMargin && root < 1.0 - kEndpointMargin)) return {};
    roots.push_back({root, std::abs(q.c2)});
  }
  if (roots.empty()) return {};

  const EntryRoot* ref = &roots.front();
  for (const EntryRoot& r : roots)
    if (r.weight > ref->weight) ref = &r;
  for (const EntryRoot& r : roots)
    if (std::abs(r.root - ref->root) > kRootMatchTol) return {};

  const double candidate = ref->root;
  if (spectral_norm(f.commutator_at(candidate)) > tol) return {};
  return {candidate};
}

}  // namespace drlab
