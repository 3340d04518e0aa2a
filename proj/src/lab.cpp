#include "drlab/lab.hpp"

#include <algorithm>
#include <exception>
#include <string>
#include <thread>

#include "drlab/drcalc.hpp"
#include "drlab/error.hpp"
#include "drlab/numerics.hpp"

namespace drlab {

void SweepConfig::validate() const {
  if (n < 1) throw Error(Errc::InvalidInput, "sweep needs n >= 1");
  if (trials < 1) throw Error(Errc::InvalidInput, "sweep needs trials >= 1");
  if (!(commute_tol > 0.0)) throw Error(Errc::InvalidInput, "commute_tol must be positive");
  if (!(lambda_escape > 0.0 && lambda_escape < 1.0)) {
    throw Error(Errc::InvalidInput, "lambda_escape must lie in (0, 1)");
  }
}

Matrix haar_orthogonal(std::size_t n, Rng& rng) {
  for (;;) {
    Matrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) g(i, j) = rng.normal();
    Matrix q = orthonormalize(g);
    if (q.cols() == n) return q;
  }
}

LinearRelation symmetric_relation_from_spectrum(const Matrix& q, std::span<const double> d) {
  if (!q.is_square() || q.rows() != d.size()) throw Error(Errc::DimensionMismatch, "spectrum size");
  for (double v : d) {
    if (!(v >= 0.0 && v <= 1.0)) throw Error(Errc::InvalidInput, "resolvent eigenvalue outside [0, 1]");
  }
  const std::size_t n = d.size();
  Matrix j(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += q(r, k) * d[k] * q(c, k);
      j(r, c) = s;
    }
  return from_resolvent(ResolventMatrix(std::move(j)));
}

LinearRelation sample_symmetric_relation(std::size_t n, Rng& rng) {
  if (n < 1) throw Error(Errc::DimensionTooSmall, "sample needs n >= 1");
  const Matrix q = haar_orthogonal(n, rng);
  std::vector<double> d(n);
  for (double& v : d) v = rng.uniform();
  return symmetric_relation_from_spectrum(q, d);
}

double reflected_commutator_norm(const LinearRelation& a, const LinearRelation& b) {
  return spectral_norm(commutator(reflected_resolvent(a), reflected_resolvent(b)));
}

bool in_D(const LinearRelation& a, const LinearRelation& b, double commute_tol) {
  if (a.n() != b.n()) return false;
  if (!is_maximally_monotone(a) || !is_maximally_monotone(b)) return false;
  if (!is_symmetric(a) || !is_symmetric(b)) return false;
  return reflected_commutator_norm(a, b) <= commute_tol;
}

namespace {

SweepRecord run_trial(const SweepConfig& cfg, std::size_t trial) {
  Rng rng = Rng::for_trial(cfg.seed, trial);
  const LinearRelation a = sample_symmetric_relation(cfg.n, rng);
  const LinearRelation b = sample_symmetric_relation(cfg.n, rng);
  const DrDiagnosis diag = dr_operator(a, b);

  SweepRecord rec;
  rec.trial = trial;
  rec.commutator_norm = diag.commutator_norm ? *diag.commutator_norm : reflected_commutator_norm(a, b);
  rec.in_D = rec.commutator_norm <= cfg.commute_tol;
  // For symmetric R_A, R_B: T − Tᵀ = ½[R_B, R_A], so halving the threshold
  // makes the two membership tests coincide.
  rec.proximal = is_proximal(diag.T, cfg.commute_tol / 2.0);
  if (rec.in_D && cfg.n >= 2) {
    rec.dist_to_perturbed = escape_from_D(a, b, cfg.lambda_escape, cfg.commute_tol).dist;
  }
  return rec;
}

}  // namespace

std::vector<SweepRecord> genericity_sweep(const SweepConfig& cfg, unsigned threads) {
  cfg.validate();
  std::vector<SweepRecord> records(cfg.trials);
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(cfg.trials)));
  if (workers == 1) {
    for (std::size_t t = 0; t < cfg.trials; ++t) records[t] = run_trial(cfg, t);
    return records;
  }

  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t t = w; t < cfg.trials; t += workers) records[t] = run_trial(cfg, t);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return records;
}

double fraction_in_D(std::span<const SweepRecord> records) {
  if (records.empty()) return 0.0;
  const auto hits = std::count_if(records.begin(), records.end(), [](const SweepRecord& r) { return r.in_D; });
  return static_cast<double>(hits) / static_cast<double>(records.size());
}

EscapeReport escape_from_D(const LinearRelation& a0, const LinearRelation& b0, double lambda,
                           double commute_tol) {
  if (a0.n() != b0.n()) throw Error(Errc::DimensionMismatch, "escape_from_D dimension");
  const std::size_t n = a0.n();
  if (n < 2) throw Error(Errc::DimensionTooSmall, "escape_from_D needs n >= 2");
  if (!(lambda > 0.0 && lambda < 1.0)) throw Error(Errc::PreconditionViolated, "lambda must lie in (0, 1)");
  if (!in_D(a0, b0, commute_tol)) throw Error(Errc::NotInD, "input pair is not in D");

  const Matrix id = Matrix::identity(n);
  const Matrix ra0 = reflected_resolvent(a0);
  const Matrix rb0 = reflected_resolvent(b0);
  const SegmentFamily ends = coolmat_family(n);

  auto blend = [&](const Matrix& r0, const Matrix& r1, double lam) {
    const Matrix r = (1.0 - lam) * r0 + lam * r1;
    return from_resolvent(ResolventMatrix(0.5 * (id + r)));
  };

  double lam = lambda;
  for (int attempt = 0; attempt < 2; ++attempt, lam *= 0.5) {
    LinearRelation a = blend(ra0, ends.r1(), lam);
    LinearRelation b = blend(rb0, ends.s1(), lam);
    const double comm = reflected_commutator_norm(a, b);
    if (comm <= commute_tol) continue;
    const double da = dist(a0, a);
    const double db = dist(b0, b);
    return EscapeReport{std::move(a), std::move(b), lambda, lam, attempt > 0, comm, da, db, da + db, commute_tol};
  }
  throw Error(Errc::EscapeFailed,
              "pair stayed in D at lambda = " + std::to_string(lambda) + " and " + std::to_string(lambda / 2));
}

ClosednessReport closedness_probe(const LinearRelation& a, const LinearRelation& b, std::size_t k_max,
                                  double commute_tol,
                                  const std::optional<std::pair<LinearRelation, LinearRelation>>& partner) {
  if (k_max < 1) throw Error(Errc::InvalidInput, "k_max must be at least 1");
  if (!in_D(a, b, commute_tol)) throw Error(Errc::NotInD, "limit pair is not in D");
  const std::size_t n = a.n();
  const Matrix ja = resolvent_of(a).matrix();
  const Matrix jb = resolvent_of(b).matrix();
  const Matrix jp = partner ? resolvent_of(partner->first).matrix() : Matrix::identity(n);
  const Matrix jq = partner ? resolvent_of(partner->second).matrix() : Matrix::identity(n);

  ClosednessReport report;
  report.all_terms_in_D = true;
  report.dist_to_zero = true;
  for (std::size_t k = 1; k <= k_max; ++k) {
    const double w = 1.0 / static_cast<double>(k);
    const LinearRelation ak = from_resolvent(ResolventMatrix((1.0 - w) * ja + w * jp));
    const LinearRelation bk = from_resolvent(ResolventMatrix((1.0 - w) * jb + w * jq));
    const DrDiagnosis diag = dr_operator(ak, bk);

    ClosednessStep step;
    step.k = k;
    step.dist_to_limit = dist(ak, a) + dist(bk, b);
    step.commutator_norm = diag.commutator_norm ? *diag.commutator_norm : reflected_commutator_norm(ak, bk);
    step.in_D = step.commutator_norm <= commute_tol;
    step.proximal = is_proximal(diag.T, commute_tol / 2.0);
    report.all_terms_in_D = report.all_terms_in_D && step.in_D && step.proximal;

    if (!report.steps.empty()) {
      const double first = report.steps.front().dist_to_limit;
      const double prev = report.steps.back().dist_to_limit;
      const bool shrinking = step.dist_to_limit <= prev + 1e-12 &&
                             step.dist_to_limit <= first * w * (1.0 + 1e-9) + 1e-12;
      report.dist_to_zero = report.dist_to_zero && shrinking;
    }
    report.steps.push_back(step);
  }
  report.limit_proximal = is_proximal(dr_operator(a, b).T, commute_tol / 2.0);
  report.passed = report.all_terms_in_D && report.dist_to_zero && report.limit_proximal;
  return report;
}

}  // namespace drlab
