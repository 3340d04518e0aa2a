// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "oracles.hpp"

#include "drlab/drcalc.hpp"
#include "drlab/error.hpp"
#include "drlab/iterate.hpp"
#include "drlab/lab.hpp"
#include "drlab/linrel.hpp"
#include "drlab/numerics.hpp"

using namespace drlab;

namespace {

namespace tol {
constexpr double kExactEntry = 1e-12;
constexpr double kRuntimeC1Ms = 1.0;
constexpr double kNorm = 1e-12;
constexpr double kProduct = 1e-14;
constexpr double kRuntimeC3S = 1.0;
constexpr double kAsymmetryMin = 1e-3;
constexpr double kGridZero = 1e-9;
constexpr double kGridNeighborhood = 1e-4;
constexpr double kPlantedRoot = 1e-9;
constexpr double kCommuteTol = 1e-8;
constexpr double kRuntimeC5S = 10.0;
constexpr double kEscapeLambda = 1e-3;
constexpr double kEscapeCommutatorMin = 1e-9;
constexpr double kEscapeDistFactor = 4.0;
constexpr double kRatio = 1e-10;
constexpr double kShadow = 1e-10;
constexpr double kFirm = 1e-9;
constexpr double kRecovered = 1e-10;
constexpr double kSolutionSet = 1e-8;
constexpr double kFormulas = 1e-12;
constexpr double kFactorTwo = 1e-12;
}  // namespace tol

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

const Matrix kRot{{0.0, 1.0}, {-1.0, 0.0}};
const Matrix kTwoLinesT{{0.5, -0.5}, {0.5, 0.5}};

Outcome two_lines_exact() {
  const auto t0 = Clock::now();
  const LinearRelation a = normal_cone_of_subspace(Matrix{{1.0}, {0.0}});
  const LinearRelation b = normal_cone_of_subspace(Matrix{{1.0}, {1.0}});
  const DrDiagnosis d = dr_operator(a, b);
  const std::optional<Matrix> c = as_matrix(d.recovered_C);
  const bool prox = is_proximal(d.T);
  const double ms = seconds_since(t0) * 1e3;

  const double t_err = max_abs_diff(d.T, kTwoLinesT);
  const double c_err = c ? max_abs_diff(*c, kRot) : INFINITY;
  return {t_err <= tol::kExactEntry && c_err <= tol::kExactEntry && !prox && ms < tol::kRuntimeC1Ms,
          fmt("T err %.3g, C err %.3g, proximal=%s, %.3f ms", t_err, c_err, prox ? "true" : "false", ms)};
}

Outcome coolmat_exact() {
  const SegmentFamily f = coolmat_family(2);
  double worst_norm = 0.0, worst_prod = 0.0;
  for (double lam : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const Matrix r = f.r_at(lam), s = f.s_at(lam);
    worst_norm = std::max(worst_norm, std::abs(spectral_norm(r) - 1.0));
    worst_norm = std::max(worst_norm, std::abs(spectral_norm(s) - std::sqrt((1 - lam) * (1 - lam) + lam * lam)));
    const Matrix rs{{lam - 1.0, lam}, {-lam, lam - 1.0}};
    const Matrix sr{{lam - 1.0, -lam}, {lam, lam - 1.0}};
    worst_prod = std::max({worst_prod, max_abs_diff(r * s, rs), max_abs_diff(s * r, sr)});
  }
  const auto roots = commuting_lambdas(f);
  return {worst_norm <= tol::kNorm && worst_prod <= tol::kProduct && roots.empty(),
          fmt("norm err %.3g, product err %.3g, %zu commuting lambdas", worst_norm, worst_prod, roots.size())};
}

Outcome proximal_decision() {
  constexpr std::size_t n = 6;
  Rng rng(3003);
  std::vector<std::pair<Matrix, bool>> cases;
  cases.reserve(1000);
  for (int i = 0; i < 500; ++i) {
    std::vector<double> d(n);
    for (auto& v : d) v = rng.uniform();
    cases.emplace_back(oracle::spectral(oracle::random_orthogonal(rng, n), d), true);
  }
  double min_asym = INFINITY;
  for (int i = 0; i < 500; ++i) {
    std::vector<double> d(n);
    for (auto& v : d) v = 0.1 + 0.8 * rng.uniform();
    const Matrix js = oracle::spectral(oracle::random_orthogonal(rng, n), d);
    const Matrix g = oracle::random_matrix(rng, n, n);
    const Matrix k0 = g - g.transpose();
    const double eps = 5e-4 + (0.1 - 5e-4) * rng.uniform();
    const Matrix j = js + (eps / oracle::spectral_norm(k0)) * k0;
    min_asym = std::min(min_asym, oracle::spectral_norm(j - j.transpose()));
    cases.emplace_back(j, false);
  }

  const auto t0 = Clock::now();
  int wrong = 0;
  for (const auto& [j, symmetric] : cases)
    if (is_proximal(j) != symmetric) ++wrong;
  const double s = seconds_since(t0);
  return {wrong == 0 && min_asym >= tol::kAsymmetryMin && s < tol::kRuntimeC3S,
          fmt("%d of 1000 misclassified, min injected asymmetry %.3g, %.3f s", wrong, min_asym, s)};
}

// Commuting nonexpansive pair built on a shared orthogonal eigenbasis.
std::pair<Matrix, Matrix> commuting_pair(Rng& rng, std::size_t n) {
  const Matrix q = oracle::random_orthogonal(rng, n);
  std::vector<double> dr(n), ds(n);
  for (std::size_t i = 0; i < n; ++i) {
    dr[i] = 2.0 * rng.uniform() - 1.0;
    ds[i] = 2.0 * rng.uniform() - 1.0;
  }
  return {oracle::spectral(q, dr), oracle::spectral(q, ds)};
}

Outcome lemma_cardinality() {
  Rng rng(4004);
  std::size_t max_size = 0, planted = 0, planted_found = 0, grid_violations = 0, found = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + trial % 3;
    auto [r0, s0] = commuting_pair(rng, n);
    Matrix r1, s1;
    std::optional<double> star;
    if (trial % 2 == 0) {
      // Through a commuting pair at λ*, so M_λ* = 0 by construction.
      const double lam = 0.05 + 0.9 * rng.uniform();
      auto [rs, ss] = commuting_pair(rng, n);
      r1 = (1.0 / lam) * (rs - (1.0 - lam) * r0);
      s1 = (1.0 / lam) * (ss - (1.0 - lam) * s0);
      star = lam;
    } else {
      r1 = oracle::random_matrix(rng, n, n);
      s1 = oracle::random_matrix(rng, n, n);
    }
    const double scale = 1.0 / std::max({1.0, oracle::spectral_norm(r1), oracle::spectral_norm(s1)});
    const SegmentFamily f(scale * r0, scale * s0, scale * r1, scale * s1);
    const std::vector<double> roots = commuting_lambdas(f, tol::kCommuteTol);
    max_size = std::max(max_size, roots.size());
    found += roots.size();
    if (star) {
      ++planted;
      if (roots.size() == 1 && std::abs(roots[0] - *star) <= tol::kPlantedRoot) ++planted_found;
    }

    for (int k = 0; k < 10000; ++k) {
      const double lam = (k + 0.5) / 10000.0;
      const Matrix m = f.commutator_at(lam);
      // ‖M‖₂ ≥ ‖M‖_F/√n, so larger Frobenius norms cannot be grid zeros.
      if (frobenius_norm(m) / std::sqrt(double(n)) >= tol::kGridZero) continue;
      if (spectral_norm(m) >= tol::kGridZero) continue;
      const bool covered = std::any_of(roots.begin(), roots.end(),
                                       [&](double r) { return std::abs(r - lam) <= tol::kGridNeighborhood; });
      if (!covered) ++grid_violations;
    }
  }
  return {max_size <= 1 && grid_violations == 0 && planted_found == planted,
          fmt("max set size %zu, %zu roots reported, planted %zu/%zu recovered, %zu uncovered grid zeros", max_size,
              found, planted_found, planted, grid_violations)};
}

Outcome nowhere_dense() {
  SweepConfig cfg;
  cfg.n = 3;
  cfg.trials = 10000;
  cfg.seed = 42;
  cfg.commute_tol = tol::kCommuteTol;
  const auto t0 = Clock::now();
  const auto recs = genericity_sweep(cfg, 1);
  const double s = seconds_since(t0);
  const double frac3 = fraction_in_D(recs);

  cfg.n = 1;
  const double frac1 = fraction_in_D(genericity_sweep(cfg, 1));
  return {frac3 == 0.0 && frac1 == 1.0 && s < tol::kRuntimeC5S,
          fmt("n=3 fraction %.6g in %.3f s, n=1 fraction %.6g", frac3, s, frac1)};
}

Outcome boundary_property() {
  Rng rng(6006);
  double min_comm = INFINITY, worst_ratio = 0.0;
  int probes_failed = 0, retried = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const Matrix q = haar_orthogonal(n, rng);
    std::vector<double> d(n), e(n);
    for (std::size_t i = 0; i < n; ++i) {
      d[i] = rng.uniform();
      e[i] = rng.uniform();
    }
    const LinearRelation a = symmetric_relation_from_spectrum(q, d);
    const LinearRelation b = symmetric_relation_from_spectrum(q, e);
    const EscapeReport r = escape_from_D(a, b, tol::kEscapeLambda, tol::kCommuteTol);
    min_comm = std::min(min_comm, r.commutator_norm);
    worst_ratio = std::max(worst_ratio, r.dist / tol::kEscapeLambda);
    retried += r.retried;
    if (!closedness_probe(a, b, 20, tol::kCommuteTol).passed) ++probes_failed;
  }
  return {min_comm >= tol::kEscapeCommutatorMin && worst_ratio <= tol::kEscapeDistFactor && probes_failed == 0,
          fmt("min commutator %.3g, max dist %.3g*lambda, %d retries, %d closedness failures", min_comm, worst_ratio,
              retried, probes_failed)};
}

Outcome iteration_rate() {
  const LinearRelation a = normal_cone_of_subspace(Matrix{{1.0}, {0.0}});
  const LinearRelation b = normal_cone_of_subspace(Matrix{{1.0}, {1.0}});
  const Vector x0{1.0, 1.0};
  const IterationTrace tr = run_dr(a, b, x0);
  double worst = INFINITY;
  if (tr.iterates.size() >= 31) {
    worst = 0.0;
    for (std::size_t k = 0; k < 30; ++k) {
      const double ratio = norm2(tr.iterates[k + 1]) / norm2(tr.iterates[k]);
      worst = std::max(worst, std::abs(ratio - 1.0 / std::sqrt(2.0)));
    }
  }
  const double shadow = tr.shadow_limit ? norm2(*tr.shadow_limit) : INFINITY;
  return {worst <= tol::kRatio && shadow <= tol::kShadow,
          fmt("ratio err %.3g over 30 steps, |shadow_limit| %.3g after %zu iterations", worst, shadow,
              tr.iterations_used)};
}

Outcome structural_invariants() {
  Rng rng(8008);
  double firm = 0.0, recovered = 0.0, route = 0.0, formulas = 0.0, factor = 0.0;
  int inconsistent = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 2 + trial % 5;
    LinearRelation a = sample_symmetric_relation(n, rng);
    LinearRelation b = sample_symmetric_relation(n, rng);
    if (trial % 2 == 1) {
      // Pinned 0/1 eigenvalues and, every fourth trial, a shared basis give
      // nontrivial solution sets.
      auto pinned = [&](const Matrix& q) {
        std::vector<double> d(n);
        for (auto& v : d) {
          const double u = rng.uniform();
          v = u < 0.3 ? 0.0 : (u < 0.6 ? 1.0 : rng.uniform());
        }
        return symmetric_relation_from_spectrum(q, d);
      };
      const Matrix qa = haar_orthogonal(n, rng);
      a = pinned(qa);
      b = pinned(trial % 4 == 1 ? qa : haar_orthogonal(n, rng));
    }
    const DrDiagnosis d = dr_operator(a, b);
    firm = std::max(firm, oracle::spectral_norm(2.0 * d.T - Matrix::identity(n)) - 1.0);
    recovered = std::max(recovered, max_abs_diff(resolvent_of(d.recovered_C).matrix(), d.T));
    formulas = std::max(formulas, d.formula_gap);
    try {
      route = std::max(route, solution_set(a, b, kDefaultRankTol, tol::kSolutionSet).route_gap);
    } catch (const Error&) {
      ++inconsistent;
    }
    const Matrix ra = reflected_resolvent(a), rb = reflected_resolvent(b);
    factor = std::max(factor, std::abs(oracle::spectral_norm(ra - rb) - 2.0 * dist(a, b)));
  }
  return {firm <= tol::kFirm && recovered <= tol::kRecovered && inconsistent == 0 && route <= tol::kSolutionSet &&
              formulas <= tol::kFormulas && factor <= tol::kFactorTwo,
          fmt("firm excess %.3g, J_C err %.3g, Z route gap %.3g (%d throws), formula gap %.3g, factor-2 err %.3g",
              firm, recovered, route, inconsistent, formulas, factor)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"two-lines DR operator reproduced exactly", two_lines_exact},
      {"coolmat family norms, products, no commuting lambda", coolmat_exact},
      {"proximality decided on 1000 n=6 matrices", proximal_decision},
      {"commuting lambdas: at most one, grid consistent", lemma_cardinality},
      {"sweep: n=3 never in D, n=1 always in D", nowhere_dense},
      {"escape from D and closedness on 100 pairs", boundary_property},
      {"two-lines iteration rate and shadow limit", iteration_rate},
      {"structural invariants on 500 symmetric pairs", structural_invariants},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s [%zu] %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    failed += !o.pass;
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
