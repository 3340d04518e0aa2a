#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"

#include "drlab/drcalc.hpp"
#include "drlab/lab.hpp"

using namespace drlab;
using support::error_code_of;

namespace {

// A pair inside D: resolvents share the eigenbasis q.
std::pair<LinearRelation, LinearRelation> commuting_symmetric_pair(Rng& rng, std::size_t n) {
  const Matrix q = haar_orthogonal(n, rng);
  std::vector<double> d(n), e(n);
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = rng.uniform();
    e[i] = rng.uniform();
  }
  return {symmetric_relation_from_spectrum(q, d), symmetric_relation_from_spectrum(q, e)};
}

}  // namespace

TEST_CASE("rng streams") {
  Rng a(5), b(5);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  Rng t0 = Rng::for_trial(5, 0), t1 = Rng::for_trial(5, 1);
  CHECK(t0.next_u64() != t1.next_u64());
  Rng u(9);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.uniform();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
}

TEST_CASE("haar_orthogonal") {
  Rng rng(401);
  for (std::size_t n = 1; n <= 6; ++n) {
    const Matrix q = haar_orthogonal(n, rng);
    CHECK(max_abs_diff(q.transpose() * q, Matrix::identity(n)) <= 1e-13);
  }
}

TEST_CASE("sampling symmetric relations") {
  Rng rng(411);
  const Matrix q = haar_orthogonal(3, rng);
  const std::vector<double> ones(3, 1.0), zeros(3, 0.0);

  const LinearRelation zero_op = symmetric_relation_from_spectrum(q, ones);
  CHECK(max_abs_diff(resolvent_of(zero_op).matrix(), Matrix::identity(3)) <= 1e-14);
  const auto m = as_matrix(zero_op);
  REQUIRE(m.has_value());
  CHECK(max_abs(*m) <= 1e-14);

  // J = 0 is the relation {0} x R^n.
  const LinearRelation cone = symmetric_relation_from_spectrum(q, zeros);
  CHECK(max_abs(cone.points()) == 0.0);
  CHECK(cone.graph_dim() == 3);

  for (std::size_t n = 1; n <= 6; ++n) {
    const LinearRelation a = sample_symmetric_relation(n, rng);
    CHECK(is_symmetric(a));
    CHECK(is_maximally_monotone(a));
  }

  CHECK(error_code_of([&] { return symmetric_relation_from_spectrum(q, std::vector<double>{0.5, 1.5, 0.0}); }) ==
        Errc::InvalidInput);
  CHECK(error_code_of([&] { return symmetric_relation_from_spectrum(q, std::vector<double>{0.5}); }) ==
        Errc::DimensionMismatch);
  CHECK(error_code_of([&] { return sample_symmetric_relation(0, rng); }) == Errc::DimensionTooSmall);
}

TEST_CASE("in_D") {
  Rng rng(421);
  const LinearRelation a = sample_symmetric_relation(3, rng);
  CHECK(in_D(a, a));
  CHECK(reflected_commutator_norm(a, a) <= 1e-14);
  const LinearRelation b = sample_symmetric_relation(3, rng);
  CHECK_FALSE(in_D(a, b));
  CHECK_FALSE(in_D(a, from_matrix(Matrix{{0.0, 1.0, 0.0}, {-1.0, 0.0, 0.0}, {0.0, 0.0, 0.0}})));
  CHECK_FALSE(in_D(a, sample_symmetric_relation(2, rng)));
}

TEST_CASE("genericity_sweep") {
  SUBCASE("one dimension is always in D") {
    SweepConfig cfg;
    cfg.n = 1;
    cfg.trials = 200;
    const auto recs = genericity_sweep(cfg);
    CHECK(fraction_in_D(recs) == 1.0);
    for (const auto& r : recs) {
      CHECK(r.proximal);
      CHECK_FALSE(r.dist_to_perturbed.has_value());
    }
  }
  SUBCASE("three dimensions are almost never in D") {
    SweepConfig cfg;
    cfg.n = 3;
    cfg.trials = 500;
    cfg.seed = 17;
    const auto recs = genericity_sweep(cfg);
    CHECK(recs.size() == 500);
    CHECK(fraction_in_D(recs) == 0.0);
    for (std::size_t i = 0; i < recs.size(); ++i) {
      CHECK(recs[i].trial == i);
      CHECK(recs[i].in_D == recs[i].proximal);
      CHECK(recs[i].in_D == (recs[i].commutator_norm <= cfg.commute_tol));
    }
  }
  SUBCASE("surrogate soundness against independently computed diagnostics") {
    SweepConfig cfg;
    cfg.n = 3;
    cfg.trials = 50;
    cfg.seed = 3;
    const auto recs = genericity_sweep(cfg);
    for (const auto& r : recs) {
      Rng rng = Rng::for_trial(cfg.seed, r.trial);
      const LinearRelation a = sample_symmetric_relation(cfg.n, rng);
      const LinearRelation b = sample_symmetric_relation(cfg.n, rng);
      const Eigen::MatrixXd ra = oracle::to_eigen(reflected_resolvent(a));
      const Eigen::MatrixXd rb = oracle::to_eigen(reflected_resolvent(b));
      const double comm = oracle::spectral_norm(oracle::from_eigen(ra * rb - rb * ra));
      CHECK(std::abs(comm - r.commutator_norm) <= 1e-12);
      CHECK(r.in_D == in_D(a, b, cfg.commute_tol));
    }
  }
  SUBCASE("determinism and thread-count invariance") {
    SweepConfig cfg;
    cfg.n = 4;
    cfg.trials = 300;
    cfg.seed = 0xDEADBEEFCAFEULL;
    const auto one = genericity_sweep(cfg, 1);
    CHECK(genericity_sweep(cfg, 1) == one);
    CHECK(genericity_sweep(cfg, 4) == one);
    CHECK(genericity_sweep(cfg, 64) == one);
    cfg.seed += 1;
    CHECK_FALSE(genericity_sweep(cfg, 1) == one);
  }
  SUBCASE("configuration validation") {
    SweepConfig cfg;
    cfg.trials = 0;
    CHECK(error_code_of([&] { return genericity_sweep(cfg); }) == Errc::InvalidInput);
    cfg = SweepConfig{};
    cfg.lambda_escape = 1.0;
    CHECK(error_code_of([&] { return genericity_sweep(cfg); }) == Errc::InvalidInput);
    cfg = SweepConfig{};
    cfg.commute_tol = 0.0;
    CHECK(error_code_of([&] { cfg.validate(); }) == Errc::InvalidInput);
  }
  CHECK(fraction_in_D({}) == 0.0);
}

TEST_CASE("escape_from_D") {
  SUBCASE("from the zero pair") {
    const LinearRelation zero = from_matrix(Matrix(2, 2));
    const double lambda = 1e-3;
    const EscapeReport r = escape_from_D(zero, zero, lambda);
    CHECK(r.commutator_norm > 0.0);
    // [R_λ, S_λ] = λ² [R1, S1], whose norm is 2λ².
    CHECK(std::abs(r.commutator_norm - 2.0 * lambda * lambda) <= 1e-15);
    // Each resolvent moves by exactly λ here.
    CHECK(std::abs(r.dist_a - lambda) <= 1e-15);
    CHECK(r.dist <= 2.0 * lambda * (1.0 + 1e-12));
    CHECK(r.dist == r.dist_a + r.dist_b);
    CHECK_FALSE(r.retried);
    CHECK(r.lambda_used == lambda);
    CHECK(is_symmetric(r.a_lambda));
    CHECK(is_maximally_monotone(r.b_lambda));
    CHECK_FALSE(in_D(r.a_lambda, r.b_lambda));
  }
  SUBCASE("distance shrinks with lambda") {
    const LinearRelation zero = from_matrix(Matrix(3, 3));
    double prev = 1.0;
    for (double lambda : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5}) {
      const double d = escape_from_D(zero, zero, lambda, 1e-14).dist;
      CHECK(d < prev);
      CHECK(d <= 2.0 * lambda + 1e-15);
      prev = d;
    }
  }
  SUBCASE("a commutator of order lambda squared can stay under the threshold") {
    const LinearRelation zero = from_matrix(Matrix(2, 2));
    CHECK(error_code_of([&] { return escape_from_D(zero, zero, 1e-5); }) == Errc::EscapeFailed);
  }
  SUBCASE("random pairs in D") {
    Rng rng(431);
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t n = 2 + trial % 3;
      const auto [a, b] = commuting_symmetric_pair(rng, n);
      REQUIRE(in_D(a, b));
      const double lambda = 1e-3;
      const EscapeReport r = escape_from_D(a, b, lambda);
      CHECK(r.commutator_norm > 1e-6 * lambda);
      CHECK(r.dist <= 4.0 * lambda);
      CHECK(is_symmetric(r.a_lambda));
      CHECK(is_symmetric(r.b_lambda));
      CHECK(is_maximally_monotone(r.a_lambda));
      CHECK(is_maximally_monotone(r.b_lambda));
      CHECK_FALSE(is_proximal(dr_operator(r.a_lambda, r.b_lambda).T, r.commute_tol / 2.0));
    }
  }
  SUBCASE("errors") {
    Rng rng(441);
    const LinearRelation zero2 = from_matrix(Matrix(2, 2));
    const LinearRelation zero1 = from_matrix(Matrix(1, 1));
    CHECK(error_code_of([&] { return escape_from_D(zero1, zero1, 1e-3); }) == Errc::DimensionTooSmall);
    CHECK(error_code_of([&] { return escape_from_D(zero2, zero1, 1e-3); }) == Errc::DimensionMismatch);
    CHECK(error_code_of([&] { return escape_from_D(zero2, zero2, 0.0); }) == Errc::PreconditionViolated);
    const LinearRelation a = sample_symmetric_relation(2, rng), b = sample_symmetric_relation(2, rng);
    CHECK(error_code_of([&] { return escape_from_D(a, b, 1e-3); }) == Errc::NotInD);
  }
}

TEST_CASE("closedness_probe") {
  SUBCASE("zero pair blended with a commuting axis pair") {
    const LinearRelation zero = from_matrix(Matrix(2, 2));
    const std::pair<LinearRelation, LinearRelation> axes{normal_cone_of_subspace(Matrix{{1.0}, {0.0}}),
                                                         normal_cone_of_subspace(Matrix{{0.0}, {1.0}})};
    const ClosednessReport r = closedness_probe(zero, zero, 20, kDefaultCommuteTol, axes);
    CHECK(r.passed);
    CHECK(r.steps.size() == 20);
    CHECK(r.steps.back().dist_to_limit <= r.steps.front().dist_to_limit / 20.0 + 1e-12);
  }
  SUBCASE("constant sequence") {
    Rng rng(451);
    const LinearRelation a = sample_symmetric_relation(4, rng);
    const ClosednessReport r = closedness_probe(a, a, 10, kDefaultCommuteTol, std::pair{a, a});
    CHECK(r.passed);
    for (const auto& s : r.steps) CHECK(s.dist_to_limit <= 1e-14);
  }
  SUBCASE("diagonal family") {
    const std::vector<double> d{0.2, 0.7, 1.0}, e{0.0, 0.4, 0.9};
    const std::vector<double> dp{0.9, 0.1, 0.5}, ep{0.3, 0.3, 0.8};
    const Matrix id = Matrix::identity(3);
    const ClosednessReport r = closedness_probe(
        symmetric_relation_from_spectrum(id, d), symmetric_relation_from_spectrum(id, e), 25, kDefaultCommuteTol,
        std::pair{symmetric_relation_from_spectrum(id, dp), symmetric_relation_from_spectrum(id, ep)});
    CHECK(r.all_terms_in_D);
    CHECK(r.dist_to_zero);
    CHECK(r.limit_proximal);
    CHECK(r.passed);
  }
  SUBCASE("random pairs in D with the default partner") {
    Rng rng(461);
    for (int trial = 0; trial < 30; ++trial) {
      const auto [a, b] = commuting_symmetric_pair(rng, 2 + trial % 4);
      CHECK(closedness_probe(a, b, 10).passed);
    }
  }
  SUBCASE("errors") {
    Rng rng(471);
    const LinearRelation a = sample_symmetric_relation(2, rng), b = sample_symmetric_relation(2, rng);
    CHECK(error_code_of([&] { return closedness_probe(a, b, 5); }) == Errc::NotInD);
    CHECK(error_code_of([&] { return closedness_probe(a, a, 0); }) == Errc::InvalidInput);
  }
}
