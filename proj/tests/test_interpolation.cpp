// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numbers>
#include <random>

#include "bordertn/interpolation.hpp"
#include "bordertn/structures.hpp"
#include "bordertn/zoo.hpp"
#include "test_utils.hpp"

using namespace bordertn;

namespace {

LiftedDegeneration rvb_patch_lift() {
  return lift(lambda_degeneration_222(), kagome_lambda_structure(1, 2));
}

EntanglementStructure w_target_structure(std::size_t L) {
  EntanglementStructure s;
  for (std::size_t i = 0; i < L; ++i) s.graph.vertices.push_back("w" + std::to_string(i));
  s.graph.edges = {{"p", s.graph.vertices}};
  s.plaquettes.emplace("p", PlaquetteSpec{PlaquetteSpec::Custom{w_state(L)}});
  for (std::size_t i = 0; i < L; ++i)
    s.vertex_slots[s.graph.vertices[i]] = {{"p", i}};
  return s;
}

Matrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = cx{dist(rng), dist(rng)};
  return 0.5 * (a + a.adjoint());
}

}  // namespace

TEST_CASE("lagrange_weights: points {1,2,3} give {3,-3,1}") {
  auto w = lagrange_weights({cx{1, 0}, cx{2, 0}, cx{3, 0}});
  CHECK(std::abs(w[0] - cx{3, 0}) < 1e-14);
  CHECK(std::abs(w[1] - cx{-3, 0}) < 1e-14);
  CHECK(std::abs(w[2] - cx{1, 0}) < 1e-14);
}

TEST_CASE("lagrange_weights: a single point has weight 1") {
  auto w = lagrange_weights({cx{0.3, 0.2}});
  CHECK(std::abs(w[0] - cx{1, 0}) < 1e-15);
}

TEST_CASE("lagrange_weights: duplicate or zero points rejected") {
  CHECK_THROWS_AS(lagrange_weights({cx{1, 0}, cx{1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(lagrange_weights({cx{0, 0}, cx{1, 0}}), std::invalid_argument);
}

TEST_CASE("roots-of-unity weights interpolate x^n to 0 at the origin") {
  // polynomial oracle: p(x) = x^n has p(0) = 0
  for (int n = 2; n <= 8; ++n) {
    const double r = 0.7;
    std::vector<cx> pts(n + 1);
    for (int i = 0; i <= n; ++i)
      pts[i] = std::polar(r, 2.0 * std::numbers::pi * i / (n + 1.0));
    auto w = lagrange_weights(pts);
    cx acc{0, 0};
    for (int i = 0; i <= n; ++i) acc += w[i] * std::pow(pts[i], n);
    CHECK(std::abs(acc) < 1e-12 * std::pow(r, -n));
  }
}

TEST_CASE("plan weights satisfy the partition of unity") {
  // complex plans at any degree; real plans through degree 8 (the largest
  // the acceptance suite instantiates). Beyond that the extrapolation
  // weights exceed 1e6 and the identity only holds to the scale-aware
  // double-representation limit.
  for (int degree : {1, 3, 5, 8, 12, 16}) {
    InterpolationPlan plan = make_plan(SampleMode::kComplex, degree);
    cx s{0, 0};
    for (auto w : plan.weights) s += w;
    CHECK(std::abs(s - cx{1, 0}) <= 1e-12);
  }
  for (int degree : {1, 3, 5}) {
    InterpolationPlan plan = make_plan(SampleMode::kReal, degree);
    cx s{0, 0};
    for (auto w : plan.weights) s += w;
    CHECK(std::abs(s - cx{1, 0}) <= 1e-12);
  }
  for (int degree : {8, 10, 12}) {
    InterpolationPlan plan = make_plan(SampleMode::kReal, degree);
    cx s{0, 0};
    for (auto w : plan.weights) s += w;
    CHECK(std::abs(s - cx{1, 0}) <=
          64.0 * plan.weights.size() * 1.2e-16 * plan.condition());
  }
}

TEST_CASE("reconstruct_state: a restriction (degree 0) needs one point") {
  LiftedDegeneration lifted = lift(lambda_restriction_223(), [] {
    EntanglementStructure s;
    s.graph.vertices = {"p.0", "p.1", "p.2"};
    s.graph.edges = {{"p", {"p.0", "p.1", "p.2"}}};
    s.plaquettes.emplace("p", PlaquetteSpec{PlaquetteSpec::Lambda{}});
    s.vertex_slots = {{"p.0", {{"p", 0}}}, {"p.1", {{"p", 1}}}, {"p.2", {{"p", 2}}}};
    return s;
  }());
  CHECK(lifted.degree == 0);
  ReconstructionResult r = reconstruct_state(lifted);
  CHECK(r.plan.points.size() == 1);
  CHECK(r.summands.size() == 1);
  DenseTensor lam = make_plaquette(PlaquetteSpec{PlaquetteSpec::Lambda{}}, "p");
  CHECK(sub(r.state, lam).norm() < 1e-12);
}

TEST_CASE("reconstruct_state: W(L) from L samples of the product family") {
  for (std::size_t L : {4, 5, 6}) {
    LiftedDegeneration lifted = lift(w_border_mps(L), w_target_structure(L));
    CHECK(lifted.degree == static_cast<int>(L) - 1);
    ReconstructionResult r = reconstruct_state(lifted);
    CHECK(r.plan.points.size() == L);
    DenseTensor w = w_state(L);
    CHECK(sub(r.state, w).norm() / w.norm() <= 1e-10);
    CHECK(r.holdout_residual <= 1e-8);
  }
}

TEST_CASE("reconstruct_state: the RVB 2-triangle patch from 5 samples") {
  LiftedDegeneration lifted = rvb_patch_lift();
  CHECK(lifted.degree == 4);
  ReconstructionResult r = reconstruct_state(lifted);
  CHECK(r.plan.points.size() == 5);
  DenseTensor dense = structure_tensor(kagome_lambda_structure(1, 2));
  CHECK(sub(r.state, dense).norm() / dense.norm() <= 1e-8);
  CHECK(r.holdout_residual <= 1e-8);
}

TEST_CASE("every summand W_i is itself a restriction of the source structure") {
  LiftedDegeneration lifted = rvb_patch_lift();
  ReconstructionResult r = reconstruct_state(lifted);
  for (std::size_t i = 0; i < r.summands.size(); ++i) {
    auto maps = constant_family_at(lifted, r.plan.points[i], r.plan.weights[i]);
    DenseTensor w = apply_restriction(lifted.source_tensor, maps);
    CHECK(sub(w, r.summands[i]).norm() <= 1e-12 * std::max(1.0, r.summands[i].norm()));
  }
}

TEST_CASE("reconstruct_state detects an underestimated degree") {
  LiftedDegeneration lifted = rvb_patch_lift();
  lifted.degree = 2;  // true degree is 4
  CHECK_THROWS_AS(reconstruct_state(lifted), std::runtime_error);
}

TEST_CASE("expectation_real: degree 0 reduces to a single contraction") {
  LiftedDegeneration lifted = lift(lambda_restriction_223(), [] {
    EntanglementStructure s;
    s.graph.vertices = {"p.0", "p.1", "p.2"};
    s.graph.edges = {{"p", {"p.0", "p.1", "p.2"}}};
    s.plaquettes.emplace("p", PlaquetteSpec{PlaquetteSpec::Lambda{}});
    s.vertex_slots = {{"p.0", {{"p", 0}}}, {"p.1", {{"p", 1}}}, {"p.2", {{"p", 2}}}};
    return s;
  }());
  ExpectationResult r = expectation_real(lifted, {});
  CHECK(r.plan.points.size() == 1);
  CHECK(std::abs(r.value - cx{7.0, 0.0}) < 1e-10);  // <lambda|lambda> = 7
}

TEST_CASE("expectation_real on the RVB patch matches the dense oracle") {
  LiftedDegeneration lifted = rvb_patch_lift();
  DenseTensor dense = structure_tensor(kagome_lambda_structure(1, 2));
  std::mt19937_64 rng(123);

  for (int rep = 0; rep < 10; ++rep) {
    ProductObservable obs;
    for (const auto& v : lifted.source.graph.vertices) obs.emplace(v, random_hermitian(3, rng));
    ExpectationResult r = expectation_real(lifted, obs);
    CHECK(r.plan.points.size() == 9);  // 2eF + 1 with e = F = 2
    const cx want = dense_expectation(dense, obs);
    CHECK(std::abs(r.value - want) / std::abs(want) <= 1e-8);
    CHECK(r.holdout_residual <= 1e-8);
    // Hermitian observables give real expectations
    CHECK(std::abs(r.value.imag()) <= 1e-8 * std::abs(r.value));
  }
}

TEST_CASE("expectation_real: the identity observable returns the squared norm") {
  LiftedDegeneration lifted = rvb_patch_lift();
  DenseTensor dense = structure_tensor(kagome_lambda_structure(1, 2));
  ExpectationResult r = expectation_real(lifted, {});
  const double want = dense.norm() * dense.norm();  // 7^2 = 49
  CHECK(testutil::rel_err(r.value.real(), want) <= 1e-8);
  CHECK(want == doctest::Approx(49.0));
}

TEST_CASE("expectation_complex on roots of unity matches the dense oracle") {
  LiftedDegeneration lifted = rvb_patch_lift();
  DenseTensor dense = structure_tensor(kagome_lambda_structure(1, 2));
  std::mt19937_64 rng(321);
  for (int rep = 0; rep < 5; ++rep) {
    ProductObservable obs;
    for (const auto& v : lifted.source.graph.vertices) obs.emplace(v, random_hermitian(3, rng));
    ExpectationResult r = expectation_complex(lifted, obs);
    CHECK(r.plan.points.size() == 9);
    const cx want = dense_expectation(dense, obs);
    CHECK(std::abs(r.value - want) / std::abs(want) <= 1e-8);
  }
}

TEST_CASE("expectation_complex agrees with expectation_real") {
  LiftedDegeneration lifted = rvb_patch_lift();
  std::mt19937_64 rng(55);
  ProductObservable obs;
  for (const auto& v : lifted.source.graph.vertices) obs.emplace(v, random_hermitian(3, rng));
  ExpectationResult a = expectation_real(lifted, obs);
  ExpectationResult b = expectation_complex(lifted, obs);
  CHECK(std::abs(a.value - b.value) <= 1e-8 * std::abs(a.value));
}

TEST_CASE("complex-mode weights are perfectly conditioned") {
  LiftedDegeneration lifted = rvb_patch_lift();
  ExpectationResult r = expectation_complex(lifted, {});
  CHECK(r.condition <= 1.0);  // roots of unity: gamma_i = 1/n
  CHECK(r.condition < kConditionWarnThreshold);
}

TEST_CASE("oversampling (least squares) stays within 1e-8 of exact interpolation") {
  LiftedDegeneration lifted = rvb_patch_lift();
  std::mt19937_64 rng(77);
  ProductObservable obs;
  for (const auto& v : lifted.source.graph.vertices) obs.emplace(v, random_hermitian(3, rng));
  ExpectationResult exact = expectation_complex(lifted, obs);
  const cx ls = expectation_least_squares(lifted, obs, SampleMode::kComplex, 18);
  CHECK(std::abs(ls - exact.value) <= 1e-8 * std::abs(exact.value));
}

TEST_CASE("dense_expectation validates observable shapes") {
  DenseTensor lam = lambda_state();
  ProductObservable bad{{"p.0", Matrix::Identity(2, 2)}};
  CHECK_THROWS_AS(dense_expectation(lam, bad), std::invalid_argument);
}
