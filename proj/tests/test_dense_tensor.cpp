// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "bordertn/dense_tensor.hpp"
#include "bordertn/structures.hpp"
#include "test_utils.hpp"

using namespace bordertn;
using testutil::brute_contract;
using testutil::random_tensor;

namespace {

DenseTensor omega(std::size_t d, const std::string& a, const std::string& b) {
  DenseTensor t(std::vector<Leg>{{a, d}, {b, d}});
  for (std::size_t i = 0; i < d; ++i) t.at({i, i}) = 1.0;
  return t;
}

}  // namespace

TEST_CASE("contract: identity leaves omega unchanged") {
  DenseTensor om = omega(2, "x", "y");
  DenseTensor id = omega(2, "yp", "z");
  DenseTensor r = contract(om, id, {{"y", "yp"}});
  CHECK(r.legs()[0].id == "x");
  CHECK(r.legs()[1].id == "z");
  CHECK(max_entry_distance(r, omega(2, "x", "z")) == 0.0);
}

TEST_CASE("contract: no pairs is the outer product") {
  DenseTensor plus(std::vector<Leg>{{"a", 2}});
  plus.at({0}) = 1.0;
  plus.at({1}) = 1.0;
  DenseTensor r = contract(plus, plus.renamed("a", "b"), {});
  CHECK(r.size() == 4);
  for (const auto& v : r.data()) CHECK(v == cx{1.0, 0.0});
}

TEST_CASE("contract: closing the three-pair cycle gives the dimension count") {
  // brute-force loop oracle over all index assignments
  DenseTensor o1 = omega(2, "a1", "b1");
  DenseTensor o2 = omega(2, "a2", "b2");
  DenseTensor o3 = omega(2, "a3", "b3");
  DenseTensor r12 = contract(o1, o2, {{"b1", "a2"}});
  DenseTensor closed = contract(r12, o3, {{"b2", "a3"}, {"a1", "b3"}});
  CHECK(closed.rank() == 0);

  cx oracle{0.0, 0.0};
  for (std::size_t x1 = 0; x1 < 2; ++x1)
    for (std::size_t x2 = 0; x2 < 2; ++x2)
      for (std::size_t x3 = 0; x3 < 2; ++x3)
        oracle += o1.at({x1, x2}) * o2.at({x2, x3}) * o3.at({x3, x1});
  CHECK(oracle == cx{2.0, 0.0});
  CHECK(std::abs(closed.data()[0] - oracle) < 1e-14);
}

TEST_CASE("contract matches the nested-loop oracle on random tensors") {
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 20; ++rep) {
    DenseTensor a = random_tensor({{"i", 2}, {"j", 3}, {"k", 2}}, rng);
    DenseTensor b = random_tensor({{"m", 3}, {"n", 2}, {"o", 3}}, rng);
    DenseTensor got = contract(a, b, {{"j", "m"}, {"k", "n"}});
    DenseTensor want = brute_contract(a, b, {{"j", "m"}, {"k", "n"}});
    CHECK(max_entry_distance(got, want) < 1e-12);
  }
}

TEST_CASE("contract: errors on mismatch and duplicate pairing") {
  DenseTensor a = omega(2, "x", "y");
  DenseTensor b = omega(3, "u", "v");
  CHECK_THROWS_AS(contract(a, b, {{"y", "u"}}), std::invalid_argument);
  DenseTensor c = omega(2, "u", "v");
  CHECK_THROWS_AS(contract(a, c, {{"y", "u"}, {"y", "v"}}), std::invalid_argument);
}

TEST_CASE("contract is associative under disjoint pairings") {
  std::mt19937_64 rng(11);
  for (int rep = 0; rep < 10; ++rep) {
    DenseTensor a = random_tensor({{"a1", 2}, {"ab", 3}}, rng);
    DenseTensor b = random_tensor({{"ba", 3}, {"bc", 2}, {"b1", 3}}, rng);
    DenseTensor c = random_tensor({{"cb", 2}, {"c1", 2}}, rng);
    DenseTensor ab_c = contract(contract(a, b, {{"ab", "ba"}}), c, {{"bc", "cb"}});
    DenseTensor bc_a = contract(a, contract(b, c, {{"bc", "cb"}}), {{"ab", "ba"}});
    CHECK(sub(ab_c, bc_a).norm() < 1e-12);
  }
}

TEST_CASE("contract is bilinear") {
  std::mt19937_64 rng(13);
  DenseTensor a1 = random_tensor({{"i", 3}, {"j", 2}}, rng);
  DenseTensor a2 = random_tensor({{"i", 3}, {"j", 2}}, rng);
  DenseTensor b = random_tensor({{"k", 2}, {"l", 3}}, rng);
  const cx s{0.7, -0.3};
  DenseTensor lhs = contract(add(scalar_mul(s, a1), a2), b, {{"j", "k"}});
  DenseTensor rhs = add(scalar_mul(s, contract(a1, b, {{"j", "k"}})),
                        contract(a2, b, {{"j", "k"}}));
  CHECK(sub(lhs, rhs).norm() < 1e-12);
}

TEST_CASE("group_legs: MaMu single legs regroup into vertex pairs") {
  // six single legs of the 2-level 3-cycle grouped pairwise equal MaMu[3](2)
  DenseTensor o1 = omega(2, "e0.a", "e0.b");
  DenseTensor o2 = omega(2, "e1.a", "e1.b");
  DenseTensor o3 = omega(2, "e2.a", "e2.b");
  DenseTensor prod = outer(outer(o1, o2), o3);
  DenseTensor grouped = group_legs(prod, {{"v0", {"e2.b", "e0.a"}},
                                          {"v1", {"e0.b", "e1.a"}},
                                          {"v2", {"e1.b", "e2.a"}}});
  DenseTensor mamu = mamu_state({2, 2, 2});
  CHECK(grouped.legs()[0].dim == 4);
  CHECK(max_entry_distance(grouped, mamu.renamed("p.0", "v0").renamed("p.1", "v1").renamed(
                                        "p.2", "v2")) == 0.0);
}

TEST_CASE("group_legs: trivial partition is the identity") {
  std::mt19937_64 rng(3);
  DenseTensor t = random_tensor({{"a", 2}, {"b", 3}, {"c", 2}}, rng);
  DenseTensor g = group_legs(t, {{"a", {"a"}}, {"b", {"b"}}, {"c", {"c"}}});
  CHECK(max_entry_distance(g, t) == 0.0);
}

TEST_CASE("group_legs then split is the identity on data") {
  std::mt19937_64 rng(5);
  DenseTensor t = random_tensor({{"a", 2}, {"b", 3}, {"c", 2}, {"d", 2}}, rng);
  DenseTensor g = group_legs(t, {{"ab", {"a", "b"}}, {"cd", {"c", "d"}}});
  DenseTensor back = split_leg(split_leg(g, "ab", {{"a", 2}, {"b", 3}}), "cd",
                               {{"c", 2}, {"d", 2}});
  CHECK(max_entry_distance(back, t) == 0.0);
}

TEST_CASE("group_legs: GHZ[4](2) in two halves has Schmidt rank 2") {
  DenseTensor ghz = ghz_state(4, 2);
  DenseTensor g = group_legs(ghz, {{"left", {"p.0", "p.1"}}, {"right", {"p.2", "p.3"}}});
  CHECK(schmidt_rank(g, {"left"}) == 2);
}

TEST_CASE("group_legs rejects non-partitions") {
  DenseTensor t = omega(2, "a", "b");
  CHECK_THROWS_AS(group_legs(t, {{"x", {"a"}}}), std::invalid_argument);
  CHECK_THROWS_AS(group_legs(t, {{"x", {"a", "a"}}, {"y", {"b"}}}), std::invalid_argument);
}

TEST_CASE("apply_local_map: identity and diagonal action") {
  DenseTensor ghz = ghz_state(3, 2);
  DenseTensor same = apply_local_map(ghz, "p.0", Matrix::Identity(2, 2));
  CHECK(max_entry_distance(same, ghz) == 0.0);

  Matrix diag = Matrix::Zero(2, 2);
  diag(0, 0) = 1.0;
  diag(1, 1) = 0.5;
  DenseTensor t = ghz;
  for (const auto& leg : {"p.0", "p.1", "p.2"}) t = apply_local_map(t, leg, diag);
  CHECK(std::abs(t.at({0, 0, 0}) - cx{1.0, 0.0}) == 0.0);
  CHECK(std::abs(t.at({1, 1, 1}) - cx{0.125, 0.0}) == 0.0);
  CHECK(std::abs(t.at({0, 1, 1})) == 0.0);
}

TEST_CASE("apply_local_map rejects shape mismatch") {
  DenseTensor ghz = ghz_state(3, 2);
  CHECK_THROWS_AS(apply_local_map(ghz, "p.0", Matrix::Identity(3, 3)), std::invalid_argument);
}

TEST_CASE("svd_truncate: no truncation reconstructs exactly") {
  std::mt19937_64 rng(17);
  DenseTensor t = random_tensor({{"a", 2}, {"b", 3}, {"c", 2}}, rng);
  SvdResult r = svd_truncate(t, {"a", "b"}, 64);
  CHECK(r.discarded_weight == 0.0);
  DenseTensor back = contract(r.u, r.sv, {{"_svd", "_svd"}});
  CHECK(max_entry_distance(back, t) < 1e-12);
}

TEST_CASE("svd_truncate: omega with chi=1 discards exactly one unit weight") {
  // the 2x2 identity flattening has singular values (1, 1)
  DenseTensor om = omega(2, "a", "b");
  SvdResult r = svd_truncate(om, {"a"}, 1);
  CHECK(r.discarded_weight == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.u.leg("_svd").dim == 1);
}

TEST_CASE("svd_truncate on lambda: rank 3 across one site") {
  // the site-0 flattening of lambda has Gram matrix diag(2, 2, 3)
  DenseTensor lam = lambda_state();
  SvdResult exact = svd_truncate(lam, {"p.0"}, 3);
  CHECK(exact.discarded_weight == doctest::Approx(0.0));
  DenseTensor back = contract(exact.u, exact.sv, {{"_svd", "_svd"}});
  CHECK(max_entry_distance(back, lam) < 1e-12);

  SvdResult cut = svd_truncate(lam, {"p.0"}, 2);
  CHECK(cut.discarded_weight == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("svd_truncate: singular values are descending, chi >= 1 enforced") {
  std::mt19937_64 rng(19);
  DenseTensor t = random_tensor({{"a", 3}, {"b", 3}}, rng);
  SvdResult r = svd_truncate(t, {"a"}, 3);
  for (Eigen::Index i = 0; i + 1 < r.singular_values.size(); ++i)
    CHECK(r.singular_values[i] >= r.singular_values[i + 1]);
  CHECK_THROWS_AS(svd_truncate(t, {"a"}, 0), std::invalid_argument);
}

TEST_CASE("sum of squared singular values equals the squared norm") {
  std::mt19937_64 rng(23);
  for (int rep = 0; rep < 10; ++rep) {
    DenseTensor t = random_tensor({{"a", 2}, {"b", 3}, {"c", 4}}, rng);
    Eigen::VectorXd s = singular_values(t, {"b"});
    double sum = 0.0;
    for (Eigen::Index i = 0; i < s.size(); ++i) sum += s[i] * s[i];
    CHECK(testutil::rel_err(sum, t.norm() * t.norm()) < 1e-12);
  }
}

TEST_CASE("schmidt_rank: GHZ, lambda, MaMu") {
  for (std::size_t k = 2; k <= 4; ++k) {
    DenseTensor ghz = ghz_state(3, k);
    CHECK(schmidt_rank(ghz, {"p.0"}) == k);
  }
  DenseTensor lam = lambda_state();
  for (const auto& leg : {"p.0", "p.1", "p.2"}) CHECK(schmidt_rank(lam, {leg}) == 3);
  DenseTensor mamu = mamu_state({2, 2, 2});
  CHECK(schmidt_rank(mamu, {"p.0"}) == 4);
}

TEST_CASE("schmidt_rank: zero tensor has rank 0") {
  DenseTensor z(std::vector<Leg>{{"a", 2}, {"b", 2}});
  CHECK(schmidt_rank(z, {"a"}) == 0);
}

TEST_CASE("schmidt_rank is invariant under invertible local maps") {
  std::mt19937_64 rng(29);
  for (int rep = 0; rep < 10; ++rep) {
    DenseTensor t = random_tensor({{"a", 3}, {"b", 4}, {"c", 2}}, rng);
    const std::size_t before = schmidt_rank(t, {"a", "c"});
    Matrix m = Matrix::Random(3, 3);
    while (std::abs(m.determinant()) < 0.1) m = Matrix::Random(3, 3);
    const std::size_t after = schmidt_rank(apply_local_map(t, "a", m), {"a", "c"});
    CHECK(before == after);
  }
}

TEST_CASE("inner products, norms, addition") {
  std::mt19937_64 rng(31);
  DenseTensor t = random_tensor({{"a", 2}, {"b", 3}}, rng);
  const cx self = inner_product(t, t);
  CHECK(self.imag() == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(self.real() >= 0.0);
  CHECK(testutil::rel_err(std::sqrt(self.real()), t.norm()) < 1e-12);

  DenseTensor ghz = ghz_state(2, 2);
  CHECK(inner_product(ghz, ghz) == cx{2.0, 0.0});

  CHECK(inner_product(lambda_state(), lambda_state()) == cx{7.0, 0.0});

  // conjugate-linear in the first argument
  const cx s{0.5, 1.5};
  DenseTensor u = random_tensor({{"a", 2}, {"b", 3}}, rng);
  CHECK(testutil::rel_err(inner_product(scalar_mul(s, t), u),
                          std::conj(s) * inner_product(t, u)) < 1e-12);
  CHECK_THROWS_AS(inner_product(t, ghz), std::invalid_argument);
}

TEST_CASE("inner product matches legs by id, not position") {
  std::mt19937_64 rng(37);
  DenseTensor t = random_tensor({{"a", 2}, {"b", 3}}, rng);
  DenseTensor perm = t.permuted({"b", "a"});
  CHECK(testutil::rel_err(inner_product(t, perm), inner_product(t, t)) < 1e-14);
}
