// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "bordertn/boundary_mps.hpp"
#include "bordertn/flops.hpp"
#include "test_utils.hpp"

using namespace bordertn;

namespace {

Matrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = cx{dist(rng), dist(rng)};
  return 0.5 * (a + a.adjoint());
}

}  // namespace

TEST_CASE("square 2x2: exact boundary contraction matches the dense oracle") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    PepsNetwork ket = random_square_network(2, 2, 2, 2, 2, seed);
    PepsNetwork bra = random_square_network(2, 2, 2, 2, 2, seed + 100);
    ContractionReport rep = contract_square(ket, bra, 0);
    const cx want = dense_sandwich(ket, bra);
    CHECK(std::abs(rep.value - want) / std::abs(want) < 1e-10);
    CHECK(rep.total_discarded_weight == 0.0);
  }
}

TEST_CASE("square 4x4 exact vs dense over 20 seeds") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    PepsNetwork ket = random_square_network(4, 4, 2, 2, 2, seed);
    PepsNetwork bra = random_square_network(4, 4, 2, 2, 2, seed + 1000);
    ContractionReport rep = contract_square(ket, bra, 0);
    const cx want = dense_sandwich(ket, bra);
    CHECK(std::abs(rep.value - want) / std::abs(want) < 1e-10);
  }
}

TEST_CASE("square: norm sandwich with large chi is exact, discarded weight monotone") {
  // chi = 1 rank-collapses the boundary MPS, shrinking every later norm,
  // so the raw absolute accounting can undercut chi = 2 there; monotonicity
  // is asserted from chi = 2 up
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    PepsNetwork net = random_square_network(4, 4, 2, 2, 2, seed);
    const cx want = dense_sandwich(net, net);
    CHECK(want.real() > 0.0);

    std::vector<double> weights;
    for (std::size_t chi : {2, 4, 8, 16, 64}) {
      ContractionReport rep = contract_square(net, net, chi);
      weights.push_back(rep.total_discarded_weight);
      if (chi >= 16) {
        // chi >= product of crossing bond dims: exact
        CHECK(std::abs(rep.value - want) / std::abs(want) < 1e-10);
        CHECK(rep.total_discarded_weight < 1e-12 * std::abs(want));
      }
    }
    for (std::size_t i = 0; i + 1 < weights.size(); ++i)
      CHECK(weights[i + 1] <= weights[i] * (1.0 + 1e-9) + 1e-12);
  }
}

TEST_CASE("square: truncated values converge to the dense oracle as chi grows") {
  PepsNetwork net = random_square_network(4, 4, 2, 2, 2, 7);
  const cx want = dense_sandwich(net, net);
  double prev_err = 1e300;
  for (std::size_t chi : {2, 4, 16}) {
    ContractionReport rep = contract_square(net, net, chi);
    const double err = std::abs(rep.value - want) / std::abs(want);
    CHECK(err <= prev_err * (1.0 + 1e-6) + 1e-12);
    prev_err = err;
  }
  CHECK(prev_err < 1e-10);
}

TEST_CASE("product-state network: value is the product of local overlaps") {
  const std::size_t lx = 3, ly = 3, d = 4;
  PepsNetwork ket = product_square_network(lx, ly, d, 5);
  PepsNetwork bra = product_square_network(lx, ly, d, 6);
  flops::reset();
  ContractionReport rep = contract_square(ket, bra, 0);
  cx want{1.0, 0.0};
  for (const auto& row : ket.rows)
    for (const auto& sid : row) {
      cx o{0.0, 0.0};
      const auto& k = ket.site(sid).tensor.data();
      const auto& b = bra.site(sid).tensor.data();
      for (std::size_t i = 0; i < d; ++i) o += std::conj(b[i]) * k[i];
      want *= o;
    }
  CHECK(std::abs(rep.value - want) / std::abs(want) < 1e-12);

  // scalar-overlap cost: the ket and bra absorptions each cost d multiplies
  // per site, so the count is Theta(sites * d)
  const std::uint64_t sites = lx * ly;
  CHECK(rep.multiply_count >= sites * d);
  CHECK(rep.multiply_count <= 3 * sites * d + 8 * sites);
}

TEST_CASE("square with a product-operator overlay matches the dense oracle") {
  std::mt19937_64 rng(99);
  PepsNetwork net = random_square_network(3, 3, 2, 2, 2, 42);
  SiteOperators ops;
  for (const auto& row : net.rows)
    for (const auto& sid : row) ops.emplace(sid, random_hermitian(2, rng));
  ContractionReport rep = contract_square(net, net, 0, ops);
  const cx want = dense_sandwich(net, net, ops);
  CHECK(std::abs(rep.value - want) / std::abs(want) < 1e-10);
  // Hermitian product operator on <T|O|T> gives a real value
  CHECK(std::abs(rep.value.imag()) < 1e-10 * std::abs(rep.value));
}

TEST_CASE("kagome patches: exact contraction matches the dense oracle") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    PepsNetwork ket = random_kagome_network(2, 2, {2, 2, 2}, {2, 2, 2}, 2, seed);
    PepsNetwork bra = random_kagome_network(2, 2, {2, 2, 2}, {2, 2, 2}, 2, seed + 500);
    ContractionReport rep = contract_kagome(ket, bra, 0);
    const cx want = dense_sandwich(ket, bra);
    CHECK(std::abs(rep.value - want) / std::abs(want) < 1e-10);
  }
}

TEST_CASE("kagome 1x2 patch (disjoint triangles) matches dense") {
  PepsNetwork ket = random_kagome_network(1, 2, {2, 3, 2}, {2, 2, 2}, 2, 3);
  ContractionReport rep = contract_kagome(ket, ket, 0);
  const cx want = dense_sandwich(ket, ket);
  CHECK(std::abs(rep.value - want) / std::abs(want) < 1e-10);
}

TEST_CASE("kagome with layer-distinct bond dimensions") {
  // ket layer (2,2,3) bonds against a bra layer with (3,2,2): only the
  // physical dimensions need to agree
  PepsNetwork ket = random_kagome_network(2, 2, {2, 2, 3}, {2, 2, 3}, 2, 11);
  PepsNetwork bra = random_kagome_network(2, 2, {3, 2, 2}, {2, 3, 2}, 2, 12);
  ContractionReport rep = contract_kagome(ket, bra, 0);
  const cx want = dense_sandwich(ket, bra);
  CHECK(std::abs(rep.value - want) / std::abs(want) < 1e-10);
}

TEST_CASE("kagome truncation: discarded weight monotone in chi") {
  // chi = 1 collapses the boundary MPS to rank one, which shrinks every
  // later norm and can undercut the chi = 2 total in the raw absolute
  // accounting; the sweep starts at 2
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    PepsNetwork net = random_kagome_network(2, 2, {2, 2, 2}, {2, 2, 2}, 2, seed);
    std::vector<double> weights;
    for (std::size_t chi : {2, 4, 8, 16, 32}) {
      ContractionReport rep = contract_kagome(net, net, chi);
      weights.push_back(rep.total_discarded_weight);
    }
    for (std::size_t i = 0; i + 1 < weights.size(); ++i)
      CHECK(weights[i + 1] <= weights[i] * (1.0 + 1e-9) + 1e-12);
  }
  PepsNetwork net = random_kagome_network(2, 3, {2, 2, 2}, {2, 2, 2}, 2, 21);
  ContractionReport exact = contract_kagome(net, net, 0);
  ContractionReport big = contract_kagome(net, net, 64);
  CHECK(std::abs(big.value - exact.value) / std::abs(exact.value) < 1e-10);
}

TEST_CASE("RVB network: the squared norm is 7 per triangle") {
  // 1x2 patch: dense oracle and engine agree with 7^2
  PepsNetwork p12 = rvb_kagome_network(1, 2);
  ContractionReport rep12 = contract_kagome(p12, p12, 0);
  const cx dense12 = dense_sandwich(p12, p12);
  CHECK(std::abs(rep12.value - cx{49.0, 0.0}) < 1e-10 * 49.0);
  CHECK(std::abs(dense12 - cx{49.0, 0.0}) < 1e-10 * 49.0);

  // 2x2 patch: 5 triangles
  PepsNetwork p22 = rvb_kagome_network(2, 2);
  ContractionReport rep22 = contract_kagome(p22, p22, 0);
  const double want = std::pow(7.0, 5.0);
  CHECK(std::abs(rep22.value - cx{want, 0.0}) < 1e-10 * want);
}

TEST_CASE("flop counter: categories populated, reset works") {
  flops::reset();
  CHECK(flops::snapshot().total() == 0);
  PepsNetwork net = random_square_network(4, 4, 2, 2, 2, 1);
  ContractionReport rep = contract_square(net, net, 4);
  CHECK(rep.counts[flops::Cat::ket] > 0);
  CHECK(rep.counts[flops::Cat::bra] > 0);
  CHECK(rep.counts[flops::Cat::gather] > 0);
  CHECK(rep.counts[flops::Cat::svd] > 0);
  CHECK(rep.counts[flops::Cat::zip] > 0);
  CHECK(rep.multiply_count == rep.counts.total());
  CHECK(rep.model_cost > 0.0);
}

TEST_CASE("cost_square: the worked example evaluates to 6144") {
  CostModel m{1.0, 1.0};
  CHECK(cost_square(m, 4, 2, 2, 2) == doctest::Approx(6144.0));
}

TEST_CASE("cost_kagome collapses to the symmetric bound when D1=D3<=D2") {
  CostModel m{1.3, 0.9};
  for (double d1 : {2.0, 3.0}) {
    for (double d2 : {3.0, 4.0}) {
      if (d1 > d2) continue;
      KagomeDims up;
      up.D = {d1, d2, d1};
      up.K = up.D;
      const double chi = 5.0, d = 2.0;
      const double got = cost_kagome(m, chi, d, up, up);
      const double want = (m.c_svd + m.c_mm) * chi * chi * chi * d1 * d1 * d2 * d2 +
                          2.0 * m.c_mm * chi * chi * d1 * d1 * d1 * d2 * d2 * d2 * d;
      CHECK(got == doctest::Approx(want));
    }
  }
}

TEST_CASE("cost_kagome with uniform dims reduces to the literature scaling") {
  CostModel m{1.0, 1.0};
  for (double D : {2.0, 3.0}) {
    KagomeDims u;
    u.D = {D, D, D};
    u.K = {D, D, D};
    const double chi = 4.0, d = 2.0;
    const double got = cost_kagome(m, chi, d, u, u);
    const double want = 2.0 * chi * chi * chi * std::pow(D, 4.0) +
                        2.0 * chi * chi * std::pow(D, 6.0) * d;
    CHECK(got == doctest::Approx(want));
  }
}

TEST_CASE("cost_exact_rvb: D=3 restriction vs D=2 degeneration comparison") {
  // model ratio >= (3/2)^{4L} / (2eL+1), the paper's exponential improvement
  for (std::size_t L = 2; L <= 6; ++L) {
    const double c3 = cost_exact_rvb_restriction(L, 3.0, 2.0);
    const double c2 = cost_exact_rvb_degeneration(L, 2.0, 2.0, 2);
    const double ratio = c3 / c2;
    const double bound = std::pow(1.5, 4.0 * L) / (2.0 * 2.0 * L + 1.0);
    CHECK(ratio >= bound);
  }
}

TEST_CASE("network validation rejects inconsistent inputs") {
  PepsNetwork net = random_square_network(2, 2, 2, 2, 2, 0);
  PepsNetwork other = random_square_network(3, 2, 2, 2, 2, 0);
  CHECK_THROWS_AS(contract_square(net, other, 0), std::invalid_argument);

  PepsNetwork broken = net;
  broken.bonds.pop_back();
  CHECK_THROWS_AS(contract_square(broken, broken, 0), std::invalid_argument);

  PepsNetwork kag = random_kagome_network(1, 2, {2, 2, 2}, {2, 2, 2}, 2, 0);
  CHECK_THROWS_AS(contract_square(kag, kag, 0), std::invalid_argument);
}
