// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bordertn/dense_tensor.hpp"
#include "bordertn/flops.hpp"

namespace bordertn {

enum class Schedule { kSquare, kKagome };

struct PepsSite {
  std::string id;
  DenseTensor tensor;                   // virtual + physical legs
  std::vector<std::string> physical;    // physical leg ids of `tensor`
};

/// Undirected bond between legs of two sites.
struct PepsBond {
  std::string site_a, leg_a, site_b, leg_b;
};

/// Per-layer bond dimensions entering the kagome cost model: up-triangle
/// dims K[0..2] and down-triangle dims D[0..2].
struct KagomeDims {
  std::array<double, 3> K{1, 1, 1};
  std::array<double, 3> D{1, 1, 1};
};

/// A PEPS layer organized into sweep rows. Bonds may connect sites within
/// one row (horizontal) or in adjacent rows (vertical). Physical legs are
/// contracted against the other layer.
struct PepsNetwork {
  Schedule schedule = Schedule::kSquare;
  std::vector<std::vector<std::string>> rows;
  std::vector<PepsSite> sites;
  std::vector<PepsBond> bonds;

  // metadata for the cost model; zero when not applicable
  double model_d1 = 0, model_d2 = 0, model_phys = 0;
  std::optional<KagomeDims> kagome_dims;

  const PepsSite& site(const std::string& id) const;
  std::size_t row_of(const std::string& id) const;
  void validate() const;
};

struct ContractionReport {
  cx value{0.0, 0.0};
  double total_discarded_weight = 0.0;
  std::uint64_t multiply_count = 0;
  flops::Counts counts;
  double model_cost = 0.0;
  std::size_t chi = 0;  // 0 = unbounded (exact mode)
  std::string schedule;
  std::size_t max_bond_reached = 0;
  std::size_t absorbed_sites = 0;
};

/// Product operator overlay: per-site matrix applied to the ket physical
/// space (identity where absent). Sites with several physical legs take the
/// operator on their combined physical space.
using SiteOperators = std::map<std::string, Matrix>;

/// Boundary-MPS value of <bra|O|ket>, sweeping from both lattice
/// boundaries and meeting in the middle. chi = 0 keeps bonds exact and
/// skips every truncation SVD. Per absorbed site the schedule is: absorb
/// the carry-over, absorb the ket tensor, absorb the bra tensor,
/// SVD-compress to chi.
ContractionReport contract_boundary(const PepsNetwork& ket, const PepsNetwork& bra,
                                    std::size_t chi, const SiteOperators& ops = {});

/// Same engine with a schedule check.
ContractionReport contract_square(const PepsNetwork& ket, const PepsNetwork& bra,
                                  std::size_t chi, const SiteOperators& ops = {});
ContractionReport contract_kagome(const PepsNetwork& ket, const PepsNetwork& bra,
                                  std::size_t chi, const SiteOperators& ops = {});

/// Independent oracle: folds all ket sites into one dense state (likewise
/// for bra) and takes the inner product. Only viable at desk scale.
cx dense_sandwich(const PepsNetwork& ket, const PepsNetwork& bra,
                  const SiteOperators& ops = {});

// ---- cost model (Appendix A) ----------------------------------------------

struct CostModel {
  double c_mm = 1.0;
  double c_svd = 1.0;
};

/// Per-MPO-tensor bulk cost on the square lattice:
/// (C_MM + C_SVD) chi^3 D1^2 D2^2 + 2 C_MM chi^2 D1^3 D2^3 d.
double cost_square(const CostModel& m, double chi, double d1, double d2, double d);

/// Kagome upper bound with layer-distinct assignments (up = ket layer,
/// down = bra layer), the max running over the three contraction steps.
double cost_kagome(const CostModel& m, double chi, double d, const KagomeDims& up,
                   const KagomeDims& down);

/// Exact-contraction cost of a D-bond PEPS on a 2(L+1) x 2(L+1) lattice:
/// 2(L+1) (D^{4L}-1)/(D^4-1) D^{10} d.
double cost_exact_rvb_restriction(std::size_t L, double D, double d);
/// Degeneration mode: (2 e L + 1) times the above.
double cost_exact_rvb_degeneration(std::size_t L, double D, double d, std::size_t e);

// ---- builders --------------------------------------------------------------

PepsNetwork random_square_network(std::size_t lx, std::size_t ly, std::size_t d1,
                                  std::size_t d2, std::size_t d, std::uint64_t seed);
PepsNetwork product_square_network(std::size_t lx, std::size_t ly, std::size_t d,
                                   std::uint64_t seed);

/// Random kagome patch (rows x cols up-triangles plus the connecting
/// down-triangles), one physical leg of dim d per site, up-triangle bond
/// dims K[0..2] on edges (top-bl, top-br, bl-br) and down-triangle dims
/// D[0..2] on (br-bl', br-top', bl'-top').
PepsNetwork random_kagome_network(std::size_t rows, std::size_t cols,
                                  const std::array<std::size_t, 3>& K,
                                  const std::array<std::size_t, 3>& D, std::size_t d,
                                  std::uint64_t seed);

/// The RVB resource network: per triangle the bond-(2,2,3) MPS of lambda,
/// one physical dim-3 leg per site and triangle membership (bulk sites
/// carry two). Its state equals the lambda-structure patch, so
/// ||state||^2 = 7^F.
PepsNetwork rvb_kagome_network(std::size_t rows, std::size_t cols);

}  // namespace bordertn
