// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bordertn/conversions.hpp"

namespace bordertn {

using IntVec = Eigen::Matrix<long long, Eigen::Dynamic, 1>;
using IntMat = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

// ---- lambda / RVB plaquette conversions ----------------------------------

/// The bond-(2,2,3) MPS triples realizing lambda as a restriction of
/// MaMu(3,2,2). Exact (d = 0, e = 0); half-integer entries.
PlaquetteConversion lambda_restriction_223();

/// A bond-3 MPS representation of lambda (rederived from the antisymmetric
/// structure): A_i = sum_ab eps_{iab} |a><b| + delta_{i2} |2><2|.
PlaquetteConversion lambda_restriction_333();

/// The border-bond-2 degeneration of lambda from MaMu(2,2,2): leading term
/// eps^2 lambda, sole residual eps^4 |2> (x) (1/4 |00> - |11>).
PlaquetteConversion lambda_degeneration_222();

// ---- W state --------------------------------------------------------------

/// Translation-invariant border-bond-2 family for W(L) on a cycle of L
/// maximally entangled pairs: M_0 = diag(1, (-1)^{1/L}), M_1 = diag(eps, 0).
/// Certifies d = 1, e = L-1 with leading term W(L).
PlaquetteConversion w_border_mps(std::size_t L);

/// tr(M_0^n M_1^m) evaluated exactly: a monomial coeff * eps^exponent.
/// Root-of-unity arithmetic is done on integer angles, so tr(M_0^L) = 0
/// holds symbolically.
struct WTrace {
  bool exactly_zero = false;
  cx coeff{0.0, 0.0};
  int exponent = 0;
};
WTrace w_mps_trace(std::size_t L, std::size_t n, std::size_t m);

// ---- diagonal MaMu -> GHZ degenerations ------------------------------------

/// Integer solutions of the level-counting system, in the recorded index
/// base (the paper uses 1-based sums for m = 3 and 0-based box bounds for
/// the general construction).
struct SolutionSet {
  std::vector<std::vector<long long>> solutions;
  int index_base = 0;
  std::size_t ghz_level() const { return solutions.size(); }
};

struct GhzCheck {
  bool ok = false;
  std::size_t support_size = 0;
  std::vector<std::size_t> party_ranks;
  std::vector<std::size_t> violated_parties;
};

/// True iff the support has `level` product-basis terms and every
/// single-party flattening has Schmidt rank `level`.
GhzCheck verify_ghz_equivalence(const DenseTensor& leading, std::size_t level,
                                double tol = kDefaultRankTol);

struct DiagonalDegenResult {
  PlaquetteConversion conversion;  // source MaMu, target = leading term
  SolutionSet solutions;
  DenseTensor leading;
  GhzCheck ghz;
  long long g_one_based = 0;   // inhomogeneity in the paper's 1-based sums
  long long g_zero_based = 0;  // same constraint over 0-based indices
  int d = 0;                   // leading exponent (2 g^2 for the 1-based maps)
};

/// A(eps)|i,j> = eps^{(i-g)^2 + 2ij} |i,j> on every party of
/// MaMu(k1,k2,k3), indices summed 1..k_l. Throws if no index tuple
/// satisfies i1+i2+i3 = g.
DiagonalDegenResult diag_mamu_to_ghz(std::size_t k1, std::size_t k2, std::size_t k3,
                                     long long g);

/// Exhaustive scan over feasible g maximizing the solution count.
long long best_inhomogeneity_m3(std::size_t k1, std::size_t k2, std::size_t k3);

/// The m = 4 construction with the cycle-orthogonal vectors and
/// g1 = g2 = floor(k/2), solved over Z by Smith normal form with 0-based
/// box bounds. Level comes out as ceil(k^2 / 2).
DiagonalDegenResult mamu4_to_ghz(std::size_t k);

/// Columns c_0..c_{m-1} in Z^{m-2} of the inductive cycle system:
/// c_0 = (1..1), c_1 = -e_0, c_l = e_{l-2} - e_{l-1}, c_{m-1} = e_{m-3}.
std::vector<IntVec> cycle_orthogonal_vectors(std::size_t m);

/// <c_l, c_l'> = 0 whenever l' is not a cyclic neighbour of l.
bool check_cycle_orthogonality(const std::vector<IntVec>& c);
/// Removing any cyclically adjacent pair leaves the rest linearly
/// independent (exact integer rank).
bool check_cycle_independence(const std::vector<IntVec>& c);

/// Exact integer rank (fraction-free elimination).
std::size_t integer_rank(IntMat a);

/// U * A * V = D with U, V unimodular and D diagonal with the divisibility
/// chain. Small matrices only.
struct SmithResult {
  IntMat u, d, v;
};
SmithResult smith_normal_form(const IntMat& a);

/// All 0-based solutions of sum_l c_l i_l = g inside [0, k-1]^m, via the
/// Smith normal form (m = 4) or exhaustive search.
std::vector<std::vector<long long>> solve_cycle_system(const std::vector<IntVec>& c,
                                                       const IntVec& g, std::size_t k,
                                                       bool use_snf);

/// Per-vertex exponents p_l(i,j) with sum_l p_l(i_l, i_{l+1}) =
/// d + ||sum_l c_l i_l - g||^2 on the 0-based box; returns the maps and d.
std::pair<std::vector<MatrixPoly>, int> diagonal_maps_from_vectors(
    const std::vector<IntVec>& c, const IntVec& g, std::size_t k);

}  // namespace bordertn
