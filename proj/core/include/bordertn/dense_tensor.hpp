// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "bordertn/leg.hpp"

namespace bordertn {

using cx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Default relative tolerance for numerical rank decisions.
inline constexpr double kDefaultRankTol = 1e-10;

/// Dense complex tensor with named legs. Data is stored row-major in the
/// order of the leg sequence; all operations address legs by id.
/// Values are immutable in practice: operations return new tensors.
class DenseTensor {
 public:
  DenseTensor() : legs_(), data_(1, cx{0.0, 0.0}) {}
  explicit DenseTensor(std::vector<Leg> legs);
  DenseTensor(std::vector<Leg> legs, std::vector<cx> data);

  static DenseTensor scalar(cx v);

  const std::vector<Leg>& legs() const { return legs_; }
  std::size_t rank() const { return legs_.size(); }
  std::size_t size() const { return data_.size(); }
  const std::vector<cx>& data() const { return data_; }
  std::vector<cx>& data() { return data_; }

  bool has_leg(const std::string& id) const;
  std::size_t leg_index(const std::string& id) const;  // throws if absent
  const Leg& leg(const std::string& id) const { return legs_[leg_index(id)]; }

  cx& at(std::span<const std::size_t> idx);
  cx at(std::span<const std::size_t> idx) const;
  cx& at(std::initializer_list<std::size_t> idx);
  cx at(std::initializer_list<std::size_t> idx) const;

  std::size_t flat_index(std::span<const std::size_t> idx) const;
  std::vector<std::size_t> unflatten(std::size_t flat) const;

  /// Tensor with legs reordered to `order` (a permutation of all leg ids).
  DenseTensor permuted(const std::vector<std::string>& order) const;

  DenseTensor conj() const;
  DenseTensor renamed(const std::string& old_id, const std::string& new_id) const;

  double norm() const;
  double max_abs() const;

 private:
  std::vector<Leg> legs_;
  std::vector<cx> data_;
};

/// Pairwise contraction. Result legs are the unpaired legs of `a` followed
/// by the unpaired legs of `b`; ids must stay unique in the result.
DenseTensor contract(const DenseTensor& a, const DenseTensor& b,
                     const std::vector<std::pair<std::string, std::string>>& pairs);

/// Outer product (contraction with no pairs).
DenseTensor outer(const DenseTensor& a, const DenseTensor& b);

/// One leg per group, dim = product of member dims, data unchanged under
/// the fixed mixed-radix flattening. `groups` must partition the legs.
DenseTensor group_legs(const DenseTensor& t,
                       const std::vector<std::pair<std::string, std::vector<std::string>>>& groups);

/// Inverse of group_legs for a single leg: replaces `id` by `parts`
/// (product of part dims must equal the leg dim).
DenseTensor split_leg(const DenseTensor& t, const std::string& id,
                      const std::vector<Leg>& parts);

/// Applies `m` (rows x cols, cols == leg dim) to one slot; the leg keeps
/// its id and position, its dim becomes the row count.
DenseTensor apply_local_map(const DenseTensor& t, const std::string& leg_id,
                            const Matrix& m);

struct SvdResult {
  DenseTensor u;         // row legs + new bond leg
  DenseTensor sv;        // new bond leg + column legs
  double discarded_weight = 0.0;  // sum of squared dropped singular values
  Eigen::VectorXd singular_values;  // kept values, descending
};

/// Truncated SVD across (row_legs | remaining legs). The new bond leg has
/// dim min(chi, min(rows, cols)); contract(u, sv) over the bond reproduces
/// `t` up to discarded_weight.
SvdResult svd_truncate(const DenseTensor& t, const std::vector<std::string>& row_legs,
                       std::size_t chi, const std::string& bond_id = "_svd");

Eigen::VectorXd singular_values(const DenseTensor& t,
                                const std::vector<std::string>& row_legs);

/// Number of singular values of the (part | rest) flattening exceeding
/// tol * largest. Zero tensor has rank 0.
std::size_t schmidt_rank(const DenseTensor& t, const std::vector<std::string>& part,
                         double tol = kDefaultRankTol);

/// Conjugate-linear in the first argument. Legs are matched by id.
cx inner_product(const DenseTensor& a, const DenseTensor& b);

DenseTensor add(const DenseTensor& a, const DenseTensor& b);
DenseTensor sub(const DenseTensor& a, const DenseTensor& b);
DenseTensor scalar_mul(cx s, const DenseTensor& t);

/// Max |a - b| entrywise after matching b's legs to a's order.
double max_entry_distance(const DenseTensor& a, const DenseTensor& b);

}  // namespace bordertn
