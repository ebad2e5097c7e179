// SPDX-License-Identifier: Apache-2.0
#include "bordertn/dense_tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <unordered_map>

#include <Eigen/SVD>

#include "bordertn/flops.hpp"

namespace bordertn {

namespace {

using RowMat = Eigen::Matrix<cx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

std::vector<std::size_t> strides_of(const std::vector<Leg>& legs) {
  std::vector<std::size_t> s(legs.size(), 1);
  for (std::size_t i = legs.size(); i-- > 1;) s[i - 1] = s[i] * legs[i].dim;
  return s;
}

void check_unique_ids(const std::vector<Leg>& legs) {
  std::set<std::string> seen;
  for (const auto& l : legs)
    if (!seen.insert(l.id).second)
      throw std::invalid_argument("duplicate leg id '" + l.id + "'");
}

RowMat matmul_counted(const Eigen::Ref<const RowMat>& a, const Eigen::Ref<const RowMat>& b) {
  flops::add(static_cast<std::uint64_t>(a.rows()) * static_cast<std::uint64_t>(a.cols()) *
             static_cast<std::uint64_t>(b.cols()));
  return a * b;
}

}  // namespace

DenseTensor::DenseTensor(std::vector<Leg> legs) : legs_(std::move(legs)) {
  check_unique_ids(legs_);
  data_.assign(product_of_dims(legs_), cx{0.0, 0.0});
}

DenseTensor::DenseTensor(std::vector<Leg> legs, std::vector<cx> data)
    : legs_(std::move(legs)), data_(std::move(data)) {
  check_unique_ids(legs_);
  if (data_.size() != product_of_dims(legs_))
    throw std::invalid_argument("data length does not match product of leg dims");
}

DenseTensor DenseTensor::scalar(cx v) {
  DenseTensor t;
  t.data_[0] = v;
  return t;
}

bool DenseTensor::has_leg(const std::string& id) const {
  for (const auto& l : legs_)
    if (l.id == id) return true;
  return false;
}

std::size_t DenseTensor::leg_index(const std::string& id) const {
  for (std::size_t i = 0; i < legs_.size(); ++i)
    if (legs_[i].id == id) return i;
  throw std::invalid_argument("no leg with id '" + id + "'");
}

std::size_t DenseTensor::flat_index(std::span<const std::size_t> idx) const {
  if (idx.size() != legs_.size())
    throw std::invalid_argument("index rank mismatch");
  std::size_t flat = 0;
  for (std::size_t i = 0; i < legs_.size(); ++i) {
    if (idx[i] >= legs_[i].dim)
      throw std::out_of_range("index out of range on leg '" + legs_[i].id + "'");
    flat = flat * legs_[i].dim + idx[i];
  }
  return flat;
}

std::vector<std::size_t> DenseTensor::unflatten(std::size_t flat) const {
  std::vector<std::size_t> idx(legs_.size());
  for (std::size_t i = legs_.size(); i-- > 0;) {
    idx[i] = flat % legs_[i].dim;
    flat /= legs_[i].dim;
  }
  return idx;
}

cx& DenseTensor::at(std::span<const std::size_t> idx) { return data_[flat_index(idx)]; }
cx DenseTensor::at(std::span<const std::size_t> idx) const { return data_[flat_index(idx)]; }
cx& DenseTensor::at(std::initializer_list<std::size_t> idx) {
  std::vector<std::size_t> v(idx);
  return data_[flat_index(v)];
}

cx DenseTensor::at(std::initializer_list<std::size_t> idx) const {
  std::vector<std::size_t> v(idx);
  return data_[flat_index(v)];
}

DenseTensor DenseTensor::permuted(const std::vector<std::string>& order) const {
  if (order.size() != legs_.size())
    throw std::invalid_argument("permutation must name every leg exactly once");
  std::vector<std::size_t> perm(order.size());
  std::vector<bool> used(legs_.size(), false);
  for (std::size_t i = 0; i < order.size(); ++i) {
    perm[i] = leg_index(order[i]);
    if (used[perm[i]])
      throw std::invalid_argument("leg '" + order[i] + "' repeated in permutation");
    used[perm[i]] = true;
  }

  bool identity = true;
  for (std::size_t i = 0; i < perm.size(); ++i)
    if (perm[i] != i) identity = false;
  if (identity) return *this;

  std::vector<Leg> new_legs(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) new_legs[i] = legs_[perm[i]];

  const auto old_strides = strides_of(legs_);
  std::vector<std::size_t> src_stride(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) src_stride[i] = old_strides[perm[i]];

  DenseTensor out(new_legs);
  const std::size_t n = data_.size();
  const std::size_t r = new_legs.size();
  std::vector<std::size_t> idx(r, 0);
  std::size_t src = 0;
  for (std::size_t dst = 0; dst < n; ++dst) {
    out.data_[dst] = data_[src];
    for (std::size_t i = r; i-- > 0;) {
      if (++idx[i] < new_legs[i].dim) {
        src += src_stride[i];
        break;
      }
      src -= src_stride[i] * (new_legs[i].dim - 1);
      idx[i] = 0;
    }
  }
  return out;
}

DenseTensor DenseTensor::conj() const {
  DenseTensor out = *this;
  for (auto& v : out.data_) v = std::conj(v);
  return out;
}

DenseTensor DenseTensor::renamed(const std::string& old_id, const std::string& new_id) const {
  DenseTensor out = *this;
  out.legs_[leg_index(old_id)].id = new_id;
  check_unique_ids(out.legs_);
  return out;
}

double DenseTensor::norm() const {
  double s = 0.0;
  for (const auto& v : data_) s += std::norm(v);
  return std::sqrt(s);
}

double DenseTensor::max_abs() const {
  double m = 0.0;
  for (const auto& v : data_) m = std::max(m, std::abs(v));
  return m;
}

DenseTensor contract(const DenseTensor& a, const DenseTensor& b,
                     const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::set<std::string> a_paired, b_paired;
  for (const auto& [la, lb] : pairs) {
    if (!a_paired.insert(la).second)
      throw std::invalid_argument("leg '" + la + "' paired twice");
    if (!b_paired.insert(lb).second)
      throw std::invalid_argument("leg '" + lb + "' paired twice");
    if (a.leg(la).dim != b.leg(lb).dim)
      throw std::invalid_argument("dimension mismatch contracting '" + la + "' with '" + lb + "'");
  }

  std::vector<std::string> a_order, b_order;
  std::vector<Leg> out_legs;
  for (const auto& l : a.legs())
    if (!a_paired.count(l.id)) {
      a_order.push_back(l.id);
      out_legs.push_back(l);
    }
  for (const auto& [la, lb] : pairs) a_order.push_back(la);
  for (const auto& [la, lb] : pairs) b_order.push_back(lb);
  for (const auto& l : b.legs())
    if (!b_paired.count(l.id)) {
      b_order.push_back(l.id);
      out_legs.push_back(l);
    }

  const DenseTensor ap = a.permuted(a_order);
  const DenseTensor bp = b.permuted(b_order);

  std::size_t pdim = 1;
  for (const auto& [la, lb] : pairs) pdim *= a.leg(la).dim;
  const std::size_t m = ap.size() / pdim;
  const std::size_t n = bp.size() / pdim;

  Eigen::Map<const RowMat> ma(ap.data().data(), m, pdim);
  Eigen::Map<const RowMat> mb(bp.data().data(), pdim, n);
  RowMat mc = matmul_counted(ma, mb);

  DenseTensor out(out_legs);
  Eigen::Map<RowMat>(out.data().data(), m, n) = mc;
  return out;
}

DenseTensor outer(const DenseTensor& a, const DenseTensor& b) { return contract(a, b, {}); }

DenseTensor group_legs(const DenseTensor& t,
                       const std::vector<std::pair<std::string, std::vector<std::string>>>& groups) {
  std::vector<std::string> order;
  std::size_t total = 0;
  for (const auto& [gid, members] : groups) {
    if (members.empty()) throw std::invalid_argument("empty leg group '" + gid + "'");
    for (const auto& id : members) order.push_back(id);
    total += members.size();
  }
  if (total != t.rank())
    throw std::invalid_argument("groups must partition the legs");

  DenseTensor p = t.permuted(order);  // throws on repeats / unknown ids

  std::vector<Leg> new_legs;
  std::size_t pos = 0;
  for (const auto& [gid, members] : groups) {
    std::size_t dim = 1;
    for (std::size_t k = 0; k < members.size(); ++k) dim *= p.legs()[pos + k].dim;
    new_legs.push_back({gid, dim});
    pos += members.size();
  }
  return DenseTensor(std::move(new_legs), std::move(p.data()));
}

DenseTensor split_leg(const DenseTensor& t, const std::string& id,
                      const std::vector<Leg>& parts) {
  const std::size_t pos = t.leg_index(id);
  std::size_t dim = 1;
  for (const auto& p : parts) dim *= p.dim;
  if (dim != t.legs()[pos].dim)
    throw std::invalid_argument("split parts do not multiply to dim of '" + id + "'");
  std::vector<Leg> new_legs;
  for (std::size_t i = 0; i < t.rank(); ++i) {
    if (i == pos)
      new_legs.insert(new_legs.end(), parts.begin(), parts.end());
    else
      new_legs.push_back(t.legs()[i]);
  }
  std::vector<cx> data = t.data();
  return DenseTensor(std::move(new_legs), std::move(data));
}

DenseTensor apply_local_map(const DenseTensor& t, const std::string& leg_id,
                            const Matrix& m) {
  const std::size_t pos = t.leg_index(leg_id);
  const std::size_t d = t.legs()[pos].dim;
  if (static_cast<std::size_t>(m.cols()) != d)
    throw std::invalid_argument("map column count does not match dim of '" + leg_id + "'");

  std::vector<std::string> front_order{leg_id};
  for (const auto& l : t.legs())
    if (l.id != leg_id) front_order.push_back(l.id);
  DenseTensor p = t.permuted(front_order);

  const std::size_t rest = p.size() / d;
  Eigen::Map<const RowMat> x(p.data().data(), d, rest);
  flops::add(static_cast<std::uint64_t>(m.rows()) * d * rest);
  RowMat y = m * x;

  std::vector<Leg> new_legs = p.legs();
  new_legs[0].dim = static_cast<std::size_t>(m.rows());
  DenseTensor out(new_legs);
  Eigen::Map<RowMat>(out.data().data(), m.rows(), rest) = y;

  // restore the original leg positions
  std::vector<std::string> orig_order;
  for (const auto& l : t.legs()) orig_order.push_back(l.id);
  return out.permuted(orig_order);
}

namespace {

struct Flattening {
  DenseTensor permuted;
  std::vector<Leg> row_legs, col_legs;
  std::size_t rows = 1, cols = 1;
};

Flattening flatten(const DenseTensor& t, const std::vector<std::string>& row_ids) {
  if (row_ids.empty() || row_ids.size() >= t.rank())
    throw std::invalid_argument("row legs must be a nonempty proper subset");
  std::set<std::string> rset(row_ids.begin(), row_ids.end());
  if (rset.size() != row_ids.size())
    throw std::invalid_argument("repeated row leg");
  std::vector<std::string> order = row_ids;
  for (const auto& l : t.legs())
    if (!rset.count(l.id)) order.push_back(l.id);

  Flattening f;
  f.permuted = t.permuted(order);
  for (std::size_t i = 0; i < f.permuted.rank(); ++i) {
    const auto& l = f.permuted.legs()[i];
    if (i < row_ids.size()) {
      f.row_legs.push_back(l);
      f.rows *= l.dim;
    } else {
      f.col_legs.push_back(l);
      f.cols *= l.dim;
    }
  }
  return f;
}

}  // namespace

SvdResult svd_truncate(const DenseTensor& t, const std::vector<std::string>& row_legs,
                       std::size_t chi, const std::string& bond_id) {
  if (chi < 1) throw std::invalid_argument("chi must be >= 1");
  Flattening f = flatten(t, row_legs);

  Matrix mat(f.rows, f.cols);
  Eigen::Map<const RowMat> src(f.permuted.data().data(), f.rows, f.cols);
  mat = src;

  Eigen::JacobiSVD<Matrix> svd(mat, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  const std::size_t full = static_cast<std::size_t>(s.size());
  const std::size_t keep = std::min(chi, full);

  double discarded = 0.0;
  for (std::size_t i = keep; i < full; ++i) discarded += s[i] * s[i];

  SvdResult r;
  r.singular_values = s.head(keep);
  r.discarded_weight = discarded;

  std::vector<Leg> u_legs = f.row_legs;
  u_legs.push_back({bond_id, keep});
  r.u = DenseTensor(u_legs);
  Eigen::Map<RowMat>(r.u.data().data(), f.rows, keep) = svd.matrixU().leftCols(keep);

  std::vector<Leg> sv_legs{{bond_id, keep}};
  for (const auto& l : f.col_legs) sv_legs.push_back(l);
  r.sv = DenseTensor(sv_legs);
  flops::add(static_cast<std::uint64_t>(keep) * f.cols);
  Eigen::Map<RowMat>(r.sv.data().data(), keep, f.cols) =
      s.head(keep).asDiagonal() * svd.matrixV().leftCols(keep).adjoint();
  return r;
}

Eigen::VectorXd singular_values(const DenseTensor& t,
                                const std::vector<std::string>& row_legs) {
  Flattening f = flatten(t, row_legs);
  Matrix mat(f.rows, f.cols);
  mat = Eigen::Map<const RowMat>(f.permuted.data().data(), f.rows, f.cols);
  Eigen::JacobiSVD<Matrix> svd(mat);
  return svd.singularValues();
}

std::size_t schmidt_rank(const DenseTensor& t, const std::vector<std::string>& part,
                         double tol) {
  Eigen::VectorXd s = singular_values(t, part);
  if (s.size() == 0) return 0;
  const double cutoff = tol * s[0];
  if (s[0] == 0.0) return 0;
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s[i] > cutoff) ++r;
  return r;
}

namespace {

DenseTensor match_to(const DenseTensor& ref, const DenseTensor& t) {
  if (ref.rank() != t.rank())
    throw std::invalid_argument("leg signature mismatch (rank)");
  std::vector<std::string> order;
  for (const auto& l : ref.legs()) {
    order.push_back(l.id);
    if (t.leg(l.id).dim != l.dim)
      throw std::invalid_argument("leg signature mismatch on '" + l.id + "'");
  }
  return t.permuted(order);
}

}  // namespace

cx inner_product(const DenseTensor& a, const DenseTensor& b) {
  DenseTensor bp = match_to(a, b);
  cx s{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a.data()[i]) * bp.data()[i];
  return s;
}

DenseTensor add(const DenseTensor& a, const DenseTensor& b) {
  DenseTensor bp = match_to(a, b);
  DenseTensor out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] += bp.data()[i];
  return out;
}

DenseTensor sub(const DenseTensor& a, const DenseTensor& b) {
  return add(a, scalar_mul(cx{-1.0, 0.0}, b));
}

DenseTensor scalar_mul(cx s, const DenseTensor& t) {
  DenseTensor out = t;
  for (auto& v : out.data()) v *= s;
  return out;
}

double max_entry_distance(const DenseTensor& a, const DenseTensor& b) {
  DenseTensor bp = match_to(a, b);
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a.data()[i] - bp.data()[i]));
  return m;
}

}  // namespace bordertn
