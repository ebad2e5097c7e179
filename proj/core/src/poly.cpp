// SPDX-License-Identifier: Apache-2.0
#include "bordertn/poly.hpp"

#include <cmath>
#include <stdexcept>

namespace bordertn {

MatrixPoly MatrixPoly::constant(const Matrix& m) { return monomial(0, m); }

MatrixPoly MatrixPoly::monomial(int exponent, const Matrix& m) {
  MatrixPoly p(m.rows(), m.cols());
  p.add_term(exponent, m);
  return p;
}

MatrixPoly MatrixPoly::identity(Eigen::Index n) {
  return constant(Matrix::Identity(n, n));
}

int MatrixPoly::min_exponent() const {
  if (terms_.empty()) throw std::runtime_error("zero polynomial has no exponents");
  return terms_.begin()->first;
}

int MatrixPoly::max_exponent() const {
  if (terms_.empty()) throw std::runtime_error("zero polynomial has no exponents");
  return terms_.rbegin()->first;
}

void MatrixPoly::add_term(int exponent, const Matrix& m) {
  if (rows_ == 0 && cols_ == 0) {
    rows_ = m.rows();
    cols_ = m.cols();
  }
  if (m.rows() != rows_ || m.cols() != cols_)
    throw std::invalid_argument("all MatrixPoly terms must share (rows, cols)");
  auto it = terms_.find(exponent);
  if (it == terms_.end())
    terms_.emplace(exponent, m);
  else
    it->second += m;
  it = terms_.find(exponent);
  if (it->second.norm() == 0.0) terms_.erase(it);
}

Matrix MatrixPoly::eval(cx eps) const {
  Matrix out = Matrix::Zero(rows_, cols_);
  for (const auto& [e, m] : terms_) out += std::pow(eps, e) * m;
  return out;
}

MatrixPoly MatrixPoly::left_composed(const Matrix& b) const {
  if (b.cols() != rows_)
    throw std::invalid_argument("composition shape mismatch");
  MatrixPoly out(b.rows(), cols_);
  for (const auto& [e, m] : terms_) out.add_term(e, b * m);
  return out;
}

MatrixPoly kron(const MatrixPoly& a, const MatrixPoly& b) {
  MatrixPoly out(a.rows() * b.rows(), a.cols() * b.cols());
  for (const auto& [ea, ma] : a.terms())
    for (const auto& [eb, mb] : b.terms()) {
      Matrix k(ma.rows() * mb.rows(), ma.cols() * mb.cols());
      for (Eigen::Index i = 0; i < ma.rows(); ++i)
        for (Eigen::Index j = 0; j < ma.cols(); ++j)
          k.block(i * mb.rows(), j * mb.cols(), mb.rows(), mb.cols()) = ma(i, j) * mb;
      out.add_term(ea + eb, k);
    }
  return out;
}

PolyTensor PolyTensor::from_constant(const DenseTensor& t) {
  PolyTensor p(t.legs());
  p.add_term(0, t);
  return p;
}

int PolyTensor::min_exponent() const {
  if (terms_.empty()) throw std::runtime_error("zero PolyTensor has no exponents");
  return terms_.begin()->first;
}

int PolyTensor::max_exponent() const {
  if (terms_.empty()) throw std::runtime_error("zero PolyTensor has no exponents");
  return terms_.rbegin()->first;
}

void PolyTensor::add_term(int exponent, const DenseTensor& t) {
  if (legs_.empty() && terms_.empty()) legs_ = t.legs();
  if (t.legs() != legs_) {
    // permuting to the stored signature keeps term addition id-based
    DenseTensor aligned = t;
    std::vector<std::string> order;
    for (const auto& l : legs_) order.push_back(l.id);
    aligned = aligned.permuted(order);
    if (aligned.legs() != legs_)
      throw std::invalid_argument("PolyTensor term signature mismatch");
    auto it = terms_.find(exponent);
    if (it == terms_.end())
      terms_.emplace(exponent, aligned);
    else
      it->second = add(it->second, aligned);
  } else {
    auto it = terms_.find(exponent);
    if (it == terms_.end())
      terms_.emplace(exponent, t);
    else
      it->second = add(it->second, t);
  }
  auto it = terms_.find(exponent);
  if (it != terms_.end() && it->second.norm() == 0.0) terms_.erase(it);
}

const DenseTensor* PolyTensor::term(int exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? nullptr : &it->second;
}

DenseTensor PolyTensor::eval(cx eps) const {
  DenseTensor out(legs_);
  for (const auto& [e, t] : terms_) out = add(out, scalar_mul(std::pow(eps, e), t));
  return out;
}

PolyTensor PolyTensor::shifted(int delta) const {
  PolyTensor out(legs_);
  for (const auto& [e, t] : terms_) out.add_term(e + delta, t);
  return out;
}

std::size_t PolyTensor::entry_count() const {
  std::size_t n = 0;
  for (const auto& [e, t] : terms_) n += t.size();
  return n;
}

PolyTensor poly_apply(const DenseTensor& t,
                      const std::vector<std::pair<std::string, MatrixPoly>>& maps,
                      std::size_t budget) {
  PolyTensor acc = PolyTensor::from_constant(t);
  for (const auto& [leg_id, mp] : maps) {
    if (mp.empty())
      throw std::invalid_argument("zero polynomial map on leg '" + leg_id + "'");
    PolyTensor next;
    for (const auto& [et, term] : acc.terms()) {
      for (const auto& [em, m] : mp.terms()) {
        next.add_term(et + em, apply_local_map(term, leg_id, m));
        if (next.entry_count() > budget)
          throw BudgetExceeded(
              "symbolic expansion exceeds the entry budget; use numeric epsilon "
              "sampling (interpolation) instead");
      }
    }
    acc = std::move(next);
  }
  return acc;
}

}  // namespace bordertn
