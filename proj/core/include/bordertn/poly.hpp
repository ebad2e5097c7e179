// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bordertn/dense_tensor.hpp"

namespace bordertn {

/// Matrix whose entries are polynomials in a formal parameter epsilon,
/// stored as exponent -> coefficient matrix. Exponents are integers;
/// everything in scope uses nonnegative ones.
class MatrixPoly {
 public:
  MatrixPoly() = default;
  MatrixPoly(Eigen::Index rows, Eigen::Index cols) : rows_(rows), cols_(cols) {}

  static MatrixPoly constant(const Matrix& m);
  static MatrixPoly monomial(int exponent, const Matrix& m);
  static MatrixPoly identity(Eigen::Index n);

  Eigen::Index rows() const { return rows_; }
  Eigen::Index cols() const { return cols_; }
  const std::map<int, Matrix>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  int min_exponent() const;
  int max_exponent() const;
  /// max_exponent - min_exponent; 0 for constants.
  int spread() const { return empty() ? 0 : max_exponent() - min_exponent(); }

  void add_term(int exponent, const Matrix& m);
  Matrix eval(cx eps) const;

  /// Constant-matrix composition b * this (used for B_l . A_l(eps)).
  MatrixPoly left_composed(const Matrix& b) const;
  /// Kronecker product; exponents add.
  friend MatrixPoly kron(const MatrixPoly& a, const MatrixPoly& b);

 private:
  Eigen::Index rows_ = 0, cols_ = 0;
  std::map<int, Matrix> terms_;
};

/// Tensor-valued polynomial in epsilon: exponent -> DenseTensor, all terms
/// sharing one leg signature. Zero terms are never stored.
class PolyTensor {
 public:
  PolyTensor() = default;
  explicit PolyTensor(std::vector<Leg> legs) : legs_(std::move(legs)) {}

  static PolyTensor from_constant(const DenseTensor& t);

  const std::vector<Leg>& legs() const { return legs_; }
  const std::map<int, DenseTensor>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  int min_exponent() const;
  int max_exponent() const;

  void add_term(int exponent, const DenseTensor& t);
  const DenseTensor* term(int exponent) const;

  DenseTensor eval(cx eps) const;
  PolyTensor shifted(int delta) const;  // multiplies by eps^delta

  /// Total stored entries, used for the symbolic-expansion budget.
  std::size_t entry_count() const;

 private:
  std::vector<Leg> legs_;
  std::map<int, DenseTensor> terms_;
};

/// Default cap on stored polynomial-term entries during symbolic expansion.
inline constexpr std::size_t kDefaultSymbolicBudget = 1000000;

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Exact polynomial expansion of (x) A_leg(eps) applied to every listed leg.
/// Throws if the expansion would exceed `budget` stored entries.
PolyTensor poly_apply(const DenseTensor& t,
                      const std::vector<std::pair<std::string, MatrixPoly>>& maps,
                      std::size_t budget = kDefaultSymbolicBudget);

}  // namespace bordertn
