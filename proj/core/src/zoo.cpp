// SPDX-License-Identifier: Apache-2.0
#include "bordertn/zoo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

namespace bordertn {

namespace {

/// Party map of an MPS site: A|i,j> = sum_p (M_p)_{ij} |p>, flattening the
/// pair (i, j) row-major.
Matrix mps_party_map(const std::vector<Matrix>& ms) {
  const Eigen::Index di = ms.at(0).rows(), dj = ms.at(0).cols();
  Matrix a = Matrix::Zero(static_cast<Eigen::Index>(ms.size()), di * dj);
  for (std::size_t p = 0; p < ms.size(); ++p) {
    if (ms[p].rows() != di || ms[p].cols() != dj)
      throw std::invalid_argument("MPS matrices of one site must share shape");
    for (Eigen::Index i = 0; i < di; ++i)
      for (Eigen::Index j = 0; j < dj; ++j) a(static_cast<Eigen::Index>(p), i * dj + j) = ms[p](i, j);
  }
  return a;
}

Matrix m2x3(std::initializer_list<double> v) {
  Matrix m(2, 3);
  auto it = v.begin();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = *it++;
  return m;
}
Matrix m3x2(std::initializer_list<double> v) {
  Matrix m(3, 2);
  auto it = v.begin();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 2; ++j) m(i, j) = *it++;
  return m;
}
Matrix m2x2(std::initializer_list<double> v) {
  Matrix m(2, 2);
  auto it = v.begin();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) m(i, j) = *it++;
  return m;
}

}  // namespace

PlaquetteConversion lambda_restriction_223() {
  // bond-(2,2,3) MPS matrices of lambda; physical index p = 0,1,2
  const std::vector<Matrix> m1 = {0.5 * m2x3({0, 1, 0, 1, 0, 0}),
                                  m2x3({0, -1, 0, 1, 0, 0}),
                                  m2x3({1, 0, 1, 0, -1, 0})};
  const std::vector<Matrix> m2 = {0.5 * m3x2({0, 1, 1, 0, 0, 0}),
                                  m3x2({0, -1, 1, 0, 0, 0}),
                                  m3x2({1, 0, 0, -1, 1, 0})};
  const std::vector<Matrix> m3 = {0.5 * m2x2({0, 1, 1, 0}),
                                  m2x2({0, -1, 1, 0}),
                                  m2x2({1, 0, 0, -1})};

  PlaquetteConversion conv;
  conv.name = "lambda_restriction_223";
  conv.source = PlaquetteSpec{PlaquetteSpec::MaMu{{3, 2, 2}}};
  conv.target = PlaquetteSpec{PlaquetteSpec::Lambda{}};
  // with index dims (3,2,2) the parties hold pairs (i1,i2), (i2,i3), (i3,i1),
  // so the 3x2 / 2x2 / 2x3 matrices land on parties 1, 2, 3 in this order;
  // cyclic invariance of lambda keeps the result exactly lambda
  conv.party_maps = {MatrixPoly::constant(mps_party_map(m2)),
                     MatrixPoly::constant(mps_party_map(m3)),
                     MatrixPoly::constant(mps_party_map(m1))};
  conv.d = 0;
  conv.e = 0;
  return conv;
}

PlaquetteConversion lambda_restriction_333() {
  // open-boundary-style split: tr(N1_i M2_j N3_k) = <i| M2_j |k> = lambda_ijk
  // with N1_i = |0><i|, (M2_j)_{ak} = eps_{ajk} + delta_{a2,j2,k2}, N3_k = |k><0|
  const int eps[3][3][3] = {{{0, 0, 0}, {0, 0, 1}, {0, -1, 0}},
                            {{0, 0, -1}, {0, 0, 0}, {1, 0, 0}},
                            {{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}};
  std::vector<Matrix> m1(3, Matrix::Zero(3, 3));
  std::vector<Matrix> m2(3, Matrix::Zero(3, 3));
  std::vector<Matrix> m3(3, Matrix::Zero(3, 3));
  for (int i = 0; i < 3; ++i) {
    m1[i](0, i) = 1.0;
    m3[i](i, 0) = 1.0;
    for (int a = 0; a < 3; ++a)
      for (int k = 0; k < 3; ++k) m2[i](a, k) = eps[a][i][k];
  }
  m2[2](2, 2) += 1.0;

  PlaquetteConversion conv;
  conv.name = "lambda_restriction_333";
  conv.source = PlaquetteSpec{PlaquetteSpec::MaMu{{3, 3, 3}}};
  conv.target = PlaquetteSpec{PlaquetteSpec::Lambda{}};
  conv.party_maps = {MatrixPoly::constant(mps_party_map(m1)),
                     MatrixPoly::constant(mps_party_map(m2)),
                     MatrixPoly::constant(mps_party_map(m3))};
  conv.d = 0;
  conv.e = 0;
  return conv;
}

PlaquetteConversion lambda_degeneration_222() {
  const Matrix sx = m2x2({0, 1, 1, 0});
  const Matrix sy = m2x2({0, -1, 1, 0});
  const Matrix sz = m2x2({1, 0, 0, -1});
  const Matrix id = Matrix::Identity(2, 2);

  // site map at exponent 1: physical 0 and 1 rows; exponent 0: physical 2
  auto base_map = [&](bool bump) {
    MatrixPoly mp(3, 4);
    Matrix e1 = Matrix::Zero(3, 4);
    e1.row(0) = mps_party_map({0.5 * sx}).row(0);
    e1.row(1) = mps_party_map({sy}).row(0);
    mp.add_term(1, e1);
    Matrix e0 = Matrix::Zero(3, 4);
    e0.row(2) = mps_party_map({sz}).row(0);
    mp.add_term(0, e0);
    if (bump) {
      // the eps^2/2 identity correction; placing it on the first party makes
      // the eps^4 residual come out as |2> (x) (1/4 |00> - |11>)
      Matrix e2 = Matrix::Zero(3, 4);
      e2.row(2) = mps_party_map({0.5 * id}).row(0);
      mp.add_term(2, e2);
    }
    return mp;
  };

  PlaquetteConversion conv;
  conv.name = "lambda_degeneration_222";
  conv.source = PlaquetteSpec{PlaquetteSpec::MaMu{{2, 2, 2}}};
  conv.target = PlaquetteSpec{PlaquetteSpec::Lambda{}};
  conv.party_maps = {base_map(true), base_map(false), base_map(false)};
  conv.d = 2;
  conv.e = 2;
  return conv;
}

PlaquetteConversion w_border_mps(std::size_t L) {
  if (L < 2) throw std::invalid_argument("w_border_mps needs L >= 2");
  const cx omega = std::polar(1.0, std::numbers::pi / static_cast<double>(L));

  MatrixPoly mp(2, 4);
  Matrix e0 = Matrix::Zero(2, 4);
  e0(0, 0) = 1.0;
  e0(0, 3) = omega;  // M_0 = diag(1, (-1)^{1/L})
  mp.add_term(0, e0);
  Matrix e1 = Matrix::Zero(2, 4);
  e1(1, 0) = 1.0;  // M_1 = eps * diag(1, 0)
  mp.add_term(1, e1);

  PlaquetteConversion conv;
  conv.name = "w_border_mps";
  conv.source = PlaquetteSpec{PlaquetteSpec::MaMu{std::vector<std::size_t>(L, 2)}};
  conv.target = PlaquetteSpec{PlaquetteSpec::Custom{w_state(L)}};
  conv.party_maps.assign(L, mp);
  conv.d = 1;
  conv.e = static_cast<int>(L) - 1;
  return conv;
}

WTrace w_mps_trace(std::size_t L, std::size_t n, std::size_t m) {
  if (L < 1) throw std::invalid_argument("L >= 1 required");
  WTrace t;
  if (m >= 1) {
    // only the (0,0) diagonal entry survives any M_1 factor
    t.exactly_zero = false;
    t.coeff = cx{1.0, 0.0};
    t.exponent = static_cast<int>(m);
    return t;
  }
  // tr(M_0^n) = 1 + omega^n with omega = exp(i pi / L); integer angle
  // arithmetic decides exact zeros
  const std::size_t angle = n % (2 * L);  // omega^n = exp(i pi angle / L)
  if (angle == L) {
    t.exactly_zero = true;
    t.coeff = cx{0.0, 0.0};
    t.exponent = 0;
    return t;
  }
  t.exactly_zero = false;
  t.coeff = cx{1.0, 0.0} + std::polar(1.0, std::numbers::pi * static_cast<double>(angle) /
                                               static_cast<double>(L));
  t.exponent = 0;
  return t;
}

GhzCheck verify_ghz_equivalence(const DenseTensor& leading, std::size_t level, double tol) {
  GhzCheck g;
  const double top = leading.max_abs();
  if (top == 0.0) return g;
  std::size_t support = 0;
  for (const auto& v : leading.data())
    if (std::abs(v) > tol * top) ++support;
  g.support_size = support;

  bool ok = (support == level);
  for (std::size_t p = 0; p < leading.rank(); ++p) {
    const std::size_t r = schmidt_rank(leading, {leading.legs()[p].id}, tol);
    g.party_ranks.push_back(r);
    if (r != level) {
      ok = false;
      g.violated_parties.push_back(p);
    }
  }
  g.ok = ok;
  return g;
}

namespace {

DenseTensor leading_from_solutions(const std::vector<std::size_t>& dims,
                                   const std::vector<std::vector<long long>>& sols_zero_based) {
  const std::size_t m = dims.size();
  std::vector<Leg> legs;
  for (std::size_t l = 0; l < m; ++l)
    legs.push_back({"p." + std::to_string(l), dims[l] * dims[(l + 1) % m]});
  DenseTensor t(legs);
  for (const auto& s : sols_zero_based) {
    std::vector<std::size_t> idx(m);
    for (std::size_t l = 0; l < m; ++l)
      idx[l] = static_cast<std::size_t>(s[l]) * dims[(l + 1) % m] +
               static_cast<std::size_t>(s[(l + 1) % m]);
    t.at(std::span<const std::size_t>(idx)) = 1.0;
  }
  return t;
}

}  // namespace

DiagonalDegenResult diag_mamu_to_ghz(std::size_t k1, std::size_t k2, std::size_t k3,
                                     long long g) {
  const std::vector<std::size_t> dims{k1, k2, k3};
  for (auto k : dims)
    if (k < 1) throw std::invalid_argument("dims must be >= 1");

  DiagonalDegenResult out;
  out.g_one_based = g;
  out.g_zero_based = g - 3;
  out.d = static_cast<int>(2 * g * g);

  // solutions of i1+i2+i3 = g over 1-based boxes
  std::vector<std::vector<long long>> sols_zero;
  for (std::size_t a = 1; a <= k1; ++a)
    for (std::size_t b = 1; b <= k2; ++b)
      for (std::size_t c = 1; c <= k3; ++c)
        if (static_cast<long long>(a + b + c) == g) {
          out.solutions.solutions.push_back(
              {static_cast<long long>(a), static_cast<long long>(b), static_cast<long long>(c)});
          sols_zero.push_back({static_cast<long long>(a) - 1, static_cast<long long>(b) - 1,
                               static_cast<long long>(c) - 1});
        }
  out.solutions.index_base = 1;
  if (out.solutions.solutions.empty())
    throw std::runtime_error("no solutions of i1+i2+i3 = g in range; empty GHZ level");

  // diagonal maps A(eps)|i,j> = eps^{(i-g)^2 + 2 i j} |i,j>, 1-based i, j
  std::vector<MatrixPoly> maps;
  int max_total = 0;
  for (std::size_t l = 0; l < 3; ++l) {
    const std::size_t ki = dims[l], kj = dims[(l + 1) % 3];
    MatrixPoly mp(static_cast<Eigen::Index>(ki * kj), static_cast<Eigen::Index>(ki * kj));
    for (std::size_t i = 1; i <= ki; ++i)
      for (std::size_t j = 1; j <= kj; ++j) {
        const long long e = (static_cast<long long>(i) - g) * (static_cast<long long>(i) - g) +
                            2 * static_cast<long long>(i) * static_cast<long long>(j);
        Matrix one = Matrix::Zero(static_cast<Eigen::Index>(ki * kj),
                                  static_cast<Eigen::Index>(ki * kj));
        const Eigen::Index p = static_cast<Eigen::Index>((i - 1) * kj + (j - 1));
        one(p, p) = 1.0;
        mp.add_term(static_cast<int>(e), one);
      }
    maps.push_back(mp);
    max_total += mp.max_exponent();
  }

  out.leading = leading_from_solutions(dims, sols_zero);
  out.ghz = verify_ghz_equivalence(out.leading, out.solutions.ghz_level());

  PlaquetteConversion conv;
  conv.name = "diag_mamu_to_ghz";
  conv.source = PlaquetteSpec{PlaquetteSpec::MaMu{dims}};
  conv.target = PlaquetteSpec{PlaquetteSpec::Custom{out.leading}};
  conv.party_maps = maps;
  conv.d = out.d;
  conv.e = max_total - out.d;
  out.conversion = conv;
  return out;
}

long long best_inhomogeneity_m3(std::size_t k1, std::size_t k2, std::size_t k3) {
  long long best_g = 3, best_count = -1;
  for (long long g = 3; g <= static_cast<long long>(k1 + k2 + k3); ++g) {
    long long count = 0;
    for (std::size_t a = 1; a <= k1; ++a)
      for (std::size_t b = 1; b <= k2; ++b)
        for (std::size_t c = 1; c <= k3; ++c)
          if (static_cast<long long>(a + b + c) == g) ++count;
    if (count > best_count) {
      best_count = count;
      best_g = g;
    }
  }
  return best_g;
}

std::vector<IntVec> cycle_orthogonal_vectors(std::size_t m) {
  if (m < 4) throw std::invalid_argument("cycle construction needs m >= 4");
  const std::size_t nu = m - 2;
  std::vector<IntVec> c(m, IntVec::Zero(static_cast<Eigen::Index>(nu)));
  c[0] = IntVec::Ones(static_cast<Eigen::Index>(nu));
  c[1](0) = -1;
  for (std::size_t l = 2; l <= m - 2; ++l) {
    c[l](static_cast<Eigen::Index>(l - 2)) = 1;
    c[l](static_cast<Eigen::Index>(l - 1)) = -1;
  }
  c[m - 1](static_cast<Eigen::Index>(nu - 1)) = 1;
  return c;
}

bool check_cycle_orthogonality(const std::vector<IntVec>& c) {
  const std::size_t m = c.size();
  for (std::size_t l = 0; l < m; ++l)
    for (std::size_t l2 = 0; l2 < m; ++l2) {
      const std::size_t dist = std::min((l2 + m - l) % m, (l + m - l2) % m);
      if (dist >= 2 && c[l].dot(c[l2]) != 0) return false;
    }
  return true;
}

std::size_t integer_rank(IntMat a) {
  // fraction-free (Bareiss) elimination
  const Eigen::Index rows = a.rows(), cols = a.cols();
  Eigen::Index rank = 0;
  long long prev = 1;
  for (Eigen::Index col = 0; col < cols && rank < rows; ++col) {
    Eigen::Index piv = -1;
    for (Eigen::Index r = rank; r < rows; ++r)
      if (a(r, col) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    a.row(rank).swap(a.row(piv));
    for (Eigen::Index r = rank + 1; r < rows; ++r) {
      for (Eigen::Index c2 = col + 1; c2 < cols; ++c2)
        a(r, c2) = (a(rank, col) * a(r, c2) - a(r, col) * a(rank, c2)) / prev;
      a(r, col) = 0;
    }
    prev = a(rank, col);
    ++rank;
  }
  return static_cast<std::size_t>(rank);
}

bool check_cycle_independence(const std::vector<IntVec>& c) {
  const std::size_t m = c.size();
  const std::size_t nu = static_cast<std::size_t>(c[0].size());
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t j2 = (j + 1) % m;
    IntMat rest(static_cast<Eigen::Index>(nu), static_cast<Eigen::Index>(m - 2));
    Eigen::Index col = 0;
    for (std::size_t l = 0; l < m; ++l)
      if (l != j && l != j2) rest.col(col++) = c[l];
    if (integer_rank(rest) != std::min<std::size_t>(nu, m - 2)) return false;
  }
  return true;
}

SmithResult smith_normal_form(const IntMat& a) {
  SmithResult s;
  s.d = a;
  const Eigen::Index rows = a.rows(), cols = a.cols();
  s.u = IntMat::Identity(rows, rows);
  s.v = IntMat::Identity(cols, cols);

  auto swap_rows = [&](Eigen::Index i, Eigen::Index j) {
    s.d.row(i).swap(s.d.row(j));
    s.u.row(i).swap(s.u.row(j));
  };
  auto swap_cols = [&](Eigen::Index i, Eigen::Index j) {
    s.d.col(i).swap(s.d.col(j));
    s.v.col(i).swap(s.v.col(j));
  };
  auto add_row = [&](Eigen::Index dst, Eigen::Index src, long long f) {
    s.d.row(dst) += f * s.d.row(src);
    s.u.row(dst) += f * s.u.row(src);
  };
  auto add_col = [&](Eigen::Index dst, Eigen::Index src, long long f) {
    s.d.col(dst) += f * s.d.col(src);
    s.v.col(dst) += f * s.v.col(src);
  };

  const Eigen::Index n = std::min(rows, cols);
  for (Eigen::Index t = 0; t < n; ++t) {
    while (true) {
      // smallest nonzero |entry| in the submatrix to the pivot position
      Eigen::Index pi = -1, pj = -1;
      long long best = 0;
      for (Eigen::Index i = t; i < rows; ++i)
        for (Eigen::Index j = t; j < cols; ++j)
          if (s.d(i, j) != 0 && (pi < 0 || std::abs(s.d(i, j)) < best)) {
            best = std::abs(s.d(i, j));
            pi = i;
            pj = j;
          }
      if (pi < 0) break;  // submatrix is zero
      if (pi != t) swap_rows(t, pi);
      if (pj != t) swap_cols(t, pj);

      bool reduced = true;
      for (Eigen::Index i = t + 1; i < rows; ++i)
        if (s.d(i, t) != 0) {
          add_row(i, t, -(s.d(i, t) / s.d(t, t)));
          if (s.d(i, t) != 0) reduced = false;
        }
      for (Eigen::Index j = t + 1; j < cols; ++j)
        if (s.d(t, j) != 0) {
          add_col(j, t, -(s.d(t, j) / s.d(t, t)));
          if (s.d(t, j) != 0) reduced = false;
        }
      if (!reduced) continue;

      // enforce divisibility of the remaining submatrix by the pivot
      bool divides = true;
      for (Eigen::Index i = t + 1; i < rows && divides; ++i)
        for (Eigen::Index j = t + 1; j < cols && divides; ++j)
          if (s.d(i, j) % s.d(t, t) != 0) {
            add_row(t, i, 1);
            divides = false;
          }
      if (divides) break;
    }
    if (s.d(t, t) < 0) {
      s.d.row(t) = -s.d.row(t);
      s.u.row(t) = -s.u.row(t);
    }
  }
  return s;
}

std::vector<std::vector<long long>> solve_cycle_system(const std::vector<IntVec>& c,
                                                       const IntVec& g, std::size_t k,
                                                       bool use_snf) {
  const std::size_t m = c.size();
  const Eigen::Index nu = c[0].size();
  std::vector<std::vector<long long>> sols;

  if (!use_snf) {
    // exhaustive search over the box, budgeted at k^m <= 1e7
    double total = 1.0;
    for (std::size_t l = 0; l < m; ++l) total *= static_cast<double>(k);
    if (total > 1e7) throw std::runtime_error("exhaustive enumeration exceeds the k^m budget");
    std::vector<long long> idx(m, 0);
    while (true) {
      IntVec lhs = IntVec::Zero(nu);
      for (std::size_t l = 0; l < m; ++l) lhs += idx[l] * c[l];
      if (lhs == g) sols.push_back(idx);
      std::size_t l = m;
      bool done = true;
      while (l-- > 0) {
        if (++idx[l] < static_cast<long long>(k)) {
          done = false;
          break;
        }
        idx[l] = 0;
      }
      if (done) break;
    }
    return sols;
  }

  IntMat a(nu, static_cast<Eigen::Index>(m));
  for (std::size_t l = 0; l < m; ++l) a.col(static_cast<Eigen::Index>(l)) = c[l];
  SmithResult s = smith_normal_form(a);

  // D y = U g; bound variables give the particular solution, the zero
  // columns of D parameterize the kernel through V
  IntVec ug = s.u * g;
  IntVec y0 = IntVec::Zero(static_cast<Eigen::Index>(m));
  std::vector<Eigen::Index> free_cols;
  for (Eigen::Index t = 0; t < static_cast<Eigen::Index>(m); ++t) {
    const long long dt = (t < nu && t < s.d.cols()) ? s.d(t, t) : 0;
    if (t < nu) {
      if (dt == 0) {
        if (ug(t) != 0) return sols;  // inconsistent
        free_cols.push_back(t);
      } else {
        if (ug(t) % dt != 0) return sols;  // no integer solutions
        y0(t) = ug(t) / dt;
      }
    } else {
      free_cols.push_back(t);
    }
  }

  IntVec x0 = s.v * y0;
  std::vector<IntVec> kernel;
  for (auto t : free_cols) kernel.push_back(s.v.col(t));

  if (kernel.empty()) {
    bool in_box = true;
    for (Eigen::Index j = 0; j < x0.size(); ++j)
      if (x0(j) < 0 || x0(j) >= static_cast<long long>(k)) in_box = false;
    if (in_box) {
      std::vector<long long> sol(x0.data(), x0.data() + x0.size());
      sols.push_back(sol);
    }
    return sols;
  }
  if (kernel.size() != 2)
    throw std::runtime_error("unexpected kernel rank in the cycle system");

  // conservative scan window covering every box solution: pick rows making
  // the kernel directions invertible and bound y through the 2x2 inverse
  long long det = 0;
  Eigen::Index r1 = 0, r2 = 1;
  for (Eigen::Index i = 0; i < x0.size() && det == 0; ++i)
    for (Eigen::Index j = i + 1; j < x0.size() && det == 0; ++j) {
      const long long dd = kernel[0](i) * kernel[1](j) - kernel[0](j) * kernel[1](i);
      if (dd != 0) {
        det = dd;
        r1 = i;
        r2 = j;
      }
    }
  if (det == 0) throw std::runtime_error("kernel vectors are not independent");
  long long adj_max = std::max({std::abs(kernel[1](r2)), std::abs(kernel[1](r1)),
                                std::abs(kernel[0](r2)), std::abs(kernel[0](r1))});
  long long x0_max = 0;
  for (Eigen::Index j = 0; j < x0.size(); ++j) x0_max = std::max(x0_max, std::abs(x0(j)));
  const long long bound =
      2 * adj_max * (static_cast<long long>(k) + x0_max) / std::max<long long>(1, std::abs(det)) + 2;

  for (long long y1 = -bound; y1 <= bound; ++y1)
    for (long long y2 = -bound; y2 <= bound; ++y2) {
      IntVec x = x0 + y1 * kernel[0] + y2 * kernel[1];
      bool in_box = true;
      for (Eigen::Index j = 0; j < x.size(); ++j)
        if (x(j) < 0 || x(j) >= static_cast<long long>(k)) {
          in_box = false;
          break;
        }
      if (in_box) {
        std::vector<long long> sol(x.data(), x.data() + x.size());
        sols.push_back(sol);
      }
    }
  std::sort(sols.begin(), sols.end());
  sols.erase(std::unique(sols.begin(), sols.end()), sols.end());
  return sols;
}

std::pair<std::vector<MatrixPoly>, int> diagonal_maps_from_vectors(
    const std::vector<IntVec>& c, const IntVec& g, std::size_t k) {
  const std::size_t m = c.size();
  if (!check_cycle_orthogonality(c))
    throw std::invalid_argument("vectors violate the cyclic orthogonality condition");

  // raw_l(i,j) = |c_l|^2 i^2 - 2<g,c_l> i + 2<c_l,c_{l+1}> i j (+ |g|^2 on l=0);
  // summing over the cycle gives ||sum c_l i_l - g||^2 exactly
  std::vector<MatrixPoly> maps;
  int d_total = 0;
  for (std::size_t l = 0; l < m; ++l) {
    const long long cc = c[l].dot(c[l]);
    const long long gc = g.dot(c[l]);
    const long long cross = c[l].dot(c[(l + 1) % m]);
    auto raw = [&](long long i, long long j) {
      long long v = cc * i * i - 2 * gc * i + 2 * cross * i * j;
      if (l == 0) v += g.dot(g);
      return v;
    };
    long long mn = raw(0, 0);
    for (long long i = 0; i < static_cast<long long>(k); ++i)
      for (long long j = 0; j < static_cast<long long>(k); ++j) mn = std::min(mn, raw(i, j));
    const long long shift = -mn;
    d_total += static_cast<int>(shift);

    const Eigen::Index dim = static_cast<Eigen::Index>(k * k);
    MatrixPoly mp(dim, dim);
    for (long long i = 0; i < static_cast<long long>(k); ++i)
      for (long long j = 0; j < static_cast<long long>(k); ++j) {
        Matrix one = Matrix::Zero(dim, dim);
        const Eigen::Index p = static_cast<Eigen::Index>(i * static_cast<long long>(k) + j);
        one(p, p) = 1.0;
        mp.add_term(static_cast<int>(raw(i, j) + shift), one);
      }
    maps.push_back(mp);
  }
  return {maps, d_total};
}

DiagonalDegenResult mamu4_to_ghz(std::size_t k) {
  if (k < 2) throw std::invalid_argument("mamu4_to_ghz needs k >= 2");
  const auto c = cycle_orthogonal_vectors(4);
  IntVec g(2);
  g(0) = g(1) = static_cast<long long>(k / 2);  // k/2 even, (k-1)/2 odd

  DiagonalDegenResult out;
  out.g_zero_based = g(0);
  out.g_one_based = g(0) + 1;  // each row of the system has coefficient sum 1
  out.solutions.solutions = solve_cycle_system(c, g, k, /*use_snf=*/true);
  out.solutions.index_base = 0;
  if (out.solutions.solutions.empty())
    throw std::runtime_error("m=4 construction produced no solutions");

  auto [maps, d] = diagonal_maps_from_vectors(c, g, k);
  out.d = d;

  const std::vector<std::size_t> dims(4, k);
  out.leading = leading_from_solutions(dims, out.solutions.solutions);
  out.ghz = verify_ghz_equivalence(out.leading, out.solutions.ghz_level());

  int max_total = 0;
  for (const auto& mp : maps) max_total += mp.max_exponent();

  PlaquetteConversion conv;
  conv.name = "mamu4_to_ghz";
  conv.source = PlaquetteSpec{PlaquetteSpec::MaMu{dims}};
  conv.target = PlaquetteSpec{PlaquetteSpec::Custom{out.leading}};
  conv.party_maps = maps;
  conv.d = d;
  conv.e = max_total - d;
  out.conversion = conv;
  return out;
}

}  // namespace bordertn
