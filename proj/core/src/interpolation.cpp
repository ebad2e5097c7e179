// SPDX-License-Identifier: Apache-2.0
#include "bordertn/interpolation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bordertn/parallel.hpp"

namespace bordertn {

std::vector<cx> lagrange_weights(const std::vector<cx>& points) {
  using lcx = std::complex<long double>;
  const std::size_t n = points.size();
  if (n == 0) throw std::invalid_argument("need at least one point");
  for (std::size_t i = 0; i < n; ++i) {
    if (points[i] == cx{0.0, 0.0})
      throw std::invalid_argument("sample points must be nonzero");
    for (std::size_t j = i + 1; j < n; ++j)
      if (points[i] == points[j]) throw std::invalid_argument("duplicate sample point");
  }
  // extended precision keeps the partition of unity tight even for the
  // badly conditioned extrapolation weights of real-point plans
  std::vector<lcx> w(n, lcx{1.0L, 0.0L});
  double wmax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const lcx xi{points[i].real(), points[i].imag()};
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const lcx xj{points[j].real(), points[j].imag()};
      w[i] *= (-xj) / (xi - xj);
    }
    wmax = std::max(wmax, static_cast<double>(std::abs(w[i])));
  }
  lcx s{0.0L, 0.0L};
  for (const auto& v : w) s += v;
  const double tolerance = std::max(1e-12, 64.0 * n * 5.5e-20 * wmax);
  if (static_cast<double>(std::abs(s - lcx{1.0L, 0.0L})) > tolerance)
    throw std::runtime_error("Lagrange weights violate the partition of unity");

  std::vector<cx> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = cx{static_cast<double>(w[i].real()), static_cast<double>(w[i].imag())};
  return out;
}

double InterpolationPlan::condition() const {
  double m = 0.0;
  for (const auto& w : weights) m = std::max(m, std::abs(w));
  return m;
}

namespace {

std::vector<cx> default_points(SampleMode mode, int degree, double radius) {
  if (degree < 0) throw std::invalid_argument("degree must be >= 0");
  if (radius <= 0.0) throw std::invalid_argument("radius must be positive");
  const std::size_t n = static_cast<std::size_t>(degree) + 1;
  std::vector<cx> pts(n);
  if (mode == SampleMode::kComplex) {
    for (std::size_t i = 0; i < n; ++i) {
      const double th = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
      pts[i] = std::polar(radius, th);
    }
  } else {
    // Chebyshev points on [-radius, radius], rotated by a quarter spacing
    // so no node lands on zero. Interpolating at the interior point 0
    // keeps the weights O(1); one-sided nodes on [radius/2, radius] would
    // extrapolate with |gamma| ~ 1e5 already at degree 8.
    for (std::size_t i = 0; i < n; ++i) {
      const double th = (2.0 * static_cast<double>(i) + 1.5) * std::numbers::pi /
                        (2.0 * static_cast<double>(n));
      pts[i] = cx{radius * std::cos(th), 0.0};
    }
  }
  return pts;
}

/// A fresh evaluation point away from the plan's samples, used for the
/// holdout consistency check. The real-mode point sits just outside
/// [-radius, radius], at least 0.1 radius from every node.
cx holdout_point(SampleMode mode, double radius) {
  if (mode == SampleMode::kComplex) return std::polar(0.83 * radius, 0.37);
  return cx{1.1 * radius, 0.0};
}

/// Interpolating polynomial through (points, values) evaluated at x
/// (barycentric form).
cx barycentric_eval(const std::vector<cx>& points, const std::vector<cx>& values, cx x) {
  const std::size_t n = points.size();
  std::vector<cx> bw(n, cx{1.0, 0.0});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) bw[i] /= (points[i] - points[j]);
  cx num{0.0, 0.0}, den{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    if (x == points[i]) return values[i];
    const cx c = bw[i] / (x - points[i]);
    num += c * values[i];
    den += c;
  }
  return num / den;
}

double relative_error(cx got, cx expected) {
  const double scale = std::max(std::abs(expected), 1e-300);
  return std::abs(got - expected) / scale;
}

}  // namespace

InterpolationPlan make_plan(SampleMode mode, int degree, double radius) {
  InterpolationPlan plan;
  plan.degree = degree;
  plan.points = default_points(mode, degree, radius);
  plan.weights = lagrange_weights(plan.points);
  return plan;
}

DenseTensor apply_product_observable(const DenseTensor& state, const ProductObservable& obs) {
  DenseTensor out = state;
  for (const auto& [v, m] : obs) {
    if (static_cast<std::size_t>(m.rows()) != static_cast<std::size_t>(m.cols()) ||
        static_cast<std::size_t>(m.cols()) != state.leg(v).dim)
      throw std::invalid_argument("observable on '" + v + "' must be square of the leg dim");
    out = apply_local_map(out, v, m);
  }
  return out;
}

cx dense_expectation(const DenseTensor& state, const ProductObservable& obs) {
  return inner_product(state, apply_product_observable(state, obs));
}

ReconstructionResult reconstruct_state(const LiftedDegeneration& lifted, SampleMode mode,
                                       double radius) {
  ReconstructionResult r;
  r.plan = make_plan(mode, lifted.degree, radius);
  const std::size_t n = r.plan.points.size();

  std::vector<DenseTensor> samples = parallel_map<DenseTensor>(
      n, [&](std::size_t i) { return evaluate_t(lifted, r.plan.points[i]); });

  DenseTensor acc(samples[0].legs());
  r.summands.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    r.summands.push_back(scalar_mul(r.plan.weights[i], samples[i]));
    acc = add(acc, r.summands[i]);
  }
  r.state = acc;

  // holdout consistency: the fitted polynomial must reproduce a direct
  // evaluation at an unused point, else the degree was underestimated
  const cx x = holdout_point(mode, radius);
  DenseTensor direct = evaluate_t(lifted, x);
  std::vector<cx> bw(n, cx{1.0, 0.0});
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) bw[i] /= (r.plan.points[i] - r.plan.points[j]);
  cx den{0.0, 0.0};
  std::vector<cx> coef(n);
  for (std::size_t i = 0; i < n; ++i) {
    coef[i] = bw[i] / (x - r.plan.points[i]);
    den += coef[i];
  }
  DenseTensor fitted(samples[0].legs());
  for (std::size_t i = 0; i < n; ++i) fitted = add(fitted, scalar_mul(coef[i] / den, samples[i]));
  const double dn = std::max(direct.norm(), 1e-300);
  r.holdout_residual = sub(fitted, direct).norm() / dn;
  if (r.holdout_residual > kHoldoutErrorThreshold)
    throw std::runtime_error("interpolation degree underestimated (holdout residual " +
                             std::to_string(r.holdout_residual) + ")");
  return r;
}

namespace {

ExpectationResult expectation_impl(const LiftedDegeneration& lifted,
                                   const ProductObservable& obs, SampleMode mode,
                                   double radius, bool sesquilinear) {
  ExpectationResult r;
  const int degree = 2 * lifted.degree;
  r.plan = make_plan(mode, degree, radius);
  const std::size_t n = r.plan.points.size();

  r.per_point = parallel_map<cx>(n, [&](std::size_t i) {
    const cx eps = r.plan.points[i];
    DenseTensor ket = evaluate_t(lifted, eps);
    DenseTensor bra = sesquilinear ? evaluate_t(lifted, std::conj(eps)) : ket;
    return inner_product(bra, apply_product_observable(ket, obs));
  });

  cx v{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) v += r.plan.weights[i] * r.per_point[i];
  r.value = v;
  r.condition = r.plan.condition();

  const cx x = holdout_point(mode, radius);
  DenseTensor ket = evaluate_t(lifted, x);
  DenseTensor bra = sesquilinear ? evaluate_t(lifted, std::conj(x)) : ket;
  const cx direct = inner_product(bra, apply_product_observable(ket, obs));
  const cx fitted = barycentric_eval(r.plan.points, r.per_point, x);
  r.holdout_residual = relative_error(fitted, direct);
  if (r.holdout_residual > kHoldoutErrorThreshold)
    throw std::runtime_error("expectation degree underestimated (holdout residual " +
                             std::to_string(r.holdout_residual) + ")");
  return r;
}

}  // namespace

ExpectationResult expectation_real(const LiftedDegeneration& lifted,
                                   const ProductObservable& obs, double radius) {
  // real points: <T(eps)|O|T(eps)> is a real polynomial of degree 2eF
  return expectation_impl(lifted, obs, SampleMode::kReal, radius, /*sesquilinear=*/false);
}

ExpectationResult expectation_complex(const LiftedDegeneration& lifted,
                                      const ProductObservable& obs, double radius) {
  // <T(conj eps)|O T(eps)> is analytic in eps, again of degree 2eF
  return expectation_impl(lifted, obs, SampleMode::kComplex, radius, /*sesquilinear=*/true);
}

cx expectation_least_squares(const LiftedDegeneration& lifted, const ProductObservable& obs,
                             SampleMode mode, std::size_t n_points, double radius) {
  const int degree = 2 * lifted.degree;
  if (n_points < static_cast<std::size_t>(degree) + 1)
    throw std::invalid_argument("need at least degree+1 points");
  std::vector<cx> pts(n_points);
  if (mode == SampleMode::kComplex) {
    for (std::size_t i = 0; i < n_points; ++i)
      pts[i] = std::polar(radius, 2.0 * std::numbers::pi * static_cast<double>(i) /
                                      static_cast<double>(n_points));
  } else {
    const double a = radius / 2.0, b = radius;
    for (std::size_t i = 0; i < n_points; ++i) {
      const double th = (2.0 * static_cast<double>(i) + 1.0) * std::numbers::pi /
                        (2.0 * static_cast<double>(n_points));
      pts[i] = cx{0.5 * (a + b) + 0.5 * (b - a) * std::cos(th), 0.0};
    }
  }
  std::vector<cx> vals = parallel_map<cx>(n_points, [&](std::size_t i) {
    const cx eps = pts[i];
    DenseTensor ket = evaluate_t(lifted, eps);
    DenseTensor bra = (mode == SampleMode::kComplex) ? evaluate_t(lifted, std::conj(eps)) : ket;
    return inner_product(bra, apply_product_observable(ket, obs));
  });

  Matrix vand(n_points, degree + 1);
  Eigen::VectorXcd rhs(n_points);
  for (std::size_t i = 0; i < n_points; ++i) {
    cx p{1.0, 0.0};
    for (int k = 0; k <= degree; ++k) {
      vand(i, k) = p;
      p *= pts[i];
    }
    rhs(i) = vals[i];
  }
  Eigen::VectorXcd coef = vand.colPivHouseholderQr().solve(rhs);
  return coef(0);
}

}  // namespace bordertn
