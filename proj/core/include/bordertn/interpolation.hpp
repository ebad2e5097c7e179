// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <string>
#include <vector>

#include "bordertn/conversions.hpp"

namespace bordertn {

enum class SampleMode { kReal, kComplex };

/// gamma_i = l_i(0), the Lagrange basis polynomials of `points` at zero.
/// Enforces the partition-of-unity identity sum gamma_i = 1.
std::vector<cx> lagrange_weights(const std::vector<cx>& points);

/// Sample points epsilon_i and the weights recombining samples into the
/// value at epsilon = 0.
struct InterpolationPlan {
  std::vector<cx> points;
  std::vector<cx> weights;
  int degree = 0;

  double condition() const;  // max |gamma_i|
};

/// degree+1 points: scaled roots of unity (complex mode) or Chebyshev
/// points on [radius/2, radius] (real mode).
InterpolationPlan make_plan(SampleMode mode, int degree, double radius = 0.7);

/// Warn threshold for the plan condition estimate.
inline constexpr double kConditionWarnThreshold = 1e6;
/// Relative holdout residual above which a degree underestimate is assumed.
inline constexpr double kHoldoutErrorThreshold = 1e-6;

/// Product observable: one matrix per vertex, identity where absent.
using ProductObservable = std::map<std::string, Matrix>;

struct ReconstructionResult {
  DenseTensor state;                   // sum_i W_i
  std::vector<DenseTensor> summands;   // W_i = gamma_i T(eps_i)
  InterpolationPlan plan;
  double holdout_residual = 0.0;       // relative, at one extra sample point
};

/// Theorem-1 state reconstruction: T = sum_i gamma_i T(eps_i) from
/// degree+1 samples. Throws when the holdout check detects a degree
/// underestimate.
ReconstructionResult reconstruct_state(const LiftedDegeneration& lifted,
                                       SampleMode mode = SampleMode::kComplex,
                                       double radius = 0.7);

struct ExpectationResult {
  cx value;
  InterpolationPlan plan;
  std::vector<cx> per_point;
  double condition = 0.0;
  double holdout_residual = 0.0;
};

/// <O>_T from 2*degree+1 real-point samples of <T(eps)|O|T(eps)>.
ExpectationResult expectation_real(const LiftedDegeneration& lifted,
                                   const ProductObservable& obs,
                                   double radius = 0.7);

/// Complex variant interpolating the analytic polynomial
/// <T(conj(eps))|O T(eps)> at zero, sampled on scaled roots of unity.
ExpectationResult expectation_complex(const LiftedDegeneration& lifted,
                                      const ProductObservable& obs,
                                      double radius = 0.7);

/// Least-squares oversampling variant on n_points >= 2*degree+1 samples.
cx expectation_least_squares(const LiftedDegeneration& lifted,
                             const ProductObservable& obs, SampleMode mode,
                             std::size_t n_points, double radius = 0.7);

/// Dense <T|O|T> for a product observable (no interpolation).
cx dense_expectation(const DenseTensor& state, const ProductObservable& obs);

DenseTensor apply_product_observable(const DenseTensor& state,
                                     const ProductObservable& obs);

}  // namespace bordertn
