#pragma once

#include <vector>

#include "pea/error.hpp"

namespace pea {

// One estimated expectation value at a noise gain.
struct GainPoint {
  double gain;
  double mean;
  double std_error;
  long long shots;
};

// Series of estimates at strictly increasing gains. Means must share one
// sign and be statistically distinguishable from zero, otherwise the
// log-transform below is meaningless.
struct GainSeries {
  std::vector<GainPoint> points;
};

struct FitResult {
  double slope;            // of ln|mean| vs gain
  double intercept;        // value at gain 0, in log space
  double intercept_error;  // propagated from the per-point relative errors
  int sign;                // common sign of the means
};

struct ExtrapolationResult {
  double value;  // sign * exp(intercept)
  double error;  // exp(intercept) * intercept_error, first order
  FitResult fit;
};

// Ordinary least squares on (gain, ln|mean|). The per-point errors
// delta_y = std_error / |mean| enter only the propagated intercept error:
//   intercept_error = sqrt(sum_j delta_y_j^2 [sum_i x_i (x_i - x_j)]^2) / D,
//   D = R sum x^2 - (sum x)^2.
// With `weighted` set, a 1/delta_y^2-weighted fit is used instead (all
// std_errors must then be positive); the default is the unweighted form.
//
// Errors: gain count < 2 or non-increasing gains -> invalid argument;
// |mean| <= 3 std_error at any point -> signal_lost; mixed signs ->
// sign_inconsistency.
FitResult fit_log_linear(const GainSeries& series, bool weighted = false);

ExtrapolationResult extrapolate(const FitResult& fit);

}  // namespace pea
