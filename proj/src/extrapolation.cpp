#include "pea/extrapolation.hpp"

#include <cmath>
#include <string>

namespace pea {

namespace {

void validate_series(const GainSeries& series) {
  require(series.points.size() >= 2, ErrorCode::invalid_argument,
          "fit needs at least two gain points");
  for (std::size_t i = 0; i < series.points.size(); ++i) {
    const GainPoint& p = series.points[i];
    require(std::isfinite(p.gain) && std::isfinite(p.mean) && std::isfinite(p.std_error),
            ErrorCode::invalid_argument, "gain series contains non-finite entries");
    require(p.std_error >= 0.0, ErrorCode::invalid_argument, "std_error must be >= 0");
    require(p.shots >= 1, ErrorCode::invalid_argument, "shots must be >= 1");
    if (i > 0) {
      require(series.points[i - 1].gain < p.gain, ErrorCode::invalid_argument,
              "gains must be strictly increasing");
    }
  }
  for (const GainPoint& p : series.points) {
    require(std::abs(p.mean) > 3.0 * p.std_error, ErrorCode::signal_lost,
            "signal lost: |mean| <= 3 std_error at gain " + std::to_string(p.gain));
  }
  bool positive = series.points.front().mean > 0.0;
  for (const GainPoint& p : series.points) {
    require((p.mean > 0.0) == positive, ErrorCode::sign_inconsistency,
            "gain series mixes signs; no common exponential fits");
  }
}

}  // namespace

FitResult fit_log_linear(const GainSeries& series, bool weighted) {
  validate_series(series);
  std::size_t r = series.points.size();
  std::vector<double> x(r), y(r), dy(r);
  for (std::size_t i = 0; i < r; ++i) {
    x[i] = series.points[i].gain;
    y[i] = std::log(std::abs(series.points[i].mean));
    dy[i] = series.points[i].std_error / std::abs(series.points[i].mean);
  }
  int sign = series.points.front().mean > 0.0 ? +1 : -1;

  if (weighted) {
    double sw = 0, swx = 0, swxx = 0, swy = 0, swxy = 0;
    for (std::size_t i = 0; i < r; ++i) {
      require(dy[i] > 0.0, ErrorCode::invalid_argument,
              "weighted fit needs positive std_error on every point");
      double w = 1.0 / (dy[i] * dy[i]);
      sw += w;
      swx += w * x[i];
      swxx += w * x[i] * x[i];
      swy += w * y[i];
      swxy += w * x[i] * y[i];
    }
    double det = sw * swxx - swx * swx;
    require(det > 0.0, ErrorCode::invalid_argument, "degenerate weighted design");
    double intercept = (swxx * swy - swx * swxy) / det;
    double slope = (sw * swxy - swx * swy) / det;
    double intercept_error = std::sqrt(swxx / det);
    return {slope, intercept, intercept_error, sign};
  }

  double sx = 0, sxx = 0, sy = 0, sxy = 0;
  for (std::size_t i = 0; i < r; ++i) {
    sx += x[i];
    sxx += x[i] * x[i];
    sy += y[i];
    sxy += x[i] * y[i];
  }
  double det = static_cast<double>(r) * sxx - sx * sx;
  require(det > 0.0, ErrorCode::invalid_argument, "degenerate design (gains too close)");
  double intercept = (sxx * sy - sx * sxy) / det;
  double slope = (static_cast<double>(r) * sxy - sx * sy) / det;

  double var_sum = 0.0;
  for (std::size_t j = 0; j < r; ++j) {
    double lever = 0.0;
    for (std::size_t i = 0; i < r; ++i) lever += x[i] * (x[i] - x[j]);
    var_sum += dy[j] * dy[j] * lever * lever;
  }
  double intercept_error = std::sqrt(var_sum) / det;
  return {slope, intercept, intercept_error, sign};
}

ExtrapolationResult extrapolate(const FitResult& fit) {
  require(std::isfinite(fit.slope) && std::isfinite(fit.intercept) &&
              std::isfinite(fit.intercept_error),
          ErrorCode::invalid_argument, "fit result must be finite");
  double scale = std::exp(fit.intercept);
  return {fit.sign * scale, scale * fit.intercept_error, fit};
}

}  // namespace pea
