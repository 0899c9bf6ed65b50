#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace pea {

// Pairwise (cascade) summation: deterministic for a given value order and
// better conditioned than a running sum.
inline double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  std::size_t half = values.size() / 2;
  return pairwise_sum(values.subspan(0, half)) + pairwise_sum(values.subspan(half));
}

struct MeanStdError {
  double mean;
  double std_error;  // sample standard deviation / sqrt(n); 0 for n == 1
};

inline MeanStdError mean_and_std_error(std::span<const double> values) {
  std::size_t n = values.size();
  double mean = pairwise_sum(values) / static_cast<double>(n);
  if (n < 2) return {mean, 0.0};
  std::vector<double> sq(n);
  for (std::size_t i = 0; i < n; ++i) sq[i] = (values[i] - mean) * (values[i] - mean);
  double ss = pairwise_sum(sq);
  return {mean, std::sqrt(ss / (static_cast<double>(n - 1) * static_cast<double>(n)))};
}

}  // namespace pea
