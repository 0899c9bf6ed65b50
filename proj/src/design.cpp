#include "pea/design.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pea {

FidelityProduct make_fidelity_product(double k, double k_tilde) {
  require(k > 0.0 && k <= 1.0, ErrorCode::domain, "K must lie in (0, 1]");
  require(k_tilde > 0.0 && k_tilde <= 1.0, ErrorCode::domain, "K_tilde must lie in (0, 1]");
  return {k, k_tilde, k_tilde / k};
}

double lambert_w0(double x) {
  constexpr double kInvE = 0.36787944117144233;  // 1/e
  require(std::isfinite(x), ErrorCode::domain, "lambert_w0: non-finite argument");
  require(x >= -kInvE, ErrorCode::domain, "lambert_w0: argument below -1/e");
  if (x == 0.0) return 0.0;

  double w;
  if (x < -kInvE + 0.04) {
    // Branch-point series in p = sqrt(2 (e x + 1)).
    double p = std::sqrt(2.0 * (M_E * x + 1.0));
    w = -1.0 + p - p * p / 3.0 + 11.0 * p * p * p / 72.0;
  } else if (x < 0.0) {
    w = x * (1.0 - x);
  } else if (x < M_E) {
    w = std::log1p(x);
  } else {
    double l1 = std::log(x);
    double l2 = std::log(l1);
    w = l1 - l2 + l2 / l1;
  }

  for (int iter = 0; iter < 50; ++iter) {
    double ew = std::exp(w);
    double f = w * ew - x;
    double denom = ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0);
    double step = f / denom;
    w -= step;
    if (std::abs(step) <= 1e-14 * (1.0 + std::abs(w))) break;
  }
  require(std::abs(w * std::exp(w) - x) <= 1e-11 * std::max(1.0, std::abs(x)),
          ErrorCode::convergence, "lambert_w0 failed to converge");
  return w;
}

namespace {

// W(1/e): fixed point of the optimal-gain algebra.
double w_inv_e() {
  static const double value = lambert_w0(0.36787944117144233);
  return value;
}

}  // namespace

GainPair optimal_gains(const FidelityProduct& fp) {
  require(fp.kappa > 1.0, ErrorCode::design,
          "optimal gains need kappa > 1 (target weaker than hardware along the observable)");
  double g2 = 1.0 + (w_inv_e() + 1.0) / std::log(fp.kappa);
  return {1.0, g2};
}

std::vector<double> optimal_shot_weights(const std::vector<double>& gains,
                                         const FidelityProduct& fp) {
  std::size_t r = gains.size();
  require(r >= 2, ErrorCode::design, "need at least two gains");
  std::vector<double> weights(r);
  for (std::size_t j = 0; j < r; ++j) {
    double lever = 0.0;
    for (std::size_t i = 0; i < r; ++i) lever += gains[i] * (gains[i] - gains[j]);
    weights[j] = std::abs(lever * std::pow(fp.kappa, gains[j]) / fp.k_tilde);
  }
  return weights;
}

ShotPlan optimal_shots(const std::vector<double>& gains, const FidelityProduct& fp,
                       long long total) {
  std::size_t r = gains.size();
  require(r >= 2, ErrorCode::design, "need at least two gains");
  std::vector<double> distinct = gains;
  std::sort(distinct.begin(), distinct.end());
  require(std::adjacent_find(distinct.begin(), distinct.end()) == distinct.end(),
          ErrorCode::design, "gains must be distinct");
  require(total >= static_cast<long long>(r), ErrorCode::design,
          "shot budget below one shot per gain");

  std::vector<double> weights = optimal_shot_weights(gains, fp);
  double weight_sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  require(weight_sum > 0.0, ErrorCode::design, "degenerate gain set: all allocation weights zero");

  std::vector<long long> shots(r, 0);
  std::vector<std::pair<double, std::size_t>> remainders(r);
  long long assigned = 0;
  for (std::size_t j = 0; j < r; ++j) {
    double ideal = static_cast<double>(total) * weights[j] / weight_sum;
    shots[j] = static_cast<long long>(std::floor(ideal));
    remainders[j] = {ideal - std::floor(ideal), j};
    assigned += shots[j];
  }
  std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  long long deficit = total - assigned;  // < r by construction
  for (long long e = 0; e < deficit; ++e) {
    shots[remainders[static_cast<std::size_t>(e)].second] += 1;
  }
  // Floor at one shot per gain, taking from the largest allocation.
  for (std::size_t j = 0; j < r; ++j) {
    while (shots[j] < 1) {
      std::size_t donor = static_cast<std::size_t>(
          std::distance(shots.begin(), std::max_element(shots.begin(), shots.end())));
      require(shots[donor] > 1, ErrorCode::internal, "cannot satisfy one shot per gain");
      shots[donor] -= 1;
      shots[j] += 1;
    }
  }
  return {gains, std::move(shots), total};
}

double min_error_bound(const FidelityProduct& fp, long long total) {
  require(fp.kappa > 1.0, ErrorCode::design, "minimum-error bound needs kappa > 1");
  require(total >= 1, ErrorCode::invalid_argument, "shot budget must be positive");
  return fp.k_tilde / (fp.k * std::sqrt(static_cast<double>(total))) *
         (1.0 + std::log(fp.kappa) / w_inv_e());
}

double error_of_design(const std::vector<double>& gains, const std::vector<double>& shots,
                       const FidelityProduct& fp) {
  std::size_t r = gains.size();
  require(r >= 2 && shots.size() == r, ErrorCode::invalid_argument,
          "gains and shots must have matching length >= 2");
  for (double s : shots) {
    require(s > 0.0 && std::isfinite(s), ErrorCode::invalid_argument, "shots must be positive");
  }
  double sg = 0.0, sgg = 0.0;
  for (double g : gains) {
    sg += g;
    sgg += g * g;
  }
  double det = static_cast<double>(r) * sgg - sg * sg;
  require(det > 1e-300, ErrorCode::design, "all gains equal: design is singular");

  double sum = 0.0;
  for (std::size_t j = 0; j < r; ++j) {
    double lever = 0.0;
    for (std::size_t i = 0; i < r; ++i) lever += gains[i] * (gains[i] - gains[j]);
    double amp = std::pow(fp.kappa, gains[j]);
    sum += lever * lever * amp * amp / shots[j];
  }
  return std::sqrt(sum) / det;
}

}  // namespace pea
