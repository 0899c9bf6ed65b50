#pragma once

#include <vector>

#include "pea/error.hpp"

namespace pea {

// Fidelity products of the propagated observable: K over hardware rates,
// K_tilde over target rates, both taken over the same channel set.
struct FidelityProduct {
  double k;
  double k_tilde;
  double kappa;  // k_tilde / k
};

FidelityProduct make_fidelity_product(double k, double k_tilde);

// Shot allocation over a set of noise gains, integers summing to total.
struct ShotPlan {
  std::vector<double> gains;
  std::vector<long long> shots;
  long long total;
};

// Principal branch W0 on [-1/e, inf): w e^w = x, w >= -1. Halley iteration
// from a series/log seed; absolute residual <= 1e-12.
double lambert_w0(double x);

// Two-gain optimum for the single-exponential model: G1 = 1,
// G2 = 1 + (W(1/e) + 1) / ln kappa. Requires kappa > 1.
struct GainPair {
  double g1;
  double g2;
};
GainPair optimal_gains(const FidelityProduct& fp);

// Real-valued optimal allocation weights |A_j|, A_j = sum_i G_i (G_i - G_j)
// kappa^{G_j} / k_tilde.
std::vector<double> optimal_shot_weights(const std::vector<double>& gains,
                                         const FidelityProduct& fp);

// Largest-remainder rounding of the optimal allocation, floored at one shot
// per gain; shot counts sum to total.
ShotPlan optimal_shots(const std::vector<double>& gains, const FidelityProduct& fp,
                       long long total);

// Closed-form minimum random extrapolation error at the two-gain optimum:
// (k_tilde / (k sqrt(M))) (1 + ln(kappa) / W(1/e)). Requires kappa > 1.
double min_error_bound(const FidelityProduct& fp, long long total);

// Random error of an arbitrary design {G_i, S_i}; shots may be real-valued.
double error_of_design(const std::vector<double>& gains, const std::vector<double>& shots,
                       const FidelityProduct& fp);

}  // namespace pea
