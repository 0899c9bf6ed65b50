#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pea/circuit.hpp"
#include "pea/design.hpp"
#include "pea/noise_model.hpp"
#include "pea/pauli.hpp"

namespace pea {

// How one channel's sampled rate moves with the noise gain G so that the
// G -> 0 extrapolation lands on the target rate:
//   reduce   0 < target < hardware   rate (l - lt) G + lt
//   keep     target == hardware      rate l, constant
//   raise    target > hardware > 0   rate lt, constant
//   inject   hardware == 0 < target  rate lt, constant
//   mitigate target == 0 < hardware  rate l G (plain amplification)
enum class AmplificationCase { reduce, keep, raise, inject, mitigate };

const char* amplification_case_name(AmplificationCase c);
AmplificationCase classify_channel(double lambda, double lambda_tilde);

// Sampled rate of a channel at noise gain G (G >= 0 for prediction).
double effective_rate(AmplificationCase c, double lambda, double lambda_tilde, double gain);

// Per-channel amplification schedule between a hardware and a target noise
// model. Channel set is the union of both supports, kept in a fixed
// lexicographic order that also fixes the RNG substream indices.
class AmplificationPlan {
public:
  struct Channel {
    PauliString pauli;
    AmplificationCase kase;
    double lambda;        // hardware rate
    double lambda_tilde;  // target rate
  };

  static AmplificationPlan build(const NoiseLayerModel& hardware, const NoiseLayerModel& target);
  static AmplificationPlan keep_model(const NoiseLayerModel& model);  // target == hardware

  int n_qubits() const { return n_qubits_; }
  const std::vector<Channel>& channels() const { return channels_; }

  double effective_rate_at(std::size_t channel_index, double gain) const;

  std::string summary_json() const;
  std::string summary_table() const;

private:
  AmplificationPlan(int n_qubits, std::vector<Channel> channels);

  int n_qubits_;
  std::vector<Channel> channels_;
};

// Clifford closed form: <O>_ideal times exp(-2 sum of effective rates of
// plan channels anticommuting with the propagated observable), over all
// noisy layers. Throws ErrorCode::not_clifford for non-Clifford circuits.
double predict_noisy_expectation(const CircuitSpec& circuit, const AmplificationPlan& plan,
                                 const PauliString& observable, double gain);

// K and K_tilde along the propagated observable (Clifford circuits only).
FidelityProduct fidelity_products(const CircuitSpec& circuit, const AmplificationPlan& plan,
                                  const PauliString& observable);

struct SampleResult {
  double mean;
  double std_error;
  long long shots;
};

// Monte Carlo estimate at gain G >= 1: per shot, every plan channel is
// independently inserted before each noisy layer with probability
// 1 - w(effective rate), and the observable is evaluated exactly on the
// resulting statevector. Deterministic in (seed); worker count only
// partitions the shot range.
SampleResult sample_noisy_expectation(const CircuitSpec& circuit, const AmplificationPlan& plan,
                                      const PauliString& observable, double gain, long long shots,
                                      std::uint64_t seed, int threads = 1);

}  // namespace pea
