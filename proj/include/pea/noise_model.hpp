#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pea/pauli.hpp"

namespace pea {

// One sparse Pauli-Lindblad noise layer: a set of weight-1/2 Pauli channels
// with non-negative rates. Zero rates are legal and preserved through
// serialization; they contribute nothing to fidelities or sampling.
//
// Channels are kept sorted by Pauli text so iteration order (and therefore
// every downstream RNG substream index) is stable.
class NoiseLayerModel {
public:
  struct Channel {
    PauliString pauli;  // positive sign, weight 1 or 2
    double rate;        // lambda >= 0, dimensionless per layer
  };

  NoiseLayerModel(int n_qubits, std::vector<Channel> channels);

  static NoiseLayerModel empty(int n_qubits) { return NoiseLayerModel(n_qubits, {}); }

  int n_qubits() const { return n_qubits_; }
  const std::vector<Channel>& channels() const { return channels_; }
  std::size_t size() const { return channels_.size(); }

  // Rate of the given Pauli; 0 if the channel is absent.
  double rate(const PauliString& pauli) const;
  bool has_channel(const PauliString& pauli) const;

  // Pauli fidelity: prod over channels anticommuting with the observable of
  // exp(-2 lambda). Accumulated in log space.
  double pauli_fidelity(const PauliString& observable) const;

  std::string to_json() const;
  static NoiseLayerModel from_json(const std::string& text);
  static NoiseLayerModel load(const std::string& path);
  void save(const std::string& path) const;

private:
  int n_qubits_;
  std::vector<Channel> channels_;
};

// Insertion complement: the channel's Pauli is sampled into the circuit with
// probability 1 - w, w = (1 + exp(-2 lambda)) / 2.
double sample_probability(double lambda);

}  // namespace pea
