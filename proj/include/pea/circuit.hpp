#pragma once

#include <cmath>
#include <complex>
#include <memory>
#include <vector>

#include "pea/noise_model.hpp"
#include "pea/pauli.hpp"

namespace pea {

struct Gate {
  enum class Kind { RX, RZ, RZZ, H, X, Y, Z, S, CNOT, CZ };

  Kind kind;
  double theta = 0.0;        // RX/RZ/RZZ only
  std::vector<int> support;  // 1 or 2 qubit indices

  static Gate rx(int qubit, double theta) { return {Kind::RX, theta, {qubit}}; }
  static Gate rz(int qubit, double theta) { return {Kind::RZ, theta, {qubit}}; }
  static Gate rzz(int a, int b, double theta) { return {Kind::RZZ, theta, {a, b}}; }
  static Gate h(int qubit) { return {Kind::H, 0.0, {qubit}}; }
  static Gate x(int qubit) { return {Kind::X, 0.0, {qubit}}; }
  static Gate y(int qubit) { return {Kind::Y, 0.0, {qubit}}; }
  static Gate z(int qubit) { return {Kind::Z, 0.0, {qubit}}; }
  static Gate s(int qubit) { return {Kind::S, 0.0, {qubit}}; }
  static Gate cnot(int control, int target) { return {Kind::CNOT, 0.0, {control, target}}; }
  static Gate cz(int a, int b) { return {Kind::CZ, 0.0, {a, b}}; }
};

// One circuit layer: gates on disjoint qubits, optionally preceded by a
// noise layer. Identical layers share the model by reference.
struct Layer {
  std::vector<Gate> gates;
  std::shared_ptr<const NoiseLayerModel> noise;  // nullptr = noiseless layer
};

// Ordered layers grouped into n_steps equal-sized time steps. Amplitude
// indexing is little-endian: qubit 0 is the least significant bit.
struct CircuitSpec {
  int n_qubits = 0;
  int n_steps = 0;
  std::vector<Layer> layers;

  int layers_per_step() const { return n_steps > 0 ? static_cast<int>(layers.size()) / n_steps : 0; }
};

// Maximum register size for the dense statevector path.
inline constexpr int kMaxStateQubits = 14;

CircuitSpec make_circuit(int n_qubits, std::vector<Layer> layers, int n_steps);

enum class IsingKind { clifford_zz, tfim };

// Open-chain Ising time evolution circuits.
//   clifford_zz: n_steps layers of RZZ(-2 J dt) on the chain edges, noise on
//                every layer; requires J = pi / (2 dt) so the gates are
//                Clifford half-turns.
//   tfim:        per step one RZZ(-2 J dt) edge layer and one RX(-2 h dt)
//                layer on all qubits; noise sits on the two-qubit layers
//                unless noise_on_single_qubit_layers is set.
CircuitSpec build_ising_circuit(IsingKind kind, int n_qubits, double coupling_j, double field_h,
                                double dt, int n_steps,
                                std::shared_ptr<const NoiseLayerModel> noise,
                                bool noise_on_single_qubit_layers = false);

// The J that makes RZZ(-2 J dt) a Clifford half-turn.
inline double clifford_zz_coupling(double dt) { return M_PI / (2.0 * dt); }

struct StateVector {
  int n_qubits = 0;
  std::vector<std::complex<double>> amps;

  static StateVector zero_state(int n_qubits);
};

void apply_gate(StateVector& psi, const Gate& g);
void apply_pauli(StateVector& psi, const PauliString& p);

// <psi|P|psi>; asserts the imaginary residue is below 1e-12 and drops it.
double expectation(const StateVector& psi, const PauliString& p);

// Noise-free run from |0...0>.
StateVector run_ideal(const CircuitSpec& circuit);
double ideal_expectation(const CircuitSpec& circuit, const PauliString& observable);

// Clifford view of the circuit, one gate list per layer; throws
// ErrorCode::not_clifford if any gate is not a real-signed Clifford.
std::vector<std::vector<CliffordGate>> clifford_layers(const CircuitSpec& circuit);
bool is_clifford(const CircuitSpec& circuit);

}  // namespace pea
