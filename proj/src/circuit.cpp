#include "pea/circuit.hpp"

#include <algorithm>
#include <cmath>

namespace pea {

namespace {

using cplx = std::complex<double>;

void check_support(const Gate& g, int n_qubits) {
  std::size_t expected = (g.kind == Gate::Kind::RZZ || g.kind == Gate::Kind::CNOT ||
                          g.kind == Gate::Kind::CZ)
                             ? 2
                             : 1;
  require(g.support.size() == expected, ErrorCode::invalid_argument, "gate arity mismatch");
  for (int q : g.support) {
    require(q >= 0 && q < n_qubits, ErrorCode::invalid_argument, "gate qubit out of range");
  }
  if (expected == 2) {
    require(g.support[0] != g.support[1], ErrorCode::invalid_argument,
            "two-qubit gate needs distinct qubits");
  }
  if (g.kind == Gate::Kind::RX || g.kind == Gate::Kind::RZ || g.kind == Gate::Kind::RZZ) {
    require(std::isfinite(g.theta), ErrorCode::domain, "rotation angle must be finite");
  }
}

}  // namespace

CircuitSpec make_circuit(int n_qubits, std::vector<Layer> layers, int n_steps) {
  require(n_qubits >= 1 && n_qubits <= kMaxStateQubits, ErrorCode::invalid_argument,
          "n_qubits out of supported range");
  require(n_steps >= 1, ErrorCode::invalid_argument, "n_steps must be >= 1");
  require(!layers.empty() && layers.size() % static_cast<std::size_t>(n_steps) == 0,
          ErrorCode::invalid_argument, "layer count must be a positive multiple of n_steps");
  for (const Layer& layer : layers) {
    std::vector<bool> used(static_cast<std::size_t>(n_qubits), false);
    for (const Gate& g : layer.gates) {
      check_support(g, n_qubits);
      for (int q : g.support) {
        require(!used[static_cast<std::size_t>(q)], ErrorCode::invalid_argument,
                "gates within a layer must act on disjoint qubits");
        used[static_cast<std::size_t>(q)] = true;
      }
    }
    if (layer.noise) {
      require(layer.noise->n_qubits() == n_qubits, ErrorCode::dimension_mismatch,
              "noise layer register mismatch");
    }
  }
  return CircuitSpec{n_qubits, n_steps, std::move(layers)};
}

CircuitSpec build_ising_circuit(IsingKind kind, int n_qubits, double coupling_j, double field_h,
                                double dt, int n_steps,
                                std::shared_ptr<const NoiseLayerModel> noise,
                                bool noise_on_single_qubit_layers) {
  require(n_steps >= 1, ErrorCode::invalid_argument, "n_steps must be >= 1");
  require(n_qubits >= 2, ErrorCode::invalid_argument, "Ising chain needs >= 2 qubits");
  require(dt > 0.0 && std::isfinite(dt), ErrorCode::invalid_argument, "dt must be positive");
  if (kind == IsingKind::clifford_zz) {
    double j_clifford = clifford_zz_coupling(dt);
    require(std::abs(coupling_j - j_clifford) <= 1e-9 * std::max(1.0, std::abs(j_clifford)),
            ErrorCode::invalid_argument,
            "clifford_zz requires J = pi/(2 dt) so RZZ(-2 J dt) is a half-turn");
  }

  double theta_j = -2.0 * coupling_j * dt;
  double theta_h = -2.0 * field_h * dt;

  // Nearest-neighbour edges split into two disjoint sublayers for n > 2.
  std::vector<std::vector<std::pair<int, int>>> edge_groups;
  for (int parity = 0; parity < 2; ++parity) {
    std::vector<std::pair<int, int>> group;
    for (int q = parity; q + 1 < n_qubits; q += 2) group.emplace_back(q, q + 1);
    if (!group.empty()) edge_groups.push_back(std::move(group));
  }

  std::vector<Layer> layers;
  for (int step = 0; step < n_steps; ++step) {
    for (const auto& group : edge_groups) {
      Layer layer;
      for (auto [a, b] : group) layer.gates.push_back(Gate::rzz(a, b, theta_j));
      layer.noise = noise;
      layers.push_back(std::move(layer));
    }
    if (kind == IsingKind::tfim) {
      Layer rx_layer;
      for (int q = 0; q < n_qubits; ++q) rx_layer.gates.push_back(Gate::rx(q, theta_h));
      if (noise_on_single_qubit_layers) rx_layer.noise = noise;
      layers.push_back(std::move(rx_layer));
    }
  }
  return make_circuit(n_qubits, std::move(layers), n_steps);
}

StateVector StateVector::zero_state(int n_qubits) {
  require(n_qubits >= 1 && n_qubits <= kMaxStateQubits, ErrorCode::invalid_argument,
          "n_qubits out of supported range");
  StateVector psi;
  psi.n_qubits = n_qubits;
  psi.amps.assign(std::size_t{1} << n_qubits, cplx(0.0, 0.0));
  psi.amps[0] = cplx(1.0, 0.0);
  return psi;
}

namespace {

void apply_1q(StateVector& psi, int qubit, cplx u00, cplx u01, cplx u10, cplx u11) {
  std::size_t bit = std::size_t{1} << qubit;
  std::size_t n = psi.amps.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (k & bit) continue;
    cplx a0 = psi.amps[k];
    cplx a1 = psi.amps[k | bit];
    psi.amps[k] = u00 * a0 + u01 * a1;
    psi.amps[k | bit] = u10 * a0 + u11 * a1;
  }
}

}  // namespace

void apply_gate(StateVector& psi, const Gate& g) {
  check_support(g, psi.n_qubits);
  constexpr cplx kI(0.0, 1.0);
  switch (g.kind) {
    case Gate::Kind::H: {
      double s = 1.0 / std::sqrt(2.0);
      apply_1q(psi, g.support[0], s, s, s, -s);
      return;
    }
    case Gate::Kind::X: apply_1q(psi, g.support[0], 0, 1, 1, 0); return;
    case Gate::Kind::Y: apply_1q(psi, g.support[0], 0, -kI, kI, 0); return;
    case Gate::Kind::Z: apply_1q(psi, g.support[0], 1, 0, 0, -1); return;
    case Gate::Kind::S: apply_1q(psi, g.support[0], 1, 0, 0, kI); return;
    case Gate::Kind::RX: {
      double c = std::cos(0.5 * g.theta), s = std::sin(0.5 * g.theta);
      apply_1q(psi, g.support[0], c, -kI * s, -kI * s, c);
      return;
    }
    case Gate::Kind::RZ: {
      cplx em = std::exp(-kI * (0.5 * g.theta)), ep = std::exp(kI * (0.5 * g.theta));
      apply_1q(psi, g.support[0], em, 0, 0, ep);
      return;
    }
    case Gate::Kind::RZZ: {
      // exp(-i theta ZZ / 2): phase by the parity of the two bits.
      cplx em = std::exp(-kI * (0.5 * g.theta)), ep = std::exp(kI * (0.5 * g.theta));
      std::size_t ba = std::size_t{1} << g.support[0];
      std::size_t bb = std::size_t{1} << g.support[1];
      for (std::size_t k = 0; k < psi.amps.size(); ++k) {
        bool even = ((k & ba) != 0) == ((k & bb) != 0);
        psi.amps[k] *= even ? em : ep;
      }
      return;
    }
    case Gate::Kind::CNOT: {
      std::size_t bc = std::size_t{1} << g.support[0];
      std::size_t bt = std::size_t{1} << g.support[1];
      for (std::size_t k = 0; k < psi.amps.size(); ++k) {
        if ((k & bc) && !(k & bt)) std::swap(psi.amps[k], psi.amps[k | bt]);
      }
      return;
    }
    case Gate::Kind::CZ: {
      std::size_t ba = std::size_t{1} << g.support[0];
      std::size_t bb = std::size_t{1} << g.support[1];
      for (std::size_t k = 0; k < psi.amps.size(); ++k) {
        if ((k & ba) && (k & bb)) psi.amps[k] = -psi.amps[k];
      }
      return;
    }
  }
  fail(ErrorCode::internal, "corrupt gate kind");
}

namespace {

std::size_t pauli_flip_mask(const PauliString& p) {
  std::size_t xmask = 0;
  for (int q = 0; q < p.n_qubits(); ++q) {
    Pauli l = p.letter(q);
    if (l == Pauli::X || l == Pauli::Y) xmask |= std::size_t{1} << q;
  }
  return xmask;
}

// Coefficient in P|k> = coeff(k) |k ^ xmask>.
cplx pauli_basis_coeff(const PauliString& p, std::size_t k) {
  constexpr cplx kI(0.0, 1.0);
  cplx factor(static_cast<double>(p.sign()), 0.0);
  for (int q = 0; q < p.n_qubits(); ++q) {
    bool bit = (k >> q) & 1u;
    switch (p.letter(q)) {
      case Pauli::Z:
        if (bit) factor = -factor;
        break;
      case Pauli::Y: factor *= bit ? -kI : kI; break;
      default: break;
    }
  }
  return factor;
}

}  // namespace

void apply_pauli(StateVector& psi, const PauliString& p) {
  require(p.n_qubits() == psi.n_qubits, ErrorCode::dimension_mismatch,
          "apply_pauli: register mismatch");
  std::size_t xmask = pauli_flip_mask(p);
  std::size_t n = psi.amps.size();
  if (xmask == 0) {
    for (std::size_t k = 0; k < n; ++k) psi.amps[k] *= pauli_basis_coeff(p, k);
    return;
  }
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t j = k ^ xmask;
    if (j < k) continue;
    cplx a = psi.amps[k];
    psi.amps[k] = pauli_basis_coeff(p, j) * psi.amps[j];
    psi.amps[j] = pauli_basis_coeff(p, k) * a;
  }
}

double expectation(const StateVector& psi, const PauliString& p) {
  require(p.n_qubits() == psi.n_qubits, ErrorCode::dimension_mismatch,
          "expectation: register mismatch");
  std::size_t xmask = pauli_flip_mask(p);
  cplx e(0.0, 0.0);
  for (std::size_t k = 0; k < psi.amps.size(); ++k) {
    e += std::conj(psi.amps[k ^ xmask]) * pauli_basis_coeff(p, k) * psi.amps[k];
  }
  require(std::abs(e.imag()) <= 1e-12, ErrorCode::internal,
          "expectation of a Hermitian Pauli came out complex");
  return e.real();
}

StateVector run_ideal(const CircuitSpec& circuit) {
  StateVector psi = StateVector::zero_state(circuit.n_qubits);
  for (const Layer& layer : circuit.layers) {
    for (const Gate& g : layer.gates) apply_gate(psi, g);
  }
  return psi;
}

double ideal_expectation(const CircuitSpec& circuit, const PauliString& observable) {
  StateVector psi = run_ideal(circuit);
  return expectation(psi, observable);
}

namespace {

// Rotation angles are Clifford only at multiples of pi: even multiples act
// as the identity on observables, odd multiples as the axis Pauli.
enum class HalfTurn { identity, pauli, generic };

HalfTurn classify_angle(double theta) {
  double m = theta / M_PI;
  double r = std::round(m);
  if (std::abs(m - r) > 1e-9) return HalfTurn::generic;
  long long k = static_cast<long long>(r);
  return (k % 2 == 0) ? HalfTurn::identity : HalfTurn::pauli;
}

}  // namespace

std::vector<std::vector<CliffordGate>> clifford_layers(const CircuitSpec& circuit) {
  std::vector<std::vector<CliffordGate>> out;
  out.reserve(circuit.layers.size());
  for (const Layer& layer : circuit.layers) {
    std::vector<CliffordGate> gates;
    for (const Gate& g : layer.gates) {
      switch (g.kind) {
        case Gate::Kind::H: gates.push_back(CliffordGate::single(CliffordGate::Kind::H, g.support[0])); break;
        case Gate::Kind::X: gates.push_back(CliffordGate::single(CliffordGate::Kind::X, g.support[0])); break;
        case Gate::Kind::Y: gates.push_back(CliffordGate::single(CliffordGate::Kind::Y, g.support[0])); break;
        case Gate::Kind::Z: gates.push_back(CliffordGate::single(CliffordGate::Kind::Z, g.support[0])); break;
        case Gate::Kind::S: gates.push_back(CliffordGate::single(CliffordGate::Kind::S, g.support[0])); break;
        case Gate::Kind::CNOT: gates.push_back(CliffordGate::cnot(g.support[0], g.support[1])); break;
        case Gate::Kind::CZ: gates.push_back(CliffordGate::cz(g.support[0], g.support[1])); break;
        case Gate::Kind::RX:
        case Gate::Kind::RZ:
        case Gate::Kind::RZZ: {
          HalfTurn t = classify_angle(g.theta);
          require(t != HalfTurn::generic, ErrorCode::not_clifford,
                  "rotation angle is not a multiple of pi; circuit is not Clifford");
          if (t == HalfTurn::identity) break;
          Pauli letter = g.kind == Gate::Kind::RX ? Pauli::X : Pauli::Z;
          PauliString axis = PauliString::single(circuit.n_qubits, g.support[0], letter);
          if (g.kind == Gate::Kind::RZZ) {
            axis = multiply(axis, PauliString::single(circuit.n_qubits, g.support[1], Pauli::Z));
          }
          gates.push_back(CliffordGate::pauli_exp_half_turn(std::move(axis)));
          break;
        }
      }
    }
    out.push_back(std::move(gates));
  }
  return out;
}

bool is_clifford(const CircuitSpec& circuit) {
  try {
    clifford_layers(circuit);
    return true;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::not_clifford) return false;
    throw;
  }
}

}  // namespace pea
