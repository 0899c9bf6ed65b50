#pragma once

#include <vector>

#include "pea/circuit.hpp"
#include "pea/density.hpp"
#include "pea/noise_model.hpp"
#include "pea/pauli.hpp"

namespace pea {

// Exact reference evolution under the target noise model. Dense density
// matrices only; this mirrors the scale of the experiments it validates.
inline constexpr int kMaxOracleQubits = 7;

struct TracePoint {
  int step;
  double value;
};
using ReferenceTrace = std::vector<TracePoint>;

// Per circuit layer: rho -> U (target[rho]) U^dag, target noise applied at
// exactly the layers that carry a noise attachment. Records the observable
// after every time step (entry 0 is the initial state). This is the channel
// the amplified sampling pipeline extrapolates to.
ReferenceTrace evolve_channel_composition(const CircuitSpec& circuit,
                                          const NoiseLayerModel& target,
                                          const DensityMatrix& rho0,
                                          const PauliString& observable);

struct HamiltonianTerm {
  PauliString pauli;
  double coefficient;
};

struct JumpOperator {
  PauliString pauli;
  double rate;  // gamma per unit time, >= 0
};

// RK4 integration of drho/dt = -i[H, rho] + sum_k gamma_k (V rho V^dag
// - 1/2 {V^dag V, rho}); V^dag V = id for Pauli jumps. Records the
// observable at every multiple of dt_record, with internal step halving
// until consecutive refinements differ by <= 1e-8 in trace norm.
ReferenceTrace evolve_continuous_lindblad(const std::vector<HamiltonianTerm>& hamiltonian,
                                          const std::vector<JumpOperator>& jumps,
                                          const DensityMatrix& rho0, double t_final,
                                          double dt_record, const PauliString& observable);

}  // namespace pea
