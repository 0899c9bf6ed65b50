#pragma once

#include <Eigen/Dense>

#include "pea/circuit.hpp"
#include "pea/noise_model.hpp"
#include "pea/pauli.hpp"

namespace pea {

using DensityMatrix = Eigen::MatrixXcd;

// |0...0><0...0| on n qubits.
DensityMatrix zero_density(int n_qubits);
DensityMatrix density_from_state(const StateVector& psi);

// Throws unless rho is Hermitian (1e-10), unit trace (1e-10) and PSD
// (eigenvalues >= -1e-10).
void validate_density(const DensityMatrix& rho);

// Dense operator of a signed Pauli string (little-endian basis order).
Eigen::MatrixXcd pauli_matrix(const PauliString& p);

// Dense unitary of a gate embedded in the n-qubit register.
Eigen::MatrixXcd gate_unitary(const Gate& g, int n_qubits);
Eigen::MatrixXcd layer_unitary(const Layer& layer, int n_qubits);

// rho -> w rho + (1-w) P rho P for every channel; exactly the exponential
// map exp[sum lambda (P.P - id)] because single-Pauli exponentials factor.
DensityMatrix apply_channel_to_density(const NoiseLayerModel& model, const DensityMatrix& rho);

double density_expectation(const DensityMatrix& rho, const PauliString& observable);

}  // namespace pea
