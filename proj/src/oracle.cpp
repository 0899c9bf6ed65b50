#include "pea/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace pea {

namespace {

void check_oracle_size(int n_qubits) {
  require(n_qubits >= 1 && n_qubits <= kMaxOracleQubits, ErrorCode::invalid_argument,
          "oracle supports at most " + std::to_string(kMaxOracleQubits) + " qubits");
}

double trace_norm_hermitian(const DensityMatrix& a) {
  Eigen::SelfAdjointEigenSolver<DensityMatrix> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

}  // namespace

ReferenceTrace evolve_channel_composition(const CircuitSpec& circuit,
                                          const NoiseLayerModel& target,
                                          const DensityMatrix& rho0,
                                          const PauliString& observable) {
  check_oracle_size(circuit.n_qubits);
  require(target.n_qubits() == circuit.n_qubits, ErrorCode::dimension_mismatch,
          "target model register mismatch");
  require(observable.n_qubits() == circuit.n_qubits, ErrorCode::dimension_mismatch,
          "observable register mismatch");
  validate_density(rho0);
  Eigen::Index dim = Eigen::Index{1} << circuit.n_qubits;
  require(rho0.rows() == dim, ErrorCode::dimension_mismatch, "initial state register mismatch");

  ReferenceTrace trace;
  trace.push_back({0, density_expectation(rho0, observable)});

  DensityMatrix rho = rho0;
  int per_step = circuit.layers_per_step();
  for (int step = 0; step < circuit.n_steps; ++step) {
    for (int j = 0; j < per_step; ++j) {
      const Layer& layer = circuit.layers[static_cast<std::size_t>(step * per_step + j)];
      if (layer.noise) rho = apply_channel_to_density(target, rho);
      Eigen::MatrixXcd u = layer_unitary(layer, circuit.n_qubits);
      rho = u * rho * u.adjoint();
    }
    require(std::abs(rho.trace().real() - 1.0) <= 1e-9, ErrorCode::internal,
            "trace drifted during channel composition");
    trace.push_back({step + 1, density_expectation(rho, observable)});
  }
  return trace;
}

namespace {

// Right-hand side of the master equation. Pauli jumps have V^dag V = id,
// so the anticommutator part collapses to -rho.
struct LindbladRhs {
  Eigen::MatrixXcd hamiltonian;
  std::vector<std::pair<Eigen::MatrixXcd, double>> jump_matrices;

  DensityMatrix operator()(const DensityMatrix& rho) const {
    constexpr std::complex<double> kI(0.0, 1.0);
    DensityMatrix out = -kI * (hamiltonian * rho - rho * hamiltonian);
    for (const auto& [v, gamma] : jump_matrices) {
      out += gamma * (v * rho * v.adjoint() - rho);
    }
    return out;
  }
};

DensityMatrix rk4_step(const LindbladRhs& rhs, const DensityMatrix& rho, double h) {
  DensityMatrix k1 = rhs(rho);
  DensityMatrix k2 = rhs(rho + 0.5 * h * k1);
  DensityMatrix k3 = rhs(rho + 0.5 * h * k2);
  DensityMatrix k4 = rhs(rho + h * k3);
  return rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

DensityMatrix integrate_interval(const LindbladRhs& rhs, const DensityMatrix& rho, double dt,
                                 int substeps) {
  DensityMatrix out = rho;
  double h = dt / substeps;
  for (int i = 0; i < substeps; ++i) out = rk4_step(rhs, out, h);
  return out;
}

}  // namespace

ReferenceTrace evolve_continuous_lindblad(const std::vector<HamiltonianTerm>& hamiltonian,
                                          const std::vector<JumpOperator>& jumps,
                                          const DensityMatrix& rho0, double t_final,
                                          double dt_record, const PauliString& observable) {
  require(t_final >= 0.0 && std::isfinite(t_final), ErrorCode::invalid_argument,
          "t_final must be >= 0");
  require(dt_record > 0.0 && std::isfinite(dt_record), ErrorCode::invalid_argument,
          "dt_record must be positive");
  validate_density(rho0);

  int n_qubits = 0;
  for (Eigen::Index d = rho0.rows(); d > 1; d >>= 1) ++n_qubits;
  require((Eigen::Index{1} << n_qubits) == rho0.rows(), ErrorCode::dimension_mismatch,
          "density matrix dimension must be a power of two");
  check_oracle_size(n_qubits);
  require(observable.n_qubits() == n_qubits, ErrorCode::dimension_mismatch,
          "observable register mismatch");

  Eigen::Index dim = rho0.rows();
  LindbladRhs rhs;
  rhs.hamiltonian = Eigen::MatrixXcd::Zero(dim, dim);
  for (const HamiltonianTerm& term : hamiltonian) {
    require(term.pauli.n_qubits() == n_qubits, ErrorCode::dimension_mismatch,
            "Hamiltonian term register mismatch");
    rhs.hamiltonian += term.coefficient * pauli_matrix(term.pauli);
  }
  for (const JumpOperator& jump : jumps) {
    require(jump.pauli.n_qubits() == n_qubits, ErrorCode::dimension_mismatch,
            "jump operator register mismatch");
    require(jump.rate >= 0.0 && std::isfinite(jump.rate), ErrorCode::domain,
            "jump rate must be >= 0");
    if (jump.rate > 0.0) rhs.jump_matrices.emplace_back(pauli_matrix(jump.pauli), jump.rate);
  }

  int n_records = static_cast<int>(std::round(t_final / dt_record));
  require(std::abs(n_records * dt_record - t_final) <= 1e-9 * std::max(1.0, t_final),
          ErrorCode::invalid_argument, "t_final must be a multiple of dt_record");

  constexpr double kTol = 1e-8;
  constexpr int kMaxSubsteps = 1 << 16;

  ReferenceTrace trace;
  DensityMatrix rho = rho0;
  trace.push_back({0, density_expectation(rho, observable)});
  for (int rec = 0; rec < n_records; ++rec) {
    int substeps = 1;
    DensityMatrix coarse = integrate_interval(rhs, rho, dt_record, substeps);
    for (;;) {
      substeps *= 2;
      require(substeps <= kMaxSubsteps, ErrorCode::convergence,
              "Lindblad integrator did not reach tolerance at the minimum step size");
      DensityMatrix fine = integrate_interval(rhs, rho, dt_record, substeps);
      if (trace_norm_hermitian(fine - coarse) <= kTol) {
        rho = fine;
        break;
      }
      coarse = fine;
    }
    trace.push_back({rec + 1, density_expectation(rho, observable)});
  }
  return trace;
}

}  // namespace pea
