#include "pea/density.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace pea {

namespace {

using cplx = std::complex<double>;

// P|k> = coeff(k) |k ^ xmask>
std::size_t pauli_xmask(const PauliString& p) {
  std::size_t xmask = 0;
  for (int q = 0; q < p.n_qubits(); ++q) {
    Pauli l = p.letter(q);
    if (l == Pauli::X || l == Pauli::Y) xmask |= std::size_t{1} << q;
  }
  return xmask;
}

cplx pauli_coeff(const PauliString& p, std::size_t k) {
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

DensityMatrix zero_density(int n_qubits) {
  require(n_qubits >= 1, ErrorCode::invalid_argument, "n_qubits must be positive");
  Eigen::Index dim = Eigen::Index{1} << n_qubits;
  DensityMatrix rho = DensityMatrix::Zero(dim, dim);
  rho(0, 0) = 1.0;
  return rho;
}

DensityMatrix density_from_state(const StateVector& psi) {
  Eigen::Index dim = static_cast<Eigen::Index>(psi.amps.size());
  Eigen::VectorXcd v(dim);
  for (Eigen::Index k = 0; k < dim; ++k) v(k) = psi.amps[static_cast<std::size_t>(k)];
  return v * v.adjoint();
}

void validate_density(const DensityMatrix& rho) {
  require(rho.rows() == rho.cols() && rho.rows() >= 2, ErrorCode::dimension_mismatch,
          "density matrix must be square");
  require((rho - rho.adjoint()).cwiseAbs().maxCoeff() <= 1e-10, ErrorCode::domain,
          "density matrix is not Hermitian");
  require(std::abs(rho.trace().real() - 1.0) <= 1e-10 && std::abs(rho.trace().imag()) <= 1e-10,
          ErrorCode::domain, "density matrix trace must be 1");
  Eigen::SelfAdjointEigenSolver<DensityMatrix> es(rho, Eigen::EigenvaluesOnly);
  require(es.eigenvalues().minCoeff() >= -1e-10, ErrorCode::domain,
          "density matrix is not positive semidefinite");
}

Eigen::MatrixXcd pauli_matrix(const PauliString& p) {
  Eigen::Index dim = Eigen::Index{1} << p.n_qubits();
  std::size_t xmask = pauli_xmask(p);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    std::size_t kk = static_cast<std::size_t>(k);
    m(static_cast<Eigen::Index>(kk ^ xmask), k) = pauli_coeff(p, kk);
  }
  return m;
}

Eigen::MatrixXcd gate_unitary(const Gate& g, int n_qubits) {
  Eigen::Index dim = Eigen::Index{1} << n_qubits;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
  // Columns are the gate applied to each basis state.
  for (Eigen::Index k = 0; k < dim; ++k) {
    StateVector psi;
    psi.n_qubits = n_qubits;
    psi.amps.assign(static_cast<std::size_t>(dim), cplx(0.0, 0.0));
    psi.amps[static_cast<std::size_t>(k)] = 1.0;
    apply_gate(psi, g);
    for (Eigen::Index j = 0; j < dim; ++j) u(j, k) = psi.amps[static_cast<std::size_t>(j)];
  }
  return u;
}

Eigen::MatrixXcd layer_unitary(const Layer& layer, int n_qubits) {
  Eigen::Index dim = Eigen::Index{1} << n_qubits;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
  for (const Gate& g : layer.gates) u = gate_unitary(g, n_qubits) * u;
  return u;
}

DensityMatrix apply_channel_to_density(const NoiseLayerModel& model, const DensityMatrix& rho) {
  Eigen::Index dim = Eigen::Index{1} << model.n_qubits();
  require(rho.rows() == dim && rho.cols() == dim, ErrorCode::dimension_mismatch,
          "apply_channel_to_density: dimension mismatch");
  DensityMatrix out = rho;
  for (const NoiseLayerModel::Channel& c : model.channels()) {
    if (c.rate == 0.0) continue;
    double w = sample_probability(c.rate);
    std::size_t xmask = pauli_xmask(c.pauli);
    DensityMatrix flipped(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      std::size_t fi = static_cast<std::size_t>(i) ^ xmask;
      cplx ci = pauli_coeff(c.pauli, fi);
      for (Eigen::Index j = 0; j < dim; ++j) {
        std::size_t fj = static_cast<std::size_t>(j) ^ xmask;
        flipped(i, j) = ci * std::conj(pauli_coeff(c.pauli, fj)) *
                        out(static_cast<Eigen::Index>(fi), static_cast<Eigen::Index>(fj));
      }
    }
    out = w * out + (1.0 - w) * flipped;
  }
  return out;
}

double density_expectation(const DensityMatrix& rho, const PauliString& observable) {
  Eigen::Index dim = Eigen::Index{1} << observable.n_qubits();
  require(rho.rows() == dim && rho.cols() == dim, ErrorCode::dimension_mismatch,
          "density_expectation: dimension mismatch");
  cplx tr = (pauli_matrix(observable) * rho).trace();
  require(std::abs(tr.imag()) <= 1e-10, ErrorCode::internal,
          "Pauli expectation of a density matrix came out complex");
  return tr.real();
}

}  // namespace pea
