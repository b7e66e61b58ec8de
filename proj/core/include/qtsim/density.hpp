#pragma once

#include <Eigen/Dense>

#include "qtsim/statevector.hpp"

namespace qtsim {

/// Hermitian, PSD, trace-one matrix. Construction validates the invariants
/// (hermiticity/trace to 1e-10, eigenvalues >= -1e-8) unless `unchecked`.
class DensityMatrix {
 public:
  DensityMatrix(int n_qubits, Eigen::MatrixXcd entries, bool unchecked = false);

  int n_qubits() const { return n_qubits_; }
  const Eigen::MatrixXcd& entries() const { return entries_; }

  static DensityMatrix pure(const StateVector& psi);
  static DensityMatrix maximally_mixed(int n_qubits);

 private:
  int n_qubits_;
  Eigen::MatrixXcd entries_;
};

DensityMatrix density_from_state(const StateVector& state);

/// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2, the squared
/// convention: equals <psi|rho|psi> when sigma = |psi><psi|.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

double fidelity_with_pure(const DensityMatrix& rho, const StateVector& psi);

}  // namespace qtsim
