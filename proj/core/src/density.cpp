#include "qtsim/density.hpp"

#include <cmath>
#include <stdexcept>

namespace qtsim {

namespace {

constexpr double kHermTol = 1e-10;
constexpr double kTraceTol = 1e-10;
constexpr double kEigTol = 1e-8;

Eigen::MatrixXcd psd_sqrt(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigendecomposition failed");
  Eigen::VectorXd w = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

DensityMatrix::DensityMatrix(int n_qubits, Eigen::MatrixXcd entries,
                             bool unchecked)
    : n_qubits_(n_qubits), entries_(std::move(entries)) {
  const auto d = static_cast<Eigen::Index>(1) << n_qubits;
  if (entries_.rows() != d || entries_.cols() != d)
    throw std::invalid_argument("density matrix dimension mismatch");
  if (unchecked) return;
  if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > kHermTol)
    throw std::invalid_argument("density matrix not Hermitian");
  if (std::abs(entries_.trace().real() - 1.0) > kTraceTol ||
      std::abs(entries_.trace().imag()) > kTraceTol)
    throw std::invalid_argument("density matrix trace != 1");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(entries_);
  if (es.eigenvalues().minCoeff() < -kEigTol)
    throw std::invalid_argument("density matrix not positive semidefinite");
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  const auto d = static_cast<Eigen::Index>(psi.dim());
  Eigen::VectorXcd v(d);
  for (Eigen::Index i = 0; i < d; ++i) v(i) = psi.amp(i);
  return DensityMatrix(psi.n_qubits(), v * v.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
  const auto d = static_cast<Eigen::Index>(1) << n_qubits;
  return DensityMatrix(
      n_qubits, Eigen::MatrixXcd::Identity(d, d) / static_cast<double>(d));
}

DensityMatrix density_from_state(const StateVector& state) {
  return DensityMatrix::pure(state);
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.n_qubits() != sigma.n_qubits())
    throw std::invalid_argument("fidelity dimension mismatch");
  const Eigen::MatrixXcd sr = psd_sqrt(rho.entries());
  const Eigen::MatrixXcd inner = sr * sigma.entries() * sr;
  const Eigen::MatrixXcd root = psd_sqrt(inner);
  const double f = root.trace().real();
  return std::clamp(f * f, 0.0, 1.0);
}

double fidelity_with_pure(const DensityMatrix& rho, const StateVector& psi) {
  const auto d = static_cast<Eigen::Index>(psi.dim());
  Eigen::VectorXcd v(d);
  for (Eigen::Index i = 0; i < d; ++i) v(i) = psi.amp(i);
  return std::clamp((v.adjoint() * rho.entries() * v)(0).real(), 0.0, 1.0);
}

}  // namespace qtsim
