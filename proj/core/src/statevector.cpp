#include "qtsim/statevector.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace qtsim {

namespace {

constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;

void check_qubit(int q, int n) {
  if (q < 0 || q >= n)
    throw std::out_of_range("qubit index " + std::to_string(q) +
                            " out of range for " + std::to_string(n) +
                            " qubits");
}

/// Uniform double in [0, 1) from the top 53 bits of a 64-bit draw; fully
/// specified so seeded sampling is stable across platforms.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

GateOp GateOp::inverse() const {
  GateOp inv = *this;
  switch (kind) {
    case GateKind::H:
    case GateKind::X:
    case GateKind::Cnot:
      break;
    case GateKind::Rz:
      inv.theta = -theta;
      break;
    case GateKind::U1:
    case GateKind::Cu1:
      inv.lambda = -lambda;
      break;
    case GateKind::U3:
      // U3(t,p,l)^dagger = U3(-t,-l,-p)
      inv.theta = -theta;
      inv.phi = -lambda;
      inv.lambda = -phi;
      break;
  }
  return inv;
}

std::array<cx, 4> GateOp::matrix1q() const {
  switch (kind) {
    case GateKind::H:
      return {cx(kInvSqrt2), cx(kInvSqrt2), cx(kInvSqrt2), cx(-kInvSqrt2)};
    case GateKind::X:
      return {cx(0), cx(1), cx(1), cx(0)};
    case GateKind::Rz:
      return {std::polar(1.0, -theta / 2), cx(0), cx(0),
              std::polar(1.0, theta / 2)};
    case GateKind::U1:
      return {cx(1), cx(0), cx(0), std::polar(1.0, lambda)};
    case GateKind::U3: {
      const double c = std::cos(theta / 2), s = std::sin(theta / 2);
      return {cx(c), -std::polar(s, lambda), std::polar(s, phi),
              std::polar(c, lambda + phi)};
    }
    case GateKind::Cnot:
    case GateKind::Cu1:
      throw std::logic_error("matrix1q() on a two-qubit gate");
  }
  throw std::logic_error("unreachable");
}

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1 || n_qubits > 26)
    throw std::invalid_argument("n_qubits must be in [1, 26]");
  amps_.assign(std::size_t{1} << n_qubits, cx(0));
  amps_[0] = cx(1);
}

StateVector StateVector::basis(int n_qubits, std::uint64_t index) {
  StateVector sv(n_qubits);
  if (index >= sv.dim()) throw std::out_of_range("basis index out of range");
  sv.amps_[0] = cx(0);
  sv.amps_[index] = cx(1);
  return sv;
}

StateVector StateVector::basis(int n_qubits, const std::string& label) {
  if (static_cast<int>(label.size()) != n_qubits)
    throw std::invalid_argument("basis label length must equal n_qubits");
  std::uint64_t index = 0;
  for (char c : label) {
    if (c != '0' && c != '1')
      throw std::invalid_argument("basis label must be a bit string");
    index = (index << 1) | static_cast<std::uint64_t>(c - '0');
  }
  return basis(n_qubits, index);
}

double StateVector::norm_sq() const {
  double s = 0.0;
  for (const cx& a : amps_) s += std::norm(a);
  return s;
}

cx StateVector::inner(const StateVector& other) const {
  if (other.dim() != dim())
    throw std::invalid_argument("inner product dimension mismatch");
  cx s(0);
  for (std::size_t i = 0; i < amps_.size(); ++i)
    s += std::conj(amps_[i]) * other.amps_[i];
  return s;
}

void StateVector::apply(const GateOp& gate) {
  check_qubit(gate.q0, n_qubits_);
  if (gate.is_two_qubit()) {
    check_qubit(gate.q1, n_qubits_);
    if (gate.q0 == gate.q1)
      throw std::invalid_argument("control and target must differ");
  }

  switch (gate.kind) {
    case GateKind::Cnot: {
      const std::uint64_t cbit = std::uint64_t{1} << gate.q0;
      const std::uint64_t tbit = std::uint64_t{1} << gate.q1;
      for (std::uint64_t i = 0; i < dim(); ++i)
        if ((i & cbit) && !(i & tbit)) std::swap(amps_[i], amps_[i | tbit]);
      return;
    }
    case GateKind::Cu1: {
      const std::uint64_t mask =
          (std::uint64_t{1} << gate.q0) | (std::uint64_t{1} << gate.q1);
      const cx phase = std::polar(1.0, gate.lambda);
      for (std::uint64_t i = 0; i < dim(); ++i)
        if ((i & mask) == mask) amps_[i] *= phase;
      return;
    }
    default:
      break;
  }

  const auto m = gate.matrix1q();
  const std::uint64_t bit = std::uint64_t{1} << gate.q0;
  for (std::uint64_t i = 0; i < dim(); ++i) {
    if (i & bit) continue;
    const cx a0 = amps_[i];
    const cx a1 = amps_[i | bit];
    amps_[i] = m[0] * a0 + m[1] * a1;
    amps_[i | bit] = m[2] * a0 + m[3] * a1;
  }
}

StateVector apply_gate(StateVector state, const GateOp& gate) {
  state.apply(gate);
  return state;
}

std::vector<double> probabilities(const StateVector& state) {
  std::vector<double> p(state.dim());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = std::norm(state.amp(i));
  return p;
}

ShotCounts sample_counts(const StateVector& state, std::uint64_t shots,
                         std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  const std::vector<double> p = probabilities(state);
  std::vector<double> cdf(p.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    acc += p[i];
    cdf[i] = acc;
  }
  cdf.back() = std::max(cdf.back(), 1.0);

  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> hist(p.size(), 0);
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = uniform01(rng);
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    hist[static_cast<std::size_t>(it - cdf.begin())]++;
  }

  ShotCounts out;
  out.total_shots = shots;
  const int n = state.n_qubits();
  for (std::size_t i = 0; i < hist.size(); ++i) {
    if (hist[i] == 0) continue;
    std::string key(n, '0');
    for (int b = 0; b < n; ++b)
      if (i & (std::uint64_t{1} << b)) key[n - 1 - b] = '1';
    out.counts.emplace(std::move(key), hist[i]);
  }
  return out;
}

std::vector<double> counts_to_distribution(const ShotCounts& counts,
                                           int n_qubits) {
  std::vector<double> p(std::size_t{1} << n_qubits, 0.0);
  for (const auto& [key, c] : counts.counts) {
    std::uint64_t idx = 0;
    for (char ch : key) idx = (idx << 1) | static_cast<std::uint64_t>(ch - '0');
    p[idx] += static_cast<double>(c);
  }
  for (double& x : p) x /= static_cast<double>(counts.total_shots);
  return p;
}

}  // namespace qtsim
