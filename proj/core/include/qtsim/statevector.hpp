#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace qtsim {

using cx = std::complex<double>;

/// Qubit index q addresses bit q of the basis-state index, so qubit n-1 is
/// the most significant bit of the lattice site label. Circuits transcribed
/// from the reference decompositions map their label q[i] onto qubit n-1-i;
/// see resolve_bit_order() in oracle.hpp for the empirical arbiter.
enum class BitOrder { PaperQ0Msb, PaperQ0Lsb };
inline constexpr BitOrder kResolvedBitOrder = BitOrder::PaperQ0Msb;

/// Map a transcribed label index to a simulator qubit under a convention.
constexpr int paper_qubit(int label, int n_qubits,
                          BitOrder order = kResolvedBitOrder) {
  return order == BitOrder::PaperQ0Msb ? n_qubits - 1 - label : label;
}

enum class GateKind { H, X, Rz, U1, U3, Cnot, Cu1 };

struct GateOp {
  GateKind kind;
  int q0 = 0;       // target, or control for two-qubit gates
  int q1 = -1;      // target of two-qubit gates
  double theta = 0.0;
  double phi = 0.0;
  double lambda = 0.0;

  static GateOp h(int q) { return {GateKind::H, q}; }
  static GateOp x(int q) { return {GateKind::X, q}; }
  static GateOp rz(int q, double theta) {
    return {GateKind::Rz, q, -1, theta};
  }
  static GateOp u1(int q, double lambda) {
    return {GateKind::U1, q, -1, 0.0, 0.0, lambda};
  }
  static GateOp u3(int q, double theta, double phi, double lambda) {
    return {GateKind::U3, q, -1, theta, phi, lambda};
  }
  static GateOp cnot(int control, int target) {
    return {GateKind::Cnot, control, target};
  }
  static GateOp cu1(int control, int target, double lambda) {
    return {GateKind::Cu1, control, target, 0.0, 0.0, lambda};
  }

  bool is_two_qubit() const {
    return kind == GateKind::Cnot || kind == GateKind::Cu1;
  }

  /// Reversed-parameter gate such that inverse().matrix() == matrix()^dagger.
  GateOp inverse() const;

  /// 2x2 matrix for single-qubit gates, row-major {m00, m01, m10, m11}.
  /// Rz(theta) = diag(e^{-i theta/2}, e^{+i theta/2}); U1/U3 follow the
  /// device gate set, U3(theta,phi,lambda) =
  ///   [[cos(t/2), -e^{i lambda} sin(t/2)],
  ///    [e^{i phi} sin(t/2), e^{i(lambda+phi)} cos(t/2)]].
  std::array<cx, 4> matrix1q() const;

  bool operator==(const GateOp&) const = default;
};

class StateVector {
 public:
  explicit StateVector(int n_qubits);
  static StateVector basis(int n_qubits, std::uint64_t index);
  /// Basis state from a bit-string label, most significant bit first
  /// ("01" -> index 1 on two qubits).
  static StateVector basis(int n_qubits, const std::string& label);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  std::span<const cx> amplitudes() const { return amps_; }
  cx& amp(std::size_t i) { return amps_[i]; }
  const cx& amp(std::size_t i) const { return amps_[i]; }

  double norm_sq() const;
  cx inner(const StateVector& other) const;

  /// In-place U_gate |psi>. Throws std::out_of_range on bad qubit indices
  /// and std::invalid_argument when control == target.
  void apply(const GateOp& gate);

 private:
  int n_qubits_;
  std::vector<cx> amps_;
};

struct ShotCounts {
  std::map<std::string, std::uint64_t> counts;  // key: bit string, MSB first
  std::uint64_t total_shots = 0;
};

StateVector apply_gate(StateVector state, const GateOp& gate);

std::vector<double> probabilities(const StateVector& state);

/// Multinomial sample of measurement outcomes. Deterministic per seed: the
/// underlying uniform stream is a fixed function of the seed alone.
ShotCounts sample_counts(const StateVector& state, std::uint64_t shots,
                         std::uint64_t seed);

/// Empirical distribution (index -> count/total).
std::vector<double> counts_to_distribution(const ShotCounts& counts,
                                           int n_qubits);

}  // namespace qtsim
