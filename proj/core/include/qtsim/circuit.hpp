#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "qtsim/statevector.hpp"

namespace qtsim {

struct Circuit {
  int n_qubits = 0;
  std::vector<GateOp> gates;
  std::string label;

  Circuit() = default;
  Circuit(int n, std::string lbl = "") : n_qubits(n), label(std::move(lbl)) {}

  Circuit& add(const GateOp& g);
  Circuit& append(const Circuit& other);
  /// Reversed gate list with inverted parameters.
  Circuit inverse() const;
  std::size_t size() const { return gates.size(); }
};

StateVector run_circuit(StateVector initial, const Circuit& circuit);

/// Quantum Fourier transform: the circuit matrix equals
/// (1/sqrt(2^n)) sum_{l,k} e^{2 pi i l k / 2^n} |l><k| over lattice indices,
/// including the qubit-reversal swaps needed to land in natural order.
Circuit build_qft(int n);

/// Exact inverse of build_qft(n).
Circuit build_iqft(int n);

/// The swap-free Hadamard/controlled-phase ladder exactly as the reference
/// decomposition writes it (n = 2: H q1, CU1(pi/2) q1->q0, H q0 under the
/// resolved transcription). Its matrix is QFT composed with the bit-reversal
/// permutation, not the inverse QFT; kept for the literal circuit mode.
Circuit build_paper_iqft(int n, BitOrder order = kResolvedBitOrder);

/// Adjoint of build_paper_iqft, the closing block of the literal step.
Circuit build_paper_qft(int n, BitOrder order = kResolvedBitOrder);

class QasmParseError : public std::runtime_error {
 public:
  QasmParseError(int line, const std::string& what)
      : std::runtime_error("qasm:" + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// OpenQASM 2.0 with the h/x/rz/u1/u3/cx/cu1 vocabulary; parameters are
/// printed with 17 significant digits so import_qasm round-trips exactly.
std::string export_qasm(const Circuit& circuit);
Circuit import_qasm(const std::string& text);

}  // namespace qtsim
