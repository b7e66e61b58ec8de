#include "qtsim/circuit.hpp"

#include <numbers>
#include <stdexcept>

namespace qtsim {

namespace {

void check_gate_indices(const GateOp& g, int n) {
  const bool ok1 = g.q0 >= 0 && g.q0 < n;
  const bool ok2 = !g.is_two_qubit() || (g.q1 >= 0 && g.q1 < n && g.q1 != g.q0);
  if (!ok1 || !ok2)
    throw std::out_of_range("gate qubit index out of range for circuit");
}

void add_swap(Circuit& c, int a, int b) {
  c.add(GateOp::cnot(a, b)).add(GateOp::cnot(b, a)).add(GateOp::cnot(a, b));
}

void add_bit_reversal(Circuit& c, int n) {
  for (int i = 0; i < n / 2; ++i) add_swap(c, i, n - 1 - i);
}

/// Ascending Hadamard/controlled-phase ladder. Alone it realizes the DFT
/// composed with bit reversal; preceded by the reversal swaps it is the DFT
/// exactly.
void add_ladder(Circuit& c, int n) {
  for (int q = 0; q < n; ++q) {
    c.add(GateOp::h(q));
    for (int ctrl = q + 1; ctrl < n; ++ctrl)
      c.add(GateOp::cu1(ctrl, q, std::numbers::pi / double(1 << (ctrl - q))));
  }
}

}  // namespace

Circuit& Circuit::add(const GateOp& g) {
  check_gate_indices(g, n_qubits);
  gates.push_back(g);
  return *this;
}

Circuit& Circuit::append(const Circuit& other) {
  if (other.n_qubits > n_qubits)
    throw std::invalid_argument("appended circuit is wider");
  for (const GateOp& g : other.gates) add(g);
  return *this;
}

Circuit Circuit::inverse() const {
  Circuit inv(n_qubits, label.empty() ? "" : label + "^-1");
  inv.gates.reserve(gates.size());
  for (auto it = gates.rbegin(); it != gates.rend(); ++it)
    inv.gates.push_back(it->inverse());
  return inv;
}

StateVector run_circuit(StateVector initial, const Circuit& circuit) {
  if (circuit.n_qubits != initial.n_qubits())
    throw std::invalid_argument("circuit width != state width");
  for (const GateOp& g : circuit.gates) initial.apply(g);
  return initial;
}

Circuit build_qft(int n) {
  if (n < 1 || n > 20) throw std::invalid_argument("qft: n out of range");
  Circuit c(n, "qft" + std::to_string(n));
  add_bit_reversal(c, n);
  add_ladder(c, n);
  return c;
}

Circuit build_iqft(int n) {
  if (n < 1 || n > 20) throw std::invalid_argument("iqft: n out of range");
  Circuit c = build_qft(n).inverse();
  c.label = "iqft" + std::to_string(n);
  return c;
}

Circuit build_paper_iqft(int n, BitOrder order) {
  if (n != 2 && n != 3)
    throw std::invalid_argument("paper iqft is given for n = 2 and n = 3");
  const auto q = [&](int label) { return paper_qubit(label, n, order); };
  Circuit c(n, "paper_iqft" + std::to_string(n));
  constexpr double pi = std::numbers::pi;
  if (n == 2) {
    // H1, C-U1(pi/2)_{10}, H0
    c.add(GateOp::h(q(1)));
    c.add(GateOp::cu1(q(1), q(0), pi / 2));
    c.add(GateOp::h(q(0)));
  } else {
    // H2, C-U1(pi/2)_{21}, C-U1(pi/4)_{20}, H1, C-U1(pi/2)_{10}, H0
    c.add(GateOp::h(q(2)));
    c.add(GateOp::cu1(q(2), q(1), pi / 2));
    c.add(GateOp::cu1(q(2), q(0), pi / 4));
    c.add(GateOp::h(q(1)));
    c.add(GateOp::cu1(q(1), q(0), pi / 2));
    c.add(GateOp::h(q(0)));
  }
  return c;
}

Circuit build_paper_qft(int n, BitOrder order) {
  Circuit c = build_paper_iqft(n, order).inverse();
  c.label = "paper_qft" + std::to_string(n);
  return c;
}

}  // namespace qtsim
