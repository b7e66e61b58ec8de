#include <cctype>
#include <charconv>
#include <cstdio>
#include <sstream>
#include <vector>

#include "qtsim/circuit.hpp"

namespace qtsim {

namespace {

std::string fmt_param(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Parser {
  std::string_view text;
  std::size_t pos = 0;
  int line = 1;

  [[noreturn]] void fail(const std::string& what) const {
    throw QasmParseError(line, what);
  }

  void skip_space() {
    while (pos < text.size()) {
      const char c = text[pos];
      if (c == '\n') {
        ++line;
        ++pos;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos;
      } else if (c == '/' && pos + 1 < text.size() && text[pos + 1] == '/') {
        while (pos < text.size() && text[pos] != '\n') ++pos;
      } else {
        break;
      }
    }
  }

  bool done() {
    skip_space();
    return pos >= text.size();
  }

  std::string ident() {
    skip_space();
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) ||
            text[pos] == '_' || text[pos] == '.'))
      ++pos;
    if (pos == start) fail("expected identifier");
    return std::string(text.substr(start, pos - start));
  }

  void expect(char c) {
    skip_space();
    if (pos >= text.size() || text[pos] != c)
      fail(std::string("expected '") + c + "'");
    ++pos;
  }

  bool accept(char c) {
    skip_space();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  double number() {
    skip_space();
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isdigit(static_cast<unsigned char>(text[pos])) ||
            text[pos] == '+' || text[pos] == '-' || text[pos] == '.' ||
            text[pos] == 'e' || text[pos] == 'E'))
      ++pos;
    double out = 0.0;
    const auto [ptr, ec] =
        std::from_chars(text.data() + start, text.data() + pos, out);
    if (ec != std::errc() || ptr != text.data() + pos)
      fail("malformed parameter");
    return out;
  }

  int qubit_ref(int reg_size) {
    const std::string name = ident();
    if (name != "q") fail("unknown register '" + name + "'");
    expect('[');
    const double idx = number();
    expect(']');
    const int q = static_cast<int>(idx);
    if (q < 0 || q >= reg_size)
      fail("qubit index " + std::to_string(q) + " exceeds register size " +
           std::to_string(reg_size));
    return q;
  }
};

}  // namespace

std::string export_qasm(const Circuit& circuit) {
  std::ostringstream out;
  out << "OPENQASM 2.0;\n";
  out << "include \"qelib1.inc\";\n";
  out << "qreg q[" << circuit.n_qubits << "];\n";
  for (const GateOp& g : circuit.gates) {
    switch (g.kind) {
      case GateKind::H:
        out << "h q[" << g.q0 << "];\n";
        break;
      case GateKind::X:
        out << "x q[" << g.q0 << "];\n";
        break;
      case GateKind::Rz:
        out << "rz(" << fmt_param(g.theta) << ") q[" << g.q0 << "];\n";
        break;
      case GateKind::U1:
        out << "u1(" << fmt_param(g.lambda) << ") q[" << g.q0 << "];\n";
        break;
      case GateKind::U3:
        out << "u3(" << fmt_param(g.theta) << "," << fmt_param(g.phi) << ","
            << fmt_param(g.lambda) << ") q[" << g.q0 << "];\n";
        break;
      case GateKind::Cnot:
        out << "cx q[" << g.q0 << "],q[" << g.q1 << "];\n";
        break;
      case GateKind::Cu1:
        out << "cu1(" << fmt_param(g.lambda) << ") q[" << g.q0 << "],q["
            << g.q1 << "];\n";
        break;
    }
  }
  return out.str();
}

Circuit import_qasm(const std::string& text) {
  Parser p{text};

  p.skip_space();
  std::string kw = p.ident();
  if (kw != "OPENQASM") p.fail("missing OPENQASM header");
  if (p.number() != 2.0) p.fail("unsupported OPENQASM version");
  p.expect(';');

  p.skip_space();
  // optional include
  {
    const std::size_t save_pos = p.pos;
    const int save_line = p.line;
    if (!p.done()) {
      std::string word = p.ident();
      if (word == "include") {
        p.expect('"');
        while (p.pos < p.text.size() && p.text[p.pos] != '"') ++p.pos;
        p.expect('"');
        p.expect(';');
      } else {
        p.pos = save_pos;
        p.line = save_line;
      }
    }
  }

  if (p.done()) p.fail("missing qreg declaration");
  if (p.ident() != "qreg") p.fail("expected qreg declaration");
  if (p.ident() != "q") p.fail("quantum register must be named q");
  p.expect('[');
  const int n = static_cast<int>(p.number());
  p.expect(']');
  p.expect(';');
  if (n < 1 || n > 26) p.fail("register size out of range");

  Circuit c(n);
  while (!p.done()) {
    const std::string name = p.ident();
    if (name == "h" || name == "x") {
      const int q = p.qubit_ref(n);
      p.expect(';');
      c.add(name == "h" ? GateOp::h(q) : GateOp::x(q));
    } else if (name == "rz" || name == "u1") {
      p.expect('(');
      const double a = p.number();
      p.expect(')');
      const int q = p.qubit_ref(n);
      p.expect(';');
      c.add(name == "rz" ? GateOp::rz(q, a) : GateOp::u1(q, a));
    } else if (name == "u3") {
      p.expect('(');
      const double t = p.number();
      p.expect(',');
      const double ph = p.number();
      p.expect(',');
      const double l = p.number();
      p.expect(')');
      const int q = p.qubit_ref(n);
      p.expect(';');
      c.add(GateOp::u3(q, t, ph, l));
    } else if (name == "cx") {
      const int a = p.qubit_ref(n);
      p.expect(',');
      const int b = p.qubit_ref(n);
      p.expect(';');
      c.add(GateOp::cnot(a, b));
    } else if (name == "cu1") {
      p.expect('(');
      const double l = p.number();
      p.expect(')');
      const int a = p.qubit_ref(n);
      p.expect(',');
      const int b = p.qubit_ref(n);
      p.expect(';');
      c.add(GateOp::cu1(a, b, l));
    } else {
      p.fail("unknown gate '" + name + "'");
    }
  }
  return c;
}

}  // namespace qtsim
