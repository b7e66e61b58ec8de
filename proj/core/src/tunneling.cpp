#include "qtsim/tunneling.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qtsim {

namespace {

using paper_constants::kGamma2;
using paper_constants::kGamma3;
using paper_constants::kC2;
using paper_constants::kC3ClosedPhi;
using paper_constants::kC3ClosedZ;
constexpr double kPi = std::numbers::pi;
constexpr double kPaperDt = 0.1;

void check_n(int n) {
  if (n < 1 || n > 20) throw std::invalid_argument("qubit count out of range");
}

/// Normalized emission for a commuting diagonal product: controlled phases
/// first, then Rz by ascending qubit index.
Circuit pack_diagonal_gates(int n, std::vector<GateOp> cu1s,
                            std::vector<GateOp> rzs, const std::string& label) {
  Circuit c(n, label);
  std::sort(cu1s.begin(), cu1s.end(), [](const GateOp& a, const GateOp& b) {
    return std::minmax(a.q0, a.q1) < std::minmax(b.q0, b.q1);
  });
  std::sort(rzs.begin(), rzs.end(),
            [](const GateOp& a, const GateOp& b) { return a.q0 < b.q0; });
  for (const GateOp& g : cu1s) c.add(g);
  for (const GateOp& g : rzs) c.add(g);
  return c;
}

}  // namespace

int potential_target_qubit(PotentialKind kind, int n_qubits) {
  int offset = 0;
  switch (kind) {
    case PotentialKind::Free:
      throw std::invalid_argument("free potential has no target qubit");
    case PotentialKind::Step:
      offset = 1;
      break;
    case PotentialKind::DoubleWell:
      offset = 2;
      break;
    case PotentialKind::MultiWell:
      offset = 3;
      break;
  }
  if (n_qubits < offset)
    throw std::invalid_argument(std::string(potential_kind_name(kind)) +
                                " potential needs at least " +
                                std::to_string(offset) + " qubits");
  return n_qubits - offset;
}

const char* potential_kind_name(PotentialKind kind) {
  switch (kind) {
    case PotentialKind::Free: return "free";
    case PotentialKind::Step: return "step";
    case PotentialKind::DoubleWell: return "double-well";
    case PotentialKind::MultiWell: return "multi-well";
  }
  return "?";
}

LatticeWavefunction::LatticeWavefunction(int n, StateVector s, double L)
    : n_qubits(n), domain_length(L), state(std::move(s)) {
  if (state.n_qubits() != n)
    throw std::invalid_argument("lattice wavefunction width mismatch");
  if (L < 0.0) throw std::invalid_argument("domain length must be positive");
  if (std::abs(state.norm_sq() - 1.0) > 1e-10)
    throw std::invalid_argument("lattice wavefunction not normalized");
}

double LatticeWavefunction::L() const {
  return domain_length > 0.0 ? domain_length
                             : static_cast<double>(1ull << n_qubits);
}

std::vector<double> momentum_eigenvalues(int n) {
  check_n(n);
  const std::uint64_t size = std::uint64_t{1} << n;
  const std::uint64_t half = size / 2;
  std::vector<double> p(size);
  for (std::uint64_t l = 0; l < size; ++l) {
    const double scale = 2.0 * kPi / static_cast<double>(size);
    p[l] = l <= half ? scale * static_cast<double>(l)
                     : scale * (static_cast<double>(half) -
                                static_cast<double>(l));
  }
  return p;
}

std::vector<cx> kinetic_phase_diagonal(int n, const TrotterParams& params) {
  const std::vector<double> p = momentum_eigenvalues(n);
  std::vector<cx> d(p.size());
  for (std::size_t l = 0; l < p.size(); ++l)
    d[l] = std::polar(1.0, -p[l] * p[l] * params.dt / (2.0 * params.mass));
  return d;
}

Circuit build_paper_D(int n, DConstants variant, BitOrder order) {
  if (n != 2 && n != 3)
    throw std::invalid_argument("hand decomposition is given for n = 2, 3");
  const auto q = [&](int label) { return paper_qubit(label, n, order); };
  const auto rz_angle = [](double gamma, double c) { return 2 * gamma * c * kPaperDt; };
  const auto cu1_angle = rz_angle;

  std::vector<GateOp> cu1s, rzs;
  if (n == 2) {
    // D = Z1 Z0 Phi10; identical under both constant sets.
    rzs.push_back(GateOp::rz(q(1), rz_angle(kGamma2, kC2[0])));  // -pi^2/40
    rzs.push_back(GateOp::rz(q(0), rz_angle(kGamma2, kC2[1])));  // -pi^2/10
    cu1s.push_back(GateOp::cu1(q(1), q(0), cu1_angle(kGamma2, kC2[2])));
  } else if (variant == DConstants::ClosedForm) {
    // Lattice bit b is label n-1-b; cZ/cPhi are bit-indexed.
    rzs.push_back(GateOp::rz(q(2), rz_angle(kGamma3, kC3ClosedZ[0])));  // -pi^2/160
    rzs.push_back(GateOp::rz(q(1), rz_angle(kGamma3, kC3ClosedZ[1])));  // -pi^2/40
    rzs.push_back(GateOp::rz(q(0), rz_angle(kGamma3, kC3ClosedZ[2])));  // -pi^2/10
    cu1s.push_back(GateOp::cu1(q(1), q(0), cu1_angle(kGamma3, kC3ClosedPhi[0])));
    cu1s.push_back(GateOp::cu1(q(2), q(0), cu1_angle(kGamma3, kC3ClosedPhi[1])));
    cu1s.push_back(GateOp::cu1(q(2), q(1), cu1_angle(kGamma3, kC3ClosedPhi[2])));
  } else {
    // The published angle list, verbatim:
    // Rz(-pi^2/160)_2 Rz(-pi^2/40)_1 Rz(-pi^2/10)_0
    // C-U1(pi^2/10)_21 C-U1(pi^2/20)_20 C-U1(-pi^2/40)_10
    const double pp = kPi * kPi;
    rzs.push_back(GateOp::rz(q(2), -pp / 160));
    rzs.push_back(GateOp::rz(q(1), -pp / 40));
    rzs.push_back(GateOp::rz(q(0), -pp / 10));
    cu1s.push_back(GateOp::cu1(q(2), q(1), pp / 10));
    cu1s.push_back(GateOp::cu1(q(2), q(0), pp / 20));
    cu1s.push_back(GateOp::cu1(q(1), q(0), -pp / 40));
  }
  const std::string label =
      "paper_D" + std::to_string(n) +
      (variant == DConstants::ClosedForm ? "_closed" : "_rounded");
  return pack_diagonal_gates(n, std::move(cu1s), std::move(rzs), label);
}

Circuit synthesize_diagonal(const std::vector<cx>& phases) {
  const std::size_t dim = phases.size();
  if (dim == 0 || (dim & (dim - 1)) != 0)
    throw std::invalid_argument("diagonal length must be a power of two");
  const int n = std::bit_width(dim) - 1;
  if (n < 1 || n > 20)
    throw std::invalid_argument("diagonal size out of range");
  for (const cx& z : phases)
    if (std::abs(std::abs(z) - 1.0) > 1e-9)
      throw std::invalid_argument("diagonal entries must have unit modulus");

  std::vector<double> theta(dim);
  for (std::size_t k = 0; k < dim; ++k) theta[k] = std::arg(phases[k]);

  // Moebius transform: coefficients of the AND basis, theta(k) =
  // sum_{S subset of bits(k)} and_coef[S].
  std::vector<double> and_coef = theta;
  for (int b = 0; b < n; ++b)
    for (std::size_t mask = 0; mask < dim; ++mask)
      if (mask & (std::size_t{1} << b))
        and_coef[mask] -= and_coef[mask ^ (std::size_t{1} << b)];

  constexpr double kNegligible = 1e-12;
  bool two_local = true;
  for (std::size_t mask = 0; mask < dim; ++mask)
    if (std::popcount(mask) >= 3 && std::abs(and_coef[mask]) > kNegligible)
      two_local = false;

  Circuit c(n, "diag");
  if (two_local) {
    std::vector<GateOp> cu1s, rzs;
    for (std::size_t mask = 1; mask < dim; ++mask) {
      if (std::abs(and_coef[mask]) <= kNegligible) continue;
      const int pc = std::popcount(mask);
      if (pc == 1) {
        rzs.push_back(GateOp::u1(std::countr_zero(mask), and_coef[mask]));
      } else if (pc == 2) {
        const int lo = std::countr_zero(mask);
        const int hi = std::bit_width(mask) - 1;
        cu1s.push_back(GateOp::cu1(hi, lo, and_coef[mask]));
      }
    }
    return pack_diagonal_gates(n, std::move(cu1s), std::move(rzs), "diag");
  }

  // Parity ladder over the Walsh expansion: theta(k) = sum_S w[S] chi_S(k)
  // with chi_S(k) = (-1)^{popcount(S & k)}; each term is a CNOT fold onto
  // the highest bit, Rz(-2 w), unfold.
  std::vector<double> w = theta;
  for (int b = 0; b < n; ++b) {
    const std::size_t step = std::size_t{1} << b;
    for (std::size_t i = 0; i < dim; i += 2 * step)
      for (std::size_t j = i; j < i + step; ++j) {
        const double a = w[j], bb = w[j + step];
        w[j] = a + bb;
        w[j + step] = a - bb;
      }
  }
  for (double& x : w) x /= static_cast<double>(dim);

  for (std::size_t mask = 1; mask < dim; ++mask) {
    if (std::abs(w[mask]) <= kNegligible) continue;
    const int target = std::bit_width(mask) - 1;
    std::vector<int> others;
    for (int b = 0; b < target; ++b)
      if (mask & (std::size_t{1} << b)) others.push_back(b);
    for (int b : others) c.add(GateOp::cnot(b, target));
    c.add(GateOp::rz(target, -2.0 * w[mask]));
    for (auto it = others.rbegin(); it != others.rend(); ++it)
      c.add(GateOp::cnot(*it, target));
  }
  return c;
}

Circuit build_potential(const PotentialSpec& spec, int n,
                        const TrotterParams& params, bool paper_theta) {
  check_n(n);
  if (spec.kind == PotentialKind::Free) {
    if (spec.v != 0.0)
      throw std::invalid_argument("free potential requires v = 0");
    return Circuit(n, "potential_free");
  }
  const int target = potential_target_qubit(spec.kind, n);
  const double angle =
      paper_theta ? spec.v * params.dt : 2.0 * spec.v * params.dt;
  Circuit c(n, std::string("potential_") + potential_kind_name(spec.kind));
  c.add(GateOp::rz(target, angle));
  return c;
}

Circuit trotter_step(const PotentialSpec& spec, int n,
                     const TrotterParams& params, StepStyle style,
                     bool paper_theta) {
  check_n(n);
  if (params.dt <= 0.0) throw std::invalid_argument("dt must be positive");
  if (params.mass <= 0.0) throw std::invalid_argument("mass must be positive");

  Circuit c(n, std::string("step_") + potential_kind_name(spec.kind));
  c.append(build_potential(spec, n, params, paper_theta));
  if (style == StepStyle::Exact) {
    c.append(build_iqft(n));
    c.append(synthesize_diagonal(kinetic_phase_diagonal(n, params)));
    c.append(build_qft(n));
  } else {
    if (n != 2 && n != 3)
      throw std::invalid_argument("literal step style is given for n = 2, 3");
    if (std::abs(params.dt - kPaperDt) > 1e-12)
      throw std::invalid_argument("literal step style requires dt = 0.1");
    c.append(build_paper_iqft(n));
    c.append(build_paper_D(n, DConstants::Rounded));
    c.append(build_paper_qft(n));
  }
  return c;
}

std::vector<std::vector<double>> evolve(const LatticeWavefunction& initial,
                                        const PotentialSpec& spec,
                                        const TrotterParams& params,
                                        StepStyle style, bool paper_theta) {
  if (params.steps < 0) throw std::invalid_argument("steps must be >= 0");
  std::vector<std::vector<double>> rows;
  rows.reserve(params.steps + 1);
  StateVector psi = initial.state;
  rows.push_back(probabilities(psi));
  if (params.steps == 0) return rows;
  const Circuit step = trotter_step(spec, initial.n_qubits, params, style,
                                    paper_theta);
  for (int t = 0; t < params.steps; ++t) {
    psi = run_circuit(std::move(psi), step);
    rows.push_back(probabilities(psi));
  }
  return rows;
}

}  // namespace qtsim
