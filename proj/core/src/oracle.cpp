#include "qtsim/oracle.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

#include <nlohmann/json.hpp>

namespace qtsim {

namespace {

constexpr double kSanityBound = 0.5;

Eigen::VectorXcd to_eigen(const StateVector& psi) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(psi.dim()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = psi.amp(i);
  return v;
}

DenseOperator kinetic_operator(int n, double mass) {
  const DenseOperator f = dft_matrix(n);
  const std::vector<double> p = momentum_eigenvalues(n);
  Eigen::VectorXd diag(static_cast<Eigen::Index>(p.size()));
  for (Eigen::Index l = 0; l < diag.size(); ++l)
    diag(l) = p[l] * p[l] / (2.0 * mass);
  DenseOperator k{n, f.entries * diag.asDiagonal() * f.entries.adjoint()};
  // exact Hermitian symmetrization of the float residue
  k.entries = ((k.entries + k.entries.adjoint()) / 2.0).eval();
  return k;
}

}  // namespace

DenseOperator dft_matrix(int n) {
  const auto dim = static_cast<Eigen::Index>(1) << n;
  const double norm = 1.0 / std::sqrt(static_cast<double>(dim));
  Eigen::MatrixXcd f(dim, dim);
  for (Eigen::Index l = 0; l < dim; ++l)
    for (Eigen::Index k = 0; k < dim; ++k) {
      const auto lk = static_cast<std::uint64_t>(l) * static_cast<std::uint64_t>(k);
      f(l, k) = std::polar(norm, 2.0 * std::numbers::pi *
                                     static_cast<double>(lk % static_cast<std::uint64_t>(dim)) /
                                     static_cast<double>(dim));
    }
  return {n, std::move(f)};
}

DenseOperator exact_hamiltonian(const PotentialSpec& spec, int n, double mass,
                                BitOrder order) {
  DenseOperator h = kinetic_operator(n, mass);
  if (spec.kind != PotentialKind::Free && spec.v != 0.0) {
    int target = potential_target_qubit(spec.kind, n);
    if (order == BitOrder::PaperQ0Lsb) target = n - 1 - target;
    const std::uint64_t bit = std::uint64_t{1} << target;
    for (Eigen::Index k = 0; k < h.entries.rows(); ++k) {
      const double sign =
          (static_cast<std::uint64_t>(k) & bit) ? -1.0 : 1.0;
      h.entries(k, k) += spec.v * sign;
    }
  }
  return h;
}

DenseOperator exact_propagator(const DenseOperator& hamiltonian, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hamiltonian.entries);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("propagator eigendecomposition failed");
  Eigen::VectorXcd phases(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < phases.size(); ++i)
    phases(i) = std::polar(1.0, -es.eigenvalues()(i) * t);
  return {hamiltonian.n_qubits, es.eigenvectors() * phases.asDiagonal() *
                                    es.eigenvectors().adjoint()};
}

DenseOperator circuit_matrix(const Circuit& circuit) {
  if (circuit.n_qubits > 10)
    throw std::invalid_argument("circuit_matrix limited to n <= 10");
  const auto dim = static_cast<Eigen::Index>(1) << circuit.n_qubits;
  Eigen::MatrixXcd u(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    StateVector col = run_circuit(
        StateVector::basis(circuit.n_qubits, static_cast<std::uint64_t>(k)),
        circuit);
    for (Eigen::Index i = 0; i < dim; ++i) u(i, k) = col.amp(i);
  }
  return {circuit.n_qubits, std::move(u)};
}

double phase_aligned_distance(const DenseOperator& a, const DenseOperator& b) {
  if (a.entries.rows() != b.entries.rows())
    throw std::invalid_argument("phase_aligned_distance dimension mismatch");
  const cx t = (b.entries.adjoint() * a.entries).trace();
  const cx phase = std::abs(t) > 1e-300 ? t / std::abs(t) : cx(1.0);
  const double d = (a.entries - phase * b.entries).norm();
  return d / std::sqrt(static_cast<double>(a.entries.rows()));
}

std::vector<std::vector<double>> oracle_evolve(const StateVector& initial,
                                               const PotentialSpec& spec,
                                               const TrotterParams& params) {
  const int n = initial.n_qubits();
  const DenseOperator u =
      exact_propagator(exact_hamiltonian(spec, n, params.mass), params.dt);
  Eigen::VectorXcd psi = to_eigen(initial);
  std::vector<std::vector<double>> rows;
  rows.reserve(params.steps + 1);
  const auto row_of = [](const Eigen::VectorXcd& v) {
    std::vector<double> r(static_cast<std::size_t>(v.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) r[i] = std::norm(v(i));
    return r;
  };
  rows.push_back(row_of(psi));
  for (int t = 0; t < params.steps; ++t) {
    psi = u.entries * psi;
    rows.push_back(row_of(psi));
  }
  return rows;
}

namespace {

ConventionCase evaluate_case(int n, DConstants variant) {
  const TrotterParams params{0.1, 0.5, 1};
  const DenseOperator f = dft_matrix(n);
  const DenseOperator exact_kinetic =
      exact_propagator(kinetic_operator(n, params.mass), params.dt);

  ConventionCase out;
  out.n = n;
  out.variant = variant;
  for (BitOrder order : {BitOrder::PaperQ0Msb, BitOrder::PaperQ0Lsb}) {
    const DenseOperator d = circuit_matrix(build_paper_D(n, variant, order));
    const DenseOperator sandwich{
        n, f.entries * d.entries * f.entries.adjoint()};
    const double dist = phase_aligned_distance(sandwich, exact_kinetic);
    (order == BitOrder::PaperQ0Msb ? out.dist_q0_msb : out.dist_q0_lsb) = dist;
  }

  // Reference Trotter error of the corresponding full step (same D variant,
  // winning convention, the published scenario for this width).
  const PotentialSpec spec =
      n == 2 ? PotentialSpec{PotentialKind::Step, 50.0}
             : PotentialSpec{PotentialKind::MultiWell, 10.0};
  Circuit step(n, "arbiter_step");
  step.append(build_potential(spec, n, params));
  step.append(build_iqft(n));
  step.append(build_paper_D(n, variant, out.winner()));
  step.append(build_qft(n));
  out.full_step_dist = phase_aligned_distance(
      circuit_matrix(step),
      exact_propagator(exact_hamiltonian(spec, n, params.mass), params.dt));
  return out;
}

}  // namespace

ConventionReport resolve_bit_order() {
  ConventionReport report;
  for (int n : {2, 3}) {
    report.cases.push_back(evaluate_case(n, DConstants::ClosedForm));
    report.rounded.push_back(evaluate_case(n, DConstants::Rounded));
  }
  for (const ConventionCase& c : report.cases)
    if (std::min(c.dist_q0_msb, c.dist_q0_lsb) > kSanityBound)
      throw std::runtime_error(
          "bit-order arbiter: both conventions exceed the sanity bound for n=" +
          std::to_string(c.n) + " (decomposition transcription bug)");
  report.selected = report.cases.front().winner();
  for (const ConventionCase& c : report.cases)
    if (c.winner() != report.selected) report.consistent = false;
  for (const ConventionCase& c : report.rounded)
    if (std::min(c.dist_q0_msb, c.dist_q0_lsb) > kSanityBound)
      report.rounded_transcription_bug = true;
  return report;
}

std::string convention_report_json(const ConventionReport& report) {
  nlohmann::json j;
  const auto order_name = [](BitOrder o) {
    return o == BitOrder::PaperQ0Msb ? "paper_q0_msb" : "paper_q0_lsb";
  };
  const auto case_json = [&](const ConventionCase& c) {
    return nlohmann::json{
        {"n", c.n},
        {"constants", c.variant == DConstants::ClosedForm ? "closed_form"
                                                          : "rounded"},
        {"dist_paper_q0_msb", c.dist_q0_msb},
        {"dist_paper_q0_lsb", c.dist_q0_lsb},
        {"full_step_trotter_dist", c.full_step_dist},
        {"winner", order_name(c.winner())}};
  };
  for (const auto& c : report.cases) j["cases"].push_back(case_json(c));
  for (const auto& c : report.rounded) j["rounded"].push_back(case_json(c));
  j["selected"] = order_name(report.selected);
  j["consistent"] = report.consistent;
  j["rounded_transcription_bug"] = report.rounded_transcription_bug;
  return j.dump(2) + "\n";
}

void write_convention_report(const ConventionReport& report,
                             const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << convention_report_json(report);
}

}  // namespace qtsim
