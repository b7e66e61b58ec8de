#include "qtsim/tomography.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include <nlohmann/json.hpp>
#include <unsupported/Eigen/KroneckerProduct>

namespace qtsim {

namespace {

constexpr int kPauliI = 0, kPauliX = 1, kPauliY = 2, kPauliZ = 3;

Eigen::Matrix2cd pauli_matrix(int which) {
  Eigen::Matrix2cd m;
  switch (which) {
    case kPauliI: m << 1, 0, 0, 1; break;
    case kPauliX: m << 0, 1, 1, 0; break;
    case kPauliY: m << 0, cx(0, -1), cx(0, 1), 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

/// Pauli string encoded base-4, two bits per qubit (qubit q at bits 2q).
int pauli_at(std::uint64_t code, int q) { return (code >> (2 * q)) & 3; }

/// Tensor product with qubit n-1 outermost, matching the basis index
/// convention (qubit q is bit q).
Eigen::MatrixXcd pauli_string_matrix(std::uint64_t code, int n) {
  Eigen::MatrixXcd m = pauli_matrix(pauli_at(code, n - 1));
  for (int q = n - 2; q >= 0; --q)
    m = Eigen::kroneckerProduct(m, pauli_matrix(pauli_at(code, q))).eval();
  return m;
}

char basis_char(int which) { return which == kPauliX ? 'X' : which == kPauliY ? 'Y' : 'Z'; }

/// Does a measurement setting determine this Pauli string's expectation?
bool setting_covers(const std::string& setting, std::uint64_t code, int n) {
  for (int q = 0; q < n; ++q) {
    const int p = pauli_at(code, q);
    if (p == kPauliI) continue;
    if (setting[n - 1 - q] != basis_char(p)) return false;
  }
  return true;
}

double expectation_from_counts(const ShotCounts& counts, std::uint64_t code,
                               int n) {
  double acc = 0.0;
  for (const auto& [key, c] : counts.counts) {
    int parity = 1;
    for (int q = 0; q < n; ++q)
      if (pauli_at(code, q) != kPauliI && key[n - 1 - q] == '1') parity = -parity;
    acc += parity * static_cast<double>(c);
  }
  return acc / static_cast<double>(counts.total_shots);
}

DensityMatrix assemble_and_project(
    int n, const std::function<double(std::uint64_t)>& expectation) {
  const auto dim = static_cast<Eigen::Index>(1) << n;
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  const std::uint64_t n_paulis = std::uint64_t{1} << (2 * n);
  for (std::uint64_t code = 0; code < n_paulis; ++code) {
    const double e = code == 0 ? 1.0 : expectation(code);
    if (e != 0.0) rho += e * pauli_string_matrix(code, n);
  }
  rho /= static_cast<double>(dim);

  // physicality projection: clip negative eigenvalues, renormalize trace
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es((rho + rho.adjoint()) / 2.0);
  Eigen::VectorXd w = es.eigenvalues().cwiseMax(0.0);
  const double tr = w.sum();
  if (tr <= 0.0) throw std::runtime_error("projection collapsed to zero trace");
  w /= tr;
  Eigen::MatrixXcd proj =
      es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
  return DensityMatrix(n, std::move(proj));
}

}  // namespace

std::vector<std::string> tomography_settings(int n) {
  if (n < 1 || n > 8)
    throw std::invalid_argument("tomography_settings: n out of range");
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) total *= 3;
  std::vector<std::string> out;
  out.reserve(total);
  for (std::size_t k = 0; k < total; ++k) {
    std::string s(n, 'Z');
    std::size_t rem = k;
    for (int q = 0; q < n; ++q) {
      s[n - 1 - q] = "XYZ"[rem % 3];
      rem /= 3;
    }
    out.push_back(std::move(s));
  }
  return out;
}

Circuit measurement_basis_change(const std::string& setting) {
  const int n = static_cast<int>(setting.size());
  Circuit c(n, "meas_" + setting);
  for (int q = 0; q < n; ++q) {
    const char b = setting[n - 1 - q];
    if (b == 'X') {
      c.add(GateOp::h(q));
    } else if (b == 'Y') {
      c.add(GateOp::u1(q, -std::numbers::pi / 2));  // S-dagger
      c.add(GateOp::h(q));
    } else if (b != 'Z') {
      throw std::invalid_argument("bad basis character in setting " + setting);
    }
  }
  return c;
}

std::map<std::string, ShotCounts> collect_tomography_counts(
    const Circuit& prep, const StateVector& initial, std::uint64_t shots,
    std::uint64_t seed, const NoiseModel* noise) {
  const int n = prep.n_qubits;
  std::map<std::string, ShotCounts> out;
  const StateVector prepared = run_circuit(initial, prep);
  std::uint64_t idx = 0;
  for (const std::string& setting : tomography_settings(n)) {
    const Circuit basis = measurement_basis_change(setting);
    if (noise != nullptr && !noise->is_zero()) {
      Circuit full = prep;
      full.append(basis);
      out[setting] = noisy_run(full, initial, *noise, shots, seed + idx);
    } else {
      out[setting] = sample_counts(run_circuit(prepared, basis), shots, seed + idx);
    }
    ++idx;
  }
  return out;
}

DensityMatrix reconstruct_density(
    const std::map<std::string, ShotCounts>& results) {
  if (results.empty()) throw std::invalid_argument("no tomography settings");
  const int n = static_cast<int>(results.begin()->first.size());
  const std::vector<std::string> settings = tomography_settings(n);
  const std::uint64_t shots = results.begin()->second.total_shots;
  for (const std::string& s : settings) {
    auto it = results.find(s);
    if (it == results.end())
      throw std::invalid_argument("missing tomography setting " + s);
    if (it->second.total_shots != shots)
      throw std::invalid_argument("uneven shot counts across settings");
  }

  return assemble_and_project(n, [&](std::uint64_t code) {
    double acc = 0.0;
    int used = 0;
    for (const std::string& s : settings) {
      if (!setting_covers(s, code, n)) continue;
      acc += expectation_from_counts(results.at(s), code, n);
      ++used;
    }
    return used ? acc / used : 0.0;
  });
}

DensityMatrix reconstruct_density_exact(const DensityMatrix& rho) {
  const int n = rho.n_qubits();
  return assemble_and_project(n, [&](std::uint64_t code) {
    return (pauli_string_matrix(code, n) * rho.entries()).trace().real();
  });
}

DensityMatrix reconstruct_density_exact(const StateVector& psi) {
  return reconstruct_density_exact(DensityMatrix::pure(psi));
}

TomographyResult run_tomography(const Circuit& prep, const StateVector& initial,
                                std::uint64_t shots, std::uint64_t seed,
                                const NoiseModel* noise) {
  TomographyResult r{tomography_settings(prep.n_qubits),
                     collect_tomography_counts(prep, initial, shots, seed, noise),
                     DensityMatrix::maximally_mixed(prep.n_qubits), 0.0};
  r.reconstructed = reconstruct_density(r.counts);
  r.fidelity_vs_ideal =
      fidelity_with_pure(r.reconstructed, run_circuit(initial, prep));
  return r;
}

std::string fidelity_report_json(const FidelityReport& report) {
  nlohmann::json j;
  j["scenario"] = report.scenario;
  j["fidelity_convention"] = "squared Uhlmann, (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2";
  j["noiseless"] = {{"initial", report.noiseless_initial},
                    {"final", report.noiseless_final}};
  if (report.noisy_initial && report.noisy_final)
    j["noisy"] = {{"initial", *report.noisy_initial},
                  {"final", *report.noisy_final}};
  if (report.paper_context) {
    j["reported_hardware_context"] = {
        {"initial", report.paper_context->initial},
        {"final", report.paper_context->final},
        {"note", "published device fidelities, attached for comparison only"}};
  }
  return j.dump(2) + "\n";
}

}  // namespace qtsim
