#include "qtsim/noise.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

namespace qtsim {

namespace {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t trajectory_seed(std::uint64_t seed, std::uint64_t trajectory) {
  return seed ^ (0x9E3779B97F4A7C15ull * (trajectory + 1));
}

double require_number(const nlohmann::json& j, const std::string& path) {
  if (!j.is_number())
    throw std::runtime_error("calibration: " + path +
                             ": missing or not a number");
  return j.get<double>();
}

/// Pauli by index: 1 = X, 2 = Y, 3 = Z (Y up to a global phase).
void apply_pauli(StateVector& psi, int which, int qubit) {
  switch (which) {
    case 1:
      psi.apply(GateOp::x(qubit));
      break;
    case 2:
      psi.apply(GateOp::u1(qubit, std::numbers::pi));
      psi.apply(GateOp::x(qubit));
      break;
    case 3:
      psi.apply(GateOp::u1(qubit, std::numbers::pi));
      break;
    default:
      break;
  }
}

}  // namespace

double DeviceCalibration::cnot_error(int control, int target) const {
  auto it = cnot_errors.find({control, target});
  if (it == cnot_errors.end()) it = cnot_errors.find({target, control});
  if (it == cnot_errors.end())
    throw std::runtime_error("calibration: no CNOT entry for pair (" +
                             std::to_string(control) + "," +
                             std::to_string(target) + ")");
  return it->second;
}

DeviceCalibration calibration_from_json(const std::string& text,
                                        const std::string& origin) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error("calibration: " + origin + ": " + e.what());
  }

  DeviceCalibration cal;
  cal.device = j.value("device", "");
  cal.date = j.value("date", "");
  if (!j.contains("qubits") || !j["qubits"].is_array() || j["qubits"].empty())
    throw std::runtime_error("calibration: qubits: missing or empty array");
  int qi = 0;
  for (const auto& q : j["qubits"]) {
    const std::string base = "qubits[" + std::to_string(qi++) + "].";
    QubitCalibration qc;
    qc.frequency_ghz = require_number(q["frequency_ghz"], base + "frequency_ghz");
    qc.t1_us = require_number(q["t1_us"], base + "t1_us");
    qc.t2_us = require_number(q["t2_us"], base + "t2_us");
    qc.u1_error = require_number(q["u1_error"], base + "u1_error");
    qc.u2_error = require_number(q["u2_error"], base + "u2_error");
    qc.u3_error = require_number(q["u3_error"], base + "u3_error");
    qc.readout_error = require_number(q["readout_error"], base + "readout_error");
    if (qc.t1_us <= 0 || qc.t2_us <= 0)
      throw std::runtime_error("calibration: " + base + "t1_us/t2_us: must be positive");
    for (double p : {qc.u1_error, qc.u2_error, qc.u3_error, qc.readout_error})
      if (p < 0.0 || p > 1.0)
        throw std::runtime_error("calibration: " + base +
                                 "error fields must be probabilities");
    cal.qubits.push_back(qc);
  }
  if (j.contains("cnot_errors")) {
    int ci = 0;
    for (const auto& e : j["cnot_errors"]) {
      const std::string base = "cnot_errors[" + std::to_string(ci++) + "].";
      const int c = static_cast<int>(require_number(e["control"], base + "control"));
      const int t = static_cast<int>(require_number(e["target"], base + "target"));
      const double err = require_number(e["error"], base + "error");
      if (err < 0.0 || err > 1.0)
        throw std::runtime_error("calibration: " + base + "error: must be a probability");
      cal.cnot_errors[{c, t}] = err;
    }
  }
  return cal;
}

DeviceCalibration calibration_from_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("calibration: cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return calibration_from_json(buf.str(), path);
}

bool NoiseModel::is_zero() const {
  const auto nz = [](double p) { return p != 0.0; };
  if (std::any_of(single_qubit_depolarizing.begin(),
                  single_qubit_depolarizing.end(), nz))
    return false;
  if (std::any_of(readout_flip.begin(), readout_flip.end(), nz)) return false;
  for (const auto& [_, p] : two_qubit_depolarizing)
    if (nz(p)) return false;
  return true;
}

double NoiseModel::two_qubit_rate(int a, int b) const {
  auto it = two_qubit_depolarizing.find(std::minmax(a, b));
  if (it == two_qubit_depolarizing.end())
    throw std::runtime_error("noise model: no two-qubit rate for pair (" +
                             std::to_string(a) + "," + std::to_string(b) + ")");
  return it->second;
}

NoiseModel NoiseModel::zero(int n_qubits) {
  NoiseModel m;
  m.single_qubit_depolarizing.assign(n_qubits, 0.0);
  m.readout_flip.assign(n_qubits, 0.0);
  for (int a = 0; a < n_qubits; ++a)
    for (int b = a + 1; b < n_qubits; ++b) m.two_qubit_depolarizing[{a, b}] = 0.0;
  return m;
}

NoiseModel noise_from_calibration(const DeviceCalibration& cal,
                                  const std::vector<int>& qubit_assignment) {
  NoiseModel m;
  for (int dev : qubit_assignment) {
    if (dev < 0 || dev >= static_cast<int>(cal.qubits.size()))
      throw std::runtime_error("noise model: device qubit " +
                               std::to_string(dev) + " not in calibration");
    m.single_qubit_depolarizing.push_back(cal.qubits[dev].u3_error);
    m.readout_flip.push_back(cal.qubits[dev].readout_error);
  }
  const int n = static_cast<int>(qubit_assignment.size());
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      m.two_qubit_depolarizing[{a, b}] =
          cal.cnot_error(qubit_assignment[a], qubit_assignment[b]);
  return m;
}

ShotCounts noisy_run(const Circuit& circuit, const StateVector& initial,
                     const NoiseModel& noise, std::uint64_t shots,
                     std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  if (noise.is_zero())
    return sample_counts(run_circuit(initial, circuit), shots, seed);

  const int n = circuit.n_qubits;
  ShotCounts out;
  out.total_shots = shots;
  for (std::uint64_t t = 0; t < shots; ++t) {
    std::mt19937_64 rng(trajectory_seed(seed, t));
    StateVector psi = initial;
    for (const GateOp& g : circuit.gates) {
      psi.apply(g);
      if (g.is_two_qubit()) {
        const double p = noise.two_qubit_rate(g.q0, g.q1);
        if (p > 0.0 && uniform01(rng) < p) {
          // uniform over the 15 non-identity two-qubit Pauli products
          const int idx = 1 + static_cast<int>(uniform01(rng) * 15.0);
          apply_pauli(psi, idx & 3, g.q0);
          apply_pauli(psi, idx >> 2, g.q1);
        }
      } else {
        const double p = noise.single_qubit_depolarizing[g.q0];
        if (p > 0.0 && uniform01(rng) < p) {
          const int which = 1 + static_cast<int>(uniform01(rng) * 3.0);
          apply_pauli(psi, std::min(which, 3), g.q0);
        }
      }
    }

    // one measurement draw, then readout flips
    const std::vector<double> prob = probabilities(psi);
    const double u = uniform01(rng);
    double acc = 0.0;
    std::uint64_t outcome = prob.size() - 1;
    for (std::size_t i = 0; i < prob.size(); ++i) {
      acc += prob[i];
      if (u < acc) {
        outcome = i;
        break;
      }
    }
    for (int q = 0; q < n; ++q)
      if (noise.readout_flip[q] > 0.0 && uniform01(rng) < noise.readout_flip[q])
        outcome ^= std::uint64_t{1} << q;

    std::string key(n, '0');
    for (int b = 0; b < n; ++b)
      if (outcome & (std::uint64_t{1} << b)) key[n - 1 - b] = '1';
    out.counts[key]++;
  }
  return out;
}

double total_variation_distance(const std::vector<double>& p,
                                const std::vector<double>& q) {
  if (p.size() != q.size())
    throw std::invalid_argument("distribution size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
  return s / 2.0;
}

}  // namespace qtsim
