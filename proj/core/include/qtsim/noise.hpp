#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qtsim/circuit.hpp"

namespace qtsim {

struct QubitCalibration {
  double frequency_ghz = 0.0;
  double t1_us = 0.0;
  double t2_us = 0.0;
  double u1_error = 0.0;
  double u2_error = 0.0;
  double u3_error = 0.0;
  double readout_error = 0.0;
};

/// Parsed device table: per-qubit records plus directed CNOT errors.
/// T1/T2 are stored but unused by the depolarizing model (no idle-time
/// scheduling is modeled).
struct DeviceCalibration {
  std::string device;
  std::string date;
  std::vector<QubitCalibration> qubits;
  std::map<std::pair<int, int>, double> cnot_errors;  // (control, target)

  double cnot_error(int control, int target) const;  // symmetric lookup
};

/// Throws std::runtime_error naming the offending field path.
DeviceCalibration calibration_from_table(const std::string& path);
DeviceCalibration calibration_from_json(const std::string& text,
                                        const std::string& origin = "<string>");

struct NoiseModel {
  std::vector<double> single_qubit_depolarizing;  // per logical qubit
  std::map<std::pair<int, int>, double> two_qubit_depolarizing;
  std::vector<double> readout_flip;

  bool is_zero() const;
  double two_qubit_rate(int a, int b) const;
  static NoiseModel zero(int n_qubits);
};

/// single-qubit rate = u3_error of the assigned device qubit, two-qubit rate
/// = cnot_error of the assigned pair, readout_flip = readout_error.
/// Throws std::runtime_error when a needed pair entry is missing.
NoiseModel noise_from_calibration(const DeviceCalibration& cal,
                                  const std::vector<int>& qubit_assignment);

/// Monte-Carlo trajectory sampling: after each gate, with the gate's
/// depolarizing probability, apply a uniformly random non-identity Pauli on
/// the gate's qubit(s) (15 two-qubit products for two-qubit gates); each
/// measured bit flips with readout_flip probability. Trajectory t draws from
/// its own stream seeded by (seed, t), so results are reproducible under any
/// scheduling. Zero noise reduces to sample_counts on the same seed path.
ShotCounts noisy_run(const Circuit& circuit, const StateVector& initial,
                     const NoiseModel& noise, std::uint64_t shots,
                     std::uint64_t seed);

double total_variation_distance(const std::vector<double>& p,
                                const std::vector<double>& q);

}  // namespace qtsim
