#pragma once

#include <filesystem>
#include <optional>

#include "qtsim/oracle.hpp"
#include "qtsim/tomography.hpp"

namespace qtsim {

struct NoiseConfig {
  std::string calibration_file;
  std::vector<int> qubit_assignment;
};

struct ScenarioConfig {
  std::string name;
  int n_qubits = 2;
  PotentialSpec potential;
  TrotterParams params;
  std::string initial_state;  // bit-string label, MSB first
  std::uint64_t shots = 8192;
  std::uint64_t seed = 1;
  std::optional<NoiseConfig> noise;
  bool paper_literal_mode = false;

  StateVector initial() const;
  StepStyle style() const {
    return paper_literal_mode ? StepStyle::PaperLiteral : StepStyle::Exact;
  }
};

/// Directory holding calibration tables and the four preset files; defaults
/// to the in-repo data/ tree, overridable via QTSIM_DATA or --data-dir.
std::filesystem::path default_data_dir();

std::vector<std::string> preset_names();
ScenarioConfig load_scenario(const std::filesystem::path& file);
/// Resolves a preset name or a config file path.
ScenarioConfig resolve_scenario(const std::string& name_or_path,
                                const std::filesystem::path& data_dir);

struct ScenarioResult {
  ScenarioConfig config;
  std::vector<std::vector<double>> noiseless;       // step-by-step probabilities
  std::vector<std::vector<double>> oracle;          // exact propagator series
  /// Literal mode carries the theta = v dt potential variant alongside, per
  /// the strength ambiguity both are reported.
  std::optional<std::vector<std::vector<double>>> paper_theta_series;
  std::optional<std::vector<std::vector<double>>> noisy;  // shot-estimated
  std::vector<std::string> step_qasm;               // cumulative circuit per step
  double max_deviation_vs_oracle = 0.0;
};

ScenarioResult run_scenario(const ScenarioConfig& config,
                            const std::filesystem::path& data_dir);

/// CSV: header "step,state_00,...,p_sum", one row per time step, 12
/// significant digits, byte-deterministic for a fixed config + seed.
std::string series_csv(const std::vector<std::vector<double>>& series, int n_qubits);
void emit_csv(const std::vector<std::vector<double>>& series, int n_qubits,
              const std::filesystem::path& file);

/// Static grouped-bar SVG, one group per time step.
std::string series_svg(const std::vector<std::vector<double>>& series,
                       int n_qubits, const std::string& title);
void emit_svg_bars(const std::vector<std::vector<double>>& series, int n_qubits,
                   const std::string& title, const std::filesystem::path& file);

struct VerifyCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyReport {
  std::string scenario;
  std::vector<VerifyCheck> checks;
  bool all_pass() const;
};

/// Oracle-vs-circuit agreement, per-row normalization, determinism and the
/// dt-halving order fit for the scenario; exit-code contract is 0/1.
VerifyReport verify(const ScenarioConfig& config);
/// Same checks against a caller-supplied step circuit (mutation testing).
VerifyReport verify_with_step(const ScenarioConfig& config, const Circuit& step);
std::string verify_report_text(const VerifyReport& report);

FidelityReport fidelity_report(const ScenarioConfig& config,
                               const NoiseModel* noise,
                               const std::filesystem::path& data_dir);

}  // namespace qtsim
