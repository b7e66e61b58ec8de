#pragma once

#include <optional>

#include "qtsim/density.hpp"
#include "qtsim/noise.hpp"

namespace qtsim {

/// All 3^n tensor products of local X/Y/Z measurement bases, as strings over
/// {'X','Y','Z'} ordered most-significant qubit first ("XY" measures X on
/// qubit 1 and Y on qubit 0).
std::vector<std::string> tomography_settings(int n);

/// Basis-change suffix rotating the setting's local bases onto Z before a
/// computational-basis measurement.
Circuit measurement_basis_change(const std::string& setting);

/// Shot counts for every setting of an n-qubit state prepared by `prep`
/// applied to `initial`; noiseless unless a model is supplied. Setting s
/// uses seed + s so a fixed seed pins the whole experiment.
std::map<std::string, ShotCounts> collect_tomography_counts(
    const Circuit& prep, const StateVector& initial, std::uint64_t shots,
    std::uint64_t seed, const NoiseModel* noise = nullptr);

/// Linear inversion: rho = (1/2^n) sum_P <P> P from per-setting counts,
/// averaging each Pauli expectation over all compatible settings, then
/// projection to the physical set by eigenvalue clipping + trace
/// renormalization. Throws std::invalid_argument when settings are missing.
DensityMatrix reconstruct_density(
    const std::map<std::string, ShotCounts>& results);

/// Inversion from exact expectation values (the infinite-shot limit).
DensityMatrix reconstruct_density_exact(const StateVector& psi);
DensityMatrix reconstruct_density_exact(const DensityMatrix& rho);

struct TomographyResult {
  std::vector<std::string> settings;
  std::map<std::string, ShotCounts> counts;
  DensityMatrix reconstructed;
  double fidelity_vs_ideal = 0.0;
};

TomographyResult run_tomography(const Circuit& prep, const StateVector& initial,
                                std::uint64_t shots, std::uint64_t seed,
                                const NoiseModel* noise = nullptr);

/// Reported hardware fidelities for context; never pass/fail targets.
struct PaperFidelityContext {
  double initial = 0.0;
  double final = 0.0;
};

struct FidelityReport {
  std::string scenario;
  double noiseless_initial = 0.0;
  double noiseless_final = 0.0;
  std::optional<double> noisy_initial;
  std::optional<double> noisy_final;
  std::optional<PaperFidelityContext> paper_context;
};

std::string fidelity_report_json(const FidelityReport& report);

}  // namespace qtsim
