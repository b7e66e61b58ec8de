#pragma once

#include <Eigen/Dense>
#include <string>

#include "qtsim/tunneling.hpp"

namespace qtsim {

/// Dense matrix over lattice-site indices. The oracle builds everything from
/// the momentum eigenvalues and the DFT matrix directly and never touches the
/// circuit-side QFT, so it stays an independent cross-check.
struct DenseOperator {
  int n_qubits = 0;
  Eigen::MatrixXcd entries;

  std::size_t dim() const { return static_cast<std::size_t>(entries.rows()); }
};

/// DFT matrix F[l][k] = e^{2 pi i l k / 2^n} / sqrt(2^n).
DenseOperator dft_matrix(int n);

/// H = F diag(p_l^2 / 2m) F^dagger + v * (sigma_z at the placement rule's
/// bit). `order` flips the placement to the reversed-convention variant so
/// the arbiter can emit both.
DenseOperator exact_hamiltonian(const PotentialSpec& spec, int n, double mass,
                                BitOrder order = kResolvedBitOrder);

/// e^{-iHt} by Hermitian eigendecomposition.
DenseOperator exact_propagator(const DenseOperator& hamiltonian, double t);

/// Full unitary of a circuit, built column-by-column (n <= 10).
DenseOperator circuit_matrix(const Circuit& circuit);

/// min over unit phase phi of ||A - phi B||_F / sqrt(dim); 0 iff A = phi B.
double phase_aligned_distance(const DenseOperator& a, const DenseOperator& b);

/// Exact time series for a scenario, one probability row per step.
std::vector<std::vector<double>> oracle_evolve(const StateVector& initial,
                                               const PotentialSpec& spec,
                                               const TrotterParams& params);

/// Empirical arbiter for the transcription ambiguity: conjugates the hand
/// decomposition of D as QFT * D * QFT^-1 and measures the phase-aligned
/// distance to e^{-iK dt} under both label conventions, for n = 2 and n = 3.
struct ConventionCase {
  int n = 0;
  DConstants variant = DConstants::ClosedForm;
  double dist_q0_msb = 0.0;
  double dist_q0_lsb = 0.0;
  double full_step_dist = 0.0;  // trotter step vs exact propagator, winner's convention
  BitOrder winner() const {
    return dist_q0_msb <= dist_q0_lsb ? BitOrder::PaperQ0Msb
                                      : BitOrder::PaperQ0Lsb;
  }
};

struct ConventionReport {
  std::vector<ConventionCase> cases;   // ClosedForm n=2, n=3
  std::vector<ConventionCase> rounded; // Rounded variant, informational
  BitOrder selected = BitOrder::PaperQ0Msb;
  bool consistent = true;        // winners agree across n
  bool rounded_transcription_bug = false;  // rounded n=3 fails the sanity bound
};

/// Throws std::runtime_error if the ClosedForm decomposition exceeds the
/// sanity bound 0.5 under both conventions (a transcription bug upstream).
ConventionReport resolve_bit_order();

std::string convention_report_json(const ConventionReport& report);
void write_convention_report(const ConventionReport& report,
                             const std::string& path);

}  // namespace qtsim
