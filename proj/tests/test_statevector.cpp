#include <doctest.h>

#include <numbers>

#include "qtsim/density.hpp"
#include "qtsim/oracle.hpp"
#include "test_util.hpp"

using namespace qtsim;
constexpr double kPi = std::numbers::pi;

TEST_CASE("hadamard on |0>") {
  StateVector psi(1);
  psi.apply(GateOp::h(0));
  CHECK(std::abs(psi.amp(0) - cx(1 / std::sqrt(2.0))) < 1e-14);
  CHECK(std::abs(psi.amp(1) - cx(1 / std::sqrt(2.0))) < 1e-14);
}

TEST_CASE("u1 leaves |0> unchanged") {
  StateVector psi(1);
  psi.apply(GateOp::u1(0, 1.234));
  CHECK(std::abs(psi.amp(0) - cx(1)) < 1e-15);
  CHECK(std::abs(psi.amp(1)) < 1e-15);
}

TEST_CASE("H U3(theta,-pi/2,pi/2) H equals Rz(theta)") {
  Circuit lhs(1), rhs(1);
  lhs.add(GateOp::h(0))
      .add(GateOp::u3(0, 5.0, -kPi / 2, kPi / 2))
      .add(GateOp::h(0));
  rhs.add(GateOp::rz(0, 5.0));
  CHECK(phase_aligned_distance(circuit_matrix(lhs), circuit_matrix(rhs)) < 1e-12);
  // equal as matrices outright, not only up to phase
  CHECK(test::max_abs_diff(circuit_matrix(lhs).entries,
                           circuit_matrix(rhs).entries) < 1e-12);
}

TEST_CASE("every gate matrix is unitary to 1e-12") {
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 50; ++rep) {
    Circuit c = test::random_circuit(3, 1, rng);
    if (c.gates.empty()) continue;
    const DenseOperator u = circuit_matrix(c);
    const Eigen::MatrixXcd eye =
        Eigen::MatrixXcd::Identity(u.entries.rows(), u.entries.cols());
    CHECK(test::max_abs_diff(u.entries * u.entries.adjoint(), eye) < 1e-12);
  }
}

TEST_CASE("gate index bounds") {
  StateVector psi(2);
  CHECK_THROWS_AS(psi.apply(GateOp::h(2)), std::out_of_range);
  CHECK_THROWS_AS(psi.apply(GateOp::cnot(0, 5)), std::out_of_range);
  CHECK_THROWS_AS(psi.apply(GateOp::cnot(1, 1)), std::invalid_argument);
}

TEST_CASE("empty circuit is identity") {
  std::mt19937_64 rng(11);
  const StateVector psi = test::random_state(3, rng);
  const StateVector out = run_circuit(psi, Circuit(3));
  for (std::size_t i = 0; i < psi.dim(); ++i)
    CHECK(std::abs(psi.amp(i) - out.amp(i)) == 0.0);
}

TEST_CASE("qft on |00> gives uniform probabilities") {
  const StateVector out = run_circuit(StateVector(2), build_qft(2));
  for (double p : probabilities(out)) CHECK(p == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("free trotter step matches exact kinetic propagator on |00>") {
  const TrotterParams params{0.1, 0.5, 1};
  const StateVector out = run_circuit(
      StateVector(2), trotter_step(PotentialSpec{PotentialKind::Free, 0.0}, 2, params));
  const auto oracle = oracle_evolve(StateVector(2),
                                    PotentialSpec{PotentialKind::Free, 0.0}, params);
  const auto p = probabilities(out);
  for (std::size_t k = 0; k < p.size(); ++k)
    CHECK(std::abs(p[k] - oracle[1][k]) < 1e-9);
}

TEST_CASE("probabilities of basis and uniform states") {
  const auto p1 = probabilities(StateVector::basis(2, std::string("01")));
  CHECK(p1[0] == 0.0);
  CHECK(p1[1] == 1.0);
  CHECK(p1[2] == 0.0);
  CHECK(p1[3] == 0.0);
  StateVector u(2);
  u.apply(GateOp::h(0));
  u.apply(GateOp::h(1));
  for (double p : probabilities(u)) CHECK(p == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("norm preserved through random circuits") {
  std::mt19937_64 rng(23);
  for (int n = 1; n <= 4; ++n) {
    StateVector psi = run_circuit(StateVector(n), test::random_circuit(n, 100, rng));
    CHECK(std::abs(psi.norm_sq() - 1.0) < 1e-9);
  }
}

TEST_CASE("circuit then inverse is identity on random states") {
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 20; ++rep) {
    const Circuit c = test::random_circuit(3, 40, rng);
    const StateVector psi = test::random_state(3, rng);
    const StateVector back = run_circuit(run_circuit(psi, c), c.inverse());
    for (std::size_t i = 0; i < psi.dim(); ++i)
      CHECK(std::abs(psi.amp(i) - back.amp(i)) < 1e-9);
  }
}

TEST_CASE("sampling a basis state concentrates all shots") {
  const auto counts = sample_counts(StateVector::basis(2, std::string("10")), 8192, 5);
  CHECK(counts.total_shots == 8192);
  CHECK(counts.counts.size() == 1);
  CHECK(counts.counts.at("10") == 8192);
}

TEST_CASE("uniform state sampling is within 5 sigma") {
  StateVector u(2);
  u.apply(GateOp::h(0));
  u.apply(GateOp::h(1));
  const auto counts = sample_counts(u, 8192, 99);
  const double sigma = std::sqrt(8192 * 0.25 * 0.75);
  for (const std::string key : {"00", "01", "10", "11"}) {
    const double c = static_cast<double>(counts.counts.at(key));
    CHECK(std::abs(c - 2048.0) < 5 * sigma);
  }
}

TEST_CASE("sampling is deterministic per seed") {
  StateVector u(3);
  u.apply(GateOp::h(0));
  u.apply(GateOp::h(2));
  const auto a = sample_counts(u, 4096, 1234);
  const auto b = sample_counts(u, 4096, 1234);
  CHECK(a.counts == b.counts);
  const auto c = sample_counts(u, 4096, 1235);
  CHECK(a.counts != c.counts);
}

TEST_CASE("density matrix of basis and plus states") {
  const DensityMatrix rho00 = density_from_state(StateVector(2));
  CHECK(std::abs(rho00.entries()(0, 0) - cx(1)) < 1e-14);
  CHECK(rho00.entries().cwiseAbs().sum() == doctest::Approx(1.0).epsilon(1e-12));

  StateVector plus(1);
  plus.apply(GateOp::h(0));
  const DensityMatrix rhop = density_from_state(plus);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK(std::abs(rhop.entries()(i, j) - cx(0.5)) < 1e-14);
}

TEST_CASE("final free-particle density matrix is physical and rank one") {
  const TrotterParams params{0.1, 0.5, 6};
  StateVector psi(2);
  const Circuit step = trotter_step(PotentialSpec{PotentialKind::Free, 0.0}, 2, params);
  for (int t = 0; t < params.steps; ++t) psi = run_circuit(std::move(psi), step);
  const DensityMatrix rho = density_from_state(psi);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.entries());
  CHECK(es.eigenvalues().maxCoeff() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(es.eigenvalues().head(3).sum()) < 1e-10);
}

TEST_CASE("fidelity basics") {
  std::mt19937_64 rng(77);
  const DensityMatrix rho = density_from_state(test::random_state(2, rng));
  CHECK(fidelity(rho, rho) == doctest::Approx(1.0).epsilon(1e-10));

  const DensityMatrix a = density_from_state(StateVector::basis(2, std::string("00")));
  const DensityMatrix b = density_from_state(StateVector::basis(2, std::string("01")));
  CHECK(fidelity(a, b) == doctest::Approx(0.0).epsilon(1e-12));

  // mixed-vs-pure agrees with <psi|rho|psi>
  const DensityMatrix mixed = DensityMatrix::maximally_mixed(2);
  CHECK(fidelity(mixed, a) == doctest::Approx(0.25).epsilon(1e-10));
}

TEST_CASE("non-physical density matrix is rejected") {
  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Zero(4, 4);
  bad(0, 0) = 1.5;
  bad(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityMatrix(2, bad), std::invalid_argument);
  Eigen::MatrixXcd nonherm = Eigen::MatrixXcd::Zero(4, 4);
  nonherm(0, 0) = 1.0;
  nonherm(0, 1) = cx(0.3, 0.1);
  CHECK_THROWS_AS(DensityMatrix(2, nonherm), std::invalid_argument);
}
