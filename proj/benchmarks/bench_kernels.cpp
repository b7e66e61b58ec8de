#include <benchmark/benchmark.h>

#include <random>

#include "qtsim/oracle.hpp"
#include "qtsim/tomography.hpp"

using namespace qtsim;

namespace {

void BM_apply_hadamard(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  StateVector psi(n);
  int q = 0;
  for (auto _ : state) {
    psi.apply(GateOp::h(q));
    q = (q + 1) % n;
    benchmark::DoNotOptimize(psi.amp(0));
  }
  state.SetItemsProcessed(state.iterations() * (int64_t{1} << n));
}
BENCHMARK(BM_apply_hadamard)->Arg(8)->Arg(12)->Arg(16)->Arg(20);

void BM_apply_cu1(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  StateVector psi(n);
  for (int q = 0; q < n; ++q) psi.apply(GateOp::h(q));
  for (auto _ : state) {
    psi.apply(GateOp::cu1(0, n - 1, 0.3));
    benchmark::DoNotOptimize(psi.amp(1));
  }
  state.SetItemsProcessed(state.iterations() * (int64_t{1} << n));
}
BENCHMARK(BM_apply_cu1)->Arg(8)->Arg(12)->Arg(16)->Arg(20);

void BM_trotter_step_run(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const PotentialSpec spec{PotentialKind::Step, 50.0};
  const Circuit step = trotter_step(spec, n, TrotterParams{0.1, 0.5, 1});
  StateVector psi(n);
  for (auto _ : state) {
    psi = run_circuit(std::move(psi), step);
    benchmark::DoNotOptimize(psi.amp(0));
  }
}
BENCHMARK(BM_trotter_step_run)->Arg(2)->Arg(3)->Arg(8)->Arg(12);

void BM_exact_propagator(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const DenseOperator h =
      exact_hamiltonian(PotentialSpec{PotentialKind::Step, 50.0}, n, 0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(exact_propagator(h, 0.1).entries(0, 0));
  }
}
BENCHMARK(BM_exact_propagator)->Arg(4)->Arg(6)->Arg(8);

void BM_reconstruct_density(benchmark::State& state) {
  const Circuit step = trotter_step(PotentialSpec{PotentialKind::DoubleWell, 50.0},
                                    2, TrotterParams{0.1, 0.5, 1});
  Circuit prep(2);
  for (int t = 0; t < 6; ++t) prep.append(step);
  const auto counts = collect_tomography_counts(
      prep, StateVector::basis(2, std::string("01")), 1024, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(reconstruct_density(counts).entries()(0, 0));
  }
}
BENCHMARK(BM_reconstruct_density);

void BM_noisy_run_shot(benchmark::State& state) {
  const Circuit step = trotter_step(PotentialSpec{PotentialKind::Free, 0.0}, 2,
                                    TrotterParams{0.1, 0.5, 1});
  Circuit prep(2);
  for (int t = 0; t < 6; ++t) prep.append(step);
  NoiseModel m = NoiseModel::zero(2);
  m.single_qubit_depolarizing = {0.002, 0.003};
  m.two_qubit_depolarizing[{0, 1}] = 0.03;
  m.readout_flip = {0.07, 0.09};
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(noisy_run(prep, StateVector(2), m, 64, seed++));
  }
  state.SetItemsProcessed(state.iterations() * 64);
}
BENCHMARK(BM_noisy_run_shot);

}  // namespace

BENCHMARK_MAIN();
