#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <numbers>

#include "qtsim/scenario.hpp"
#include "test_util.hpp"

using namespace qtsim;

namespace {
const std::filesystem::path kData = QTSIM_TEST_DATA_DIR;
}

TEST_CASE("the four presets ship the published parameters") {
  CHECK(preset_names() ==
        std::vector<std::string>{"free", "step", "doublewell", "multiwell"});

  const ScenarioConfig free = resolve_scenario("free", kData);
  CHECK(free.n_qubits == 2);
  CHECK(free.potential.kind == PotentialKind::Free);
  CHECK(free.potential.v == 0.0);
  CHECK(free.params.dt == 0.1);
  CHECK(free.params.mass == 0.5);
  CHECK(free.params.steps == 6);
  CHECK(free.initial_state == "00");
  CHECK(free.shots == 8192);

  const ScenarioConfig step = resolve_scenario("step", kData);
  CHECK(step.potential.kind == PotentialKind::Step);
  CHECK(step.potential.v == 50.0);

  const ScenarioConfig dw = resolve_scenario("doublewell", kData);
  CHECK(dw.potential.kind == PotentialKind::DoubleWell);
  CHECK(dw.initial_state == "01");

  const ScenarioConfig mw = resolve_scenario("multiwell", kData);
  CHECK(mw.n_qubits == 3);
  CHECK(mw.potential.v == 10.0);
  CHECK(mw.params.steps == 10);
  CHECK(mw.initial_state == "100");

  CHECK_THROWS_AS(resolve_scenario("nosuch", kData), std::runtime_error);
}

TEST_CASE("scenario schema violations are reported") {
  const auto tmp = std::filesystem::temp_directory_path() / "qtsim_bad.json";
  {
    std::ofstream out(tmp);
    out << "{\"name\": \"x\", \"n_qubits\": 2}";
  }
  CHECK_THROWS_WITH_AS(load_scenario(tmp), doctest::Contains("schema"),
                       std::runtime_error);
  std::filesystem::remove(tmp);
}

TEST_CASE("run_scenario bundle contents") {
  ScenarioConfig cfg = resolve_scenario("free", kData);
  cfg.noise.reset();
  const ScenarioResult r = run_scenario(cfg, kData);
  REQUIRE(r.noiseless.size() == 7);
  REQUIRE(r.oracle.size() == 7);
  REQUIRE(r.step_qasm.size() == 7);
  CHECK_FALSE(r.noisy.has_value());
  CHECK(r.max_deviation_vs_oracle < 1e-9);  // free evolution is exact

  // QASM exports re-import and reproduce the emitted rows
  for (int t = 0; t <= 6; ++t) {
    const Circuit c = import_qasm(r.step_qasm[t]);
    const auto p = probabilities(run_circuit(cfg.initial(), c));
    for (std::size_t k = 0; k < p.size(); ++k)
      CHECK(std::abs(p[k] - r.noiseless[t][k]) < 1e-9);
  }
}

TEST_CASE("run_scenario with calibrated noise attaches a sampled series") {
  ScenarioConfig cfg = resolve_scenario("free", kData);
  cfg.shots = 1024;
  const ScenarioResult r = run_scenario(cfg, kData);
  REQUIRE(r.noisy.has_value());
  REQUIRE(r.noisy->size() == 7);
  for (const auto& row : *r.noisy) {
    double sum = 0;
    for (double p : row) sum += p;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("csv emission") {
  const std::vector<std::vector<double>> one_row = {{1.0, 0.0, 0.0, 0.0}};
  const std::string csv = series_csv(one_row, 2);
  CHECK(csv ==
        "step,state_00,state_01,state_10,state_11,p_sum\n"
        "0,1,0,0,0,1\n");

  ScenarioConfig cfg = resolve_scenario("free", kData);
  cfg.noise.reset();
  const ScenarioResult a = run_scenario(cfg, kData);
  const ScenarioResult b = run_scenario(cfg, kData);
  CHECK(series_csv(a.noiseless, 2) == series_csv(b.noiseless, 2));
  CHECK(series_csv(a.noiseless, 2).substr(0, 60).find("step,state_00") == 0);

  // free-particle row 0 is the initial basis state
  const std::string row0 = series_csv(a.noiseless, 2);
  CHECK(row0.find("\n0,1,0,0,0,1\n") != std::string::npos);

  const auto tmp = std::filesystem::temp_directory_path() / "qtsim_series.csv";
  emit_csv(a.noiseless, 2, tmp);
  std::ifstream in(tmp, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == series_csv(a.noiseless, 2));
  std::filesystem::remove(tmp);
}

TEST_CASE("svg emission shapes") {
  const std::vector<std::vector<double>> single = {{0.25, 0.25, 0.25, 0.25}};
  const std::string svg1 = series_svg(single, 2, "one group");
  // one group of 4 bars + 4 legend swatches + background
  std::size_t rects = 0;
  for (std::size_t p = svg1.find("<rect"); p != std::string::npos;
       p = svg1.find("<rect", p + 1))
    ++rects;
  CHECK(rects == 1 + 4 + 4);

  ScenarioConfig mw = resolve_scenario("multiwell", kData);
  const ScenarioResult r = run_scenario(mw, kData);
  const std::string svg = series_svg(r.noiseless, 3, "multiwell");
  rects = 0;
  for (std::size_t p = svg.find("<rect"); p != std::string::npos;
       p = svg.find("<rect", p + 1))
    ++rects;
  CHECK(rects == 1 + 11 * 8 + 8);  // background + 11 groups of 8 + legend
  CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_CASE("verify passes the noiseless presets") {
  for (const std::string name : {"free", "step", "doublewell", "multiwell"}) {
    CAPTURE(name);
    ScenarioConfig cfg = resolve_scenario(name, kData);
    cfg.noise.reset();
    const VerifyReport rep = verify(cfg);
    for (const VerifyCheck& c : rep.checks) {
      CAPTURE(c.name);
      CAPTURE(c.detail);
      CHECK(c.pass);
    }
    CHECK(rep.all_pass());
  }
}

TEST_CASE("verify flags a corrupted kinetic decomposition") {
  ScenarioConfig cfg = resolve_scenario("step", kData);
  cfg.noise.reset();

  // rebuild the step with one controlled-phase angle bent from pi^2/10 to pi^2/9
  constexpr double pp = std::numbers::pi * std::numbers::pi;
  Circuit bad(2, "corrupted_step");
  bad.append(build_potential(cfg.potential, 2, cfg.params));
  bad.append(build_iqft(2));
  Circuit d = build_paper_D(2);
  for (GateOp& g : d.gates)
    if (g.kind == GateKind::Cu1) g.lambda = pp / 9;
  bad.append(d);
  bad.append(build_qft(2));

  const VerifyReport rep = verify_with_step(cfg, bad);
  CHECK_FALSE(rep.all_pass());
  bool flagged = false;
  for (const VerifyCheck& c : rep.checks)
    if (c.name == "step_vs_oracle_propagator" && !c.pass) flagged = true;
  CHECK(flagged);
}

TEST_CASE("verify reports the first-order error fit") {
  ScenarioConfig cfg = resolve_scenario("step", kData);
  cfg.noise.reset();
  const VerifyReport rep = verify(cfg);
  bool found = false;
  for (const VerifyCheck& c : rep.checks)
    if (c.name == "trotter_order_fit") {
      found = true;
      CHECK(c.pass);
      CHECK(c.detail.find("order") != std::string::npos);
    }
  CHECK(found);
}

TEST_CASE("paper-literal multiwell scenario reproduces the published outcome") {
  ScenarioConfig mw = resolve_scenario("multiwell", kData);
  mw.paper_literal_mode = true;
  const ScenarioResult r = run_scenario(mw, kData);
  REQUIRE(r.paper_theta_series.has_value());
  const auto& last = r.noiseless.back();
  CHECK(std::max_element(last.begin(), last.end()) - last.begin() == 2);
  // the half-strength theta variant is attached alongside and differs
  CHECK(r.paper_theta_series->back() != r.noiseless.back());
}

TEST_CASE("verify text output has one line per check") {
  ScenarioConfig cfg = resolve_scenario("free", kData);
  cfg.noise.reset();
  const VerifyReport rep = verify(cfg);
  const std::string text = verify_report_text(rep);
  std::size_t lines = 0;
  for (char ch : text)
    if (ch == '\n') ++lines;
  CHECK(lines == rep.checks.size() + 1);
  CHECK(text.find("verify: PASS") != std::string::npos);
}
