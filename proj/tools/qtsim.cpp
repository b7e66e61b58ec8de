// Command-line runner for the tunneling scenarios: run, verify, presets,
// export-qasm. See README for the output bundle layout.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "qtsim/scenario.hpp"

namespace fs = std::filesystem;
using namespace qtsim;

namespace {

struct CommonOpts {
  std::string scenario;
  std::string out_dir = "out";
  std::string data_dir;
  std::string noise_file;
  std::vector<int> assignment;
  std::uint64_t seed = 0;
  bool seed_set = false;
  bool paper_literal = false;
};

fs::path data_dir_of(const CommonOpts& o) {
  return o.data_dir.empty() ? default_data_dir() : fs::path(o.data_dir);
}

ScenarioConfig configure(const CommonOpts& o) {
  ScenarioConfig cfg = resolve_scenario(o.scenario, data_dir_of(o));
  if (o.seed_set) cfg.seed = o.seed;
  if (o.paper_literal) cfg.paper_literal_mode = true;
  if (!o.noise_file.empty()) {
    if (o.assignment.empty())
      throw CLI::ValidationError("--noise requires --assign");
    cfg.noise = NoiseConfig{o.noise_file, o.assignment};
  }
  return cfg;
}

void write_file(const fs::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << body;
}

void add_common(CLI::App* cmd, CommonOpts& o, bool with_out) {
  cmd->add_option("scenario", o.scenario,
                  "preset name (free|step|doublewell|multiwell) or config file")
      ->required();
  cmd->add_option("--data-dir", o.data_dir, "calibration/preset directory");
  cmd->add_option("--seed", o.seed, "override the scenario seed")
      ->each([&](const std::string&) { o.seed_set = true; });
  cmd->add_flag("--paper-literal", o.paper_literal,
                "use the literal published circuits (swap-free ladders, "
                "printed decomposition, theta = v dt variant attached)");
  cmd->add_option("--noise", o.noise_file,
                  "calibration file name under <data-dir>/calibration");
  cmd->add_option("--assign", o.assignment,
                  "device qubit assignment, e.g. --assign 7 8")
      ->delimiter(',');
  if (with_out) cmd->add_option("--out", o.out_dir, "output directory");
}

int cmd_run(const CommonOpts& o, bool with_fidelity) {
  const ScenarioConfig cfg = configure(o);
  const fs::path dir = fs::path(o.out_dir) / cfg.name;
  fs::create_directories(dir);
  const ScenarioResult r = run_scenario(cfg, data_dir_of(o));

  emit_csv(r.noiseless, cfg.n_qubits, dir / "noiseless.csv");
  emit_csv(r.oracle, cfg.n_qubits, dir / "oracle.csv");
  emit_svg_bars(r.noiseless, cfg.n_qubits,
                cfg.name + " probability evolution", dir / "noiseless.svg");
  if (r.paper_theta_series) {
    emit_csv(*r.paper_theta_series, cfg.n_qubits, dir / "paper_theta.csv");
    emit_svg_bars(*r.paper_theta_series, cfg.n_qubits,
                  cfg.name + " (theta = v dt variant)", dir / "paper_theta.svg");
  }
  if (r.noisy) {
    emit_csv(*r.noisy, cfg.n_qubits, dir / "noisy.csv");
    emit_svg_bars(*r.noisy, cfg.n_qubits, cfg.name + " under calibrated noise",
                  dir / "noisy.svg");
  }
  for (std::size_t t = 0; t < r.step_qasm.size(); ++t) {
    char name[32];
    std::snprintf(name, sizeof name, "step_%02zu.qasm", t);
    write_file(dir / name, r.step_qasm[t]);
  }

  std::ostringstream report;
  report << "{\n  \"scenario\": \"" << cfg.name << "\",\n"
         << "  \"max_deviation_vs_oracle\": " << r.max_deviation_vs_oracle
         << ",\n  \"steps\": " << cfg.params.steps
         << ",\n  \"paper_literal\": " << (cfg.paper_literal_mode ? "true" : "false")
         << "\n}\n";
  write_file(dir / "report.json", report.str());

  if (with_fidelity) {
    std::optional<NoiseModel> model;
    if (cfg.noise) {
      const DeviceCalibration cal = calibration_from_table(
          (data_dir_of(o) / "calibration" / cfg.noise->calibration_file).string());
      model = noise_from_calibration(cal, cfg.noise->qubit_assignment);
    }
    const FidelityReport fr =
        fidelity_report(cfg, model ? &*model : nullptr, data_dir_of(o));
    write_file(dir / "fidelity.json", fidelity_report_json(fr));
  }

  std::cout << "wrote " << dir.string() << " (max deviation vs oracle "
            << r.max_deviation_vs_oracle << ")\n";
  return 0;
}

int cmd_verify(const CommonOpts& o) {
  const VerifyReport rep = verify(configure(o));
  std::cout << verify_report_text(rep);
  return rep.all_pass() ? 0 : 1;
}

int cmd_presets(const fs::path& data_dir) {
  for (const std::string& name : preset_names()) {
    const ScenarioConfig cfg = resolve_scenario(name, data_dir);
    std::cout << name << ": n=" << cfg.n_qubits << " v=" << cfg.potential.v
              << " dt=" << cfg.params.dt << " mass=" << cfg.params.mass
              << " steps=" << cfg.params.steps << " initial=|"
              << cfg.initial_state << "> shots=" << cfg.shots << "\n";
  }
  return 0;
}

int cmd_export_qasm(const CommonOpts& o) {
  const ScenarioConfig cfg = configure(o);
  const fs::path dir = fs::path(o.out_dir) / cfg.name;
  fs::create_directories(dir);
  const Circuit step = trotter_step(cfg.potential, cfg.n_qubits, cfg.params,
                                    cfg.style());
  write_file(dir / "step.qasm", export_qasm(step));
  Circuit full(cfg.n_qubits, cfg.name);
  for (int t = 0; t < cfg.params.steps; ++t) full.append(step);
  write_file(dir / "full.qasm", export_qasm(full));
  std::cout << "wrote " << (dir / "step.qasm").string() << " and full.qasm\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gate-level simulator for the tunneling scenarios"};
  app.require_subcommand(1);

  CommonOpts run_opts, verify_opts, export_opts;
  bool with_fidelity = false;
  std::string presets_data_dir;

  CLI::App* run = app.add_subcommand("run", "run a scenario and write the bundle");
  add_common(run, run_opts, true);
  run->add_flag("--fidelity-report", with_fidelity,
                "also run state tomography and write fidelity.json");

  CLI::App* ver = app.add_subcommand("verify", "oracle checks; exit 0/1");
  add_common(ver, verify_opts, false);

  CLI::App* presets = app.add_subcommand("presets", "preset catalogue");
  CLI::App* presets_list = presets->add_subcommand("list", "list the presets");
  presets->add_option("--data-dir", presets_data_dir, "preset directory");
  presets->require_subcommand(0, 1);

  CLI::App* exq = app.add_subcommand("export-qasm", "write step/full OpenQASM");
  add_common(exq, export_opts, true);

  try {
    app.parse(argc, argv);
    if (run->parsed()) return cmd_run(run_opts, with_fidelity);
    if (ver->parsed()) return cmd_verify(verify_opts);
    if (presets->parsed() || presets_list->parsed())
      return cmd_presets(presets_data_dir.empty() ? default_data_dir()
                                                  : fs::path(presets_data_dir));
    if (exq->parsed()) return cmd_export_qasm(export_opts);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
