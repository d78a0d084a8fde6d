// Copyright 2026 The qdyn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "qdyn/ansatz.hpp"
#include "qdyn/ensemble.hpp"
#include "qdyn/errors.hpp"
#include "qdyn/exact.hpp"
#include "qdyn/frenkel.hpp"
#include "qdyn/fullspace.hpp"
#include "qdyn/hamiltonian_source.hpp"
#include "qdyn/mclachlan.hpp"
#include "qdyn/mitigation.hpp"
#include "qdyn/observables.hpp"
#include "qdyn/series_io.hpp"
#include "qdyn/trotter.hpp"

namespace qdyn::cli {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

// Reads obj[key], storing the default when absent so that the resolved
// configuration written next to the outputs is complete.
template <class T>
T take(json& obj, const char* key, T fallback) {
  if (!obj.contains(key)) obj[key] = fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

json& section(json& obj, const char* key) {
  if (!obj.contains(key)) obj[key] = json::object();
  if (!obj[key].is_object()) throw ConfigError(std::string("config key '") + key + "' must be an object");
  return obj[key];
}

template <class T>
T require(const json& obj, const char* key) {
  if (!obj.contains(key)) throw ConfigError(std::string("config is missing '") + key + "'");
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config " + path + ": " + e.what());
  }
}

fs::path resolve_path(const fs::path& base_dir, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() ? path : base_dir / path;
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

fs::path prepare_out_dir(const std::string& dir) {
  fs::path p(dir);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir + ": " + ec.message());
  return p;
}

std::pair<double, double> parse_range(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw ConfigError("--alpha-range expects lo,hi");
  try {
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw ConfigError("--alpha-range expects two numbers, got '" + text + "'");
  }
}

FrenkelSnapshot snapshot_from_json(const json& m) {
  const auto e = require<std::vector<double>>(m, "energies");
  const auto v = require<std::vector<std::vector<double>>>(m, "couplings");
  const auto n = static_cast<Eigen::Index>(e.size());
  if (static_cast<Eigen::Index>(v.size()) != n) throw ConfigError("couplings must be N x N");
  Eigen::MatrixXd c(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<Eigen::Index>(v[i].size()) != n) throw ConfigError("couplings must be N x N");
    for (Eigen::Index j = 0; j < n; ++j) c(i, j) = v[i][j];
  }
  return FrenkelSnapshot(e, c);
}

Interpolation interpolation_from(json& m) {
  const auto mode = take<std::string>(m, "interpolation", "linear");
  if (mode == "linear") return Interpolation::kLinear;
  if (mode == "piecewise_constant") return Interpolation::kPiecewiseConstant;
  throw ConfigError("unknown interpolation '" + mode + "'");
}

std::vector<MoleculeElectronicSpec> molecules_from(const json& m, const fs::path& base) {
  const auto& src = m.at("molecules");
  if (src.is_string()) return read_molecules_csv(resolve_path(base, src.get<std::string>()).string());
  std::vector<MoleculeElectronicSpec> out;
  auto vec3 = [](const json& o, const char* key) {
    const auto v = require<std::vector<double>>(o, key);
    if (v.size() != 3) throw ConfigError(std::string(key) + " must have 3 components");
    return Eigen::Vector3d(v[0], v[1], v[2]);
  };
  for (const auto& o : src) {
    MoleculeElectronicSpec s;
    s.excitation_energy = require<double>(o, "energy");
    s.mu_ground = o.contains("mu_ground") ? vec3(o, "mu_ground") : Eigen::Vector3d::Zero();
    s.mu_excited = o.contains("mu_excited") ? vec3(o, "mu_excited") : Eigen::Vector3d::Zero();
    s.mu_transition =
        o.contains("mu_transition") ? vec3(o, "mu_transition") : Eigen::Vector3d::Zero();
    s.position = vec3(o, "position");
    out.push_back(s);
  }
  return out;
}

// Everything needed to run one model.
struct Model {
  std::string type;
  std::optional<HamiltonianSource> source;
  PopulationEncoding encoding;
  StateVector psi0;
  std::uint64_t initial_index = 0;
  std::optional<FrenkelSnapshot> means;  // Frenkel models only
};

Model build_model(json& cfg, const fs::path& base, const HamiltonianTrajectory* override_traj) {
  json& m = section(cfg, "model");
  Model out;
  out.type = take<std::string>(m, "type", "frenkel");
  std::size_t qubits = 0;
  if (out.type == "frenkel" || out.type == "frenkel_trajectory") {
    std::size_t n = 0;
    if (override_traj) {
      n = override_traj->num_sites();
      out.source = HamiltonianSource::frenkel_trajectory(*override_traj);
    } else if (out.type == "frenkel") {
      out.means = snapshot_from_json(m);
      n = out.means->num_sites();
      out.source = HamiltonianSource::constant(encode_frenkel_binary(*out.means).hamiltonian);
    } else {
      const auto path = resolve_path(base, require<std::string>(m, "trajectory"));
      auto traj = read_trajectory_csv(path.string(), interpolation_from(m));
      n = traj.num_sites();
      out.source = HamiltonianSource::frenkel_trajectory(std::move(traj));
    }
    const auto site = take<std::size_t>(m, "initial_site", 1);
    if (site < 1 || site > n) throw ConfigError("initial_site out of range");
    out.encoding = PopulationEncoding::binary(n);
    out.initial_index = site - 1;
    qubits = encoded_qubit_count(n);
  } else if (out.type == "fullspace") {
    const double kappa = take<double>(m, "kappa", kDipoleKappa);
    const auto mols = molecules_from(m, base);
    out.source = HamiltonianSource::constant(build_fullspace(mols, kappa));
    const auto site = take<std::size_t>(m, "initial_site", 1);
    if (site < 1 || site > mols.size()) throw ConfigError("initial_site out of range");
    out.encoding = PopulationEncoding::fullspace(mols.size());
    out.initial_index = std::uint64_t{1} << (site - 1);
    qubits = mols.size();
  } else if (out.type == "tfi") {
    const double h = take<double>(m, "h", 0.5);
    const double J = take<double>(m, "J", 0.5);
    out.source = HamiltonianSource::constant(build_tfi(h, J), take<double>(m, "hbar", 1.0));
    // Two qubits read as four basis probabilities (p_1 = p_00).
    out.encoding = PopulationEncoding::binary(4);
    out.initial_index = take<std::uint64_t>(m, "initial_basis_index", 0);
    qubits = 2;
  } else if (out.type == "pauli") {
    std::string text;
    for (const auto& line : require<std::vector<std::string>>(m, "terms")) text += line + "\n";
    const PauliSum h = PauliSum::parse(text);
    out.source = HamiltonianSource::constant(h, take<double>(m, "hbar", kHbarEvFs));
    out.encoding = PopulationEncoding::binary(std::size_t{1} << h.num_qubits());
    out.initial_index = take<std::uint64_t>(m, "initial_basis_index", 0);
    qubits = h.num_qubits();
  } else {
    throw ConfigError("unknown model type '" + out.type + "'");
  }
  out.psi0 = StateVector::basis(qubits, out.initial_index);
  return out;
}

std::vector<double> uniform_grid(double total, double step) {
  if (!(step > 0.0) || !(total >= 0.0)) throw ConfigError("time grid needs step > 0, total >= 0");
  const auto n = static_cast<std::size_t>(std::ceil(total / step - 1e-9));
  std::vector<double> t;
  for (std::size_t k = 0; k <= n; ++k) t.push_back(k == n ? total : static_cast<double>(k) * step);
  return t;
}

PopulationSeries series_from_states(const std::vector<double>& times,
                                    const std::vector<StateVector>& states,
                                    const PopulationEncoding& enc) {
  PopulationSeries s;
  for (std::size_t i = 0; i < times.size(); ++i) s.push(times[i], site_populations(states[i], enc).p);
  return s;
}

struct Overrides {
  std::optional<std::uint64_t> seed, shots;
  std::optional<double> lambda;
};

PopulationSeries run_exact(json& cfg, const Model& model, double total) {
  json& e = section(cfg, "exact");
  ExactOptions opt;
  opt.micro_dt = take<double>(e, "micro_dt", opt.micro_dt);
  opt.tolerance = take<double>(e, "tolerance", opt.tolerance);
  const double out_dt = take<double>(e, "output_dt", 1.0);
  const auto grid = uniform_grid(total, out_dt);
  return series_from_states(grid, evolve_exact(*model.source, model.psi0, grid, opt),
                            model.encoding);
}

VqaBackend vqa_backend(json& v, const Overrides& o) {
  if (o.seed) v["seed"] = *o.seed;
  if (o.shots) v["shots"] = *o.shots;
  if (o.lambda) {
    v["lambda"] = *o.lambda;
    if (*o.lambda > 0.0) v["backend"] = "noisy";
  }
  const auto kind = take<std::string>(v, "backend", "analytic");
  const auto shots = take<std::uint64_t>(v, "shots", 0);
  const auto seed = take<std::uint64_t>(v, "seed", 0);
  const double lambda = take<double>(v, "lambda", 0.0);
  if (kind == "analytic") return VqaBackend::analytic();
  if (kind == "sampled") return VqaBackend::sampled(shots, seed);
  if (kind == "noisy") return VqaBackend::noisy(lambda, shots, seed);
  throw ConfigError("unknown VQA backend '" + kind + "'");
}

Ansatz ansatz_from(json& v, const Model& model) {
  const auto kind = take<std::string>(v, "ansatz", "hamiltonian");
  const auto layers = take<std::size_t>(v, "layers", 1);
  if (kind == "hamiltonian") {
    return make_hamiltonian_ansatz(model.source->at(0.0), layers, model.initial_index);
  }
  if (kind == "default") {
    return make_default_ansatz(model.psi0.num_qubits(), layers, model.initial_index);
  }
  if (kind == "custom") {
    return make_custom_ansatz(model.psi0.num_qubits(),
                              require<std::vector<std::string>>(v, "generators"), layers,
                              model.initial_index);
  }
  throw ConfigError("unknown ansatz '" + kind + "'");
}

VqaResult run_vqa_from(json& cfg, const Model& model, double total, const Overrides& o) {
  json& v = section(cfg, "vqa");
  VqaConfig vc;
  vc.dt = take<double>(v, "dt", 0.1);
  vc.eps = take<double>(v, "eps", vc.eps);
  vc.alpha = take<double>(v, "alpha", 1.0);
  vc.total_time = total;
  vc.backend = vqa_backend(v, o);
  const Ansatz ansatz = ansatz_from(v, model);
  return run_vqa(*model.source, ansatz, vc);
}

PopulationSeries run_trotter_from(json& cfg, const Model& model, double total,
                                  const Overrides& o) {
  json& t = section(cfg, "trotter");
  if (o.seed) t["seed"] = *o.seed;
  if (o.shots) t["shots"] = *o.shots;
  if (o.lambda) {
    t["lambda"] = *o.lambda;
    t["noisy"] = *o.lambda > 0.0;
  }
  TrotterConfig tc;
  tc.total_time = total;
  tc.dt = take<double>(t, "dt", 1.0);
  tc.noisy = take<bool>(t, "noisy", false);
  tc.lambda = take<double>(t, "lambda", 0.0);
  tc.shots = take<std::uint64_t>(t, "shots", 0);
  tc.seed = take<std::uint64_t>(t, "seed", 0);
  return run_trotter(*model.source, model.psi0, tc, model.encoding);
}

SynthesisParams synthesis_from(json& s, const FrenkelSnapshot& means) {
  SynthesisParams p;
  p.means = means;
  const std::size_t n = means.num_sites();
  const auto& e = s.contains("energy_stddev") ? s["energy_stddev"] : json(0.0);
  if (e.is_array()) {
    p.energy_stddev = e.get<std::vector<double>>();
  } else {
    p.energy_stddev.assign(n, e.get<double>());
  }
  s["energy_stddev"] = p.energy_stddev;
  const double cs = take<double>(s, "coupling_stddev", 0.0);
  p.coupling_stddev = Eigen::MatrixXd::Constant(n, n, cs);
  p.correlation_time = take<double>(s, "correlation_time", p.correlation_time);
  p.dt = take<double>(s, "dt", p.dt);
  p.duration = take<double>(s, "duration", p.duration);
  p.seed = take<std::uint64_t>(s, "seed", 0);
  return p;
}

int cmd_encode(const std::string& config, const std::string& traj_path, double time,
               std::ostream& out) {
  FrenkelSnapshot snap;
  if (!traj_path.empty()) {
    snap = interpolate(read_trajectory_csv(traj_path), time);
  } else {
    json cfg = load_json(config);
    json& m = section(cfg, "model");
    if (take<std::string>(m, "type", "frenkel") != "frenkel") {
      throw ConfigError("encode needs a frenkel model or --trajectory");
    }
    snap = snapshot_from_json(m);
  }
  const auto enc = encode_frenkel_binary(snap);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", enc.offset);
  out << "# offset_eV " << buf << '\n';
  out << "# sites " << enc.physical_sites << " padded " << enc.padded_sites << '\n';
  out << enc.hamiltonian.to_text();
  return 0;
}

int cmd_evolve(const std::string& config, const std::string& method, const std::string& out_dir,
               const Overrides& o, std::ostream& out) {
  json cfg = load_json(config);
  const fs::path base = fs::path(config).parent_path();
  const Model model = build_model(cfg, base, nullptr);
  const double total = take<double>(cfg, "total_time", 200.0);
  cfg["method"] = method;
  const fs::path dir = prepare_out_dir(out_dir);

  PopulationSeries series;
  if (method == "exact") {
    series = run_exact(cfg, model, total);
  } else if (method == "vqa") {
    const auto r = run_vqa_from(cfg, model, total, o);
    series = series_from_states(r.times, r.states, model.encoding);
    std::ofstream theta(dir / "theta.csv");
    write_theta_csv(theta, r);
  } else if (method == "trotter") {
    series = run_trotter_from(cfg, model, total, o);
  } else {
    throw ConfigError("unknown method '" + method + "' (exact, vqa, trotter)");
  }
  write_series_csv((dir / "populations.csv").string(), series);
  write_json(dir / "resolved_config.json", cfg);
  out << "wrote " << (dir / "populations.csv").string() << " (" << series.size() << " rows)\n";
  return 0;
}

int cmd_mitigate(const std::string& vqa_path, const std::string& trotter_path, double t_cutoff,
                 const std::string& range_text, const std::string& out_dir, std::ostream& out) {
  const auto vqa = read_series_csv(vqa_path);
  const auto ref = read_series_csv(trotter_path);
  AlphaRange range;
  if (!range_text.empty()) std::tie(range.lo, range.hi) = parse_range(range_text);
  const auto res = extract_alpha(vqa, ref, t_cutoff, range);
  const fs::path dir = prepare_out_dir(out_dir);
  write_series_csv((dir / "corrected.csv").string(), apply_alpha(vqa, res.alpha));
  {
    std::ofstream m(dir / "mitigation.csv");
    write_mitigation_csv(m, {res});
  }
  json resolved = {{"command", "mitigate"},
                   {"vqa", vqa_path},
                   {"trotter", trotter_path},
                   {"t_cutoff", t_cutoff},
                   {"alpha_range", {range.lo, range.hi}},
                   {"alpha", res.alpha},
                   {"objective", res.objective}};
  write_json(dir / "resolved_config.json", resolved);
  out << "alpha " << res.alpha << " objective " << res.objective << '\n';
  return 0;
}

int cmd_ensemble(const std::string& config, const std::string& out_dir, const Overrides& o,
                 std::ostream& out) {
  json cfg = load_json(config);
  const fs::path base = fs::path(config).parent_path();
  const Model probe = build_model(cfg, base, nullptr);
  if (!probe.means) throw ConfigError("ensemble needs a static frenkel model as the mean");
  const double total = take<double>(cfg, "total_time", 200.0);
  json& e = section(cfg, "ensemble");
  if (o.seed) e["base_seed"] = *o.seed;
  EnsembleSpec spec;
  spec.trajectory_count = take<std::size_t>(e, "count", 100);
  spec.base_seed = take<std::uint64_t>(e, "base_seed", 0);
  spec.threads = take<std::size_t>(e, "threads", 0);
  const auto method = take<std::string>(e, "method", "exact");
  json& s = section(e, "synthesis");
  s["duration"] = total;
  const SynthesisParams params = synthesis_from(s, *probe.means);
  section(cfg, "exact");
  section(cfg, "trotter");
  section(cfg, "vqa");
  // Resolve defaults once on the shared config; members work on copies.
  const json frozen = cfg;

  auto member = [&](std::size_t, std::uint64_t seed) {
    json local = frozen;
    SynthesisParams p = params;
    p.seed = seed;
    const auto traj = synthesize_trajectory(p);
    const Model m = build_model(local, base, &traj);
    if (method == "exact") return run_exact(local, m, total);
    if (method == "trotter") return run_trotter_from(local, m, total, {});
    if (method == "vqa") {
      const auto r = run_vqa_from(local, m, total, {});
      return series_from_states(r.times, r.states, m.encoding);
    }
    throw ConfigError("unknown ensemble method '" + method + "'");
  };
  // Fill defaults of the chosen method into the resolved config.
  if (method == "exact") {
    json& ex = cfg["exact"];
    take<double>(ex, "micro_dt", ExactOptions{}.micro_dt);
    take<double>(ex, "output_dt", 1.0);
  }
  const auto members = run_ensemble(spec, member);
  const auto mean = ensemble_average(members);
  const fs::path dir = prepare_out_dir(out_dir);
  write_series_csv((dir / "ensemble_mean.csv").string(), mean);
  write_json(dir / "resolved_config.json", cfg);
  out << "wrote " << (dir / "ensemble_mean.csv").string() << " from " << members.size()
      << " members\n";
  return 0;
}

int cmd_synth(const std::string& config, const std::string& out_dir, const Overrides& o,
              std::ostream& out) {
  json cfg = load_json(config);
  const fs::path base = fs::path(config).parent_path();
  const Model model = build_model(cfg, base, nullptr);
  if (!model.means) throw ConfigError("synth-traj needs a static frenkel model as the mean");
  json& s = section(cfg, "synthesis");
  if (o.seed) s["seed"] = *o.seed;
  const auto traj = synthesize_trajectory(synthesis_from(s, *model.means));
  const fs::path dir = prepare_out_dir(out_dir);
  write_trajectory_csv((dir / "trajectory.csv").string(), traj);
  write_json(dir / "resolved_config.json", cfg);
  out << "wrote " << (dir / "trajectory.csv").string() << " (" << traj.times.size()
      << " frames)\n";
  return 0;
}

}  // namespace

int cli_run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Digital quantum dynamics of exciton transfer", "qdyn"};
  app.require_subcommand(1);

  std::string config, method = "exact", out_dir = "out", range_text, vqa_path, trotter_path,
                      traj_path;
  double t_cutoff = 20.0;
  double time = 0.0;
  std::uint64_t seed = 0, shots = 0;
  double lambda = 0.0;

  auto* encode = app.add_subcommand("encode", "Print the encoded Pauli Hamiltonian and offset");
  encode->add_option("--config", config, "JSON config with a frenkel model");
  encode->add_option("--trajectory", traj_path, "Trajectory CSV (alternative to --config)");
  encode->add_option("--time", time, "Time (fs) within the trajectory");

  auto* evolve = app.add_subcommand("evolve", "Write a population series");
  evolve->add_option("--config", config, "JSON config")->required();
  evolve->add_option("--method", method, "exact | vqa | trotter");
  evolve->add_option("--out", out_dir, "Output directory");
  auto* ev_seed = evolve->add_option("--seed", seed, "Sampling seed");
  auto* ev_shots = evolve->add_option("--shots", shots, "Shots per circuit (0 = exact)");
  auto* ev_lambda = evolve->add_option("--lambda", lambda, "Per-gate depolarizing strength");

  auto* mitigate = app.add_subcommand("mitigate", "Fit alpha and rescale a VQA series");
  mitigate->add_option("--vqa", vqa_path, "Raw VQA series CSV")->required();
  mitigate->add_option("--trotter", trotter_path, "Reference Trotter series CSV")->required();
  mitigate->add_option("--t-cutoff", t_cutoff, "Cut-off time (fs)");
  mitigate->add_option("--alpha-range", range_text, "lo,hi");
  mitigate->add_option("--out", out_dir, "Output directory");

  auto* ensemble = app.add_subcommand("ensemble", "Average seeded runs over synthetic trajectories");
  ensemble->add_option("--config", config, "JSON config")->required();
  ensemble->add_option("--out", out_dir, "Output directory");
  auto* en_seed = ensemble->add_option("--seed", seed, "Base seed");

  auto* synth = app.add_subcommand("synth-traj", "Write a synthetic Hamiltonian trajectory");
  synth->add_option("--config", config, "JSON config")->required();
  synth->add_option("--out", out_dir, "Output directory");
  auto* sy_seed = synth->add_option("--seed", seed, "Seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  try {
    if (encode->parsed()) {
      if (config.empty() == traj_path.empty()) {
        throw ConfigError("encode needs exactly one of --config or --trajectory");
      }
      return cmd_encode(config, traj_path, time, out);
    }
    if (evolve->parsed()) {
      Overrides o;
      if (*ev_seed) o.seed = seed;
      if (*ev_shots) o.shots = shots;
      if (*ev_lambda) o.lambda = lambda;
      return cmd_evolve(config, method, out_dir, o, out);
    }
    if (mitigate->parsed()) {
      return cmd_mitigate(vqa_path, trotter_path, t_cutoff, range_text, out_dir, out);
    }
    if (ensemble->parsed()) {
      Overrides o;
      if (*en_seed) o.seed = seed;
      return cmd_ensemble(config, out_dir, o, out);
    }
    if (synth->parsed()) {
      Overrides o;
      if (*sy_seed) o.seed = seed;
      return cmd_synth(config, out_dir, o, out);
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return 1;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return 2;
  } catch (const json::exception& e) {
    err << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

int cli_run(int argc, const char* const* argv) { return cli_run(argc, argv, std::cout, std::cerr); }

}  // namespace qdyn::cli
