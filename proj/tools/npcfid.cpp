// Copyright 2026 The npcfid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// npcfid command-line front end.
//
// Exit codes: 0 success, 1 parse/schema/argument error, 2 validation issues,
// 3 internal error, 4 circuit exceeds the oracle cap.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "npcfid/npcfid.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace npcfid;

namespace {

constexpr int kExitParse = 1;
constexpr int kExitValidation = 2;
constexpr int kExitInternal = 3;
constexpr int kExitTooLarge = 4;

// Raised for failures already reported to stderr.
struct Exit {
  int code;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot read " << path << "\n";
    throw Exit{kExitParse};
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CompiledCircuit load_circuit(const std::string& path) {
  const std::string text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  const bool is_json = fs::path(path).extension() == ".json" || (first != std::string::npos && text[first] == '{');
  return is_json ? parse_json_ir(text) : parse_qasm(text);
}

Calibration load_cal(const std::string& path) {
  LoadReport report;
  Calibration cal = load_calibration(read_file(path), &report);
  for (const std::string& w : report.warnings) std::cerr << "warning: " << w << "\n";
  return cal;
}

std::optional<SwapTemplate> load_template(const std::string& path) {
  if (path.empty()) return std::nullopt;
  return SwapTemplate::parse(read_file(path));
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << out_path << "\n";
    throw Exit{kExitParse};
  }
  out << text;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << path.string() << "\n";
    throw Exit{kExitParse};
  }
  out << text;
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void require_valid(const CompiledCircuit& c, const Calibration& cal, const SwapTemplate& tmpl,
                   const std::string& label) {
  const auto issues = validate_against(c, cal, tmpl);
  if (issues.empty()) return;
  for (const auto& i : issues) std::cerr << label << ": " << i.to_string() << "\n";
  throw Exit{kExitValidation};
}

std::size_t resolve_cap(std::optional<std::size_t> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("NPCFID_ORACLE_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0) {
      std::cerr << "error: NPCFID_ORACLE_CAP must be a positive integer\n";
      throw Exit{kExitParse};
    }
    return static_cast<std::size_t>(v);
  }
  return kDefaultOracleCap;
}

json rho_json(const std::optional<double>& rho) { return rho ? json(*rho) : json(nullptr); }

// ---------------------------------------------------------------------------

struct Common {
  std::string circuit;
  std::string cal;
  std::string scope = "all";
  std::string format = "json";
  std::string out;
  std::string swap_template;
  std::optional<std::size_t> oracle_cap;
  std::uint64_t seed = 0;
};

QubitScope to_scope(const std::string& s) { return s == "measured" ? QubitScope::kMeasured : QubitScope::kAll; }

int cmd_eval(const Common& o) {
  const CompiledCircuit c = load_circuit(o.circuit);
  const Calibration cal = load_cal(o.cal);
  const auto tmpl = load_template(o.swap_template);
  const SwapTemplate& t = tmpl ? *tmpl : SwapTemplate::default_template();
  require_valid(c, cal, t, o.circuit);
  const ProxyFidelityReport r = evaluate(c, cal, {to_scope(o.scope), &t});
  emit(o.format == "csv" ? report_to_csv(r) : report_to_json(r).dump(2) + "\n", o.out);
  return 0;
}

int cmd_rank(const Common& o, bool oracle) {
  std::vector<fs::path> files;
  const fs::path dir(o.circuit);
  if (!fs::is_directory(dir)) {
    std::cerr << "error: " << o.circuit << " is not a directory\n";
    throw Exit{kExitParse};
  }
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto ext = entry.path().extension();
    if (entry.is_regular_file() && (ext == ".qasm" || ext == ".json")) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    std::cerr << "error: no .qasm or .json circuits in " << o.circuit << "\n";
    throw Exit{kExitParse};
  }
  const Calibration cal = load_cal(o.cal);
  const auto tmpl = load_template(o.swap_template);
  const SwapTemplate& t = tmpl ? *tmpl : SwapTemplate::default_template();

  std::vector<CompiledCircuit> impls;
  std::vector<std::string> ids;
  for (const fs::path& f : files) {
    impls.push_back(load_circuit(f.string()));
    ids.push_back(f.filename().string());
    require_valid(impls.back(), cal, t, ids.back());
  }
  RankOptions opts;
  opts.oracle = oracle;
  opts.oracle_options = {resolve_cap(o.oracle_cap), &t};
  opts.eval_options = {to_scope(o.scope), &t};
  const RankingResult r = rank_layouts(impls, cal, opts, ids);

  std::vector<std::string> flags;
  if (impls.size() < 2) flags.push_back("single_implementation");
  for (const auto& [m, rho] : r.rho_vs_reference) {
    if (!rho) flags.push_back(std::string("rho_undefined:") + metric_name(m));
  }

  if (o.format == "csv") {
    std::string out = "circuit_id,metric,value,rank,higher_is_better\n";
    for (std::size_t i = 0; i < ids.size(); ++i) {
      for (MetricId m : r.metrics) {
        out += ids[i] + "," + metric_name(m) + "," + num(r.values.at(m)[i]) + "," +
               std::to_string(r.ranks.at(m)[i]) + "," + (higher_is_better(m) ? "1" : "0") + "\n";
      }
    }
    if (oracle) {
      out += "\nmetric,rho_vs_state_fidelity\n";
      for (const auto& [m, rho] : r.rho_vs_reference) out += std::string(metric_name(m)) + "," + (rho ? num(*rho) : "") + "\n";
    }
    emit(out, o.out);
    return 0;
  }
  json doc;
  doc["circuit_ids"] = ids;
  json metrics = json::object();
  for (MetricId m : r.metrics) {
    metrics[metric_name(m)] = {{"values", r.values.at(m)}, {"ranks", r.ranks.at(m)},
                               {"higher_is_better", higher_is_better(m)}};
  }
  doc["metrics"] = metrics;
  if (oracle) {
    json rho = json::object();
    for (const auto& [m, v] : r.rho_vs_reference) rho[metric_name(m)] = rho_json(v);
    doc["rho_vs_state_fidelity"] = rho;
  }
  doc["flags"] = flags;
  emit(doc.dump(2) + "\n", o.out);
  return 0;
}

int cmd_compare(const Common& o) {
  const CompiledCircuit c = load_circuit(o.circuit);
  const Calibration cal = load_cal(o.cal);
  const auto tmpl = load_template(o.swap_template);
  const SwapTemplate& t = tmpl ? *tmpl : SwapTemplate::default_template();
  require_valid(c, cal, t, o.circuit);
  const ProxyFidelityReport r = evaluate(c, cal, {to_scope(o.scope), &t});
  const OracleComparison cmp = compare_with_oracle(c, cal, {resolve_cap(o.oracle_cap), &t});

  // Per-qubit comparison applies when the ideal output is a basis state.
  bool basis = cmp.ideal.state.purity() > 1.0 - 1e-9;
  if (basis) {
    const auto& d = cmp.ideal.state.data();
    double max_diag = 0.0;
    for (Eigen::Index i = 0; i < d.rows(); ++i) max_diag = std::max(max_diag, d(i, i).real());
    basis = max_diag > 1.0 - 1e-9;
  }
  std::vector<double> overlaps;
  if (basis) overlaps = qubit_overlaps(cmp.ideal, cmp.noisy);

  if (o.format == "csv") {
    std::string out = "quantity,estimated,actual,abs_diff\n";
    out += "circuit," + num(r.circuit) + "," + num(cmp.state_fidelity) + "," +
           num(std::abs(r.circuit - cmp.state_fidelity)) + "\n";
    for (std::size_t l = 0; l < overlaps.size(); ++l) {
      out += "qubit" + std::to_string(l) + "," + num(r.per_qubit[l]) + "," + num(overlaps[l]) + "," +
             num(std::abs(r.per_qubit[l] - overlaps[l])) + "\n";
    }
    emit(out, o.out);
    return 0;
  }
  json doc = {{"proxy_fidelity", r.circuit},
              {"state_fidelity", cmp.state_fidelity},
              {"abs_diff", std::abs(r.circuit - cmp.state_fidelity)}};
  if (cmp.success_prob) doc["success_prob"] = *cmp.success_prob;
  if (cmp.dist_similarity) doc["dist_similarity"] = *cmp.dist_similarity;
  if (basis) {
    json per = json::array();
    for (std::size_t l = 0; l < overlaps.size(); ++l) {
      per.push_back({{"logical", l},
                     {"proxy_fidelity", r.per_qubit[l]},
                     {"actual", overlaps[l]},
                     {"abs_diff", std::abs(r.per_qubit[l] - overlaps[l])}});
    }
    doc["per_qubit"] = per;
  }
  emit(doc.dump(2) + "\n", o.out);
  return 0;
}

std::string fig5_csv(const std::vector<double>& thetas, SweepChannel ch, const SweepOptions& opts) {
  std::string out = "theta,param,negativity,proxy_fidelity\n";
  for (double theta : thetas) {
    for (const SweepRow& row : fig5_sweep(theta, ch, opts)) {
      out += num(row.theta) + "," + num(row.param) + "," + num(row.negativity) + "," + num(row.proxy_fidelity) + "\n";
    }
  }
  return out;
}

int cmd_fig5(const std::string& channel, const std::vector<double>& thetas, const SweepOptions& opts,
             const std::string& out) {
  SweepChannel ch;
  if (channel == "depolarizing") {
    ch = SweepChannel::kDepolarizing;
  } else if (channel == "thermal") {
    ch = SweepChannel::kThermal;
  } else {
    std::cerr << "error: unknown channel '" << channel << "' (expected depolarizing or thermal)\n";
    return kExitParse;
  }
  emit(fig5_csv(thetas, ch, opts), out);
  return 0;
}

std::string accuracy_csv_rows(const std::string& family, const AccuracyExperiment& e) {
  std::string out;
  for (const AccuracyRow& r : e.rows) {
    out += family + "," + r.id + "," + std::to_string(r.qubits) + "," + std::to_string(r.depth) + "," +
           num(r.estimated) + "," + num(r.actual) + "\n";
  }
  return out;
}

json accuracy_json(const AccuracyExperiment& e) {
  return {{"n", e.rows.size()}, {"aad", e.stats.aad}, {"r2", e.stats.r2 ? json(*e.stats.r2) : json(nullptr)}};
}

int cmd_experiments(const std::string& out_dir, std::uint64_t seed, bool quick) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    std::cerr << "error: cannot create " << out_dir << "\n";
    return kExitParse;
  }
  const fs::path dir(out_dir);
  json summary;
  summary["seed"] = seed;

  const std::vector<double> thetas{std::numbers::pi / 8, std::numbers::pi / 4, std::numbers::pi / 2};
  {
    std::string out = "channel,theta,param,negativity,proxy_fidelity\n";
    for (auto [name, ch] : {std::pair{"depolarizing", SweepChannel::kDepolarizing},
                            std::pair{"thermal", SweepChannel::kThermal}}) {
      std::istringstream rows(fig5_csv(thetas, ch, {}));
      std::string line;
      std::getline(rows, line);
      while (std::getline(rows, line)) out += std::string(name) + "," + line + "\n";
    }
    write_file(dir / "fig5.csv", out);
  }
  {
    DeviceSpec dev;
    dev.num_qubits = 2;
    dev.seed = seed;
    std::vector<std::size_t> layers;
    for (std::size_t k = 1; k <= (quick ? 21u : 121u); k += 10) layers.push_back(k);
    const auto rows = id_layer_sweep(layers, seed, dev);
    std::string out = "layers,qubit,estimated,actual\n";
    std::vector<std::pair<double, double>> pairs;
    for (const IdLayerRow& r : rows) {
      out += std::to_string(r.layers) + "," + std::to_string(r.qubit) + "," + num(r.estimated) + "," + num(r.actual) + "\n";
      pairs.emplace_back(r.estimated, r.actual);
    }
    write_file(dir / "fig6b.csv", out);
    const AccuracyResult acc = aad_r2(pairs);
    summary["fig6b"] = {{"n", pairs.size()}, {"aad", acc.aad}, {"r2", acc.r2 ? json(*acc.r2) : json(nullptr)}};
  }
  {
    AccuracyConfig cfg;
    cfg.seed = seed;
    cfg.device.seed = seed;
    AccuracyConfig rnd = cfg, bv = cfg, ghz = cfg;
    rnd.circuits = quick ? 6 : 60;
    if (quick) rnd.max_qubits = 5;
    bv.circuits = quick ? 4 : 30;
    if (quick) bv.max_qubits = 5;
    ghz.circuits = quick ? 4 : 10;
    if (quick) ghz.max_qubits = 5;
    const auto er = random_circuit_accuracy(rnd);
    const auto eb = bv_accuracy(bv);
    const auto eg = ghz_accuracy(ghz);
    write_file(dir / "fig7.csv", "family,circuit_id,qubits,depth,estimated,actual\n" + accuracy_csv_rows("random", er) +
                                     accuracy_csv_rows("bv", eb) + accuracy_csv_rows("ghz", eg));
    summary["fig7"] = {{"random", accuracy_json(er)}, {"bv", accuracy_json(eb)}, {"ghz", accuracy_json(eg)}};
  }
  {
    std::string out = "repetition,circuit,metric,rho\n";
    json reps = json::array();
    const std::size_t repetitions = quick ? 2 : 10;
    std::size_t proxy_wins = 0;
    for (std::size_t rep = 0; rep < repetitions; ++rep) {
      RankingExperimentConfig cfg;
      cfg.seed = seed + rep;
      if (quick) cfg.circuits = 2, cfg.layouts = 4;
      const RankingExperiment e = ranking_experiment(cfg);
      for (std::size_t i = 0; i < e.per_circuit.size(); ++i) {
        for (const auto& [m, rho] : e.per_circuit[i].rho_vs_reference) {
          out += std::to_string(rep) + "," + std::to_string(i) + "," + metric_name(m) + "," + (rho ? num(*rho) : "") + "\n";
        }
      }
      json means = json::object();
      for (const auto& [m, v] : e.mean_rho) means[metric_name(m)] = v;
      reps.push_back(means);
      const double p = e.mean_rho.at(MetricId::kProxyFidelity);
      if (p >= e.mean_rho.at(MetricId::kEsp) && p >= e.mean_rho.at(MetricId::kDepth)) ++proxy_wins;
    }
    write_file(dir / "fig8.csv", out);
    summary["fig8"] = {{"mean_rho_per_repetition", reps}, {"proxy_wins_or_ties", proxy_wins}, {"repetitions", repetitions}};
  }
  write_file(dir / "summary.json", summary.dump(2) + "\n");
  return 0;
}

int run_guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const Exit& e) {
    return e.code;
  } catch (const TooLarge& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitTooLarge;
  } catch (const MissingGateCal& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const MissingReadoutCal& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const SyntaxError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const UnknownGate& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const IndexOutOfRange& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ValueError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

void add_common(CLI::App* cmd, Common& o, bool circuit_is_dir = false) {
  cmd->add_option(circuit_is_dir ? "dir" : "circuit", o.circuit,
                  circuit_is_dir ? "Directory of .qasm/.json circuits" : "Circuit file (.qasm or JSON IR)")
      ->required();
  cmd->add_option("calibration", o.cal, "Calibration JSON")->required();
  cmd->add_option("--scope", o.scope, "Qubits in the circuit-level product")
      ->check(CLI::IsMember({"all", "measured"}));
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", o.out, "Write output to this path instead of stdout");
  cmd->add_option("--swap-template", o.swap_template, "JSON SWAP decomposition template");
  cmd->add_option("--seed", o.seed, "Random seed (unused by deterministic commands)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Static reliability analysis of compiled noisy quantum circuits"};
  app.require_subcommand(1);

  Common eval_opts;
  auto* eval = app.add_subcommand("eval", "Proxy fidelity report for one circuit");
  add_common(eval, eval_opts);

  Common rank_opts;
  bool rank_oracle = false;
  auto* rank = app.add_subcommand("rank", "Rank circuit implementations by every metric");
  add_common(rank, rank_opts, true);
  rank->add_flag("--oracle", rank_oracle, "Also compute oracle metrics and rank correlations");
  rank->add_option("--oracle-cap", rank_opts.oracle_cap, "Largest circuit the oracle simulates")
      ->check(CLI::PositiveNumber);

  Common cmp_opts;
  auto* cmp = app.add_subcommand("compare-oracle", "Proxy fidelity against density-matrix simulation");
  add_common(cmp, cmp_opts);
  cmp->add_option("--oracle-cap", cmp_opts.oracle_cap, "Largest circuit the oracle simulates")
      ->check(CLI::PositiveNumber);

  std::string channel;
  std::vector<double> thetas{std::numbers::pi / 8, std::numbers::pi / 4, std::numbers::pi / 2};
  SweepOptions sweep;
  std::string fig5_out;
  auto* fig5 = app.add_subcommand("fig5", "Negativity and proxy fidelity under a swept channel");
  fig5->add_option("--channel", channel, "depolarizing or thermal")->required();
  fig5->add_option("--theta", thetas, "Preparation angles in radians");
  fig5->add_option("--steps", sweep.steps, "Grid points per angle")->check(CLI::Range(2, 1000000));
  fig5->add_option("--t1", sweep.t1_us, "T1 in microseconds for the thermal sweep")->check(CLI::PositiveNumber);
  fig5->add_option("--t2", sweep.t2_us, "T2 in microseconds for the thermal sweep")->check(CLI::PositiveNumber);
  fig5->add_option("--out", fig5_out, "Write CSV to this path instead of stdout");

  std::string exp_out = "experiments_out";
  std::uint64_t exp_seed = 0;
  bool exp_quick = false;
  auto* exp = app.add_subcommand("experiments", "Run every desk-scale experiment and write CSV tables");
  exp->add_option("--out", exp_out, "Output directory");
  exp->add_option("--seed", exp_seed, "Base seed");
  exp->add_flag("--quick", exp_quick, "Reduced sizes for smoke testing");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  if (*eval) return run_guarded([&] { return cmd_eval(eval_opts); });
  if (*rank) return run_guarded([&] { return cmd_rank(rank_opts, rank_oracle); });
  if (*cmp) return run_guarded([&] { return cmd_compare(cmp_opts); });
  if (*fig5) return run_guarded([&] { return cmd_fig5(channel, thetas, sweep, fig5_out); });
  if (*exp) return run_guarded([&] { return cmd_experiments(exp_out, exp_seed, exp_quick); });
  return kExitParse;
}
