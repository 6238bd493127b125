// Copyright 2026 The qi-roclab Authors
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

#include "qi_roclab/cli.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "qi_roclab/baselines.hpp"
#include "qi_roclab/opa.hpp"
#include "qi_roclab/parallel.hpp"
#include "qi_roclab/qcb.hpp"

namespace qi {

namespace {

const std::vector<std::string> kCommands{"roc", "qcb-sweep", "opa-optimize", "error-prob"};
const std::vector<std::string> kReceivers{"ffsfg", "opa", "ci-homodyne", "coherent-np", "chance"};

// Keys accepted from flags, config files and replay headers.
const std::vector<std::string> kKeys{
    "M",         "Ns",          "kappa",       "Nb",       "signal-variance", "receivers", "pf-points",
    "pf-min",    "pf-max",      "pf-spacing",  "zeta-points", "zeta-min",     "zeta-max",  "zeta-spacing",
    "ns-points", "ns-min",      "ns-max",      "ns-spacing", "nb-list",       "K",         "eta",
    "nth",       "trials",      "seed",        "nulling",  "slicing",         "prior1",    "opa-bracket",
    "objective", "target-pf",   "opa-per-point", "format", "out",             "parallelism"};

const std::map<std::string, std::string> kHelp{
    {"M", "modes per detection (accepts 10^x)"},
    {"Ns", "mean signal photons per mode"},
    {"kappa", "target reflectivity"},
    {"Nb", "mean background photons per mode"},
    {"signal-variance", "approximate | exact"},
    {"receivers", "comma list of ffsfg, opa, ci-homodyne, coherent-np, chance"},
    {"pf-points", "P_F grid size"},
    {"pf-min", "smallest P_F"},
    {"pf-max", "largest P_F"},
    {"pf-spacing", "log | linear"},
    {"zeta-points", "FF-SFG zeta grid size"},
    {"zeta-min", "smallest zeta"},
    {"zeta-max", "largest zeta"},
    {"zeta-spacing", "log | linear"},
    {"ns-points", "qcb-sweep N_S grid size"},
    {"ns-min", "smallest N_S"},
    {"ns-max", "largest N_S"},
    {"ns-spacing", "log | linear"},
    {"nb-list", "qcb-sweep N_B values, comma separated"},
    {"K", "FF-SFG feedforward cycles"},
    {"eta", "FF-SFG tap transmissivity"},
    {"nth", "FF-SFG background counts per cycle"},
    {"trials", "Monte Carlo trials per hypothesis per point"},
    {"seed", "Monte Carlo seed"},
    {"nulling", "locally-optimal | exact"},
    {"slicing", "equal | geometric"},
    {"prior1", "prior probability of target presence"},
    {"opa-bracket", "OPA gain search over (1, 1 + bracket]"},
    {"objective", "error-prob | pd-at-pf"},
    {"target-pf", "P_F for the pd-at-pf objective"},
    {"format", "csv | json"},
    {"out", "output directory (roc) or file (others; default stdout)"},
    {"parallelism", "worker threads (default QI_ROCLAB_THREADS or all cores)"},
};

const std::map<std::string, std::string, std::less<>> kAliases{
    {"N_S", "Ns"}, {"N_B", "Nb"}, {"signal_variance", "signal-variance"}, {"n_th", "nth"}};

bool contains(const std::vector<std::string>& list, std::string_view x) {
  return std::find(list.begin(), list.end(), x) != list.end();
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ",") + s;
  return out;
}

double to_double(const std::string& key, const std::string& value) {
  try {
    return parse_double(value);
  } catch (const DomainError&) {
    throw ConfigError(key, "expected a number, got '" + value + "'");
  }
}

template <typename Int>
Int to_integer(const std::string& key, const std::string& value) {
  Int x{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), x);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError(key, "expected an integer, got '" + value + "'");
  }
  return x;
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError(key, "expected true or false, got '" + value + "'");
}

bool to_spacing(const std::string& key, const std::string& value) {
  if (value == "log") return true;
  if (value == "linear") return false;
  throw ConfigError(key, "expected 'log' or 'linear', got '" + value + "'");
}

void check_grid(const std::string& prefix, const GridSpec& g) {
  if (g.points < 1) throw ConfigError(prefix + "-points", "must be >= 1");
  if (!(g.min <= g.max)) throw ConfigError(prefix + "-max", "must be >= " + prefix + "-min");
  if (g.log && !(g.min > 0)) throw ConfigError(prefix + "-min", "must be > 0 for log spacing");
}

void check_receivers(const RunConfig& c) {
  if (c.receivers.empty()) throw ConfigError("receivers", "at least one receiver is required");
  for (const auto& r : c.receivers) {
    if (!contains(kReceivers, r)) throw ConfigError("receivers", "unknown receiver '" + r + "'");
  }
  const bool needs_amplitude = contains(c.receivers, "ffsfg") || contains(c.receivers, "coherent-np");
  if (needs_amplitude && !(c.params.N_B > 0)) {
    throw ConfigError("Nb", "ffsfg and coherent-np need N_B > 0");
  }
  if (contains(c.receivers, "ffsfg")) {
    try {
      c.ffsfg.validate();
    } catch (const DomainError& e) {
      throw ConfigError("ffsfg", e.what());
    }
  }
}

Priors priors_of(const RunConfig& c) { return {1 - c.prior1, c.prior1}; }

OpaObjective objective_of(const RunConfig& c) {
  return c.objective == "pd-at-pf" ? OpaObjective::detection_at(c.target_pf)
                                   : OpaObjective::error_probability(priors_of(c));
}

GainSearch search_of(const RunConfig& c) {
  GainSearch s;
  s.bracket = c.opa_bracket;
  return s;
}

}  // namespace

std::vector<double> GridSpec::values() const {
  return log ? log_grid(min, max, points) : linear_grid(min, max, points);
}

void RunConfig::set(std::string_view raw_key, const std::string& raw_value) {
  std::string key(raw_key);
  if (const auto it = kAliases.find(key); it != kAliases.end()) key = it->second;
  const std::string value = trim(raw_value);
  if (key == "command") {
    if (!contains(kCommands, value)) throw ConfigError(key, "unknown command '" + value + "'");
    command = value;
  } else if (key == "M") {
    params.M = to_double(key, value);
  } else if (key == "Ns") {
    params.N_S = to_double(key, value);
  } else if (key == "kappa") {
    params.kappa = to_double(key, value);
  } else if (key == "Nb") {
    params.N_B = to_double(key, value);
  } else if (key == "signal-variance") {
    if (value == "exact") params.signal_variance = SignalVariance::exact;
    else if (value == "approximate") params.signal_variance = SignalVariance::approximate;
    else throw ConfigError(key, "expected 'approximate' or 'exact'");
  } else if (key == "receivers") {
    receivers = split_list(value);
  } else if (key == "pf-points") {
    pf.points = to_integer<int>(key, value);
  } else if (key == "pf-min") {
    pf.min = to_double(key, value);
  } else if (key == "pf-max") {
    pf.max = to_double(key, value);
  } else if (key == "pf-spacing") {
    pf.log = to_spacing(key, value);
  } else if (key == "zeta-points") {
    zeta.points = to_integer<int>(key, value);
  } else if (key == "zeta-min") {
    zeta.min = to_double(key, value);
  } else if (key == "zeta-max") {
    zeta.max = to_double(key, value);
  } else if (key == "zeta-spacing") {
    zeta.log = to_spacing(key, value);
  } else if (key == "ns-points") {
    ns.points = to_integer<int>(key, value);
  } else if (key == "ns-min") {
    ns.min = to_double(key, value);
  } else if (key == "ns-max") {
    ns.max = to_double(key, value);
  } else if (key == "ns-spacing") {
    ns.log = to_spacing(key, value);
  } else if (key == "nb-list") {
    nb_list.clear();
    for (const auto& item : split_list(value)) nb_list.push_back(to_double(key, item));
  } else if (key == "K") {
    ffsfg.K = to_integer<int>(key, value);
  } else if (key == "eta") {
    ffsfg.eta = to_double(key, value);
  } else if (key == "nth") {
    ffsfg.n_th = to_double(key, value);
  } else if (key == "trials") {
    ffsfg.trials = to_integer<std::uint64_t>(key, value);
  } else if (key == "seed") {
    ffsfg.seed = to_integer<std::uint64_t>(key, value);
  } else if (key == "nulling") {
    try {
      ffsfg.nulling = parse_nulling(value);
    } catch (const DomainError& e) {
      throw ConfigError(key, e.what());
    }
  } else if (key == "slicing") {
    try {
      ffsfg.slicing = parse_slicing(value);
    } catch (const DomainError& e) {
      throw ConfigError(key, e.what());
    }
  } else if (key == "prior1") {
    prior1 = to_double(key, value);
  } else if (key == "opa-bracket") {
    opa_bracket = to_double(key, value);
  } else if (key == "objective") {
    if (value != "error-prob" && value != "pd-at-pf") throw ConfigError(key, "expected 'error-prob' or 'pd-at-pf'");
    objective = value;
  } else if (key == "target-pf") {
    target_pf = to_double(key, value);
  } else if (key == "opa-per-point") {
    opa_per_point = to_bool(key, value);
  } else if (key == "format") {
    if (value != "csv" && value != "json") throw ConfigError(key, "expected 'csv' or 'json'");
    format = value;
  } else if (key == "out") {
    out = value;
  } else if (key == "parallelism") {
    parallelism = to_integer<unsigned>(key, value);
    if (parallelism < 1) throw ConfigError(key, "must be >= 1");
  } else {
    throw ConfigError(key, "unknown key");
  }
}

void RunConfig::validate() const {
  if (!contains(kCommands, command)) throw ConfigError("command", "unknown command '" + command + "'");
  try {
    params.validate();
  } catch (const DomainError& e) {
    throw ConfigError("scenario", e.what());
  }
  if (command == "roc") {
    check_receivers(*this);
    check_grid("pf", pf);
    if (!(pf.min > 0 && pf.max < 1)) throw ConfigError("pf-min", "P_F grid must lie in (0, 1)");
    if (contains(receivers, "ffsfg")) {
      check_grid("zeta", zeta);
      if (!(zeta.min > 0)) throw ConfigError("zeta-min", "must be > 0");
    }
  } else if (command == "qcb-sweep") {
    if (!(params.kappa > 0)) throw ConfigError("kappa", "qcb-sweep needs kappa > 0 (the ratio is undefined)");
    check_grid("ns", ns);
    if (!(ns.min > 0)) throw ConfigError("ns-min", "must be > 0");
    if (nb_list.empty()) throw ConfigError("nb-list", "must not be empty");
    for (double nb : nb_list) {
      if (!(nb > 0) || !std::isfinite(nb)) throw ConfigError("nb-list", "values must be finite and > 0");
    }
  } else if (command == "error-prob") {
    check_receivers(*this);
  }
  if (!(prior1 > 0 && prior1 < 1)) throw ConfigError("prior1", "must lie in (0, 1)");
  if (!(opa_bracket > 0) || !std::isfinite(opa_bracket)) throw ConfigError("opa-bracket", "must be finite and > 0");
  if (!(target_pf > 0 && target_pf < 1)) throw ConfigError("target-pf", "must lie in (0, 1)");
}

Settings RunConfig::settings() const {
  Settings s{{"command", command},
             {"M", format_double(params.M)},
             {"Ns", format_double(params.N_S)},
             {"kappa", format_double(params.kappa)},
             {"Nb", format_double(params.N_B)},
             {"signal-variance", params.signal_variance == SignalVariance::exact ? "exact" : "approximate"}};
  auto grid = [&](const std::string& prefix, const GridSpec& g) {
    s.emplace_back(prefix + "-points", std::to_string(g.points));
    s.emplace_back(prefix + "-min", format_double(g.min));
    s.emplace_back(prefix + "-max", format_double(g.max));
    s.emplace_back(prefix + "-spacing", g.log ? "log" : "linear");
  };
  auto ffsfg_keys = [&] {
    s.emplace_back("K", std::to_string(ffsfg.K));
    s.emplace_back("eta", format_double(ffsfg.eta));
    s.emplace_back("nth", format_double(ffsfg.n_th));
    s.emplace_back("trials", std::to_string(ffsfg.trials));
    s.emplace_back("seed", std::to_string(ffsfg.seed));
    s.emplace_back("nulling", std::string(to_string(ffsfg.nulling)));
    s.emplace_back("slicing", std::string(to_string(ffsfg.slicing)));
  };
  auto opa_keys = [&] {
    s.emplace_back("opa-bracket", format_double(opa_bracket));
    s.emplace_back("objective", objective);
    s.emplace_back("target-pf", format_double(target_pf));
  };
  const bool with_ffsfg = contains(receivers, "ffsfg");
  const bool with_opa = contains(receivers, "opa");
  if (command == "roc") {
    s.emplace_back("receivers", join(receivers));
    grid("pf", pf);
    if (with_ffsfg) grid("zeta", zeta), ffsfg_keys();
    if (with_opa) opa_keys(), s.emplace_back("opa-per-point", opa_per_point ? "true" : "false");
    if (with_opa) s.emplace_back("prior1", format_double(prior1));
  } else if (command == "qcb-sweep") {
    grid("ns", ns);
    std::vector<std::string> nb;
    for (double x : nb_list) nb.push_back(format_double(x));
    s.emplace_back("nb-list", join(nb));
  } else if (command == "opa-optimize") {
    opa_keys();
    s.emplace_back("prior1", format_double(prior1));
  } else if (command == "error-prob") {
    s.emplace_back("receivers", join(receivers));
    s.emplace_back("prior1", format_double(prior1));
    if (with_ffsfg) ffsfg_keys();
    if (with_opa) s.emplace_back("opa-bracket", format_double(opa_bracket));
  }
  if (command == "roc" || command == "qcb-sweep") s.emplace_back("format", format);
  return s;
}

void apply_config_file(RunConfig& config, std::istream& in) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config", "line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key == "command") {
      if (trim(line.substr(eq + 1)) != config.command) throw ConfigError(key, "does not match the subcommand");
      continue;
    }
    config.set(key, line.substr(eq + 1));
  }
}

namespace {

struct Output {
  std::ostream& stream;
  std::ofstream file;

  Output(const RunConfig& c, std::ostream& fallback) : stream(c.out.empty() ? fallback : file) {
    if (!c.out.empty()) {
      file.open(c.out, std::ios::binary);
      if (!file) throw StateError("cannot open output file '" + c.out + "'");
    }
  }
};

RocCurve roc_for(const std::string& receiver, const RunConfig& c, std::span<const double> grid, unsigned threads) {
  RocCurve curve;
  if (receiver == "ffsfg") {
    const auto zeta = c.zeta.values();
    curve = estimate_roc(zeta, c.ffsfg, c.params, threads);
    if (const auto msg = check_monte_carlo_roc(curve); !msg.empty()) curve.metadata.warnings.push_back(msg);
    return curve;
  }
  if (receiver == "opa") {
    if (c.opa_per_point) {
      curve = opa_roc_per_point(c.params, grid, search_of(c));
      curve.metadata.generation.emplace_back("gain", "per-point");
    } else {
      const GainOptimum opt = opa_optimize_gain(c.params, objective_of(c), search_of(c));
      curve = opa_roc(c.params, opt.gain, grid);
      curve.metadata.generation.emplace_back("G", format_double(opt.gain));
      if (opt.degenerate) curve.metadata.warnings.push_back("degenerate: no cross correlation, gain is arbitrary");
      if (opt.best_found()) curve.metadata.warnings.push_back("best-found: gain optimum not bracketed");
    }
  } else if (receiver == "ci-homodyne") {
    curve = homodyne_roc(c.params, grid);
  } else if (receiver == "coherent-np") {
    const double alpha = effective_amplitude(c.params);
    curve = coherent_np_roc(alpha * alpha, grid);
  } else {
    curve = chance_line(grid);
  }
  curve.metadata.receiver = receiver;
  curve.metadata.params = c.params;
  if (const auto msg = check_analytic_roc(curve); !msg.empty()) throw ModelError(receiver + " ROC: " + msg);
  return curve;
}

int cmd_roc(const RunConfig& c, std::ostream& out, unsigned threads) {
  const auto grid = c.pf.values();
  std::vector<RocCurve> curves;
  for (const auto& r : c.receivers) curves.push_back(roc_for(r, c, grid, threads));

  const std::filesystem::path dir = c.out.empty() ? std::filesystem::path(".") : std::filesystem::path(c.out);
  std::filesystem::create_directories(dir);
  const Settings settings = c.settings();
  auto write = [&](const std::string& name, auto&& body) {
    const auto path = dir / (name + "." + c.format);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw StateError("cannot open output file '" + path.string() + "'");
    body(f);
    if (!f) throw StateError("failed writing '" + path.string() + "'");
    out << path.string() << '\n';
  };
  for (const RocCurve& curve : curves) {
    write("roc_" + curve.metadata.receiver, [&](std::ostream& f) {
      if (c.format == "json") f << roc_to_json(curve, settings).dump(2) << '\n';
      else write_roc_csv(f, curve, settings);
    });
  }
  write("roc_comparison", [&](std::ostream& f) {
    if (c.format == "json") f << comparison_to_json(curves, settings).dump(2) << '\n';
    else write_comparison_csv(f, curves, settings);
  });
  return kExitOk;
}

int cmd_qcb_sweep(const RunConfig& c, std::ostream& out, unsigned threads) {
  const auto ns = c.ns.values();
  const auto rows = qcb_normalization_sweep(ns, c.nb_list, c.params.kappa, threads);
  Output o(c, out);
  if (c.format == "json") o.stream << qcb_sweep_to_json(rows, c.settings()).dump(2) << '\n';
  else write_qcb_sweep_csv(o.stream, rows, c.settings());
  return kExitOk;
}

int cmd_opa_optimize(const RunConfig& c, std::ostream& out) {
  const GainOptimum opt = opa_optimize_gain(c.params, objective_of(c), search_of(c));
  const double qcb = qcb_exponent(c.params).exponent;
  Json j;
  j["metadata"] = {{"settings", settings_to_json(c.settings())}};
  j["G_opt"] = opt.gain;
  j["objective"] = c.objective;
  j["objective_value"] = opt.objective;
  const double exponent = opt.degenerate ? 0.0 : opa_error_exponent(c.params, opt.gain);
  j["exponent"] = exponent;
  j["qcb_exponent"] = qcb;
  j["exponent_ratio"] = qcb > 0 ? Json(exponent / qcb) : Json(nullptr);
  if (c.objective == "error-prob" && qcb > 0 && opt.objective > 0) {
    j["finite_M_exponent_ratio"] = -std::log(2 * opt.objective) / c.params.M / qcb;
  } else {
    j["finite_M_exponent_ratio"] = nullptr;
  }
  j["degenerate"] = opt.degenerate;
  j["best_found"] = opt.best_found();
  j["multistart"] = opt.multistart;
  j["at_bracket_edge"] = opt.at_bracket_edge;
  Output o(c, out);
  o.stream << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_error_prob(const RunConfig& c, std::ostream& out, unsigned threads) {
  const Priors priors = priors_of(c);
  Json receivers = Json::object();
  for (const auto& r : c.receivers) {
    Json entry;
    if (r == "ffsfg") {
      const ErrorEstimate e = estimate_error_probability(priors, c.ffsfg, c.params, threads);
      entry["error_probability"] = e.value;
      entry["std_error"] = e.std_error;
      entry["aborted_trials"] = e.aborted;
    } else if (r == "opa") {
      GainSearch search = search_of(c);
      const GainOptimum opt = opa_optimize_gain(c.params, OpaObjective::error_probability(priors), search);
      entry["error_probability"] = opt.objective;
      entry["G"] = opt.gain;
    } else if (r == "ci-homodyne") {
      entry["error_probability"] = homodyne_error_probability(c.params, priors);
    } else if (r == "coherent-np") {
      const double alpha = effective_amplitude(c.params);
      entry["error_probability"] = helstrom_min_error(alpha * alpha, priors);
    } else {
      entry["error_probability"] = std::min(priors.pi0, priors.pi1);
    }
    receivers[r] = entry;
  }
  const double qcb = qcb_exponent(c.params).exponent;
  Json j;
  j["metadata"] = {{"settings", settings_to_json(c.settings())}};
  j["priors"] = {{"pi0", priors.pi0}, {"pi1", priors.pi1}};
  j["receivers"] = receivers;
  j["qcb_exponent"] = qcb;
  j["qcb_bound"] = 0.5 * std::exp(-c.params.M * qcb);
  Output o(c, out);
  o.stream << j.dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum illumination receiver ROC and error-exponent tool"};
  app.set_help_flag("-h,--help", "Print help");
  std::string command;
  app.add_option("command", command, "roc | qcb-sweep | opa-optimize | error-prob")->required();
  std::map<std::string, std::string> raw;
  for (const auto& key : kKeys) {
    if (key == "opa-per-point") continue;
    app.add_option("--" + key, raw[key], kHelp.at(key));
  }
  bool exact_variance = false, per_point = false;
  app.add_flag("--exact-variance", exact_variance, "Use the exact signal-mode variance under h = 1");
  app.add_flag("--opa-per-point", per_point, "Re-optimize the OPA gain at every P_F");
  std::string config_path, replay_path;
  app.add_option("--config", config_path, "key = value settings file");
  app.add_option("--replay", replay_path, "Reproduce a run from the metadata header of an output file");

  RunConfig config;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    config.command = command;
    if (!contains(kCommands, command)) throw ConfigError("command", "unknown command '" + command + "'");
    if (!replay_path.empty()) {
      std::ifstream f(replay_path, std::ios::binary);
      if (!f) throw ConfigError("replay", "cannot open '" + replay_path + "'");
      for (const auto& [k, v] : read_settings(f)) {
        if (k == "command") {
          if (v != command) throw ConfigError("replay", "file was written by '" + v + "'");
          continue;
        }
        config.set(k, v);
      }
    }
    if (!config_path.empty()) {
      std::ifstream f(config_path);
      if (!f) throw ConfigError("config", "cannot open '" + config_path + "'");
      apply_config_file(config, f);
    }
    for (const auto& key : kKeys) {
      if (key != "opa-per-point" && app.count("--" + key) > 0) config.set(key, raw[key]);
    }
    if (exact_variance) config.params.signal_variance = SignalVariance::exact;
    if (per_point) config.opa_per_point = true;
    config.validate();
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    const unsigned threads = resolve_threads(config.parallelism);
    if (command == "roc") return cmd_roc(config, out, threads);
    if (command == "qcb-sweep") return cmd_qcb_sweep(config, out, threads);
    if (command == "opa-optimize") return cmd_opa_optimize(config, out);
    return cmd_error_prob(config, out, threads);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace qi
