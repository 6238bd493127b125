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

#include "qi_roclab/output.hpp"

#include <istream>
#include <iterator>
#include <optional>
#include <ostream>
#include <regex>

#include "qi_roclab/errors.hpp"
#include "qi_roclab/scenario.hpp"

namespace qi {

namespace {

std::string field(const std::optional<double>& x) { return x ? format_double(*x) : std::string(); }

std::string generation_value(const RocCurve& curve, const std::string& key) {
  for (const auto& [k, v] : curve.metadata.generation) {
    if (k == key) return v;
  }
  return {};
}

bool is_baseline(const std::string& receiver) {
  return receiver == "ci-homodyne" || receiver == "coherent-np" || receiver == "chance";
}

void write_settings(std::ostream& out, const Settings& settings) {
  out << "# qi_roclab\n";
  for (const auto& [k, v] : settings) out << "# " << k << " = " << v << '\n';
}

void write_curve_notes(std::ostream& out, const RocCurve& curve) {
  out << "# receiver: " << curve.metadata.receiver << '\n';
  for (const auto& [k, v] : curve.metadata.generation) out << "# " << k << ": " << v << '\n';
  for (const auto& w : curve.metadata.warnings) out << "# warning: " << w << '\n';
}

std::string params_fields(const ScenarioParams& p) {
  return format_double(p.M) + ',' + format_double(p.N_S) + ',' + format_double(p.kappa) + ',' + format_double(p.N_B);
}

Json optional_json(const std::optional<double>& x) { return x ? Json(*x) : Json(nullptr); }

Json curve_json(const RocCurve& curve) {
  Json meta;
  meta["receiver"] = curve.metadata.receiver;
  Json gen = Json::object();
  for (const auto& [k, v] : curve.metadata.generation) gen[k] = v;
  meta["generation"] = gen;
  meta["warnings"] = curve.metadata.warnings;
  Json pts = Json::array();
  for (const RocPoint& p : curve.points) {
    Json row;
    row["P_F"] = p.p_f;
    row["P_D"] = p.p_d;
    if (p.p_f_interval) row["P_F_lo"] = p.p_f_interval->lo, row["P_F_hi"] = p.p_f_interval->hi;
    if (p.p_d_interval) row["P_D_lo"] = p.p_d_interval->lo, row["P_D_hi"] = p.p_d_interval->hi;
    if (p.p_f_stderr) row["P_F_stderr"] = *p.p_f_stderr;
    if (p.p_d_stderr) row["P_D_stderr"] = *p.p_d_stderr;
    if (p.zeta) row["zeta"] = *p.zeta;
    if (p.threshold) row["threshold"] = *p.threshold;
    if (p.gain) row["G"] = *p.gain;
    pts.push_back(row);
  }
  return {{"metadata", meta}, {"points", pts}};
}

}  // namespace

Json settings_to_json(const Settings& settings) {
  Json s = Json::object();
  for (const auto& [k, v] : settings) s[k] = v;
  return s;
}

void write_roc_csv(std::ostream& out, const RocCurve& curve, const Settings& settings) {
  write_settings(out, settings);
  write_curve_notes(out, curve);
  const std::string& r = curve.metadata.receiver;
  const std::string params = params_fields(curve.metadata.params);
  if (r == "ffsfg") {
    out << "P_F,P_F_lo,P_F_hi,P_D,P_D_lo,P_D_hi,zeta,K,trials,seed,receiver\n";
    const std::string tail = generation_value(curve, "K") + ',' + generation_value(curve, "trials") + ',' +
                             generation_value(curve, "seed") + ",ffsfg\n";
    for (const RocPoint& p : curve.points) {
      out << format_double(p.p_f) << ',' << (p.p_f_interval ? format_double(p.p_f_interval->lo) : "") << ','
          << (p.p_f_interval ? format_double(p.p_f_interval->hi) : "") << ',' << format_double(p.p_d) << ','
          << (p.p_d_interval ? format_double(p.p_d_interval->lo) : "") << ','
          << (p.p_d_interval ? format_double(p.p_d_interval->hi) : "") << ',' << field(p.zeta) << ',' << tail;
    }
  } else if (r == "opa") {
    out << "P_F,P_D,receiver,G,M,N_S,kappa,N_B\n";
    for (const RocPoint& p : curve.points) {
      out << format_double(p.p_f) << ',' << format_double(p.p_d) << ",opa," << field(p.gain) << ',' << params
          << '\n';
    }
  } else if (is_baseline(r)) {
    out << "P_F,P_D,receiver,M,N_S,kappa,N_B\n";
    for (const RocPoint& p : curve.points) {
      out << format_double(p.p_f) << ',' << format_double(p.p_d) << ',' << r << ',' << params << '\n';
    }
  } else {
    throw DomainError("unknown receiver '" + r + "'");
  }
}

Json roc_to_json(const RocCurve& curve, const Settings& settings) {
  Json j = curve_json(curve);
  j["metadata"]["settings"] = settings_to_json(settings);
  return j;
}

void write_comparison_csv(std::ostream& out, std::span<const RocCurve> curves, const Settings& settings) {
  write_settings(out, settings);
  for (const RocCurve& c : curves) write_curve_notes(out, c);
  out << "receiver,P_F,P_D,P_F_lo,P_F_hi,P_D_lo,P_D_hi\n";
  for (const RocCurve& c : curves) {
    for (const RocPoint& p : c.points) {
      out << c.metadata.receiver << ',' << format_double(p.p_f) << ',' << format_double(p.p_d) << ','
          << (p.p_f_interval ? format_double(p.p_f_interval->lo) : "") << ','
          << (p.p_f_interval ? format_double(p.p_f_interval->hi) : "") << ','
          << (p.p_d_interval ? format_double(p.p_d_interval->lo) : "") << ','
          << (p.p_d_interval ? format_double(p.p_d_interval->hi) : "") << '\n';
    }
  }
}

Json comparison_to_json(std::span<const RocCurve> curves, const Settings& settings) {
  Json list = Json::array();
  for (const RocCurve& c : curves) list.push_back(curve_json(c));
  return {{"metadata", {{"settings", settings_to_json(settings)}}}, {"curves", list}};
}

void write_qcb_sweep_csv(std::ostream& out, std::span<const QcbSweepRow> rows, const Settings& settings) {
  write_settings(out, settings);
  out << "N_S,N_B,kappa,s_star,exponent,asymptote,ratio\n";
  for (const QcbSweepRow& r : rows) {
    out << format_double(r.N_S) << ',' << format_double(r.N_B) << ',' << format_double(r.kappa) << ','
        << format_double(r.qcb.s_star) << ',' << format_double(r.qcb.exponent) << ','
        << format_double(r.asymptote) << ',' << field(r.ratio) << '\n';
  }
}

Json qcb_sweep_to_json(std::span<const QcbSweepRow> rows, const Settings& settings) {
  Json list = Json::array();
  for (const QcbSweepRow& r : rows) {
    list.push_back({{"N_S", r.N_S},
                    {"N_B", r.N_B},
                    {"kappa", r.kappa},
                    {"s_star", r.qcb.s_star},
                    {"exponent", r.qcb.exponent},
                    {"asymptote", r.asymptote},
                    {"ratio", optional_json(r.ratio)}});
  }
  return {{"metadata", {{"settings", settings_to_json(settings)}}}, {"rows", list}};
}

Settings read_settings(std::istream& in) {
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  Settings settings;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const Json::exception& e) {
      throw DomainError(std::string("replay file is not valid JSON: ") + e.what());
    }
    if (!j.contains("metadata") || !j["metadata"].contains("settings")) {
      throw DomainError("replay file has no metadata.settings block");
    }
    for (const auto& [k, v] : j["metadata"]["settings"].items()) {
      if (!v.is_string()) throw DomainError("replay setting '" + k + "' is not a string");
      settings.emplace_back(k, v.get<std::string>());
    }
    return settings;
  }
  static const std::regex line_re(R"(^# ([A-Za-z0-9_-]+) = (.*)$)");
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    const std::string line = text.substr(pos, end - pos);
    pos = end + 1;
    if (line.empty() || line[0] != '#') break;  // header ends at the first data line
    std::smatch m;
    if (std::regex_match(line, m, line_re)) settings.emplace_back(m[1], m[2]);
  }
  if (settings.empty()) throw DomainError("replay file has no settings header");
  return settings;
}

}  // namespace qi
