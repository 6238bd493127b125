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

#include "qi_roclab/scenario.hpp"

#include <cerrno>
#include <charconv>
#include <cstdlib>
#include <istream>
#include <ostream>

namespace qi {

namespace {

void require(bool ok, const std::string& message) {
  if (!ok) throw DomainError(message);
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

void ScenarioParams::validate() const {
  require(std::isfinite(M) && M > 0, "M must be finite and > 0");
  require(std::isfinite(N_S) && N_S >= 0, "N_S must be finite and >= 0");
  require(std::isfinite(N_B) && N_B >= 0, "N_B must be finite and >= 0");
  require(std::isfinite(kappa) && kappa >= 0 && kappa <= 1, "kappa must lie in [0, 1]");
}

bool weak_signal(const ScenarioParams& p, const RegimeThresholds& t) { return p.N_S < t.weak_signal; }
bool bright_noise(const ScenarioParams& p, const RegimeThresholds& t) { return p.N_B > t.bright_noise; }
bool weak_return(const ScenarioParams& p, const RegimeThresholds& t) { return p.kappa < t.weak_return; }

double cross_correlation(const ScenarioParams& params) {
  params.validate();
  return std::sqrt(params.kappa * params.N_S * (params.N_S + 1));
}

std::string format_double(double x) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
  const std::string t = trim(text);
  if (t.rfind("10^", 0) == 0) return std::pow(10.0, parse_double(t.substr(3)));
  if (t.empty()) throw DomainError("empty number");
  errno = 0;
  char* end = nullptr;
  const double value = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size() || errno == ERANGE) {
    throw DomainError("not a number: '" + t + "'");
  }
  return value;
}

void write_scenario(std::ostream& out, const ScenarioParams& params) {
  out << "M = " << format_double(params.M) << '\n'
      << "N_S = " << format_double(params.N_S) << '\n'
      << "kappa = " << format_double(params.kappa) << '\n'
      << "N_B = " << format_double(params.N_B) << '\n';
  if (params.signal_variance == SignalVariance::exact) out << "signal_variance = exact\n";
}

ScenarioParams read_scenario(std::istream& in) {
  ScenarioParams params;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw DomainError("line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "M") {
      params.M = parse_double(value);
    } else if (key == "N_S") {
      params.N_S = parse_double(value);
    } else if (key == "kappa") {
      params.kappa = parse_double(value);
    } else if (key == "N_B") {
      params.N_B = parse_double(value);
    } else if (key == "signal_variance") {
      if (value == "exact") {
        params.signal_variance = SignalVariance::exact;
      } else if (value == "approximate") {
        params.signal_variance = SignalVariance::approximate;
      } else {
        throw DomainError("signal_variance must be 'approximate' or 'exact'");
      }
    } else {
      throw DomainError("unknown scenario key '" + key + "'");
    }
  }
  params.validate();
  return params;
}

}  // namespace qi
