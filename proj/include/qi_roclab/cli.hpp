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

#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qi_roclab/errors.hpp"
#include "qi_roclab/ffsfg.hpp"
#include "qi_roclab/output.hpp"
#include "qi_roclab/scenario.hpp"

namespace qi {

/// Invalid configuration; the message names the offending key.
class ConfigError : public DomainError {
 public:
  ConfigError(const std::string& key, const std::string& what)
      : DomainError("invalid '" + key + "': " + what), key(key) {}
  std::string key;
};

struct GridSpec {
  int points = 50;
  double min = 1e-3;
  double max = 1 - 1e-3;
  bool log = true;

  std::vector<double> values() const;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitRuntime = 3;

struct RunConfig {
  std::string command;
  ScenarioParams params;
  std::vector<std::string> receivers{"ffsfg", "opa", "ci-homodyne", "coherent-np", "chance"};
  FfSfgConfig ffsfg;
  GridSpec pf{50, 1e-3, 1 - 1e-3, true};
  GridSpec zeta{41, 1e-3, 1e3, true};
  GridSpec ns{31, 1e-5, 1e-2, true};
  std::vector<double> nb_list{20, 100};
  double prior1 = 0.5;
  double opa_bracket = 0.1;
  std::string objective = "error-prob";
  double target_pf = 0.1;
  bool opa_per_point = false;
  std::string format = "csv";
  // Never written to output metadata: neither changes results.
  std::string out;
  unsigned parallelism = 0;

  /// Applies one `key = value` setting. Throws ConfigError.
  void set(std::string_view key, const std::string& value);
  /// Throws ConfigError.
  void validate() const;
  /// Everything that determines the output bytes, in a fixed order.
  Settings settings() const;
};

/// Reads `key = value` lines ('#' comments allowed) into `config`.
void apply_config_file(RunConfig& config, std::istream& in);

/// Entry point of the command-line tool; returns the process exit code.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace qi
