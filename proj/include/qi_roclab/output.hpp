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
#include <utility>
#include <vector>

#include "json.hpp"
#include "qi_roclab/qcb.hpp"
#include "qi_roclab/roc.hpp"

namespace qi {

/// Ordered run settings; written as `# key = value` header lines (CSV) or a
/// `metadata.settings` object (JSON) and read back by `read_settings`.
using Settings = std::vector<std::pair<std::string, std::string>>;

using Json = nlohmann::ordered_json;

void write_roc_csv(std::ostream& out, const RocCurve& curve, const Settings& settings);
Json roc_to_json(const RocCurve& curve, const Settings& settings);

/// All curves in one long-format table, one row per (receiver, point).
void write_comparison_csv(std::ostream& out, std::span<const RocCurve> curves, const Settings& settings);
Json comparison_to_json(std::span<const RocCurve> curves, const Settings& settings);

void write_qcb_sweep_csv(std::ostream& out, std::span<const QcbSweepRow> rows, const Settings& settings);
Json qcb_sweep_to_json(std::span<const QcbSweepRow> rows, const Settings& settings);

Json settings_to_json(const Settings& settings);

/// Settings embedded in a file written by this module (CSV header or JSON).
Settings read_settings(std::istream& in);

}  // namespace qi
