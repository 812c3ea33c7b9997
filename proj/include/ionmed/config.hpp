// Copyright 2026 The ionmed Authors
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

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ionmed/hamiltonian.hpp"
#include "ionmed/units.hpp"

namespace ionmed {

enum class RunKind { params, hamiltonian, evolve, magnus_check, gate, phonons, sweep };

std::string_view to_string(RunKind k);
RunKind parse_run_kind(std::string_view s);

struct SweepSpec {
    std::string parameter;
    double min = 0.0;
    double max = 0.0;
    int count = 0;

    double value(int i) const;
};

/// Everything a CLI run needs. Physical inputs are stored in SI/rad-s; the
/// file format carries explicit units in every key.
struct RunConfig {
    SystemParams params;
    std::optional<RunKind> run;
    HamiltonianKind hamiltonian = HamiltonianKind::effective;
    int steps_per_period = 200;
    int project_n = 0;
    std::string initial = "11,n=0";
    std::optional<SweepSpec> sweep;
    std::string output;
};

/// Raised for malformed configs; line is 0 for whole-file problems.
class ConfigError : public std::runtime_error {
   public:
    ConfigError(int line, const std::string& what);
    int line() const { return line_; }

   private:
    int line_;
};

/// Parses flat "key = value" text ('#' starts a comment). Unknown keys,
/// keys lacking their unit suffix and out-of-range values are rejected with
/// the offending line number. All module invariants are checked before return.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

/// Applies one sweep value to params. Supported names: separation_um,
/// rabi_mhz_over_2pi, omega_i_mhz_over_2pi, gamma_khz_over_2pi, c4_au.
void apply_sweep_value(SystemParams& params, const std::string& name, double value);

/// Stable text form of every resolved field; feeds config_hash.
std::string canonical_text(const RunConfig& cfg);
/// 64-bit FNV-1a of canonical_text, hex.
std::string config_hash(const RunConfig& cfg);

/// The key = value text of the shipped default configuration.
std::string default_config_text();

}  // namespace ionmed
