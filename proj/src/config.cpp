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

#include "ionmed/config.hpp"

#include <boost/algorithm/string/trim.hpp>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "ionmed/hilbert.hpp"

namespace ionmed {

namespace {

using Setter = std::function<void(RunConfig&, const std::string&, int)>;

double parse_number(const std::string& key, const std::string& value, int line) {
    double out = 0.0;
    const char* first = value.data();
    const char* last = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last || !std::isfinite(out)) {
        throw ConfigError(line, "value '" + value + "' for key '" + key + "' is not a number");
    }
    return out;
}

int parse_int(const std::string& key, const std::string& value, int line) {
    int out = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
        throw ConfigError(line, "value '" + value + "' for key '" + key + "' is not an integer");
    }
    return out;
}

double positive(const std::string& key, double v, int line) {
    if (!(v > 0.0)) throw ConfigError(line, "key '" + key + "' must be positive");
    return v;
}

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = [] {
        std::map<std::string, Setter> m;
        auto num = [](const std::string& key, std::function<void(RunConfig&, double, int)> apply) {
            return Setter([key, apply](RunConfig& c, const std::string& v, int line) {
                apply(c, parse_number(key, v, line), line);
            });
        };
        m["ion_mass_u"] = num("ion_mass_u", [](RunConfig& c, double v, int l) {
            c.params.ion_mass = positive("ion_mass_u", v, l) * si::atomic_mass_unit;
        });
        m["atom_mass_u"] = num("atom_mass_u", [](RunConfig& c, double v, int l) {
            c.params.atom_mass = positive("atom_mass_u", v, l) * si::atomic_mass_unit;
        });
        m["omega_i_mhz_over_2pi"] = num("omega_i_mhz_over_2pi", [](RunConfig& c, double v, int l) {
            c.params.omega_i = mhz_over_2pi(positive("omega_i_mhz_over_2pi", v, l));
        });
        m["z1_um"] = num("z1_um", [](RunConfig& c, double v, int l) {
            if (v == 0.0) throw ConfigError(l, "key 'z1_um' must be nonzero");
            c.params.z1 = v * si::micron;
        });
        m["z2_um"] = num("z2_um", [](RunConfig& c, double v, int l) {
            if (v == 0.0) throw ConfigError(l, "key 'z2_um' must be nonzero");
            c.params.z2 = v * si::micron;
        });
        m["c4_au"] = num("c4_au", [](RunConfig& c, double v, int) {
            c.params.c4 = atomic_units_to_si_c4(v);
        });
        m["c6_h_thz_um6"] = num("c6_h_thz_um6", [](RunConfig& c, double v, int) {
            c.params.c6 = c6_from_h_thz_um6(v);
        });
        m["c6_h_ghz_um6"] = num("c6_h_ghz_um6", [](RunConfig& c, double v, int) {
            c.params.c6 = c6_from_h_thz_um6(v * 1e-3);
        });
        m["rabi1_mhz_over_2pi"] = num("rabi1_mhz_over_2pi", [](RunConfig& c, double v, int l) {
            if (v < 0.0) throw ConfigError(l, "key 'rabi1_mhz_over_2pi' must be non-negative");
            c.params.rabi1 = mhz_over_2pi(v);
        });
        m["rabi2_mhz_over_2pi"] = num("rabi2_mhz_over_2pi", [](RunConfig& c, double v, int l) {
            if (v < 0.0) throw ConfigError(l, "key 'rabi2_mhz_over_2pi' must be non-negative");
            c.params.rabi2 = mhz_over_2pi(v);
        });
        for (int j : {1, 2}) {
            const std::string key = "detuning" + std::to_string(j) + "_mhz_over_2pi";
            m[key] = [key, j](RunConfig& c, const std::string& v, int line) {
                std::optional<double> d;
                if (v != "auto") d = mhz_over_2pi(parse_number(key, v, line));
                (j == 1 ? c.params.detuning1 : c.params.detuning2) = d;
            };
        }
        m["gamma_khz_over_2pi"] = num("gamma_khz_over_2pi", [](RunConfig& c, double v, int l) {
            if (v < 0.0) throw ConfigError(l, "key 'gamma_khz_over_2pi' must be non-negative");
            c.params.gamma = khz_over_2pi(v);
        });
        m["n_max"] = [](RunConfig& c, const std::string& v, int line) {
            const int n = parse_int("n_max", v, line);
            if (n < 2) throw ConfigError(line, "key 'n_max' must be at least 2");
            c.params.n_max = n;
        };
        m["run"] = [](RunConfig& c, const std::string& v, int line) {
            try {
                c.run = parse_run_kind(v);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(line, e.what());
            }
        };
        m["hamiltonian"] = [](RunConfig& c, const std::string& v, int line) {
            try {
                c.hamiltonian = parse_hamiltonian_kind(v);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(line, e.what());
            }
        };
        m["dt_per_period"] = [](RunConfig& c, const std::string& v, int line) {
            const int n = parse_int("dt_per_period", v, line);
            if (n < 1) throw ConfigError(line, "key 'dt_per_period' must be at least 1");
            c.steps_per_period = n;
        };
        m["project_n"] = [](RunConfig& c, const std::string& v, int line) {
            const int n = parse_int("project_n", v, line);
            if (n < 0) throw ConfigError(line, "key 'project_n' must be non-negative");
            c.project_n = n;
        };
        m["initial"] = [](RunConfig& c, const std::string& v, int) { c.initial = v; };
        m["output"] = [](RunConfig& c, const std::string& v, int) { c.output = v; };
        m["sweep_parameter"] = [](RunConfig& c, const std::string& v, int line) {
            SystemParams probe;
            try {
                apply_sweep_value(probe, v, 1.0);
            } catch (const std::invalid_argument& e) {
                throw ConfigError(line, e.what());
            }
            if (!c.sweep) c.sweep.emplace();
            c.sweep->parameter = v;
        };
        m["sweep_min"] = num("sweep_min", [](RunConfig& c, double v, int) {
            if (!c.sweep) c.sweep.emplace();
            c.sweep->min = v;
        });
        m["sweep_max"] = num("sweep_max", [](RunConfig& c, double v, int) {
            if (!c.sweep) c.sweep.emplace();
            c.sweep->max = v;
        });
        m["sweep_count"] = [](RunConfig& c, const std::string& v, int line) {
            const int n = parse_int("sweep_count", v, line);
            if (n < 2) throw ConfigError(line, "key 'sweep_count' must be at least 2");
            if (!c.sweep) c.sweep.emplace();
            c.sweep->count = n;
        };
        return m;
    }();
    return table;
}

// Bare names that need a unit suffix, with the accepted spelling.
const std::map<std::string, std::string>& unit_hints() {
    static const std::map<std::string, std::string> hints = {
        {"ion_mass", "ion_mass_u"},
        {"atom_mass", "atom_mass_u"},
        {"omega_i", "omega_i_mhz_over_2pi"},
        {"z1", "z1_um"},
        {"z2", "z2_um"},
        {"c4", "c4_au"},
        {"c6", "c6_h_thz_um6"},
        {"rabi1", "rabi1_mhz_over_2pi"},
        {"rabi2", "rabi2_mhz_over_2pi"},
        {"detuning1", "detuning1_mhz_over_2pi"},
        {"detuning2", "detuning2_mhz_over_2pi"},
        {"gamma", "gamma_khz_over_2pi"},
    };
    return hints;
}

}  // namespace

ConfigError::ConfigError(int line, const std::string& what)
    : std::runtime_error(line > 0 ? "config:" + std::to_string(line) + ": " + what
                                  : "config: " + what),
      line_(line) {}

std::string_view to_string(RunKind k) {
    switch (k) {
        case RunKind::params: return "params";
        case RunKind::hamiltonian: return "hamiltonian";
        case RunKind::evolve: return "evolve";
        case RunKind::magnus_check: return "magnus-check";
        case RunKind::gate: return "gate";
        case RunKind::phonons: return "phonons";
        case RunKind::sweep: return "sweep";
    }
    return "?";
}

RunKind parse_run_kind(std::string_view s) {
    for (RunKind k : {RunKind::params, RunKind::hamiltonian, RunKind::evolve, RunKind::magnus_check,
                      RunKind::gate, RunKind::phonons, RunKind::sweep}) {
        if (to_string(k) == s) return k;
    }
    throw std::invalid_argument("unknown run kind '" + std::string(s) + "'");
}

double SweepSpec::value(int i) const {
    return count < 2 ? min : min + (max - min) * static_cast<double>(i) / (count - 1);
}

void apply_sweep_value(SystemParams& p, const std::string& name, double value) {
    if (name == "separation_um") {
        p.z1 = -0.5 * value * si::micron;
        p.z2 = 0.5 * value * si::micron;
    } else if (name == "rabi_mhz_over_2pi") {
        p.rabi1 = p.rabi2 = mhz_over_2pi(value);
    } else if (name == "omega_i_mhz_over_2pi") {
        p.omega_i = mhz_over_2pi(value);
    } else if (name == "gamma_khz_over_2pi") {
        p.gamma = khz_over_2pi(value);
    } else if (name == "c4_au") {
        p.c4 = atomic_units_to_si_c4(value);
    } else {
        throw std::invalid_argument("unknown sweep parameter '" + name + "'");
    }
}

RunConfig parse_config(std::string_view text) {
    RunConfig cfg;
    std::set<std::string> seen;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line = 0;
    int z_line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        boost::algorithm::trim(raw);
        if (raw.empty()) continue;
        const auto eq = raw.find('=');
        if (eq == std::string::npos) throw ConfigError(line, "expected 'key = value'");
        std::string key = raw.substr(0, eq);
        std::string value = raw.substr(eq + 1);
        boost::algorithm::trim(key);
        boost::algorithm::trim(value);
        if (value.empty()) throw ConfigError(line, "key '" + key + "' has no value");
        if (auto hint = unit_hints().find(key); hint != unit_hints().end()) {
            throw ConfigError(line, "key '" + key + "' is missing its unit suffix (use '" +
                                        hint->second + "')");
        }
        const auto it = setters().find(key);
        if (it == setters().end()) throw ConfigError(line, "unknown key '" + key + "'");
        if (!seen.insert(key).second) throw ConfigError(line, "duplicate key '" + key + "'");
        if (key == "c6_h_thz_um6" || key == "c6_h_ghz_um6") {
            if (seen.count("c6_h_thz_um6") && seen.count("c6_h_ghz_um6")) {
                throw ConfigError(line, "give C6 in one unit only");
            }
        }
        if (key == "z1_um" || key == "z2_um") z_line = line;
        it->second(cfg, value, line);
    }

    try {
        cfg.params.validate();
        derive_couplings(cfg.params);
    } catch (const ParameterError& e) {
        throw ConfigError(z_line, e.what());
    }
    if (cfg.project_n > cfg.params.n_max) {
        throw ConfigError(0, "project_n exceeds n_max");
    }
    try {
        JointBasis(cfg.params.n_max).parse(cfg.initial);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(0, e.what());
    }
    if (cfg.sweep) {
        if (cfg.sweep->parameter.empty()) throw ConfigError(0, "sweep needs sweep_parameter");
        if (cfg.sweep->count < 2) throw ConfigError(0, "sweep needs sweep_count >= 2");
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError(0, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str());
}

std::string canonical_text(const RunConfig& cfg) {
    const SystemParams& p = cfg.params;
    std::ostringstream out;
    out.precision(17);
    auto opt = [](const std::optional<double>& v) {
        std::ostringstream s;
        s.precision(17);
        if (v) s << *v; else s << "auto";
        return s.str();
    };
    out << "ion_mass=" << p.ion_mass << ";atom_mass=" << p.atom_mass << ";omega_i=" << p.omega_i
        << ";z1=" << p.z1 << ";z2=" << p.z2 << ";c4=" << p.c4 << ";c6=" << p.c6
        << ";rabi1=" << p.rabi1 << ";rabi2=" << p.rabi2 << ";detuning1=" << opt(p.detuning1)
        << ";detuning2=" << opt(p.detuning2) << ";gamma=" << p.gamma << ";n_max=" << p.n_max
        << ";hamiltonian=" << to_string(cfg.hamiltonian) << ";steps_per_period=" << cfg.steps_per_period
        << ";project_n=" << cfg.project_n << ";initial=" << cfg.initial;
    if (cfg.sweep) {
        out << ";sweep=" << cfg.sweep->parameter << ":" << cfg.sweep->min << ":" << cfg.sweep->max
            << ":" << cfg.sweep->count;
    }
    return out.str();
}

std::string config_hash(const RunConfig& cfg) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical_text(cfg)) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string default_config_text() {
    return R"(# Rb + Ca+ + Rb operating point
ion_mass_u = 40
atom_mass_u = 86.909180527
omega_i_mhz_over_2pi = 0.32
z1_um = -10.5
z2_um = 10.5
# -160 a.u. x 5.07e10
c4_au = -8.112e12
c6_h_thz_um6 = -16.69
rabi1_mhz_over_2pi = 0.16
rabi2_mhz_over_2pi = 0.16
detuning1_mhz_over_2pi = auto
detuning2_mhz_over_2pi = auto
gamma_khz_over_2pi = 10
n_max = 5
hamiltonian = effective
dt_per_period = 200
project_n = 0
initial = 11,n=0
)";
}

}  // namespace ionmed
