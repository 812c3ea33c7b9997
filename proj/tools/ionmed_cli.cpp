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

// ionmed command-line entry point. Every output starts with one '#' line
// carrying a JSON provenance record (config hash, derived couplings).

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ionmed/config.hpp"
#include "ionmed/gate.hpp"
#include "ionmed/magnus.hpp"
#include "ionmed/observables.hpp"

namespace {

using namespace ionmed;
using nlohmann::ordered_json;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

struct Options {
    std::string config_path;
    std::string out;
    std::optional<int> dt_per_period;
    std::optional<int> n_max;
    std::optional<std::string> initial;
    std::optional<int> project_n;
    std::optional<std::string> hamiltonian;

    // hamiltonian
    double t_us = 0.0;
    int pulse = 1;
    // evolve
    std::vector<std::string> labels;
    int pulses = 3;
    int stride = 1;
    // magnus-check
    int times = 20;
    std::vector<double> betas{0.04, 0.02, 0.01, 0.005};
    // gate
    bool tune_theta = false;
    // sweep
    std::optional<std::string> sweep_parameter;
    std::optional<double> sweep_min;
    std::optional<double> sweep_max;
    std::optional<int> sweep_count;
};

RunConfig resolve_config(const Options& o) {
    RunConfig cfg = o.config_path.empty() ? parse_config("") : load_config(o.config_path);
    if (o.dt_per_period) {
        if (*o.dt_per_period < 1) throw ConfigError(0, "--dt-per-period must be positive");
        cfg.steps_per_period = *o.dt_per_period;
    }
    if (o.n_max) cfg.params.n_max = *o.n_max;
    if (o.initial) cfg.initial = *o.initial;
    if (o.project_n) cfg.project_n = *o.project_n;
    if (o.hamiltonian) cfg.hamiltonian = parse_hamiltonian_kind(*o.hamiltonian);
    if (!o.out.empty()) cfg.output = o.out;
    if (o.sweep_parameter || o.sweep_min || o.sweep_max || o.sweep_count) {
        if (!cfg.sweep) cfg.sweep.emplace();
        if (o.sweep_parameter) cfg.sweep->parameter = *o.sweep_parameter;
        if (o.sweep_min) cfg.sweep->min = *o.sweep_min;
        if (o.sweep_max) cfg.sweep->max = *o.sweep_max;
        if (o.sweep_count) cfg.sweep->count = *o.sweep_count;
    }
    cfg.params.validate();
    if (cfg.project_n < 0 || cfg.project_n > cfg.params.n_max) {
        throw ConfigError(0, "project_n must lie in [0, n_max]");
    }
    JointBasis(cfg.params.n_max).parse(cfg.initial);
    return cfg;
}

ordered_json derived_json(const DerivedCouplings& d) {
    ordered_json j;
    j["lambda_i_m"] = d.lambda_i;
    j["beta1"] = d.beta1;
    j["beta2"] = d.beta2;
    j["v0_1_rad_s"] = d.v0_1;
    j["v0_2_rad_s"] = d.v0_2;
    j["u0_1_rad_s"] = d.u0_1;
    j["u0_2_rad_s"] = d.u0_2;
    j["detuning1_rad_s"] = d.detuning1;
    j["detuning2_rad_s"] = d.detuning2;
    j["v_rr_direct_rad_s"] = d.v_rr_direct;
    j["v_med_peak_rad_s"] = d.v_med_peak;
    j["kappa1"] = d.kappa1;
    j["kappa2"] = d.kappa2;
    return j;
}

std::string header(const RunConfig& cfg, std::string_view run) {
    ordered_json j;
    j["tool"] = "ionmed";
    j["run"] = run;
    j["config_hash"] = config_hash(cfg);
    j["hamiltonian"] = to_string(cfg.hamiltonian);
    j["n_max"] = cfg.params.n_max;
    j["dt_per_period"] = cfg.steps_per_period;
    j["c6_units"] = "h THz um^6";
    j["derived"] = derived_json(derive_couplings(cfg.params));
    return "# " + j.dump() + "\n";
}

ProtocolOptions protocol_options(const RunConfig& cfg) {
    ProtocolOptions p;
    p.kind = cfg.hamiltonian;
    p.steps_per_period = cfg.steps_per_period;
    return p;
}

void write_table(std::ostream& os, const Table& t) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
    os << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << fmt(row[i]);
        os << "\n";
    }
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

// ---- subcommands ----------------------------------------------------------

void run_params(const RunConfig& cfg, std::ostream& os) {
    const SystemParams& p = cfg.params;
    const DerivedCouplings d = derive_couplings(p);
    struct Row {
        const char* key;
        double value;
        const char* unit;
    };
    const std::vector<Row> rows{
        {"ion_mass", p.ion_mass, "kg"},
        {"atom_mass", p.atom_mass, "kg"},
        {"omega_i", p.omega_i, "rad/s"},
        {"z1", p.z1, "m"},
        {"z2", p.z2, "m"},
        {"c4", p.c4, "J m^4"},
        {"c6", p.c6, "J m^6"},
        {"rabi1", p.rabi1, "rad/s"},
        {"rabi2", p.rabi2, "rad/s"},
        {"gamma", p.gamma, "rad/s"},
        {"n_max", static_cast<double>(p.n_max), "-"},
        {"lambda_i", d.lambda_i, "m"},
        {"beta1", d.beta1, "-"},
        {"beta2", d.beta2, "-"},
        {"v0_1", d.v0_1, "rad/s"},
        {"v0_2", d.v0_2, "rad/s"},
        {"u0_1", d.u0_1, "rad/s"},
        {"u0_2", d.u0_2, "rad/s"},
        {"detuning1", d.detuning1, "rad/s"},
        {"detuning2", d.detuning2, "rad/s"},
        {"v_rr_direct", d.v_rr_direct, "rad/s"},
        {"v_med_peak", d.v_med_peak, "rad/s"},
        {"v_med_mean", d.v_med_mean, "rad/s"},
        {"kappa1", d.kappa1, "-"},
        {"kappa2", d.kappa2, "-"},
        {"kappa1_rate", d.kappa1_rate, "rad/s"},
        {"kappa2_rate", d.kappa2_rate, "rad/s"},
    };
    char line[128];
    std::snprintf(line, sizeof line, "%-14s %-22s %s\n", "quantity", "value", "unit");
    os << line;
    for (const Row& r : rows) {
        std::snprintf(line, sizeof line, "%-14s %-22.12g %s\n", r.key, r.value, r.unit);
        os << line;
    }
    os << "\n";
    for (const Row& r : rows) os << r.key << "=" << fmt(r.value) << "\n";
    os << "v_rr_direct_mhz_over_2pi=" << fmt(to_mhz_over_2pi(d.v_rr_direct)) << "\n";
    os << "v_med_peak_mhz_over_2pi=" << fmt(to_mhz_over_2pi(d.v_med_peak)) << "\n";
    os << "v_med_peak_over_rabi=" << fmt(d.v_med_peak / p.rabi2) << "\n";
}

PulseConfig pulse_config(int pulse) {
    if (pulse < 1 || pulse > 3) throw std::invalid_argument("--pulse must be 1, 2 or 3");
    return PulseConfig::only(pulse == 2 ? Atom::second : Atom::first);
}

void run_hamiltonian(const RunConfig& cfg, const Options& o, std::ostream& os) {
    const TermSum h = build_hamiltonian(cfg.hamiltonian, cfg.params, pulse_config(o.pulse));
    const double t = o.t_us * 1e-6;
    os << "label,order,formula,coefficient_re,coefficient_im,matrix_norm,term_norm\n";
    for (const Term& term : h) {
        const cplx c = term.coefficient(t);
        const double m = operator_norm(term.matrix);
        os << term.label << "," << term.order << "," << csv_quote(term.formula) << ","
           << fmt(c.real()) << "," << fmt(c.imag()) << "," << fmt(m) << "," << fmt(std::abs(c) * m)
           << "\n";
    }
}

// Computational label of the initial state with every subset of its |1>
// atoms promoted to |r>, for n = 0 and 1.
std::vector<std::string> default_labels(const std::string& initial) {
    const std::string atoms = initial.substr(0, 2);
    std::vector<std::string> variants{atoms};
    for (int k = 0; k < 2; ++k) {
        if (atoms[k] != '1') continue;
        const std::size_t n = variants.size();
        for (std::size_t i = 0; i < n; ++i) {
            std::string v = variants[i];
            v[k] = 'r';
            variants.push_back(v);
        }
    }
    std::vector<std::string> labels;
    for (int n = 0; n <= 1; ++n) {
        for (const auto& v : variants) labels.push_back(v + ",n=" + std::to_string(n));
    }
    return labels;
}

void run_evolve(const RunConfig& cfg, const Options& o, std::ostream& os) {
    if (o.pulses < 1 || o.pulses > 3) throw std::invalid_argument("--pulses must be 1, 2 or 3");
    ProtocolOptions popts = protocol_options(cfg);
    popts.trace_stride = o.stride;
    const CzProtocol protocol(cfg.params, popts);
    const ProtocolRun run = protocol.run(cfg.initial);
    const double t_end = run.pulse_end_times[o.pulses - 1];

    EvolutionTrace cut;
    for (std::size_t i = 0; i < run.trace.size() && run.trace.times[i] <= t_end * (1 + 1e-12); ++i) {
        cut.times.push_back(run.trace.times[i]);
        cut.amplitudes.push_back(run.trace.amplitudes[i]);
        cut.norms.push_back(run.trace.norms[i]);
    }
    const std::vector<std::string> labels = o.labels.empty() ? default_labels(cfg.initial) : o.labels;
    write_table(os, amplitude_series(cut, protocol.basis(), labels, cfg.params.rabi1));
}

void run_magnus_check(const RunConfig& cfg, const Options& o, std::ostream& os) {
    if (o.times < 1) throw std::invalid_argument("--times must be positive");
    const PulseConfig pc = PulseConfig::only(Atom::first);
    const double t_pulse = std::numbers::pi / cfg.params.rabi1;
    const BetaScalingResult scaling = beta_scaling(cfg.params, o.betas, cfg.steps_per_period);

    os << "kind,t_us,deviation,relative_deviation,beta,slope_estimate\n";
    for (int i = 1; i <= o.times; ++i) {
        const double t = t_pulse * i / o.times;
        const MagnusReport r = magnus_check(cfg.params, pc, t);
        os << "phi2," << fmt(t * 1e6) << "," << fmt(r.deviation) << "," << fmt(r.relative_deviation)
           << "," << fmt(r.beta) << "," << fmt(scaling.slope) << "\n";
    }
    for (const BetaScalingPoint& p : scaling.points) {
        os << "propagator," << fmt(t_pulse * 1e6) << "," << fmt(p.deviation) << ",," << fmt(p.beta)
           << "," << fmt(scaling.slope) << "\n";
    }
}

constexpr const char* kChannels[4] = {"00", "01", "10", "11"};

void run_gate(const RunConfig& cfg, const Options& o, std::ostream& os) {
    ProtocolOptions popts = protocol_options(cfg);
    std::optional<ThetaTuning> tuning;
    if (o.tune_theta) {
        tuning = tune_theta(cfg.params, popts);
        popts.pulse2_duration = tuning->pulse2_duration;
    }
    const GateReport r = extract_gate_matrix(cfg.params, popts, cfg.project_n);

    char line[160];
    os << "realized gate (rows: output, columns: input), phonon n=" << r.projected_n << "\n";
    std::snprintf(line, sizeof line, "%-6s", "");
    os << line;
    for (const char* c : kChannels) {
        std::snprintf(line, sizeof line, " %-24s", c);
        os << line;
    }
    os << "\n";
    for (int k = 0; k < 4; ++k) {
        std::snprintf(line, sizeof line, "%-6s", kChannels[k]);
        os << line;
        for (int j = 0; j < 4; ++j) {
            const cplx u = r.realized(k, j);
            std::snprintf(line, sizeof line, " %+.5f%+.5fi%8s", u.real(), u.imag(), "");
            os << line;
        }
        os << "\n";
    }
    std::snprintf(line, sizeof line, "gate fidelity      %.6f\n", r.fidelity);
    os << line;
    std::snprintf(line, sizeof line, "state fidelity 11  %.6f\n", r.state_fidelity_11.fidelity);
    os << line;
    std::snprintf(line, sizeof line, "theta              %.6f rad\n", r.theta);
    os << line;
    std::snprintf(line, sizeof line, "blockade max P_rr  %.3e\n", r.blockade_max);
    os << line;
    os << "\n";

    os << "fidelity=" << fmt(r.fidelity) << "\n";
    os << "state_fidelity_11=" << fmt(r.state_fidelity_11.fidelity) << "\n";
    os << "theta_rad=" << fmt(r.theta) << "\n";
    os << "theta1_rad=" << fmt(r.theta1) << "\n";
    os << "blockade_max=" << fmt(r.blockade_max) << "\n";
    os << "projected_n=" << r.projected_n << "\n";
    if (tuning) {
        os << "tuned_pulse2_us=" << fmt(tuning->pulse2_duration * 1e6) << "\n";
        os << "tuning_converged=" << (tuning->converged ? 1 : 0) << "\n";
    }
    for (int j = 0; j < 4; ++j) {
        os << "leakage_" << kChannels[j] << "=" << fmt(r.leakage[j]) << "\n";
        os << "norm_" << kChannels[j] << "=" << fmt(r.final_norm[j]) << "\n";
    }
    for (int k = 0; k < 4; ++k) {
        for (int j = 0; j < 4; ++j) {
            const std::string key = std::string("u_") + kChannels[k] + "_" + kChannels[j];
            os << key << "_re=" << fmt(r.realized(k, j).real()) << "\n";
            os << key << "_im=" << fmt(r.realized(k, j).imag()) << "\n";
        }
    }
}

void run_phonons(const RunConfig& cfg, std::ostream& os) {
    const ProtocolOptions popts = protocol_options(cfg);
    const CzProtocol protocol(cfg.params, popts);
    const std::vector<std::string> initial{"10,n=0", "11,n=0", "10,n=1", "11,n=1"};
    std::vector<std::future<ProtocolRun>> jobs;
    for (const auto& label : initial) {
        jobs.push_back(std::async(std::launch::async, [&protocol, label] { return protocol.run(label); }));
    }
    os << "n,P_n,instant_tag,initial_state_tag\n";
    for (std::size_t i = 0; i < initial.size(); ++i) {
        const ProtocolRun run = jobs[i].get();
        const std::string tag = "C" + initial[i].substr(0, 2) + "_n" + initial[i].substr(5);
        for (int p : {0, 2}) {
            const PhononDistribution d = phonon_distribution(run.after_pulse[p], protocol.basis());
            for (std::size_t n = 0; n < d.probabilities.size(); ++n) {
                os << n << "," << fmt(d.probabilities[n]) << ",end_pulse" << p + 1 << "," << tag << "\n";
            }
        }
    }
}

void run_sweep(const RunConfig& cfg, std::ostream& os) {
    if (!cfg.sweep || cfg.sweep->parameter.empty() || cfg.sweep->count < 2) {
        throw ConfigError(0, "sweep needs sweep_parameter and sweep_count >= 2");
    }
    const SweepSpec& s = *cfg.sweep;
    std::vector<SystemParams> points;
    for (int i = 0; i < s.count; ++i) {
        SystemParams p = cfg.params;
        apply_sweep_value(p, s.parameter, s.value(i));
        derive_couplings(p);
        points.push_back(p);
    }
    const ProtocolOptions popts = protocol_options(cfg);
    std::vector<std::future<GateReport>> jobs;
    for (const SystemParams& p : points) {
        jobs.push_back(std::async(std::launch::async,
                                  [p, popts, n = cfg.project_n] { return extract_gate_matrix(p, popts, n); }));
    }
    os << "parameter,fidelity,theta,blockade_max\n";
    for (int i = 0; i < s.count; ++i) {
        const GateReport r = jobs[i].get();
        os << fmt(s.value(i)) << "," << fmt(r.fidelity) << "," << fmt(r.theta) << ","
           << fmt(r.blockade_max) << "\n";
    }
}

void dispatch(RunKind kind, const RunConfig& cfg, const Options& o, std::ostream& os) {
    switch (kind) {
        case RunKind::params: return run_params(cfg, os);
        case RunKind::hamiltonian: return run_hamiltonian(cfg, o, os);
        case RunKind::evolve: return run_evolve(cfg, o, os);
        case RunKind::magnus_check: return run_magnus_check(cfg, o, os);
        case RunKind::gate: return run_gate(cfg, o, os);
        case RunKind::phonons: return run_phonons(cfg, os);
        case RunKind::sweep: return run_sweep(cfg, os);
    }
}

// The whole body is produced in memory first so a failing run never leaves
// a partial file behind; the file itself appears via rename.
void emit(const RunConfig& cfg, RunKind kind, const Options& o) {
    std::ostringstream body;
    body << header(cfg, to_string(kind));
    dispatch(kind, cfg, o, body);
    if (cfg.output.empty() || cfg.output == "-") {
        std::cout << body.str();
        return;
    }
    const std::filesystem::path target(cfg.output);
    std::filesystem::path tmp = target;
    tmp += ".tmp" + std::to_string(::getpid());
    {
        std::ofstream f(tmp, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open output '" + cfg.output + "' for writing");
        f << body.str();
        if (!f.flush()) {
            std::filesystem::remove(tmp);
            throw std::runtime_error("write to '" + cfg.output + "' failed");
        }
    }
    std::filesystem::rename(tmp, target);
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += (c == '\n') ? ' ' : c;
    }
    return out;
}

int fail(const std::string& kind, const std::string& message, int line = -1) {
    std::cerr << "error kind=" << kind;
    if (line >= 0) std::cerr << " line=" << line;
    std::cerr << " message=\"" << escape(message) << "\"\n";
    return kind == "usage" || kind == "config" ? 2 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"Ion-mediated Rydberg interaction and CZ gate simulator", "ionmed"};
    app.require_subcommand(0, 1);
    app.fallthrough();
    app.add_option("--config", o.config_path, "key = value config file")->check(CLI::ExistingFile);
    app.add_option("--out", o.out, "output path (default: stdout)");
    app.add_option("--dt-per-period", o.dt_per_period, "integrator steps per ion period");
    app.add_option("--n-max", o.n_max, "phonon truncation index");
    app.add_option("--initial", o.initial, "initial state label, e.g. 11,n=0");
    app.add_option("--project-n", o.project_n, "phonon number the gate matrix is projected on");
    app.add_option("--hamiltonian", o.hamiltonian, "full | effective");

    auto* params = app.add_subcommand("params", "derived couplings as table and key=value lines");
    auto* hamiltonian = app.add_subcommand("hamiltonian", "dump Hamiltonian terms at one time");
    hamiltonian->add_option("--t-us", o.t_us, "time within the pulse, us");
    hamiltonian->add_option("--pulse", o.pulse, "CZ pulse whose laser is on (1, 2, 3)");
    auto* evolve = app.add_subcommand("evolve", "amplitude trace through the CZ pulses, CSV");
    evolve->add_option("--label", o.labels, "basis state to record (repeatable)");
    evolve->add_option("--pulses", o.pulses, "number of CZ pulses to run (1-3)");
    evolve->add_option("--stride", o.stride, "record every k-th step");
    auto* magnus = app.add_subcommand("magnus-check", "second-order Magnus validation, CSV");
    magnus->add_option("--times", o.times, "number of sample times over one pi pulse");
    magnus->add_option("--betas", o.betas, "beta values for the scaling fit")->delimiter(',');
    auto* gate = app.add_subcommand("gate", "realized CZ gate report");
    gate->add_flag("--tune-theta", o.tune_theta, "adjust the target pulse so theta = pi");
    auto* phonons = app.add_subcommand("phonons", "phonon distributions after pulses 1 and 3, CSV");
    auto* sweep = app.add_subcommand("sweep", "gate figures over one parameter, CSV");
    sweep->add_option("--parameter", o.sweep_parameter, "parameter name");
    sweep->add_option("--min", o.sweep_min, "first value");
    sweep->add_option("--max", o.sweep_max, "last value");
    sweep->add_option("--count", o.sweep_count, "number of points (>= 2)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail("usage", e.what());
    }

    try {
        const RunConfig cfg = resolve_config(o);
        std::optional<RunKind> kind = cfg.run;
        const std::vector<std::pair<CLI::App*, RunKind>> subs{
            {params, RunKind::params},   {hamiltonian, RunKind::hamiltonian},
            {evolve, RunKind::evolve},   {magnus, RunKind::magnus_check},
            {gate, RunKind::gate},       {phonons, RunKind::phonons},
            {sweep, RunKind::sweep}};
        for (const auto& [sub, k] : subs) {
            if (sub->parsed()) kind = k;
        }
        if (!kind) return fail("usage", "no subcommand given and config has no 'run' key");
        emit(cfg, *kind, o);
    } catch (const ConfigError& e) {
        return fail("config", e.what(), e.line());
    } catch (const ParameterError& e) {
        return fail("parameter", e.what());
    } catch (const std::exception& e) {
        return fail("runtime", e.what());
    }
    return 0;
}
