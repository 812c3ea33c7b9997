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

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "ionmed/config.hpp"

namespace ionmed {
namespace {

void expect_close(double a, double b, const char* what) {
    EXPECT_NEAR(a, b, 1e-12 * std::max(std::abs(a), std::abs(b))) << what;
}

void expect_error(const std::string& text, int line, const std::string& fragment) {
    try {
        parse_config(text);
        ADD_FAILURE() << "accepted: " << text;
    } catch (const ConfigError& e) {
        EXPECT_EQ(e.line(), line) << e.what();
        EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
    }
}

TEST(Config, ShippedDefaultMatchesReferenceParameters) {
    const RunConfig cfg = load_config(IONMED_SOURCE_DIR "/configs/default.conf");
    const SystemParams ref = reference_params();
    const SystemParams& p = cfg.params;
    expect_close(p.ion_mass, ref.ion_mass, "ion_mass");
    expect_close(p.atom_mass, ref.atom_mass, "atom_mass");
    expect_close(p.omega_i, ref.omega_i, "omega_i");
    expect_close(p.z1, ref.z1, "z1");
    expect_close(p.z2, ref.z2, "z2");
    expect_close(p.c4, ref.c4, "c4");
    expect_close(p.c6, ref.c6, "c6");
    expect_close(p.rabi1, ref.rabi1, "rabi1");
    expect_close(p.rabi2, ref.rabi2, "rabi2");
    expect_close(p.gamma, ref.gamma, "gamma");
    EXPECT_EQ(p.n_max, 5);
    EXPECT_FALSE(p.detuning1.has_value());
    EXPECT_EQ(cfg.initial, "11,n=0");
    EXPECT_EQ(cfg.steps_per_period, 200);

    std::ifstream f(IONMED_SOURCE_DIR "/configs/default.conf");
    std::stringstream ss;
    ss << f.rdbuf();
    EXPECT_EQ(ss.str(), default_config_text());
}

TEST(Config, EmptyFileGivesValidDefaults) {
    const RunConfig cfg = parse_config("");
    EXPECT_EQ(cfg.params.n_max, reference_params().n_max);
    EXPECT_EQ(cfg.params.omega_i, reference_params().omega_i);
    EXPECT_FALSE(cfg.run.has_value());
    EXPECT_NO_THROW(derive_couplings(cfg.params));
    EXPECT_NO_THROW(parse_config("# only a comment\n\n   \n"));
}

TEST(Config, RejectsNegativeTrapFrequencyNamingKey) {
    expect_error("omega_i_mhz_over_2pi = -1\n", 1, "omega_i_mhz_over_2pi");
}

TEST(Config, ReportsLineNumbers) {
    expect_error("n_max = 5\n\nbogus_key = 1\n", 3, "unknown key 'bogus_key'");
    expect_error("# c\nomega_i = 0.32\n", 2, "unit suffix");
    expect_error("n_max = 5\nn_max = 6\n", 2, "duplicate");
    expect_error("rabi1_mhz_over_2pi = fast\n", 1, "not a number");
    expect_error("n_max = 1\n", 1, "n_max");
    expect_error("just text\n", 1, "key = value");
    expect_error("sweep_count = 1\n", 1, "sweep_count");
    expect_error("run = dance\n", 1, "dance");
    expect_error("c6_h_thz_um6 = 1\nc6_h_ghz_um6 = 1\n", 2, "one unit");
}

TEST(Config, WholeFileInvariantsChecked) {
    expect_error("z1_um = 10.5\n", 1, "opposite sides");
    expect_error("z1_um = -0.5\n", 1, "atom 1");
    expect_error("initial = 1x,n=0\n", 0, "1x");
    expect_error("sweep_min = 1\n", 0, "sweep_parameter");
    expect_error("project_n = 9\n", 0, "project_n");
}

TEST(Config, ParsesEveryKey) {
    const RunConfig cfg = parse_config(
        "ion_mass_u = 9\natom_mass_u = 7\nomega_i_mhz_over_2pi = 1\nz1_um = -12\nz2_um = 14\n"
        "c4_au = -1e12\nc6_h_ghz_um6 = -16690\nrabi1_mhz_over_2pi = 0.2\nrabi2_mhz_over_2pi = 0.3\n"
        "detuning1_mhz_over_2pi = 0.5\ndetuning2_mhz_over_2pi = auto\ngamma_khz_over_2pi = 0\n"
        "n_max = 4\nrun = magnus-check\nhamiltonian = full\ndt_per_period = 77\nproject_n = 1\n"
        "initial = r0,n=1\noutput = out.csv\nsweep_parameter = separation_um\nsweep_min = 15\n"
        "sweep_max = 30\nsweep_count = 8\n");
    expect_close(cfg.params.ion_mass, 9 * si::atomic_mass_unit, "ion_mass");
    expect_close(cfg.params.z2, 14e-6, "z2");
    expect_close(cfg.params.c6, reference_params().c6, "c6 in GHz");
    expect_close(*cfg.params.detuning1, mhz_over_2pi(0.5), "detuning1");
    EXPECT_FALSE(cfg.params.detuning2.has_value());
    EXPECT_EQ(cfg.params.gamma, 0.0);
    EXPECT_EQ(cfg.run, RunKind::magnus_check);
    EXPECT_EQ(cfg.hamiltonian, HamiltonianKind::full);
    EXPECT_EQ(cfg.steps_per_period, 77);
    EXPECT_EQ(cfg.project_n, 1);
    EXPECT_EQ(cfg.output, "out.csv");
    ASSERT_TRUE(cfg.sweep.has_value());
    EXPECT_EQ(cfg.sweep->count, 8);
    EXPECT_DOUBLE_EQ(cfg.sweep->value(0), 15.0);
    EXPECT_DOUBLE_EQ(cfg.sweep->value(7), 30.0);
}

TEST(Config, HashIsStableAndSensitive) {
    const RunConfig a = parse_config("n_max = 5\n");
    const RunConfig b = parse_config("# same\nn_max=5");
    const RunConfig c = parse_config("n_max = 6\n");
    EXPECT_EQ(config_hash(a), config_hash(b));
    EXPECT_NE(config_hash(a), config_hash(c));
    EXPECT_EQ(config_hash(a).size(), 16u);
    EXPECT_EQ(canonical_text(a), canonical_text(b));
}

TEST(Config, SweepValues) {
    SystemParams p = reference_params();
    apply_sweep_value(p, "separation_um", 30.0);
    EXPECT_DOUBLE_EQ(p.z1, -15e-6);
    EXPECT_DOUBLE_EQ(p.z2, 15e-6);
    apply_sweep_value(p, "rabi_mhz_over_2pi", 0.2);
    EXPECT_EQ(p.rabi1, p.rabi2);
    EXPECT_THROW(apply_sweep_value(p, "colour", 1.0), std::invalid_argument);
}

TEST(Config, RunKindNames) {
    EXPECT_EQ(parse_run_kind("magnus-check"), RunKind::magnus_check);
    EXPECT_EQ(to_string(RunKind::sweep), "sweep");
    EXPECT_THROW(parse_run_kind("magnus_check"), std::invalid_argument);
}

TEST(Config, MissingFile) { EXPECT_THROW(load_config("/nonexistent/ionmed.conf"), ConfigError); }

}  // namespace
}  // namespace ionmed
