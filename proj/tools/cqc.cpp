// Copyright 2026 The cqc-bounds Authors
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

#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cqc/harness.hpp"

namespace {

struct Flags {
    std::size_t dim = 3;
    std::size_t n = 0;
    std::string state;
    std::optional<double> p_min;
    std::optional<double> p_max;
    std::size_t p_steps = 200;
    std::optional<std::uint64_t> seed;
    unsigned threads = 0;
    std::string out;
    std::string format = "csv";
    double hold_tol = cqc::kHoldTol;
    double warn_tol = cqc::kWarnTol;
    bool full = false;
    bool alt_sanchez = false;
    bool numeric = false;
    bool large_numeric = false;
    bool plot = false;
};

void add_common(CLI::App* sub, Flags& f) {
    sub->add_option("--dim", f.dim, "Local dimension (prime, <= 23)");
    sub->add_option("--n", f.n, "Number of trials (default depends on command and dimension)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--state", f.state, "pure | mixed | isotropic | separable-filtered")
        ->check(CLI::IsMember({"pure", "mixed", "isotropic", "separable-filtered"}));
    sub->add_option("--p-min", f.p_min, "Lower end of the isotropic p range");
    sub->add_option("--p-max", f.p_max, "Upper end of the isotropic p range");
    sub->add_option("--p-steps", f.p_steps, "Grid points for sweep-isotropic");
    sub->add_option("--seed", f.seed, "Master seed (printed to stderr when omitted)");
    sub->add_option("--threads", f.threads, "Worker threads, 0 = available parallelism");
    sub->add_option("--out", f.out, "Output path (stdout when omitted)");
    sub->add_option("--format", f.format, "csv | jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
    sub->add_option("--hold-tol", f.hold_tol, "Gaps >= -hold-tol are HOLD");
    sub->add_option("--warn-tol", f.warn_tol, "Gaps in (-warn-tol, -hold-tol) are WARN");
    sub->add_flag("--full", f.full, "Larger default trial counts");
    sub->add_flag("--alt-sanchez-constant", f.alt_sanchez, "Use (d+1)(log2 d - 1) in the Sanchez bound");
    sub->add_flag("--plot", f.plot, "Also write <out>.svg");
}

cqc::StateKind parse_state(const std::string& s) {
    static const std::map<std::string, cqc::StateKind> kinds = {
        {"pure", cqc::StateKind::Pure},
        {"mixed", cqc::StateKind::Mixed},
        {"isotropic", cqc::StateKind::Isotropic},
        {"separable-filtered", cqc::StateKind::SeparableFiltered},
    };
    return kinds.at(s);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monte-Carlo checks of mutual-information uncertainty conjectures over mutually unbiased bases"};
    app.require_subcommand(1);
    Flags f;

    const std::pair<cqc::Command, const char*> commands[] = {
        {cqc::Command::CheckCqc, "Two-basis conjecture on random states"},
        {cqc::Command::CheckEcqc, "All-basis conjecture on random states"},
        {cqc::Command::SweepIsotropic, "Isotropic family over a p grid"},
        {cqc::Command::SuffcondScatter, "Filtered separable qubit pairs (d = 2)"},
        {cqc::Command::DumpMubs, "Print the MUB family"},
        {cqc::Command::BoundAudit, "Slacks of the proven uncertainty relations"},
    };
    std::map<CLI::App*, cqc::Command> by_app;
    for (const auto& [cmd, help] : commands) {
        auto* sub = app.add_subcommand(std::string(cqc::to_string(cmd)), help);
        add_common(sub, f);
        if (cmd == cqc::Command::SweepIsotropic) {
            sub->add_flag("--numeric", f.numeric, "Build each state and evaluate numerically");
            sub->add_flag("--large-numeric", f.large_numeric, "Allow numeric sweeps up to d = 7");
        }
        by_app[sub] = cmd;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    cqc::ExperimentConfig cfg;
    for (const auto& [sub, cmd] : by_app) {
        if (sub->parsed()) cfg.command = cmd;
    }
    cfg.dim = f.dim;
    cfg.n_trials = f.n;
    if (!f.state.empty()) cfg.state_kind = parse_state(f.state);
    cfg.p_min = f.p_min;
    cfg.p_max = f.p_max;
    cfg.p_steps = f.p_steps;
    cfg.seed = f.seed;
    cfg.threads = f.threads;
    cfg.out_path = f.out;
    cfg.format = f.format == "jsonl" ? cqc::OutputFormat::Jsonl : cqc::OutputFormat::Csv;
    cfg.hold_tol = f.hold_tol;
    cfg.warn_tol = f.warn_tol;
    cfg.full = f.full;
    cfg.sanchez = f.alt_sanchez ? cqc::SanchezConstant::LogD : cqc::SanchezConstant::LogDPlusOne;
    cfg.numeric = f.numeric;
    cfg.large_numeric = f.large_numeric;
    cfg.plot = f.plot;
    return cqc::run(cfg);
}
