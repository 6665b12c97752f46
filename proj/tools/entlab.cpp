// Copyright 2026 The entlab Authors
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
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "entlab/common.hpp"
#include "entlab/lab/commands.hpp"
#include "entlab/lab/config.hpp"
#include "entlab/lab/selftest.hpp"

namespace {

enum Exit { kOk = 0, kFailure = 1, kValidation = 2, kCap = 3, kIo = 4 };

struct Overrides {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<int> threads;
    std::optional<std::string> n_grid;
    std::optional<std::string> p;
    std::optional<double> epsilon;
    std::optional<double> delta;
    std::optional<double> eps0;
    std::optional<int> ab_grid;
    std::optional<std::string> budgets;
};

entlab::lab::ExperimentConfig resolve(const Overrides& o) {
    using namespace entlab::lab;
    ExperimentConfig c;
    if (!o.config_path.empty()) c = load_config(o.config_path);
    if (o.seed) c.seed = *o.seed;
    if (o.out) c.out_dir = *o.out;
    if (o.threads) c.threads = *o.threads;
    if (o.n_grid) c.n_grid = parse_int_list(*o.n_grid);
    if (o.p) c.base_probs = parse_double_list(*o.p);
    if (o.epsilon) c.epsilons = {*o.epsilon};
    if (o.delta) c.deltas = {*o.delta};
    if (o.eps0) c.eps0 = *o.eps0;
    if (o.ab_grid) c.ab_grid = *o.ab_grid;
    if (o.budgets) c.budgets = parse_int_list(*o.budgets);
    c.validate();
    return c;
}

void report(const entlab::lab::CommandResult& r, const std::string& dir) {
    for (const auto& f : r.files) std::cout << "wrote " << dir << "/" << f << "\n";
    if (!r.summary.empty()) std::cout << r.summary << (r.summary.back() == '\n' ? "" : "\n");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"entlab: entanglement dilution and concentration experiments"};
    app.require_subcommand(1);
    app.fallthrough();

    Overrides o;
    app.add_option("--config", o.config_path, "Flat key = value config file");
    app.add_option("--seed", o.seed, "64-bit seed");
    app.add_option("--out", o.out, "Output directory");
    app.add_option("--threads", o.threads, "Worker threads");
    app.add_option("--n-grid", o.n_grid, "Comma-separated copy counts, ascending");
    app.add_option("--p", o.p, "Comma-separated base Schmidt probabilities");
    app.add_option("--epsilon", o.epsilon, "Dilution error target");
    app.add_option("--delta", o.delta, "Significant-subspace level");
    app.add_option("--eps0", o.eps0, "Dilution error for the inefficiency table");
    app.add_option("--ab-grid", o.ab_grid, "Points per axis of the Berry-Esseen grid");
    app.add_option("--budgets", o.budgets, "Comma-separated budgets for the sweep table");

    auto* spectrum = app.add_subcommand("spectrum", "Class spectra and Berry-Esseen residual table");
    auto* inefficiency = app.add_subcommand("inefficiency", "Minimal dilution dimension versus nE");
    auto* communication = app.add_subcommand("communication", "Minimal communication budget per n, with certificates");
    auto* concentration = app.add_subcommand("concentration", "Concentration yield and deficit per n");
    auto* selftest = app.add_subcommand("selftest", "Run the seeded invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kValidation;
    }

    try {
        const auto cfg = resolve(o);
        using namespace entlab::lab;
        if (*spectrum) report(cmd_spectrum(cfg), cfg.out_dir);
        if (*inefficiency) report(cmd_inefficiency(cfg), cfg.out_dir);
        if (*communication) report(cmd_communication(cfg), cfg.out_dir);
        if (*concentration) report(cmd_concentration(cfg), cfg.out_dir);
        if (*selftest) {
            const auto r = run_selftest(cfg.seed, cfg.out_dir + "/selftest", cfg.threads);
            std::cout << r.to_text();
            return r.all_pass() ? kOk : kFailure;
        }
        return kOk;
    } catch (const entlab::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kValidation;
    } catch (const entlab::CapExceededError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kCap;
    } catch (const entlab::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailure;
    }
}
