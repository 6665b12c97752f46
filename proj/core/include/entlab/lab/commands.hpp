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


#pragma once

#include <functional>
#include <string>
#include <vector>

#include "entlab/lab/config.hpp"
#include "entlab/spectrum/base_spectrum.hpp"

namespace entlab::lab {

struct BerryEsseenRow {
    int n = 0;
    double a = 0.0, b = 0.0;
    double residual = 0.0, bound = 0.0;
    bool pass = false;
};

struct InefficiencyRow {
    int n = 0;
    double nE = 0.0;
    double lower_bits = 0.0, upper_bits = 0.0;
    double excess_over_nE = 0.0;
    double alpha_sqrt_n = 0.0;
};

struct CommunicationRow {
    int n = 0;
    double epsilon = 0.0;
    int c_star = 0;
    double alpha_sqrt_n = 0.0;
    double ratio = 0.0;         // c_star / alpha_sqrt_n
    double target_error = 0.0;  // error of the protocol at c_star
    bool certificate_consistent = false;
    std::string certificate_json;
};

struct ConcentrationRow {
    int n = 0;
    double nE = 0.0;
    double expected_yield = 0.0;
    double deficit = 0.0;
    double deficit_over_sqrt_n = 0.0;
};

/// (a, b) cells for one n: all ordered pairs of a grid of ab_grid log2
/// eigenvalues spaced over -nE +/- ab_span sqrt(n) alpha; each cell is the
/// interval between its two coordinates.
std::vector<BerryEsseenRow> berry_esseen_rows(const spectrum::BaseSpectrum& p, int n, int grid, double span);
InefficiencyRow inefficiency_row(const spectrum::BaseSpectrum& p, int n, double eps0);
/// Smallest block-dilution budget reaching the error target, by bisection on
/// [0, ceil(log2 rank)], and the certificate of the resulting run.
CommunicationRow communication_row(const spectrum::BaseSpectrum& p, int n, double epsilon);
ConcentrationRow concentration_row(const spectrum::BaseSpectrum& p, int n);

/// Runs fn(i) for i in [0, count) on `threads` workers. Results are stored by
/// index, so the output order does not depend on scheduling. The first
/// exception thrown by a task is rethrown.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

struct CommandResult {
    std::vector<std::string> files;  // written, relative to out_dir
    std::string summary;
};

/// Per-n class spectra (spectrum_n<N>.json) and berry_esseen.csv.
CommandResult cmd_spectrum(const ExperimentConfig& config);
/// inefficiency.csv and growth_fit.csv (one block per delta).
CommandResult cmd_inefficiency(const ExperimentConfig& config);
/// communication.csv, certificate_n<N>_eps<E>.json, and budget_sweep.csv
/// when budgets are configured.
CommandResult cmd_communication(const ExperimentConfig& config);
/// concentration.csv.
CommandResult cmd_concentration(const ExperimentConfig& config);

struct SpotCheck {
    std::string file;
    std::size_t rows = 0;
    std::size_t mismatches = 0;
};

/// Re-derives every row of the CSV files present in out_dir from the module
/// operations and compares the formatted text.
std::vector<SpotCheck> spot_check(const ExperimentConfig& config);

}  // namespace entlab::lab
