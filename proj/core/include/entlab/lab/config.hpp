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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace entlab::lab {

/// Experiment parameters. File format: one `key = value` per line, `#`
/// starts a comment, lists are comma separated.
///
///   p        = 0.75, 0.25      base Schmidt probabilities
///   n_grid   = 64, 256, 1024   copies, ascending
///   delta    = 0.95            significant-subspace levels for the growth fit
///   epsilon  = 0.1             dilution error targets (communication)
///   eps0     = 0.01            dilution error (inefficiency)
///   budgets  = 0, 8, 16        extra budgets tabulated by communication
///   ab_grid  = 50              points per axis of the Berry-Esseen grid
///   ab_span  = 3               grid half-width in standard deviations
///   seed     = 1
///   out      = entlab_out
///   threads  = 1
struct ExperimentConfig {
    std::vector<double> base_probs{0.75, 0.25};
    std::vector<int> n_grid{64, 256, 1024, 4096};
    std::vector<double> deltas{0.95};
    std::vector<double> epsilons{0.1};
    double eps0 = 0.01;
    std::vector<int> budgets;
    int ab_grid = 50;
    double ab_span = 3.0;
    std::uint64_t seed = 1;
    std::string out_dir = "entlab_out";
    int threads = 1;

    /// Throws ValidationError on empty or non-ascending grids and out-of-range values.
    void validate() const;
};

std::vector<double> parse_double_list(std::string_view text);
std::vector<int> parse_int_list(std::string_view text);

/// Applies the keys in `text` on top of `base`. Unknown keys and malformed
/// values raise ValidationError.
ExperimentConfig parse_config(std::string_view text, ExperimentConfig base = {});

/// Reads a config file; IoError when it cannot be opened.
ExperimentConfig load_config(const std::string& path, ExperimentConfig base = {});

/// Inverse of parse_config.
std::string format_config(const ExperimentConfig& config);

}  // namespace entlab::lab
