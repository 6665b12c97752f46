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
#include <vector>

namespace entlab::lab {

struct SelfTestCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SelfTestReport {
    std::vector<SelfTestCheck> checks;
    bool all_pass() const;
    std::string to_text() const;
};

/// Seeded invariant suite over every module, sized to finish in seconds,
/// followed by a spot check of freshly written CSV outputs under scratch_dir.
SelfTestReport run_selftest(std::uint64_t seed, const std::string& scratch_dir, int threads = 1);

}  // namespace entlab::lab
