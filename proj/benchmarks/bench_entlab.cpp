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

#include <cmath>
#include <vector>

#include <benchmark/benchmark.h>

#include "entlab/locc/dilution.hpp"
#include "entlab/locc/protocol_ir.hpp"
#include "entlab/locc/standardize.hpp"
#include "entlab/qmath/random.hpp"
#include "entlab/sigsub/sigsub.hpp"
#include "entlab/spectrum/class_spectrum.hpp"

namespace {

using namespace entlab;

const spectrum::BaseSpectrum kQuarter = spectrum::BaseSpectrum::from_probs({0.75, 0.25});

void BM_TensorPowerBinary(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(spectrum::tensor_power_spectrum(kQuarter, n));
}
BENCHMARK(BM_TensorPowerBinary)->RangeMultiplier(4)->Range(64, 16384);

void BM_TensorPowerTernary(benchmark::State& state) {
    const auto p = spectrum::BaseSpectrum::from_probs({0.5, 0.3, 0.2});
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(spectrum::tensor_power_spectrum(p, n));
}
BENCHMARK(BM_TensorPowerTernary)->RangeMultiplier(4)->Range(16, 1024);

void BM_SigDim(benchmark::State& state) {
    const auto spec = spectrum::tensor_power_spectrum(kQuarter, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(sigsub::sig_dim(spec, 0.95));
}
BENCHMARK(BM_SigDim)->RangeMultiplier(4)->Range(64, 16384);

void BM_BlockDilution(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto spec = spectrum::tensor_power_spectrum(kQuarter, n);
    const int c = static_cast<int>(2.0 * std::sqrt(static_cast<double>(n)));
    for (auto _ : state) benchmark::DoNotOptimize(locc::build_block_dilution(spec, c));
}
BENCHMARK(BM_BlockDilution)->RangeMultiplier(4)->Range(64, 4096);

void BM_Standardize(benchmark::State& state) {
    qmath::Rng rng(7);
    std::vector<locc::ToyInstance> programs;
    for (int i = 0; i < 16; ++i) programs.push_back(locc::random_toy_ir(rng));
    std::size_t i = 0;
    for (auto _ : state) {
        const auto& toy = programs[i++ % programs.size()];
        benchmark::DoNotOptimize(locc::standardize(toy.ir, toy.input));
    }
}
BENCHMARK(BM_Standardize);

}  // namespace

BENCHMARK_MAIN();
