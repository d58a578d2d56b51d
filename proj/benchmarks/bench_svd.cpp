// SPDX-License-Identifier: Apache-2.0
//
// holodof: degrees of freedom of near-field holographic MIMO channels
// Copyright (C) 2026 The holodof authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <benchmark/benchmark.h>

#include "holodof/svd_oracle.hpp"

using namespace holodof;

namespace
{
// Reduced-scale geometry: 42 x 42 base-station patches, 12 x 12 per user.
Scenario reduced(double f_distance)
{
    return Scenario(0.05, {0.7, 0.7, 0.0, 0.0}, {{0.2, 0.2, 0.0, f_distance}});
}

void BM_Assemble(benchmark::State &state)
{
    const Scenario s = reduced(2.2);
    const auto grids = discretize_scenario(s, s.wavelength() / 3);
    for (auto _ : state)
        benchmark::DoNotOptimize(assemble(s, grids).entries.data());
}
BENCHMARK(BM_Assemble)->Unit(benchmark::kMillisecond);

void BM_DenseSpectrum(benchmark::State &state)
{
    const Scenario s = reduced(2.2);
    const auto h = assemble(s, discretize_scenario(s, s.wavelength() / 3));
    for (auto _ : state)
        benchmark::DoNotOptimize(singular_spectrum(h.entries).values.data());
}
BENCHMARK(BM_DenseSpectrum)->Unit(benchmark::kMillisecond);

void BM_TopK(benchmark::State &state)
{
    const Scenario s = reduced(2.2);
    const auto h = assemble(s, discretize_scenario(s, s.wavelength() / 3));
    const DenseOperator op(h.entries);
    for (auto _ : state)
        benchmark::DoNotOptimize(singular_spectrum_topk(op, static_cast<std::size_t>(state.range(0))).values.data());
}
BENCHMARK(BM_TopK)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_MatrixFreeTopK(benchmark::State &state)
{
    const Scenario s = reduced(2.2);
    const ChannelOperator op(s, discretize_scenario(s, s.wavelength() / 3));
    for (auto _ : state)
        benchmark::DoNotOptimize(singular_spectrum_topk(op, 4).values.data());
}
BENCHMARK(BM_MatrixFreeTopK)->Unit(benchmark::kMillisecond);
} // namespace

BENCHMARK_MAIN();
