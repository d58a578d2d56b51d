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

#include "holodof/dof_analytic.hpp"

using namespace holodof;

namespace
{
const PlacedSurface kBs{1.4, 1.4, 5.0, 0.0};

void BM_SingleClosed(benchmark::State &state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(dof_single_closed(kBs, {0.3, 0.3, 0.0, 14.0}, 0.01));
}
BENCHMARK(BM_SingleClosed);

void BM_SingleExact(benchmark::State &state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(dof_single_exact(kBs, {0.3, 0.3, 0.0, 14.0}, 0.01));
}
BENCHMARK(BM_SingleExact)->Unit(benchmark::kMicrosecond);

void BM_Blocked(benchmark::State &state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(dof_blocked(kBs, {0.3, 0.3, 0.0, 14.0}, {0.3, 0.3, 0.0, 14.5}, 0.01));
}
BENCHMARK(BM_Blocked)->Unit(benchmark::kMicrosecond);

void BM_Multiuser(benchmark::State &state)
{
    const Scenario s(0.01, kBs, {{0.3, 0.3, 0.0, 14.0}, {0.3, 0.3, 0.0, 14.5}, {0.3, 0.3, 0.0, 16.0}});
    for (auto _ : state)
        benchmark::DoNotOptimize(dof_multiuser(s).total);
}
BENCHMARK(BM_Multiuser)->Unit(benchmark::kMillisecond);
} // namespace

BENCHMARK_MAIN();
