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

#include <cmath>
#include <vector>

#include <benchmark/benchmark.h>

#include "holodof/wavenumber.hpp"

using namespace holodof;

namespace
{
constexpr double kKappa0 = 2 * M_PI / 0.01;
const Rect2D kUser = Rect2D::from_bounds(-0.15, 0.15, -0.15, 0.15);

void BM_BandwidthClosedForm(benchmark::State &state)
{
    double rx = 0.0;
    for (auto _ : state)
    {
        benchmark::DoNotOptimize(bandwidth_closed_form({rx, 5.0}, kUser, 14.0, kKappa0));
        rx += 1e-9;
    }
}
BENCHMARK(BM_BandwidthClosedForm);

void BM_BandwidthQuadrature(benchmark::State &state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(bandwidth_quadrature({0.3, 5.0}, kUser, 14.0, kKappa0, 1e-9));
}
BENCHMARK(BM_BandwidthQuadrature);

void BM_UnionRaster(benchmark::State &state)
{
    const std::vector<ImagedRect> s{{kUser, 10.0}, {kUser, 10.5}};
    const int resolution = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(union_measure_mc({0.2, 0.1}, s, kKappa0, resolution));
}
BENCHMARK(BM_UnionRaster)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
} // namespace

BENCHMARK_MAIN();
