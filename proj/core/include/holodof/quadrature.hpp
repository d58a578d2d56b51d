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

#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "holodof/geometry.hpp"

namespace holodof
{
// Tensor Gauss-Legendre integration over rectangles with adaptive bisection.
//
// Every panel is integrated with base_order and 2 * base_order points per
// axis; the difference is the panel's error estimate. The panel with the
// largest estimate is split across its longer side (x on ties) until the
// summed estimate drops to rel_tol * |value| + abs_floor.
struct QuadratureSpec
{
    int base_order = 8;
    int max_depth = 12;
    double rel_tol = 1e-9;
    double abs_floor = 0.0;

    void validate() const;
};

struct QuadratureResult
{
    double value = 0.0;
    double error = 0.0;
    std::size_t panels = 0;
};

struct GaussRule
{
    std::vector<double> nodes;   // on [-1, 1], ascending
    std::vector<double> weights;
};

// Cached Gauss-Legendre rule of the given order (order >= 1).
const GaussRule &gauss_legendre(int order);

using ScalarField = std::function<double(double, double)>;

// Throws NonConvergence when every remaining panel sits at max_depth and the
// tolerance is still not met, and Error on a non-finite integrand value.
QuadratureResult integrate_rect(const ScalarField &f, const Rect2D &rect,
                                const QuadratureSpec &spec = {});
} // namespace holodof
