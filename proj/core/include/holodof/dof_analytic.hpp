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
#include <string>
#include <vector>

#include "holodof/geometry.hpp"
#include "holodof/quadrature.hpp"

namespace holodof
{
enum class SingleUserMethod
{
    exact_integral,
    closed_form,
};

const char *to_string(SingleUserMethod method);

struct UserDof
{
    std::size_t user = 0;
    double dof = 0.0;
    SingleUserMethod method = SingleUserMethod::exact_integral;
};

struct BlockedDof
{
    std::size_t occluder = 0;
    std::size_t target = 0;
    double dof = 0.0;
};

// Effective DoF of a multi-user scenario. User indices refer to the
// scenario's users, which are sorted by distance.
struct DofReport
{
    std::vector<UserDof> per_user;
    std::vector<BlockedDof> pairwise_blocked;
    double total = 0.0;
    double clamped_total = 0.0;  // max(total, 1)
    std::vector<std::string> warnings;

    double single_sum() const;
    double blocked_sum() const;
};

struct MultiuserOptions
{
    SingleUserMethod single = SingleUserMethod::exact_integral;
    QuadratureSpec quadrature;
};

// Small-surface closed form, the 0th-order Taylor reduction of the exact
// integral in the user's coordinates. Throws on non-positive distance or sides.
double dof_single_closed(const PlacedSurface &bs, const PlacedSurface &user, double wavelength);

// True when max(Sx, Sy) / d > 0.1, i.e. outside the closed form's regime.
bool closed_form_regime_warning(const PlacedSurface &bs, const PlacedSurface &user);

// (1 / 4 pi^2) * integral over the base station of the closed-form local
// bandwidth of the user's rectangle.
double dof_single_exact(const PlacedSurface &bs, const PlacedSurface &user, double wavelength,
                        const QuadratureSpec &spec = {});

// DoF lost because occluder hides part of target, integrated piecewise over
// the base-station region where the shadow is non-empty. Zero when the two
// never shadow each other.
double dof_blocked(const PlacedSurface &bs, const PlacedSurface &occluder, const PlacedSurface &target,
                   double wavelength, const QuadratureSpec &spec = {});

// Sum of single-user DoF minus every pairwise blocking term. Rejects
// co-planar users and targets shadowed by two occluders at once.
DofReport dof_multiuser(const Scenario &scenario, const MultiuserOptions &options = {});

// Paraxial plane-wave count Sx Sy Rx Ry / (lambda d)^2, and its value
// clamped from below at one.
double paraxial_dof(const PlacedSurface &bs, const PlacedSurface &user, double wavelength);
double far_field_reference(const PlacedSurface &bs, const PlacedSurface &user, double wavelength);
} // namespace holodof
