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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "holodof/dof_analytic.hpp"
#include "holodof/geometry.hpp"
#include "holodof/quadrature.hpp"
#include "holodof/svd_oracle.hpp"

namespace holodof
{
//---------------------------------------------------------------------------//
// Configuration
//---------------------------------------------------------------------------//

enum class Method
{
    closed_form,
    exact_integral,
    svd,
    far_field,
};

const char *to_string(Method method);
// Throws InvalidArgument on an unknown name.
Method method_from_string(std::string_view name);
std::vector<Method> parse_method_list(std::string_view comma_separated);

enum class SweepVariable
{
    f_single,
    f2_given_f1,
};

// Base station (sides, center height h0) and the common user surface size.
struct GeometryConfig
{
    double wavelength = 0.01;
    double bs_side_x = 1.4;
    double bs_side_y = 1.4;
    double bs_height = 5.0;
    double user_side_x = 0.3;
    double user_side_y = 0.3;

    PlacedSurface bs() const;
    PlacedSurface user_at(double distance, double center_y = 0.0) const;
};

// A user placed either by distance (m) or by relative distance F (dB).
struct UserPlacement
{
    std::optional<double> distance;
    std::optional<double> f_db;
    std::optional<double> side_x;
    std::optional<double> side_y;
    double center_y = 0.0;
};

// Inclusive range start, start + step, ... up to stop (within 1e-9 step).
struct SweepRange
{
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;

    std::vector<double> values() const;
};

struct SvdSettings
{
    std::optional<double> wavelength;
    std::optional<double> bs_side_x;
    std::optional<double> bs_side_y;
    std::optional<double> bs_height;
    std::optional<double> user_side_x;
    std::optional<double> user_side_y;
    double scale = 1.0;
    double patch_fraction = 3.0;
    DofCountConfig count;
    bool occlusion = true;
    std::size_t memory_budget_mb = 2048;
    SvdPath path = SvdPath::dense;

    bool overrides_geometry() const;
};

struct ExperimentConfig
{
    GeometryConfig geometry;
    std::vector<UserPlacement> users;
    std::optional<SweepVariable> sweep_variable;
    std::optional<SweepRange> range;
    double f1_db = 20.0;
    std::vector<Method> methods;
    SingleUserMethod multiuser_single = SingleUserMethod::exact_integral;
    QuadratureSpec quadrature;
    SvdSettings svd;
    std::uint64_t seed = 0;

    // Scenario made of `users` (one user at F = 20 dB when none are given).
    Scenario scenario() const;
    // Geometry used by the SVD oracle after overrides and scaling.
    GeometryConfig svd_geometry() const;
    // The analytic scenario carried over to the SVD geometry: users keep
    // their relative distance F, then everything is scaled.
    Scenario svd_scenario(const Scenario &analytic) const;
    SvdOptions svd_options() const;
    SweepRange range_for(SweepVariable variable) const;
};

// Parses a JSON document; missing keys take the defaults above and unknown
// keys are rejected. Errors name the offending field as a path ($.svd.bs).
ExperimentConfig parse_config(std::string_view text);

//---------------------------------------------------------------------------//
// Result tables
//---------------------------------------------------------------------------//

// Empty, float, integer, or text (errors are "error: ..." strings).
using Cell = std::variant<std::monostate, double, std::int64_t, std::string>;

struct ResultTable
{
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    // Index of a column; throws InvalidArgument when absent.
    std::size_t column(std::string_view name) const;
    bool has_column(std::string_view name) const;
    const Cell &at(std::size_t row, std::string_view name) const;
};

bool is_error(const Cell &cell);
// Value of a numeric cell; nullopt for empty and text cells.
std::optional<double> numeric(const Cell &cell);

enum class Format
{
    csv,
    json,
};

Format format_from_string(std::string_view name);

// RFC-4180 CSV with a header row; floats at 12 significant digits.
std::string to_csv(const ResultTable &table);
// Array of row objects with identical keys, in column order.
std::string to_json(const ResultTable &table);
ResultTable table_from_json(std::string_view text);
std::string render(const ResultTable &table, Format format);
// Writes the rendered table to path; throws Error on I/O failure.
void emit(const ResultTable &table, Format format, const std::string &path);

//---------------------------------------------------------------------------//
// Experiments
//---------------------------------------------------------------------------//

struct RunOptions
{
    // Adds "time.<method>" columns in seconds. Off by default so repeated
    // runs produce identical files.
    bool timings = false;
};

// One row per user of the configured scenario, each treated on its own.
ResultTable run_single(const ExperimentConfig &config, const RunOptions &options = {});

// Multi-user report for the configured scenario.
DofReport run_multi(const ExperimentConfig &config);
ResultTable report_table(const DofReport &report);

// SVD oracle on the configured scenario's SVD counterpart.
SvdDofResult run_svd(const ExperimentConfig &config);

// Single-user DoF against F = d^2 / (Rx Ry).
ResultTable run_single_user_sweep(const ExperimentConfig &config, const RunOptions &options = {});

struct TwoUserSweep
{
    ResultTable table;
    double d1 = 0.0;
    // Nearest d2 at which the users stop blocking each other (infinite when
    // the base station is too low for the closed-form condition).
    double threshold_d2 = 0.0;
    double threshold_f2_db = 0.0;
    // 100 (1 - mean(total / sum)) over rows with a positive blocking term.
    std::optional<double> average_reduction_percent;
    std::optional<double> max_total_f2_db;
    bool max_is_blocked = false;
};

// Second user swept in F2 with the first fixed at F1.
TwoUserSweep run_two_user_sweep(const ExperimentConfig &config, const RunOptions &options = {});

// Pointwise check of B(S1) + B(S2) - B(S_blocked) against the raster union
// measure, on an n x n grid of base-station viewpoints, for the first two
// users of the scenario.
ResultTable run_measure_oracle(const ExperimentConfig &config, int viewpoints, int resolution);
} // namespace holodof
