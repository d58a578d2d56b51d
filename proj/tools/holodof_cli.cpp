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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "holodof/dof_analytic.hpp"
#include "holodof/error.hpp"
#include "holodof/experiments.hpp"
#include "holodof/svd_oracle.hpp"

namespace
{
using namespace holodof;

struct CommonArgs
{
    std::string config_path;
    std::string out = "-";
    std::string format = "csv";
    std::string methods;
    std::optional<std::uint64_t> seed;
    std::optional<double> svd_scale;
    bool timings = false;
};

void add_common(CLI::App &cmd, CommonArgs &args)
{
    cmd.add_option("--config", args.config_path, "JSON configuration file (defaults apply when omitted)")
        ->check(CLI::ExistingFile);
    cmd.add_option("--out", args.out, "output file, '-' for standard output");
    cmd.add_option("--format", args.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    cmd.add_option("--methods", args.methods, "comma separated: closed_form,exact_integral,svd,far_field");
    cmd.add_option("--seed", args.seed, "seed for randomized SVD starts");
    cmd.add_option("--svd-scale", args.svd_scale, "uniform length scale for the SVD geometry")
        ->check(CLI::PositiveNumber);
    cmd.add_flag("--timings", args.timings, "add per-method wall time columns");
}

std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot read " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

ExperimentConfig load(const CommonArgs &args)
{
    ExperimentConfig config = parse_config(args.config_path.empty() ? std::string() : read_file(args.config_path));
    if (!args.methods.empty())
        config.methods = parse_method_list(args.methods);
    if (args.seed)
        config.seed = *args.seed;
    if (args.svd_scale)
        config.svd.scale = *args.svd_scale;
    return config;
}

void warn(const std::string &message)
{
    std::cerr << "holodof: warning: " << message << '\n';
}

void warn_regime(const Scenario &scenario)
{
    for (std::size_t u = 0; u < scenario.users().size(); ++u)
    {
        if (closed_form_regime_warning(scenario.bs(), scenario.users()[u]))
            warn("user " + std::to_string(u) +
                 ": surface side exceeds a tenth of the distance, closed form may be inaccurate");
    }
}

void print_summary(const TwoUserSweep &sweep)
{
    char line[256];
    std::snprintf(line, sizeof line, "d1 = %.6g m, blocking threshold d2* = %.6g m (F2* = %.4f dB)\n", sweep.d1,
                  sweep.threshold_d2, sweep.threshold_f2_db);
    std::cerr << line;
    if (sweep.average_reduction_percent)
    {
        std::snprintf(line, sizeof line, "average reduction over blocked rows: %.2f%%\n",
                      *sweep.average_reduction_percent);
        std::cerr << line;
    }
    if (sweep.max_total_f2_db)
    {
        std::snprintf(line, sizeof line, "maximum total at F2 = %.4f dB (%s)\n", *sweep.max_total_f2_db,
                      sweep.max_is_blocked ? "blocked" : "unblocked");
        std::cerr << line;
    }
}
} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Effective degrees of freedom of near-field holographic MIMO channels"};
    app.require_subcommand(1);

    CommonArgs args;
    auto *single = app.add_subcommand("single", "per-user DoF for one scenario");
    auto *multi = app.add_subcommand("multi", "multi-user DoF report with blocking terms");
    auto *svd = app.add_subcommand("svd", "SVD count of the discretized channel");
    auto *sweep_single = app.add_subcommand("sweep-single", "single-user sweep over relative distance");
    auto *sweep_two = app.add_subcommand("sweep-two-user", "two-user sweep over the second user's distance");
    auto *oracle = app.add_subcommand("measure-oracle", "wavenumber union measure against the analytic identity");
    for (auto *cmd : {single, multi, svd, sweep_single, sweep_two, oracle})
        add_common(*cmd, args);

    std::string dump_matrix;
    std::string dump_spectrum;
    bool no_occlusion = false;
    bool matrix_free = false;
    svd->add_option("--dump-matrix", dump_matrix, "write the channel matrix as a binary dump");
    svd->add_option("--dump-spectrum", dump_spectrum, "write the singular values as a binary dump");
    svd->add_flag("--no-occlusion", no_occlusion, "ignore blocking between users");
    svd->add_flag("--matrix-free", matrix_free, "use the matrix-free top-k solver");

    int viewpoints = 5;
    int resolution = 1024;
    oracle->add_option("--viewpoints", viewpoints, "viewpoints per BS axis")->check(CLI::PositiveNumber);
    oracle->add_option("--resolution", resolution, "grid cells per axis")->check(CLI::Range(64, 1 << 14));

    CLI11_PARSE(app, argc, argv);

    try
    {
        ExperimentConfig config = load(args);
        const Format format = format_from_string(args.format);
        const RunOptions run{args.timings};

        if (*single)
        {
            const Scenario scenario = config.scenario();
            warn_regime(scenario);
            emit(run_single(config, run), format, args.out);
        }
        else if (*multi)
        {
            const DofReport report = run_multi(config);
            for (const auto &w : report.warnings)
                warn(w);
            emit(report_table(report), format, args.out);
        }
        else if (*svd)
        {
            if (no_occlusion)
                config.svd.occlusion = false;
            if (matrix_free)
                config.svd.path = SvdPath::matrix_free;
            const Scenario scenario = config.svd_scenario(config.scenario());
            const SvdOptions options = config.svd_options();
            if (!dump_matrix.empty())
            {
                const auto grids = discretize_scenario(scenario, scenario.wavelength() / options.patch_fraction);
                write_matrix_dump(dump_matrix, assemble(scenario, grids, options.assembly).entries);
            }
            const SvdDofResult result = svd_dof(scenario, options);
            if (!dump_spectrum.empty())
                write_spectrum_dump(dump_spectrum, result.spectrum);
            ResultTable table;
            table.columns = {"rows", "cols", "count", "path", "sigma_max"};
            table.rows.push_back({static_cast<std::int64_t>(result.rows), static_cast<std::int64_t>(result.cols),
                                  static_cast<std::int64_t>(result.count),
                                  std::string(result.matrix_free ? "matrix_free" : "dense"),
                                  result.spectrum.values.empty() ? Cell{} : Cell{result.spectrum.values.front()}});
            emit(table, format, args.out);
        }
        else if (*sweep_single)
        {
            emit(run_single_user_sweep(config, run), format, args.out);
        }
        else if (*sweep_two)
        {
            const TwoUserSweep sweep = run_two_user_sweep(config, run);
            emit(sweep.table, format, args.out);
            print_summary(sweep);
        }
        else if (*oracle)
        {
            emit(run_measure_oracle(config, viewpoints, resolution), format, args.out);
        }
    }
    catch (const std::exception &e)
    {
        std::cerr << "holodof: error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
