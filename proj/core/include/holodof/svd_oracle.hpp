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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "holodof/geometry.hpp"

namespace holodof
{
//---------------------------------------------------------------------------//
// Discretization
//---------------------------------------------------------------------------//

// Square patches of constant current laid out on a surface. The lattice has
// round(side / patch_size) patches per axis and is centered on the surface.
struct PatchGrid
{
    PlacedSurface parent;
    double patch_size = 0.0;
    int count_x = 0;
    int count_y = 0;

    std::size_t size() const { return static_cast<std::size_t>(count_x) * count_y; }
    double patch_area() const { return patch_size * patch_size; }
    // Global center of patch (ix, iy); linear index is ix * count_y + iy.
    Point3 center(int ix, int iy) const;
    Point3 center(std::size_t index) const;
};

PatchGrid discretize(const PlacedSurface &surface, double patch_size);

struct ChannelGrids
{
    PatchGrid bs;
    std::vector<PatchGrid> users;

    std::size_t rows() const { return bs.size(); }
    std::size_t cols() const;
};

ChannelGrids discretize_scenario(const Scenario &scenario, double patch_size);

//---------------------------------------------------------------------------//
// Channel assembly
//---------------------------------------------------------------------------//

struct AssemblyOptions
{
    bool occlusion = true;
    double eta = 1.0;
    std::size_t memory_budget_bytes = std::size_t{2} << 30;
};

// Rows are base-station patches; columns are the patches of every user,
// stored user by user (user u starts at column_offsets[u]).
struct ChannelMatrix
{
    Eigen::MatrixXcd entries;
    double wavelength = 0.0;
    double eta = 1.0;
    std::vector<std::size_t> column_offsets;
};

// Green's-function kernel -j k0 eta exp(j k0 D) / (4 pi D) times the source
// patch area.
std::complex<double> channel_kernel(Point3 r, Point3 s, double kappa0, double eta, double patch_area);

// True when the open segment from s (on user `user`) to r (on the base
// station) passes through the interior of another user's rectangle.
bool link_occluded(const Scenario &scenario, std::size_t user, Point3 r, Point3 s);

// Throws MemoryBudgetExceeded when the dense matrix would not fit the budget.
ChannelMatrix assemble(const Scenario &scenario, const ChannelGrids &grids,
                       const AssemblyOptions &options = {});

//---------------------------------------------------------------------------//
// Spectra
//---------------------------------------------------------------------------//

class LinearOperator
{
  public:
    virtual ~LinearOperator() = default;
    virtual std::size_t rows() const = 0;
    virtual std::size_t cols() const = 0;
    // A X for X with cols() rows.
    virtual Eigen::MatrixXcd apply(const Eigen::MatrixXcd &x) const = 0;
    // A^H Y for Y with rows() rows.
    virtual Eigen::MatrixXcd apply_adjoint(const Eigen::MatrixXcd &y) const = 0;
};

// Non-owning view of a dense matrix.
class DenseOperator final : public LinearOperator
{
  public:
    explicit DenseOperator(const Eigen::MatrixXcd &matrix) : matrix_(matrix) {}

    std::size_t rows() const final { return static_cast<std::size_t>(matrix_.rows()); }
    std::size_t cols() const final { return static_cast<std::size_t>(matrix_.cols()); }
    Eigen::MatrixXcd apply(const Eigen::MatrixXcd &x) const final { return matrix_ * x; }
    Eigen::MatrixXcd apply_adjoint(const Eigen::MatrixXcd &y) const final
    {
        return matrix_.adjoint() * y;
    }

  private:
    const Eigen::MatrixXcd &matrix_;
};

// Channel operator that recomputes kernel entries on every product, for
// geometries whose dense matrix does not fit in memory.
class ChannelOperator final : public LinearOperator
{
  public:
    ChannelOperator(const Scenario &scenario, ChannelGrids grids, AssemblyOptions options = {});

    std::size_t rows() const final { return grids_.rows(); }
    std::size_t cols() const final { return grids_.cols(); }
    Eigen::MatrixXcd apply(const Eigen::MatrixXcd &x) const final;
    Eigen::MatrixXcd apply_adjoint(const Eigen::MatrixXcd &y) const final;

  private:
    template <class Visit>
    void for_each_entry(Visit &&visit) const;

    Scenario scenario_;
    ChannelGrids grids_;
    AssemblyOptions options_;
};

struct SingularSpectrum
{
    std::vector<double> values;  // non-increasing
    bool truncated = false;
};

// Full spectrum by dense divide-and-conquer SVD. Throws on a zero matrix.
SingularSpectrum singular_spectrum(const Eigen::MatrixXcd &matrix);

struct TopKOptions
{
    std::size_t oversampling = 10;
    int max_iterations = 1000;
    double tol = 1e-12;
    std::uint64_t seed = 0;
};

// Leading k singular values by randomized subspace iteration with
// Rayleigh-Ritz extraction. Stops once no value moves by more than
// tol * sigma_i between sweeps; throws NonConvergence otherwise.
SingularSpectrum singular_spectrum_topk(const LinearOperator &op, std::size_t k,
                                        const TopKOptions &options = {});

enum class Normalization
{
    sigma_squared_over_max,
    sigma_over_max,
};

struct DofCountConfig
{
    double epsilon = 0.5;
    Normalization normalization = Normalization::sigma_squared_over_max;

    void validate() const;
};

// Number of normalized values strictly above epsilon.
std::size_t count_effective_dof(const SingularSpectrum &spectrum, const DofCountConfig &config = {});

enum class SvdPath
{
    automatic,    // dense when it fits the memory budget, else matrix-free
    dense,        // dense only; exceeding the budget is an error
    matrix_free,
};

struct SvdOptions
{
    DofCountConfig count;
    AssemblyOptions assembly;
    double patch_fraction = 3.0;  // patch size = wavelength / patch_fraction
    SvdPath path = SvdPath::automatic;
    std::size_t initial_top_k = 32;
    TopKOptions topk;
};

struct SvdDofResult
{
    std::size_t count = 0;
    SingularSpectrum spectrum;
    std::size_t rows = 0;
    std::size_t cols = 0;
    bool matrix_free = false;
};

// Discretize, assemble one joint matrix for all users, and count.
SvdDofResult svd_dof(const Scenario &scenario, const SvdOptions &options = {});

//---------------------------------------------------------------------------//
// Binary dumps: little-endian u64 rows, u64 cols, then row-major payload
// (complex entries as re, im float64 pairs; spectra as float64 with cols = 1).
//---------------------------------------------------------------------------//

void write_matrix_dump(const std::string &path, const Eigen::MatrixXcd &matrix);
Eigen::MatrixXcd read_matrix_dump(const std::string &path);
void write_spectrum_dump(const std::string &path, const SingularSpectrum &spectrum);
SingularSpectrum read_spectrum_dump(const std::string &path);
} // namespace holodof
