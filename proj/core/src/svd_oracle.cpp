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

#include "holodof/svd_oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "holodof/error.hpp"

namespace holodof
{
namespace
{
// Users strictly between the base station and user `target`.
std::vector<Rect2D> occluders_of(const Scenario &scenario, std::size_t target,
                                 std::vector<double> &planes)
{
    const auto &users = scenario.users();
    std::vector<Rect2D> rects;
    planes.clear();
    for (std::size_t m = 0; m < users.size(); ++m)
    {
        if (m == target)
            continue;
        if (users[m].plane_z > 0.0 && users[m].plane_z < users[target].plane_z)
        {
            rects.push_back(users[m].global_rect());
            planes.push_back(users[m].plane_z);
        }
    }
    return rects;
}

bool segment_hits(const std::vector<Rect2D> &rects, const std::vector<double> &planes, Point3 r,
                  Point3 s)
{
    for (std::size_t m = 0; m < rects.size(); ++m)
    {
        const double t = (planes[m] - r.z) / (s.z - r.z);
        const Point2 p{r.x + (s.x - r.x) * t, r.y + (s.y - r.y) * t};
        if (rects[m].contains_strictly(p))
            return true;
    }
    return false;
}

Eigen::MatrixXcd orthonormalize(const Eigen::MatrixXcd &x)
{
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(x);
    return qr.householderQ() * Eigen::MatrixXcd::Identity(x.rows(), x.cols());
}

Eigen::MatrixXcd gaussian(std::size_t rows, std::size_t cols, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXcd out(rows, cols);
    for (Eigen::Index j = 0; j < out.cols(); ++j)
        for (Eigen::Index i = 0; i < out.rows(); ++i)
        {
            const double re = normal(rng);
            const double im = normal(rng);
            out(i, j) = {re, im};
        }
    return out;
}

std::vector<double> sorted_values(const Eigen::VectorXd &sv)
{
    std::vector<double> v(sv.data(), sv.data() + sv.size());
    std::sort(v.begin(), v.end(), std::greater<>());
    return v;
}

template <class T>
void put(std::ofstream &out, T value)
{
    static_assert(sizeof(T) == 8);
    auto bits = std::bit_cast<std::uint64_t>(value);
    if constexpr (std::endian::native == std::endian::big)
        bits = __builtin_bswap64(bits);
    out.write(reinterpret_cast<const char *>(&bits), sizeof bits);
}

template <class T>
T get(std::ifstream &in)
{
    std::uint64_t bits = 0;
    in.read(reinterpret_cast<char *>(&bits), sizeof bits);
    if (!in)
        throw Error("truncated binary dump");
    if constexpr (std::endian::native == std::endian::big)
        bits = __builtin_bswap64(bits);
    return std::bit_cast<T>(bits);
}

std::ofstream open_out(const std::string &path)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error("cannot open " + path + " for writing");
    return out;
}

std::ifstream open_in(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("cannot open " + path + " for reading");
    return in;
}
} // namespace

//---------------------------------------------------------------------------//
// Discretization
//---------------------------------------------------------------------------//

Point3 PatchGrid::center(int ix, int iy) const
{
    const double x = (ix - 0.5 * (count_x - 1)) * patch_size;
    const double y = (iy - 0.5 * (count_y - 1)) * patch_size;
    return {x, parent.center_y + y, parent.plane_z};
}

Point3 PatchGrid::center(std::size_t index) const
{
    return center(static_cast<int>(index / count_y), static_cast<int>(index % count_y));
}

PatchGrid discretize(const PlacedSurface &surface, double patch_size)
{
    surface.validate();
    if (!(patch_size > 0.0))
        throw InvalidArgument("patch size must be positive");
    if (patch_size > std::min(surface.side_x, surface.side_y) * (1.0 + 1e-12))
        throw InvalidArgument("patch size exceeds a side of the surface");
    PatchGrid grid;
    grid.parent = surface;
    grid.patch_size = patch_size;
    grid.count_x = std::max(1, static_cast<int>(std::lround(surface.side_x / patch_size)));
    grid.count_y = std::max(1, static_cast<int>(std::lround(surface.side_y / patch_size)));
    return grid;
}

std::size_t ChannelGrids::cols() const
{
    std::size_t n = 0;
    for (const auto &g : users)
        n += g.size();
    return n;
}

ChannelGrids discretize_scenario(const Scenario &scenario, double patch_size)
{
    ChannelGrids grids{discretize(scenario.bs(), patch_size), {}};
    for (const auto &u : scenario.users())
        grids.users.push_back(discretize(u, patch_size));
    return grids;
}

//---------------------------------------------------------------------------//
// Assembly
//---------------------------------------------------------------------------//

std::complex<double> channel_kernel(Point3 r, Point3 s, double kappa0, double eta, double patch_area)
{
    const double dx = r.x - s.x;
    const double dy = r.y - s.y;
    const double dz = r.z - s.z;
    const double dist = std::sqrt(dx * dx + dy * dy + dz * dz);
    const double amp = kappa0 * eta * patch_area / (4.0 * M_PI * dist);
    const double phase = kappa0 * dist;
    // -j exp(j phase) = sin(phase) - j cos(phase)
    return {amp * std::sin(phase), -amp * std::cos(phase)};
}

bool link_occluded(const Scenario &scenario, std::size_t user, Point3 r, Point3 s)
{
    std::vector<double> planes;
    const auto rects = occluders_of(scenario, user, planes);
    return segment_hits(rects, planes, r, s);
}

ChannelMatrix assemble(const Scenario &scenario, const ChannelGrids &grids, const AssemblyOptions &options)
{
    if (grids.users.size() != scenario.users().size())
        throw InvalidArgument("patch grids do not match the scenario's users");
    const std::size_t rows = grids.rows();
    const std::size_t cols = grids.cols();
    const double bytes = static_cast<double>(rows) * static_cast<double>(cols) * sizeof(std::complex<double>);
    if (bytes > static_cast<double>(options.memory_budget_bytes))
    {
        std::ostringstream os;
        os << "dense channel matrix " << rows << " x " << cols << " needs " << bytes / (1 << 20)
           << " MiB, over the budget; use the matrix-free path";
        throw MemoryBudgetExceeded(os.str());
    }

    ChannelMatrix out;
    out.wavelength = scenario.wavelength();
    out.eta = options.eta;
    out.entries.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    const double kappa0 = scenario.kappa0();

    std::size_t offset = 0;
    std::vector<double> planes;
    for (std::size_t u = 0; u < grids.users.size(); ++u)
    {
        const PatchGrid &g = grids.users[u];
        out.column_offsets.push_back(offset);
        const auto rects = options.occlusion ? occluders_of(scenario, u, planes) : std::vector<Rect2D>{};
        for (std::size_t j = 0; j < g.size(); ++j)
        {
            const Point3 s = g.center(j);
            const auto col = static_cast<Eigen::Index>(offset + j);
            for (std::size_t i = 0; i < rows; ++i)
            {
                const Point3 r = grids.bs.center(i);
                out.entries(static_cast<Eigen::Index>(i), col) =
                    (!rects.empty() && segment_hits(rects, planes, r, s))
                        ? std::complex<double>{}
                        : channel_kernel(r, s, kappa0, options.eta, g.patch_area());
            }
        }
        offset += g.size();
    }
    return out;
}

//---------------------------------------------------------------------------//
// Matrix-free operator
//---------------------------------------------------------------------------//

ChannelOperator::ChannelOperator(const Scenario &scenario, ChannelGrids grids, AssemblyOptions options)
    : scenario_(scenario), grids_(std::move(grids)), options_(options)
{
    if (grids_.users.size() != scenario_.users().size())
        throw InvalidArgument("patch grids do not match the scenario's users");
}

template <class Visit>
void ChannelOperator::for_each_entry(Visit &&visit) const
{
    const double kappa0 = scenario_.kappa0();
    std::vector<std::vector<Rect2D>> rects(grids_.users.size());
    std::vector<std::vector<double>> planes(grids_.users.size());
    if (options_.occlusion)
        for (std::size_t u = 0; u < grids_.users.size(); ++u)
            rects[u] = occluders_of(scenario_, u, planes[u]);

    for (std::size_t i = 0; i < grids_.rows(); ++i)
    {
        const Point3 r = grids_.bs.center(i);
        std::size_t col = 0;
        for (std::size_t u = 0; u < grids_.users.size(); ++u)
        {
            const PatchGrid &g = grids_.users[u];
            for (std::size_t j = 0; j < g.size(); ++j, ++col)
            {
                const Point3 s = g.center(j);
                if (!rects[u].empty() && segment_hits(rects[u], planes[u], r, s))
                    continue;
                visit(i, col, channel_kernel(r, s, kappa0, options_.eta, g.patch_area()));
            }
        }
    }
}

Eigen::MatrixXcd ChannelOperator::apply(const Eigen::MatrixXcd &x) const
{
    if (static_cast<std::size_t>(x.rows()) != cols())
        throw InvalidArgument("operand has the wrong number of rows");
    // Row-major copies keep each visited row contiguous.
    const Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> xr = x;
    Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> y =
        Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rows()), x.cols());
    for_each_entry([&](std::size_t i, std::size_t j, std::complex<double> h) {
        y.row(static_cast<Eigen::Index>(i)) += h * xr.row(static_cast<Eigen::Index>(j));
    });
    return y;
}

Eigen::MatrixXcd ChannelOperator::apply_adjoint(const Eigen::MatrixXcd &y) const
{
    if (static_cast<std::size_t>(y.rows()) != rows())
        throw InvalidArgument("operand has the wrong number of rows");
    const Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> yr = y;
    Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> x =
        Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(cols()), y.cols());
    for_each_entry([&](std::size_t i, std::size_t j, std::complex<double> h) {
        x.row(static_cast<Eigen::Index>(j)) += std::conj(h) * yr.row(static_cast<Eigen::Index>(i));
    });
    return x;
}

//---------------------------------------------------------------------------//
// Spectra and counting
//---------------------------------------------------------------------------//

SingularSpectrum singular_spectrum(const Eigen::MatrixXcd &matrix)
{
    if (matrix.size() == 0 || matrix.cwiseAbs().maxCoeff() == 0.0)
        throw InvalidArgument("singular spectrum needs a nonzero matrix");
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(matrix);
    return {sorted_values(svd.singularValues()), false};
}

SingularSpectrum singular_spectrum_topk(const LinearOperator &op, std::size_t k, const TopKOptions &options)
{
    const std::size_t small = std::min(op.rows(), op.cols());
    if (k == 0 || k > small)
        throw InvalidArgument("top-k must lie between 1 and min(rows, cols)");
    const std::size_t width = std::min(k + options.oversampling, small);

    Eigen::MatrixXcd q = orthonormalize(op.apply(gaussian(op.cols(), width, options.seed)));
    std::vector<double> previous;
    for (int it = 0; it < options.max_iterations; ++it)
    {
        // Singular values of Q^H A are those of W = A^H Q.
        const Eigen::MatrixXcd w = op.apply_adjoint(q);
        Eigen::BDCSVD<Eigen::MatrixXcd> svd(w);
        std::vector<double> current = sorted_values(svd.singularValues());
        current.resize(k);

        if (current.front() == 0.0)
            throw InvalidArgument("singular spectrum needs a nonzero operator");
        if (!previous.empty())
        {
            bool converged = true;
            for (std::size_t i = 0; i < k && converged; ++i)
                converged = std::abs(current[i] - previous[i]) <=
                            options.tol * current[i] + 1e-15 * current.front();
            if (converged || width == small)
                return {current, k < small};
        }
        previous = std::move(current);
        q = orthonormalize(op.apply(orthonormalize(w)));
    }
    throw NonConvergence("subspace iteration did not converge", previous.empty() ? 0.0 : previous.front(),
                         0.0);
}

void DofCountConfig::validate() const
{
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw InvalidArgument("DoF threshold epsilon must lie in (0, 1)");
}

std::size_t count_effective_dof(const SingularSpectrum &spectrum, const DofCountConfig &config)
{
    config.validate();
    if (spectrum.values.empty())
        throw InvalidArgument("cannot count DoF of an empty spectrum");
    const double top = spectrum.values.front();
    if (!(top > 0.0))
        return 0;
    std::size_t n = 0;
    for (double s : spectrum.values)
    {
        const double ratio = s / top;
        const double normalized =
            config.normalization == Normalization::sigma_squared_over_max ? ratio * ratio : ratio;
        if (normalized > config.epsilon)
            ++n;
    }
    return n;
}

SvdDofResult svd_dof(const Scenario &scenario, const SvdOptions &options)
{
    options.count.validate();
    if (!(options.patch_fraction > 0.0))
        throw InvalidArgument("patch fraction must be positive");
    ChannelGrids grids = discretize_scenario(scenario, scenario.wavelength() / options.patch_fraction);

    SvdDofResult out;
    out.rows = grids.rows();
    out.cols = grids.cols();
    const double bytes = static_cast<double>(out.rows) * static_cast<double>(out.cols) * 16.0;
    const bool fits = bytes <= static_cast<double>(options.assembly.memory_budget_bytes);
    if (options.path == SvdPath::dense || (options.path == SvdPath::automatic && fits))
    {
        const ChannelMatrix h = assemble(scenario, grids, options.assembly);
        out.spectrum = singular_spectrum(h.entries);
        out.count = count_effective_dof(out.spectrum, options.count);
        return out;
    }

    out.matrix_free = true;
    const ChannelOperator op(scenario, std::move(grids), options.assembly);
    const std::size_t small = std::min(op.rows(), op.cols());
    std::size_t k = std::min(std::max<std::size_t>(options.initial_top_k, 1), small);
    for (;;)
    {
        out.spectrum = singular_spectrum_topk(op, k, options.topk);
        out.count = count_effective_dof(out.spectrum, options.count);
        if (out.count < k || k == small)
            return out;
        k = std::min(2 * k, small);
    }
}

//---------------------------------------------------------------------------//
// Dumps
//---------------------------------------------------------------------------//

void write_matrix_dump(const std::string &path, const Eigen::MatrixXcd &matrix)
{
    auto out = open_out(path);
    put(out, static_cast<std::uint64_t>(matrix.rows()));
    put(out, static_cast<std::uint64_t>(matrix.cols()));
    for (Eigen::Index i = 0; i < matrix.rows(); ++i)
        for (Eigen::Index j = 0; j < matrix.cols(); ++j)
        {
            put(out, matrix(i, j).real());
            put(out, matrix(i, j).imag());
        }
    if (!out)
        throw Error("failed writing " + path);
}

Eigen::MatrixXcd read_matrix_dump(const std::string &path)
{
    auto in = open_in(path);
    const auto rows = get<std::uint64_t>(in);
    const auto cols = get<std::uint64_t>(in);
    Eigen::MatrixXcd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
        {
            const double re = get<double>(in);
            const double im = get<double>(in);
            m(i, j) = {re, im};
        }
    return m;
}

void write_spectrum_dump(const std::string &path, const SingularSpectrum &spectrum)
{
    auto out = open_out(path);
    put(out, static_cast<std::uint64_t>(spectrum.values.size()));
    put(out, std::uint64_t{1});
    for (double v : spectrum.values)
        put(out, v);
    if (!out)
        throw Error("failed writing " + path);
}

SingularSpectrum read_spectrum_dump(const std::string &path)
{
    auto in = open_in(path);
    const auto rows = get<std::uint64_t>(in);
    const auto cols = get<std::uint64_t>(in);
    if (cols != 1)
        throw Error(path + " is not a spectrum dump");
    SingularSpectrum s;
    s.values.reserve(rows);
    for (std::uint64_t i = 0; i < rows; ++i)
        s.values.push_back(get<double>(in));
    return s;
}
} // namespace holodof
