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

#include "holodof/wavenumber.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "holodof/error.hpp"
#include "holodof/quadrature.hpp"

namespace holodof
{
namespace
{
void require_positive_depth(double sz)
{
    if (!(sz > 0.0))
        throw InvalidArgument("source must lie in front of the receiving plane (z > 0)");
}

double sign(double x)
{
    return x < 0.0 ? -1.0 : 1.0;
}
} // namespace

WavenumberPoint local_spatial_frequency(Point2 r, Point3 s, double kappa0)
{
    require_positive_depth(s.z);
    const double dx = r.x - s.x;
    const double dy = r.y - s.y;
    const double dist = std::sqrt(dx * dx + dy * dy + s.z * s.z);
    return {kappa0 * dx / dist, kappa0 * dy / dist};
}

double jacobian_density(Point2 r, Point3 s, double kappa0)
{
    require_positive_depth(s.z);
    const double dx = r.x - s.x;
    const double dy = r.y - s.y;
    const double q = s.z * s.z + dx * dx + dy * dy;
    return kappa0 * kappa0 * s.z * s.z / (q * q);
}

double corner_antiderivative(double u, double v, double d)
{
    const bool inf_u = std::isinf(u);
    const bool inf_v = std::isinf(v);
    if (inf_u && inf_v)
        return sign(u) * sign(v) * M_PI / 4.0;
    if (inf_u)
        return sign(u) * 0.5 * (v / std::hypot(d, v)) * (M_PI / 2.0);
    if (inf_v)
        return sign(v) * 0.5 * (u / std::hypot(d, u)) * (M_PI / 2.0);
    const double a = std::hypot(d, u);
    const double b = std::hypot(d, v);
    return 0.5 * ((u / a) * std::atan2(v, a) + (v / b) * std::atan2(u, b));
}

double bandwidth_closed_form(Point2 r, const Rect2D &rect, double plane_z, double kappa0)
{
    require_positive_depth(plane_z);
    if (rect.is_empty())
        return 0.0;
    const double u1 = rect.x_lo - r.x;
    const double u2 = rect.x_hi - r.x;
    const double v1 = rect.y_lo - r.y;
    const double v2 = rect.y_hi - r.y;
    const double d = plane_z;
    const double corner = corner_antiderivative(u2, v2, d) - corner_antiderivative(u1, v2, d) -
                          corner_antiderivative(u2, v1, d) + corner_antiderivative(u1, v1, d);
    return kappa0 * kappa0 * corner;
}

double bandwidth_quadrature(Point2 r, const Rect2D &rect, double plane_z, double kappa0, double tol)
{
    require_positive_depth(plane_z);
    if (!(tol > 0.0))
        throw InvalidArgument("quadrature tolerance must be positive");
    if (rect.is_empty())
        return 0.0;
    QuadratureSpec spec;
    spec.max_depth = 40;
    spec.rel_tol = tol;
    const auto density = [&](double x, double y) {
        return jacobian_density(r, {x, y, plane_z}, kappa0);
    };
    return integrate_rect(density, rect, spec).value;
}

//---------------------------------------------------------------------------//
// Occupancy raster
//---------------------------------------------------------------------------//

WavenumberRegionGrid::WavenumberRegionGrid(int resolution, double kx_lo, double kx_hi, double ky_lo,
                                           double ky_hi)
    : resolution_(resolution), kx_lo_(kx_lo), ky_lo_(ky_lo), dkx_(0.0), dky_(0.0)
{
    if (resolution < 64)
        throw InvalidArgument("wavenumber grid resolution must be at least 64");
    if (!(kx_hi > kx_lo) || !(ky_hi > ky_lo))
        throw InvalidArgument("wavenumber grid window must have positive extent");
    dkx_ = (kx_hi - kx_lo) / resolution;
    dky_ = (ky_hi - ky_lo) / resolution;
    cells_.assign(static_cast<std::size_t>(resolution) * resolution, 0);
}

WavenumberRegionGrid WavenumberRegionGrid::full_disk(double kappa0, int resolution)
{
    return WavenumberRegionGrid(resolution, -kappa0, kappa0, -kappa0, kappa0);
}

WavenumberRegionGrid WavenumberRegionGrid::fitted(Point2 r, std::span<const ImagedRect> surfaces,
                                                  double kappa0, int resolution)
{
    double kx_lo = std::numeric_limits<double>::infinity();
    double ky_lo = kx_lo;
    double kx_hi = -kx_lo;
    double ky_hi = -kx_lo;
    // The mapping is a diffeomorphism, so the image's extremes lie on the
    // image of the rectangle's boundary.
    const int samples = 4 * resolution;
    for (const auto &surface : surfaces)
    {
        const Rect2D &rc = surface.rect;
        if (rc.is_empty())
            continue;
        auto visit = [&](double x, double y) {
            const WavenumberPoint k = local_spatial_frequency(r, {x, y, surface.plane_z}, kappa0);
            kx_lo = std::min(kx_lo, k.kx);
            kx_hi = std::max(kx_hi, k.kx);
            ky_lo = std::min(ky_lo, k.ky);
            ky_hi = std::max(ky_hi, k.ky);
        };
        for (int i = 0; i <= samples; ++i)
        {
            const double t = static_cast<double>(i) / samples;
            const double x = rc.x_lo + t * (rc.x_hi - rc.x_lo);
            const double y = rc.y_lo + t * (rc.y_hi - rc.y_lo);
            visit(x, rc.y_lo);
            visit(x, rc.y_hi);
            visit(rc.x_lo, y);
            visit(rc.x_hi, y);
        }
    }
    if (!(kx_hi > kx_lo) || !(ky_hi > ky_lo))
        return full_disk(kappa0, resolution);
    // Pad by a few cells so boundary samples never fall outside.
    const double pad_x = 4.0 * (kx_hi - kx_lo) / resolution;
    const double pad_y = 4.0 * (ky_hi - ky_lo) / resolution;
    return WavenumberRegionGrid(resolution, std::max(-kappa0, kx_lo - pad_x),
                                std::min(kappa0, kx_hi + pad_x), std::max(-kappa0, ky_lo - pad_y),
                                std::min(kappa0, ky_hi + pad_y));
}

bool WavenumberRegionGrid::mark(WavenumberPoint p)
{
    const double fx = std::floor((p.kx - kx_lo_) / dkx_);
    const double fy = std::floor((p.ky - ky_lo_) / dky_);
    if (fx < 0.0 || fy < 0.0 || fx >= resolution_ || fy >= resolution_)
        return false;
    cells_[static_cast<std::size_t>(fy) * resolution_ + static_cast<std::size_t>(fx)] = 1;
    return true;
}

void WavenumberRegionGrid::rasterize(Point2 r, const ImagedRect &surface, double kappa0)
{
    require_positive_depth(surface.plane_z);
    const Rect2D &rc = surface.rect;
    if (rc.is_empty())
        return;
    // |d kappa / d s| <= kappa0 / distance <= kappa0 / plane_z, so this step
    // keeps neighbouring images within half a cell.
    const double step = 0.5 * std::min(dkx_, dky_) * surface.plane_z / kappa0;
    const auto nx = static_cast<long>(std::ceil(rc.width() / step)) + 1;
    const auto ny = static_cast<long>(std::ceil(rc.height() / step)) + 1;
    for (long i = 0; i < nx; ++i)
    {
        const double x = rc.x_lo + rc.width() * static_cast<double>(i) / static_cast<double>(nx - 1);
        for (long j = 0; j < ny; ++j)
        {
            const double y = rc.y_lo + rc.height() * static_cast<double>(j) / static_cast<double>(ny - 1);
            mark(local_spatial_frequency(r, {x, y, surface.plane_z}, kappa0));
        }
    }
}

std::size_t WavenumberRegionGrid::occupied_cells() const
{
    return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), std::uint8_t{1}));
}

double union_measure_mc(Point2 r, std::span<const ImagedRect> surfaces, double kappa0, int resolution,
                        GridWindow window)
{
    if (resolution < 64)
        throw InvalidArgument("wavenumber grid resolution must be at least 64");
    WavenumberRegionGrid grid = window == GridWindow::fitted
                                    ? WavenumberRegionGrid::fitted(r, surfaces, kappa0, resolution)
                                    : WavenumberRegionGrid::full_disk(kappa0, resolution);
    for (const auto &surface : surfaces)
        grid.rasterize(r, surface, kappa0);
    return grid.measured_area();
}
} // namespace holodof
