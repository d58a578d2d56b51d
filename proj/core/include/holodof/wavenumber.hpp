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
#include <span>
#include <vector>

#include "holodof/geometry.hpp"

namespace holodof
{
// Local spatial frequency (kx, ky) in rad/m.
struct WavenumberPoint
{
    double kx = 0.0;
    double ky = 0.0;
};

// Transverse wave vector seen at r = (rx, ry, 0) for a point source s with
// s.z > 0. Always strictly inside the disk of radius kappa0.
WavenumberPoint local_spatial_frequency(Point2 r, Point3 s, double kappa0);

// Jacobian determinant of (sx, sy) -> (kx, ky) at fixed r:
// kappa0^2 sz^2 / (sz^2 + |r - s|_xy^2)^2.
double jacobian_density(Point2 r, Point3 s, double kappa0);

// Antiderivative G(u, v) of d^2 / (d^2 + u^2 + v^2)^2 in both u and v.
// Infinite arguments take their limits, so G(inf, inf) = pi / 4.
double corner_antiderivative(double u, double v, double d);

// Measure of the wavenumber-plane region swept by a rectangle (global x, y
// on the plane z = plane_z) seen from r on the plane z = 0. Evaluated as
// kappa0^2 times the corner sum of G. An empty rectangle gives 0.
double bandwidth_closed_form(Point2 r, const Rect2D &rect, double plane_z, double kappa0);

// Same quantity by adaptive quadrature of jacobian_density; the estimated
// absolute error is at most tol times the result.
double bandwidth_quadrature(Point2 r, const Rect2D &rect, double plane_z, double kappa0,
                            double tol = 1e-8);

// A rectangle in global (x, y) coordinates of the plane z = plane_z.
struct ImagedRect
{
    Rect2D rect;
    double plane_z = 0.0;
};

//---------------------------------------------------------------------------//
/*!
 * Occupancy raster of a window of the wavenumber plane.
 *
 * Surfaces are rasterized by mapping a dense lattice of their points through
 * local_spatial_frequency, with a lattice step fine enough that consecutive
 * images are less than half a cell apart. Every cell touched by the image is
 * marked, so the measured area overestimates the true measure by a boundary
 * layer whose width is proportional to the cell size.
 */
class WavenumberRegionGrid
{
  public:
    WavenumberRegionGrid(int resolution, double kx_lo, double kx_hi, double ky_lo, double ky_hi);

    // Window [-kappa0, kappa0]^2.
    static WavenumberRegionGrid full_disk(double kappa0, int resolution);
    // Window fitted around the images of the given surfaces from r.
    static WavenumberRegionGrid fitted(Point2 r, std::span<const ImagedRect> surfaces, double kappa0,
                                       int resolution);

    int resolution() const { return resolution_; }
    double cell_width() const { return dkx_; }
    double cell_height() const { return dky_; }
    double cell_area() const { return dkx_ * dky_; }

    // Marks the cell containing p; false when p falls outside the window.
    bool mark(WavenumberPoint p);
    void rasterize(Point2 r, const ImagedRect &surface, double kappa0);

    std::size_t occupied_cells() const;
    double measured_area() const { return static_cast<double>(occupied_cells()) * cell_area(); }

  private:
    int resolution_;
    double kx_lo_, ky_lo_;
    double dkx_, dky_;
    std::vector<std::uint8_t> cells_;
};

enum class GridWindow
{
    fitted,
    full_disk,
};

// Area of the union of the images of several surfaces, measured on an
// occupancy raster (resolution >= 64 cells per axis).
double union_measure_mc(Point2 r, std::span<const ImagedRect> surfaces, double kappa0,
                        int resolution = 1024, GridWindow window = GridWindow::fitted);
} // namespace holodof
