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
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "holodof/error.hpp"
#include "holodof/geometry.hpp"
#include "holodof/wavenumber.hpp"

using namespace holodof;

namespace
{
constexpr double kKappa0 = 2 * M_PI / 0.01;

// Central-difference Jacobian determinant of s -> kappa(r, s).
double fd_jacobian(Point2 r, Point3 s, double kappa0)
{
    const double h = 1e-6 * std::max(1.0, s.z);
    const auto k = [&](double dx, double dy) { return local_spatial_frequency(r, {s.x + dx, s.y + dy, s.z}, kappa0); };
    const auto px = k(h, 0), mx = k(-h, 0), py = k(0, h), my = k(0, -h);
    const double a = (px.kx - mx.kx) / (2 * h), b = (py.kx - my.kx) / (2 * h);
    const double c = (px.ky - mx.ky) / (2 * h), d = (py.ky - my.ky) / (2 * h);
    return std::abs(a * d - b * c);
}
} // namespace

TEST(LocalFrequency, InsideDiskAndPointsAwayFromSource)
{
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 500; ++i)
    {
        const Point2 r{u(rng), u(rng)};
        const Point3 s{u(rng), u(rng), 0.01 + std::abs(u(rng))};
        const auto k = local_spatial_frequency(r, s, kKappa0);
        EXPECT_LT(std::hypot(k.kx, k.ky), kKappa0);
        EXPECT_GE(k.kx * (r.x - s.x), 0.0);
        EXPECT_GE(k.ky * (r.y - s.y), 0.0);
    }
    const auto head_on = local_spatial_frequency({0.3, 0.4}, {0.3, 0.4, 2.0}, kKappa0);
    EXPECT_EQ(head_on.kx, 0.0);
    EXPECT_EQ(head_on.ky, 0.0);
    EXPECT_THROW(local_spatial_frequency({0, 0}, {0, 0, 0}, kKappa0), InvalidArgument);
}

TEST(JacobianDensity, MatchesFiniteDifference)
{
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 200; ++i)
    {
        const Point2 r{u(rng), u(rng)};
        const Point3 s{u(rng), u(rng), 0.2 + 3 * std::abs(u(rng))};
        const double expected = fd_jacobian(r, s, kKappa0);
        EXPECT_NEAR(jacobian_density(r, s, kKappa0) / expected, 1.0, 1e-6);
    }
    EXPECT_THROW(jacobian_density({0, 0}, {0, 0, -1}, kKappa0), InvalidArgument);
}

TEST(CornerAntiderivative, LimitsAndSymmetry)
{
    EXPECT_NEAR(corner_antiderivative(INFINITY, INFINITY, 3.0), M_PI / 4, 1e-15);
    EXPECT_EQ(corner_antiderivative(0, 1, 1), 0.0);
    EXPECT_EQ(corner_antiderivative(1, 0, 1), 0.0);
    EXPECT_DOUBLE_EQ(corner_antiderivative(-0.3, 0.7, 2), -corner_antiderivative(0.3, 0.7, 2));
    EXPECT_DOUBLE_EQ(corner_antiderivative(0.3, 0.7, 2), corner_antiderivative(0.7, 0.3, 2));
    // Whole plane: kappa0^2 * pi, the area of the visible disk.
    const Rect2D plane{-INFINITY, INFINITY, -INFINITY, INFINITY};
    EXPECT_NEAR(bandwidth_closed_form({0, 0}, plane, 1.0, kKappa0) / (M_PI * kKappa0 * kKappa0), 1.0, 1e-14);
}

TEST(CornerAntiderivative, MixedPartialIsTheDensity)
{
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 100; ++i)
    {
        const double x = u(rng), y = u(rng), d = 0.3 + std::abs(u(rng));
        const double h = 1e-4;
        const double mixed = (corner_antiderivative(x + h, y + h, d) - corner_antiderivative(x + h, y - h, d) -
                              corner_antiderivative(x - h, y + h, d) + corner_antiderivative(x - h, y - h, d)) /
                             (4 * h * h);
        const double density = d * d / std::pow(d * d + x * x + y * y, 2);
        EXPECT_NEAR(mixed, density, 1e-6 * std::max(density, 1e-3));
    }
}

TEST(Bandwidth, ClosedFormMatchesQuadrature)
{
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 50; ++i)
    {
        const double x0 = 2 * u(rng) - 1, y0 = 2 * u(rng) - 1;
        const Rect2D rect = Rect2D::from_bounds(x0, x0 + 0.05 + u(rng), y0, y0 + 0.05 + u(rng));
        const Point2 r{2 * u(rng) - 1, 2 * u(rng) - 1};
        const double z = 0.1 + 5 * u(rng);
        const double closed = bandwidth_closed_form(r, rect, z, kKappa0);
        const double quad = bandwidth_quadrature(r, rect, z, kKappa0, 1e-11);
        EXPECT_NEAR(closed / quad, 1.0, 1e-9);
    }
    EXPECT_EQ(bandwidth_closed_form({0, 0}, Rect2D::empty(), 1.0, kKappa0), 0.0);
}

TEST(Bandwidth, AdditiveOverSplitRectangles)
{
    const Rect2D whole = Rect2D::from_bounds(-0.4, 0.5, -0.2, 0.3);
    const Rect2D a = Rect2D::from_bounds(-0.4, 0.1, -0.2, 0.3);
    const Rect2D b = Rect2D::from_bounds(0.1, 0.5, -0.2, 0.3);
    const Point2 r{0.2, -0.1};
    EXPECT_NEAR(bandwidth_closed_form(r, whole, 2.0, kKappa0),
                bandwidth_closed_form(r, a, 2.0, kKappa0) + bandwidth_closed_form(r, b, 2.0, kKappa0), 1e-6);
}

TEST(Raster, MeasuresSingleRectangle)
{
    const Point2 r{0.1, 0.2};
    const std::vector<ImagedRect> s{{Rect2D::from_bounds(-0.15, 0.15, -0.15, 0.15), 10.0}};
    const double exact = bandwidth_closed_form(r, s[0].rect, 10.0, kKappa0);
    EXPECT_NEAR(union_measure_mc(r, s, kKappa0, 1024) / exact, 1.0, 0.02);
    // The full-disk window is coarse for a small image but must still bound it.
    EXPECT_GT(union_measure_mc(r, s, kKappa0, 1024, GridWindow::full_disk), exact);
}

TEST(Raster, ConvergesWithResolution)
{
    const Point2 r{0, 0};
    const std::vector<ImagedRect> s{{Rect2D::from_bounds(-0.5, 0.5, -0.3, 0.4), 2.0}};
    const double exact = bandwidth_closed_form(r, s[0].rect, 2.0, kKappa0);
    const double coarse = std::abs(union_measure_mc(r, s, kKappa0, 128) / exact - 1);
    const double fine = std::abs(union_measure_mc(r, s, kKappa0, 1024) / exact - 1);
    EXPECT_LT(fine, coarse);
    EXPECT_LT(fine, 0.01);
}

TEST(Raster, DisjointImagesAdd)
{
    const Point2 r{0, 0};
    const std::vector<ImagedRect> both{{Rect2D::from_bounds(-0.6, -0.2, -0.2, 0.2), 3.0},
                                       {Rect2D::from_bounds(0.2, 0.6, -0.2, 0.2), 3.0}};
    const double exact = 2 * bandwidth_closed_form(r, both[0].rect, 3.0, kKappa0);
    EXPECT_NEAR(union_measure_mc(r, both, kKappa0, 1024) / exact, 1.0, 0.02);
}

TEST(Raster, GridValidation)
{
    EXPECT_THROW(WavenumberRegionGrid(32, -1, 1, -1, 1), InvalidArgument);
    EXPECT_THROW(WavenumberRegionGrid(128, 1, -1, -1, 1), InvalidArgument);
    WavenumberRegionGrid g(128, -1, 1, -1, 1);
    EXPECT_TRUE(g.mark({0.0, 0.0}));
    EXPECT_TRUE(g.mark({0.001, 0.001}));
    EXPECT_FALSE(g.mark({2.0, 0.0}));
    EXPECT_EQ(g.occupied_cells(), 1u);
}

TEST(LocalFrequency, WorkedValues)
{
    const auto k = local_spatial_frequency({10.0, 0.0}, {0.0, 0.0, 10.0}, kKappa0);
    EXPECT_NEAR(k.kx, kKappa0 / std::sqrt(2.0), 1e-9);
    EXPECT_NEAR(k.kx, 444.288, 1e-3);
    EXPECT_EQ(k.ky, 0.0);
    const auto a = local_spatial_frequency({0.3, 0.2}, {0.1, -0.4, 2.0}, kKappa0);
    const auto b = local_spatial_frequency({-0.1, 0.2}, {0.1, -0.4, 2.0}, kKappa0);
    EXPECT_NEAR(a.kx, -b.kx, 1e-12);
    EXPECT_NEAR(a.ky, b.ky, 1e-12);
}

TEST(JacobianDensity, WorkedValueAndMonotonicity)
{
    EXPECT_NEAR(jacobian_density({0.2, 0.3}, {0.2, 0.3, 10.0}, kKappa0), 3947.8417604, 1e-6);
    double previous = INFINITY;
    for (double off = 0.0; off < 5.0; off += 0.25)
    {
        const double v = jacobian_density({off, 0.0}, {0.0, 0.0, 2.0}, kKappa0);
        EXPECT_LT(v, previous);
        previous = v;
    }
}

TEST(JacobianDensity, ThousandFiniteDifferencePairs)
{
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i)
    {
        const Point2 r{u(rng), u(rng)};
        const Point3 s{u(rng), u(rng), 0.3 + 2 * std::abs(u(rng))};
        worst = std::max(worst, std::abs(jacobian_density(r, s, kKappa0) / fd_jacobian(r, s, kKappa0) - 1));
    }
    EXPECT_LT(worst, 1e-6);
}

TEST(Bandwidth, DegenerateAndTranslation)
{
    EXPECT_EQ(bandwidth_closed_form({0, 0}, Rect2D::from_bounds(0.1, 0.1, 0.2, 0.5), 1.0, kKappa0), 0.0);
    EXPECT_EQ(bandwidth_quadrature({0, 0}, Rect2D::empty(), 1.0, kKappa0), 0.0);
    const Rect2D rect = Rect2D::from_bounds(-0.2, 0.3, 0.1, 0.4);
    const double base = bandwidth_closed_form({0.05, -0.1}, rect, 1.5, kKappa0);
    const double moved = bandwidth_closed_form({0.05 + 0.7, -0.1 - 0.3}, rect.translated(0.7, -0.3), 1.5, kKappa0);
    EXPECT_NEAR(moved / base, 1.0, 1e-12);
}

TEST(Bandwidth, TwoByTwoAdditivity)
{
    const Rect2D rect = Rect2D::from_bounds(-0.3, 0.4, -0.2, 0.5);
    const Point2 r{0.1, 0.6};
    const double whole_c = bandwidth_closed_form(r, rect, 0.9, kKappa0);
    const double whole_q = bandwidth_quadrature(r, rect, 0.9, kKappa0, 1e-12);
    double parts_c = 0.0, parts_q = 0.0;
    for (const Rect2D &p : {Rect2D::from_bounds(-0.3, 0.05, -0.2, 0.1), Rect2D::from_bounds(0.05, 0.4, -0.2, 0.1),
                            Rect2D::from_bounds(-0.3, 0.05, 0.1, 0.5), Rect2D::from_bounds(0.05, 0.4, 0.1, 0.5)})
    {
        parts_c += bandwidth_closed_form(r, p, 0.9, kKappa0);
        parts_q += bandwidth_quadrature(r, p, 0.9, kKappa0, 1e-12);
    }
    EXPECT_NEAR(parts_c / whole_c, 1.0, 1e-12);
    EXPECT_NEAR(parts_q / whole_q, 1.0, 1e-10);
    EXPECT_NEAR(whole_q / whole_c, 1.0, 1e-8);
}

TEST(Raster, OverlappingImagesAreSubadditive)
{
    const Point2 r{0.0, 5.0};
    const std::vector<ImagedRect> both{{Rect2D::from_bounds(-0.15, 0.15, -0.15, 0.15), 10.0},
                                       {Rect2D::from_bounds(-0.15, 0.15, -0.15, 0.15), 10.5}};
    const double sum = bandwidth_closed_form(r, both[0].rect, 10.0, kKappa0) +
                       bandwidth_closed_form(r, both[1].rect, 10.5, kKappa0);
    const double blocked =
        bandwidth_closed_form(r, shadow_region({0.0, 0.0}, {0.3, 0.3, 0.0, 10.0}, {0.3, 0.3, 0.0, 10.5},
                                               {1.4, 1.4, 5.0, 0.0}),
                              10.5, kKappa0);
    const double grid = union_measure_mc(r, both, kKappa0, 1024);
    EXPECT_GT(blocked, 0.0);
    EXPECT_LT(grid, sum);
    EXPECT_NEAR(grid / (sum - blocked), 1.0, 0.02);
}

TEST(Raster, ErrorRoughlyHalvesWithResolution)
{
    const Point2 r{0.2, 0.1};
    const std::vector<ImagedRect> s{{Rect2D::from_bounds(-0.3, 0.3, -0.3, 0.3), 2.0}};
    const double exact = bandwidth_closed_form(r, s[0].rect, 2.0, kKappa0);
    double previous = INFINITY;
    for (int res : {128, 256, 512, 1024})
    {
        const double err = union_measure_mc(r, s, kKappa0, res) / exact - 1;
        EXPECT_GT(err, 0.0);
        if (std::isfinite(previous))
        {
            EXPECT_LT(err, 0.75 * previous) << res;
            EXPECT_GT(err, 0.25 * previous) << res;
        }
        previous = err;
    }
}
