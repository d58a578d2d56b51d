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

#include <string>
#include <vector>

namespace holodof
{
struct Point2
{
    double x = 0.0;
    double y = 0.0;
};

struct Point3
{
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

//---------------------------------------------------------------------------//
/*!
 * Axis-aligned rectangle in the local frame of some plane.
 *
 * The empty rectangle is canonical: all four bounds are zero. Any operation
 * that would produce a rectangle with a non-positive extent returns the
 * canonical empty value instead, so area and quadrature need no special case.
 */
struct Rect2D
{
    double x_lo = 0.0;
    double x_hi = 0.0;
    double y_lo = 0.0;
    double y_hi = 0.0;

    static Rect2D empty() { return {}; }

    // Construct, collapsing to the canonical empty value when degenerate.
    static Rect2D from_bounds(double x_lo, double x_hi, double y_lo, double y_hi);

    bool is_empty() const { return !(x_hi > x_lo && y_hi > y_lo); }
    double width() const { return is_empty() ? 0.0 : x_hi - x_lo; }
    double height() const { return is_empty() ? 0.0 : y_hi - y_lo; }
    double area() const { return width() * height(); }
    Point2 center() const { return {0.5 * (x_lo + x_hi), 0.5 * (y_lo + y_hi)}; }

    // Closed containment.
    bool contains(Point2 p) const
    {
        return !is_empty() && p.x >= x_lo && p.x <= x_hi && p.y >= y_lo && p.y <= y_hi;
    }
    // Open containment: the boundary is excluded.
    bool contains_strictly(Point2 p) const
    {
        return !is_empty() && p.x > x_lo && p.x < x_hi && p.y > y_lo && p.y < y_hi;
    }
    // True when other lies inside this rectangle (empty is inside everything).
    bool encloses(const Rect2D &other) const;

    Rect2D translated(double dx, double dy) const;
    Rect2D intersect(const Rect2D &other) const;

    friend bool operator==(const Rect2D &, const Rect2D &) = default;
};

//---------------------------------------------------------------------------//
/*!
 * A rectangular surface lying in a plane z = plane_z and centered at x = 0.
 *
 * Base stations sit at plane_z = 0 with their center raised to center_y;
 * users usually have center_y = 0 and a positive plane_z.
 */
struct PlacedSurface
{
    double side_x = 0.0;
    double side_y = 0.0;
    double center_y = 0.0;
    double plane_z = 0.0;

    // Throws InvalidArgument when a side is non-positive or plane_z < 0.
    void validate() const;

    double area() const { return side_x * side_y; }
    // Rectangle centered at the origin of the surface's own frame.
    Rect2D local_rect() const;
    // Rectangle in global (x, y) coordinates of its plane.
    Rect2D global_rect() const;
};

//---------------------------------------------------------------------------//
/*!
 * Medium, base station and users. Users are kept sorted by ascending plane_z.
 *
 * Co-planar users are rejected unless allow_coplanar is set; the blocking
 * analysis rejects them regardless.
 */
class Scenario
{
  public:
    Scenario(double wavelength, PlacedSurface bs, std::vector<PlacedSurface> users,
             bool allow_coplanar = false);

    double wavelength() const { return wavelength_; }
    double kappa0() const { return kappa0_; }
    const PlacedSurface &bs() const { return bs_; }
    const std::vector<PlacedSurface> &users() const { return users_; }
    bool allow_coplanar() const { return allow_coplanar_; }

    // Same geometry with the wavelength and every length multiplied by factor.
    Scenario scaled(double factor) const;

  private:
    double wavelength_;
    double kappa0_;
    PlacedSurface bs_;
    std::vector<PlacedSurface> users_;
    bool allow_coplanar_;
};

// Relative distance F = d^2 / (Rx Ry), in dB, and its inverse.
double relative_distance_db(double distance, const PlacedSurface &bs);
double distance_from_relative_db(double f_db, const PlacedSurface &bs);

//---------------------------------------------------------------------------//
// Blocking between two users
//---------------------------------------------------------------------------//

struct BlockingCheck
{
    bool no_blocking = false;
    // Set when 2 h0 - Sy - Ry vanishes and the closed-form test is undefined;
    // the verdict then comes from the geometric shadow test.
    bool boundary_fallback = false;
    std::string note;
};

// Closed-form sufficient condition for two equal-size users never shadowing
// each other from anywhere on the base station. user1 must be the nearer one.
BlockingCheck check_no_blocking(const PlacedSurface &bs, const PlacedSurface &user1,
                                const PlacedSurface &user2);
bool no_blocking_condition(const PlacedSurface &bs, const PlacedSurface &user1,
                           const PlacedSurface &user2);

// Part of target's surface hidden behind occluder as seen from a point of the
// base station. viewpoint is local to the base-station center; the result is
// in the target's local frame.
Rect2D shadow_region(Point2 viewpoint, const PlacedSurface &occluder, const PlacedSurface &target,
                     const PlacedSurface &bs);

// Sub-rectangles of the base station (local frame) on which shadow_region is
// non-empty, split wherever a shadow edge crosses a target edge so that the
// shadow bounds are affine in the viewpoint on every piece.
std::vector<Rect2D> blocked_domain_on_bs(const PlacedSurface &occluder, const PlacedSurface &target,
                                         const PlacedSurface &bs);

// True when some base-station point sees a positive-area part of target
// hidden behind both occluders simultaneously.
bool shadows_overlap(const PlacedSurface &occluder_a, const PlacedSurface &occluder_b,
                     const PlacedSurface &target, const PlacedSurface &bs);
} // namespace holodof
