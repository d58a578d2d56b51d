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

#include "holodof/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "holodof/error.hpp"

namespace holodof
{
namespace
{
// Viewpoints produced by quadrature lie strictly inside the base station;
// callers sampling its closed boundary get a little slack.
constexpr double kViewpointSlack = 1e-9;

// Occluder shadow on the target plane, per axis: interval
// [lo0 - slope * v, hi0 - slope * v] for a viewpoint coordinate v.
struct MovingInterval
{
    double lo0;
    double hi0;
    double slope;
};

MovingInterval project_axis(double occ_lo, double occ_hi, double d1, double d2)
{
    const double scale = d2 / d1;
    return {occ_lo * scale, occ_hi * scale, (d2 - d1) / d1};
}

void require_ordered_pair(const PlacedSurface &occluder, const PlacedSurface &target,
                          const PlacedSurface &bs)
{
    occluder.validate();
    target.validate();
    bs.validate();
    if (bs.plane_z != 0.0)
        throw InvalidArgument("base station must lie in the plane z = 0");
    if (occluder.plane_z == target.plane_z)
        throw InvalidArgument("co-planar user surfaces are not supported by the blocking analysis");
    if (occluder.plane_z <= 0.0 || occluder.plane_z > target.plane_z)
        throw InvalidArgument("occluder must lie strictly between the base station and the target");
}

// Breakpoints [lo, ..., hi] of the viewpoint range on which the moving
// interval overlaps [t_lo, t_hi] with positive length. Empty when it never does.
std::vector<double> axis_pieces(const MovingInterval &s, double t_lo, double t_hi, double c_lo,
                                double c_hi)
{
    const double lo = std::max(c_lo, (s.lo0 - t_hi) / s.slope);
    const double hi = std::min(c_hi, (s.hi0 - t_lo) / s.slope);
    if (!(hi > lo))
        return {};
    std::vector<double> pts{lo, hi};
    for (double b : {(s.hi0 - t_hi) / s.slope, (s.lo0 - t_lo) / s.slope})
        if (b > lo && b < hi)
            pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

// Does some v in [c_lo, c_hi] give all three intervals a common part of
// positive length? Each "low_p(v) < high_q(v)" is a half-line in v.
bool common_overlap_exists(const std::array<MovingInterval, 3> &ivs, double c_lo, double c_hi)
{
    double lo = c_lo;
    double hi = c_hi;
    for (const auto &p : ivs)
    {
        for (const auto &q : ivs)
        {
            // high_q(v) - low_p(v) = alpha + beta v > 0
            const double alpha = q.hi0 - p.lo0;
            const double beta = p.slope - q.slope;
            if (beta == 0.0)
            {
                if (!(alpha > 0.0))
                    return false;
                continue;
            }
            const double root = -alpha / beta;
            if (beta > 0.0)
                lo = std::max(lo, root);
            else
                hi = std::min(hi, root);
        }
    }
    return hi > lo;
}
} // namespace

//---------------------------------------------------------------------------//
// Rect2D
//---------------------------------------------------------------------------//

Rect2D Rect2D::from_bounds(double x_lo, double x_hi, double y_lo, double y_hi)
{
    if (!(x_hi > x_lo && y_hi > y_lo))
        return empty();
    return {x_lo, x_hi, y_lo, y_hi};
}

bool Rect2D::encloses(const Rect2D &other) const
{
    if (other.is_empty())
        return true;
    if (is_empty())
        return false;
    return other.x_lo >= x_lo && other.x_hi <= x_hi && other.y_lo >= y_lo && other.y_hi <= y_hi;
}

Rect2D Rect2D::translated(double dx, double dy) const
{
    if (is_empty())
        return empty();
    return {x_lo + dx, x_hi + dx, y_lo + dy, y_hi + dy};
}

Rect2D Rect2D::intersect(const Rect2D &other) const
{
    if (is_empty() || other.is_empty())
        return empty();
    return from_bounds(std::max(x_lo, other.x_lo), std::min(x_hi, other.x_hi),
                       std::max(y_lo, other.y_lo), std::min(y_hi, other.y_hi));
}

//---------------------------------------------------------------------------//
// PlacedSurface / Scenario
//---------------------------------------------------------------------------//

void PlacedSurface::validate() const
{
    if (!(side_x > 0.0) || !(side_y > 0.0) || !std::isfinite(side_x) || !std::isfinite(side_y))
        throw InvalidArgument("surface side lengths must be positive and finite");
    if (!(plane_z >= 0.0) || !std::isfinite(plane_z) || !std::isfinite(center_y))
        throw InvalidArgument("surface plane offset must be finite and non-negative");
}

Rect2D PlacedSurface::local_rect() const
{
    return Rect2D::from_bounds(-0.5 * side_x, 0.5 * side_x, -0.5 * side_y, 0.5 * side_y);
}

Rect2D PlacedSurface::global_rect() const
{
    return local_rect().translated(0.0, center_y);
}

Scenario::Scenario(double wavelength, PlacedSurface bs, std::vector<PlacedSurface> users,
                   bool allow_coplanar)
    : wavelength_(wavelength), kappa0_(0.0), bs_(bs), users_(std::move(users)),
      allow_coplanar_(allow_coplanar)
{
    if (!(wavelength_ > 0.0) || !std::isfinite(wavelength_))
        throw InvalidArgument("wavelength must be positive and finite");
    kappa0_ = 2.0 * M_PI / wavelength_;
    bs_.validate();
    if (bs_.plane_z != 0.0)
        throw InvalidArgument("base station must lie in the plane z = 0");
    if (users_.empty())
        throw InvalidArgument("scenario needs at least one user");
    for (const auto &u : users_)
    {
        u.validate();
        if (!(u.plane_z > 0.0))
            throw InvalidArgument("user surfaces must lie at a positive distance from the base station");
    }
    std::stable_sort(users_.begin(), users_.end(),
                     [](const PlacedSurface &a, const PlacedSurface &b) { return a.plane_z < b.plane_z; });
    if (!allow_coplanar_)
    {
        for (std::size_t i = 1; i < users_.size(); ++i)
            if (users_[i].plane_z == users_[i - 1].plane_z)
                throw InvalidArgument("co-planar users must be flagged explicitly");
    }
}

Scenario Scenario::scaled(double factor) const
{
    if (!(factor > 0.0) || !std::isfinite(factor))
        throw InvalidArgument("scale factor must be positive and finite");
    auto scale = [factor](PlacedSurface s) {
        s.side_x *= factor;
        s.side_y *= factor;
        s.center_y *= factor;
        s.plane_z *= factor;
        return s;
    };
    std::vector<PlacedSurface> users;
    users.reserve(users_.size());
    for (const auto &u : users_)
        users.push_back(scale(u));
    return Scenario(wavelength_ * factor, scale(bs_), std::move(users), allow_coplanar_);
}

double relative_distance_db(double distance, const PlacedSurface &bs)
{
    if (!(distance > 0.0))
        throw InvalidArgument("distance must be positive");
    return 10.0 * std::log10(distance * distance / (bs.side_x * bs.side_y));
}

double distance_from_relative_db(double f_db, const PlacedSurface &bs)
{
    if (!std::isfinite(f_db))
        throw InvalidArgument("relative distance must be finite");
    return std::sqrt(std::pow(10.0, f_db / 10.0) * bs.side_x * bs.side_y);
}

//---------------------------------------------------------------------------//
// Blocking
//---------------------------------------------------------------------------//

BlockingCheck check_no_blocking(const PlacedSurface &bs, const PlacedSurface &user1,
                                const PlacedSurface &user2)
{
    require_ordered_pair(user1, user2, bs);
    if (user1.side_x != user2.side_x || user1.side_y != user2.side_y)
        throw InvalidArgument("closed-form blocking condition needs equal-size users");
    if (user1.center_y != user2.center_y)
        throw InvalidArgument("closed-form blocking condition needs users at the same height");

    const double h0 = bs.center_y - user1.center_y;
    const double ry = bs.side_y;
    const double sy = user1.side_y;
    const double d1 = user1.plane_z;
    const double delta = user2.plane_z - user1.plane_z;
    const double denom = 2.0 * h0 - sy - ry;

    BlockingCheck out;
    if (std::abs(denom) <= 1e-12 * (2.0 * std::abs(h0) + sy + ry))
    {
        out.boundary_fallback = true;
        out.note = "condition undefined at boundary";
        out.no_blocking = blocked_domain_on_bs(user1, user2, bs).empty();
        return out;
    }
    if (denom < 0.0)
    {
        out.no_blocking = false;
        return out;
    }
    out.no_blocking = delta >= (2.0 * sy / denom) * d1;
    return out;
}

bool no_blocking_condition(const PlacedSurface &bs, const PlacedSurface &user1,
                           const PlacedSurface &user2)
{
    return check_no_blocking(bs, user1, user2).no_blocking;
}

Rect2D shadow_region(Point2 viewpoint, const PlacedSurface &occluder, const PlacedSurface &target,
                     const PlacedSurface &bs)
{
    require_ordered_pair(occluder, target, bs);
    const double sx = 0.5 * bs.side_x * (1.0 + kViewpointSlack);
    const double sy = 0.5 * bs.side_y * (1.0 + kViewpointSlack);
    if (std::abs(viewpoint.x) > sx || std::abs(viewpoint.y) > sy)
        throw InvalidArgument("viewpoint lies outside the base station surface");

    const double d1 = occluder.plane_z;
    const double d2 = target.plane_z;
    const Rect2D occ = occluder.global_rect();
    const double vx = viewpoint.x;
    const double vy = bs.center_y + viewpoint.y;

    const MovingInterval px = project_axis(occ.x_lo, occ.x_hi, d1, d2);
    const MovingInterval py = project_axis(occ.y_lo, occ.y_hi, d1, d2);
    const Rect2D projected = Rect2D::from_bounds(px.lo0 - px.slope * vx, px.hi0 - px.slope * vx,
                                                 py.lo0 - py.slope * vy, py.hi0 - py.slope * vy);
    return projected.intersect(target.global_rect()).translated(0.0, -target.center_y);
}

std::vector<Rect2D> blocked_domain_on_bs(const PlacedSurface &occluder, const PlacedSurface &target,
                                         const PlacedSurface &bs)
{
    require_ordered_pair(occluder, target, bs);
    const double d1 = occluder.plane_z;
    const double d2 = target.plane_z;
    const Rect2D occ = occluder.global_rect();
    const Rect2D tgt = target.global_rect();
    const Rect2D base = bs.global_rect();

    const auto xs = axis_pieces(project_axis(occ.x_lo, occ.x_hi, d1, d2), tgt.x_lo, tgt.x_hi,
                                base.x_lo, base.x_hi);
    const auto ys = axis_pieces(project_axis(occ.y_lo, occ.y_hi, d1, d2), tgt.y_lo, tgt.y_hi,
                                base.y_lo, base.y_hi);
    std::vector<Rect2D> pieces;
    if (xs.empty() || ys.empty())
        return pieces;
    for (std::size_t i = 0; i + 1 < xs.size(); ++i)
    {
        for (std::size_t j = 0; j + 1 < ys.size(); ++j)
        {
            const Rect2D piece = Rect2D::from_bounds(xs[i], xs[i + 1], ys[j] - bs.center_y,
                                                     ys[j + 1] - bs.center_y)
                                     .intersect(bs.local_rect());
            if (!piece.is_empty())
                pieces.push_back(piece);
        }
    }
    return pieces;
}

bool shadows_overlap(const PlacedSurface &occluder_a, const PlacedSurface &occluder_b,
                     const PlacedSurface &target, const PlacedSurface &bs)
{
    require_ordered_pair(occluder_a, target, bs);
    require_ordered_pair(occluder_b, target, bs);
    const double d2 = target.plane_z;
    const Rect2D a = occluder_a.global_rect();
    const Rect2D b = occluder_b.global_rect();
    const Rect2D t = target.global_rect();
    const Rect2D base = bs.global_rect();

    const std::array<MovingInterval, 3> xs{project_axis(a.x_lo, a.x_hi, occluder_a.plane_z, d2),
                                           project_axis(b.x_lo, b.x_hi, occluder_b.plane_z, d2),
                                           MovingInterval{t.x_lo, t.x_hi, 0.0}};
    const std::array<MovingInterval, 3> ys{project_axis(a.y_lo, a.y_hi, occluder_a.plane_z, d2),
                                           project_axis(b.y_lo, b.y_hi, occluder_b.plane_z, d2),
                                           MovingInterval{t.y_lo, t.y_hi, 0.0}};
    return common_overlap_exists(xs, base.x_lo, base.x_hi) &&
           common_overlap_exists(ys, base.y_lo, base.y_hi);
}
} // namespace holodof
