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

#include <array>
#include <cmath>
#include <functional>
#include <random>

#include <gtest/gtest.h>

#include "holodof/dof_analytic.hpp"
#include "holodof/error.hpp"

using namespace holodof;

namespace
{
const PlacedSurface kBs{1.4, 1.4, 5.0, 0.0};
PlacedSurface user_at(double d, double side = 0.3, double cy = 0.0) { return {side, side, cy, d}; }

// Composite 5-point Gauss-Legendre, written out independently of the library.
constexpr std::array<double, 5> kNodes{-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                                       0.9061798459386640};
constexpr std::array<double, 5> kWeights{0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                         0.4786286704993665, 0.2369268850561891};

std::vector<std::pair<double, double>> composite(double lo, double hi, int panels)
{
    std::vector<std::pair<double, double>> out;
    const double h = (hi - lo) / panels;
    for (int p = 0; p < panels; ++p)
        for (int i = 0; i < 5; ++i)
            out.emplace_back(lo + h * (p + 0.5 + 0.5 * kNodes[i]), 0.5 * h * kWeights[i]);
    return out;
}

// (1 / lambda^2) * int_BS int_U d^2 / (d^2 + |r - s|^2)^2 ds dr
double nested_4d(const PlacedSurface &bs, const PlacedSurface &u, double lambda, int panels)
{
    const auto rx = composite(-bs.side_x / 2, bs.side_x / 2, panels);
    const auto ry = composite(bs.center_y - bs.side_y / 2, bs.center_y + bs.side_y / 2, panels);
    const auto sx = composite(-u.side_x / 2, u.side_x / 2, panels);
    const auto sy = composite(u.center_y - u.side_y / 2, u.center_y + u.side_y / 2, panels);
    const double d2 = u.plane_z * u.plane_z;
    double total = 0.0;
    for (const auto &[x, wx] : rx)
        for (const auto &[y, wy] : ry)
            for (const auto &[a, wa] : sx)
                for (const auto &[b, wb] : sy)
                {
                    const double q = d2 + (x - a) * (x - a) + (y - b) * (y - b);
                    total += wx * wy * wa * wb * d2 / (q * q);
                }
    return total / (lambda * lambda);
}

// Small-surface reduction: the user shrinks to its center, weighted by its area.
double point_user_2d(const PlacedSurface &bs, const PlacedSurface &u, double lambda, int panels)
{
    const auto rx = composite(-bs.side_x / 2, bs.side_x / 2, panels);
    const auto ry = composite(bs.center_y - bs.side_y / 2, bs.center_y + bs.side_y / 2, panels);
    const double d2 = u.plane_z * u.plane_z;
    double total = 0.0;
    for (const auto &[x, wx] : rx)
        for (const auto &[y, wy] : ry)
        {
            const double q = d2 + x * x + (y - u.center_y) * (y - u.center_y);
            total += wx * wy * d2 / (q * q);
        }
    return u.area() * total / (lambda * lambda);
}

// Ray-cast oracle for the blocked term: midpoint lattices on both surfaces,
// counting only target points whose line of sight crosses the occluder.
double blocked_by_rays(const PlacedSurface &bs, const PlacedSurface &occ, const PlacedSurface &tgt, double lambda,
                       int n)
{
    const Rect2D o = occ.global_rect();
    const double d2 = tgt.plane_z * tgt.plane_z;
    const double cell_r = bs.area() / (n * n), cell_s = tgt.area() / (n * n);
    double total = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
        {
            const double x = bs.side_x * ((i + 0.5) / n - 0.5);
            const double y = bs.center_y + bs.side_y * ((j + 0.5) / n - 0.5);
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                {
                    const double a = tgt.side_x * ((k + 0.5) / n - 0.5);
                    const double b = tgt.center_y + tgt.side_y * ((l + 0.5) / n - 0.5);
                    const double t = occ.plane_z / tgt.plane_z;
                    if (!o.contains_strictly({x + t * (a - x), y + t * (b - y)}))
                        continue;
                    const double q = d2 + (x - a) * (x - a) + (y - b) * (y - b);
                    total += d2 / (q * q);
                }
        }
    return total * cell_r * cell_s / (lambda * lambda);
}
} // namespace

TEST(SingleClosed, MatchesPointUserQuadrature)
{
    for (double d : {2.0, 7.87, 14.0, 44.0})
        for (double cy : {0.0, 1.3})
        {
            const PlacedSurface u = user_at(d, 0.3, cy);
            EXPECT_NEAR(dof_single_closed(kBs, u, 0.01) / point_user_2d(kBs, u, 0.01, 8), 1.0, 1e-10) << d;
        }
}

TEST(SingleExact, MatchesNested4dQuadrature)
{
    EXPECT_NEAR(dof_single_exact(kBs, user_at(14.0), 0.01) / nested_4d(kBs, user_at(14.0), 0.01, 2), 1.0, 1e-9);
    const PlacedSurface near_bs{1.0, 1.0, 0.2, 0.0};
    const PlacedSurface near{0.6, 0.4, 0.1, 0.8};
    EXPECT_NEAR(dof_single_exact(near_bs, near, 0.05) / nested_4d(near_bs, near, 0.05, 6), 1.0, 1e-7);
}

TEST(SingleExact, ClosedFormWithinTwoPercentOverSweep)
{
    for (int f = 15; f <= 30; ++f)
    {
        const PlacedSurface u = user_at(distance_from_relative_db(f, kBs));
        const double exact = dof_single_exact(kBs, u, 0.01);
        const double closed = dof_single_closed(kBs, u, 0.01);
        EXPECT_LE(std::abs(closed - exact) / exact, 0.02) << f;
    }
}

TEST(SingleExact, ClosedFormConvergesWithDistance)
{
    const auto gap = [](double d) {
        return std::abs(dof_single_closed(kBs, user_at(d), 0.01) / dof_single_exact(kBs, user_at(d), 0.01) - 1);
    };
    // The sign of the gap flips near d = h0; past that it shrinks steadily.
    for (double d = 3.0; d < 12.0; d += 1.0)
        EXPECT_LT(gap(d), 2e-3) << d;
    double previous = INFINITY;
    for (double d = 12.0; d <= 200.0; d *= 1.25)
    {
        EXPECT_LT(gap(d), previous) << d;
        previous = gap(d);
    }
}

TEST(SingleExact, MonotoneInDistance)
{
    double previous = INFINITY;
    for (int f = 10; f <= 40; f += 2)
    {
        const double n = dof_single_exact(kBs, user_at(distance_from_relative_db(f, kBs)), 0.01);
        EXPECT_LT(n, previous);
        previous = n;
    }
}

TEST(SingleUser, ScaleInvariance)
{
    const PlacedSurface u = user_at(9.0, 0.3, 0.4);
    const double k = 5.0;
    const PlacedSurface bs5{kBs.side_x * k, kBs.side_y * k, kBs.center_y * k, 0.0};
    const PlacedSurface u5{u.side_x * k, u.side_y * k, u.center_y * k, u.plane_z * k};
    EXPECT_NEAR(dof_single_closed(bs5, u5, 0.05) / dof_single_closed(kBs, u, 0.01), 1.0, 1e-12);
    EXPECT_NEAR(dof_single_exact(bs5, u5, 0.05) / dof_single_exact(kBs, u, 0.01), 1.0, 1e-12);
}

TEST(SingleUser, RejectsBadInput)
{
    EXPECT_THROW(dof_single_closed(kBs, user_at(0.0), 0.01), InvalidArgument);
    EXPECT_THROW(dof_single_closed(kBs, user_at(10.0, -0.3), 0.01), InvalidArgument);
    EXPECT_THROW(dof_single_exact(kBs, user_at(10.0), 0.0), InvalidArgument);
}

TEST(RegimeWarning, TenthOfDistance)
{
    EXPECT_TRUE(closed_form_regime_warning(kBs, user_at(2.0)));
    EXPECT_FALSE(closed_form_regime_warning(kBs, user_at(3.0)));
}

TEST(FarField, ParaxialAndClamp)
{
    const PlacedSurface u = user_at(distance_from_relative_db(30.0, kBs));
    EXPECT_NEAR(paraxial_dof(kBs, u, 0.01), 0.9, 1e-12);
    EXPECT_EQ(far_field_reference(kBs, u, 0.01), 1.0);
    EXPECT_NEAR(far_field_reference(kBs, user_at(distance_from_relative_db(15.0, kBs)), 0.01),
                0.9 * std::pow(10.0, 1.5), 1e-9);
}

TEST(Blocked, MatchesRayCastOracle)
{
    const PlacedSurface bs{1.4, 1.4, 0.0, 0.0};
    const double computed = dof_blocked(bs, user_at(10.0), user_at(10.5), 0.01);
    const double oracle = blocked_by_rays(bs, user_at(10.0), user_at(10.5), 0.01, 48);
    EXPECT_GT(computed, 0.0);
    EXPECT_NEAR(computed / oracle, 1.0, 0.02);

    const PlacedSurface occ{0.25, 0.35, 0.1, 1.2};
    const PlacedSurface tgt{0.4, 0.3, -0.05, 1.5};
    const PlacedSurface bs2{1.0, 0.8, 0.2, 0.0};
    EXPECT_NEAR(dof_blocked(bs2, occ, tgt, 0.05) / blocked_by_rays(bs2, occ, tgt, 0.05, 48), 1.0, 0.02);
}

TEST(Blocked, BoundedByTargetAndZeroWhenUnblocked)
{
    const double d1 = 14.0;
    for (double d2 : {14.1, 14.5, 15.0})
    {
        const double blocked = dof_blocked(kBs, user_at(d1), user_at(d2), 0.01);
        EXPECT_GT(blocked, 0.0);
        EXPECT_LT(blocked, dof_single_exact(kBs, user_at(d2), 0.01));
    }
    EXPECT_EQ(dof_blocked(kBs, user_at(d1), user_at(d1 * (1 + 0.6 / 8.3) + 1e-6), 0.01), 0.0);
}

TEST(Multiuser, TotalIsSumMinusBlocked)
{
    const Scenario s(0.01, kBs, {user_at(14.5), user_at(14.0), user_at(20.0, 0.3, 2.0)});
    const DofReport r = dof_multiuser(s);
    ASSERT_EQ(r.per_user.size(), 3u);
    EXPECT_EQ(r.pairwise_blocked.size(), 3u);
    EXPECT_EQ(r.per_user[0].dof, dof_single_exact(kBs, user_at(14.0), 0.01));
    EXPECT_NEAR(r.total, r.single_sum() - r.blocked_sum(), 1e-12 * r.total);
    EXPECT_GT(r.blocked_sum(), 0.0);
    EXPECT_EQ(r.clamped_total, std::max(r.total, 1.0));
}

TEST(Multiuser, UnblockedTotalIsBitExactSum)
{
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 10; ++i)
    {
        const double d1 = 5.0 + 20.0 * u(rng);
        const double d2 = d1 * (1 + 0.6 / 8.3) * (1.0 + u(rng));
        const Scenario s(0.01, kBs, {user_at(d1), user_at(d2)});
        const DofReport r = dof_multiuser(s);
        EXPECT_EQ(r.blocked_sum(), 0.0);
        EXPECT_EQ(r.total, r.per_user[0].dof + r.per_user[1].dof);
    }
}

TEST(Multiuser, ClosedFormWarnsOutsideRegime)
{
    MultiuserOptions o;
    o.single = SingleUserMethod::closed_form;
    const DofReport r = dof_multiuser(Scenario(0.01, kBs, {user_at(2.0)}), o);
    EXPECT_EQ(r.warnings.size(), 1u);
    EXPECT_EQ(r.per_user[0].method, SingleUserMethod::closed_form);
}

TEST(Multiuser, TripleOverlapRejected)
{
    const PlacedSurface bs{1.4, 1.4, 0.0, 0.0};
    const Scenario s(0.01, bs, {user_at(10.0), user_at(10.2), user_at(10.4)});
    try
    {
        dof_multiuser(s);
        FAIL() << "expected TripleOverlap";
    }
    catch (const TripleOverlap &e)
    {
        EXPECT_EQ(e.first_occluder(), 0u);
        EXPECT_EQ(e.second_occluder(), 1u);
        EXPECT_EQ(e.target(), 2u);
    }
}

TEST(Multiuser, CoplanarRejectedEvenWhenAllowed)
{
    const Scenario s(0.01, kBs, {user_at(10.0), user_at(10.0, 0.3, 3.0)}, true);
    EXPECT_THROW(dof_multiuser(s), InvalidArgument);
}

TEST(SingleClosed, SymmetricFormAtZeroHeight)
{
    const PlacedSurface bs{1.4, 1.0, 0.0, 0.0};
    const PlacedSurface u{0.3, 0.2, 0.0, 4.0};
    const double lambda = 0.01, d = 4.0, rx = 1.4, ry = 1.0;
    const double ax = std::sqrt(4 * d * d + rx * rx), ay = std::sqrt(4 * d * d + ry * ry);
    const double expected = 2 * u.area() / (lambda * lambda) * (rx / ax * std::atan(ry / ax) + ry / ay * std::atan(rx / ay));
    EXPECT_NEAR(dof_single_closed(bs, u, lambda) / expected, 1.0, 1e-13);
}

TEST(SingleClosed, FarDistanceApproachesParaxial)
{
    const PlacedSurface u = user_at(1000.0);
    EXPECT_NEAR(dof_single_closed(kBs, u, 0.01) / 1.764e-3, 1.0, 0.01);
    const DofReport r = dof_multiuser(Scenario(0.01, kBs, {u}));
    EXPECT_EQ(r.clamped_total, 1.0);
    EXPECT_LT(r.total, 0.01);
    for (double d : {250.0, 400.0, 1000.0})
        EXPECT_NEAR(paraxial_dof(kBs, user_at(d), 0.01) / dof_single_closed(kBs, user_at(d), 0.01), 1.0, 0.01) << d;
    EXPECT_GT(paraxial_dof(kBs, user_at(1e-3), 0.01), 1e6);
}

TEST(SingleExact, SmallConfigNestedOracle)
{
    const PlacedSurface bs{0.4, 0.4, 0.0, 0.0};
    const PlacedSurface u{0.2, 0.2, 0.0, 1.0};
    EXPECT_NEAR(dof_single_exact(bs, u, 0.01) / nested_4d(bs, u, 0.01, 3), 1.0, 1e-6);
}

TEST(SingleExact, ClosedFormAboveExactAndConvergingAtZeroHeight)
{
    // Averaging the peaked density over the user lowers it, so the point-user
    // closed form sits above the exact value.
    const PlacedSurface bs{0.4, 0.4, 0.0, 0.0};
    double previous = INFINITY;
    for (double d = 2.0; d <= 100.0; d *= 1.5)
    {
        const PlacedSurface u{0.2, 0.2, 0.0, d};
        const double closed = dof_single_closed(bs, u, 0.01), exact = dof_single_exact(bs, u, 0.01);
        EXPECT_GT(closed, exact) << d;
        EXPECT_LT(closed / exact - 1, previous) << d;
        previous = closed / exact - 1;
    }
}

TEST(SingleExact, MirrorSymmetry)
{
    const PlacedSurface u{0.3, 0.2, 0.4, 3.0};
    const PlacedSurface bs{1.4, 1.0, 0.2, 0.0};
    // Flipping y about the BS center is the same as flipping the user's offset.
    const PlacedSurface mirrored{0.3, 0.2, 2 * bs.center_y - u.center_y, 3.0};
    EXPECT_NEAR(dof_single_exact(bs, u, 0.01) / dof_single_exact(bs, mirrored, 0.01), 1.0, 1e-12);
}

TEST(Blocked, ShrinksToZeroAsGapGrows)
{
    const double d1 = 14.0, threshold = d1 * 0.6 / 8.3;
    double previous = INFINITY;
    for (int i = 1; i <= 12; ++i)
    {
        const double n = dof_blocked(kBs, user_at(d1), user_at(d1 + threshold * i / 12.0), 0.01);
        EXPECT_GE(n, 0.0);
        EXPECT_LT(n, previous);
        previous = n;
    }
    EXPECT_EQ(previous, 0.0);
}

TEST(Multiuser, TotalBelowSumAndPermutationInvariant)
{
    const std::vector<PlacedSurface> users{user_at(14.0), user_at(14.5), user_at(30.0, 0.3, 3.0)};
    const double total = dof_multiuser(Scenario(0.01, kBs, users)).total;
    const DofReport r = dof_multiuser(Scenario(0.01, kBs, {users[2], users[0], users[1]}));
    EXPECT_EQ(r.total, total);
    EXPECT_LT(r.total, r.single_sum());
    const DofReport free = dof_multiuser(Scenario(0.01, kBs, {user_at(14.0), user_at(16.0)}));
    EXPECT_EQ(free.total, free.single_sum());
}
