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

#include "holodof/dof_analytic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "holodof/error.hpp"
#include "holodof/wavenumber.hpp"

namespace holodof
{
namespace
{
void require_link(const PlacedSurface &bs, const PlacedSurface &user, double wavelength)
{
    bs.validate();
    user.validate();
    if (!(wavelength > 0.0))
        throw InvalidArgument("wavelength must be positive");
    if (bs.plane_z != 0.0)
        throw InvalidArgument("base station must lie in the plane z = 0");
    if (!(user.plane_z > 0.0))
        throw InvalidArgument("user distance must be positive");
}

double inv_four_pi_sq()
{
    return 1.0 / (4.0 * M_PI * M_PI);
}
} // namespace

const char *to_string(SingleUserMethod method)
{
    switch (method)
    {
    case SingleUserMethod::exact_integral:
        return "exact_integral";
    case SingleUserMethod::closed_form:
        return "closed_form";
    }
    return "unknown";
}

double DofReport::single_sum() const
{
    double s = 0.0;
    for (const auto &u : per_user)
        s += u.dof;
    return s;
}

double DofReport::blocked_sum() const
{
    double s = 0.0;
    for (const auto &b : pairwise_blocked)
        s += b.dof;
    return s;
}

double dof_single_closed(const PlacedSurface &bs, const PlacedSurface &user, double wavelength)
{
    require_link(bs, user, wavelength);
    const double d = user.plane_z;
    const double h0 = bs.center_y - user.center_y;
    const double rx = bs.side_x;
    const double ry = bs.side_y;
    const double up = ry + 2.0 * h0;
    const double dn = ry - 2.0 * h0;
    const double four_d2 = 4.0 * d * d;

    const double qx = std::sqrt(four_d2 + rx * rx);
    const double qu = std::sqrt(four_d2 + up * up);
    const double qd = std::sqrt(four_d2 + dn * dn);
    const double bracket = (rx / qx) * (std::atan(up / qx) + std::atan(dn / qx)) +
                           (up / qu) * std::atan(rx / qu) + (dn / qd) * std::atan(rx / qd);
    return user.side_x * user.side_y / (wavelength * wavelength) * bracket;
}

bool closed_form_regime_warning(const PlacedSurface &bs, const PlacedSurface &user)
{
    const double d = user.plane_z - bs.plane_z;
    return std::max(user.side_x, user.side_y) / d > 0.1;
}

double dof_single_exact(const PlacedSurface &bs, const PlacedSurface &user, double wavelength,
                        const QuadratureSpec &spec)
{
    require_link(bs, user, wavelength);
    const double kappa0 = 2.0 * M_PI / wavelength;
    const Rect2D target = user.global_rect();
    const double d = user.plane_z;
    const auto bandwidth = [&](double x, double y) {
        return bandwidth_closed_form({x, y}, target, d, kappa0);
    };
    return inv_four_pi_sq() * integrate_rect(bandwidth, bs.global_rect(), spec).value;
}

double dof_blocked(const PlacedSurface &bs, const PlacedSurface &occluder, const PlacedSurface &target,
                   double wavelength, const QuadratureSpec &spec)
{
    require_link(bs, occluder, wavelength);
    require_link(bs, target, wavelength);
    const double kappa0 = 2.0 * M_PI / wavelength;
    const double d2 = target.plane_z;
    const auto overlap = [&](double rx, double ry) {
        const Rect2D shadow = shadow_region({rx, ry}, occluder, target, bs).translated(0.0, target.center_y);
        return bandwidth_closed_form({rx, bs.center_y + ry}, shadow, d2, kappa0);
    };
    double sum = 0.0;
    for (const Rect2D &piece : blocked_domain_on_bs(occluder, target, bs))
        sum += integrate_rect(overlap, piece, spec).value;
    return inv_four_pi_sq() * sum;
}

DofReport dof_multiuser(const Scenario &scenario, const MultiuserOptions &options)
{
    const auto &users = scenario.users();
    const auto &bs = scenario.bs();
    const double lambda = scenario.wavelength();

    for (std::size_t i = 1; i < users.size(); ++i)
        if (users[i].plane_z == users[i - 1].plane_z)
            throw InvalidArgument("co-planar users are rejected by the blocking analysis");

    for (std::size_t t = 0; t < users.size(); ++t)
    {
        for (std::size_t a = 0; a < t; ++a)
        {
            for (std::size_t b = a + 1; b < t; ++b)
            {
                if (shadows_overlap(users[a], users[b], users[t], bs))
                {
                    std::ostringstream os;
                    os << "user " << t << " is shadowed by users " << a << " and " << b
                       << " simultaneously; only pairwise blocking is supported";
                    throw TripleOverlap(os.str(), a, b, t);
                }
            }
        }
    }

    DofReport report;
    for (std::size_t i = 0; i < users.size(); ++i)
    {
        UserDof entry{i, 0.0, options.single};
        if (options.single == SingleUserMethod::closed_form)
        {
            entry.dof = dof_single_closed(bs, users[i], lambda);
            if (closed_form_regime_warning(bs, users[i]))
            {
                std::ostringstream os;
                os << "user " << i << ": surface side exceeds 0.1 d, closed form may be inaccurate";
                report.warnings.push_back(os.str());
            }
        }
        else
        {
            entry.dof = dof_single_exact(bs, users[i], lambda, options.quadrature);
        }
        report.per_user.push_back(entry);
    }
    for (std::size_t j = 0; j < users.size(); ++j)
        for (std::size_t i = 0; i < j; ++i)
            report.pairwise_blocked.push_back(
                {i, j, dof_blocked(bs, users[i], users[j], lambda, options.quadrature)});

    report.total = report.single_sum() - report.blocked_sum();
    report.clamped_total = std::max(report.total, 1.0);
    return report;
}

double paraxial_dof(const PlacedSurface &bs, const PlacedSurface &user, double wavelength)
{
    require_link(bs, user, wavelength);
    const double d = user.plane_z;
    return user.area() * bs.area() / (wavelength * wavelength * d * d);
}

double far_field_reference(const PlacedSurface &bs, const PlacedSurface &user, double wavelength)
{
    return std::max(paraxial_dof(bs, user, wavelength), 1.0);
}
} // namespace holodof
