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

#include "holodof/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "holodof/error.hpp"

namespace holodof
{
namespace
{
GaussRule build_rule(int n)
{
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    // Newton iteration on P_n from the Chebyshev-like initial guess.
    for (int i = 0; i < (n + 1) / 2; ++i)
    {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter)
        {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k)
            {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1)
        rule.nodes[n / 2] = 0.0;
    return rule;
}

struct Panel
{
    Rect2D rect;
    double value;
    double error;
    int depth;
    bool active;
};

double tensor_rule(const ScalarField &f, const Rect2D &r, const GaussRule &rule)
{
    const double cx = 0.5 * (r.x_lo + r.x_hi);
    const double hx = 0.5 * (r.x_hi - r.x_lo);
    const double cy = 0.5 * (r.y_lo + r.y_hi);
    const double hy = 0.5 * (r.y_hi - r.y_lo);
    const std::size_t n = rule.nodes.size();
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
        const double x = cx + hx * rule.nodes[i];
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j)
        {
            const double y = cy + hy * rule.nodes[j];
            const double v = f(x, y);
            if (!std::isfinite(v))
            {
                std::ostringstream os;
                os << "integrand is not finite at (" << x << ", " << y << ")";
                throw Error(os.str());
            }
            row += rule.weights[j] * v;
        }
        sum += rule.weights[i] * row;
    }
    return sum * hx * hy;
}

Panel evaluate(const ScalarField &f, const Rect2D &r, int depth, const GaussRule &lo,
               const GaussRule &hi)
{
    const double coarse = tensor_rule(f, r, lo);
    const double fine = tensor_rule(f, r, hi);
    return {r, fine, std::abs(fine - coarse), depth, true};
}

// Neumaier-compensated sums over the active panels, in index order.
void totals(const std::vector<Panel> &panels, double &value, double &error)
{
    double s = 0.0, c = 0.0, e = 0.0;
    for (const auto &p : panels)
    {
        if (!p.active)
            continue;
        const double t = s + p.value;
        c += (std::abs(s) >= std::abs(p.value)) ? (s - t) + p.value : (p.value - t) + s;
        s = t;
        e += p.error;
    }
    value = s + c;
    error = e;
}
} // namespace

void QuadratureSpec::validate() const
{
    if (base_order < 2)
        throw InvalidArgument("quadrature base_order must be at least 2");
    if (max_depth < 0)
        throw InvalidArgument("quadrature max_depth must be non-negative");
    if (!(rel_tol > 0.0))
        throw InvalidArgument("quadrature rel_tol must be positive");
    if (!(abs_floor >= 0.0))
        throw InvalidArgument("quadrature abs_floor must be non-negative");
}

const GaussRule &gauss_legendre(int order)
{
    if (order < 1)
        throw InvalidArgument("Gauss-Legendre order must be positive");
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<GaussRule>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto &slot = cache[order];
    if (!slot)
        slot = std::make_unique<GaussRule>(build_rule(order));
    return *slot;
}

QuadratureResult integrate_rect(const ScalarField &f, const Rect2D &rect, const QuadratureSpec &spec)
{
    spec.validate();
    if (rect.is_empty())
        return {};

    const GaussRule &lo = gauss_legendre(spec.base_order);
    const GaussRule &hi = gauss_legendre(2 * spec.base_order);

    std::vector<Panel> panels;
    panels.push_back(evaluate(f, rect, 0, lo, hi));

    double value = 0.0;
    double error = 0.0;
    for (;;)
    {
        totals(panels, value, error);
        if (error <= spec.rel_tol * std::abs(value) + spec.abs_floor)
            break;

        std::size_t worst = panels.size();
        for (std::size_t i = 0; i < panels.size(); ++i)
        {
            const Panel &p = panels[i];
            if (p.active && p.depth < spec.max_depth &&
                (worst == panels.size() || p.error > panels[worst].error))
                worst = i;
        }
        if (worst == panels.size())
            throw NonConvergence("adaptive quadrature reached max_depth without meeting tolerance",
                                 value, error);

        Panel parent = panels[worst];
        panels[worst].active = false;
        const Rect2D &r = parent.rect;
        Rect2D a = r;
        Rect2D b = r;
        if (r.x_hi - r.x_lo >= r.y_hi - r.y_lo)
        {
            const double mid = 0.5 * (r.x_lo + r.x_hi);
            a.x_hi = mid;
            b.x_lo = mid;
        }
        else
        {
            const double mid = 0.5 * (r.y_lo + r.y_hi);
            a.y_hi = mid;
            b.y_lo = mid;
        }
        panels.push_back(evaluate(f, a, parent.depth + 1, lo, hi));
        panels.push_back(evaluate(f, b, parent.depth + 1, lo, hi));
    }

    std::size_t active = 0;
    for (const auto &p : panels)
        active += p.active ? 1 : 0;
    return {value, error, active};
}
} // namespace holodof
