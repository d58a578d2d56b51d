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

#include "holodof/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "holodof/error.hpp"
#include "holodof/wavenumber.hpp"

namespace holodof
{
namespace
{
using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

//---------------------------------------------------------------------------//
// Strict JSON reader that remembers where it is.
//---------------------------------------------------------------------------//

class Node
{
  public:
    Node(const json &value, std::string path) : value_(value), path_(std::move(path)) {}

    [[noreturn]] void fail(const std::string &message) const
    {
        throw InvalidArgument("config error at " + path_ + ": " + message);
    }

    const std::string &path() const { return path_; }
    const json &value() const { return value_; }

    void expect_object(std::initializer_list<std::string_view> allowed) const
    {
        if (!value_.is_object())
            fail("expected an object");
        for (const auto &item : value_.items())
        {
            if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end())
                Node(item.value(), path_ + "." + item.key()).fail("unknown key");
        }
    }

    std::optional<Node> child(const char *key) const
    {
        const auto it = value_.find(key);
        if (it == value_.end())
            return std::nullopt;
        return Node(*it, path_ + "." + key);
    }

    double as_number() const
    {
        if (!value_.is_number())
            fail("expected a number");
        const double v = value_.get<double>();
        if (!std::isfinite(v))
            fail("expected a finite number");
        return v;
    }

    double as_positive() const
    {
        const double v = as_number();
        if (!(v > 0.0))
            fail("must be positive");
        return v;
    }

    bool as_bool() const
    {
        if (!value_.is_boolean())
            fail("expected true or false");
        return value_.get<bool>();
    }

    std::string as_string() const
    {
        if (!value_.is_string())
            fail("expected a string");
        return value_.get<std::string>();
    }

    std::int64_t as_integer() const
    {
        if (!value_.is_number_integer())
            fail("expected an integer");
        return value_.get<std::int64_t>();
    }

  private:
    const json &value_;
    std::string path_;
};

void read_positive(const Node &obj, const char *key, double &target)
{
    if (auto n = obj.child(key))
        target = n->as_positive();
}

void read_positive(const Node &obj, const char *key, std::optional<double> &target)
{
    if (auto n = obj.child(key))
        target = n->as_positive();
}

void read_number(const Node &obj, const char *key, double &target)
{
    if (auto n = obj.child(key))
        target = n->as_number();
}

void read_number(const Node &obj, const char *key, std::optional<double> &target)
{
    if (auto n = obj.child(key))
        target = n->as_number();
}

template <class Enum>
Enum enum_value(const Node &node, std::initializer_list<std::pair<std::string_view, Enum>> choices)
{
    const std::string s = node.as_string();
    for (const auto &[name, value] : choices)
        if (name == s)
            return value;
    node.fail("unknown value \"" + s + "\"");
}

//---------------------------------------------------------------------------//
// Timed, error-trapping cell evaluation
//---------------------------------------------------------------------------//

struct Timed
{
    Cell cell;
    double seconds = 0.0;
};

template <class F>
Timed timed_cell(F &&f)
{
    const auto start = std::chrono::steady_clock::now();
    Timed out;
    try
    {
        out.cell = f();
    }
    catch (const std::exception &e)
    {
        out.cell = std::string("error: ") + e.what();
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

std::string format_double(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string csv_field(const std::string &s)
{
    if (s.find_first_of(",\"\r\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s)
    {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::vector<Method> effective_methods(const ExperimentConfig &config)
{
    if (!config.methods.empty())
        return config.methods;
    return {Method::closed_form, Method::exact_integral, Method::far_field};
}

bool wants(const std::vector<Method> &methods, Method m)
{
    return std::find(methods.begin(), methods.end(), m) != methods.end();
}

std::int64_t svd_count(const ExperimentConfig &config, const Scenario &analytic)
{
    return static_cast<std::int64_t>(svd_dof(config.svd_scenario(analytic), config.svd_options()).count);
}
} // namespace

//---------------------------------------------------------------------------//
// Configuration
//---------------------------------------------------------------------------//

const char *to_string(Method method)
{
    switch (method)
    {
    case Method::closed_form:
        return "closed_form";
    case Method::exact_integral:
        return "exact_integral";
    case Method::svd:
        return "svd";
    case Method::far_field:
        return "far_field";
    }
    return "unknown";
}

Method method_from_string(std::string_view name)
{
    for (Method m : {Method::closed_form, Method::exact_integral, Method::svd, Method::far_field})
        if (name == to_string(m))
            return m;
    throw InvalidArgument("unknown method \"" + std::string(name) + "\"");
}

std::vector<Method> parse_method_list(std::string_view text)
{
    std::vector<Method> out;
    std::size_t pos = 0;
    while (pos <= text.size())
    {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        const std::string_view item = text.substr(pos, comma - pos);
        if (!item.empty())
        {
            const Method m = method_from_string(item);
            if (!wants(out, m))
                out.push_back(m);
        }
        pos = comma + 1;
    }
    if (out.empty())
        throw InvalidArgument("method list is empty");
    return out;
}

PlacedSurface GeometryConfig::bs() const
{
    return {bs_side_x, bs_side_y, bs_height, 0.0};
}

PlacedSurface GeometryConfig::user_at(double distance, double center_y) const
{
    return {user_side_x, user_side_y, center_y, distance};
}

std::vector<double> SweepRange::values() const
{
    if (!(stop > start) || !(step > 0.0))
        throw InvalidArgument("sweep range needs start < stop and step > 0");
    const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = start + static_cast<double>(i) * step;
    return out;
}

bool SvdSettings::overrides_geometry() const
{
    return wavelength || bs_side_x || bs_side_y || bs_height || user_side_x || user_side_y;
}

Scenario ExperimentConfig::scenario() const
{
    const PlacedSurface bs = geometry.bs();
    std::vector<PlacedSurface> placed;
    if (users.empty())
        placed.push_back(geometry.user_at(distance_from_relative_db(20.0, bs)));
    for (const auto &u : users)
    {
        PlacedSurface s = geometry.user_at(u.distance ? *u.distance : distance_from_relative_db(*u.f_db, bs),
                                           u.center_y);
        if (u.side_x)
            s.side_x = *u.side_x;
        if (u.side_y)
            s.side_y = *u.side_y;
        placed.push_back(s);
    }
    return Scenario(geometry.wavelength, bs, std::move(placed));
}

GeometryConfig ExperimentConfig::svd_geometry() const
{
    GeometryConfig g = geometry;
    g.wavelength = svd.wavelength.value_or(g.wavelength);
    g.bs_side_x = svd.bs_side_x.value_or(g.bs_side_x);
    g.bs_side_y = svd.bs_side_y.value_or(g.bs_side_y);
    g.bs_height = svd.bs_height.value_or(g.bs_height);
    g.user_side_x = svd.user_side_x.value_or(g.user_side_x);
    g.user_side_y = svd.user_side_y.value_or(g.user_side_y);
    const double k = svd.scale;
    g.wavelength *= k;
    g.bs_side_x *= k;
    g.bs_side_y *= k;
    g.bs_height *= k;
    g.user_side_x *= k;
    g.user_side_y *= k;
    return g;
}

Scenario ExperimentConfig::svd_scenario(const Scenario &analytic) const
{
    if (!svd.overrides_geometry())
        return svd.scale == 1.0 ? analytic : analytic.scaled(svd.scale);

    GeometryConfig g = geometry;
    g.wavelength = svd.wavelength.value_or(g.wavelength);
    g.bs_side_x = svd.bs_side_x.value_or(g.bs_side_x);
    g.bs_side_y = svd.bs_side_y.value_or(g.bs_side_y);
    g.bs_height = svd.bs_height.value_or(g.bs_height);
    std::vector<PlacedSurface> users_out;
    for (const auto &u : analytic.users())
    {
        const double f_db = relative_distance_db(u.plane_z, analytic.bs());
        PlacedSurface s = u;
        s.plane_z = distance_from_relative_db(f_db, g.bs());
        s.side_x = svd.user_side_x.value_or(u.side_x);
        s.side_y = svd.user_side_y.value_or(u.side_y);
        users_out.push_back(s);
    }
    const Scenario base(g.wavelength, g.bs(), std::move(users_out), analytic.allow_coplanar());
    return svd.scale == 1.0 ? base : base.scaled(svd.scale);
}

SvdOptions ExperimentConfig::svd_options() const
{
    SvdOptions o;
    o.count = svd.count;
    o.assembly.occlusion = svd.occlusion;
    o.assembly.memory_budget_bytes = svd.memory_budget_mb << 20;
    o.patch_fraction = svd.patch_fraction;
    o.path = svd.path;
    o.topk.seed = seed;
    return o;
}

SweepRange ExperimentConfig::range_for(SweepVariable variable) const
{
    if (range)
        return *range;
    return variable == SweepVariable::f_single ? SweepRange{15.0, 30.0, 1.0} : SweepRange{20.0, 25.0, 0.05};
}

ExperimentConfig parse_config(std::string_view text)
{
    json doc;
    try
    {
        doc = text.find_first_not_of(" \t\r\n") == std::string_view::npos ? json::object() : json::parse(text);
    }
    catch (const json::parse_error &e)
    {
        throw InvalidArgument(std::string("config is not valid JSON: ") + e.what());
    }

    ExperimentConfig cfg;
    const Node root(doc, "$");
    root.expect_object({"wavelength", "bs", "user", "users", "sweep", "methods", "multiuser_single",
                        "quadrature", "svd", "seed"});

    read_positive(root, "wavelength", cfg.geometry.wavelength);
    if (auto bs = root.child("bs"))
    {
        bs->expect_object({"side_x", "side_y", "height"});
        read_positive(*bs, "side_x", cfg.geometry.bs_side_x);
        read_positive(*bs, "side_y", cfg.geometry.bs_side_y);
        read_number(*bs, "height", cfg.geometry.bs_height);
    }
    if (auto user = root.child("user"))
    {
        user->expect_object({"side_x", "side_y"});
        read_positive(*user, "side_x", cfg.geometry.user_side_x);
        read_positive(*user, "side_y", cfg.geometry.user_side_y);
    }
    if (auto users = root.child("users"))
    {
        if (!users->value().is_array())
            users->fail("expected an array");
        for (std::size_t i = 0; i < users->value().size(); ++i)
        {
            const Node u(users->value()[i], users->path() + "[" + std::to_string(i) + "]");
            u.expect_object({"distance", "F_db", "side_x", "side_y", "center_y"});
            UserPlacement p;
            read_positive(u, "distance", p.distance);
            read_number(u, "F_db", p.f_db);
            read_positive(u, "side_x", p.side_x);
            read_positive(u, "side_y", p.side_y);
            read_number(u, "center_y", p.center_y);
            if (p.distance.has_value() == p.f_db.has_value())
                u.fail("give exactly one of \"distance\" and \"F_db\"");
            cfg.users.push_back(p);
        }
    }
    if (auto sweep = root.child("sweep"))
    {
        sweep->expect_object({"variable", "start", "stop", "step", "F1_db"});
        if (auto v = sweep->child("variable"))
            cfg.sweep_variable = enum_value<SweepVariable>(
                *v, {{"F_single", SweepVariable::f_single}, {"F2_given_F1", SweepVariable::f2_given_f1}});
        const bool any = sweep->child("start") || sweep->child("stop") || sweep->child("step");
        if (any)
        {
            SweepRange r = cfg.range_for(cfg.sweep_variable.value_or(SweepVariable::f_single));
            read_number(*sweep, "start", r.start);
            read_number(*sweep, "stop", r.stop);
            read_positive(*sweep, "step", r.step);
            if (!(r.stop > r.start))
                sweep->fail("start must be below stop");
            cfg.range = r;
        }
        read_number(*sweep, "F1_db", cfg.f1_db);
    }
    if (auto methods = root.child("methods"))
    {
        if (!methods->value().is_array())
            methods->fail("expected an array of method names");
        for (std::size_t i = 0; i < methods->value().size(); ++i)
        {
            const Node m(methods->value()[i], methods->path() + "[" + std::to_string(i) + "]");
            const Method parsed = enum_value<Method>(m, {{"closed_form", Method::closed_form},
                                                         {"exact_integral", Method::exact_integral},
                                                         {"svd", Method::svd},
                                                         {"far_field", Method::far_field}});
            if (!wants(cfg.methods, parsed))
                cfg.methods.push_back(parsed);
        }
    }
    if (auto single = root.child("multiuser_single"))
        cfg.multiuser_single = enum_value<SingleUserMethod>(
            *single, {{"exact_integral", SingleUserMethod::exact_integral},
                      {"closed_form", SingleUserMethod::closed_form}});
    if (auto q = root.child("quadrature"))
    {
        q->expect_object({"base_order", "max_depth", "rel_tol", "abs_floor"});
        if (auto n = q->child("base_order"))
            cfg.quadrature.base_order = static_cast<int>(n->as_integer());
        if (auto n = q->child("max_depth"))
            cfg.quadrature.max_depth = static_cast<int>(n->as_integer());
        read_positive(*q, "rel_tol", cfg.quadrature.rel_tol);
        read_number(*q, "abs_floor", cfg.quadrature.abs_floor);
        try
        {
            cfg.quadrature.validate();
        }
        catch (const InvalidArgument &e)
        {
            q->fail(e.what());
        }
    }
    if (auto svd = root.child("svd"))
    {
        svd->expect_object({"wavelength", "bs", "user", "scale", "patch_fraction", "epsilon",
                            "normalization", "occlusion", "memory_budget_mb", "path"});
        read_positive(*svd, "wavelength", cfg.svd.wavelength);
        if (auto bs = svd->child("bs"))
        {
            bs->expect_object({"side_x", "side_y", "height"});
            read_positive(*bs, "side_x", cfg.svd.bs_side_x);
            read_positive(*bs, "side_y", cfg.svd.bs_side_y);
            read_number(*bs, "height", cfg.svd.bs_height);
        }
        if (auto user = svd->child("user"))
        {
            user->expect_object({"side_x", "side_y"});
            read_positive(*user, "side_x", cfg.svd.user_side_x);
            read_positive(*user, "side_y", cfg.svd.user_side_y);
        }
        read_positive(*svd, "scale", cfg.svd.scale);
        read_positive(*svd, "patch_fraction", cfg.svd.patch_fraction);
        if (auto e = svd->child("epsilon"))
        {
            cfg.svd.count.epsilon = e->as_number();
            if (!(cfg.svd.count.epsilon > 0.0 && cfg.svd.count.epsilon < 1.0))
                e->fail("must lie in (0, 1)");
        }
        if (auto n = svd->child("normalization"))
            cfg.svd.count.normalization = enum_value<Normalization>(
                *n, {{"sigma_squared_over_max", Normalization::sigma_squared_over_max},
                     {"sigma_over_max", Normalization::sigma_over_max}});
        if (auto o = svd->child("occlusion"))
            cfg.svd.occlusion = o->as_bool();
        if (auto m = svd->child("memory_budget_mb"))
        {
            const auto mb = m->as_integer();
            if (mb <= 0)
                m->fail("must be positive");
            cfg.svd.memory_budget_mb = static_cast<std::size_t>(mb);
        }
        if (auto p = svd->child("path"))
            cfg.svd.path = enum_value<SvdPath>(*p, {{"auto", SvdPath::automatic},
                                                    {"dense", SvdPath::dense},
                                                    {"matrix_free", SvdPath::matrix_free}});
    }
    if (auto seed = root.child("seed"))
    {
        const auto s = seed->as_integer();
        if (s < 0)
            seed->fail("must be non-negative");
        cfg.seed = static_cast<std::uint64_t>(s);
    }
    return cfg;
}

//---------------------------------------------------------------------------//
// Result tables
//---------------------------------------------------------------------------//

std::size_t ResultTable::column(std::string_view name) const
{
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end())
        throw InvalidArgument("no column named " + std::string(name));
    return static_cast<std::size_t>(it - columns.begin());
}

bool ResultTable::has_column(std::string_view name) const
{
    return std::find(columns.begin(), columns.end(), name) != columns.end();
}

const Cell &ResultTable::at(std::size_t row, std::string_view name) const
{
    return rows.at(row).at(column(name));
}

bool is_error(const Cell &cell)
{
    const auto *s = std::get_if<std::string>(&cell);
    return s && s->rfind("error", 0) == 0;
}

std::optional<double> numeric(const Cell &cell)
{
    if (const auto *d = std::get_if<double>(&cell))
        return *d;
    if (const auto *i = std::get_if<std::int64_t>(&cell))
        return static_cast<double>(*i);
    return std::nullopt;
}

Format format_from_string(std::string_view name)
{
    if (name == "csv")
        return Format::csv;
    if (name == "json")
        return Format::json;
    throw InvalidArgument("unknown output format \"" + std::string(name) + "\"");
}

std::string to_csv(const ResultTable &table)
{
    std::string out;
    for (std::size_t c = 0; c < table.columns.size(); ++c)
        out += (c ? "," : "") + csv_field(table.columns[c]);
    out += "\r\n";
    for (const auto &row : table.rows)
    {
        for (std::size_t c = 0; c < row.size(); ++c)
        {
            if (c)
                out += ',';
            std::visit(
                [&](const auto &v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>)
                        out += format_double(v);
                    else if constexpr (std::is_same_v<T, std::int64_t>)
                        out += std::to_string(v);
                    else if constexpr (std::is_same_v<T, std::string>)
                        out += csv_field(v);
                },
                row[c]);
        }
        out += "\r\n";
    }
    return out;
}

std::string to_json(const ResultTable &table)
{
    ordered_json arr = ordered_json::array();
    for (const auto &row : table.rows)
    {
        ordered_json obj = ordered_json::object();
        for (std::size_t c = 0; c < table.columns.size(); ++c)
        {
            std::visit(
                [&](const auto &v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, std::monostate>)
                        obj[table.columns[c]] = nullptr;
                    else
                        obj[table.columns[c]] = v;
                },
                row.at(c));
        }
        arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
}

ResultTable table_from_json(std::string_view text)
{
    ordered_json doc;
    try
    {
        doc = ordered_json::parse(text);
    }
    catch (const ordered_json::parse_error &e)
    {
        throw InvalidArgument(std::string("result document is not valid JSON: ") + e.what());
    }
    if (!doc.is_array())
        throw InvalidArgument("result document must be an array of rows");
    ResultTable table;
    for (std::size_t r = 0; r < doc.size(); ++r)
    {
        const auto &obj = doc[r];
        if (!obj.is_object())
            throw InvalidArgument("row " + std::to_string(r) + " is not an object");
        if (r == 0)
            for (const auto &item : obj.items())
                table.columns.push_back(item.key());
        if (obj.size() != table.columns.size())
            throw InvalidArgument("row " + std::to_string(r) + " has different keys");
        std::vector<Cell> row;
        std::size_t c = 0;
        for (const auto &item : obj.items())
        {
            if (item.key() != table.columns[c++])
                throw InvalidArgument("row " + std::to_string(r) + " has different keys");
            const auto &v = item.value();
            if (v.is_null())
                row.emplace_back(std::monostate{});
            else if (v.is_number_integer())
                row.emplace_back(v.get<std::int64_t>());
            else if (v.is_number())
                row.emplace_back(v.get<double>());
            else if (v.is_string())
                row.emplace_back(v.get<std::string>());
            else
                throw InvalidArgument("row " + std::to_string(r) + " holds a non-scalar value");
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::string render(const ResultTable &table, Format format)
{
    return format == Format::csv ? to_csv(table) : to_json(table);
}

void emit(const ResultTable &table, Format format, const std::string &path)
{
    const std::string text = render(table, format);
    if (path.empty() || path == "-")
    {
        std::cout << text;
        std::cout.flush();
        if (!std::cout)
            throw Error("failed writing to standard output");
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error("cannot open " + path + " for writing");
    out << text;
    if (!out)
        throw Error("failed writing " + path);
}

//---------------------------------------------------------------------------//
// Experiments
//---------------------------------------------------------------------------//

ResultTable run_single(const ExperimentConfig &config, const RunOptions &options)
{
    const Scenario scenario = config.scenario();
    const auto methods = effective_methods(config);
    ResultTable table;
    table.columns = {"user", "d", "F_db"};
    for (Method m : methods)
        table.columns.push_back(to_string(m));
    if (options.timings)
        for (Method m : methods)
            table.columns.push_back(std::string("time.") + to_string(m));

    const PlacedSurface &bs = scenario.bs();
    for (std::size_t u = 0; u < scenario.users().size(); ++u)
    {
        const PlacedSurface &user = scenario.users()[u];
        std::vector<Cell> row{static_cast<std::int64_t>(u), user.plane_z, relative_distance_db(user.plane_z, bs)};
        std::vector<Cell> times;
        for (Method m : methods)
        {
            const Timed t = timed_cell([&]() -> Cell {
                switch (m)
                {
                case Method::closed_form:
                    return dof_single_closed(bs, user, scenario.wavelength());
                case Method::exact_integral:
                    return dof_single_exact(bs, user, scenario.wavelength(), config.quadrature);
                case Method::far_field:
                    return far_field_reference(bs, user, scenario.wavelength());
                case Method::svd:
                    return svd_count(config, Scenario(scenario.wavelength(), bs, {user}));
                }
                return std::monostate{};
            });
            row.push_back(t.cell);
            times.emplace_back(t.seconds);
        }
        if (options.timings)
            row.insert(row.end(), times.begin(), times.end());
        table.rows.push_back(std::move(row));
    }
    return table;
}

DofReport run_multi(const ExperimentConfig &config)
{
    MultiuserOptions options;
    options.single = config.multiuser_single;
    options.quadrature = config.quadrature;
    return dof_multiuser(config.scenario(), options);
}

ResultTable report_table(const DofReport &report)
{
    ResultTable table;
    table.columns = {"term", "occluder", "target", "method", "dof"};
    for (const auto &u : report.per_user)
        table.rows.push_back({std::string("single"), std::monostate{}, static_cast<std::int64_t>(u.user),
                              std::string(to_string(u.method)), u.dof});
    for (const auto &b : report.pairwise_blocked)
        table.rows.push_back({std::string("blocked"), static_cast<std::int64_t>(b.occluder),
                              static_cast<std::int64_t>(b.target), std::string("exact_integral"), b.dof});
    table.rows.push_back({std::string("total"), std::monostate{}, std::monostate{}, std::monostate{}, report.total});
    table.rows.push_back(
        {std::string("clamped_total"), std::monostate{}, std::monostate{}, std::monostate{}, report.clamped_total});
    return table;
}

SvdDofResult run_svd(const ExperimentConfig &config)
{
    return svd_dof(config.svd_scenario(config.scenario()), config.svd_options());
}

ResultTable run_single_user_sweep(const ExperimentConfig &config, const RunOptions &options)
{
    const auto methods = effective_methods(config);
    const PlacedSurface bs = config.geometry.bs();
    const double lambda = config.geometry.wavelength;

    ResultTable table;
    table.columns = {"F_db", "d"};
    for (Method m : methods)
        table.columns.push_back(to_string(m));
    if (options.timings)
        for (Method m : methods)
            table.columns.push_back(std::string("time.") + to_string(m));

    for (double f_db : config.range_for(SweepVariable::f_single).values())
    {
        const double d = distance_from_relative_db(f_db, bs);
        const PlacedSurface user = config.geometry.user_at(d);
        std::vector<Cell> row{f_db, d};
        std::vector<Cell> times;
        for (Method m : methods)
        {
            const Timed t = timed_cell([&]() -> Cell {
                switch (m)
                {
                case Method::closed_form:
                    return dof_single_closed(bs, user, lambda);
                case Method::exact_integral:
                    return dof_single_exact(bs, user, lambda, config.quadrature);
                case Method::far_field:
                    return far_field_reference(bs, user, lambda);
                case Method::svd:
                    return svd_count(config, Scenario(lambda, bs, {user}));
                }
                return std::monostate{};
            });
            row.push_back(t.cell);
            times.emplace_back(t.seconds);
        }
        if (options.timings)
            row.insert(row.end(), times.begin(), times.end());
        table.rows.push_back(std::move(row));
    }
    return table;
}

TwoUserSweep run_two_user_sweep(const ExperimentConfig &config, const RunOptions &options)
{
    const auto methods = effective_methods(config);
    const PlacedSurface bs = config.geometry.bs();
    const double lambda = config.geometry.wavelength;

    std::vector<SingleUserMethod> analytic;
    for (Method m : methods)
    {
        if (m == Method::exact_integral)
            analytic.push_back(SingleUserMethod::exact_integral);
        else if (m == Method::closed_form)
            analytic.push_back(SingleUserMethod::closed_form);
    }

    TwoUserSweep sweep;
    sweep.d1 = distance_from_relative_db(config.f1_db, bs);
    const PlacedSurface user1 = config.geometry.user_at(sweep.d1);
    const double denom = 2.0 * bs.center_y - config.geometry.user_side_y - bs.side_y;
    sweep.threshold_d2 = denom > 0.0 ? sweep.d1 * (1.0 + 2.0 * config.geometry.user_side_y / denom)
                                     : std::numeric_limits<double>::infinity();
    sweep.threshold_f2_db = std::isfinite(sweep.threshold_d2) ? relative_distance_db(sweep.threshold_d2, bs)
                                                              : std::numeric_limits<double>::infinity();

    ResultTable &table = sweep.table;
    table.columns = {"F2_db", "d2"};
    std::vector<std::string> timing_columns;
    for (SingleUserMethod m : analytic)
    {
        const std::string p = to_string(m);
        for (const char *suffix : {".N1", ".N2", ".N_blocked", ".total", ".sum"})
            table.columns.push_back(p + suffix);
        timing_columns.push_back("time." + p);
    }
    if (wants(methods, Method::far_field))
    {
        table.columns.push_back("far_field.total");
        timing_columns.push_back("time.far_field");
    }
    if (wants(methods, Method::svd))
    {
        table.columns.push_back("svd.joint");
        timing_columns.push_back("time.svd");
    }
    if (options.timings)
        table.columns.insert(table.columns.end(), timing_columns.begin(), timing_columns.end());

    const std::string primary = analytic.empty() ? std::string() : to_string(analytic.front());
    for (double f2_db : config.range_for(SweepVariable::f2_given_f1).values())
    {
        const double d2 = distance_from_relative_db(f2_db, bs);
        const PlacedSurface user2 = config.geometry.user_at(d2);
        std::vector<Cell> row{f2_db, d2};
        std::vector<Cell> times;

        for (SingleUserMethod m : analytic)
        {
            DofReport report;
            const Timed t = timed_cell([&]() -> Cell {
                MultiuserOptions mo;
                mo.single = m;
                mo.quadrature = config.quadrature;
                report = dof_multiuser(Scenario(lambda, bs, {user1, user2}), mo);
                return report.total;
            });
            if (is_error(t.cell))
            {
                row.insert(row.end(), 5, t.cell);
            }
            else
            {
                // Users are sorted by distance; N1 is the user at F1.
                const std::size_t first = sweep.d1 <= d2 ? 0 : 1;
                row.emplace_back(report.per_user[first].dof);
                row.emplace_back(report.per_user[1 - first].dof);
                row.emplace_back(report.blocked_sum());
                row.emplace_back(report.total);
                row.emplace_back(report.single_sum());
            }
            times.emplace_back(t.seconds);
        }
        if (wants(methods, Method::far_field))
        {
            const Timed t = timed_cell([&]() -> Cell {
                return far_field_reference(bs, user1, lambda) + far_field_reference(bs, user2, lambda);
            });
            row.push_back(t.cell);
            times.emplace_back(t.seconds);
        }
        if (wants(methods, Method::svd))
        {
            const Timed t = timed_cell([&]() -> Cell { return svd_count(config, Scenario(lambda, bs, {user1, user2})); });
            row.push_back(t.cell);
            times.emplace_back(t.seconds);
        }
        if (options.timings)
            row.insert(row.end(), times.begin(), times.end());
        table.rows.push_back(std::move(row));
    }

    if (!primary.empty())
    {
        const std::size_t c_total = table.column(primary + ".total");
        const std::size_t c_sum = table.column(primary + ".sum");
        const std::size_t c_blocked = table.column(primary + ".N_blocked");
        double ratio_sum = 0.0;
        std::size_t blocked_rows = 0;
        double best = -std::numeric_limits<double>::infinity();
        for (const auto &row : table.rows)
        {
            const auto total = numeric(row[c_total]);
            const auto sum = numeric(row[c_sum]);
            const auto blocked = numeric(row[c_blocked]);
            if (!total || !sum || !blocked)
                continue;
            if (*blocked > 0.0)
            {
                ratio_sum += *total / *sum;
                ++blocked_rows;
            }
            if (*total > best)
            {
                best = *total;
                sweep.max_total_f2_db = *numeric(row[0]);
                sweep.max_is_blocked = *blocked > 0.0;
            }
        }
        if (blocked_rows > 0)
            sweep.average_reduction_percent = 100.0 * (1.0 - ratio_sum / static_cast<double>(blocked_rows));
    }
    return sweep;
}

ResultTable run_measure_oracle(const ExperimentConfig &config, int viewpoints, int resolution)
{
    if (viewpoints < 1)
        throw InvalidArgument("need at least one viewpoint per axis");
    const Scenario scenario = config.scenario();
    if (scenario.users().size() < 2)
        throw InvalidArgument("the measure oracle needs two users");
    const PlacedSurface &bs = scenario.bs();
    const PlacedSurface &near = scenario.users()[0];
    const PlacedSurface &far = scenario.users()[1];
    const double kappa0 = scenario.kappa0();

    ResultTable table;
    table.columns = {"rx", "ry", "B1", "B2", "B_blocked", "identity", "union_grid", "rel_error"};
    const std::vector<ImagedRect> surfaces{{near.global_rect(), near.plane_z}, {far.global_rect(), far.plane_z}};
    for (int i = 0; i < viewpoints; ++i)
    {
        for (int j = 0; j < viewpoints; ++j)
        {
            const double rx = bs.side_x * ((i + 0.5) / viewpoints - 0.5);
            const double ry = bs.side_y * ((j + 0.5) / viewpoints - 0.5);
            const Point2 r{rx, bs.center_y + ry};
            const double b1 = bandwidth_closed_form(r, near.global_rect(), near.plane_z, kappa0);
            const double b2 = bandwidth_closed_form(r, far.global_rect(), far.plane_z, kappa0);
            const Rect2D shadow = shadow_region({rx, ry}, near, far, bs).translated(0.0, far.center_y);
            const double bb = bandwidth_closed_form(r, shadow, far.plane_z, kappa0);
            const double identity = b1 + b2 - bb;
            const double grid = union_measure_mc(r, surfaces, kappa0, resolution);
            table.rows.push_back({rx, ry, b1, b2, bb, identity, grid, (grid - identity) / identity});
        }
    }
    return table;
}
} // namespace holodof
