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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace holodof
{
// Base for every error raised by the library.
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// A precondition on an argument was violated.
class InvalidArgument : public Error
{
  public:
    using Error::Error;
};

// Iterative or adaptive procedure ran out of budget. Carries the best
// estimate reached and its error bound.
class NonConvergence : public Error
{
  public:
    NonConvergence(const std::string &what, double best_estimate, double error_bound)
        : Error(what), best_(best_estimate), bound_(error_bound)
    {
    }

    double best_estimate() const { return best_; }
    double error_bound() const { return bound_; }

  private:
    double best_;
    double bound_;
};

// A point of some target surface is shadowed by two occluders at once.
class TripleOverlap : public Error
{
  public:
    TripleOverlap(const std::string &what, std::size_t first, std::size_t second, std::size_t target)
        : Error(what), first_(first), second_(second), target_(target)
    {
    }

    std::size_t first_occluder() const { return first_; }
    std::size_t second_occluder() const { return second_; }
    std::size_t target() const { return target_; }

  private:
    std::size_t first_;
    std::size_t second_;
    std::size_t target_;
};

// Dense channel assembly would exceed the configured memory budget.
class MemoryBudgetExceeded : public Error
{
  public:
    using Error::Error;
};
} // namespace holodof
