// Copyright 2026 The qobf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qobf {

// Malformed or out-of-contract arguments.
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Problem size beyond what dense enumeration/simulation supports.
struct CapacityError : std::length_error {
    using std::length_error::length_error;
};

// Circuit or graph text that fails to parse. Carries the 1-based line number.
struct ParseError : std::runtime_error {
    ParseError(std::size_t line, const std::string &msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

// Coupling map cannot route a circuit, or a circuit violates a backend's coupling contract.
struct RoutingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A split plan whose invariants cannot be satisfied.
struct PlanError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Approximation ratio requested for an edgeless graph.
struct MetricError : std::domain_error {
    using std::domain_error::domain_error;
};

}  // namespace qobf
