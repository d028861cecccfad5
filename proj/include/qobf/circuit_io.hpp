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

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qobf/circuit.hpp"
#include "qobf/errors.hpp"

namespace qobf {

namespace detail {

// 17 significant digits reproduce every double exactly through from_chars.
inline std::string format_angle(double x) {
    char buf[40];
    const int len = std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(buf, static_cast<std::size_t>(len));
}

inline std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

inline int parse_index(std::string_view tok, std::size_t lineno) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw ParseError(lineno, "bad qubit index '" + std::string(tok) + "'");
    }
    return v;
}

inline double parse_angle(std::string_view tok, std::size_t lineno) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw ParseError(lineno, "bad angle '" + std::string(tok) + "'");
    }
    if (!std::isfinite(v)) {
        throw ParseError(lineno, "non-finite angle '" + std::string(tok) + "'");
    }
    return v;
}

}  // namespace detail

// Wire format, one op per LF-terminated line:
//   qubits <n> | h <q> | rx <q> <angle> | rz <q> <angle> | cx <c> <t> | measure
inline std::string serialize(const Circuit &c) {
    std::string out = "qubits " + std::to_string(c.num_qubits()) + "\n";
    for (const auto &g : c.gates()) {
        switch (g.kind) {
        case GateKind::H:
            out += "h " + std::to_string(g.q0) + "\n";
            break;
        case GateKind::RX:
            out += "rx " + std::to_string(g.q0) + " " + detail::format_angle(g.angle) + "\n";
            break;
        case GateKind::RZ:
            out += "rz " + std::to_string(g.q0) + " " + detail::format_angle(g.angle) + "\n";
            break;
        case GateKind::CX:
            out += "cx " + std::to_string(g.q0) + " " + std::to_string(g.q1) + "\n";
            break;
        case GateKind::MEASURE_ALL:
            out += "measure\n";
            break;
        }
    }
    return out;
}

inline Circuit parse_circuit(std::string_view text) {
    std::optional<Circuit> circuit;
    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        const auto tok = detail::split_ws(line);
        if (tok.empty()) {
            continue;
        }
        auto expect_args = [&](std::size_t n) {
            if (tok.size() != n + 1) {
                throw ParseError(lineno, "'" + std::string(tok[0]) + "' takes " + std::to_string(n) +
                                             " operand(s), got " + std::to_string(tok.size() - 1));
            }
        };
        const std::string_view op = tok[0];
        if (op == "qubits") {
            if (circuit) {
                throw ParseError(lineno, "duplicate qubits header");
            }
            expect_args(1);
            const int n = detail::parse_index(tok[1], lineno);
            if (n < 1) {
                throw ParseError(lineno, "qubit count must be positive");
            }
            circuit.emplace(n);
            continue;
        }
        if (!circuit) {
            throw ParseError(lineno, "gate before qubits header");
        }
        Gate g;
        if (op == "h") {
            expect_args(1);
            g = Gate::h(detail::parse_index(tok[1], lineno));
        } else if (op == "rx" || op == "rz") {
            expect_args(2);
            const int q = detail::parse_index(tok[1], lineno);
            const double a = detail::parse_angle(tok[2], lineno);
            g = op == "rx" ? Gate::rx(q, a) : Gate::rz(q, a);
        } else if (op == "cx") {
            expect_args(2);
            g = Gate::cx(detail::parse_index(tok[1], lineno), detail::parse_index(tok[2], lineno));
        } else if (op == "measure") {
            expect_args(0);
            g = Gate::measure_all();
        } else {
            throw ParseError(lineno, "unknown opcode '" + std::string(op) + "'");
        }
        try {
            circuit->add(g);
        } catch (const InputError &e) {
            throw ParseError(lineno, e.what());
        }
    }
    if (!circuit) {
        throw ParseError(lineno, "missing qubits header");
    }
    return *std::move(circuit);
}

inline Circuit read_circuit(std::istream &in) {
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_circuit(ss.str());
}

}  // namespace qobf
