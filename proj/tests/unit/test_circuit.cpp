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


#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <gtest/gtest.h>

#include "qobf/benchmarks.hpp"
#include "qobf/circuit.hpp"
#include "qobf/circuit_io.hpp"
#include "qobf/rng.hpp"

namespace qobf {
namespace {

ParamVector params_for(std::size_t p, double g = 0.3, double b = 0.7) {
    return {std::vector<double>(p, g), std::vector<double>(p, b)};
}

double random_angle(Rng &rng) {
    // Mix of tame values and awkward ones (denormal, huge, negative zero).
    switch (rng.below(6)) {
    case 0:
        return std::numeric_limits<double>::denorm_min();
    case 1:
        return -0.0;
    case 2:
        return rng.uniform(-1e300, 1e300);
    default:
        return rng.uniform(-10.0, 10.0);
    }
}

TEST(Circuit, QaoaLayoutForSingleEdge) {
    const Circuit c = build_qaoa(Graph(2, {{0, 1}}), params_for(1, 0.25, 0.5));
    const std::vector<Gate> want{Gate::h(0),      Gate::h(1),       Gate::cx(0, 1),     Gate::rz(1, 0.5),
                                 Gate::cx(0, 1),  Gate::rx(0, 1.0), Gate::rx(1, 1.0),   Gate::measure_all()};
    EXPECT_EQ(c.gates(), want);
}

TEST(Circuit, GateCountFormula) {
    for (auto name : kNamedBenchmarks) {
        const Graph g = benchmark_graph(name);
        for (std::size_t p = 1; p <= 4; ++p) {
            const Circuit c = build_qaoa(g, params_for(p));
            const std::size_t n = g.num_nodes();
            const std::size_t m = g.num_edges();
            EXPECT_EQ(c.size(), n + p * (3 * m + n) + 1);
            const auto counts = count_gates(c);
            EXPECT_EQ(counts.two_qubit, 2 * m * p);
            EXPECT_EQ(counts.one_qubit, n + p * (m + n));
            EXPECT_EQ(counts.measure, 1u);
        }
    }
    EXPECT_EQ(build_qaoa(benchmark_graph("cycle4"), params_for(2)).size(), 37u);
}

TEST(Circuit, TwoQubitCountDoublesWithLayers) {
    const Graph g = benchmark_graph("graph6");
    const auto one = count_gates(build_qaoa(g, params_for(1))).two_qubit;
    const auto two = count_gates(build_qaoa(g, params_for(2))).two_qubit;
    EXPECT_EQ(two, 2 * one);
}

TEST(Circuit, DepthOfSingleEdgeLayer) {
    // h | cx rz cx | rx on two qubits.
    EXPECT_EQ(count_gates(build_qaoa(Graph(2, {{0, 1}}), params_for(1))).depth, 5u);
}

TEST(Circuit, AddValidatesOperands) {
    Circuit c(2);
    EXPECT_THROW(c.add(Gate::h(2)), InputError);
    EXPECT_THROW(c.add(Gate::cx(1, 1)), InputError);
    EXPECT_THROW(c.add(Gate::rz(0, std::nan(""))), InputError);
    EXPECT_THROW(c.add(Gate::rx(0, std::numeric_limits<double>::infinity())), InputError);
    c.add(Gate::measure_all());
    EXPECT_THROW(c.add(Gate::h(0)), InputError);
    EXPECT_THROW(build_qaoa(Graph(1, {}), params_for(1)), InputError);
    EXPECT_THROW(build_qaoa(Graph(2, {{0, 1}}), ParamVector{{0.1}, {}}), InputError);
}

TEST(Circuit, ParamVectorFlattenRoundTrip) {
    const ParamVector p{{0.1, 0.2, 0.3}, {1.1, 1.2, 1.3}};
    EXPECT_EQ(p.flatten(), (std::vector<double>{0.1, 0.2, 0.3, 1.1, 1.2, 1.3}));
    EXPECT_EQ(ParamVector::unflatten(p.flatten()), p);
    EXPECT_THROW(ParamVector::unflatten({1.0}), InputError);
}

TEST(CircuitIo, SerializeUsesSeventeenDigits) {
    Circuit c(1);
    c.add(Gate::rz(0, 0.1));
    EXPECT_EQ(serialize(c), "qubits 1\nrz 0 0.10000000000000001\n");
}

TEST(CircuitIo, RandomRoundTripIsBitExact) {
    Rng rng(99);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(8));
        Circuit c(n);
        const auto len = rng.below(40);
        for (std::uint64_t i = 0; i < len; ++i) {
            const int q = static_cast<int>(rng.below(n));
            switch (rng.below(4)) {
            case 0:
                c.add(Gate::h(q));
                break;
            case 1:
                c.add(Gate::rx(q, random_angle(rng)));
                break;
            case 2:
                c.add(Gate::rz(q, random_angle(rng)));
                break;
            default:
                if (n > 1) {
                    const int t = static_cast<int>((q + 1 + rng.below(n - 1)) % n);
                    c.add(Gate::cx(q, t));
                }
            }
        }
        if (rng.bernoulli(0.5)) c.add(Gate::measure_all());
        const std::string text = serialize(c);
        const Circuit back = parse_circuit(text);
        ASSERT_EQ(back, c) << text;
        for (std::size_t i = 0; i < c.size(); ++i) {
            EXPECT_EQ(std::signbit(back.gates()[i].angle), std::signbit(c.gates()[i].angle));
        }
        EXPECT_EQ(serialize(back), text);
    }
}

TEST(CircuitIo, AcceptsCommentsAndCrlf) {
    const Circuit c = parse_circuit("# header\nqubits 2\r\nh 0 # first\n\ncx 0 1\nmeasure\n");
    EXPECT_EQ(c.size(), 3u);
    EXPECT_TRUE(c.measured());
}

TEST(CircuitIo, ErrorsCarryLineNumbers) {
    auto line_of = [](const std::string &text) {
        try {
            parse_circuit(text);
        } catch (const ParseError &e) {
            return e.line();
        }
        return std::size_t{0};
    };
    EXPECT_EQ(line_of("qubits 2\nh 0\nfoo 1\n"), 3u);
    EXPECT_EQ(line_of("qubits 2\nrz 0 abc\n"), 2u);
    EXPECT_EQ(line_of("qubits 2\nrz 0 nan\n"), 2u);
    EXPECT_EQ(line_of("qubits 2\nrx 0 inf\n"), 2u);
    EXPECT_EQ(line_of("qubits 2\nh 5\n"), 2u);
    EXPECT_EQ(line_of("qubits 2\ncx 1 1\n"), 2u);
    EXPECT_EQ(line_of("qubits 2\ncx 0\n"), 2u);
    EXPECT_EQ(line_of("qubits 2\nqubits 3\n"), 2u);
    EXPECT_EQ(line_of("h 0\n"), 1u);
    EXPECT_EQ(line_of("qubits 2\nmeasure\nh 0\n"), 3u);
    EXPECT_EQ(line_of("qubits -1\n"), 1u);
    EXPECT_THROW(parse_circuit(""), ParseError);
}

}  // namespace
}  // namespace qobf
