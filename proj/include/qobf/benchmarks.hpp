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

#include <array>
#include <optional>
#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include "qobf/errors.hpp"
#include "qobf/graph.hpp"

namespace qobf {

// Edge lists mirror data/benchmarks/*.graph; a unit test keeps the two in sync.
inline constexpr std::string_view kBenchmarkDataVersion = "bench-v1";

enum class BenchmarkId { cycle3, cycle4, complete4_with_diagonals, graph5, graph6, cycle, complete };

// The five named benchmark shapes, in the order experiments report them.
inline constexpr std::array<std::string_view, 5> kNamedBenchmarks = {
    "cycle3", "cycle4", "complete4_with_diagonals", "graph5", "graph6"};

inline Graph cycle_graph(int n) {
    if (n < 3) {
        throw InputError("cycle needs n >= 3, got " + std::to_string(n));
    }
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) {
        edges.emplace_back(i, (i + 1) % n);
    }
    return Graph(n, std::move(edges));
}

inline Graph complete_graph(int n) {
    if (n < 1) {
        throw InputError("complete graph needs n >= 1");
    }
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
            edges.emplace_back(u, v);
        }
    }
    return Graph(n, std::move(edges));
}

// `size` is only read for the parameterised families.
inline Graph benchmark_graph(BenchmarkId id, int size = 0) {
    switch (id) {
    case BenchmarkId::cycle3:
        return Graph(3, {{0, 1}, {1, 2}, {0, 2}});
    case BenchmarkId::cycle4:
        return Graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    case BenchmarkId::complete4_with_diagonals:
        return Graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 2}, {1, 3}});
    case BenchmarkId::graph5:
        return Graph(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}, {0, 2}});
    case BenchmarkId::graph6:
        return Graph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}, {0, 2}, {3, 5}});
    case BenchmarkId::cycle:
        return cycle_graph(size);
    case BenchmarkId::complete:
        return complete_graph(size);
    }
    throw InputError("unknown benchmark id");
}

// Accepts the fixed names plus `cycle(N)`/`complete(N)` (also `cycleN`, `completeN`).
inline Graph benchmark_graph(std::string_view name) {
    if (name == "cycle3") return benchmark_graph(BenchmarkId::cycle3);
    if (name == "cycle4") return benchmark_graph(BenchmarkId::cycle4);
    if (name == "complete4_with_diagonals") return benchmark_graph(BenchmarkId::complete4_with_diagonals);
    if (name == "graph5") return benchmark_graph(BenchmarkId::graph5);
    if (name == "graph6") return benchmark_graph(BenchmarkId::graph6);

    auto sized = [&](std::string_view prefix, BenchmarkId id) -> std::optional<Graph> {
        if (!name.starts_with(prefix)) {
            return std::nullopt;
        }
        std::string_view rest = name.substr(prefix.size());
        if (rest.starts_with('(') && rest.ends_with(')')) {
            rest = rest.substr(1, rest.size() - 2);
        }
        int n = 0;
        auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), n);
        if (rest.empty() || ec != std::errc{} || ptr != rest.data() + rest.size()) {
            return std::nullopt;
        }
        return benchmark_graph(id, n);
    };
    if (auto g = sized("cycle", BenchmarkId::cycle)) return *g;
    if (auto g = sized("complete", BenchmarkId::complete)) return *g;
    throw InputError("unknown benchmark graph '" + std::string(name) + "'");
}

}  // namespace qobf
