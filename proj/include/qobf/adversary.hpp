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

#include <cmath>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "qobf/circuit.hpp"
#include "qobf/circuit_io.hpp"
#include "qobf/errors.hpp"
#include "qobf/graph.hpp"

namespace qobf {

using BigInt = boost::multiprecision::cpp_int;

// What a provider can reconstruct from the circuit text it received.
struct ExtractionReport {
    Graph recovered_graph;
    std::size_t swap_count = 0;
    // final_mapping[physical] = logical qubit held there after the last SWAP.
    std::vector<int> final_mapping;
    std::size_t unmatched_gates = 0;
};

// Single left-to-right scan with the physical->logical map starting at identity.
// At each CX(a,b) the SWAP signature CX(a,b) CX(b,a) CX(a,b) is tried first, then the
// ZZ signature CX(a,b) RZ(b) CX(a,b). H, RX and measure carry no graph information.
inline ExtractionReport extract_graph(const Circuit &c) {
    const int n = c.num_qubits();
    ExtractionReport rep;
    rep.final_mapping.resize(static_cast<std::size_t>(n));
    std::iota(rep.final_mapping.begin(), rep.final_mapping.end(), 0);
    auto &p2l = rep.final_mapping;
    std::set<Edge> edges;

    const auto &g = c.gates();
    std::size_t i = 0;
    while (i < g.size()) {
        const Gate &x = g[i];
        if (x.kind == GateKind::H || x.kind == GateKind::RX || x.kind == GateKind::MEASURE_ALL) {
            ++i;
            continue;
        }
        if (x.kind == GateKind::CX && i + 2 < g.size()) {
            const Gate &y = g[i + 1];
            const Gate &z = g[i + 2];
            const bool closes = z.kind == GateKind::CX && z.q0 == x.q0 && z.q1 == x.q1;
            if (closes && y.kind == GateKind::CX && y.q0 == x.q1 && y.q1 == x.q0) {
                std::swap(p2l[x.q0], p2l[x.q1]);
                ++rep.swap_count;
                i += 3;
                continue;
            }
            if (closes && y.kind == GateKind::RZ && y.q0 == x.q1) {
                edges.emplace(p2l[x.q0], p2l[x.q1]);
                i += 3;
                continue;
            }
        }
        ++rep.unmatched_gates;
        ++i;
    }
    rep.recovered_graph = Graph(n, std::vector<Edge>(edges.begin(), edges.end()));
    return rep;
}

inline ExtractionReport extract_graph(std::string_view text) { return extract_graph(parse_circuit(text)); }

// Brute-force reconstruction cost for an n-node graph of which `observed_edges` are known.
struct EffortEstimate {
    int n = 0;
    std::uint64_t total_pairs = 0;
    std::uint64_t observed_edges = 0;
    std::uint64_t candidate_edges = 0;
    // 2^candidate_edges, exact.
    BigInt worst_case_trials;
    // Best case: one guess when anything is missing, none when the graph is complete.
    std::uint64_t min_guesses = 0;
    // Average over arbitrary graphs, 2^(n(n-1)/4), kept as the reduced exponent fraction.
    std::uint64_t average_exponent_num = 0;
    std::uint64_t average_exponent_den = 1;
    double average_trials_approx = 0.0;
};

inline EffortEstimate effort(int n, std::int64_t observed_edges) {
    if (n < 1 || n > 64) {
        throw InputError("effort needs 1 <= n <= 64, got " + std::to_string(n));
    }
    const std::uint64_t pairs = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n - 1) / 2;
    if (observed_edges < 0 || static_cast<std::uint64_t>(observed_edges) > pairs) {
        throw InputError("observed edges must lie in [0, " + std::to_string(pairs) + "]");
    }
    EffortEstimate e;
    e.n = n;
    e.total_pairs = pairs;
    e.observed_edges = static_cast<std::uint64_t>(observed_edges);
    e.candidate_edges = pairs - e.observed_edges;
    e.worst_case_trials = BigInt(1) << static_cast<unsigned>(e.candidate_edges);
    e.min_guesses = e.candidate_edges >= 1 ? 1 : 0;
    const std::uint64_t num = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n - 1);
    const std::uint64_t div = std::gcd(num, std::uint64_t{4});
    e.average_exponent_num = num / div;
    e.average_exponent_den = 4 / div;
    e.average_trials_approx =
        std::exp2(static_cast<double>(e.average_exponent_num) / static_cast<double>(e.average_exponent_den));
    return e;
}

// Union of what colluding providers saw.
inline Graph cross_provider_merge(const std::vector<ExtractionReport> &reports) {
    if (reports.empty()) {
        throw InputError("merge needs at least one report");
    }
    const int n = reports.front().recovered_graph.num_nodes();
    std::set<Edge> edges;
    for (const auto &r : reports) {
        if (r.recovered_graph.num_nodes() != n) {
            throw InputError("reports disagree on node count");
        }
        edges.insert(r.recovered_graph.edges().begin(), r.recovered_graph.edges().end());
    }
    return Graph(n, std::vector<Edge>(edges.begin(), edges.end()));
}

inline nlohmann::json effort_to_json(const EffortEstimate &e) {
    return {{"n", e.n},
            {"total_pairs", e.total_pairs},
            {"observed_edges", e.observed_edges},
            {"candidate_edges", e.candidate_edges},
            {"worst_case_trials", e.worst_case_trials.str()},
            {"min_guesses", e.min_guesses},
            {"average_exponent", std::to_string(e.average_exponent_num) + "/" + std::to_string(e.average_exponent_den)},
            {"average_trials_approx", e.average_trials_approx}};
}

inline nlohmann::json report_to_json(const ExtractionReport &r) {
    auto edges = nlohmann::json::array();
    for (const auto &e : r.recovered_graph.edges()) edges.push_back({e.u, e.v});
    const auto est = effort(r.recovered_graph.num_nodes(), static_cast<std::int64_t>(r.recovered_graph.num_edges()));
    nlohmann::json j{{"num_qubits", r.recovered_graph.num_nodes()},
                     {"edges", edges},
                     {"swap_count", r.swap_count},
                     {"final_mapping", r.final_mapping},
                     {"unmatched_gates", r.unmatched_gates},
                     {"effort", effort_to_json(est)}};
    j["summary"] = std::to_string(r.recovered_graph.num_edges()) + " edge(s) on " +
                   std::to_string(r.recovered_graph.num_nodes()) + " node(s) recovered through " +
                   std::to_string(r.swap_count) + " SWAP(s); " + std::to_string(est.candidate_edges) +
                   " unobserved pair(s) leave " + est.worst_case_trials.str() + " worst-case completions";
    return j;
}

}  // namespace qobf
