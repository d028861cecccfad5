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


#include <gtest/gtest.h>

#include "qobf/adversary.hpp"
#include "qobf/benchmarks.hpp"
#include "qobf/circuit_io.hpp"
#include "qobf/obfuscation.hpp"
#include "qobf/transpile.hpp"

namespace qobf {
namespace {

ParamVector random_params(Rng &rng, std::size_t p) {
    ParamVector v;
    for (std::size_t k = 0; k < p; ++k) {
        v.gammas.push_back(rng.uniform(-3, 3));
        v.betas.push_back(rng.uniform(-3, 3));
    }
    return v;
}

TEST(Extract, RecoversUnroutedGraphs) {
    Rng rng(1);
    for (auto name : kNamedBenchmarks) {
        const Graph g = benchmark_graph(name);
        for (std::size_t p = 1; p <= 3; ++p) {
            const auto rep = extract_graph(serialize(build_qaoa(g, random_params(rng, p))));
            EXPECT_EQ(rep.recovered_graph, g) << name;
            EXPECT_EQ(rep.unmatched_gates, 0u);
            EXPECT_EQ(rep.swap_count, 0u);
        }
    }
}

TEST(Extract, UndoesRoutingSwaps) {
    Rng rng(2);
    for (auto name : kNamedBenchmarks) {
        const Graph g = benchmark_graph(name);
        for (int extra = 0; extra <= 2; ++extra) {
            const auto routed = transpile(build_qaoa(g, random_params(rng, 2)), CouplingMap::line(g.num_nodes() + extra));
            const auto rep = extract_graph(routed.circuit);
            EXPECT_EQ(rep.recovered_graph.edges(), g.edges()) << name;
            EXPECT_EQ(rep.recovered_graph.num_nodes(), g.num_nodes() + extra);
            EXPECT_EQ(rep.swap_count, routed.swaps);
            EXPECT_EQ(rep.unmatched_gates, 0u);
            for (int l = 0; l < g.num_nodes(); ++l) EXPECT_EQ(rep.final_mapping[routed.final_layout[l]], l);
        }
    }
}

TEST(Extract, CountsStrayGates) {
    Circuit c(3);
    c.add(Gate::h(0)).add(Gate::cx(0, 1)).add(Gate::rz(2, 0.1)).add(Gate::cx(0, 1));
    const auto rep = extract_graph(c);
    EXPECT_EQ(rep.unmatched_gates, 3u);
    EXPECT_EQ(rep.recovered_graph.num_edges(), 0u);
}

TEST(Extract, FlavorsSeeStrictSubsetsAndMergeToWhole) {
    const Graph g = benchmark_graph("graph6");
    const std::vector<BackendProfile> bks{{"a", std::nullopt, std::nullopt, 1}, {"b", std::nullopt, std::nullopt, 2}};
    const auto plan = make_split_plan(g, 2, 2, bks, 3);
    std::vector<ExtractionReport> reps;
    for (const auto &f : plan.flavors) {
        reps.push_back(extract_graph(serialize(build_qaoa(flavor_graph(g, f), {{0.3}, {0.2}}))));
        EXPECT_LT(reps.back().recovered_graph.num_edges(), g.num_edges());
        for (const auto &e : f.removed_edges) EXPECT_FALSE(reps.back().recovered_graph.has_edge(e));
    }
    EXPECT_EQ(cross_provider_merge(reps), g);
    EXPECT_THROW(cross_provider_merge({}), InputError);
    reps.push_back(extract_graph(serialize(build_qaoa(Graph(3, {{0, 1}}), {{0.3}, {0.2}}))));
    EXPECT_THROW(cross_provider_merge(reps), InputError);
}

TEST(Effort, ExactCounts) {
    const auto small = effort(4, 3);
    EXPECT_EQ(small.total_pairs, 6u);
    EXPECT_EQ(small.candidate_edges, 3u);
    EXPECT_EQ(small.worst_case_trials, BigInt(8));
    EXPECT_EQ(small.min_guesses, 1u);

    const auto ten = effort(10, 9);
    EXPECT_EQ(ten.total_pairs, 45u);
    EXPECT_EQ(ten.candidate_edges, 36u);
    EXPECT_EQ(ten.worst_case_trials, BigInt(1) << 36);
    EXPECT_EQ(ten.worst_case_trials.str(), "68719476736");
    EXPECT_EQ(effort(10, 44).min_guesses, 1u);
    EXPECT_EQ(effort(10, 45).min_guesses, 0u);
    EXPECT_EQ(effort(10, 45).worst_case_trials, BigInt(1));
}

TEST(Effort, AverageExponentIsReduced) {
    const auto ten = effort(10, 0);
    EXPECT_EQ(ten.average_exponent_num, 45u);
    EXPECT_EQ(ten.average_exponent_den, 2u);
    EXPECT_NEAR(ten.average_trials_approx, std::exp2(22.5), 1.0);
    EXPECT_EQ(effort(4, 0).average_exponent_num, 3u);
    EXPECT_EQ(effort(4, 0).average_exponent_den, 1u);
}

TEST(Effort, BigWorstCaseIsExact) {
    const auto big = effort(64, 0);
    EXPECT_EQ(big.candidate_edges, 2016u);
    EXPECT_EQ(big.worst_case_trials, BigInt(1) << 2016);
}

TEST(Effort, RejectsOutOfRange) {
    EXPECT_THROW(effort(0, 0), InputError);
    EXPECT_THROW(effort(65, 0), InputError);
    EXPECT_THROW(effort(4, 7), InputError);
    EXPECT_THROW(effort(4, -1), InputError);
}

TEST(Report, JsonCarriesEffortAndSummary) {
    const auto rep = extract_graph(serialize(build_qaoa(benchmark_graph("cycle4"), {{0.1}, {0.2}})));
    const auto j = report_to_json(rep);
    EXPECT_EQ(j["edges"].size(), 4u);
    EXPECT_EQ(j["effort"]["candidate_edges"], 2u);
    EXPECT_EQ(j["effort"]["worst_case_trials"], "4");
    EXPECT_TRUE(j["summary"].is_string());
}

}  // namespace
}  // namespace qobf
