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


// Compares the unobfuscated, pruned-only and split runs on one benchmark graph.
//
//   maxcut_example [graph] [seed]

#include <cstdio>
#include <string>

#include "qobf/qobf.hpp"

int main(int argc, char **argv) {
    using namespace qobf;
    const std::string name = argc > 1 ? argv[1] : "graph5";
    const std::uint64_t seed = argc > 2 ? std::stoull(argv[2]) : 0;

    const Graph g = benchmark_graph(name);
    const std::vector<BackendProfile> backends{{"ideal_a", std::nullopt, std::nullopt, 11},
                                               {"ideal_b", std::nullopt, std::nullopt, 12}};
    const SplitPlan plan = make_split_plan(g, 2, 1, backends, seed);

    OptimizerConfig cfg;
    cfg.seed = seed;
    const RunTrace orig = optimize(g, std::nullopt, cfg);
    const RunTrace pruned = optimize_pruned_only(g, plan.flavors.front(), cfg);
    const RunTrace split = optimize(g, plan, cfg);

    std::printf("%s: n=%d |E|=%zu Cmax=%zu\n", name.c_str(), g.num_nodes(), g.num_edges(), orig.cmax);
    for (std::size_t i = 0; i < plan.flavors.size(); ++i) {
        const auto &e = plan.flavors[i].removed_edges.front();
        std::printf("  flavor %zu on %s drops (%d,%d)\n", i, plan.flavors[i].backend.name.c_str(), e.u, e.v);
    }
    std::printf("  original    AR %.3f\n", orig.final_ar);
    std::printf("  pruned_only AR %.3f\n", pruned.final_ar);
    std::printf("  split       AR %.3f\n", split.final_ar);
    return 0;
}
