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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qobf/backend.hpp"
#include "qobf/circuit.hpp"
#include "qobf/errors.hpp"
#include "qobf/graph.hpp"
#include "qobf/optimizer.hpp"
#include "qobf/rng.hpp"
#include "qobf/transpile.hpp"

namespace qobf {

// Drops `removed` from g. The node count is kept so the qubit register does not
// reveal the removal.
inline Graph prune(const Graph &g, const std::vector<Edge> &removed) {
    if (removed.empty()) {
        throw InputError("prune needs at least one edge to remove");
    }
    std::set<Edge> drop;
    for (auto e : removed) {
        e = Edge(e.u, e.v);
        if (!g.has_edge(e)) {
            throw InputError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") is not in the graph");
        }
        drop.insert(e);
    }
    std::vector<Edge> kept;
    for (const auto &e : g.edges()) {
        if (!drop.count(e)) kept.push_back(e);
    }
    return Graph(g.num_nodes(), std::move(kept));
}

// One pruned circuit variant and the backend it is dispatched to.
struct PrunedFlavor {
    std::vector<Edge> removed_edges;
    BackendProfile backend;
};

enum class Schedule { round_robin };

struct SplitPlan {
    std::vector<PrunedFlavor> flavors;
    Schedule schedule = Schedule::round_robin;
    // 0 defers to the optimizer config; otherwise the two must agree.
    std::size_t total_iterations = 0;
};

// Checks every plan invariant against the full graph:
//   - at least two flavors, each removing a non-empty, duplicate-free subset of g's edges
//   - every flavor keeps at least one edge
//   - removed sets pairwise distinct
//   - each removed edge survives in some other flavor, so the flavors jointly cover g
inline void validate_plan(const Graph &g, const SplitPlan &plan) {
    const auto k = plan.flavors.size();
    if (k < 2) {
        throw PlanError("a split plan needs at least two flavors");
    }
    std::vector<std::set<Edge>> sets;
    std::set<std::string> names;
    for (std::size_t i = 0; i < k; ++i) {
        const auto &f = plan.flavors[i];
        if (f.removed_edges.empty()) {
            throw PlanError("flavor " + std::to_string(i) + " removes no edges");
        }
        std::set<Edge> s;
        for (auto e : f.removed_edges) {
            e = Edge(e.u, e.v);
            if (!g.has_edge(e)) {
                throw PlanError("flavor " + std::to_string(i) + " removes an edge absent from the graph");
            }
            if (!s.insert(e).second) {
                throw PlanError("flavor " + std::to_string(i) + " lists an edge twice");
            }
        }
        if (s.size() >= g.num_edges()) {
            throw PlanError("flavor " + std::to_string(i) + " removes every edge");
        }
        for (const auto &prev : sets) {
            if (prev == s) {
                throw PlanError("flavors must remove distinct edge sets");
            }
        }
        if (!names.insert(f.backend.name).second) {
            throw PlanError("backend '" + f.backend.name + "' assigned to two flavors");
        }
        sets.push_back(std::move(s));
    }
    for (std::size_t i = 0; i < k; ++i) {
        for (const auto &e : sets[i]) {
            bool covered = false;
            for (std::size_t j = 0; j < k && !covered; ++j) {
                covered = j != i && !sets[j].count(e);
            }
            if (!covered) {
                throw PlanError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                ") is removed by every flavor");
            }
        }
    }
}

// Edges each flavor's backend actually receives.
inline Graph flavor_graph(const Graph &g, const PrunedFlavor &f) { return prune(g, f.removed_edges); }

// Draws k distinct removed sets of `edges_per_flavor` edges uniformly under `seed`,
// rejecting draws that break the plan invariants.
inline SplitPlan make_split_plan(const Graph &g, std::size_t k, std::size_t edges_per_flavor,
                                 const std::vector<BackendProfile> &backends, std::uint64_t seed) {
    if (k < 2) {
        throw PlanError("need k >= 2 flavors");
    }
    if (backends.size() != k) {
        throw PlanError("need exactly one backend per flavor");
    }
    const std::size_t m = g.num_edges();
    if (edges_per_flavor < 1 || m < 2 || edges_per_flavor > m - 1) {
        throw PlanError("cannot remove " + std::to_string(edges_per_flavor) + " edge(s) per flavor from a graph with " +
                        std::to_string(m) + " edge(s)");
    }
    // Each edge may be missing from at most k-1 flavors.
    if (k * edges_per_flavor > (k - 1) * m) {
        throw PlanError("coverage rule unsatisfiable: too many removals for the edge count");
    }
    Rng rng(derive_seed(seed, 0x51a7));
    std::vector<Edge> pool = g.edges();
    constexpr int kAttempts = 200000;
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
        SplitPlan plan;
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < edges_per_flavor; ++j) {
                std::swap(pool[j], pool[j + rng.below(m - j)]);
            }
            std::vector<Edge> removed(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(edges_per_flavor));
            std::sort(removed.begin(), removed.end());
            plan.flavors.push_back({std::move(removed), backends[i]});
        }
        try {
            validate_plan(g, plan);
            return plan;
        } catch (const PlanError &) {
        }
    }
    throw PlanError("no valid split plan found for the requested shape");
}

struct ApproximationRatio {
    double value = 0.0;
    bool out_of_range = false;
};

// expectation / cmax, clamped to [0, 1]; out_of_range records whether clamping happened.
inline ApproximationRatio approximation_ratio(double expectation, std::size_t cmax) {
    if (cmax == 0) {
        throw MetricError("approximation ratio is undefined for a graph with no edges");
    }
    const double r = expectation / static_cast<double>(cmax);
    if (!(r >= 0.0)) return {0.0, true};
    if (r > 1.0) return {1.0, true};
    return {r, false};
}

enum class Method { SPSA, NelderMead };

struct OptimizerConfig {
    Method method = Method::SPSA;
    std::size_t total_iterations = 50;
    std::size_t p_layers = 1;
    std::uint64_t shots = kDefaultShots;
    std::uint64_t final_shots = 16384;
    std::uint64_t seed = 0;
    SpsaGains spsa;
    double nelder_mead_step = 0.4;
    // Unset means gamma ~ U[0, pi), beta ~ U[0, pi/2) drawn from the seed.
    std::optional<ParamVector> init;
};

inline ParamVector initial_params(const OptimizerConfig &cfg) {
    if (cfg.init) {
        cfg.init->validate();
        if (cfg.init->layers() != cfg.p_layers) {
            throw InputError("initial parameters do not match p_layers");
        }
        return *cfg.init;
    }
    if (cfg.p_layers < 1) {
        throw InputError("p_layers must be >= 1");
    }
    Rng rng(derive_seed(cfg.seed, 0x1417));
    ParamVector pv;
    for (std::size_t k = 0; k < cfg.p_layers; ++k) pv.gammas.push_back(rng.uniform(0.0, std::numbers::pi));
    for (std::size_t k = 0; k < cfg.p_layers; ++k) pv.betas.push_back(rng.uniform(0.0, std::numbers::pi / 2));
    return pv;
}

struct TraceEntry {
    std::size_t iteration = 0;
    std::string backend;
    // -1 for the unpruned baseline.
    int flavor = -1;
    // Iterate at the start of the iteration.
    ParamVector params;
    // Mean full-graph expectation over the iteration's evaluations.
    double expectation = 0.0;
    double ar = 0.0;
    std::size_t evaluations = 0;
};

struct RunTrace {
    std::string arm;
    std::size_t p_layers = 0;
    std::uint64_t seed = 0;
    std::string rng = std::string(kRngAlgorithm);
    std::size_t cmax = 0;
    std::vector<TraceEntry> entries;

    ParamVector best_params;
    double best_observed_expectation = 0.0;
    double best_observed_ar = 0.0;
    // Best parameters re-sampled with final_shots; this is the reported AR.
    double final_expectation = 0.0;
    double final_ar = 0.0;

    std::size_t evaluations = 0;
    std::size_t final_executions = 0;
    std::uint64_t shots = 0;
    std::uint64_t final_shots = 0;

    bool ok = true;
    std::string message;
};

namespace detail {

struct Slot {
    Graph graph;
    BackendProfile backend;
    int flavor;
};

inline double evaluate_expectation(const Graph &full, const Slot &slot, const ParamVector &params,
                                   std::uint64_t shots, Rng &rng) {
    const Circuit logical = build_qaoa(slot.graph, params);
    if (slot.backend.coupling) {
        const auto routed = transpile(logical, *slot.backend.coupling);
        const auto physical = run_shots(routed.circuit, slot.backend, shots, rng);
        return expectation_full_cost(full, to_logical(physical, routed.final_layout));
    }
    return expectation_full_cost(full, run_shots(logical, slot.backend, shots, rng));
}

inline bool all_finite(const std::vector<double> &x) {
    return std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); });
}

// Shared loop: iteration t runs entirely on slots[t mod k].
inline RunTrace run_schedule(const Graph &full, const std::vector<Slot> &slots, const OptimizerConfig &cfg,
                             std::string arm) {
    if (cfg.total_iterations < 1) {
        throw InputError("total_iterations must be >= 1");
    }
    if (cfg.shots < 1 || cfg.final_shots < 1) {
        throw InputError("shot counts must be >= 1");
    }
    RunTrace trace;
    trace.arm = std::move(arm);
    trace.p_layers = cfg.p_layers;
    trace.seed = cfg.seed;
    trace.shots = cfg.shots;
    trace.final_shots = cfg.final_shots;
    trace.cmax = max_cut_bruteforce(full).cmax;
    if (trace.cmax == 0) {
        throw MetricError("full graph has no edges; approximation ratio undefined");
    }
    const ParamVector init = initial_params(cfg);

    std::vector<Rng> streams;
    streams.reserve(slots.size());
    for (const auto &s : slots) streams.emplace_back(derive_seed(s.backend.seed, cfg.seed));

    std::unique_ptr<IterativeOptimizer> opt;
    if (cfg.method == Method::SPSA) {
        opt = std::make_unique<Spsa>(init.flatten(), cfg.spsa, derive_seed(cfg.seed, 0x5b5a));
    } else {
        opt = std::make_unique<NelderMead>(init.flatten(), cfg.nelder_mead_step);
    }

    const double cmax = static_cast<double>(trace.cmax);
    bool have_best = false;
    std::vector<double> best_x;
    double best_e = 0.0;

    for (std::size_t t = 0; t < cfg.total_iterations; ++t) {
        const std::size_t which = t % slots.size();
        const Slot &slot = slots[which];
        const std::vector<double> start = opt->x();

        bool diverged = false;
        const Objective f = [&](const std::vector<double> &x) {
            if (diverged || !all_finite(x)) {
                diverged = true;
                return std::numeric_limits<double>::quiet_NaN();
            }
            const double e = evaluate_expectation(full, slot, ParamVector::unflatten(x), cfg.shots, streams[which]);
            return -e / cmax;
        };
        const auto evals = opt->step(f);

        TraceEntry entry;
        entry.iteration = t;
        entry.backend = slot.backend.name;
        entry.flavor = slot.flavor;
        entry.params = ParamVector::unflatten(start);
        entry.evaluations = evals.size();
        double sum = 0.0;
        for (const auto &ev : evals) {
            if (!std::isfinite(ev.value)) diverged = true;
            sum += -ev.value * cmax;
            if (std::isfinite(ev.value) && (!have_best || -ev.value * cmax > best_e)) {
                have_best = true;
                best_e = -ev.value * cmax;
                best_x = ev.x;
            }
        }
        trace.evaluations += evals.size();
        entry.expectation = evals.empty() ? 0.0 : sum / static_cast<double>(evals.size());
        if (std::isfinite(entry.expectation)) {
            entry.ar = approximation_ratio(entry.expectation, trace.cmax).value;
        } else {
            entry.ar = 0.0;
        }
        trace.entries.push_back(std::move(entry));
        if (diverged || !all_finite(opt->x())) {
            trace.ok = false;
            trace.message = "optimizer diverged at iteration " + std::to_string(t) + " on backend '" +
                            slot.backend.name + "': non-finite parameters or objective";
            break;
        }
    }
    if (!have_best) {
        if (trace.ok) {
            trace.ok = false;
            trace.message = "no finite objective value observed";
        }
        return trace;
    }
    trace.best_params = ParamVector::unflatten(best_x);
    trace.best_observed_expectation = best_e;
    trace.best_observed_ar = approximation_ratio(best_e, trace.cmax).value;
    if (!trace.ok) {
        return trace;
    }

    // Final re-evaluation: fresh shots split evenly over the slots, pooled.
    double weighted = 0.0;
    const std::uint64_t k = slots.size();
    for (std::size_t i = 0; i < slots.size(); ++i) {
        const std::uint64_t share = cfg.final_shots / k + (i < cfg.final_shots % k ? 1 : 0);
        if (share == 0) continue;
        Rng rng(derive_seed(slots[i].backend.seed ^ 0xf1a1ULL, cfg.seed));
        weighted += static_cast<double>(share) *
                    evaluate_expectation(full, slots[i], trace.best_params, share, rng);
        ++trace.final_executions;
    }
    trace.final_expectation = weighted / static_cast<double>(cfg.final_shots);
    trace.final_ar = approximation_ratio(trace.final_expectation, trace.cmax).value;
    return trace;
}

}  // namespace detail

// Unobfuscated baseline when `plan` is empty (full circuit on `baseline`); otherwise
// round-robin split iteration over the plan's flavors, each on its own backend. The
// optimizer always sees the full graph's cut expectation, normalised by Cmax.
inline RunTrace optimize(const Graph &g_full, const std::optional<SplitPlan> &plan, const OptimizerConfig &cfg,
                         const BackendProfile &baseline = BackendProfile{"ideal", std::nullopt, std::nullopt, 0}) {
    std::vector<detail::Slot> slots;
    if (!plan) {
        slots.push_back({g_full, baseline, -1});
        return detail::run_schedule(g_full, slots, cfg, "original");
    }
    validate_plan(g_full, *plan);
    if (plan->total_iterations != 0 && plan->total_iterations != cfg.total_iterations) {
        throw InputError("plan and optimizer config disagree on total_iterations");
    }
    if (cfg.total_iterations < 2 * plan->flavors.size()) {
        throw InputError("need at least 2 iterations per flavor");
    }
    for (std::size_t i = 0; i < plan->flavors.size(); ++i) {
        slots.push_back({flavor_graph(g_full, plan->flavors[i]), plan->flavors[i].backend, static_cast<int>(i)});
    }
    return detail::run_schedule(g_full, slots, cfg, "split");
}

// A single pruned flavor iterated on its own backend without alternation.
inline RunTrace optimize_pruned_only(const Graph &g_full, const PrunedFlavor &flavor, const OptimizerConfig &cfg) {
    const Graph pruned = flavor_graph(g_full, flavor);
    if (pruned.num_edges() == 0) {
        throw PlanError("pruned flavor would leave no edges");
    }
    return detail::run_schedule(g_full, {{pruned, flavor.backend, 0}}, cfg, "pruned_only");
}

// One optimize run per p; run i uses seed derive_seed(cfg.seed, p).
inline std::vector<RunTrace> layer_sweep(const Graph &g, const std::optional<SplitPlan> &plan,
                                         const std::vector<std::size_t> &p_values, const OptimizerConfig &cfg,
                                         const BackendProfile &baseline = BackendProfile{"ideal", std::nullopt,
                                                                                         std::nullopt, 0}) {
    if (p_values.empty()) {
        throw InputError("layer sweep needs at least one p value");
    }
    std::vector<RunTrace> out;
    for (std::size_t p : p_values) {
        if (p < 1) {
            throw InputError("layer counts must be >= 1");
        }
        OptimizerConfig c = cfg;
        c.p_layers = p;
        c.init.reset();
        c.seed = derive_seed(cfg.seed, p);
        out.push_back(optimize(g, plan, c, baseline));
    }
    return out;
}

}  // namespace qobf
