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
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "qobf/adversary.hpp"
#include "qobf/backend.hpp"
#include "qobf/benchmarks.hpp"
#include "qobf/circuit.hpp"
#include "qobf/circuit_io.hpp"
#include "qobf/errors.hpp"
#include "qobf/graph.hpp"
#include "qobf/obfuscation.hpp"
#include "qobf/profiles.hpp"
#include "qobf/trace_io.hpp"
#include "qobf/transpile.hpp"

namespace qobf {

enum class Arm { original, pruned_only, split };

inline std::string_view arm_name(Arm a) {
    switch (a) {
    case Arm::original:
        return "original";
    case Arm::pruned_only:
        return "pruned_only";
    case Arm::split:
        return "split";
    }
    return "?";
}

inline Arm parse_arm(std::string_view s) {
    if (s == "original") return Arm::original;
    if (s == "pruned_only" || s == "pruned") return Arm::pruned_only;
    if (s == "split") return Arm::split;
    throw InputError("unknown arm '" + std::string(s) + "'");
}

// Either explicit removed sets (one list per flavor) or a random draw of k sets.
struct PlanSpec {
    std::vector<std::vector<Edge>> removed;
    std::size_t k = 2;
    std::size_t edges_per_flavor = 1;
    std::uint64_t seed = 0;
};

// A named simulator kind, e.g. "ideal" or "noisy", and the backends its flavors use in order.
struct SimSpec {
    std::string name;
    std::vector<std::string> backends;
};

struct ExperimentSpec {
    std::string name = "experiment";
    std::string graph_label;
    Graph graph;
    std::vector<Arm> arms;
    std::vector<PlanSpec> plans;
    std::vector<std::size_t> p_values{1};
    std::vector<std::size_t> sweep;
    std::vector<std::uint64_t> seeds;
    std::vector<BackendProfile> backends;
    std::vector<SimSpec> sims;
    OptimizerConfig optimizer;
    std::size_t workers = 1;
};

inline std::vector<Edge> edges_from_json(const nlohmann::json &j) {
    std::vector<Edge> out;
    for (const auto &e : j) out.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    return out;
}

// Relative paths ("graph_file", "backends_file") resolve against `base_dir`.
inline ExperimentSpec spec_from_json(const nlohmann::json &j, const std::filesystem::path &base_dir = ".") {
    ExperimentSpec s;
    s.name = j.value("name", s.name);
    if (j.contains("graph_file")) {
        const auto path = base_dir / j["graph_file"].get<std::string>();
        std::ifstream in(path);
        if (!in) throw InputError("cannot open graph file '" + path.string() + "'");
        s.graph = read_graph(in);
        s.graph_label = path.stem().string();
    } else if (j.contains("graph")) {
        s.graph_label = j["graph"].get<std::string>();
        s.graph = benchmark_graph(s.graph_label);
    } else {
        throw InputError("experiment spec needs 'graph' or 'graph_file'");
    }

    for (const auto &a : j.value("arms", nlohmann::json::array({"original", "pruned_only", "split"}))) {
        s.arms.push_back(parse_arm(a.get<std::string>()));
    }
    if (s.arms.empty()) throw InputError("experiment spec needs at least one arm");

    auto plan_from = [](const nlohmann::json &pj) {
        PlanSpec p;
        if (pj.contains("removed")) {
            for (const auto &f : pj["removed"]) p.removed.push_back(edges_from_json(f));
            p.k = p.removed.size();
        } else {
            p.k = pj.value("k", std::size_t{2});
            p.edges_per_flavor = pj.value("edges_per_flavor", std::size_t{1});
        }
        p.seed = pj.value("seed", std::uint64_t{0});
        return p;
    };
    if (j.contains("plans")) {
        for (const auto &pj : j["plans"]) s.plans.push_back(plan_from(pj));
    } else if (j.contains("plan")) {
        s.plans.push_back(plan_from(j["plan"]));
    } else {
        s.plans.push_back(PlanSpec{});
    }

    if (j.contains("p")) s.p_values = j["p"].get<std::vector<std::size_t>>();
    if (j.contains("sweep")) s.sweep = j["sweep"].get<std::vector<std::size_t>>();
    if (j.contains("seeds")) {
        s.seeds = j["seeds"].get<std::vector<std::uint64_t>>();
    } else {
        const auto count = j.value("num_seeds", std::size_t{10});
        const auto base = j.value("seed_base", std::uint64_t{0});
        for (std::size_t i = 0; i < count; ++i) s.seeds.push_back(base + i);
    }

    if (j.contains("backends")) {
        s.backends = backends_from_json(j["backends"]);
    } else if (j.contains("backends_file")) {
        s.backends = load_backends((base_dir / j["backends_file"].get<std::string>()).string());
    } else {
        throw InputError("experiment spec needs 'backends' or 'backends_file'");
    }
    for (const auto &[name, list] : j.at("sims").items()) {
        s.sims.push_back({name, list.get<std::vector<std::string>>()});
    }

    auto &o = s.optimizer;
    o.total_iterations = j.value("iterations", o.total_iterations);
    o.shots = j.value("shots", o.shots);
    o.final_shots = j.value("final_shots", o.final_shots);
    if (j.contains("optimizer")) {
        const auto &oj = j["optimizer"];
        const auto method = oj.value("method", std::string("spsa"));
        if (method == "spsa") {
            o.method = Method::SPSA;
        } else if (method == "nelder_mead") {
            o.method = Method::NelderMead;
        } else {
            throw InputError("unknown optimizer method '" + method + "'");
        }
        o.spsa.a = oj.value("a", o.spsa.a);
        o.spsa.c = oj.value("c", o.spsa.c);
        o.spsa.A = oj.value("A", o.spsa.A);
        o.spsa.alpha = oj.value("alpha", o.spsa.alpha);
        o.spsa.gamma = oj.value("gamma", o.spsa.gamma);
        o.nelder_mead_step = oj.value("step", o.nelder_mead_step);
    }
    s.workers = j.value("workers", s.workers);
    return s;
}

inline ExperimentSpec load_spec(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open experiment spec '" + path + "'");
    return spec_from_json(nlohmann::json::parse(in), std::filesystem::path(path).parent_path());
}

inline void validate_spec(const ExperimentSpec &s) {
    if (s.arms.empty()) throw InputError("experiment needs at least one arm");
    if (s.seeds.empty()) throw InputError("experiment needs at least one seed");
    if (s.sims.empty()) throw InputError("experiment needs at least one simulator kind");
    if (s.p_values.empty()) throw InputError("experiment needs at least one p value");
    for (auto p : s.p_values) {
        if (p < 1) throw InputError("p values must be >= 1");
    }
    for (const auto &sim : s.sims) {
        if (sim.backends.empty()) throw InputError("sim '" + sim.name + "' lists no backends");
        for (const auto &b : sim.backends) find_backend(s.backends, b);
    }
}

// Resolves a plan spec to a concrete split plan on `sim`'s backends.
inline SplitPlan resolve_plan(const ExperimentSpec &s, const PlanSpec &ps, const SimSpec &sim) {
    if (sim.backends.size() < ps.k) {
        throw InputError("sim '" + sim.name + "' has " + std::to_string(sim.backends.size()) +
                         " backends but the plan needs " + std::to_string(ps.k));
    }
    std::vector<BackendProfile> bks;
    for (std::size_t i = 0; i < ps.k; ++i) bks.push_back(find_backend(s.backends, sim.backends[i]));
    if (!ps.removed.empty()) {
        SplitPlan plan;
        for (std::size_t i = 0; i < ps.removed.size(); ++i) plan.flavors.push_back({ps.removed[i], bks[i]});
        validate_plan(s.graph, plan);
        return plan;
    }
    return make_split_plan(s.graph, ps.k, ps.edges_per_flavor, bks, ps.seed);
}

// "0-1+1-2/2-3": each flavor's removed edges joined by '+', flavors by '/'. No commas,
// so the label is a plain CSV field.
inline std::string plan_label(const SplitPlan &plan) {
    std::string out;
    for (std::size_t i = 0; i < plan.flavors.size(); ++i) {
        if (i) out += "/";
        const auto &removed = plan.flavors[i].removed_edges;
        for (std::size_t j = 0; j < removed.size(); ++j) {
            if (j) out += "+";
            out += std::to_string(removed[j].u) + "-" + std::to_string(removed[j].v);
        }
    }
    return out;
}

struct ResultRow {
    std::string graph;
    std::string spec;
    std::string sim;
    std::string arm;
    std::size_t p = 0;
    double mean_ar = 0.0;
    double std_ar = 0.0;
    std::size_t n_seeds = 0;

    friend bool operator==(const ResultRow &, const ResultRow &) = default;
};

struct ResultTable {
    std::vector<ResultRow> rows;

    const ResultRow *find(std::string_view sim, std::string_view arm, std::size_t p, std::string_view spec = {}) const {
        for (const auto &r : rows) {
            if (r.sim == sim && r.arm == arm && r.p == p && (spec.empty() || r.spec == spec)) return &r;
        }
        return nullptr;
    }
};

inline constexpr std::string_view kCsvHeader = "graph,spec,sim,arm,p,mean_ar,std_ar,n_seeds";

namespace detail {
inline std::string fmt_num(double x) {
    if (!std::isfinite(x)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}
}  // namespace detail

// Failed rows carry nan statistics and n_seeds = 0.
inline void write_csv(std::ostream &out, const ResultTable &t) {
    out << kCsvHeader << "\n";
    for (const auto &r : t.rows) {
        out << r.graph << "," << r.spec << "," << r.sim << "," << r.arm << "," << r.p << ","
            << detail::fmt_num(r.mean_ar) << "," << detail::fmt_num(r.std_ar) << "," << r.n_seeds << "\n";
    }
}

inline ResultTable read_csv(std::istream &in) {
    ResultTable t;
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) {
        throw ParseError(1, "unexpected results header");
    }
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> cols;
        std::stringstream ss(line);
        std::string col;
        while (std::getline(ss, col, ',')) cols.push_back(col);
        if (cols.size() != 8) throw ParseError(lineno, "expected 8 columns");
        ResultRow r;
        r.graph = cols[0];
        r.spec = cols[1];
        r.sim = cols[2];
        r.arm = cols[3];
        try {
            r.p = std::stoul(cols[4]);
            r.mean_ar = cols[5] == "nan" ? std::nan("") : std::stod(cols[5]);
            r.std_ar = cols[6] == "nan" ? std::nan("") : std::stod(cols[6]);
            r.n_seeds = std::stoul(cols[7]);
        } catch (const std::exception &) {
            throw ParseError(lineno, "bad numeric column");
        }
        t.rows.push_back(std::move(r));
    }
    return t;
}

struct CircuitCost {
    std::string backend;
    std::size_t one_qubit = 0;
    std::size_t two_qubit = 0;
    std::size_t swap_added = 0;
    std::size_t depth = 0;
};

struct OverheadEntry {
    std::string sim;
    std::string spec;
    std::string arm;
    std::size_t p = 0;
    // One circuit per backend the arm dispatches to, in flavor order.
    std::vector<CircuitCost> circuits;
    // Mean objective evaluations per run (excluding the final re-evaluation).
    double evaluations = 0.0;
    double final_executions = 0.0;
    // Sum over all executions of the executed circuit's CX count.
    double two_qubit_work = 0.0;
    // two_qubit_work relative to the single-layer pruned-only baseline.
    double relative_cost = 0.0;
};

struct OverheadReport {
    std::vector<OverheadEntry> entries;
};

// One executed run, tagged with the table cell it belongs to.
struct CellRun {
    std::string sim;
    std::string spec;
    Arm arm = Arm::original;
    std::size_t p = 1;
    std::uint64_t seed = 0;
    RunTrace trace;
    std::string error;
};

struct ExperimentResult {
    ResultTable table;
    std::vector<CellRun> runs;
    OverheadReport overhead;
    // Serialized circuits as each backend would receive them at the run's initial parameters.
    std::vector<std::pair<std::string, std::string>> circuits;
    std::vector<std::string> invariant_failures;
};

namespace detail {

struct CellPlan {
    std::string sim;
    std::string spec;
    Arm arm;
    std::size_t p;
    std::uint64_t seed;
    std::optional<SplitPlan> plan;
    BackendProfile baseline;
};

inline CircuitCost circuit_cost(const Graph &g, const ParamVector &params, const BackendProfile &b) {
    Circuit c = build_qaoa(g, params);
    CircuitCost cost;
    cost.backend = b.name;
    if (b.coupling) {
        auto routed = transpile(c, *b.coupling);
        cost.swap_added = routed.swaps;
        c = std::move(routed.circuit);
    }
    const auto counts = count_gates(c);
    cost.one_qubit = counts.one_qubit;
    cost.two_qubit = counts.two_qubit;
    cost.depth = counts.depth;
    return cost;
}

inline std::vector<CellPlan> enumerate_cells(const ExperimentSpec &s, const std::vector<std::size_t> &p_values) {
    std::vector<CellPlan> cells;
    for (const auto &sim : s.sims) {
        const BackendProfile baseline = find_backend(s.backends, sim.backends.front());
        for (Arm arm : s.arms) {
            const std::size_t plan_count = arm == Arm::original ? 1 : s.plans.size();
            for (std::size_t pi = 0; pi < plan_count; ++pi) {
                std::optional<SplitPlan> plan;
                std::string label = "none";
                if (arm != Arm::original) {
                    plan = resolve_plan(s, s.plans[pi], sim);
                    label = plan_label(*plan);
                }
                for (std::size_t p : p_values) {
                    for (std::uint64_t seed : s.seeds) {
                        cells.push_back({sim.name, label, arm, p, seed, plan, baseline});
                    }
                }
            }
        }
    }
    return cells;
}

inline RunTrace run_cell(const ExperimentSpec &s, const CellPlan &cell) {
    OptimizerConfig cfg = s.optimizer;
    cfg.p_layers = cell.p;
    cfg.seed = cell.seed;
    cfg.init.reset();
    switch (cell.arm) {
    case Arm::original:
        return optimize(s.graph, std::nullopt, cfg, cell.baseline);
    case Arm::pruned_only:
        return optimize_pruned_only(s.graph, cell.plan->flavors.front(), cfg);
    case Arm::split:
        return optimize(s.graph, cell.plan, cfg);
    }
    throw InputError("unknown arm");
}

// Per-flavor leakage check: each backend sees a strict subset, and the union is the graph.
inline void check_partial_knowledge(const Graph &g, const SplitPlan &plan, std::size_t p, const std::string &tag,
                                    ExperimentResult &res) {
    OptimizerConfig cfg;
    cfg.p_layers = p;
    const ParamVector params = initial_params(cfg);
    std::vector<ExtractionReport> reports;
    for (std::size_t i = 0; i < plan.flavors.size(); ++i) {
        const auto &f = plan.flavors[i];
        Circuit c = build_qaoa(flavor_graph(g, f), params);
        if (f.backend.coupling) c = transpile(c, *f.backend.coupling).circuit;
        const std::string text = serialize(c);
        res.circuits.emplace_back(tag + "_flavor" + std::to_string(i) + "_" + f.backend.name, text);
        auto rep = extract_graph(text);
        const auto &seen = rep.recovered_graph;
        bool strict = seen.num_nodes() >= g.num_nodes() && seen.num_edges() < g.num_edges();
        for (const auto &e : seen.edges()) strict = strict && g.has_edge(e);
        if (!strict) {
            res.invariant_failures.push_back(tag + ": flavor " + std::to_string(i) +
                                             " leaks a non-strict subset of the graph");
        }
        if (rep.unmatched_gates != 0) {
            res.invariant_failures.push_back(tag + ": flavor " + std::to_string(i) + " left unmatched gates");
        }
        reports.push_back(std::move(rep));
    }
    // Routed flavors are extracted over the physical register, so compare edge sets only.
    const Graph merged = cross_provider_merge(reports);
    if (merged.edges() != g.edges()) {
        res.invariant_failures.push_back(tag + ": flavors do not jointly cover the graph");
    }
}

}  // namespace detail

// Static gate counts per dispatched circuit plus evaluation counts from `runs`.
inline OverheadReport overhead(const ExperimentSpec &s, const std::vector<CellRun> &runs = {}) {
    validate_spec(s);
    std::vector<std::size_t> ps = s.p_values;
    for (auto p : s.sweep) {
        if (std::find(ps.begin(), ps.end(), p) == ps.end()) ps.push_back(p);
    }
    OverheadReport rep;
    for (const auto &sim : s.sims) {
        const BackendProfile baseline = find_backend(s.backends, sim.backends.front());
        for (Arm arm : s.arms) {
            const std::size_t plan_count = arm == Arm::original ? 1 : s.plans.size();
            for (std::size_t pi = 0; pi < plan_count; ++pi) {
                std::optional<SplitPlan> plan;
                if (arm != Arm::original) plan = resolve_plan(s, s.plans[pi], sim);
                const std::string label = plan ? plan_label(*plan) : "none";
                for (std::size_t p : ps) {
                    OverheadEntry e;
                    e.sim = sim.name;
                    e.spec = label;
                    e.arm = std::string(arm_name(arm));
                    e.p = p;
                    // Gate counts do not depend on angle values.
                    ParamVector params{std::vector<double>(p, 0.5), std::vector<double>(p, 0.5)};
                    if (arm == Arm::original) {
                        e.circuits.push_back(detail::circuit_cost(s.graph, params, baseline));
                    } else if (arm == Arm::pruned_only) {
                        const auto &f = plan->flavors.front();
                        e.circuits.push_back(detail::circuit_cost(flavor_graph(s.graph, f), params, f.backend));
                    } else {
                        for (const auto &f : plan->flavors) {
                            e.circuits.push_back(detail::circuit_cost(flavor_graph(s.graph, f), params, f.backend));
                        }
                    }

                    std::map<std::string, std::size_t> cx_by_backend;
                    double mean_cx = 0.0;
                    for (const auto &c : e.circuits) {
                        cx_by_backend[c.backend] = c.two_qubit;
                        mean_cx += static_cast<double>(c.two_qubit);
                    }
                    mean_cx /= static_cast<double>(e.circuits.size());

                    std::size_t n = 0;
                    for (const auto &r : runs) {
                        if (r.sim != e.sim || r.spec != e.spec || r.arm != arm || r.p != p || !r.error.empty()) continue;
                        ++n;
                        e.evaluations += static_cast<double>(r.trace.evaluations);
                        e.final_executions += static_cast<double>(r.trace.final_executions);
                        double work = static_cast<double>(r.trace.final_executions) * mean_cx;
                        for (const auto &te : r.trace.entries) {
                            work += static_cast<double>(te.evaluations) * static_cast<double>(cx_by_backend[te.backend]);
                        }
                        e.two_qubit_work += work;
                    }
                    if (n == 0) {
                        // No traces: assume the nominal SPSA budget of two evaluations per iteration.
                        e.evaluations = 2.0 * static_cast<double>(s.optimizer.total_iterations);
                        e.final_executions = 1.0;
                        e.two_qubit_work = (e.evaluations + e.final_executions) * mean_cx;
                    } else {
                        e.evaluations /= static_cast<double>(n);
                        e.final_executions /= static_cast<double>(n);
                        e.two_qubit_work /= static_cast<double>(n);
                    }
                    rep.entries.push_back(std::move(e));
                }
            }
        }
    }
    for (auto &e : rep.entries) {
        const OverheadEntry *base = nullptr;
        for (const auto &b : rep.entries) {
            if (b.sim == e.sim && b.arm == "pruned_only" && b.p == 1) {
                base = &b;
                break;
            }
        }
        e.relative_cost = base && base->two_qubit_work > 0 ? e.two_qubit_work / base->two_qubit_work : std::nan("");
    }
    return rep;
}

inline nlohmann::json overhead_to_json(const OverheadReport &r) {
    auto arr = nlohmann::json::array();
    for (const auto &e : r.entries) {
        auto circuits = nlohmann::json::array();
        for (const auto &c : e.circuits) {
            circuits.push_back({{"backend", c.backend},
                                {"one_qubit", c.one_qubit},
                                {"two_qubit", c.two_qubit},
                                {"swap_added", c.swap_added},
                                {"depth", c.depth}});
        }
        nlohmann::json j{{"sim", e.sim},
                         {"spec", e.spec},
                         {"arm", e.arm},
                         {"p", e.p},
                         {"circuits", circuits},
                         {"evaluations", e.evaluations},
                         {"final_executions", e.final_executions},
                         {"two_qubit_work", e.two_qubit_work}};
        j["relative_cost"] = std::isfinite(e.relative_cost) ? nlohmann::json(e.relative_cost) : nlohmann::json(nullptr);
        arr.push_back(std::move(j));
    }
    return {{"cost_proxy", "two_qubit_gates_x_executions"}, {"entries", arr}};
}

// Runs every (sim, arm, plan, p, seed) cell. `p_values` defaults to the spec's p list.
inline ExperimentResult run_experiment(const ExperimentSpec &s, std::optional<std::vector<std::size_t>> p_values = {}) {
    validate_spec(s);
    const std::vector<std::size_t> ps = p_values ? *p_values : s.p_values;
    const auto cells = detail::enumerate_cells(s, ps);

    ExperimentResult res;
    res.runs.resize(cells.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) {
            const auto &c = cells[i];
            CellRun &out = res.runs[i];
            out.sim = c.sim;
            out.spec = c.spec;
            out.arm = c.arm;
            out.p = c.p;
            out.seed = c.seed;
            try {
                out.trace = detail::run_cell(s, c);
                if (!out.trace.ok) out.error = out.trace.message;
            } catch (const std::exception &ex) {
                out.error = ex.what();
                out.trace.ok = false;
                out.trace.message = ex.what();
            }
        }
    };
    const std::size_t nworkers = std::clamp<std::size_t>(s.workers, 1, std::max<std::size_t>(cells.size(), 1));
    if (nworkers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < nworkers; ++w) pool.emplace_back(worker);
    }

    // Fold in cell order; a row with any failed seed is reported as nan.
    for (std::size_t i = 0; i < cells.size();) {
        std::size_t j = i;
        std::vector<double> ars;
        bool failed = false;
        while (j < cells.size() && cells[j].sim == cells[i].sim && cells[j].spec == cells[i].spec &&
               cells[j].arm == cells[i].arm && cells[j].p == cells[i].p) {
            if (res.runs[j].error.empty()) {
                ars.push_back(res.runs[j].trace.final_ar);
            } else {
                failed = true;
            }
            ++j;
        }
        ResultRow row{s.graph_label, cells[i].spec, cells[i].sim, std::string(arm_name(cells[i].arm)), cells[i].p};
        if (failed || ars.empty()) {
            row.mean_ar = std::nan("");
            row.std_ar = std::nan("");
            row.n_seeds = 0;
        } else {
            double mean = 0.0;
            for (double a : ars) mean += a;
            mean /= static_cast<double>(ars.size());
            double var = 0.0;
            for (double a : ars) var += (a - mean) * (a - mean);
            row.mean_ar = mean;
            row.std_ar = ars.size() > 1 ? std::sqrt(var / static_cast<double>(ars.size() - 1)) : 0.0;
            row.n_seeds = ars.size();
        }
        res.table.rows.push_back(std::move(row));
        i = j;
    }

    std::set<std::string> checked;
    for (const auto &c : cells) {
        if (c.arm != Arm::split) continue;
        const std::string tag = c.sim + "_" + c.spec + "_p" + std::to_string(c.p);
        if (!checked.insert(tag).second) continue;
        detail::check_partial_knowledge(s.graph, *c.plan, c.p, tag, res);
    }

    ExperimentSpec ov = s;
    ov.p_values = ps;
    ov.sweep.clear();
    res.overhead = overhead(ov, res.runs);
    return res;
}

inline void write_traces(std::ostream &out, const ExperimentResult &r, const std::string &graph_label) {
    for (const auto &run : r.runs) {
        nlohmann::json tags{{"graph", graph_label}, {"sim", run.sim}, {"spec", run.spec}, {"p", run.p}};
        if (!run.error.empty()) tags["error"] = run.error;
        write_trace_jsonl(out, run.trace, tags);
    }
}

// Writes results.csv, traces.jsonl, overhead.json and circuits/ under `dir`.
inline void write_outputs(const std::filesystem::path &dir, const ExperimentSpec &s, const ExperimentResult &r) {
    std::filesystem::create_directories(dir / "circuits");
    auto open = [](const std::filesystem::path &p) {
        std::ofstream f(p, std::ios::binary);
        if (!f) throw InputError("cannot write '" + p.string() + "'");
        return f;
    };
    {
        auto f = open(dir / "results.csv");
        write_csv(f, r.table);
    }
    {
        auto f = open(dir / "traces.jsonl");
        write_traces(f, r, s.graph_label);
    }
    {
        auto f = open(dir / "overhead.json");
        f << overhead_to_json(r.overhead).dump(2) << "\n";
    }
    for (const auto &[name, text] : r.circuits) {
        std::string file = name;
        std::replace(file.begin(), file.end(), '/', '_');
        auto f = open(dir / "circuits" / (file + ".circ"));
        f << text;
    }
}

}  // namespace qobf
