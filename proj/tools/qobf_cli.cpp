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


#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qobf/qobf.hpp"

namespace {

using namespace qobf;

constexpr int kExitInvariant = 1;

std::string slurp(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Writes `text` to `out`, or stdout when `out` is empty.
void emit(const std::string &out, const std::string &text) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw InputError("cannot write '" + out + "'");
    f << text;
}

// Erdos-Renyi draw, retried until the graph has at least one edge.
Graph random_graph(int n, double density, std::uint64_t seed) {
    if (n < 2) throw InputError("random graph needs n >= 2");
    if (!(density > 0.0 && density <= 1.0)) throw InputError("density must lie in (0, 1]");
    Rng rng(seed);
    for (;;) {
        std::vector<Edge> edges;
        for (int u = 0; u < n; ++u) {
            for (int v = u + 1; v < n; ++v) {
                if (rng.bernoulli(density)) edges.emplace_back(u, v);
            }
        }
        if (!edges.empty()) return Graph(n, std::move(edges));
    }
}

void override_seeds(ExperimentSpec &s, std::optional<std::uint64_t> seed) {
    if (!seed) return;
    const auto count = s.seeds.size();
    s.seeds.clear();
    for (std::size_t i = 0; i < count; ++i) s.seeds.push_back(*seed + i);
}

int report_experiment(const ExperimentSpec &spec, const ExperimentResult &res, const std::string &out) {
    if (out.empty()) {
        write_csv(std::cout, res.table);
    } else {
        write_outputs(out, spec, res);
        std::cerr << "wrote " << res.table.rows.size() << " row(s) to " << out << "\n";
    }
    for (const auto &f : res.invariant_failures) std::cerr << "invariant failed: " << f << "\n";
    return res.invariant_failures.empty() ? 0 : kExitInvariant;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"qobf: split-iteration QAOA obfuscation toolkit"};
    app.require_subcommand(1);

    std::optional<std::uint64_t> seed;
    std::string out;
    auto common = [&](CLI::App *cmd) {
        cmd->add_option("--seed", seed, "Base seed");
        cmd->add_option("--out", out, "Output file or directory");
    };

    auto *graph = app.add_subcommand("graph", "Graph utilities");
    graph->require_subcommand(1);
    auto *gen = graph->add_subcommand("gen", "Write a benchmark or random graph");
    std::string gen_name = "random";
    int gen_n = 6;
    double gen_density = 0.5;
    gen->add_option("name", gen_name, "Benchmark name, cycleN, completeN or 'random'");
    gen->add_option("-n,--nodes", gen_n, "Node count for random graphs");
    gen->add_option("--density", gen_density, "Edge probability for random graphs");
    common(gen);
    auto *show = graph->add_subcommand("show", "Print a graph and its MaxCut");
    std::string show_path;
    show->add_option("file", show_path, "Graph file or benchmark name")->required();
    common(show);

    auto *run = app.add_subcommand("run", "Run an experiment spec");
    std::string config;
    run->add_option("config", config, "Experiment spec (JSON)")->required();
    common(run);

    auto *sweep = app.add_subcommand("sweep", "Run an experiment spec over its sweep list");
    sweep->add_option("config", config, "Experiment spec (JSON)")->required();
    common(sweep);

    auto *adv = app.add_subcommand("adversary", "Provider-side reconstruction");
    adv->require_subcommand(1);
    auto *extract = adv->add_subcommand("extract", "Recover the graph from one circuit");
    std::string circuit_path;
    extract->add_option("circuit", circuit_path, "Circuit text file")->required();
    common(extract);
    auto *eff = adv->add_subcommand("effort", "Brute-force completion cost");
    int eff_n = 0;
    std::int64_t eff_observed = 0;
    eff->add_option("-n,--nodes", eff_n, "Node count")->required();
    eff->add_option("--observed", eff_observed, "Observed edge count")->required();
    common(eff);
    auto *merge = adv->add_subcommand("merge", "Union of graphs recovered from several circuits");
    std::vector<std::string> merge_paths;
    merge->add_option("circuits", merge_paths, "Circuit text files")->required();
    common(merge);

    auto *ovh = app.add_subcommand("overhead", "Static and dynamic cost proxies for a spec");
    std::string traces_path;
    ovh->add_option("config", config, "Experiment spec (JSON)")->required();
    ovh->add_option("--traces", traces_path, "Traces JSONL from a previous run");
    common(ovh);

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            const Graph g = gen_name == "random" ? random_graph(gen_n, gen_density, seed.value_or(0))
                                                 : benchmark_graph(gen_name);
            emit(out, serialize_graph(g));
        } else if (show->parsed()) {
            Graph g;
            if (std::ifstream in(show_path); in) {
                g = read_graph(in);
            } else {
                g = benchmark_graph(show_path);
            }
            const auto mc = max_cut_bruteforce(g);
            std::string witness;
            for (auto b : mc.witness) witness += b ? '1' : '0';
            nlohmann::json edges = nlohmann::json::array();
            for (const auto &e : g.edges()) edges.push_back({e.u, e.v});
            nlohmann::json j{{"nodes", g.num_nodes()}, {"edges", edges}, {"cmax", mc.cmax}, {"witness", witness}};
            emit(out, j.dump(2) + "\n");
        } else if (run->parsed() || sweep->parsed()) {
            auto spec = load_spec(config);
            override_seeds(spec, seed);
            std::optional<std::vector<std::size_t>> ps;
            if (sweep->parsed()) {
                if (spec.sweep.empty()) throw InputError("spec has no 'sweep' list");
                ps = spec.sweep;
            }
            return report_experiment(spec, run_experiment(spec, ps), out);
        } else if (extract->parsed()) {
            const auto rep = extract_graph(std::string_view(slurp(circuit_path)));
            emit(out, report_to_json(rep).dump(2) + "\n");
            if (rep.unmatched_gates != 0) {
                std::cerr << "invariant failed: " << rep.unmatched_gates << " unmatched gate(s)\n";
                return kExitInvariant;
            }
        } else if (eff->parsed()) {
            emit(out, effort_to_json(effort(eff_n, eff_observed)).dump(2) + "\n");
        } else if (merge->parsed()) {
            std::vector<ExtractionReport> reps;
            for (const auto &p : merge_paths) reps.push_back(extract_graph(std::string_view(slurp(p))));
            const Graph merged = cross_provider_merge(reps);
            ExtractionReport combined{merged, 0, {}, 0};
            for (const auto &r : reps) {
                combined.swap_count += r.swap_count;
                combined.unmatched_gates += r.unmatched_gates;
            }
            auto j = report_to_json(combined);
            j.erase("final_mapping");
            j["sources"] = merge_paths;
            emit(out, j.dump(2) + "\n");
        } else if (ovh->parsed()) {
            auto spec = load_spec(config);
            override_seeds(spec, seed);
            std::vector<CellRun> runs;
            if (!traces_path.empty()) {
                std::ifstream in(traces_path);
                if (!in) throw InputError("cannot open '" + traces_path + "'");
                std::string line;
                // Traces carry their cell tags on the summary line.
                std::stringstream buf;
                while (std::getline(in, line)) {
                    buf << line << "\n";
                    const auto j = nlohmann::json::parse(line);
                    if (j.at("type") != "summary") continue;
                    auto traces = read_traces_jsonl(buf);
                    buf = std::stringstream();
                    CellRun r;
                    r.sim = j.at("sim").get<std::string>();
                    r.spec = j.at("spec").get<std::string>();
                    r.arm = parse_arm(j.at("arm").get<std::string>());
                    r.p = j.at("p").get<std::size_t>();
                    r.seed = j.at("seed").get<std::uint64_t>();
                    r.trace = std::move(traces.front());
                    if (j.contains("error")) r.error = j["error"].get<std::string>();
                    runs.push_back(std::move(r));
                }
            }
            emit(out, overhead_to_json(overhead(spec, runs)).dump(2) + "\n");
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvariant;
    }
    return 0;
}
