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
#include <istream>
#include <ostream>
#include <string>

#include <json.hpp>

#include "qobf/obfuscation.hpp"

namespace qobf {

// Run traces as JSON lines: one {"type":"iteration"} record per entry, then one
// {"type":"summary"} record. `tags` (graph, sim, spec, ...) is merged into every line.

inline nlohmann::json entry_to_json(const TraceEntry &e) {
    return {{"type", "iteration"},
            {"iteration", e.iteration},
            {"backend", e.backend},
            {"flavor", e.flavor},
            {"gammas", e.params.gammas},
            {"betas", e.params.betas},
            {"expectation", e.expectation},
            {"ar", e.ar},
            {"evaluations", e.evaluations}};
}

inline nlohmann::json summary_to_json(const RunTrace &t) {
    return {{"type", "summary"},
            {"arm", t.arm},
            {"p", t.p_layers},
            {"seed", t.seed},
            {"rng", t.rng},
            {"cmax", t.cmax},
            {"best_gammas", t.best_params.gammas},
            {"best_betas", t.best_params.betas},
            {"best_observed_expectation", t.best_observed_expectation},
            {"best_observed_ar", t.best_observed_ar},
            {"final_expectation", t.final_expectation},
            {"final_ar", t.final_ar},
            {"evaluations", t.evaluations},
            {"final_executions", t.final_executions},
            {"shots", t.shots},
            {"final_shots", t.final_shots},
            {"status", t.ok ? "ok" : "aborted"},
            {"message", t.message}};
}

inline void write_trace_jsonl(std::ostream &out, const RunTrace &t, const nlohmann::json &tags = nlohmann::json::object()) {
    for (const auto &e : t.entries) {
        auto j = entry_to_json(e);
        j.update(tags);
        out << j.dump() << "\n";
    }
    auto s = summary_to_json(t);
    s.update(tags);
    out << s.dump() << "\n";
}

namespace detail {
inline double json_double(const nlohmann::json &j, const char *key) {
    const auto &v = j.at(key);
    return v.is_null() ? std::nan("") : v.get<double>();
}
}  // namespace detail

// Reads back every trace in a JSON-lines stream (entries accumulate until their summary).
inline std::vector<RunTrace> read_traces_jsonl(std::istream &in) {
    std::vector<RunTrace> out;
    RunTrace cur;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto j = nlohmann::json::parse(line);
        if (j.at("type") == "iteration") {
            TraceEntry e;
            e.iteration = j.at("iteration").get<std::size_t>();
            e.backend = j.at("backend").get<std::string>();
            e.flavor = j.at("flavor").get<int>();
            e.params.gammas = j.at("gammas").get<std::vector<double>>();
            e.params.betas = j.at("betas").get<std::vector<double>>();
            e.expectation = detail::json_double(j, "expectation");
            e.ar = detail::json_double(j, "ar");
            e.evaluations = j.at("evaluations").get<std::size_t>();
            cur.entries.push_back(std::move(e));
        } else {
            cur.arm = j.at("arm").get<std::string>();
            cur.p_layers = j.at("p").get<std::size_t>();
            cur.seed = j.at("seed").get<std::uint64_t>();
            cur.rng = j.at("rng").get<std::string>();
            cur.cmax = j.at("cmax").get<std::size_t>();
            cur.best_params.gammas = j.at("best_gammas").get<std::vector<double>>();
            cur.best_params.betas = j.at("best_betas").get<std::vector<double>>();
            cur.best_observed_expectation = detail::json_double(j, "best_observed_expectation");
            cur.best_observed_ar = detail::json_double(j, "best_observed_ar");
            cur.final_expectation = detail::json_double(j, "final_expectation");
            cur.final_ar = detail::json_double(j, "final_ar");
            cur.evaluations = j.at("evaluations").get<std::size_t>();
            cur.final_executions = j.at("final_executions").get<std::size_t>();
            cur.shots = j.at("shots").get<std::uint64_t>();
            cur.final_shots = j.at("final_shots").get<std::uint64_t>();
            cur.ok = j.at("status") == "ok";
            cur.message = j.at("message").get<std::string>();
            out.push_back(std::move(cur));
            cur = RunTrace{};
        }
    }
    return out;
}

}  // namespace qobf
