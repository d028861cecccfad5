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

#include <fstream>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "qobf/backend.hpp"
#include "qobf/errors.hpp"

namespace qobf {

// {"name", "p1", "p2", "readout_flip", "coupling": [[a,b],...], "num_physical", "seed"}.
// A profile with none of p1/p2/readout_flip is ideal; one without coupling is all-to-all.
inline BackendProfile backend_from_json(const nlohmann::json &j) {
    BackendProfile b;
    if (!j.is_object() || !j.contains("name") || !j["name"].is_string()) {
        throw InputError("backend profile needs a string 'name'");
    }
    b.name = j["name"].get<std::string>();
    if (j.contains("p1") || j.contains("p2") || j.contains("readout_flip")) {
        NoiseModel nm;
        nm.p1 = j.value("p1", 0.0);
        nm.p2 = j.value("p2", 0.0);
        nm.readout_flip = j.value("readout_flip", 0.0);
        nm.validate();
        b.noise = nm;
    }
    if (j.contains("coupling") && !j["coupling"].is_null()) {
        std::vector<Edge> edges;
        int max_q = -1;
        for (const auto &pair : j["coupling"]) {
            const int a = pair.at(0).get<int>();
            const int c = pair.at(1).get<int>();
            edges.emplace_back(a, c);
            max_q = std::max({max_q, a, c});
        }
        const int n = j.value("num_physical", max_q + 1);
        b.coupling = CouplingMap(n, std::move(edges));
    }
    b.seed = j.value("seed", std::uint64_t{0});
    return b;
}

inline nlohmann::json backend_to_json(const BackendProfile &b) {
    nlohmann::json j{{"name", b.name}, {"seed", b.seed}};
    if (b.noise) {
        j["p1"] = b.noise->p1;
        j["p2"] = b.noise->p2;
        j["readout_flip"] = b.noise->readout_flip;
    }
    if (b.coupling) {
        j["num_physical"] = b.coupling->num_physical();
        auto edges = nlohmann::json::array();
        for (const auto &e : b.coupling->edges()) edges.push_back({e.u, e.v});
        j["coupling"] = edges;
    }
    return j;
}

// Accepts {"backends": [...]} or a bare array. Names must be unique.
inline std::vector<BackendProfile> backends_from_json(const nlohmann::json &j) {
    const nlohmann::json &arr = j.is_object() ? j.at("backends") : j;
    if (!arr.is_array()) {
        throw InputError("backend config must be an array of profiles");
    }
    std::vector<BackendProfile> out;
    std::set<std::string> seen;
    for (const auto &item : arr) {
        auto b = backend_from_json(item);
        if (!seen.insert(b.name).second) {
            throw InputError("duplicate backend name '" + b.name + "'");
        }
        out.push_back(std::move(b));
    }
    return out;
}

inline std::vector<BackendProfile> load_backends(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open backend config '" + path + "'");
    }
    return backends_from_json(nlohmann::json::parse(in));
}

inline const BackendProfile &find_backend(const std::vector<BackendProfile> &all, const std::string &name) {
    for (const auto &b : all) {
        if (b.name == name) return b;
    }
    throw InputError("unknown backend '" + name + "'");
}

}  // namespace qobf
