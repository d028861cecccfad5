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
#include <deque>
#include <numeric>
#include <string>
#include <vector>

#include "qobf/circuit.hpp"
#include "qobf/errors.hpp"
#include "qobf/graph.hpp"

namespace qobf {

// Physical qubit pairs on which CX may act, in either direction.
class CouplingMap {
  public:
    CouplingMap() = default;
    CouplingMap(int num_physical, std::vector<Edge> allowed) : n_(num_physical) {
        if (n_ < 1) {
            throw InputError("coupling map needs at least one physical qubit");
        }
        adj_.assign(static_cast<std::size_t>(n_), {});
        for (auto e : allowed) {
            e = Edge(e.u, e.v);
            if (e.u < 0 || e.v >= n_ || e.u == e.v) {
                throw InputError("bad coupling edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ")");
            }
            if (std::find(edges_.begin(), edges_.end(), e) == edges_.end()) {
                edges_.push_back(e);
                adj_[e.u].push_back(e.v);
                adj_[e.v].push_back(e.u);
            }
        }
        std::sort(edges_.begin(), edges_.end());
        for (auto &a : adj_) std::sort(a.begin(), a.end());
    }

    static CouplingMap line(int n) {
        std::vector<Edge> e;
        for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
        return CouplingMap(n, std::move(e));
    }

    int num_physical() const noexcept { return n_; }
    const std::vector<Edge> &edges() const noexcept { return edges_; }

    bool allowed(int a, int b) const {
        if (a < 0 || b < 0 || a >= n_ || b >= n_) return false;
        const auto &nb = adj_[a];
        return std::binary_search(nb.begin(), nb.end(), b);
    }

    // BFS path from `from` to `to` inclusive, lowest-index neighbours first. Empty if unreachable.
    std::vector<int> shortest_path(int from, int to) const {
        std::vector<int> prev(static_cast<std::size_t>(n_), -1);
        std::deque<int> queue{from};
        prev[from] = from;
        while (!queue.empty()) {
            const int cur = queue.front();
            queue.pop_front();
            if (cur == to) break;
            for (int nb : adj_[cur]) {
                if (prev[nb] == -1) {
                    prev[nb] = cur;
                    queue.push_back(nb);
                }
            }
        }
        if (prev[to] == -1) return {};
        std::vector<int> path{to};
        while (path.back() != from) path.push_back(prev[path.back()]);
        std::reverse(path.begin(), path.end());
        return path;
    }

  private:
    int n_ = 1;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_{1};
};

struct TranspileResult {
    Circuit circuit;
    // final_layout[logical] = physical qubit holding that logical state at the end.
    std::vector<int> final_layout;
    std::size_t swaps = 0;
};

inline bool is_conformant(const Circuit &c, const CouplingMap &map) {
    if (c.num_qubits() > map.num_physical()) return false;
    return std::all_of(c.gates().begin(), c.gates().end(), [&](const Gate &g) {
        return g.kind != GateKind::CX || map.allowed(g.q0, g.q1);
    });
}

// Greedy router: before each non-adjacent CX, walk the control's physical qubit along a
// shortest path toward the target until they touch. SWAPs are written as three CX.
inline TranspileResult transpile(const Circuit &c, const CouplingMap &map, std::vector<int> placement = {}) {
    const int n_log = c.num_qubits();
    const int n_phys = map.num_physical();
    if (n_phys < n_log) {
        throw RoutingError("coupling map has " + std::to_string(n_phys) + " physical qubits, circuit needs " +
                           std::to_string(n_log));
    }
    if (placement.empty()) {
        placement.resize(static_cast<std::size_t>(n_log));
        std::iota(placement.begin(), placement.end(), 0);
    }
    if (placement.size() != static_cast<std::size_t>(n_log)) {
        throw InputError("placement must map every logical qubit");
    }
    std::vector<int> p2l(static_cast<std::size_t>(n_phys), -1);
    for (int l = 0; l < n_log; ++l) {
        const int p = placement[l];
        if (p < 0 || p >= n_phys || p2l[p] != -1) {
            throw InputError("placement is not an injective map into the physical qubits");
        }
        p2l[p] = l;
    }
    std::vector<int> l2p = std::move(placement);

    TranspileResult out{Circuit(n_phys), {}, 0};
    auto swap_phys = [&](int a, int b) {
        out.circuit.add(Gate::cx(a, b));
        out.circuit.add(Gate::cx(b, a));
        out.circuit.add(Gate::cx(a, b));
        std::swap(p2l[a], p2l[b]);
        if (p2l[a] >= 0) l2p[p2l[a]] = a;
        if (p2l[b] >= 0) l2p[p2l[b]] = b;
        ++out.swaps;
    };

    for (const auto &g : c.gates()) {
        switch (g.kind) {
        case GateKind::H:
            out.circuit.add(Gate::h(l2p[g.q0]));
            break;
        case GateKind::RX:
            out.circuit.add(Gate::rx(l2p[g.q0], g.angle));
            break;
        case GateKind::RZ:
            out.circuit.add(Gate::rz(l2p[g.q0], g.angle));
            break;
        case GateKind::MEASURE_ALL:
            out.circuit.add(Gate::measure_all());
            break;
        case GateKind::CX: {
            if (!map.allowed(l2p[g.q0], l2p[g.q1])) {
                const auto path = map.shortest_path(l2p[g.q0], l2p[g.q1]);
                if (path.empty()) {
                    throw RoutingError("coupling map is disconnected between physical qubits " +
                                       std::to_string(l2p[g.q0]) + " and " + std::to_string(l2p[g.q1]));
                }
                // path[0] holds the control; stop once it sits next to the target.
                for (std::size_t i = 0; i + 2 < path.size(); ++i) {
                    swap_phys(path[i], path[i + 1]);
                }
            }
            out.circuit.add(Gate::cx(l2p[g.q0], l2p[g.q1]));
            break;
        }
        }
    }
    out.final_layout = std::move(l2p);
    return out;
}

}  // namespace qobf
