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
#include <bit>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qobf/errors.hpp"

namespace qobf {

// Unordered node pair stored with u < v.
struct Edge {
    int u = 0;
    int v = 0;

    Edge() = default;
    Edge(int a, int b) : u(std::min(a, b)), v(std::max(a, b)) {}

    friend auto operator<=>(const Edge &, const Edge &) = default;
};

// Undirected simple graph. Edges are kept sorted so equality is structural.
class Graph {
  public:
    Graph() = default;

    Graph(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
        if (n_ < 1) {
            throw InputError("graph needs at least one node, got " + std::to_string(n_));
        }
        for (auto &e : edges_) {
            e = Edge(e.u, e.v);
            if (e.u < 0 || e.v >= n_) {
                throw InputError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                 ") out of range for n=" + std::to_string(n_));
            }
            if (e.u == e.v) {
                throw InputError("self-loop on node " + std::to_string(e.u));
            }
        }
        std::sort(edges_.begin(), edges_.end());
        auto dup = std::adjacent_find(edges_.begin(), edges_.end());
        if (dup != edges_.end()) {
            throw InputError("duplicate edge (" + std::to_string(dup->u) + "," +
                             std::to_string(dup->v) + ")");
        }
    }

    int num_nodes() const noexcept { return n_; }
    std::size_t num_edges() const noexcept { return edges_.size(); }
    const std::vector<Edge> &edges() const noexcept { return edges_; }

    bool has_edge(Edge e) const { return std::binary_search(edges_.begin(), edges_.end(), e); }

    std::size_t degree(int node) const {
        return static_cast<std::size_t>(std::count_if(
            edges_.begin(), edges_.end(), [&](const Edge &e) { return e.u == node || e.v == node; }));
    }

    friend bool operator==(const Graph &, const Graph &) = default;

  private:
    int n_ = 1;
    std::vector<Edge> edges_;
};

// bits[i] is the side of the cut node i lands on.
using CutAssignment = std::vector<std::uint8_t>;

inline CutAssignment complement(const CutAssignment &a) {
    CutAssignment out(a.size());
    std::transform(a.begin(), a.end(), out.begin(), [](std::uint8_t b) -> std::uint8_t { return b ? 0 : 1; });
    return out;
}

inline std::size_t cut_value(const Graph &g, const CutAssignment &a) {
    if (a.size() != static_cast<std::size_t>(g.num_nodes())) {
        throw InputError("assignment length " + std::to_string(a.size()) + " != node count " +
                         std::to_string(g.num_nodes()));
    }
    std::size_t cut = 0;
    for (const auto &e : g.edges()) {
        cut += (a[e.u] != 0) != (a[e.v] != 0);
    }
    return cut;
}

// Cut value of a basis index whose bit i is node i's side.
inline std::size_t cut_value_bits(const Graph &g, std::uint64_t bits) {
    std::size_t cut = 0;
    for (const auto &e : g.edges()) {
        cut += ((bits >> e.u) ^ (bits >> e.v)) & 1U;
    }
    return cut;
}

struct MaxCut {
    std::size_t cmax = 0;
    CutAssignment witness;
};

inline constexpr int kMaxEnumerationNodes = 24;

// Exact MaxCut by Gray-code enumeration: each step flips one node and updates the
// cut by that node's incident edges only.
inline MaxCut max_cut_bruteforce(const Graph &g) {
    const int n = g.num_nodes();
    if (n > kMaxEnumerationNodes) {
        throw CapacityError("max_cut_bruteforce supports n <= " + std::to_string(kMaxEnumerationNodes) +
                            ", got " + std::to_string(n));
    }
    std::vector<std::vector<int>> adj(n);
    for (const auto &e : g.edges()) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    // Node n-1 stays on side 0; the complement of every assignment has the same cut.
    const std::uint64_t steps = std::uint64_t{1} << (n - 1);
    std::uint64_t bits = 0;
    std::int64_t cut = 0;
    std::int64_t best = 0;
    std::uint64_t best_bits = 0;
    for (std::uint64_t i = 1; i < steps; ++i) {
        const int flip = std::countr_zero(i);
        const bool side = ((bits >> flip) & 1U) != 0;
        std::int64_t delta = 0;
        for (int w : adj[flip]) {
            const bool same = (((bits >> w) & 1U) != 0) == side;
            delta += same ? 1 : -1;
        }
        bits ^= std::uint64_t{1} << flip;
        cut += delta;
        if (cut > best) {
            best = cut;
            best_bits = bits;
        }
    }
    MaxCut out;
    out.cmax = static_cast<std::size_t>(best);
    out.witness.resize(n);
    for (int q = 0; q < n; ++q) {
        out.witness[q] = static_cast<std::uint8_t>((best_bits >> q) & 1U);
    }
    return out;
}

// Line-oriented text: `n <count>` then `e <u> <v>` per edge; `#` starts a comment.
inline Graph read_graph(std::istream &in) {
    std::string line;
    std::size_t lineno = 0;
    int n = -1;
    std::vector<Edge> edges;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream ss(line);
        std::string tag;
        if (!(ss >> tag)) {
            continue;
        }
        if (tag == "n") {
            if (n >= 0) {
                throw ParseError(lineno, "duplicate node-count line");
            }
            if (!(ss >> n) || n < 1) {
                throw ParseError(lineno, "expected positive node count");
            }
        } else if (tag == "e") {
            if (n < 0) {
                throw ParseError(lineno, "edge before node-count line");
            }
            int u = 0;
            int v = 0;
            if (!(ss >> u >> v)) {
                throw ParseError(lineno, "expected two node indices");
            }
            if (u < 0 || v < 0 || u >= n || v >= n || u == v) {
                throw ParseError(lineno, "bad edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
            }
            edges.emplace_back(u, v);
        } else {
            throw ParseError(lineno, "unknown record '" + tag + "'");
        }
        std::string extra;
        if (ss >> extra) {
            throw ParseError(lineno, "trailing token '" + extra + "'");
        }
    }
    if (n < 0) {
        throw ParseError(lineno, "missing node-count line");
    }
    try {
        return Graph(n, std::move(edges));
    } catch (const InputError &e) {
        throw ParseError(lineno, e.what());
    }
}

inline Graph parse_graph(const std::string &text) {
    std::istringstream in(text);
    return read_graph(in);
}

inline void write_graph(std::ostream &out, const Graph &g) {
    out << "n " << g.num_nodes() << "\n";
    for (const auto &e : g.edges()) {
        out << "e " << e.u << " " << e.v << "\n";
    }
}

inline std::string serialize_graph(const Graph &g) {
    std::ostringstream out;
    write_graph(out, g);
    return out.str();
}

}  // namespace qobf
