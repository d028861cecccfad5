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
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "qobf/errors.hpp"
#include "qobf/graph.hpp"

namespace qobf {

enum class GateKind { H, RX, RZ, CX, MEASURE_ALL };

inline constexpr bool is_two_qubit(GateKind k) noexcept { return k == GateKind::CX; }
inline constexpr bool has_angle(GateKind k) noexcept { return k == GateKind::RX || k == GateKind::RZ; }

struct Gate {
    GateKind kind = GateKind::H;
    // For CX, q0 is the control and q1 the target. Unused slots are -1.
    int q0 = -1;
    int q1 = -1;
    double angle = 0.0;

    static Gate h(int q) { return {GateKind::H, q, -1, 0.0}; }
    static Gate rx(int q, double theta) { return {GateKind::RX, q, -1, theta}; }
    static Gate rz(int q, double theta) { return {GateKind::RZ, q, -1, theta}; }
    static Gate cx(int control, int target) { return {GateKind::CX, control, target, 0.0}; }
    static Gate measure_all() { return {GateKind::MEASURE_ALL, -1, -1, 0.0}; }

    friend bool operator==(const Gate &, const Gate &) = default;
};

// Ordered gate stream over a fixed qubit register. Every mutation validates, so a
// Circuit value always satisfies its invariants.
class Circuit {
  public:
    Circuit() = default;
    explicit Circuit(int num_qubits) : num_qubits_(num_qubits) {
        if (num_qubits < 1) {
            throw InputError("circuit needs at least one qubit");
        }
    }

    int num_qubits() const noexcept { return num_qubits_; }
    const std::vector<Gate> &gates() const noexcept { return gates_; }
    std::size_t size() const noexcept { return gates_.size(); }
    bool measured() const noexcept { return !gates_.empty() && gates_.back().kind == GateKind::MEASURE_ALL; }

    Circuit &add(const Gate &g) {
        if (measured()) {
            throw InputError("no gates may follow measure");
        }
        auto check_qubit = [&](int q) {
            if (q < 0 || q >= num_qubits_) {
                throw InputError("qubit " + std::to_string(q) + " out of range for " +
                                 std::to_string(num_qubits_) + "-qubit circuit");
            }
        };
        switch (g.kind) {
        case GateKind::H:
        case GateKind::RX:
        case GateKind::RZ:
            check_qubit(g.q0);
            if (g.q1 != -1) {
                throw InputError("single-qubit gate with a second operand");
            }
            if (!std::isfinite(g.angle)) {
                throw InputError("non-finite rotation angle");
            }
            break;
        case GateKind::CX:
            check_qubit(g.q0);
            check_qubit(g.q1);
            if (g.q0 == g.q1) {
                throw InputError("cx control and target must differ");
            }
            break;
        case GateKind::MEASURE_ALL:
            break;
        }
        Gate stored = g;
        if (!has_angle(g.kind)) {
            stored.angle = 0.0;
        }
        gates_.push_back(stored);
        return *this;
    }

    friend bool operator==(const Circuit &, const Circuit &) = default;

  private:
    int num_qubits_ = 1;
    std::vector<Gate> gates_;
};

// Shared QAOA angles: gammas drive the cost layers, betas the mixers.
struct ParamVector {
    std::vector<double> gammas;
    std::vector<double> betas;

    std::size_t layers() const noexcept { return gammas.size(); }

    void validate() const {
        if (gammas.empty() || gammas.size() != betas.size()) {
            throw InputError("parameter vector needs p >= 1 gammas and as many betas");
        }
    }

    // Flattened as [gammas..., betas...].
    std::vector<double> flatten() const {
        std::vector<double> out(gammas);
        out.insert(out.end(), betas.begin(), betas.end());
        return out;
    }

    static ParamVector unflatten(const std::vector<double> &x) {
        if (x.empty() || x.size() % 2 != 0) {
            throw InputError("flattened parameter vector must have even, non-zero length");
        }
        const auto p = static_cast<std::ptrdiff_t>(x.size() / 2);
        return {std::vector<double>(x.begin(), x.begin() + p), std::vector<double>(x.begin() + p, x.end())};
    }

    friend bool operator==(const ParamVector &, const ParamVector &) = default;
};

// H on all qubits, then per layer a CX-RZ(2γ)-CX block for every edge in canonical
// order followed by RX(2β) on every qubit, then one measure.
inline Circuit build_qaoa(const Graph &g, const ParamVector &params) {
    params.validate();
    const int n = g.num_nodes();
    if (n < 2) {
        throw InputError("QAOA circuit needs at least two nodes");
    }
    Circuit c(n);
    for (int q = 0; q < n; ++q) {
        c.add(Gate::h(q));
    }
    for (std::size_t k = 0; k < params.layers(); ++k) {
        for (const auto &e : g.edges()) {
            c.add(Gate::cx(e.u, e.v));
            c.add(Gate::rz(e.v, 2.0 * params.gammas[k]));
            c.add(Gate::cx(e.u, e.v));
        }
        for (int q = 0; q < n; ++q) {
            c.add(Gate::rx(q, 2.0 * params.betas[k]));
        }
    }
    c.add(Gate::measure_all());
    return c;
}

struct GateCounts {
    std::size_t one_qubit = 0;
    std::size_t two_qubit = 0;
    std::size_t measure = 0;
    std::size_t depth = 0;

    std::size_t total() const noexcept { return one_qubit + two_qubit + measure; }
};

// Depth ignores the terminal measure.
inline GateCounts count_gates(const Circuit &c) {
    GateCounts out;
    std::vector<std::size_t> level(static_cast<std::size_t>(c.num_qubits()), 0);
    for (const auto &g : c.gates()) {
        switch (g.kind) {
        case GateKind::MEASURE_ALL:
            ++out.measure;
            break;
        case GateKind::CX: {
            ++out.two_qubit;
            const auto l = std::max(level[g.q0], level[g.q1]) + 1;
            level[g.q0] = level[g.q1] = l;
            break;
        }
        default:
            ++out.one_qubit;
            ++level[g.q0];
            break;
        }
    }
    out.depth = level.empty() ? 0 : *std::max_element(level.begin(), level.end());
    return out;
}

}  // namespace qobf
