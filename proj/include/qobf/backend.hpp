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
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qobf/circuit.hpp"
#include "qobf/errors.hpp"
#include "qobf/graph.hpp"
#include "qobf/rng.hpp"
#include "qobf/statevector.hpp"
#include "qobf/transpile.hpp"

namespace qobf {

// Per-gate depolarizing probabilities and symmetric readout error.
struct NoiseModel {
    double p1 = 0.0;
    double p2 = 0.0;
    double readout_flip = 0.0;

    void validate() const {
        for (double p : {p1, p2, readout_flip}) {
            if (!(p >= 0.0 && p <= 0.5)) {
                throw InputError("noise probabilities must lie in [0, 0.5]");
            }
        }
    }

    friend bool operator==(const NoiseModel &, const NoiseModel &) = default;
};

// A simulated hardware endpoint. No noise means ideal; no coupling means all-to-all.
struct BackendProfile {
    std::string name;
    std::optional<NoiseModel> noise;
    std::optional<CouplingMap> coupling;
    std::uint64_t seed = 0;

    bool ideal() const noexcept { return !noise.has_value(); }
};

// counts keys are n-character strings; character q is qubit q's measured bit.
struct ShotResult {
    std::map<std::string, std::uint64_t> counts;
    std::uint64_t shots = 0;
    int num_qubits = 0;
};

inline constexpr std::uint64_t kDefaultShots = 4096;

namespace detail {

inline std::string bits_to_string(std::uint64_t bits, int n) {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int q = 0; q < n; ++q) {
        if ((bits >> q) & 1U) s[q] = '1';
    }
    return s;
}

inline ShotResult histogram_to_result(const std::vector<std::uint64_t> &hist, int n, std::uint64_t shots) {
    ShotResult r;
    r.shots = shots;
    r.num_qubits = n;
    for (std::size_t i = 0; i < hist.size(); ++i) {
        if (hist[i] != 0) r.counts.emplace(bits_to_string(i, n), hist[i]);
    }
    return r;
}

inline std::vector<double> cumulative(const std::vector<double> &p) {
    std::vector<double> cdf(p.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        acc += p[i];
        cdf[i] = acc;
    }
    return cdf;
}

inline std::uint64_t sample_cdf(const std::vector<double> &cdf, double u) {
    const double target = u * cdf.back();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), target);
    return static_cast<std::uint64_t>(std::min<std::ptrdiff_t>(it - cdf.begin(), std::ssize(cdf) - 1));
}

inline std::uint64_t sample_state(const StateVector &sv, double u) {
    double acc = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < sv.dim(); ++i) total += std::norm(sv[i]);
    const double target = u * total;
    for (std::size_t i = 0; i < sv.dim(); ++i) {
        acc += std::norm(sv[i]);
        if (target < acc) return i;
    }
    return sv.dim() - 1;
}

struct ErrorEvent {
    std::size_t gate;
    int qubit;
    Pauli pauli;
};

// Snapshots of the noiseless state after every gate let a faulty trajectory resume at
// its first error instead of replaying the prefix. Skipped when it would not fit.
inline constexpr std::size_t kSnapshotBudgetAmplitudes = std::size_t{1} << 24;

}  // namespace detail

// Samples `shots` measurements of all qubits. With noise, each shot is one Pauli
// trajectory: after every gate each touched qubit independently suffers a uniformly
// random X/Y/Z with probability p1 (one-qubit gate) or p2 (CX); each measured bit then
// flips with probability readout_flip. Draws come only from `rng`, in shot order.
inline ShotResult run_shots(const Circuit &c, const BackendProfile &backend, std::uint64_t shots, Rng &rng) {
    if (shots < 1) {
        throw InputError("shots must be >= 1");
    }
    if (backend.coupling && !is_conformant(c, *backend.coupling)) {
        throw RoutingError("circuit does not conform to the coupling map of backend '" + backend.name +
                           "'; transpile it first");
    }
    const int n = c.num_qubits();
    if (n > kMaxSimulatedQubits) {
        throw CapacityError("run_shots supports up to " + std::to_string(kMaxSimulatedQubits) + " qubits");
    }
    const NoiseModel noise = backend.noise.value_or(NoiseModel{});
    noise.validate();

    const auto &gates = c.gates();
    const bool gate_noise = noise.p1 > 0.0 || noise.p2 > 0.0;

    std::vector<StateVector> snapshots;
    StateVector ideal(n);
    const bool keep_snapshots =
        gate_noise && gates.size() * (std::size_t{1} << n) <= detail::kSnapshotBudgetAmplitudes;
    if (keep_snapshots) snapshots.reserve(gates.size());
    for (const auto &g : gates) {
        ideal.apply(g);
        if (keep_snapshots) snapshots.push_back(ideal);
    }
    const auto cdf = detail::cumulative(ideal.probabilities());

    std::vector<std::uint64_t> hist(std::size_t{1} << n, 0);
    std::vector<detail::ErrorEvent> events;
    for (std::uint64_t shot = 0; shot < shots; ++shot) {
        std::uint64_t outcome = 0;
        events.clear();
        if (gate_noise) {
            for (std::size_t gi = 0; gi < gates.size(); ++gi) {
                const Gate &g = gates[gi];
                if (g.kind == GateKind::MEASURE_ALL) continue;
                const double p = is_two_qubit(g.kind) ? noise.p2 : noise.p1;
                if (p <= 0.0) continue;
                for (int q : {g.q0, g.q1}) {
                    if (q < 0) continue;
                    if (rng.uniform() < p) {
                        events.push_back({gi, q, static_cast<Pauli>(1 + rng.below(3))});
                    }
                }
            }
        }
        if (events.empty()) {
            outcome = detail::sample_cdf(cdf, rng.uniform());
        } else {
            const std::size_t first = events.front().gate;
            StateVector sv = keep_snapshots ? snapshots[first] : StateVector(n);
            std::size_t gi = first;
            if (!keep_snapshots) {
                for (std::size_t k = 0; k <= first; ++k) sv.apply(gates[k]);
            }
            auto ev = events.begin();
            for (;;) {
                for (; ev != events.end() && ev->gate == gi; ++ev) sv.apply(ev->pauli, ev->qubit);
                if (++gi >= gates.size()) break;
                sv.apply(gates[gi]);
            }
            outcome = detail::sample_state(sv, rng.uniform());
        }
        if (noise.readout_flip > 0.0) {
            for (int q = 0; q < n; ++q) {
                if (rng.uniform() < noise.readout_flip) outcome ^= std::uint64_t{1} << q;
            }
        }
        ++hist[outcome];
    }
    return detail::histogram_to_result(hist, n, shots);
}

// Reproducible from (backend.seed, circuit, shots) alone.
inline ShotResult run_shots(const Circuit &c, const BackendProfile &backend, std::uint64_t shots) {
    Rng rng(backend.seed);
    return run_shots(c, backend, shots, rng);
}

// Rewrites physical-qubit bitstrings into logical order; final_layout[l] is l's physical qubit.
inline ShotResult to_logical(const ShotResult &physical, const std::vector<int> &final_layout) {
    ShotResult out;
    out.shots = physical.shots;
    out.num_qubits = static_cast<int>(final_layout.size());
    for (const auto &[key, count] : physical.counts) {
        std::string logical(final_layout.size(), '0');
        for (std::size_t l = 0; l < final_layout.size(); ++l) logical[l] = key.at(final_layout[l]);
        out.counts[logical] += count;
    }
    return out;
}

// Mean cut value of the sampled bitstrings, always scored on the caller's full graph.
inline double expectation_full_cost(const Graph &g_full, const ShotResult &result) {
    if (result.shots == 0) {
        throw InputError("empty shot result");
    }
    const auto n = static_cast<std::size_t>(g_full.num_nodes());
    double total = 0.0;
    for (const auto &[key, count] : result.counts) {
        if (key.size() != n) {
            throw InputError("bitstring length " + std::to_string(key.size()) + " != node count " +
                             std::to_string(n));
        }
        std::size_t cut = 0;
        for (const auto &e : g_full.edges()) cut += key[e.u] != key[e.v];
        total += static_cast<double>(count) * static_cast<double>(cut);
    }
    return total / static_cast<double>(result.shots);
}

}  // namespace qobf
