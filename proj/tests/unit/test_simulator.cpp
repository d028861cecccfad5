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


#include <cmath>
#include <complex>
#include <map>
#include <numbers>

#include <gtest/gtest.h>

#include "qobf/backend.hpp"
#include "qobf/benchmarks.hpp"
#include "qobf/circuit.hpp"
#include "qobf/statevector.hpp"
#include "qobf/transpile.hpp"

namespace qobf {
namespace {

using cd = std::complex<double>;
using Matrix = std::vector<std::vector<cd>>;

// Dense-matrix oracle: full 2^n x 2^n operator for one gate, qubit q is bit q of the index.
Matrix dense(const Gate &g, int n) {
    const std::size_t d = std::size_t{1} << n;
    Matrix m(d, std::vector<cd>(d, 0.0));
    if (g.kind == GateKind::CX) {
        for (std::size_t j = 0; j < d; ++j) {
            const std::size_t i = ((j >> g.q0) & 1U) ? j ^ (std::size_t{1} << g.q1) : j;
            m[i][j] = 1.0;
        }
        return m;
    }
    cd u[2][2];
    const double c = std::cos(g.angle / 2), s = std::sin(g.angle / 2);
    const double r = 1 / std::sqrt(2.0);
    switch (g.kind) {
    case GateKind::H:
        u[0][0] = r, u[0][1] = r, u[1][0] = r, u[1][1] = -r;
        break;
    case GateKind::RX:
        u[0][0] = c, u[0][1] = cd(0, -s), u[1][0] = cd(0, -s), u[1][1] = c;
        break;
    case GateKind::RZ:
        u[0][0] = std::polar(1.0, -g.angle / 2), u[0][1] = 0, u[1][0] = 0, u[1][1] = std::polar(1.0, g.angle / 2);
        break;
    default:
        for (std::size_t i = 0; i < d; ++i) m[i][i] = 1.0;
        return m;
    }
    const std::size_t mask = std::size_t{1} << g.q0;
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            if ((i & ~mask) == (j & ~mask)) m[i][j] = u[(i >> g.q0) & 1U][(j >> g.q0) & 1U];
        }
    }
    return m;
}

std::vector<cd> mul(const Matrix &m, const std::vector<cd> &v) {
    std::vector<cd> out(v.size(), 0.0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
    }
    return out;
}

Matrix pauli_dense(int which, int q, int n) {
    // which: 1 = X, 2 = Y, 3 = Z, built from RX/RZ/H-free definitions.
    const std::size_t d = std::size_t{1} << n;
    Matrix m(d, std::vector<cd>(d, 0.0));
    for (std::size_t j = 0; j < d; ++j) {
        const bool bit = (j >> q) & 1U;
        const std::size_t flipped = j ^ (std::size_t{1} << q);
        if (which == 1) m[flipped][j] = 1.0;
        if (which == 2) m[flipped][j] = bit ? cd(0, -1) : cd(0, 1);
        if (which == 3) m[j][j] = bit ? -1.0 : 1.0;
    }
    return m;
}

// Exact output distribution of the Pauli-trajectory model by enumerating every error pattern.
std::vector<double> exact_noisy_distribution(const Circuit &c, const NoiseModel &nm) {
    const int n = c.num_qubits();
    const std::size_t d = std::size_t{1} << n;
    struct Site {
        std::size_t gate;
        int qubit;
        double p;
    };
    std::vector<Site> sites;
    for (std::size_t gi = 0; gi < c.size(); ++gi) {
        const Gate &g = c.gates()[gi];
        if (g.kind == GateKind::MEASURE_ALL) continue;
        const double p = g.kind == GateKind::CX ? nm.p2 : nm.p1;
        if (p <= 0) continue;
        sites.push_back({gi, g.q0, p});
        if (g.q1 >= 0) sites.push_back({gi, g.q1, p});
    }
    std::vector<double> dist(d, 0.0);
    std::vector<int> choice(sites.size(), 0);
    for (;;) {
        double w = 1.0;
        for (std::size_t s = 0; s < sites.size(); ++s) w *= choice[s] == 0 ? 1 - sites[s].p : sites[s].p / 3;
        std::vector<cd> v(d, 0.0);
        v[0] = 1.0;
        for (std::size_t gi = 0; gi < c.size(); ++gi) {
            v = mul(dense(c.gates()[gi], n), v);
            for (std::size_t s = 0; s < sites.size(); ++s) {
                if (sites[s].gate == gi && choice[s]) v = mul(pauli_dense(choice[s], sites[s].qubit, n), v);
            }
        }
        for (std::size_t i = 0; i < d; ++i) dist[i] += w * std::norm(v[i]);
        std::size_t s = 0;
        while (s < choice.size() && ++choice[s] == 4) choice[s++] = 0;
        if (s == choice.size()) break;
    }
    // Independent readout flips.
    std::vector<double> out(d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            double w = 1.0;
            for (int q = 0; q < n; ++q) {
                w *= (((i ^ j) >> q) & 1U) ? nm.readout_flip : 1 - nm.readout_flip;
            }
            out[j] += dist[i] * w;
        }
    }
    return out;
}

std::vector<double> empirical(const ShotResult &r) {
    std::vector<double> out(std::size_t{1} << r.num_qubits, 0.0);
    for (const auto &[key, count] : r.counts) {
        std::size_t idx = 0;
        for (std::size_t q = 0; q < key.size(); ++q) {
            if (key[q] == '1') idx |= std::size_t{1} << q;
        }
        out[idx] = static_cast<double>(count) / static_cast<double>(r.shots);
    }
    return out;
}

double total_variation(const std::vector<double> &a, const std::vector<double> &b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
    return s / 2;
}

// Pearson statistic against the uniform distribution.
double chi_square_uniform(const ShotResult &r) {
    const double cells = static_cast<double>(std::size_t{1} << r.num_qubits);
    const double expected = static_cast<double>(r.shots) / cells;
    double chi = 0.0;
    std::size_t present = 0;
    for (const auto &[key, count] : r.counts) {
        chi += (static_cast<double>(count) - expected) * (static_cast<double>(count) - expected) / expected;
        ++present;
    }
    chi += static_cast<double>(static_cast<std::size_t>(cells) - present) * expected;
    return chi;
}

BackendProfile ideal(std::uint64_t seed = 1) { return {"ideal", std::nullopt, std::nullopt, seed}; }

BackendProfile noisy(double p1, double p2, double ro, std::uint64_t seed = 1) {
    return {"noisy", NoiseModel{p1, p2, ro}, std::nullopt, seed};
}

Circuit random_circuit(Rng &rng, int n, int len) {
    Circuit c(n);
    for (int i = 0; i < len; ++i) {
        const int q = static_cast<int>(rng.below(n));
        switch (rng.below(4)) {
        case 0:
            c.add(Gate::h(q));
            break;
        case 1:
            c.add(Gate::rx(q, rng.uniform(-3, 3)));
            break;
        case 2:
            c.add(Gate::rz(q, rng.uniform(-3, 3)));
            break;
        default:
            if (n > 1) c.add(Gate::cx(q, static_cast<int>((q + 1 + rng.below(n - 1)) % n)));
        }
    }
    return c;
}

TEST(StateVector, MatchesDenseOracleUpToGlobalPhase) {
    Rng rng(12);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(4));
        const Circuit c = random_circuit(rng, n, 20);
        std::vector<cd> v(std::size_t{1} << n, 0.0);
        v[0] = 1.0;
        for (const auto &g : c.gates()) v = mul(dense(g, n), v);
        const auto sv = run_statevector(c);
        cd overlap = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) overlap += std::conj(v[i]) * sv[i];
        EXPECT_NEAR(std::abs(overlap), 1.0, 1e-10);
        EXPECT_NEAR(sv.norm(), 1.0, 1e-12);
    }
}

TEST(StateVector, PaulisSquareToIdentity) {
    Rng rng(4);
    StateVector sv = run_statevector(random_circuit(rng, 3, 15));
    const auto before = sv.amplitudes();
    for (Pauli p : {Pauli::X, Pauli::Y, Pauli::Z}) {
        sv.apply(p, 1);
        sv.apply(p, 1);
    }
    for (std::size_t i = 0; i < before.size(); ++i) EXPECT_NEAR(std::abs(before[i] - sv[i]), 0.0, 1e-14);
}

TEST(StateVector, Capacity) {
    EXPECT_THROW(StateVector(kMaxSimulatedQubits + 1), CapacityError);
}

TEST(Shots, BellStateOnlyCorrelatedOutcomes) {
    Circuit c(2);
    c.add(Gate::h(0)).add(Gate::cx(0, 1)).add(Gate::measure_all());
    const auto r = run_shots(c, ideal(), 8192);
    EXPECT_EQ(r.shots, 8192u);
    EXPECT_EQ(r.counts.size(), 2u);
    EXPECT_EQ(r.counts.at("00") + r.counts.at("11"), 8192u);
    EXPECT_NEAR(static_cast<double>(r.counts.at("00")) / 8192, 0.5, 0.03);
}

TEST(Shots, KeysAreIndexedByQubit) {
    Circuit c(3);
    c.add(Gate::rx(2, std::numbers::pi)).add(Gate::measure_all());
    const auto r = run_shots(c, ideal(), 100);
    EXPECT_EQ(r.counts.at("001"), 100u);
}

TEST(Shots, UniformSuperpositionPassesChiSquare) {
    Circuit c(4);
    for (int q = 0; q < 4; ++q) c.add(Gate::h(q));
    c.add(Gate::measure_all());
    // 15 degrees of freedom, 0.999 quantile about 37.7.
    EXPECT_LT(chi_square_uniform(run_shots(c, ideal(7), 16000)), 37.7);
}

TEST(Shots, HalfReadoutFlipGivesUniformOutput) {
    Circuit c(3);
    c.add(Gate::rx(0, 1.0)).add(Gate::cx(0, 1)).add(Gate::measure_all());
    // 7 degrees of freedom, 0.999 quantile about 24.3.
    EXPECT_LT(chi_square_uniform(run_shots(c, noisy(0, 0, 0.5, 3), 16000)), 24.3);
}

TEST(Shots, IdealSamplingMatchesBornRule) {
    const Circuit c = build_qaoa(benchmark_graph("graph5"), {{0.6}, {0.35}});
    const auto exact = run_statevector(c).probabilities();
    const auto r = run_shots(c, ideal(5), 16384);
    EXPECT_LT(total_variation(empirical(r), exact), 0.02);
}

TEST(Shots, NoisySamplingMatchesEnumeratedChannel) {
    Circuit c(2);
    c.add(Gate::h(0)).add(Gate::rx(1, 0.8)).add(Gate::cx(0, 1)).add(Gate::rz(1, 0.4)).add(Gate::measure_all());
    const NoiseModel nm{0.05, 0.12, 0.04};
    const auto exact = exact_noisy_distribution(c, nm);
    const auto r = run_shots(c, noisy(nm.p1, nm.p2, nm.readout_flip, 9), 40000);
    EXPECT_LT(total_variation(empirical(r), exact), 0.015);
}

TEST(Shots, DeterministicForSeed) {
    const Circuit c = build_qaoa(benchmark_graph("cycle4"), {{0.4}, {0.3}});
    const auto a = run_shots(c, noisy(0.01, 0.05, 0.02, 77), 2000);
    const auto b = run_shots(c, noisy(0.01, 0.05, 0.02, 77), 2000);
    const auto other = run_shots(c, noisy(0.01, 0.05, 0.02, 78), 2000);
    EXPECT_EQ(a.counts, b.counts);
    EXPECT_NE(a.counts, other.counts);
}

TEST(Shots, ExpectationFallsAsNoiseGrows) {
    const Graph g = benchmark_graph("cycle4");
    const Circuit c = build_qaoa(g, {{7 * std::numbers::pi / 8}, {std::numbers::pi / 8}});
    double prev = 1e9;
    for (double scale : {0.0, 1.0, 3.0, 8.0}) {
        const auto r = run_shots(c, noisy(0.002 * scale, 0.02 * scale, 0.02 * scale, 21), 20000);
        const double e = expectation_full_cost(g, r);
        EXPECT_LT(e, prev + 0.02) << "scale " << scale;
        prev = e;
    }
    EXPECT_LT(prev, 2.6);
}

TEST(Shots, RejectsBadInputs) {
    Circuit c(2);
    c.add(Gate::cx(0, 1));
    EXPECT_THROW(run_shots(c, ideal(), 0), InputError);
    EXPECT_THROW(run_shots(c, noisy(0.6, 0, 0), 10), InputError);
    BackendProfile sparse = ideal();
    sparse.coupling = CouplingMap(2, {});
    EXPECT_THROW(run_shots(c, sparse, 10), RoutingError);
}

TEST(Shots, FullCostExpectationAndLayout) {
    const Graph g = benchmark_graph("cycle4");
    ShotResult r;
    r.num_qubits = 4;
    r.shots = 4;
    r.counts = {{"0101", 2}, {"0000", 1}, {"0011", 1}};
    EXPECT_DOUBLE_EQ(expectation_full_cost(g, r), (4 + 4 + 0 + 2) / 4.0);
    EXPECT_THROW(expectation_full_cost(benchmark_graph("graph5"), r), InputError);

    ShotResult phys;
    phys.num_qubits = 3;
    phys.shots = 1;
    phys.counts = {{"100", 1}};
    EXPECT_EQ(to_logical(phys, {2, 0}).counts.at("01"), 1u);
}

}  // namespace
}  // namespace qobf
