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
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "qobf/circuit.hpp"
#include "qobf/errors.hpp"

namespace qobf {

inline constexpr int kMaxSimulatedQubits = 20;

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

// Dense amplitudes over 2^n basis states; basis index bit q is qubit q.
class StateVector {
  public:
    using amp = std::complex<double>;

    explicit StateVector(int num_qubits) : n_(num_qubits) {
        if (num_qubits < 1 || num_qubits > kMaxSimulatedQubits) {
            throw CapacityError("statevector supports 1.." + std::to_string(kMaxSimulatedQubits) +
                                " qubits, got " + std::to_string(num_qubits));
        }
        amps_.assign(std::size_t{1} << num_qubits, amp{0.0, 0.0});
        amps_[0] = 1.0;
    }

    int num_qubits() const noexcept { return n_; }
    std::size_t dim() const noexcept { return amps_.size(); }
    const std::vector<amp> &amplitudes() const noexcept { return amps_; }
    const amp &operator[](std::size_t i) const { return amps_[i]; }

    double norm() const {
        double s = 0.0;
        for (const auto &a : amps_) s += std::norm(a);
        return std::sqrt(s);
    }

    std::vector<double> probabilities() const {
        std::vector<double> p(amps_.size());
        for (std::size_t i = 0; i < amps_.size(); ++i) p[i] = std::norm(amps_[i]);
        return p;
    }

    void apply(const Gate &g) {
        switch (g.kind) {
        case GateKind::H: {
            const double r = 1.0 / std::sqrt(2.0);
            pairs(g.q0, [r](amp &a, amp &b) {
                const amp x = a, y = b;
                a = r * (x + y);
                b = r * (x - y);
            });
            break;
        }
        case GateKind::RX: {
            const double c = std::cos(0.5 * g.angle);
            const amp is{0.0, -std::sin(0.5 * g.angle)};
            pairs(g.q0, [c, is](amp &a, amp &b) {
                const amp x = a, y = b;
                a = c * x + is * y;
                b = is * x + c * y;
            });
            break;
        }
        case GateKind::RZ: {
            const amp lo = std::polar(1.0, -0.5 * g.angle);
            const amp hi = std::polar(1.0, 0.5 * g.angle);
            pairs(g.q0, [lo, hi](amp &a, amp &b) {
                a *= lo;
                b *= hi;
            });
            break;
        }
        case GateKind::CX: {
            const std::size_t cm = std::size_t{1} << g.q0;
            pairs(g.q1, [](amp &a, amp &b) { std::swap(a, b); }, cm);
            break;
        }
        case GateKind::MEASURE_ALL:
            break;
        }
    }

    void apply(Pauli p, int q) {
        switch (p) {
        case Pauli::I:
            break;
        case Pauli::X:
            pairs(q, [](amp &a, amp &b) { std::swap(a, b); });
            break;
        case Pauli::Y:
            pairs(q, [](amp &a, amp &b) {
                const amp x = a;
                a = amp{0.0, -1.0} * b;
                b = amp{0.0, 1.0} * x;
            });
            break;
        case Pauli::Z:
            pairs(q, [](amp &, amp &b) { b = -b; });
            break;
        }
    }

  private:
    // Visits (|..0_q..>, |..1_q..>) amplitude pairs, optionally only where all `control_mask` bits are set.
    template <typename F>
    void pairs(int q, F &&f, std::size_t control_mask = 0) {
        const std::size_t m = std::size_t{1} << q;
        const std::size_t half = amps_.size() >> 1;
        for (std::size_t k = 0; k < half; ++k) {
            const std::size_t i = ((k >> q) << (q + 1)) | (k & (m - 1));
            if ((i & control_mask) != control_mask) continue;
            f(amps_[i], amps_[i | m]);
        }
    }

    int n_;
    std::vector<amp> amps_;
};

// Noiseless evolution of |0...0>; the terminal measure is a no-op here.
inline StateVector run_statevector(const Circuit &c) {
    StateVector sv(c.num_qubits());
    for (const auto &g : c.gates()) sv.apply(g);
    return sv;
}

}  // namespace qobf
