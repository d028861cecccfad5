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
#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <numeric>
#include <vector>

#include "qobf/rng.hpp"

namespace qobf {

using Objective = std::function<double(const std::vector<double> &)>;

struct Evaluation {
    std::vector<double> x;
    double value = 0.0;
};

// Minimizers driven one iteration at a time so the caller can swap the objective
// (e.g. the active backend) between iterations.
class IterativeOptimizer {
  public:
    virtual ~IterativeOptimizer() = default;

    // Runs one iteration against `f` and returns every evaluation it made, in order.
    virtual std::vector<Evaluation> step(const Objective &f) = 0;

    // Current iterate.
    virtual std::vector<double> x() const = 0;
};

// Gain sequences a_k = a / (k + 1 + A)^alpha and c_k = c / (k + 1)^gamma.
struct SpsaGains {
    double a = 0.4;
    double c = 0.15;
    double A = 5.0;
    double alpha = 0.602;
    double gamma = 0.101;
};

class Spsa final : public IterativeOptimizer {
  public:
    Spsa(std::vector<double> x0, SpsaGains gains, std::uint64_t seed)
        : x_(std::move(x0)), gains_(gains), rng_(seed) {}

    std::vector<Evaluation> step(const Objective &f) override {
        const double k = static_cast<double>(k_);
        const double ak = gains_.a / std::pow(k + 1.0 + gains_.A, gains_.alpha);
        const double ck = gains_.c / std::pow(k + 1.0, gains_.gamma);
        std::vector<double> delta(x_.size());
        for (auto &d : delta) d = rng_.rademacher();

        std::vector<double> plus(x_), minus(x_);
        for (std::size_t i = 0; i < x_.size(); ++i) {
            plus[i] += ck * delta[i];
            minus[i] -= ck * delta[i];
        }
        const double yp = f(plus);
        const double ym = f(minus);
        const double scale = (yp - ym) / (2.0 * ck);
        for (std::size_t i = 0; i < x_.size(); ++i) {
            x_[i] -= ak * scale / delta[i];
        }
        ++k_;
        return {{std::move(plus), yp}, {std::move(minus), ym}};
    }

    std::vector<double> x() const override { return x_; }

  private:
    std::vector<double> x_;
    SpsaGains gains_;
    Rng rng_;
    std::size_t k_ = 0;
};

// Classic simplex search (reflect 1, expand 2, contract 1/2, shrink 1/2). The first
// step also evaluates the initial simplex.
class NelderMead final : public IterativeOptimizer {
  public:
    NelderMead(std::vector<double> x0, double initial_step) : x0_(std::move(x0)), step_size_(initial_step) {}

    std::vector<Evaluation> step(const Objective &f) override {
        std::vector<Evaluation> log;
        auto eval = [&](const std::vector<double> &x) {
            const double v = f(x);
            log.push_back({x, v});
            return v;
        };
        const std::size_t n = x0_.size();
        if (simplex_.empty()) {
            simplex_.push_back({x0_, eval(x0_)});
            for (std::size_t i = 0; i < n; ++i) {
                auto v = x0_;
                v[i] += step_size_;
                simplex_.push_back({v, eval(v)});
            }
        }
        std::sort(simplex_.begin(), simplex_.end(),
                  [](const Evaluation &a, const Evaluation &b) { return a.value < b.value; });

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t d = 0; d < n; ++d) centroid[d] += simplex_[i].x[d] / static_cast<double>(n);
        }
        auto along = [&](double t) {
            std::vector<double> out(n);
            for (std::size_t d = 0; d < n; ++d) out[d] = centroid[d] + t * (simplex_[n].x[d] - centroid[d]);
            return out;
        };

        Evaluation &worst = simplex_[n];
        const auto xr = along(-1.0);
        const double fr = eval(xr);
        if (fr < simplex_[0].value) {
            const auto xe = along(-2.0);
            const double fe = eval(xe);
            worst = fe < fr ? Evaluation{xe, fe} : Evaluation{xr, fr};
        } else if (fr < simplex_[n - 1].value) {
            worst = {xr, fr};
        } else {
            const bool outside = fr < worst.value;
            const auto xc = along(outside ? -0.5 : 0.5);
            const double fc = eval(xc);
            if (fc < std::min(fr, worst.value)) {
                worst = {xc, fc};
            } else {
                for (std::size_t i = 1; i <= n; ++i) {
                    for (std::size_t d = 0; d < n; ++d) {
                        simplex_[i].x[d] = simplex_[0].x[d] + 0.5 * (simplex_[i].x[d] - simplex_[0].x[d]);
                    }
                    simplex_[i].value = eval(simplex_[i].x);
                }
            }
        }
        return log;
    }

    std::vector<double> x() const override {
        if (simplex_.empty()) return x0_;
        return std::min_element(simplex_.begin(), simplex_.end(),
                                [](const Evaluation &a, const Evaluation &b) { return a.value < b.value; })
            ->x;
    }

  private:
    std::vector<double> x0_;
    double step_size_;
    std::vector<Evaluation> simplex_;
};

}  // namespace qobf
