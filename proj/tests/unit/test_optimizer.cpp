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

#include <gtest/gtest.h>

#include "qobf/optimizer.hpp"

namespace qobf {
namespace {

double bowl(const std::vector<double> &x) {
    return (x[0] - 1.0) * (x[0] - 1.0) + 2.0 * (x[1] + 0.5) * (x[1] + 0.5);
}

TEST(Spsa, TwoEvaluationsPerStepAtSymmetricPoints) {
    Spsa opt({0.0, 0.0}, SpsaGains{}, 3);
    const auto evals = opt.step(bowl);
    ASSERT_EQ(evals.size(), 2u);
    for (std::size_t i = 0; i < 2; ++i) {
        EXPECT_NEAR(evals[0].x[i] + evals[1].x[i], 0.0, 1e-15);
        EXPECT_NEAR(std::abs(evals[0].x[i]), SpsaGains{}.c, 1e-15);
    }
    EXPECT_DOUBLE_EQ(evals[0].value, bowl(evals[0].x));
}

TEST(Spsa, ConvergesOnQuadratic) {
    Spsa opt({3.0, 2.0}, SpsaGains{0.3, 0.1, 5.0, 0.602, 0.101}, 11);
    for (int i = 0; i < 400; ++i) opt.step(bowl);
    EXPECT_NEAR(opt.x()[0], 1.0, 0.05);
    EXPECT_NEAR(opt.x()[1], -0.5, 0.05);
}

TEST(Spsa, DeterministicForSeed) {
    Spsa a({0.2, 0.3}, SpsaGains{}, 5), b({0.2, 0.3}, SpsaGains{}, 5);
    for (int i = 0; i < 20; ++i) {
        a.step(bowl);
        b.step(bowl);
    }
    EXPECT_EQ(a.x(), b.x());
}

TEST(NelderMead, FirstStepEvaluatesSimplex) {
    NelderMead opt({0.0, 0.0}, 0.5);
    const auto evals = opt.step(bowl);
    ASSERT_GE(evals.size(), 4u);
    EXPECT_EQ(evals[0].x, (std::vector<double>{0.0, 0.0}));
    EXPECT_EQ(evals[1].x, (std::vector<double>{0.5, 0.0}));
    EXPECT_EQ(evals[2].x, (std::vector<double>{0.0, 0.5}));
    EXPECT_LE(opt.step(bowl).size(), 4u);
}

TEST(NelderMead, ConvergesOnQuadratic) {
    NelderMead opt({3.0, 2.0}, 0.5);
    for (int i = 0; i < 200; ++i) opt.step(bowl);
    EXPECT_NEAR(opt.x()[0], 1.0, 1e-4);
    EXPECT_NEAR(opt.x()[1], -0.5, 1e-4);
}

TEST(NelderMead, BestPointNeverWorsens) {
    NelderMead opt({-2.0, 4.0}, 1.0);
    double prev = bowl(opt.x());
    for (int i = 0; i < 60; ++i) {
        opt.step(bowl);
        const double now = bowl(opt.x());
        EXPECT_LE(now, prev + 1e-15);
        prev = now;
    }
}

}  // namespace
}  // namespace qobf
