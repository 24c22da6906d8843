// Copyright 2026 The friendlab Authors
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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "cli/simplex_oracle.hpp"
#include "friendlab/bell.hpp"
#include "friendlab/core/counter_rng.hpp"
#include "generators.hpp"

namespace friendlab::bell {
namespace {

const double kH = std::numbers::sqrt2 / 2;

CorrelationSet quantum() { return CorrelationSet::of(-kH, -kH, -kH, kH); }

TEST(CorrelationSet, StoresAndValidates) {
    CorrelationSet s;
    s.set(Pair::ab, 0.5).set(Pair::ab, 0.5);
    EXPECT_TRUE(s.has(Pair::ab));
    EXPECT_FALSE(s.complete());
    EXPECT_THROW(s.set(Pair::ab, 0.25), ConfigurationError);
    EXPECT_THROW(s.set(Pair::bc, 1.5), ConfigurationError);
    EXPECT_THROW(s.set(Pair::bc, NAN), ConfigurationError);
    EXPECT_THROW(s.set_marginal(Variable::a, -1.01), ConfigurationError);
    EXPECT_THROW(s.get(Pair::cd), ConfigurationError);
    s.set_marginal(Variable::c, 0.0);
    EXPECT_EQ(s.marginal_count(), 1u);
    EXPECT_FALSE(s.marginal(Variable::a).has_value());
}

TEST(ChshVariant, EightDistinctOddSignPatterns) {
    std::set<std::string> names;
    for (std::uint8_t i = 0; i < ChshVariant::kCount; ++i) {
        const auto s = ChshVariant{i}.signs();
        int minus = 0;
        for (int x : s) minus += x < 0;
        EXPECT_EQ(minus % 2, 1);
        names.insert(ChshVariant{i}.name());
    }
    EXPECT_EQ(names.size(), 8u);
    EXPECT_EQ(ChshVariant::standard().name(), "+ab+bc+cd-ad");
}

TEST(ChshValue, QuantumCorrelationsWithStandardCombination) {
    EXPECT_NEAR(chsh_value(quantum(), ChshVariant::standard()), -2.0 * std::numbers::sqrt2, 1e-15);
    EXPECT_NEAR(chsh_maximum(quantum()).value, 2.0 * std::numbers::sqrt2, 1e-15);
}

TEST(ChshValue, TrivialCases) {
    EXPECT_DOUBLE_EQ(chsh_value(CorrelationSet::of(0, 0, 0, 0), ChshVariant::standard()), 0.0);
    EXPECT_DOUBLE_EQ(std::abs(chsh_value(CorrelationSet::of(1, 1, 1, 1), ChshVariant::standard())),
                     2.0);
}

TEST(ChshValue, MissingPairIsAnError) {
    CorrelationSet s;
    s.set(Pair::ab, 0).set(Pair::bc, 0).set(Pair::cd, 0);
    EXPECT_THROW(chsh_value(s, ChshVariant::standard()), ConfigurationError);
}

TEST(FineJointExists, QuantumIsInfeasibleWithTsirelsonCertificate) {
    const auto r = fine_joint_exists(quantum());
    EXPECT_FALSE(r.feasible);
    EXPECT_FALSE(r.witness.has_value());
    ASSERT_TRUE(r.violated.has_value());
    EXPECT_NEAR(r.violated->value, 2.0 * std::numbers::sqrt2, 1e-9);
    EXPECT_EQ(r.violated->bound, 2.0);
    EXPECT_EQ(r.violated->id, "-ab-bc-cd+ad");
}

TEST(FineJointExists, ZerosGiveUniformWitness) {
    const auto r = fine_joint_exists(CorrelationSet::of(0, 0, 0, 0));
    ASSERT_TRUE(r.feasible);
    for (double p : *r.witness) EXPECT_NEAR(p, 1.0 / 16, 1e-15);
}

TEST(FineJointExists, PointMassIsRecovered) {
    auto s = CorrelationSet::of(1, 1, 1, 1);
    for (auto v : kVariables) s.set_marginal(v, 1.0);
    const auto r = fine_joint_exists(s);
    ASSERT_TRUE(r.feasible);
    EXPECT_NEAR((*r.witness)[0], 1.0, 1e-12);
    // Without marginals the witness lives on the two all-equal assignments.
    const auto free = fine_joint_exists(CorrelationSet::of(1, 1, 1, 1));
    ASSERT_TRUE(free.feasible);
    EXPECT_NEAR((*free.witness)[0] + (*free.witness)[15], 1.0, 1e-12);
}

TEST(FineJointExists, BoundaryOfThePolytopeIsFeasible) {
    // Exactly on the facet: +ab+bc+cd-ad = 2.
    const auto r = fine_joint_exists(CorrelationSet::of(1, 1, 0, 0));
    ASSERT_TRUE(r.feasible);
    EXPECT_LE(witness_error(CorrelationSet::of(1, 1, 0, 0), *r.witness), 1e-9);
    EXPECT_FALSE(fine_joint_exists(CorrelationSet::of(1, 1, 1, -1)).feasible);
}

TEST(FineJointExists, MarginalsCanMakeItInfeasible) {
    auto s = CorrelationSet::of(1, 1, 1, 1);
    s.set_marginal(Variable::a, 1.0).set_marginal(Variable::b, -1.0);
    const auto r = fine_joint_exists(s);
    EXPECT_FALSE(r.feasible);
    ASSERT_TRUE(r.violated.has_value());
    EXPECT_LT(r.violated->value, 0.0);
    EXPECT_EQ(r.violated->bound, 0.0);
}

TEST(FineJointExists, PartialCorrelationSets) {
    CorrelationSet s;
    s.set(Pair::ab, 1).set(Pair::bc, 1).set(Pair::cd, 1);
    EXPECT_TRUE(fine_joint_exists(s).feasible);
    s.set(Pair::ad, -1);
    EXPECT_FALSE(fine_joint_exists(s).feasible);
}

TEST(FineJointExists, AgreesWithOracleOnSpotChecks) {
    // Oracle decisions frozen from cli::SimplexOracle.
    struct Case {
        std::array<double, 4> v;
        bool feasible;
    };
    const std::array<Case, 6> cases{{{{0.5, 0.5, 0.5, -0.5}, true},
                                     {{0.9, 0.9, 0.9, -0.9}, false},
                                     {{-1, -1, -1, -1}, true},
                                     {{-1, 1, -1, -1}, false},
                                     {{0.7, 0.7, 0.7, 0.1}, true},
                                     {{0.75, 0.75, 0.75, 0.0}, false}}};
    for (const auto& c : cases) {
        const auto s = CorrelationSet::of(c.v[0], c.v[1], c.v[2], c.v[3]);
        EXPECT_EQ(fine_joint_exists(s).feasible, c.feasible);
        EXPECT_EQ(cli::SimplexOracle::solve(s).feasible, c.feasible);
    }
}

TEST(CorrelationsOf, RecomputesFromDistribution) {
    std::array<double, kAssignments> p{};
    p[0] = 0.5;   // ++++
    p[15] = 0.5;  // ----
    const auto s = correlations_of(p, true);
    for (auto pair : kPairs) EXPECT_DOUBLE_EQ(s.get(pair), 1.0);
    for (auto v : kVariables) EXPECT_DOUBLE_EQ(*s.marginal(v), 0.0);
}

TEST(AssignmentValue, BitOrder) {
    EXPECT_EQ(assignment_value(0b1000, Variable::a), -1);
    EXPECT_EQ(assignment_value(0b1000, Variable::b), 1);
    EXPECT_EQ(assignment_value(0b0001, Variable::d), -1);
}

TEST(CorrelationFromSamples, AlwaysEqualAndAlwaysOpposite) {
    std::vector<OutcomeRow> eq, opp;
    for (int i = 0; i < 10; ++i) {
        const int x = i % 2 ? 1 : -1;
        eq.push_back({x, x, std::nullopt, std::nullopt});
        opp.push_back({x, -x, std::nullopt, std::nullopt});
    }
    const auto e = correlation_from_samples(eq, Pair::ab);
    EXPECT_DOUBLE_EQ(e.value, 1.0);
    EXPECT_DOUBLE_EQ(e.stderr_, 0.0);
    EXPECT_EQ(e.n, 10u);
    EXPECT_DOUBLE_EQ(correlation_from_samples(opp, Pair::ab).value, -1.0);
}

TEST(CorrelationFromSamples, StandardErrorIsSampleSdOverRootN) {
    const std::vector<OutcomeRow> rows{
        {1, 1, {}, {}}, {1, -1, {}, {}}, {1, 1, {}, {}}, {-1, 1, {}, {}}};
    const auto e = correlation_from_samples(rows, Pair::ab);
    // Products 1, -1, 1, -1: mean 0, sample variance 4/3.
    EXPECT_DOUBLE_EQ(e.value, 0.0);
    EXPECT_NEAR(e.stderr_, std::sqrt(4.0 / 3.0 / 4.0), 1e-15);
}

TEST(CorrelationFromSamples, InsufficientOrInvalidData) {
    const std::vector<OutcomeRow> one{{1, 1, {}, {}}, {1, {}, {}, {}}};
    EXPECT_THROW(correlation_from_samples(one, Pair::ab), ConfigurationError);
    const std::vector<OutcomeRow> bad{{2, 1, {}, {}}, {1, 1, {}, {}}};
    EXPECT_THROW(correlation_from_samples(bad, Pair::ab), ConfigurationError);
}

TEST(CorrelationFromSamples, SingletAtSixtyDegrees) {
    // Born sampling oracle: equal outcomes with probability (1 - cos 60)/2.
    const double p_equal = (1.0 - std::cos(std::numbers::pi / 3)) / 2.0;
    std::vector<OutcomeRow> rows;
    for (std::uint64_t t = 0; t < 100000; ++t) {
        const int a = CounterRng::uniform({17, t, 0}) < 0.5 ? 1 : -1;
        const int b = CounterRng::uniform({17, t, 1}) < p_equal ? a : -a;
        rows.push_back({a, b, std::nullopt, std::nullopt});
    }
    const auto e = correlation_from_samples(rows, Pair::ab);
    EXPECT_LE(std::abs(e.value + 0.5), 4.0 * e.stderr_);
}

TEST(EmpiricalChsh, ExactBoundAndNeedsFullRows) {
    const std::vector<OutcomeRow> rows{{1, 1, 1, -1}, {1, 1, 1, 1}};
    EXPECT_DOUBLE_EQ(empirical_chsh(rows), 2.0);
    const std::vector<OutcomeRow> partial{{1, 1, {}, {}}};
    EXPECT_THROW(empirical_chsh(partial), ConfigurationError);
}

}  // namespace
}  // namespace friendlab::bell
