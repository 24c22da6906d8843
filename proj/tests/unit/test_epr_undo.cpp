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

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "friendlab/friendlab.hpp"
#include "generators.hpp"

namespace friendlab::scenarios {
namespace {

using bell::Pair;
using bell::Variable;

/// <sigma_u (x) sigma_v> on the bare two-qubit singlet, built by hand.
double singlet_oracle(double u, double v) {
    auto sigma = [](double t) {
        Eigen::Matrix2d m;
        m << std::cos(t), std::sin(t), std::sin(t), -std::cos(t);
        return m;
    };
    Eigen::Vector4d psi(0, 1, -1, 0);
    psi /= std::sqrt(2.0);
    const Eigen::Matrix2d su = sigma(u), sv = sigma(v);
    Eigen::Matrix4d op;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) op(i, j) = su(i / 2, j / 2) * sv(i % 2, j % 2);
    }
    return psi.dot(op * psi);
}

EprUndoConfig config(double a, double b, double c, double d) {
    EprUndoConfig cfg;
    cfg.angles = {DirectionAngle::radians(a), DirectionAngle::radians(b),
                  DirectionAngle::radians(c), DirectionAngle::radians(d)};
    return cfg;
}

double angle_of(const EprUndoConfig& cfg, Variable v) {
    return cfg.angles[static_cast<std::size_t>(v)].value();
}

TEST(EprUndo, SingletOracleIsMinusCos) {
    EXPECT_NEAR(singlet_oracle(0.3, 1.1), -std::cos(0.8), 1e-15);
}

TEST(EprUndo, AnalyticMatchesSingletOracle) {
    testing::Gen g(11);
    for (int rep = 0; rep < 10; ++rep) {
        const auto cfg = config(g.angle(), g.angle(), g.angle(), g.angle());
        const auto an = epr_undo_analytic(cfg);
        for (auto p : bell::kPairs) {
            const auto [u, v] = bell::members(p);
            EXPECT_NEAR(an.correlations.get(p), singlet_oracle(angle_of(cfg, u), angle_of(cfg, v)),
                        1e-9)
                << bell::to_string(p);
        }
        EXPECT_NEAR(an.fidelity_psi3_psi1, 1.0, 1e-12);
        EXPECT_NEAR(an.carol_ready_after_undo, 1.0, 1e-12);
        EXPECT_NEAR(an.dan_ready_after_undo, 1.0, 1e-12);
    }
}

TEST(EprUndo, CanonicalAnglesReachTsirelson) {
    const auto an = epr_undo_analytic(EprUndoConfig{});
    const double s = bell::chsh_value(an.correlations, bell::ChshVariant::standard());
    EXPECT_NEAR(std::abs(s), 2.0 * std::numbers::sqrt2, 1e-9);
    EXPECT_FALSE(bell::fine_joint_exists(an.correlations).feasible);
}

TEST(EprUndo, EqualAnglesAnticorrelate) {
    const auto an = epr_undo_analytic(config(0.4, 1.0, 2.0, 0.4));
    EXPECT_NEAR(an.correlations.get(Pair::ad), -1.0, 1e-12);
}

TEST(EprUndo, FramesAgree) {
    auto cfg = config(0.2, 0.9, 1.7, 2.6);
    const auto f = epr_undo_analytic(cfg);
    cfg.frame = EprFrame::Fstar;
    const auto fs = epr_undo_analytic(cfg);
    for (auto p : bell::kPairs) {
        EXPECT_NEAR(f.correlations.get(p), fs.correlations.get(p), 1e-12);
    }
}

TEST(EprUndo, EvaluationPointsFallBackToOtherFrame) {
    for (auto frame : {EprFrame::F, EprFrame::Fstar}) {
        for (auto p : bell::kPairs) {
            const auto pt = evaluation_point(frame, p);
            EXPECT_GE(pt.after_step, 1u);
            EXPECT_LE(pt.after_step, 6u);
        }
    }
    // b is measured last in F, after C is undone, so bc lives in F*.
    EXPECT_EQ(evaluation_point(EprFrame::F, Pair::bc).frame, EprFrame::Fstar);
    EXPECT_EQ(evaluation_point(EprFrame::F, Pair::cd).frame, EprFrame::F);
}

TEST(EprUndo, SequencesAreMirrorImages) {
    const auto f = epr_sequence(EprFrame::F);
    const auto fs = epr_sequence(EprFrame::Fstar);
    ASSERT_EQ(f.size(), 6u);
    ASSERT_EQ(fs.size(), 6u);
    EXPECT_EQ(f[0].variable, Variable::d);
    EXPECT_EQ(f[5].variable, Variable::b);
    EXPECT_EQ(fs[0].variable, Variable::c);
    EXPECT_EQ(fs[5].variable, Variable::a);
}

TEST(EprUndo, AnalyticRejectsCollapseMode) {
    auto cfg = EprUndoConfig{};
    cfg.mode = EprMode::collapse;
    EXPECT_THROW(epr_undo_analytic(cfg), ConfigurationError);
}

TEST(EprUndo, ConfigValidation) {
    auto cfg = EprUndoConfig{};
    cfg.trials = kMaxTrials + 1;
    EXPECT_THROW(cfg.validate(), ConfigurationError);
    cfg.trials = 0;
    EXPECT_THROW(epr_undo_sample(cfg), ConfigurationError);
    EXPECT_THROW(DirectionAngle::radians(std::nan("")), ConfigurationError);
}

TEST(EprUndo, CollapseTrialsAreFullAndBounded) {
    auto cfg = EprUndoConfig{};
    cfg.mode = EprMode::collapse;
    cfg.trials = 2000;
    cfg.seed = 5;
    const auto r = epr_undo_sample(cfg, true);
    ASSERT_EQ(r.records.size(), 2000u);
    for (const auto& rec : r.records) {
        EXPECT_EQ(rec.pair_or_full, "full");
        for (const auto& v : rec.out) ASSERT_TRUE(v.has_value());
    }
    ASSERT_TRUE(r.empirical_chsh.has_value());
    EXPECT_LE(std::abs(*r.empirical_chsh), 2.0);
    EXPECT_TRUE(bell::fine_joint_exists(*r.empirical).feasible);
}

TEST(EprUndo, ReferenceTrialMatchesSampler) {
    for (auto frame : {EprFrame::F, EprFrame::Fstar}) {
        auto cfg = config(0.1, 0.8, 1.9, 2.4);
        cfg.mode = EprMode::collapse;
        cfg.frame = frame;
        cfg.trials = 200;
        cfg.seed = 99;
        const auto r = epr_undo_sample(cfg, true);
        for (std::uint64_t t = 0; t < cfg.trials; ++t) {
            const auto ref = epr_collapse_trial(cfg, t);
            for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(*r.records[t].out[i], ref[i]);
        }
    }
}

TEST(EprUndo, CollapseCorrelationsMatchClosedForm) {
    for (auto frame : {EprFrame::F, EprFrame::Fstar}) {
        auto cfg = config(0.3, 1.2, 0.7, 2.0);
        cfg.mode = EprMode::collapse;
        cfg.frame = frame;
        cfg.trials = 40000;
        cfg.seed = 3;
        const auto r = epr_undo_sample(cfg);
        for (std::size_t i = 0; i < 4; ++i) {
            const auto p = bell::kPairs[i];
            const auto& e = r.estimates[i];
            EXPECT_NEAR(e.value, epr_collapse_correlation(cfg, p), 4 * e.stderr_ + 1e-9)
                << to_string(frame) << " " << bell::to_string(p);
        }
    }
}

TEST(EprUndo, CollapseClosedFormSpotValues) {
    // c = d: the friends agree perfectly on anticorrelation; outer pairs
    // see cos(a - c) and cos(b - d) factors.
    const auto cfg = config(0.5, 0.0, 0.0, 0.0);
    EXPECT_NEAR(epr_collapse_correlation(cfg, Pair::cd), -1.0, 1e-15);
    EXPECT_NEAR(epr_collapse_correlation(cfg, Pair::ad), -std::cos(0.5), 1e-15);
    EXPECT_NEAR(epr_collapse_correlation(cfg, Pair::ab), -std::cos(0.5), 1e-15);
    EXPECT_NEAR(epr_collapse_correlation(cfg, Pair::bc), -1.0, 1e-15);
}

TEST(EprUndo, UnitarySamplingWithinFourSigma) {
    auto cfg = EprUndoConfig{};
    cfg.trials = 20000;
    cfg.seed = 17;
    const auto r = epr_undo_sample(cfg, true);
    EXPECT_EQ(r.records.size(), 4u * 20000u);
    for (std::size_t i = 0; i < 4; ++i) {
        const auto& e = r.estimates[i];
        EXPECT_NEAR(e.value, epr_singlet_correlation(cfg, bell::kPairs[i]), 4 * e.stderr_);
    }
    EXPECT_FALSE(r.empirical_chsh.has_value());
}

TEST(EprUndo, SamplingIsDeterministicInSeed) {
    auto cfg = EprUndoConfig{};
    cfg.mode = EprMode::collapse;
    cfg.trials = 500;
    cfg.seed = 1234;
    const auto a = epr_undo_sample(cfg, true);
    const auto b = epr_undo_sample(cfg, true);
    for (std::size_t t = 0; t < a.records.size(); ++t)
        EXPECT_EQ(a.records[t].out, b.records[t].out);
    cfg.seed = 1235;
    const auto c = epr_undo_sample(cfg, true);
    bool differs = false;
    for (std::size_t t = 0; t < a.records.size(); ++t)
        differs |= a.records[t].out != c.records[t].out;
    EXPECT_TRUE(differs);
}

TEST(EprUndo, RunReportPasses) {
    auto cfg = EprUndoConfig{};
    cfg.trials = 5000;
    EXPECT_TRUE(epr_undo_run(cfg).all_pass());
    cfg.mode = EprMode::collapse;
    EXPECT_TRUE(epr_undo_run(cfg).all_pass());
}

}  // namespace
}  // namespace friendlab::scenarios
