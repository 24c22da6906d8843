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

/**
 * @file
 * Undone friend measurements on a singlet pair.
 *
 * Carol (C) and Dan (D) measure spins c, d of particles 1, 2; Alice and Bob
 * undo those measurements with the adjoint dilations and then measure a, b
 * themselves, recording in A and B. Two orderings of the same operations are
 * supported:
 *
 *   F : D(d)  C(c)  C^-1  A(a)  D^-1  B(b)
 *   F*: C(c)  D(d)  D^-1  B(b)  C^-1  A(a)
 *
 * Unitary mode evaluates each pairwise correlation with the two-time Born
 * rule at a point where both records coexist. Collapse mode projects at
 * every measurement and keeps the classical outcomes, so every trial yields
 * a full four-tuple.
 */

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "friendlab/bell.hpp"
#include "friendlab/core/counter_rng.hpp"
#include "friendlab/core/measurement.hpp"
#include "friendlab/core/operator.hpp"
#include "friendlab/observables.hpp"
#include "friendlab/scenarios/report.hpp"

namespace friendlab::scenarios {

enum class EprMode { unitary, collapse };
enum class EprFrame { F, Fstar };

inline std::string to_string(EprMode m) { return m == EprMode::unitary ? "unitary" : "collapse"; }
inline std::string to_string(EprFrame f) { return f == EprFrame::F ? "F" : "Fstar"; }

inline constexpr std::uint64_t kMaxTrials = 10'000'000;

struct EprUndoConfig {
    std::array<DirectionAngle, 4> angles{DirectionAngle::degrees(0), DirectionAngle::degrees(45),
                                         DirectionAngle::degrees(90),
                                         DirectionAngle::degrees(135)};  // a, b, c, d
    EprMode mode = EprMode::unitary;
    EprFrame frame = EprFrame::F;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;

    void validate() const {
        if (trials > kMaxTrials) {
            throw ConfigurationError("trials must be at most 10^7, got " + std::to_string(trials));
        }
    }
};

inline LayoutPtr epr_layout() {
    static const LayoutPtr layout = make_layout({{"1", {"up", "down"}},
                                                 {"2", {"up", "down"}},
                                                 {"C", {"ready", "up", "down"}},
                                                 {"D", {"ready", "up", "down"}},
                                                 {"A", {"ready", "up", "down"}},
                                                 {"B", {"ready", "up", "down"}}});
    return layout;
}

/// Singlet on 12 with every lab ready.
inline StateVector epr_singlet() {
    const auto l = epr_layout();
    auto ket = [&](const char* x, const char* y) {
        return build_basis_state(
            l,
            {{"1", x}, {"2", y}, {"C", "ready"}, {"D", "ready"}, {"A", "ready"}, {"B", "ready"}});
    };
    const double h = 1.0 / std::numbers::sqrt2;
    return superpose({{h, ket("up", "down")}, {-h, ket("down", "up")}});
}

/// Who acts at one step. Measurements record in the experimenter's lab;
/// undo steps apply the adjoint of a friend's dilation.
struct EprStep {
    enum Kind { measure, undo } kind;
    bell::Variable variable;  // measured or undone variable
};

/// Lab register and particle of each variable.
inline const char* epr_lab(bell::Variable v) {
    static constexpr std::array<const char*, 4> labs{"A", "B", "C", "D"};
    return labs[static_cast<std::size_t>(v)];
}
inline const char* epr_particle(bell::Variable v) {
    return (v == bell::Variable::a || v == bell::Variable::c) ? "1" : "2";
}

inline std::vector<EprStep> epr_sequence(EprFrame f) {
    using V = bell::Variable;
    if (f == EprFrame::F) {
        return {{EprStep::measure, V::d}, {EprStep::measure, V::c}, {EprStep::undo, V::c},
                {EprStep::measure, V::a}, {EprStep::undo, V::d},    {EprStep::measure, V::b}};
    }
    return {{EprStep::measure, V::c}, {EprStep::measure, V::d}, {EprStep::undo, V::d},
            {EprStep::measure, V::b}, {EprStep::undo, V::c},    {EprStep::measure, V::a}};
}

inline OperatorMatrix epr_dilation(const RegisterLayout& l, const EprUndoConfig& cfg,
                                   bell::Variable v) {
    return spin_dilation(l, epr_particle(v), epr_lab(v), cfg.angles[static_cast<std::size_t>(v)]);
}

inline OperatorMatrix epr_step_operator(const RegisterLayout& l, const EprUndoConfig& cfg,
                                        const EprStep& s) {
    auto u = epr_dilation(l, cfg, s.variable);
    return s.kind == EprStep::measure ? u : dagger(u);
}

/// States after each step of the frame's sequence; element 0 is the singlet.
inline std::vector<StateVector> epr_unitary_history(const EprUndoConfig& cfg, EprFrame frame) {
    const auto l = epr_layout();
    std::vector<StateVector> h{epr_singlet()};
    for (const auto& s : epr_sequence(frame)) {
        h.push_back(apply_operator(h.back(), epr_step_operator(*l, cfg, s)));
    }
    return h;
}

/// Record projector: lab of `v` reads up (+1) or down (-1).
inline ProjectorSpec epr_record(bell::Variable v, int sign) {
    return ProjectorSpec::basis(epr_lab(v), sign > 0 ? "up" : "down");
}

/// Joint distribution of two records, [i][j] with index 0 = +1.
using PairDistribution = std::array<std::array<double, 2>, 2>;

inline PairDistribution record_distribution(const StateVector& s, bell::Pair p) {
    const auto [u, v] = bell::members(p);
    PairDistribution d{};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            d[i][j] = born_probability(s, epr_record(u, i ? -1 : 1) && epr_record(v, j ? -1 : 1));
        }
    }
    return d;
}

inline double distribution_correlation(const PairDistribution& d) {
    return d[0][0] - d[0][1] - d[1][0] + d[1][1];
}

/// Where a pair is evaluated: frame and number of completed steps.
struct EvaluationPoint {
    EprFrame frame;
    std::size_t after_step;
};

namespace detail {

/// First step after which both records of `p` are present in `frame`.
inline std::optional<std::size_t> coexistence(EprFrame frame, bell::Pair p) {
    const auto [u, v] = bell::members(p);
    bool has_u = false, has_v = false;
    const auto seq = epr_sequence(frame);
    for (std::size_t i = 0; i < seq.size(); ++i) {
        const bool on = seq[i].kind == EprStep::measure;
        if (seq[i].variable == u) has_u = on;
        if (seq[i].variable == v) has_v = on;
        if (has_u && has_v) return i + 1;
    }
    return std::nullopt;
}

}  // namespace detail

/// Primary frame first, then the other one.
inline EvaluationPoint evaluation_point(EprFrame primary, bell::Pair p) {
    if (auto k = detail::coexistence(primary, p)) return {primary, *k};
    const EprFrame other = primary == EprFrame::F ? EprFrame::Fstar : EprFrame::F;
    if (auto k = detail::coexistence(other, p)) return {other, *k};
    throw ContractError("records of pair " + bell::to_string(p) + " never coexist");
}

struct EprAnalytic {
    bell::CorrelationSet correlations;
    std::array<PairDistribution, 4> distributions{};
    std::array<EvaluationPoint, 4> points{};
    double fidelity_psi3_psi1 = 0.0;
    double carol_ready_after_undo = 0.0;
    double dan_ready_after_undo = 0.0;
};

/// Two-time Born correlations in unitary mode.
inline EprAnalytic epr_undo_analytic(const EprUndoConfig& cfg) {
    if (cfg.mode != EprMode::unitary) {
        throw ConfigurationError("analytic correlations are defined for unitary mode only");
    }
    const std::array<std::vector<StateVector>, 2> hist{epr_unitary_history(cfg, EprFrame::F),
                                                       epr_unitary_history(cfg, EprFrame::Fstar)};
    EprAnalytic out;
    for (std::size_t i = 0; i < 4; ++i) {
        const auto p = bell::kPairs[i];
        const auto pt = evaluation_point(cfg.frame, p);
        const auto& s = hist[pt.frame == EprFrame::F ? 0 : 1][pt.after_step];
        out.points[i] = pt;
        out.distributions[i] = record_distribution(s, p);
        out.correlations.set(p,
                             std::clamp(distribution_correlation(out.distributions[i]), -1.0, 1.0));
    }
    // Psi1 after Dan, Psi3 after Alice's undo of Carol (frame F); in F* the
    // same role is played by Carol's measurement and Bob's undo of Dan.
    const auto& h = hist[cfg.frame == EprFrame::F ? 0 : 1];
    out.fidelity_psi3_psi1 = fidelity(h[3], h[1]);
    const auto& hf = hist[0];
    out.carol_ready_after_undo = born_probability(hf[3], ProjectorSpec::basis("C", "ready"));
    out.dan_ready_after_undo = born_probability(hf[5], ProjectorSpec::basis("D", "ready"));
    return out;
}

/// -cos(u - v) for the pair's two angles.
inline double epr_singlet_correlation(const EprUndoConfig& cfg, bell::Pair p) {
    const auto [u, v] = bell::members(p);
    return -std::cos(cfg.angles[static_cast<std::size_t>(u)].value() -
                     cfg.angles[static_cast<std::size_t>(v)].value());
}

/// Closed form of the collapse-mode correlations: outer measurements see
/// particles already collapsed along c (particle 1) and d (particle 2).
inline double epr_collapse_correlation(const EprUndoConfig& cfg, bell::Pair p) {
    const double a = cfg.angles[0].value(), b = cfg.angles[1].value(), c = cfg.angles[2].value(),
                 d = cfg.angles[3].value();
    const double cd = -std::cos(c - d);
    switch (p) {
        case bell::Pair::ab: return std::cos(a - c) * std::cos(b - d) * cd;
        case bell::Pair::bc: return std::cos(b - d) * cd;
        case bell::Pair::cd: return cd;
        case bell::Pair::ad: return std::cos(a - c) * cd;
    }
    return 0.0;
}

// -------------------------------------------------------------- Monte Carlo

/// One CSV row: "full" four-tuples in collapse mode, one pair otherwise.
struct TrialRecord {
    std::uint64_t trial;
    std::string pair_or_full;
    bell::OutcomeRow out;
};

struct PairTally {
    std::int64_t sum = 0;
    std::uint64_t n = 0;
};

struct EprSampleResult {
    std::array<PairTally, 4> tallies{};
    std::array<bell::Estimate, 4> estimates{};
    std::optional<double> empirical_chsh;           // collapse mode only
    std::optional<bell::CorrelationSet> empirical;  // collapse mode only
    std::vector<TrialRecord> records;               // when requested
};

namespace detail {

inline bell::Estimate estimate(const PairTally& t) {
    if (t.n < 2) throw ConfigurationError("need at least 2 trials for statistics");
    const double n = static_cast<double>(t.n);
    const double mean = static_cast<double>(t.sum) / n;
    const double var = std::max(0.0, (1.0 - mean * mean) * n / (n - 1.0));
    return {mean, std::sqrt(var / n), static_cast<std::size_t>(t.n)};
}

/// Branch tree of the collapse-mode sequence, keyed by the outcome prefix.
class CollapseTree {
   public:
    CollapseTree(const EprUndoConfig& cfg, EprFrame frame)
        : layout_(epr_layout()), steps_(epr_sequence(frame)) {
        for (const auto& s : steps_) ops_.push_back(epr_step_operator(*layout_, cfg, s));
        for (const auto& s : steps_) {
            if (s.kind == EprStep::measure) measured_.push_back(s.variable);
        }
    }

    const std::vector<bell::Variable>& measured() const { return measured_; }

    /// P(outcome +1) of the k-th measurement given earlier outcomes
    /// (bit i of `prefix` set = outcome i was -1).
    double p_plus(std::size_t k, std::uint32_t prefix) {
        const std::uint64_t key = (std::uint64_t{k} << 32) | prefix;
        if (auto it = p_plus_.find(key); it != p_plus_.end()) return it->second;
        const auto s = state_before(k, prefix);
        const double p = born_probability(s, epr_record(measured_[k], +1));
        p_plus_.emplace(key, p);
        return p;
    }

   private:
    /// Collapsed state just after the k-th measurement's dilation.
    StateVector state_before(std::size_t k, std::uint32_t prefix) {
        StateVector s = epr_singlet();
        std::size_t m = 0;
        for (std::size_t i = 0; i < steps_.size(); ++i) {
            s = apply_operator(s, ops_[i]);
            if (steps_[i].kind != EprStep::measure) continue;
            if (m == k) return s;
            const int sign = ((prefix >> m) & 1u) ? -1 : 1;
            s = project_collapse(s, epr_record(steps_[i].variable, sign));
            ++m;
        }
        throw ContractError("measurement index out of range");
    }

    LayoutPtr layout_;
    std::vector<EprStep> steps_;
    std::vector<OperatorMatrix> ops_;
    std::vector<bell::Variable> measured_;
    std::map<std::uint64_t, double> p_plus_;
};

}  // namespace detail

/**
 * Collapse-mode trials. Draw k of trial t uses RngKey{seed, t, k}, where k
 * counts measurements in the frame's order.
 */
inline EprSampleResult epr_sample_collapse(const EprUndoConfig& cfg, bool keep_records) {
    cfg.validate();
    detail::CollapseTree tree(cfg, cfg.frame);
    EprSampleResult out;
    std::array<std::int64_t, 4> sums{};
    std::vector<bell::OutcomeRow> rows;
    std::int64_t chsh_total = 0;
    const auto signs = bell::ChshVariant::standard().signs();
    for (std::uint64_t t = 0; t < cfg.trials; ++t) {
        std::array<int, 4> v{};
        std::uint32_t prefix = 0;
        for (std::size_t k = 0; k < tree.measured().size(); ++k) {
            const double u = CounterRng::uniform({cfg.seed, t, static_cast<std::uint32_t>(k)});
            const bool plus = u < tree.p_plus(k, prefix);
            if (!plus) prefix |= 1u << k;
            v[static_cast<std::size_t>(tree.measured()[k])] = plus ? 1 : -1;
        }
        std::int64_t s = 0;
        for (std::size_t i = 0; i < 4; ++i) {
            const auto [x, y] = bell::members(bell::kPairs[i]);
            const int prod = v[static_cast<std::size_t>(x)] * v[static_cast<std::size_t>(y)];
            sums[i] += prod;
            s += signs[i] * prod;
        }
        chsh_total += s;
        if (keep_records) {
            out.records.push_back({t, "full", {v[0], v[1], v[2], v[3]}});
        }
    }
    for (std::size_t i = 0; i < 4; ++i) out.tallies[i] = {sums[i], cfg.trials};
    if (cfg.trials >= 2) {
        bell::CorrelationSet emp;
        for (std::size_t i = 0; i < 4; ++i) {
            out.estimates[i] = detail::estimate(out.tallies[i]);
            emp.set(bell::kPairs[i], out.estimates[i].value);
        }
        out.empirical = emp;
        out.empirical_chsh = static_cast<double>(chsh_total) / static_cast<double>(cfg.trials);
    }
    return out;
}

/**
 * Unitary-mode trials: each pair is sampled separately from its two-time
 * distribution. Draw index = pair index, so pairs are independent streams.
 */
inline EprSampleResult epr_sample_unitary(const EprUndoConfig& cfg, bool keep_records) {
    cfg.validate();
    const auto analytic = epr_undo_analytic(cfg);
    EprSampleResult out;
    for (std::size_t i = 0; i < 4; ++i) {
        const auto& d = analytic.distributions[i];
        const std::vector<double> probs{d[0][0], d[0][1], d[1][0], d[1][1]};
        const auto [x, y] = bell::members(bell::kPairs[i]);
        PairTally tally;
        for (std::uint64_t t = 0; t < cfg.trials; ++t) {
            const auto k = draw_outcome(probs, {cfg.seed, t, static_cast<std::uint32_t>(i)});
            const int vx = (k / 2) ? -1 : 1;
            const int vy = (k % 2) ? -1 : 1;
            tally.sum += vx * vy;
            ++tally.n;
            if (keep_records) {
                bell::OutcomeRow row;
                row[static_cast<std::size_t>(x)] = vx;
                row[static_cast<std::size_t>(y)] = vy;
                out.records.push_back({t, bell::to_string(bell::kPairs[i]), row});
            }
        }
        out.tallies[i] = tally;
        if (cfg.trials >= 2) out.estimates[i] = detail::estimate(tally);
    }
    return out;
}

inline EprSampleResult epr_undo_sample(const EprUndoConfig& cfg, bool keep_records = false) {
    if (cfg.trials == 0) throw ConfigurationError("sampling needs at least one trial");
    return cfg.mode == EprMode::collapse ? epr_sample_collapse(cfg, keep_records)
                                         : epr_sample_unitary(cfg, keep_records);
}

/// Reference implementation of one collapse-mode trial that re-simulates the
/// whole sequence; same draws as epr_sample_collapse.
inline std::array<int, 4> epr_collapse_trial(const EprUndoConfig& cfg, std::uint64_t trial) {
    const auto l = epr_layout();
    StateVector s = epr_singlet();
    std::array<int, 4> v{};
    std::uint32_t k = 0;
    for (const auto& step : epr_sequence(cfg.frame)) {
        s = apply_operator(s, epr_step_operator(*l, cfg, step));
        if (step.kind != EprStep::measure) continue;
        const double p = born_probability(s, epr_record(step.variable, +1));
        const bool plus = CounterRng::uniform({cfg.seed, trial, k}) < p;
        s = project_collapse(s, epr_record(step.variable, plus ? 1 : -1));
        v[static_cast<std::size_t>(step.variable)] = plus ? 1 : -1;
        ++k;
    }
    return v;
}

// ------------------------------------------------------------------- report

inline std::string angle_label(std::size_t i) {
    static constexpr std::array<const char*, 4> n{"a", "b", "c", "d"};
    return n[i];
}

inline ScenarioReport epr_undo_run(const EprUndoConfig& cfg, EprSampleResult* samples = nullptr,
                                   bool keep_records = false) {
    cfg.validate();
    ScenarioReport r;
    r.scenario = "epr-undo";
    for (std::size_t i = 0; i < 4; ++i) r.param(angle_label(i) + "_rad", cfg.angles[i].value());
    r.param("mode", to_string(cfg.mode))
        .param("frame", to_string(cfg.frame))
        .param("trials", static_cast<std::int64_t>(cfg.trials))
        .param("seed", std::to_string(cfg.seed))
        .param("rng", std::string(CounterRng::kName));

    if (cfg.mode == EprMode::unitary) {
        const auto an = epr_undo_analytic(cfg);
        EprUndoConfig other = cfg;
        other.frame = cfg.frame == EprFrame::F ? EprFrame::Fstar : EprFrame::F;
        const auto an2 = epr_undo_analytic(other);
        double frame_diff = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            const auto p = bell::kPairs[i];
            const auto name = "E(" + bell::to_string(p) + ")";
            r.result(name, an.correlations.get(p));
            r.result(name + ".evaluated_in", to_string(an.points[i].frame) + " after step " +
                                                 std::to_string(an.points[i].after_step));
            r.check(name + " = -cos", epr_singlet_correlation(cfg, p), an.correlations.get(p),
                    tol::kComposed);
            frame_diff =
                std::max(frame_diff, std::abs(an.correlations.get(p) - an2.correlations.get(p)));
        }
        const double s = bell::chsh_value(an.correlations, bell::ChshVariant::standard());
        r.result("CHSH", s).result("|CHSH|", std::abs(s));
        r.result("fidelity(Psi3, Psi1)", an.fidelity_psi3_psi1);
        r.result("P(C ready after undo)", an.carol_ready_after_undo)
            .result("P(D ready after undo)", an.dan_ready_after_undo)
            .result("max |E_F - E_F*|", frame_diff);
        r.check("fidelity(Psi3, Psi1) = 1", 1.0, an.fidelity_psi3_psi1, tol::kExact);
        r.check("Carol's lab restored to ready", 1.0, an.carol_ready_after_undo, tol::kExact);
        r.check("Dan's lab restored to ready", 1.0, an.dan_ready_after_undo, tol::kExact);
        r.check("frame F and F* agree", 0.0, frame_diff, tol::kExact);
        const auto fine = bell::fine_joint_exists(an.correlations);
        r.result("joint distribution exists", fine.feasible);
        if (fine.violated) {
            r.result("certificate", fine.violated->id)
                .result("certificate value", fine.violated->value);
        }
    }

    if (cfg.trials > 0) {
        auto smp = epr_undo_sample(cfg, keep_records);
        for (std::size_t i = 0; i < 4; ++i) {
            const auto p = bell::kPairs[i];
            const auto name = "corr(" + bell::to_string(p) + ")";
            if (cfg.trials < 2) break;
            const auto& e = smp.estimates[i];
            r.result(name, e.value).result(name + ".stderr", e.stderr_);
            const double expected = cfg.mode == EprMode::unitary ? epr_singlet_correlation(cfg, p)
                                                                 : epr_collapse_correlation(cfg, p);
            r.result(name + ".expected", expected);
            r.check(name + " within 4 sigma", expected, e.value,
                    std::max(tol::kSigmaBand * e.stderr_, tol::kComposed));
        }
        if (smp.empirical_chsh) {
            r.result("empirical CHSH", *smp.empirical_chsh);
            r.check("|empirical CHSH| <= 2", 2.0, std::abs(*smp.empirical_chsh), 0.0,
                    Relation::at_most);
            const auto fine = bell::fine_joint_exists(*smp.empirical);
            r.result("empirical joint distribution exists", fine.feasible);
            r.check_flag("empirical correlations admit a joint distribution", true, fine.feasible);
        }
        if (samples) *samples = std::move(smp);
    }
    return r;
}

}  // namespace friendlab::scenarios
