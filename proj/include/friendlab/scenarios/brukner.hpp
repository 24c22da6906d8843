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
 * Two-lab friend scenario. A single friend (Xena, lab X) records the z spin
 * of particle 1 while a superobserver (Zeus) measures lab observables A_x,
 * A_z on 1X. The extended version adds particle 2 and lab Y, and compares
 * the lab-observable correlations with the CHSH bound.
 */

#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "friendlab/bell.hpp"
#include "friendlab/core/measurement.hpp"
#include "friendlab/core/operator.hpp"
#include "friendlab/observables.hpp"
#include "friendlab/scenarios/report.hpp"

namespace friendlab::scenarios {

// ---------------------------------------------------------------- preliminary

/// 1: particle, X: Xena's lab, Zx / Zz: Zeus's pointers for A_x and A_z.
inline LayoutPtr brukner_preliminary_layout() {
    static const LayoutPtr layout = make_layout({{"1", {"up", "down"}},
                                                 {"X", {"ready", "up", "down"}},
                                                 {"Zx", {"ready", "+1", "-1"}},
                                                 {"Zz", {"ready", "+1", "-1"}}});
    return layout;
}

/// (|up>_1 + |down>_1)/sqrt2 with every lab ready.
inline StateVector brukner_preliminary_initial() {
    const auto l = brukner_preliminary_layout();
    const double h = 1.0 / std::numbers::sqrt2;
    return superpose(
        {{h, build_basis_state(l, {{"1", "up"}, {"X", "ready"}, {"Zx", "ready"}, {"Zz", "ready"}})},
         {h, build_basis_state(
                 l, {{"1", "down"}, {"X", "ready"}, {"Zx", "ready"}, {"Zz", "ready"}})}});
}

/// |Phi>_1X: the state after Xena's z measurement.
inline StateVector brukner_phi() {
    const auto l = brukner_preliminary_layout();
    return apply_operator(brukner_preliminary_initial(),
                          spin_dilation(*l, "1", "X", DirectionAngle::radians(0.0)));
}

/// Zeus's measurement of a lab observable, recorded in `pointer` as +1 / -1.
inline OperatorMatrix zeus_dilation(const RegisterLayout& layout, const LabSide& side,
                                    PointerKind kind, const std::string& pointer) {
    return dilation_unitary(layout, {{side.particle, side.lab},
                                     pointer,
                                     pointer_eigenvectors(layout, side, kind),
                                     {"+1", "-1"}});
}

inline ScenarioReport brukner_preliminary_run() {
    ScenarioReport r;
    r.scenario = "brukner-preliminary";
    const auto l = brukner_preliminary_layout();
    const auto phi = brukner_phi();

    const auto ax_plus = pointer_projector(*l, kSideA, PointerKind::x, +1);
    const double p_ax = born_probability(phi, ax_plus);
    r.result("P(A_x=+1)", p_ax);
    r.check("P(A_x=+1) on Phi", 1.0, p_ax, tol::kExact);

    const auto after_x = apply_operator(phi, zeus_dilation(*l, kSideA, PointerKind::x, "Zx"));
    const double h = 1.0 / std::numbers::sqrt2;
    const auto expected_after = superpose(
        {{h, build_basis_state(l, {{"1", "up"}, {"X", "up"}, {"Zx", "+1"}, {"Zz", "ready"}})},
         {h, build_basis_state(l, {{"1", "down"}, {"X", "down"}, {"Zx", "+1"}, {"Zz", "ready"}})}});
    const double f2 = fidelity(expected_after, after_x);
    r.result("fidelity(after A_x, Phi x |+1>)", f2);
    r.check("A_x leaves Phi undisturbed", 1.0, f2, tol::kExact);

    const auto after_z = apply_operator(after_x, zeus_dilation(*l, kSideA, PointerKind::z, "Zz"));
    const double pz_plus = born_probability(after_z, ProjectorSpec::basis("Zz", "+1"));
    const double pz_minus = born_probability(after_z, ProjectorSpec::basis("Zz", "-1"));
    r.result("P(A_z=+1)", pz_plus).result("P(A_z=-1)", pz_minus);
    r.check("P(A_z=+1) after A_x", 0.5, pz_plus, tol::kExact);
    r.check("P(A_z=-1) after A_x", 0.5, pz_minus, tol::kExact);

    const double up_given_plus = conditional_probability(after_z, ProjectorSpec::basis("Zz", "+1"),
                                                         ProjectorSpec::basis("X", "up"));
    const double down_given_minus = conditional_probability(
        after_z, ProjectorSpec::basis("Zz", "-1"), ProjectorSpec::basis("X", "down"));
    const double agree = born_probability(after_z, ProjectorSpec::basis("Zz", "+1") &&
                                                       ProjectorSpec::basis("X", "up")) +
                         born_probability(after_z, ProjectorSpec::basis("Zz", "-1") &&
                                                       ProjectorSpec::basis("X", "down"));
    r.result("P(Xena up | A_z=+1)", up_given_plus)
        .result("P(Xena down | A_z=-1)", down_given_minus)
        .result("P(Zeus A_z agrees with Xena)", agree);
    r.check("P(Xena up | A_z=+1)", 1.0, up_given_plus, tol::kExact);
    r.check("P(Xena down | A_z=-1)", 1.0, down_given_minus, tol::kExact);
    r.check("Zeus-Xena record agreement", 1.0, agree, tol::kExact);
    return r;
}

// ------------------------------------------------------------------ extended

/// Sign placement in <A_zB_z> + <A_zB_x> + <A_xB_z> + <A_xB_x>. `literal` is
/// the literal combination (minus on <A_xB_x>).
enum class BruknerVariant { literal, minus_axbz, minus_azbx, minus_azbz };

inline constexpr std::array<BruknerVariant, 4> kBruknerVariants{
    BruknerVariant::literal, BruknerVariant::minus_axbz, BruknerVariant::minus_azbx,
    BruknerVariant::minus_azbz};

inline std::string to_string(BruknerVariant v) {
    switch (v) {
        case BruknerVariant::literal: return "literal";
        case BruknerVariant::minus_axbz: return "minus-axbz";
        case BruknerVariant::minus_azbx: return "minus-azbx";
        case BruknerVariant::minus_azbz: return "minus-azbz";
    }
    return "?";
}

inline BruknerVariant parse_brukner_variant(const std::string& s) {
    for (auto v : kBruknerVariants) {
        if (to_string(v) == s) return v;
    }
    throw ConfigurationError("unknown CHSH variant '" + s + "'");
}

struct BruknerConfig {
    double theta = std::numbers::pi / 4;
    BruknerVariant variant = BruknerVariant::minus_axbz;
};

inline LayoutPtr brukner_extended_layout() {
    static const LayoutPtr layout = make_layout({{"1", {"up", "down"}},
                                                 {"2", {"up", "down"}},
                                                 {"X", {"ready", "up", "down"}},
                                                 {"Y", {"ready", "up", "down"}}});
    return layout;
}

inline void require_finite_theta(double theta) {
    if (!std::isfinite(theta)) throw ConfigurationError("theta must be finite");
}

/// -sin(theta/2)|phi+>_12 + cos(theta/2)|psi->_12, labs ready.
inline StateVector brukner_initial_state(double theta) {
    require_finite_theta(theta);
    const auto l = brukner_extended_layout();
    auto ket = [&](const char* a, const char* b) {
        return build_basis_state(l, {{"1", a}, {"2", b}, {"X", "ready"}, {"Y", "ready"}});
    };
    const double h = 1.0 / std::numbers::sqrt2;
    const double s = -std::sin(theta / 2) * h;
    const double c = std::cos(theta / 2) * h;
    return superpose({{s, ket("up", "up")},
                      {s, ket("down", "down")},
                      {c, ket("up", "down")},
                      {-c, ket("down", "up")}});
}

/// Both friends record the z spin of their particle by unitary dilation.
inline StateVector brukner_extended_state(double theta) {
    const auto l = brukner_extended_layout();
    const auto zero = DirectionAngle::radians(0.0);
    return apply_sequence(brukner_initial_state(theta),
                          {spin_dilation(*l, "1", "X", zero), spin_dilation(*l, "2", "Y", zero)});
}

/// The same state written directly as -sin(theta/2)|Phi+> + cos(theta/2)|Psi->
/// over the A_up/A_down, B_up/B_down records.
inline StateVector brukner_reference_state(double theta) {
    require_finite_theta(theta);
    const auto l = brukner_extended_layout();
    auto ket = [&](const char* a, const char* b) {
        return build_basis_state(l, {{"1", a}, {"X", a}, {"2", b}, {"Y", b}});
    };
    const double h = 1.0 / std::numbers::sqrt2;
    const double s = -std::sin(theta / 2) * h;
    const double c = std::cos(theta / 2) * h;
    return superpose({{s, ket("up", "up")},
                      {s, ket("down", "down")},
                      {c, ket("up", "down")},
                      {-c, ket("down", "up")}});
}

struct BruknerCorrelations {
    double zz, zx, xz, xx;  // <A_z B_z>, <A_z B_x>, <A_x B_z>, <A_x B_x>
};

inline BruknerCorrelations brukner_correlations(const StateVector& state) {
    const auto& l = state.layout();
    auto corr = [&](PointerKind a, PointerKind b) {
        return correlator(state, pointer_observable(l, kSideA, a),
                          pointer_observable(l, kSideB, b));
    };
    return {corr(PointerKind::z, PointerKind::z), corr(PointerKind::z, PointerKind::x),
            corr(PointerKind::x, PointerKind::z), corr(PointerKind::x, PointerKind::x)};
}

inline double brukner_chsh_value(const BruknerCorrelations& c, BruknerVariant v) {
    std::array<double, 4> t{c.zz, c.zx, c.xz, c.xx};
    switch (v) {
        case BruknerVariant::literal: t[3] = -t[3]; break;
        case BruknerVariant::minus_axbz: t[2] = -t[2]; break;
        case BruknerVariant::minus_azbx: t[1] = -t[1]; break;
        case BruknerVariant::minus_azbz: t[0] = -t[0]; break;
    }
    return t[0] + t[1] + t[2] + t[3];
}

struct BruknerChsh {
    BruknerCorrelations correlations;
    std::array<double, 4> by_variant;  // in kBruknerVariants order
    double selected;
};

inline BruknerChsh brukner_chsh(double theta, BruknerVariant variant) {
    BruknerChsh out{};
    out.correlations = brukner_correlations(brukner_extended_state(theta));
    for (std::size_t i = 0; i < 4; ++i) {
        out.by_variant[i] = brukner_chsh_value(out.correlations, kBruknerVariants[i]);
    }
    out.selected = brukner_chsh_value(out.correlations, variant);
    return out;
}

/// Born table over the four joint outcomes of one context (one lab
/// observable per side). Index [i][j]: i = 0 for A = +1, j = 0 for B = +1.
struct ContextTable {
    PointerKind a, b;
    std::array<std::array<double, 2>, 2> p{};
    /// For z choices: probability that the friend's own record reads "up",
    /// which is the proposition A_z^+ (resp. B_z^+) is identified with.
    std::optional<double> friend_a_up, friend_b_up;

    double sum() const { return p[0][0] + p[0][1] + p[1][0] + p[1][1]; }
    double correlation() const { return p[0][0] - p[0][1] - p[1][0] + p[1][1]; }
};

inline ContextTable brukner_context_measure(double theta, PointerKind a, PointerKind b) {
    const auto state = brukner_extended_state(theta);
    const auto& l = state.layout();
    ContextTable t{a, b, {}, {}, {}};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            t.p[i][j] = born_probability(state, pointer_projector(l, kSideA, a, i ? -1 : 1) &&
                                                    pointer_projector(l, kSideB, b, j ? -1 : 1));
        }
    }
    if (a == PointerKind::z)
        t.friend_a_up = born_probability(state, ProjectorSpec::basis("X", "up"));
    if (b == PointerKind::z)
        t.friend_b_up = born_probability(state, ProjectorSpec::basis("Y", "up"));
    return t;
}

/// Pools the four contexts into one correlation set for the joint-distribution
/// check, with a = A_x, b = B_x, c = A_z, d = B_z. The standard combination
/// ab + bc + cd - ad is then the minus-axbz variant.
inline bell::CorrelationSet brukner_pooled_correlations(double theta) {
    const auto c = brukner_correlations(brukner_extended_state(theta));
    return bell::CorrelationSet::of(c.xx, c.zx, c.zz, c.xz);
}

inline ScenarioReport brukner_extended_run(const BruknerConfig& cfg) {
    require_finite_theta(cfg.theta);
    ScenarioReport r;
    r.scenario = "brukner-extended";
    r.param("theta", cfg.theta).param("variant", to_string(cfg.variant));

    const auto built = brukner_extended_state(cfg.theta);
    const double f = fidelity(built, brukner_reference_state(cfg.theta));
    r.result("fidelity(dilated, reference)", f);
    r.check("dilation-built state matches reference", 1.0, f, tol::kExact);

    const auto chsh = brukner_chsh(cfg.theta, cfg.variant);
    r.result("<A_zB_z>", chsh.correlations.zz)
        .result("<A_zB_x>", chsh.correlations.zx)
        .result("<A_xB_z>", chsh.correlations.xz)
        .result("<A_xB_x>", chsh.correlations.xx);
    for (std::size_t i = 0; i < 4; ++i) {
        r.result("S[" + to_string(kBruknerVariants[i]) + "]", chsh.by_variant[i]);
    }
    r.result("S", chsh.selected);

    const double ct = std::cos(cfg.theta);
    const double st = std::sin(cfg.theta);
    r.check("<A_zB_z> = -cos(theta)", -ct, chsh.correlations.zz, tol::kComposed);
    r.check("<A_zB_x> = -sin(theta)", -st, chsh.correlations.zx, tol::kComposed);
    r.check("<A_xB_z> = +sin(theta)", st, chsh.correlations.xz, tol::kComposed);
    r.check("<A_xB_x> = -cos(theta)", -ct, chsh.correlations.xx, tol::kComposed);
    r.check("S[literal] = 0", 0.0, chsh.by_variant[0], tol::kExact);
    r.check("|S[minus-axbz]| = 2|cos(theta) + sin(theta)|", 2.0 * std::abs(ct + st),
            std::abs(chsh.by_variant[1]), tol::kComposed);

    for (auto a : {PointerKind::z, PointerKind::x}) {
        for (auto b : {PointerKind::z, PointerKind::x}) {
            const auto t = brukner_context_measure(cfg.theta, a, b);
            const std::string ctx = std::string("context(") + (a == PointerKind::z ? "z" : "x") +
                                    "," + (b == PointerKind::z ? "z" : "x") + ")";
            r.result(ctx + ".P(+1,+1)", t.p[0][0])
                .result(ctx + ".P(+1,-1)", t.p[0][1])
                .result(ctx + ".P(-1,+1)", t.p[1][0])
                .result(ctx + ".P(-1,-1)", t.p[1][1]);
            r.check(ctx + " sums to 1", 1.0, t.sum(), tol::kExact);
        }
    }

    const auto pooled = bell::fine_joint_exists(brukner_pooled_correlations(cfg.theta));
    r.result("pooled contexts admit joint distribution", pooled.feasible);
    if (pooled.violated) {
        r.result("pooled certificate", pooled.violated->id)
            .result("pooled certificate value", pooled.violated->value);
    }
    r.notes.push_back(
        "the literal combination (minus on <A_xB_x>) vanishes identically for this state; the "
        "violation appears with the minus sign on <A_xB_z>");
    return r;
}

}  // namespace friendlab::scenarios
