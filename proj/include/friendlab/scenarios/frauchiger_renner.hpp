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
 * Coin-and-spin timeline with two friends and two superobservers.
 *
 *   t=0  Xena records the coin c in her lab X        (c -> X)
 *   t=1  Xena prepares s: down on heads, (down+up)/sqrt2 on tails
 *   t=2  Yvonne records the z spin of s in her lab Y (s -> Y)
 *   t=3  Zeus records X in the fail/OK basis          ((c,X) -> Z), optional
 *   t=4  no interaction; Wigner's w is read off Y's fail/OK basis
 *   t=5  Wigner's w record is written                 ((s,Y) -> W)
 *
 * The composite labs of the analysis are X = c + X- and Y = s + Y-; their
 * records and fail/OK states live on those register pairs.
 */

#pragma once

#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "friendlab/core/measurement.hpp"
#include "friendlab/core/operator.hpp"
#include "friendlab/observables.hpp"
#include "friendlab/scenarios/report.hpp"

namespace friendlab::scenarios {

inline LayoutPtr fr_layout() {
    static const LayoutPtr layout = make_layout({{"c", {"heads", "tails"}},
                                                 {"X", {"ready", "heads", "tails"}},
                                                 {"s", {"up", "down"}},
                                                 {"Y", {"ready", "-1/2", "+1/2"}},
                                                 {"Z", {"ready", "fail", "OK"}},
                                                 {"W", {"ready", "fail", "OK"}}});
    return layout;
}

inline constexpr int kFrLastTime = 5;

struct FRTimeline {
    bool zeus_intervenes = true;
    int query_time = 4;
};

/// |ready>_c = (|heads> + sqrt2 |tails>)/sqrt3, s down, every lab ready.
inline StateVector fr_initial_state() {
    const auto l = fr_layout();
    auto ket = [&](const char* coin) {
        return build_basis_state(l, {{"c", coin},
                                     {"X", "ready"},
                                     {"s", "down"},
                                     {"Y", "ready"},
                                     {"Z", "ready"},
                                     {"W", "ready"}});
    };
    return superpose(
        {{1.0 / std::sqrt(3.0), ket("heads")}, {std::sqrt(2.0) / std::sqrt(3.0), ket("tails")}});
}

/// Xena's preparation of s, controlled on her record: identity unless X
/// reads tails, where |down> -> (|down>+|up>)/sqrt2, |up> -> (|up>-|down>)/sqrt2.
inline OperatorMatrix fr_preparation(const RegisterLayout& layout) {
    const auto x = static_cast<Eigen::Index>(layout.reg(layout.index_of("X")).dim());
    const auto tails = static_cast<Eigen::Index>(layout.basis_index("X", "tails"));
    const double h = 1.0 / std::numbers::sqrt2;
    Matrix rot(2, 2);  // basis order (up, down)
    rot << h, h, -h, h;
    Matrix u = Matrix::Identity(2 * x, 2 * x);
    u.block(2 * tails, 2 * tails, 2, 2) = rot;
    return OperatorMatrix({"X", "s"}, std::move(u), OperatorKind::unitary);
}

/// The interaction at time t, if any.
inline std::optional<OperatorMatrix> fr_event(const RegisterLayout& layout, int t,
                                              bool zeus_intervenes) {
    switch (t) {
        case 0:
            return dilation_unitary(layout,
                                    {{"c"}, "X", Matrix::Identity(2, 2), {"heads", "tails"}});
        case 1: return fr_preparation(layout);
        case 2: {
            Matrix b(2, 2);  // columns |down>, |up>
            b << 0, 1, 1, 0;
            return dilation_unitary(layout, {{"s"}, "Y", b, {"-1/2", "+1/2"}});
        }
        case 3:
            if (!zeus_intervenes) return std::nullopt;
            return dilation_unitary(layout, {record_pair_x().registers,
                                             "Z",
                                             okfail_vectors(layout, record_pair_x()),
                                             {"fail", "OK"}});
        case 4: return std::nullopt;
        case 5:
            return dilation_unitary(layout, {record_pair_y().registers,
                                             "W",
                                             okfail_vectors(layout, record_pair_y()),
                                             {"fail", "OK"}});
        default:
            throw ConfigurationError("timeline time must be in 0..5, got " + std::to_string(t));
    }
}

/// State just after time `query_time`, built by composing the interactions.
inline StateVector fr_state_at(const FRTimeline& tl) {
    if (tl.query_time < 0 || tl.query_time > kFrLastTime) {
        throw ConfigurationError("timeline time must be in 0..5, got " +
                                 std::to_string(tl.query_time));
    }
    const auto l = fr_layout();
    auto s = fr_initial_state();
    for (int t = 0; t <= tl.query_time; ++t) {
        if (auto op = fr_event(*l, t, tl.zeus_intervenes)) s = apply_operator(s, *op);
    }
    return s;
}

// Propositions used by the queries below.

inline ProjectorSpec fr_heads_record() { return record_projector(record_pair_x(), 0); }
inline ProjectorSpec fr_tails_record() { return record_projector(record_pair_x(), 1); }
inline ProjectorSpec fr_coin_record(bool heads) {
    return heads ? fr_heads_record() : fr_tails_record();
}
inline ProjectorSpec fr_y(bool plus) { return ProjectorSpec::basis("Y", plus ? "+1/2" : "-1/2"); }
inline ProjectorSpec fr_x_okfail(bool ok) {
    return okfail_projector(*fr_layout(), RecordSide::X, ok);
}
inline ProjectorSpec fr_y_okfail(bool ok) {
    return okfail_projector(*fr_layout(), RecordSide::Y, ok);
}
inline ProjectorSpec fr_zeus_record(bool ok) {
    return ProjectorSpec::basis("Z", ok ? "OK" : "fail");
}

// ------------------------------------------------------------- closed forms

/// Closed forms written in the record and fail/OK bases.
enum class FrClosedForm {
    t2_records,
    t2_okfail_x,
    t2_okfail_y,
    t2_okfail_xy,
    zeus_t3,
    zeus_t4,
    no_zeus_t4
};

inline std::string to_string(FrClosedForm p) {
    switch (p) {
        case FrClosedForm::t2_records: return "t2 record basis";
        case FrClosedForm::t2_okfail_x: return "t2 fail/OK on X";
        case FrClosedForm::t2_okfail_y: return "t2 fail/OK on Y";
        case FrClosedForm::t2_okfail_xy: return "t2 fail/OK on X and Y";
        case FrClosedForm::zeus_t3: return "t3 with Zeus";
        case FrClosedForm::zeus_t4: return "t4 with Zeus, eight branches";
        case FrClosedForm::no_zeus_t4: return "t4 without Zeus";
    }
    return "?";
}

/// The time and branch of the timeline each closed form describes.
inline FRTimeline fr_closed_form_time(FrClosedForm p) {
    switch (p) {
        case FrClosedForm::zeus_t3: return {true, 3};
        case FrClosedForm::zeus_t4: return {true, 4};
        case FrClosedForm::no_zeus_t4: return {false, 4};
        default: return {true, 2};
    }
}

inline StateVector fr_closed_form(FrClosedForm which) {
    const auto l = fr_layout();
    const Matrix xr = record_vectors(*l, record_pair_x());
    const Matrix xo = okfail_vectors(*l, record_pair_x());
    const Matrix yr = record_vectors(*l, record_pair_y());
    const Matrix yo = okfail_vectors(*l, record_pair_y());
    const Vector heads = xr.col(0), tails = xr.col(1), fail_x = xo.col(0), ok_x = xo.col(1);
    const Vector minus = yr.col(0), plus = yr.col(1), fail_y = yo.col(0), ok_y = yo.col(1);
    auto pointer = [](Eigen::Index k) { return Vector(Vector::Unit(3, k)); };
    const Vector ready = pointer(0), zfail = pointer(1), zok = pointer(2);
    auto ket = [&](const Vector& x, const Vector& y, const Vector& z) {
        return Vector(friendlab::detail::kron(
            friendlab::detail::kron(friendlab::detail::kron(Matrix(x), Matrix(y)), Matrix(z)),
            Matrix(ready)));
    };
    const double r3 = std::sqrt(3.0);
    const double r2 = std::sqrt(2.0);
    Vector v;
    switch (which) {
        case FrClosedForm::t2_records:
            v = (ket(heads, minus, ready) + ket(tails, minus, ready) + ket(tails, plus, ready)) /
                r3;
            break;
        case FrClosedForm::t2_okfail_x:
            v = (r2 * ket(fail_x, minus, ready) + ket(tails, plus, ready)) / r3;
            break;
        case FrClosedForm::t2_okfail_y:
        case FrClosedForm::no_zeus_t4:
            v = (ket(heads, minus, ready) + r2 * ket(tails, fail_y, ready)) / r3;
            break;
        case FrClosedForm::t2_okfail_xy:
            v = (3.0 * ket(fail_x, fail_y, ready) + ket(fail_x, ok_y, ready) -
                 ket(ok_x, fail_y, ready) + ket(ok_x, ok_y, ready)) /
                (2.0 * r3);
            break;
        case FrClosedForm::zeus_t3:
            v = (r2 * ket(fail_x, minus, zfail) +
                 (ket(fail_x, plus, zfail) - ket(ok_x, plus, zok)) / r2) /
                r3;
            break;
        case FrClosedForm::zeus_t4: {
            const Vector a = 3.0 * fail_y + ok_y;
            const Vector b = ok_y - fail_y;
            v = (ket(heads, a, zfail) + ket(heads, b, zok) + ket(tails, a, zfail) -
                 ket(tails, b, zok)) /
                std::sqrt(24.0);
            break;
        }
    }
    return StateVector(l, std::move(v));
}

inline constexpr std::array<FrClosedForm, 7> kFrClosedForms{
    FrClosedForm::t2_records,   FrClosedForm::t2_okfail_x, FrClosedForm::t2_okfail_y,
    FrClosedForm::t2_okfail_xy, FrClosedForm::zeus_t3,     FrClosedForm::zeus_t4,
    FrClosedForm::no_zeus_t4};

// ------------------------------------------------------------- outcome table

inline ScenarioReport fr_outcome_table(bool zeus_intervenes) {
    ScenarioReport r;
    r.scenario = "fr-outcomes";
    r.param("zeus", zeus_intervenes);

    for (auto p : kFrClosedForms) {
        const auto tl = fr_closed_form_time(p);
        if (tl.zeus_intervenes != zeus_intervenes && tl.query_time > 2) continue;
        const double f = fidelity(fr_state_at(tl), fr_closed_form(p));
        r.result("fidelity[" + to_string(p) + "]", f);
        r.check("closed form matches timeline: " + to_string(p), 1.0, f, tol::kExact);
    }

    const auto t2 = fr_state_at({zeus_intervenes, 2});
    const double okok_t2 = born_probability(t2, fr_x_okfail(true) && fr_y_okfail(true));
    const double fail_x_t2 = born_probability(t2, fr_x_okfail(false));
    r.result("t2.P(OK_X,OK_Y)", okok_t2).result("t2.P(fail_X)", fail_x_t2);
    r.check("t2.P(OK_X,OK_Y) = 1/12", 1.0 / 12, okok_t2, tol::kExact);
    r.check("t2.P(fail_X) = 5/6", 5.0 / 6, fail_x_t2, tol::kExact);

    const auto t4 = fr_state_at({zeus_intervenes, 4});
    const double w_ok = born_probability(t4, fr_y_okfail(true));
    r.result("P(w=OK)", w_ok).result("P(w=fail)", born_probability(t4, fr_y_okfail(false)));
    r.check("P(w=OK) = 1/6", 1.0 / 6, w_ok, tol::kExact);

    if (zeus_intervenes) {
        for (bool z : {false, true}) {
            for (bool w : {false, true}) {
                r.result(
                    std::string("P(z=") + (z ? "OK" : "fail") + ",w=" + (w ? "OK" : "fail") + ")",
                    born_probability(t4, fr_zeus_record(z) && fr_y_okfail(w)));
            }
        }
        const double okok = born_probability(t4, fr_zeus_record(true) && fr_y_okfail(true));
        r.check("P(z=OK,w=OK) = 1/12", 1.0 / 12, okok, tol::kExact);
    }

    const double heads = born_probability(t4, fr_heads_record());
    const double w_given_h = conditional_probability(t4, fr_heads_record(), fr_y_okfail(true));
    const double w_given_t = conditional_probability(t4, fr_tails_record(), fr_y_okfail(true));
    const double h_given_w = conditional_probability(t4, fr_y_okfail(true), fr_heads_record());
    r.result("P(heads record)", heads)
        .result("P(w=OK | heads record)", w_given_h)
        .result("P(w=OK | tails record)", w_given_t)
        .result("P(heads record | w=OK)", h_given_w);
    if (zeus_intervenes) {
        r.check("P(heads record) = 1/2", 0.5, heads, tol::kExact);
        r.check("P(w=OK | heads record) = 1/6", 1.0 / 6, w_given_h, tol::kExact);
        r.check("P(w=OK | tails record) = 1/6", 1.0 / 6, w_given_t, tol::kExact);
        r.check("P(heads record | w=OK) = 1/2", 0.5, h_given_w, tol::kExact);
    } else {
        r.check("P(heads record) = 1/3", 1.0 / 3, heads, tol::kExact);
        r.check("P(heads record | w=OK) = 1", 1.0, h_given_w, tol::kExact);
    }

    const auto t5 = fr_state_at({zeus_intervenes, 5});
    const double w_rec = born_probability(t5, ProjectorSpec::basis("W", "OK"));
    r.result("t5.P(W record OK)", w_rec);
    r.check("Wigner's record reproduces P(w=OK)", w_ok, w_rec, tol::kExact);
    return r;
}

// ----------------------------------------------------------------- the audit

/// One inference step, expressed as conditional-probability queries.
struct AuditStep {
    std::string id;
    std::vector<std::string> premises;
    /// Conditional that licenses the step, with its value.
    std::string premise_query;
    std::optional<double> premise_probability;
    /// Conditional that yields the conclusion, with its value.
    std::string query;
    std::optional<double> probability;
    std::string conclusion;
    bool applicable = true;
    bool certain = false;
    bool valid = true;
    std::string note;
};

struct InferenceAudit {
    bool zeus_intervenes = true;
    std::vector<std::pair<std::string, std::string>> observed;
    std::vector<AuditStep> steps;
    bool contradiction = false;
    /// (heads, tails) for each of the following.
    std::array<double, 2> prior{};
    std::array<double, 2> likelihood_w{};
    std::optional<std::array<double, 2>> likelihood_zw;
    std::array<double, 2> posterior{};
    std::array<double, 2> record_marginal{};
    std::array<double, 2> state_posterior{};
};

using Observation = std::vector<std::pair<std::string, std::string>>;

inline Observation default_observation(bool zeus_intervenes) {
    if (zeus_intervenes) return {{"z", "OK"}, {"w", "OK"}};
    return {{"w", "OK"}};
}

namespace detail {

inline bool is_certain(double p) { return p >= 1.0 - tol::kExact; }
inline bool is_impossible(double p) { return p <= tol::kExact; }

inline std::optional<bool> observed_ok(const Observation& obs, const std::string& key) {
    std::optional<bool> out;
    for (const auto& [k, v] : obs) {
        if (k != key) continue;
        if (v != "OK" && v != "fail") {
            throw ConfigurationError("observation " + k + " must be OK or fail, got '" + v + "'");
        }
        const bool ok = v == "OK";
        if (out && *out != ok) throw ConfigurationError("conflicting observations of " + k);
        out = ok;
    }
    return out;
}

inline std::string okfail(bool ok) { return ok ? "OK" : "fail"; }

}  // namespace detail

/**
 * Runs the reasoning chain against the world with or without Zeus.
 *
 *  1   take Zeus's report of z at face value
 *  2   P(fail_X | y=-1/2) = 1 on the t=2 state, so from z infer y via
 *      P(y=+1/2 | z outcome on X) on the same state
 *  3   P(y=-1/2 | heads) = 1 on the t=2 state, so from y infer the coin via
 *      P(tails | y) on the same state
 *  4*  P(w=fail | tails) = 1 on the no-Zeus t=4 state, so from w infer the
 *      coin via P(heads | w) on that state, even when Zeus did intervene
 *  4   Bayes with prior P(coin) at t=0 and likelihoods from the t=4 state of
 *      the actual world
 */
inline InferenceAudit fr_inference_audit(bool zeus_intervenes, const Observation& observed) {
    for (const auto& [k, v] : observed) {
        if (k != "z" && k != "w") throw ConfigurationError("unknown pointer '" + k + "'");
    }
    const auto z_obs = detail::observed_ok(observed, "z");
    const auto w_obs = detail::observed_ok(observed, "w");
    if (z_obs && !zeus_intervenes) {
        throw ConfigurationError("z was not measured: Zeus does not intervene");
    }

    InferenceAudit a;
    a.zeus_intervenes = zeus_intervenes;
    a.observed = observed;

    const auto t2 = fr_state_at({true, 2});
    const auto t4 = fr_state_at({zeus_intervenes, 4});
    const auto t4_no_zeus = fr_state_at({false, 4});

    ProjectorSpec evidence;
    if (z_obs) evidence = evidence && fr_zeus_record(*z_obs);
    if (w_obs) evidence = evidence && fr_y_okfail(*w_obs);
    if (born_probability(t4, evidence) <= tol::kZeroProbability) {
        throw UndefinedConditionalError("observed outcomes have probability zero");
    }

    // Step 1.
    AuditStep s1;
    s1.id = "1";
    s1.premises = {"Zeus's report"};
    if (z_obs) {
        s1.query = "P(z=" + detail::okfail(*z_obs) + ") at t=4";
        s1.probability = born_probability(t4, fr_zeus_record(*z_obs));
        s1.conclusion = "z=" + detail::okfail(*z_obs);
        s1.certain = true;
    } else {
        s1.applicable = false;
        s1.note = "no report of z";
    }
    a.steps.push_back(s1);

    // Step 2.
    AuditStep s2;
    s2.id = "2";
    s2.premises = {"1", "t=2 state, fail/OK on X"};
    s2.premise_query = "P(fail_X | y=-1/2) at t=2";
    s2.premise_probability = conditional_probability(t2, fr_y(false), fr_x_okfail(false));
    std::optional<bool> y_plus;
    if (z_obs) {
        s2.query = "P(y=+1/2 | " + detail::okfail(*z_obs) + "_X) at t=2";
        const double p = conditional_probability(t2, fr_x_okfail(*z_obs), fr_y(true));
        s2.probability = p;
        if (detail::is_certain(p)) y_plus = true;
        if (detail::is_impossible(p)) y_plus = false;
        s2.certain = y_plus.has_value();
        s2.conclusion = y_plus ? (*y_plus ? "y=+1/2" : "y=-1/2") : "y undetermined";
    } else {
        s2.applicable = false;
        s2.note = "needs the conclusion of step 1";
    }
    a.steps.push_back(s2);

    // Step 3.
    AuditStep s3;
    s3.id = "3";
    s3.premises = {"2", "t=2 state, record basis"};
    s3.premise_query = "P(y=-1/2 | heads) at t=2";
    s3.premise_probability = conditional_probability(t2, fr_heads_record(), fr_y(false));
    std::optional<bool> chain_tails;
    if (y_plus) {
        s3.query = std::string("P(tails | ") + (*y_plus ? "y=+1/2" : "y=-1/2") + ") at t=2";
        const double p = conditional_probability(t2, fr_y(*y_plus), fr_tails_record());
        s3.probability = p;
        if (detail::is_certain(p)) chain_tails = true;
        if (detail::is_impossible(p)) chain_tails = false;
        s3.certain = chain_tails.has_value();
        s3.conclusion =
            chain_tails ? (*chain_tails ? "coin=tails" : "coin=heads") : "coin undetermined";
    } else {
        s3.applicable = false;
        s3.note = "needs a certain conclusion from step 2";
    }
    a.steps.push_back(s3);

    // Step 4*.
    AuditStep s4s;
    s4s.id = "4*";
    s4s.premises = {"w observation", "t=4 state without Zeus"};
    s4s.premise_query = "P(w=fail | tails) at t=4 without Zeus";
    s4s.premise_probability =
        conditional_probability(t4_no_zeus, fr_tails_record(), fr_y_okfail(false));
    std::optional<bool> star_heads;
    if (w_obs) {
        s4s.query = "P(heads | w=" + detail::okfail(*w_obs) + ") at t=4 without Zeus";
        const double p =
            conditional_probability(t4_no_zeus, fr_y_okfail(*w_obs), fr_heads_record());
        s4s.probability = p;
        if (detail::is_certain(p)) star_heads = true;
        if (detail::is_impossible(p)) star_heads = false;
        s4s.certain = star_heads.has_value();
        s4s.conclusion =
            star_heads ? (*star_heads ? "coin=heads" : "coin=tails") : "coin undetermined";
        s4s.valid = !zeus_intervenes;
        if (zeus_intervenes) {
            s4s.note =
                "Zeus's measurement at t=3 intervenes; the no-Zeus conditional does not "
                "describe this world";
        }
    } else {
        s4s.applicable = false;
        s4s.note = "no observation of w";
    }
    a.steps.push_back(s4s);

    // Step 4.
    AuditStep s4;
    s4.id = "4";
    s4.premises = {"prior at t=0",
                   std::string("t=4 state ") + (zeus_intervenes ? "with" : "without") + " Zeus"};
    const auto t0 = fr_state_at({zeus_intervenes, 0});
    a.prior = {born_probability(t0, fr_heads_record()), born_probability(t0, fr_tails_record())};
    a.record_marginal = {born_probability(t4, fr_heads_record()),
                         born_probability(t4, fr_tails_record())};
    if (w_obs) {
        for (int i = 0; i < 2; ++i) {
            a.likelihood_w[i] =
                conditional_probability(t4, fr_coin_record(i == 0), fr_y_okfail(*w_obs));
        }
    }
    std::array<double, 2> like = a.likelihood_w;
    if (z_obs) {
        std::array<double, 2> zw{};
        for (int i = 0; i < 2; ++i)
            zw[i] = conditional_probability(t4, fr_coin_record(i == 0), evidence);
        a.likelihood_zw = zw;
        like = zw;
    }
    if (w_obs || z_obs) {
        const double norm = a.prior[0] * like[0] + a.prior[1] * like[1];
        if (norm <= tol::kZeroProbability) {
            throw UndefinedConditionalError(
                "observations have zero likelihood under both coin outcomes");
        }
        a.posterior = {a.prior[0] * like[0] / norm, a.prior[1] * like[1] / norm};
        for (int i = 0; i < 2; ++i) {
            a.state_posterior[i] = conditional_probability(t4, evidence, fr_coin_record(i == 0));
        }
        s4.premise_query = "P(observations | coin record) at t=4";
        s4.query = "posterior P(heads | observations) by Bayes";
        s4.probability = a.posterior[0];
        if (detail::is_certain(a.posterior[0])) {
            s4.certain = true;
            s4.conclusion = "coin=heads";
        } else if (detail::is_impossible(a.posterior[0])) {
            s4.certain = true;
            s4.conclusion = "coin=tails";
        } else {
            s4.conclusion = "no certain conclusion; posterior equals prior";
            if (std::abs(a.posterior[0] - a.prior[0]) > tol::kExact) {
                s4.conclusion = "no certain conclusion";
            }
        }
    } else {
        s4.applicable = false;
        a.posterior = a.prior;
        a.state_posterior = a.record_marginal;
    }
    a.steps.push_back(s4);

    bool heads = false, tails = false;
    for (const auto& s : a.steps) {
        if (!s.applicable || !s.certain) continue;
        heads = heads || s.conclusion == "coin=heads";
        tails = tails || s.conclusion == "coin=tails";
    }
    a.contradiction = heads && tails;
    return a;
}

inline const AuditStep& audit_step(const InferenceAudit& a, const std::string& id) {
    for (const auto& s : a.steps) {
        if (s.id == id) return s;
    }
    throw ConfigurationError("no audit step " + id);
}

// ------------------------------------------------------------ appendix check

/**
 * P(w = fail | tails) read two ways: (i) collapse the t=1 state onto the
 * tails record so s is simply |->>, then let Yvonne measure; (ii) keep the
 * full unitary history including Zeus and condition on the tails record at
 * t=4.
 */
inline ScenarioReport fr_appendix_comparison() {
    ScenarioReport r;
    r.scenario = "fr-appendix";
    const auto l = fr_layout();

    const auto collapsed = project_collapse(fr_state_at({true, 1}), fr_tails_record());
    const double h = 1.0 / std::numbers::sqrt2;
    Matrix right(2, 1);
    right << h, h;
    const double s_right = born_probability(collapsed, ProjectorSpec::subspace({"s"}, right, "->"));
    const auto after_y = apply_operator(collapsed, *fr_event(*l, 2, true));
    const double collapse_reading = born_probability(after_y, fr_y_okfail(false));

    const auto t4 = fr_state_at({true, 4});
    const double unitary_reading =
        conditional_probability(t4, fr_tails_record(), fr_y_okfail(false));
    const double discrepancy = collapse_reading - unitary_reading;

    r.result("P(s in |->> | tails), collapse", s_right)
        .result("P(w=fail | tails), collapse reading", collapse_reading)
        .result("P(w=fail | tails), unitary reading", unitary_reading)
        .result("discrepancy", discrepancy);
    r.check("s prepared in |->> after collapse", 1.0, s_right, tol::kExact);
    r.check("collapse reading = 1", 1.0, collapse_reading, tol::kExact);
    r.check("unitary reading = 5/6", 5.0 / 6, unitary_reading, tol::kExact);
    r.check("discrepancy = 1/6", 1.0 / 6, discrepancy, tol::kExact);
    return r;
}

}  // namespace friendlab::scenarios
