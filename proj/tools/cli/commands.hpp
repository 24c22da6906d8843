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

#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "friendlab/bell.hpp"
#include "friendlab/errors.hpp"
#include "friendlab/scenarios/brukner.hpp"
#include "friendlab/scenarios/epr_undo.hpp"
#include "friendlab/scenarios/frauchiger_renner.hpp"
#include "render.hpp"

namespace friendlab::cli {

// ------------------------------------------------------------------ parsing

inline std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.emplace_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

/// Parses a whole token as a finite double.
inline double parse_double(const std::string& token, const std::string& what) {
    double v = 0.0;
    const char* first = token.data();
    const char* last = first + token.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (token.empty() || ec != std::errc{} || ptr != last || !std::isfinite(v)) {
        throw ConfigurationError("malformed " + what + ": '" + token + "'");
    }
    return v;
}

template <std::size_t N>
std::array<double, N> parse_list(const std::string& text, const std::string& what) {
    const auto parts = split(text, ',');
    if (parts.size() != N) {
        throw ConfigurationError(what + " needs exactly " + std::to_string(N) +
                                 " comma-separated values, got '" + text + "'");
    }
    std::array<double, N> out{};
    for (std::size_t i = 0; i < N; ++i) out[i] = parse_double(parts[i], what);
    return out;
}

/// "z=OK,w=OK" -> {{"z","OK"},{"w","OK"}}.
inline scenarios::Observation parse_observation(const std::string& text) {
    scenarios::Observation out;
    for (const auto& item : split(text, ',')) {
        const auto kv = split(item, '=');
        if (kv.size() != 2 || kv[0].empty() || kv[1].empty()) {
            throw ConfigurationError("malformed observation '" + item + "', expected key=value");
        }
        out.emplace_back(kv[0], kv[1]);
    }
    return out;
}

/// "a=0,c=0.5" -> marginals on the named variables.
inline void parse_marginals(const std::string& text, bell::CorrelationSet& corrs) {
    for (const auto& item : split(text, ',')) {
        const auto kv = split(item, '=');
        if (kv.size() != 2 || kv[0].size() != 1 || kv[0][0] < 'a' || kv[0][0] > 'd') {
            throw ConfigurationError("malformed marginal '" + item + "', expected a..d=value");
        }
        corrs.set_marginal(static_cast<bell::Variable>(kv[0][0] - 'a'),
                           parse_double(kv[1], "marginal"));
    }
}

// ---------------------------------------------------------------- documents

inline Document brukner_document(double theta, scenarios::BruknerVariant variant) {
    Document doc;
    doc.report = scenarios::brukner_extended_run({theta, variant});
    doc.report.scenario = "brukner";
    const auto pre = scenarios::brukner_preliminary_run();
    for (const auto& [k, v] : pre.results) doc.report.result("preliminary." + k, v);
    doc.report.append_checks(pre, "preliminary: ");
    return doc;
}

inline Json audit_to_json(const scenarios::InferenceAudit& a) {
    const auto pair = [](const std::array<double, 2>& p) {
        Json j = Json::object();
        j["heads"] = p[0];
        j["tails"] = p[1];
        return j;
    };
    Json j = Json::object();
    j["zeus_intervenes"] = a.zeus_intervenes;
    Json obs = Json::object();
    for (const auto& [k, v] : a.observed) obs[k] = v;
    j["observed"] = obs;
    j["contradiction"] = a.contradiction;
    Json steps = Json::array();
    for (const auto& s : a.steps) {
        Json sj = Json::object();
        sj["id"] = s.id;
        sj["premises"] = s.premises;
        sj["premise_query"] = s.premise_query;
        sj["premise_probability"] = s.premise_probability ? Json(*s.premise_probability) : Json();
        sj["query"] = s.query;
        sj["probability"] = s.probability ? Json(*s.probability) : Json();
        sj["conclusion"] = s.conclusion;
        sj["applicable"] = s.applicable;
        sj["certain"] = s.certain;
        sj["valid"] = s.valid;
        sj["note"] = s.note;
        steps.push_back(sj);
    }
    j["steps"] = steps;
    j["prior"] = pair(a.prior);
    j["likelihood_w"] = pair(a.likelihood_w);
    if (a.likelihood_zw) j["likelihood_zw"] = pair(*a.likelihood_zw);
    j["posterior"] = pair(a.posterior);
    j["record_marginal"] = pair(a.record_marginal);
    j["state_posterior"] = pair(a.state_posterior);
    return j;
}

inline Document fr_document(bool zeus, const std::optional<scenarios::Observation>& observed,
                            bool audit) {
    Document doc;
    doc.report = scenarios::fr_outcome_table(zeus);
    doc.report.scenario = "fr";
    const auto app = scenarios::fr_appendix_comparison();
    for (const auto& [k, v] : app.results) doc.report.result("appendix." + k, v);
    doc.report.append_checks(app, "appendix: ");
    if (audit || observed) {
        const auto obs = observed ? *observed : scenarios::default_observation(zeus);
        std::string text;
        for (const auto& [k, v] : obs) text += (text.empty() ? "" : ",") + k + "=" + v;
        doc.report.param("observe", text);
        const auto a = scenarios::fr_inference_audit(zeus, obs);
        doc.report.result("contradiction", a.contradiction);
        doc.extra["audit"] = audit_to_json(a);
    }
    return doc;
}

inline Document epr_document(const scenarios::EprUndoConfig& cfg, bool keep_records) {
    if (cfg.mode == scenarios::EprMode::collapse && cfg.trials == 0) {
        throw ConfigurationError("collapse mode has no analytic report; pass --trials N >= 2");
    }
    if (cfg.trials == 1) throw ConfigurationError("--trials must be 0 or at least 2");
    Document doc;
    scenarios::EprSampleResult samples;
    doc.report = scenarios::epr_undo_run(cfg, &samples, keep_records);
    if (keep_records && cfg.trials > 0) doc.records = std::move(samples.records);
    return doc;
}

inline std::string assignment_label(std::size_t lambda) {
    std::string s;
    for (auto v : bell::kVariables) s += bell::assignment_value(lambda, v) > 0 ? '+' : '-';
    return s;
}

inline Document fine_document(const bell::CorrelationSet& corrs) {
    Document doc;
    auto& r = doc.report;
    r.scenario = "fine-check";
    for (auto p : bell::kPairs) r.param("corr(" + bell::to_string(p) + ")", corrs.get(p));
    std::string used = "correlations only";
    if (corrs.marginal_count() > 0) {
        used = "correlations + marginals";
        for (auto v : bell::kVariables) {
            if (const auto m = corrs.marginal(v)) {
                r.param("<" + bell::to_string(v) + ">", *m);
                used += " " + bell::to_string(v);
            }
        }
    }
    r.param("constraints", used);

    for (std::uint8_t i = 0; i < bell::ChshVariant::kCount; ++i) {
        const bell::ChshVariant var{i};
        r.result("CHSH[" + var.name() + "]", bell::chsh_value(corrs, var));
    }
    const auto best = bell::chsh_maximum(corrs);
    r.result("CHSH max", best.value).result("CHSH max variant", best.variant.name());

    const auto res = bell::fine_joint_exists(corrs);
    r.result("feasible", res.feasible);
    if (res.witness) {
        const double err = bell::witness_error(corrs, *res.witness);
        if (err > tol::kComposed) {
            throw NumericalContractViolation("witness misses its constraints by " +
                                             format_double(err));
        }
        r.result("witness error", err);
        Json w = Json::object();
        for (std::size_t l = 0; l < bell::kAssignments; ++l) {
            w[assignment_label(l)] = (*res.witness)[l];
        }
        doc.extra["witness"] = w;
        r.check("witness reproduces inputs", 0.0, err, tol::kComposed,
                scenarios::Relation::at_most);
    }
    if (res.violated) {
        r.result("violated inequality", res.violated->id)
            .result("violated value", res.violated->value)
            .result("violated bound", res.violated->bound);
        // CHSH certificates exceed their bound; positivity certificates fall below it.
        const auto& v = *res.violated;
        const bool chsh = v.id.find("P(") != 0;
        r.check_flag("certificate violates its bound", true,
                     chsh ? v.value > v.bound : v.value < v.bound);
    } else if (!res.feasible) {
        r.notes.push_back("infeasible; no single inequality certifies a partial marginal set");
    }
    return doc;
}

}  // namespace friendlab::cli
