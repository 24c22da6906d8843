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

#include <cstdint>
#include <iomanip>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "friendlab/core/counter_rng.hpp"
#include "friendlab/scenarios/epr_undo.hpp"
#include "friendlab/scenarios/report.hpp"
#include "json_writer.hpp"

namespace friendlab::cli {

inline constexpr const char* kSchemaVersion = "1";

enum class Format { table, json, csv };

/// Everything one subcommand emits.
struct Document {
    scenarios::ScenarioReport report;
    /// Structured results (audit steps, witnesses) merged into "results".
    Json extra = Json::object();
    std::optional<std::vector<scenarios::TrialRecord>> records;
};

inline Json conventions() {
    Json c = Json::object();
    c["basis_order"] = "first register is the most significant digit";
    c["spin_observable"] = "sigma(phi) = cos(phi) Z + sin(phi) X";
    c["spin_eigenstates"] =
        "up_phi = (cos(phi/2), sin(phi/2)), down_phi = (-sin(phi/2), cos(phi/2))";
    c["ok_fail"] = "fail = (o1 + o2)/sqrt2, OK = (o1 - o2)/sqrt2";
    c["pointer_completion"] = "cyclic shift on the pointer register";
    c["outcome_sign"] = "+1 for up/first eigenvector, -1 otherwise";
    c["rng"] = std::string(CounterRng::kName);
    c["float_format"] = "%.17g";
    return c;
}

inline Json to_json(const scenarios::Value& v) {
    return std::visit([](const auto& x) { return Json(x); }, v);
}

inline Json to_json(const Document& doc) {
    const auto& r = doc.report;
    Json j = Json::object();
    j["schema_version"] = kSchemaVersion;
    j["scenario"] = r.scenario;
    j["conventions"] = conventions();
    Json params = Json::object();
    for (const auto& [k, v] : r.parameters) params[k] = to_json(v);
    j["parameters"] = params;
    Json results = Json::object();
    for (const auto& [k, v] : r.results) results[k] = to_json(v);
    for (auto it = doc.extra.begin(); it != doc.extra.end(); ++it) results[it.key()] = it.value();
    j["results"] = results;
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        Json cj = Json::object();
        cj["name"] = c.name;
        cj["expected"] = c.expected;
        cj["actual"] = c.actual;
        cj["tolerance"] = c.tolerance;
        cj["relation"] = scenarios::to_string(c.relation);
        cj["pass"] = c.pass;
        checks.push_back(cj);
    }
    j["checks"] = checks;
    j["all_pass"] = r.all_pass();
    j["notes"] = r.notes;
    return j;
}

namespace detail {

inline std::string plain(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_float()) return format_double(v.get<double>());
    if (v.is_null()) return "";
    return v.dump();
}

inline std::string plain(const scenarios::Value& v) { return plain(to_json(v)); }

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

/// Flattened (path, value) rows of the structured extras.
inline std::vector<std::pair<std::string, std::string>> flat_extra(const Json& extra) {
    std::vector<std::pair<std::string, std::string>> out;
    if (extra.empty()) return out;
    const Json flat = extra.flatten();
    for (auto it = flat.begin(); it != flat.end(); ++it) {
        std::string key = it.key();
        if (!key.empty() && key.front() == '/') key.erase(0, 1);
        for (auto& ch : key) {
            if (ch == '/') ch = '.';
        }
        out.emplace_back(key, plain(it.value()));
    }
    return out;
}

template <typename Rows>
std::size_t key_width(const Rows& rows) {
    std::size_t w = 0;
    for (const auto& row : rows) w = std::max(w, row.first.size());
    return w;
}

}  // namespace detail

inline void write_table(std::ostream& os, const Document& doc) {
    const auto& r = doc.report;
    os << "scenario: " << r.scenario << "\n";
    if (!r.parameters.empty()) {
        os << "\nparameters\n";
        const auto w = detail::key_width(r.parameters);
        for (const auto& [k, v] : r.parameters) {
            os << "  " << std::left << std::setw(static_cast<int>(w)) << k << "  "
               << detail::plain(v) << "\n";
        }
    }
    std::vector<std::pair<std::string, std::string>> rows;
    for (const auto& [k, v] : r.results) rows.emplace_back(k, detail::plain(v));
    for (auto& row : detail::flat_extra(doc.extra)) rows.push_back(std::move(row));
    if (!rows.empty()) {
        os << "\nresults\n";
        const auto w = detail::key_width(rows);
        for (const auto& [k, v] : rows) {
            os << "  " << std::left << std::setw(static_cast<int>(w)) << k << "  " << v << "\n";
        }
    }
    if (!r.checks.empty()) {
        os << "\nchecks\n";
        for (const auto& c : r.checks) {
            os << "  " << (c.pass ? "PASS" : "FAIL") << "  " << c.name << "  (expected "
               << format_double(c.expected) << ", actual " << format_double(c.actual) << ", "
               << scenarios::to_string(c.relation) << " tol " << format_double(c.tolerance)
               << ")\n";
        }
    }
    for (const auto& n : r.notes) os << "\nnote: " << n << "\n";
}

inline void write_csv(std::ostream& os, const Document& doc) {
    if (doc.records) {
        os << "trial,pair_or_full,out_a,out_b,out_c,out_d\n";
        for (const auto& t : *doc.records) {
            os << t.trial << "," << t.pair_or_full;
            for (const auto& x : t.out) {
                os << ",";
                if (x) os << *x;
            }
            os << "\n";
        }
        return;
    }
    using detail::csv_field;
    const auto& r = doc.report;
    os << "section,key,value\n";
    for (const auto& [k, v] : r.parameters) {
        os << "parameter," << csv_field(k) << "," << csv_field(detail::plain(v)) << "\n";
    }
    for (const auto& [k, v] : r.results) {
        os << "result," << csv_field(k) << "," << csv_field(detail::plain(v)) << "\n";
    }
    for (const auto& [k, v] : detail::flat_extra(doc.extra)) {
        os << "result," << csv_field(k) << "," << csv_field(v) << "\n";
    }
    for (const auto& c : r.checks) {
        os << "check," << csv_field(c.name) << "," << (c.pass ? "pass" : "fail") << "\n";
    }
}

inline void write_document(std::ostream& os, const Document& doc, Format f) {
    switch (f) {
        case Format::table: write_table(os, doc); return;
        case Format::json: write_json(os, to_json(doc)); return;
        case Format::csv: write_csv(os, doc); return;
    }
}

}  // namespace friendlab::cli
