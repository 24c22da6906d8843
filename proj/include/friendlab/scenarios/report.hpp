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

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace friendlab::scenarios {

using Value = std::variant<double, std::int64_t, bool, std::string>;

/// How a check compares `actual` against `expected`.
enum class Relation {
    near,      // |actual - expected| <= tolerance
    at_most,   // actual <= expected + tolerance
    at_least,  // actual >= expected - tolerance
};

inline const char* to_string(Relation r) {
    switch (r) {
        case Relation::near: return "near";
        case Relation::at_most: return "at_most";
        case Relation::at_least: return "at_least";
    }
    return "?";
}

struct Check {
    std::string name;
    double expected;
    double actual;
    double tolerance;
    Relation relation = Relation::near;
    bool pass = false;
};

inline bool evaluate(Relation r, double expected, double actual, double tolerance) {
    if (!std::isfinite(actual)) return false;
    switch (r) {
        case Relation::near: return std::abs(actual - expected) <= tolerance;
        case Relation::at_most: return actual <= expected + tolerance;
        case Relation::at_least: return actual >= expected - tolerance;
    }
    return false;
}

/// Ordered, serialisable outcome of one scenario run.
struct ScenarioReport {
    std::string scenario;
    std::vector<std::pair<std::string, Value>> parameters;
    std::vector<std::pair<std::string, Value>> results;
    std::vector<Check> checks;
    std::vector<std::string> notes;

    ScenarioReport& param(std::string key, Value v) {
        parameters.emplace_back(std::move(key), std::move(v));
        return *this;
    }
    ScenarioReport& result(std::string key, Value v) {
        results.emplace_back(std::move(key), std::move(v));
        return *this;
    }
    bool check(std::string name, double expected, double actual, double tolerance,
               Relation relation = Relation::near) {
        const bool ok = evaluate(relation, expected, actual, tolerance);
        checks.push_back({std::move(name), expected, actual, tolerance, relation, ok});
        return ok;
    }
    bool check_flag(std::string name, bool expected, bool actual) {
        return check(std::move(name), expected ? 1.0 : 0.0, actual ? 1.0 : 0.0, 0.0);
    }
    bool all_pass() const {
        for (const auto& c : checks) {
            if (!c.pass) return false;
        }
        return true;
    }
    void append_checks(const ScenarioReport& other, const std::string& prefix) {
        for (auto c : other.checks) {
            c.name = prefix + c.name;
            checks.push_back(std::move(c));
        }
    }
};

}  // namespace friendlab::scenarios
