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
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "friendlab/bell.hpp"

namespace friendlab::cli {

/**
 * Brute-force feasibility of p >= 0 over the 16 deterministic assignments
 * with sum(p) = 1 and one equality per supplied correlation or marginal.
 * Phase-I simplex on a dense tableau with Bland's rule, deliberately sharing
 * nothing with bell::fine_joint_exists.
 */
class SimplexOracle {
   public:
    struct Result {
        bool feasible;
        double infeasibility;  // optimum of the phase-I objective
    };

    static Result solve(const bell::CorrelationSet& corrs, double tolerance = 1e-9) {
        std::vector<std::vector<double>> rows;
        std::vector<double> rhs;
        rows.emplace_back(bell::kAssignments, 1.0);
        rhs.push_back(1.0);
        for (auto pair : bell::kPairs) {
            if (!corrs.has(pair)) continue;
            const auto [u, v] = bell::members(pair);
            std::vector<double> row(bell::kAssignments);
            for (std::size_t l = 0; l < bell::kAssignments; ++l) {
                row[l] = bell::assignment_value(l, u) * bell::assignment_value(l, v);
            }
            rows.push_back(row);
            rhs.push_back(corrs.get(pair));
        }
        for (auto var : bell::kVariables) {
            const auto m = corrs.marginal(var);
            if (!m) continue;
            std::vector<double> row(bell::kAssignments);
            for (std::size_t l = 0; l < bell::kAssignments; ++l) {
                row[l] = bell::assignment_value(l, var);
            }
            rows.push_back(row);
            rhs.push_back(*m);
        }
        const double opt = phase_one(rows, rhs);
        return {opt <= tolerance, opt};
    }

   private:
    static double phase_one(std::vector<std::vector<double>> a, std::vector<double> b) {
        const std::size_t m = a.size();
        const std::size_t n = a.front().size();
        const std::size_t cols = n + m;  // structural then artificial
        for (std::size_t i = 0; i < m; ++i) {
            if (b[i] < 0) {
                for (auto& x : a[i]) x = -x;
                b[i] = -b[i];
            }
        }
        std::vector<std::vector<double>> t(m, std::vector<double>(cols + 1, 0.0));
        std::vector<std::size_t> basis(m);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < n; ++j) t[i][j] = a[i][j];
            t[i][n + i] = 1.0;
            t[i][cols] = b[i];
            basis[i] = n + i;
        }
        constexpr double eps = 1e-12;
        for (int iter = 0; iter < 10000; ++iter) {
            // Reduced costs of minimising the sum of artificials.
            std::optional<std::size_t> enter;
            for (std::size_t j = 0; j < cols && !enter; ++j) {
                bool basic = false;
                for (auto bj : basis) basic = basic || bj == j;
                if (basic) continue;
                double rc = j >= n ? 1.0 : 0.0;
                for (std::size_t i = 0; i < m; ++i) {
                    if (basis[i] >= n) rc -= t[i][j];
                }
                if (rc < -eps) enter = j;
            }
            if (!enter) break;
            const std::size_t e = *enter;
            std::optional<std::size_t> leave;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < m; ++i) {
                if (t[i][e] <= eps) continue;
                const double ratio = t[i][cols] / t[i][e];
                if (ratio < best - eps ||
                    (std::abs(ratio - best) <= eps && leave && basis[i] < basis[*leave])) {
                    best = ratio;
                    leave = i;
                }
            }
            if (!leave) break;  // unbounded cannot happen with a bounded objective
            const std::size_t r = *leave;
            const double piv = t[r][e];
            for (auto& x : t[r]) x /= piv;
            for (std::size_t i = 0; i < m; ++i) {
                if (i == r || t[i][e] == 0.0) continue;
                const double f = t[i][e];
                for (std::size_t j = 0; j <= cols; ++j) t[i][j] -= f * t[r][j];
            }
            basis[r] = e;
        }
        double obj = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            if (basis[i] >= n) obj += t[i][cols];
        }
        return obj;
    }
};

}  // namespace friendlab::cli
