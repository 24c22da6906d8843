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
 * CHSH functionals over the four-cycle of +-1 variables a-b-c-d-a, a
 * joint-distribution feasibility checker and sample estimators.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "friendlab/core/tolerance.hpp"
#include "friendlab/errors.hpp"

namespace friendlab::bell {

enum class Variable { a = 0, b = 1, c = 2, d = 3 };
enum class Pair { ab = 0, bc = 1, cd = 2, ad = 3 };

inline constexpr std::array<Pair, 4> kPairs{Pair::ab, Pair::bc, Pair::cd, Pair::ad};
inline constexpr std::array<Variable, 4> kVariables{Variable::a, Variable::b, Variable::c,
                                                    Variable::d};

inline std::string to_string(Pair p) {
    static constexpr std::array<const char*, 4> n{"ab", "bc", "cd", "ad"};
    return n[static_cast<std::size_t>(p)];
}
inline std::string to_string(Variable v) {
    static constexpr std::array<const char*, 4> n{"a", "b", "c", "d"};
    return n[static_cast<std::size_t>(v)];
}

inline std::array<Variable, 2> members(Pair p) {
    switch (p) {
        case Pair::ab: return {Variable::a, Variable::b};
        case Pair::bc: return {Variable::b, Variable::c};
        case Pair::cd: return {Variable::c, Variable::d};
        case Pair::ad: return {Variable::a, Variable::d};
    }
    throw ContractError("bad pair");
}

/// Pairwise correlations and optional single-variable means, each in [-1, 1].
class CorrelationSet {
   public:
    CorrelationSet() = default;

    /// Convenience: all four correlations, no marginals.
    static CorrelationSet of(double ab, double bc, double cd, double ad) {
        CorrelationSet s;
        s.set(Pair::ab, ab);
        s.set(Pair::bc, bc);
        s.set(Pair::cd, cd);
        s.set(Pair::ad, ad);
        return s;
    }

    /// Adds a constraint. Restating a value is allowed; contradicting one is
    /// an error.
    CorrelationSet& set(Pair p, double value) {
        store(pairs_[static_cast<std::size_t>(p)], value, "corr(" + to_string(p) + ")");
        return *this;
    }
    CorrelationSet& set_marginal(Variable v, double value) {
        store(marginals_[static_cast<std::size_t>(v)], value, "<" + to_string(v) + ">");
        return *this;
    }

    bool has(Pair p) const { return pairs_[static_cast<std::size_t>(p)].has_value(); }
    bool has_marginal(Variable v) const {
        return marginals_[static_cast<std::size_t>(v)].has_value();
    }
    bool complete() const {
        for (auto p : kPairs) {
            if (!has(p)) return false;
        }
        return true;
    }
    std::size_t marginal_count() const {
        std::size_t n = 0;
        for (auto v : kVariables) n += has_marginal(v) ? 1 : 0;
        return n;
    }

    double get(Pair p) const {
        const auto& v = pairs_[static_cast<std::size_t>(p)];
        if (!v) throw ConfigurationError("correlation " + to_string(p) + " is missing");
        return *v;
    }
    std::optional<double> marginal(Variable v) const {
        return marginals_[static_cast<std::size_t>(v)];
    }

   private:
    static void store(std::optional<double>& slot, double value, const std::string& what) {
        if (!std::isfinite(value) || value < -1.0 || value > 1.0) {
            throw ConfigurationError(what + " must lie in [-1, 1]");
        }
        if (slot && std::abs(*slot - value) > tol::kExact) {
            throw ConfigurationError("inconsistent duplicate constraint on " + what);
        }
        slot = value;
    }

    std::array<std::optional<double>, 4> pairs_;
    std::array<std::optional<double>, 4> marginals_;
};

/**
 * Signed CHSH combination s_ab E_ab + s_bc E_bc + s_cd E_cd + s_ad E_ad with
 * an odd number of minus signs; each is bounded by 2 for any joint
 * distribution. Variants 0..3 carry one minus sign (on ab, bc, cd, ad);
 * variants 4..7 are their negations.
 */
struct ChshVariant {
    std::uint8_t id = 3;

    static constexpr std::size_t kCount = 8;
    static ChshVariant minus_on(Pair p) { return {static_cast<std::uint8_t>(p)}; }
    /// E_ab + E_bc + E_cd - E_ad.
    static ChshVariant standard() { return minus_on(Pair::ad); }

    std::array<int, 4> signs() const {
        std::array<int, 4> s{1, 1, 1, 1};
        s[id % 4] = -1;
        if (id >= 4) {
            for (auto& x : s) x = -x;
        }
        return s;
    }

    std::string name() const {
        const auto s = signs();
        std::string out;
        for (std::size_t i = 0; i < 4; ++i) {
            out += s[i] > 0 ? '+' : '-';
            out += to_string(kPairs[i]);
        }
        return out;
    }
};

inline double chsh_value(const CorrelationSet& corrs, ChshVariant variant) {
    const auto s = variant.signs();
    double v = 0.0;
    for (std::size_t i = 0; i < 4; ++i) v += s[i] * corrs.get(kPairs[i]);
    return v;
}

struct ChshMaximum {
    ChshVariant variant;
    double value;
};

/// Largest of the eight variants (first one wins ties).
inline ChshMaximum chsh_maximum(const CorrelationSet& corrs) {
    ChshMaximum best{ChshVariant{0}, chsh_value(corrs, ChshVariant{0})};
    for (std::uint8_t i = 1; i < ChshVariant::kCount; ++i) {
        const double v = chsh_value(corrs, ChshVariant{i});
        if (v > best.value) best = {ChshVariant{i}, v};
    }
    return best;
}

/// Sign of variable `v` in deterministic assignment `lambda` (bit 3 = a,
/// bit 0 = d; a clear bit means +1).
inline int assignment_value(std::size_t lambda, Variable v) {
    return ((lambda >> (3 - static_cast<std::size_t>(v))) & 1u) ? -1 : 1;
}

inline constexpr std::size_t kAssignments = 16;

struct ViolatedInequality {
    std::string id;
    double value;
    double bound;
};

struct FeasibilityResult {
    bool feasible = false;
    std::optional<std::array<double, kAssignments>> witness;
    std::optional<ViolatedInequality> violated;
};

namespace detail {

/// One row per constraint: the +-1 (or product) feature of each assignment.
struct ConstraintSystem {
    Eigen::MatrixXd a;
    Eigen::VectorXd b;
};

inline ConstraintSystem constraint_system(const CorrelationSet& corrs) {
    std::vector<std::array<double, kAssignments>> rows;
    std::vector<double> rhs;
    rows.push_back({});
    rows.back().fill(1.0);
    rhs.push_back(1.0);
    for (auto p : kPairs) {
        if (!corrs.has(p)) continue;
        const auto [u, v] = members(p);
        std::array<double, kAssignments> r{};
        for (std::size_t l = 0; l < kAssignments; ++l) {
            r[l] = assignment_value(l, u) * assignment_value(l, v);
        }
        rows.push_back(r);
        rhs.push_back(corrs.get(p));
    }
    for (auto v : kVariables) {
        if (!corrs.has_marginal(v)) continue;
        std::array<double, kAssignments> r{};
        for (std::size_t l = 0; l < kAssignments; ++l) r[l] = assignment_value(l, v);
        rows.push_back(r);
        rhs.push_back(*corrs.marginal(v));
    }
    ConstraintSystem s{Eigen::MatrixXd(static_cast<Eigen::Index>(rows.size()), 16),
                       Eigen::VectorXd(static_cast<Eigen::Index>(rows.size()))};
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t l = 0; l < kAssignments; ++l) {
            s.a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(l)) = rows[i][l];
        }
        s.b[static_cast<Eigen::Index>(i)] = rhs[i];
    }
    return s;
}

inline double residual(const ConstraintSystem& s, const Eigen::VectorXd& p) {
    return (s.a * p - s.b).cwiseAbs().maxCoeff();
}

/// Clamps tiny negatives, renormalises and accepts if the system still holds.
inline std::optional<std::array<double, kAssignments>> accept(const ConstraintSystem& s,
                                                              Eigen::VectorXd p) {
    if (p.minCoeff() < -1e-10) return std::nullopt;
    p = p.cwiseMax(0.0);
    p /= p.sum();
    if (residual(s, p) > tol::kComposed) return std::nullopt;
    std::array<double, kAssignments> w{};
    for (std::size_t l = 0; l < kAssignments; ++l) w[l] = p[static_cast<Eigen::Index>(l)];
    return w;
}

/// Basic feasible solutions of {A p = b, p >= 0}: try every column subset of
/// size rank(A). The rows are distinct characters of Z_2^4, hence
/// independent, so rank(A) = rows.
inline std::optional<std::array<double, kAssignments>> enumerate_vertices(
    const ConstraintSystem& s) {
    const auto m = static_cast<int>(s.a.rows());
    std::vector<int> cols(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) cols[static_cast<std::size_t>(i)] = i;
    Eigen::MatrixXd basis(m, m);
    while (true) {
        for (int j = 0; j < m; ++j) basis.col(j) = s.a.col(cols[static_cast<std::size_t>(j)]);
        Eigen::FullPivLU<Eigen::MatrixXd> lu(basis);
        if (lu.isInvertible()) {
            const Eigen::VectorXd x = lu.solve(s.b);
            Eigen::VectorXd p = Eigen::VectorXd::Zero(16);
            for (int j = 0; j < m; ++j) p[cols[static_cast<std::size_t>(j)]] = x[j];
            if (auto w = accept(s, p)) return w;
        }
        int i = m - 1;
        while (i >= 0 && cols[static_cast<std::size_t>(i)] == 16 - m + i) --i;
        if (i < 0) break;
        ++cols[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < m; ++j) {
            cols[static_cast<std::size_t>(j)] = cols[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    return std::nullopt;
}

/// Most violated positivity constraint P(u = s, v = t) >= 0 of one edge,
/// usable when both of its marginals are fixed.
inline std::optional<ViolatedInequality> edge_positivity(const CorrelationSet& corrs) {
    std::optional<ViolatedInequality> worst;
    for (auto p : kPairs) {
        const auto [u, v] = members(p);
        if (!corrs.has(p) || !corrs.has_marginal(u) || !corrs.has_marginal(v)) continue;
        for (int su : {1, -1}) {
            for (int sv : {1, -1}) {
                const double val = (1.0 + su * *corrs.marginal(u) + sv * *corrs.marginal(v) +
                                    su * sv * corrs.get(p)) /
                                   4.0;
                if (val < -tol::kComposed && (!worst || val < worst->value)) {
                    worst = ViolatedInequality{"P(" + to_string(u) + (su > 0 ? "=+1," : "=-1,") +
                                                   to_string(v) + (sv > 0 ? "=+1)>=0" : "=-1)>=0"),
                                               val, 0.0};
                }
            }
        }
    }
    return worst;
}

}  // namespace detail

/**
 * Decides whether some probability distribution over the 16 assignments of
 * (a, b, c, d) reproduces every supplied correlation and marginal.
 *
 * Feasible results carry a witness; infeasible ones carry the most violated
 * CHSH variant when one exceeds 2, otherwise (with both marginals of an edge
 * fixed) the violated positivity constraint of that edge. With a partial
 * marginal set no certificate is guaranteed.
 */
inline FeasibilityResult fine_joint_exists(const CorrelationSet& corrs) {
    const auto sys = detail::constraint_system(corrs);
    FeasibilityResult out;

    // Minimum-norm solution A^T b / 16 (rows are orthogonal, each of norm^2 16).
    const Eigen::VectorXd fourier = sys.a.transpose() * sys.b / 16.0;
    auto w = detail::accept(sys, fourier);
    if (!w) w = detail::enumerate_vertices(sys);
    if (w) {
        out.feasible = true;
        out.witness = w;
        return out;
    }
    if (corrs.complete()) {
        const auto best = chsh_maximum(corrs);
        if (best.value > 2.0 + tol::kComposed) {
            out.violated = ViolatedInequality{best.variant.name(), best.value, 2.0};
            return out;
        }
    }
    out.violated = detail::edge_positivity(corrs);
    return out;
}

/// Correlations (and marginals) implied by a distribution over assignments.
inline CorrelationSet correlations_of(const std::array<double, kAssignments>& p,
                                      bool with_marginals = false) {
    CorrelationSet s;
    for (auto pair : kPairs) {
        const auto [u, v] = members(pair);
        double e = 0.0;
        for (std::size_t l = 0; l < kAssignments; ++l) {
            e += p[l] * assignment_value(l, u) * assignment_value(l, v);
        }
        s.set(pair, std::clamp(e, -1.0, 1.0));
    }
    if (with_marginals) {
        for (auto v : kVariables) {
            double e = 0.0;
            for (std::size_t l = 0; l < kAssignments; ++l) e += p[l] * assignment_value(l, v);
            s.set_marginal(v, std::clamp(e, -1.0, 1.0));
        }
    }
    return s;
}

/// Largest deviation between a witness and the constraints it should meet.
inline double witness_error(const CorrelationSet& corrs,
                            const std::array<double, kAssignments>& p) {
    const auto sys = detail::constraint_system(corrs);
    Eigen::VectorXd v(16);
    for (std::size_t l = 0; l < kAssignments; ++l) v[static_cast<Eigen::Index>(l)] = p[l];
    double err = detail::residual(sys, v);
    for (double x : p) err = std::max(err, -x);
    return err;
}

/// One sampled row: +-1 per variable, or empty where not sampled.
using OutcomeRow = std::array<std::optional<int>, 4>;

struct Estimate {
    double value;
    double stderr_;
    std::size_t n;
};

/// Mean of products over rows where both members of `pair` are present;
/// standard error = sample standard deviation / sqrt(n).
inline Estimate correlation_from_samples(const std::vector<OutcomeRow>& rows, Pair pair) {
    const auto [u, v] = members(pair);
    std::int64_t sum = 0;
    std::size_t n = 0;
    for (const auto& r : rows) {
        const auto& x = r[static_cast<std::size_t>(u)];
        const auto& y = r[static_cast<std::size_t>(v)];
        if (!x || !y) continue;
        if (std::abs(*x) != 1 || std::abs(*y) != 1) {
            throw ConfigurationError("sample outcomes must be +1 or -1");
        }
        sum += *x * *y;
        ++n;
    }
    if (n < 2) {
        throw ConfigurationError("correlation " + to_string(pair) + " needs at least 2 samples");
    }
    const double mean = static_cast<double>(sum) / static_cast<double>(n);
    // Products are +-1, so the sample variance has a closed form.
    const double var =
        std::max(0.0, (1.0 - mean * mean) * static_cast<double>(n) / static_cast<double>(n - 1));
    return {mean, std::sqrt(var / static_cast<double>(n)), n};
}

/// CHSH variant evaluated on complete rows with integer arithmetic, so the
/// bound |S| <= 2 holds exactly for any table.
inline double empirical_chsh(const std::vector<OutcomeRow>& rows,
                             ChshVariant variant = ChshVariant::standard()) {
    const auto s = variant.signs();
    std::int64_t total = 0;
    std::int64_t n = 0;
    for (const auto& r : rows) {
        bool full = true;
        for (const auto& x : r) full = full && x.has_value();
        if (!full) continue;
        std::int64_t t = 0;
        for (std::size_t i = 0; i < 4; ++i) {
            const auto [u, v] = members(kPairs[i]);
            t += s[i] * *r[static_cast<std::size_t>(u)] * *r[static_cast<std::size_t>(v)];
        }
        total += t;
        ++n;
    }
    if (n == 0) throw ConfigurationError("no complete four-tuples to evaluate");
    return static_cast<double>(total) / static_cast<double>(n);
}

}  // namespace friendlab::bell
