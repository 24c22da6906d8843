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

#include <algorithm>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "friendlab/core/local_ops.hpp"
#include "friendlab/core/register_layout.hpp"
#include "friendlab/core/tolerance.hpp"
#include "friendlab/errors.hpp"

namespace friendlab {

/// Computational-basis clause: register is in one of `names`.
struct BasisClause {
    std::string register_label;
    std::vector<std::string> names;
};

/// Rotated or entangled clause: the registers are in span(columns of
/// `basis`), which must be orthonormal. Used for records such as |OK>_X that
/// are superpositions over several registers.
struct SubspaceClause {
    std::vector<std::string> registers;
    Matrix basis;
    std::string name;
};

using Clause = std::variant<BasisClause, SubspaceClause>;

/// A projector materialised on a register subset of a concrete layout.
struct LocalProjector {
    std::vector<std::size_t> regs;
    Matrix matrix;
};

/**
 * Conjunction of clauses. The empty spec is the full-space projector.
 *
 * Clauses are checked against a layout when materialised: registers and
 * names must exist, subspace bases must be orthonormal and clauses that share
 * registers must commute, so that the product is itself a projector.
 */
class ProjectorSpec {
   public:
    ProjectorSpec() = default;
    explicit ProjectorSpec(std::vector<Clause> clauses) : clauses_(std::move(clauses)) {}

    static ProjectorSpec identity() { return {}; }

    static ProjectorSpec basis(std::string label, std::vector<std::string> names) {
        return ProjectorSpec({BasisClause{std::move(label), std::move(names)}});
    }
    static ProjectorSpec basis(std::string label, std::string name) {
        return basis(std::move(label), std::vector<std::string>{std::move(name)});
    }
    static ProjectorSpec subspace(std::vector<std::string> registers, Matrix basis,
                                  std::string name) {
        return ProjectorSpec(
            {SubspaceClause{std::move(registers), std::move(basis), std::move(name)}});
    }

    /// Logical AND with another spec (clause concatenation).
    ProjectorSpec operator&&(const ProjectorSpec& o) const {
        auto c = clauses_;
        c.insert(c.end(), o.clauses_.begin(), o.clauses_.end());
        return ProjectorSpec(std::move(c));
    }

    const std::vector<Clause>& clauses() const { return clauses_; }
    bool is_identity() const { return clauses_.empty(); }

    std::string describe() const {
        if (clauses_.empty()) return "1";
        std::string s;
        for (const auto& c : clauses_) {
            if (!s.empty()) s += " & ";
            if (const auto* b = std::get_if<BasisClause>(&c)) {
                s += b->register_label + "=";
                for (std::size_t i = 0; i < b->names.size(); ++i) {
                    s += (i ? "|" : "") + b->names[i];
                }
            } else {
                const auto& sc = std::get<SubspaceClause>(c);
                std::string regs;
                for (const auto& r : sc.registers) regs += r;
                s += sc.name + "_" + regs;
            }
        }
        return s;
    }

    /// Local projector per clause, each validated against `layout`.
    std::vector<LocalProjector> materialize(const RegisterLayout& layout) const {
        std::vector<LocalProjector> out;
        out.reserve(clauses_.size());
        for (const auto& c : clauses_) {
            if (const auto* b = std::get_if<BasisClause>(&c)) {
                const auto r = layout.index_of(b->register_label);
                const auto d = static_cast<Eigen::Index>(layout.reg(r).dim());
                Matrix p = Matrix::Zero(d, d);
                for (const auto& n : b->names) {
                    const auto k = static_cast<Eigen::Index>(layout.basis_index(r, n));
                    p(k, k) = 1.0;
                }
                out.push_back({{r}, std::move(p)});
            } else {
                const auto& sc = std::get<SubspaceClause>(c);
                auto regs = layout.indices_of(sc.registers);
                const auto d = static_cast<Eigen::Index>(layout.dimension_of(regs));
                if (sc.basis.rows() != d) {
                    throw ConfigurationError("subspace clause '" + sc.name +
                                             "' has wrong vector length");
                }
                const Matrix gram = sc.basis.adjoint() * sc.basis;
                if (detail::max_abs(gram - Matrix::Identity(gram.rows(), gram.cols())) >
                    tol::kExact) {
                    throw ConfigurationError("subspace clause '" + sc.name +
                                             "' basis is not orthonormal");
                }
                out.push_back({std::move(regs), sc.basis * sc.basis.adjoint()});
            }
        }
        for (std::size_t i = 0; i < out.size(); ++i) {
            for (std::size_t j = i + 1; j < out.size(); ++j) {
                if (!commute(layout, out[i], out[j])) {
                    throw ContractError("projector clauses on shared registers do not commute");
                }
            }
        }
        return out;
    }

    /// Applies the (validated) projector to raw amplitudes.
    static Vector apply(const RegisterLayout& layout, const std::vector<LocalProjector>& ps,
                        Vector v) {
        for (const auto& p : ps) v = detail::apply_local(layout, v, p.regs, p.matrix);
        return v;
    }

    /// Dense matrix of this projector on the register subset `regs`.
    Matrix matrix_on(const RegisterLayout& layout, const std::vector<std::size_t>& regs) const {
        return matrix_on(layout, materialize(layout), regs);
    }

    static Matrix matrix_on(const RegisterLayout& layout, const std::vector<LocalProjector>& ps,
                            const std::vector<std::size_t>& regs) {
        const auto sub = layout.sub_layout(regs);
        std::vector<LocalProjector> mapped;
        for (const auto& p : ps) {
            LocalProjector q{{}, p.matrix};
            for (auto r : p.regs) {
                auto it = std::find(regs.begin(), regs.end(), r);
                if (it == regs.end()) {
                    throw ConfigurationError("projector acts outside the requested registers");
                }
                q.regs.push_back(static_cast<std::size_t>(it - regs.begin()));
            }
            mapped.push_back(std::move(q));
        }
        const auto n = static_cast<Eigen::Index>(sub.dimension());
        Matrix m(n, n);
        for (Eigen::Index j = 0; j < n; ++j) m.col(j) = apply(sub, mapped, Vector::Unit(n, j));
        return m;
    }

    /// Sorted union of the registers touched by the given projectors.
    static std::vector<std::size_t> support(const std::vector<LocalProjector>& ps) {
        std::vector<std::size_t> regs;
        for (const auto& p : ps) regs.insert(regs.end(), p.regs.begin(), p.regs.end());
        std::sort(regs.begin(), regs.end());
        regs.erase(std::unique(regs.begin(), regs.end()), regs.end());
        return regs;
    }

   private:
    static bool commute(const RegisterLayout& layout, const LocalProjector& a,
                        const LocalProjector& b) {
        bool shared = false;
        for (auto r : a.regs) {
            shared = shared || std::find(b.regs.begin(), b.regs.end(), r) != b.regs.end();
        }
        if (!shared) return true;
        std::vector<LocalProjector> both{a, b};
        const auto regs = support(both);
        const Matrix pa = matrix_on(layout, {a}, regs);
        const Matrix pb = matrix_on(layout, {b}, regs);
        return detail::max_abs(pa * pb - pb * pa) <= tol::kExact;
    }

    std::vector<Clause> clauses_;
};

/// True when the two projectors commute on `layout` (numerical check on the
/// union of their registers; disjoint supports commute trivially).
inline bool projectors_commute(const RegisterLayout& layout, const ProjectorSpec& a,
                               const ProjectorSpec& b) {
    const auto pa = a.materialize(layout);
    const auto pb = b.materialize(layout);
    auto all = pa;
    all.insert(all.end(), pb.begin(), pb.end());
    const auto regs = ProjectorSpec::support(all);
    if (regs.empty()) return true;
    const auto sa = ProjectorSpec::support(pa);
    const auto sb = ProjectorSpec::support(pb);
    bool shared = false;
    for (auto r : sa) shared = shared || std::binary_search(sb.begin(), sb.end(), r);
    if (!shared) return true;
    const Matrix ma = ProjectorSpec::matrix_on(layout, pa, regs);
    const Matrix mb = ProjectorSpec::matrix_on(layout, pb, regs);
    return detail::max_abs(ma * mb - mb * ma) <= tol::kExact;
}

}  // namespace friendlab
