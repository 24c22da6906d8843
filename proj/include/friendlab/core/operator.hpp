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

#include <string>
#include <utility>
#include <vector>

#include "friendlab/core/local_ops.hpp"
#include "friendlab/core/state_vector.hpp"
#include "friendlab/core/tolerance.hpp"
#include "friendlab/errors.hpp"

namespace friendlab {

enum class OperatorKind { hermitian, unitary, general };

/**
 * Square complex matrix acting on a named subset of registers (first label
 * is the most significant factor), identity on everything else.
 *
 * The kind flag is verified at construction: hermitian requires M = M^dagger
 * and unitary requires M^dagger M = I, both entrywise within 1e-12.
 */
class OperatorMatrix {
   public:
    OperatorMatrix(std::vector<std::string> registers, Matrix entries, OperatorKind kind)
        : registers_(std::move(registers)), m_(std::move(entries)), kind_(kind) {
        if (registers_.empty()) throw ConfigurationError("operator acts on no registers");
        if (m_.rows() != m_.cols() || m_.rows() == 0) {
            throw ConfigurationError("operator matrix must be square and non-empty");
        }
        if (kind_ == OperatorKind::hermitian && !is_hermitian(m_)) {
            throw ContractError("operator flagged hermitian is not self-adjoint within 1e-12");
        }
        if (kind_ == OperatorKind::unitary && !is_unitary(m_)) {
            throw ContractError("operator flagged unitary fails U^dagger U = I within 1e-12");
        }
    }

    const std::vector<std::string>& registers() const { return registers_; }
    const Matrix& matrix() const { return m_; }
    OperatorKind kind() const { return kind_; }
    Eigen::Index size() const { return m_.rows(); }

    static bool is_hermitian(const Matrix& m) {
        return m.rows() == m.cols() && detail::max_abs(m - m.adjoint()) <= tol::kExact;
    }
    static bool is_unitary(const Matrix& m) {
        return m.rows() == m.cols() &&
               detail::max_abs(m.adjoint() * m - Matrix::Identity(m.rows(), m.cols())) <=
                   tol::kExact;
    }

   private:
    std::vector<std::string> registers_;
    Matrix m_;
    OperatorKind kind_;
};

/// Conjugate transpose. A hermitian operator keeps its flag, as does a unitary.
inline OperatorMatrix dagger(const OperatorMatrix& op) {
    return OperatorMatrix(op.registers(), op.matrix().adjoint(), op.kind());
}

/// Re-flags an operator as unitary (e.g. a +-1 observable used as a gate).
inline OperatorMatrix as_unitary(const OperatorMatrix& op) {
    return OperatorMatrix(op.registers(), op.matrix(), OperatorKind::unitary);
}

/// Product `a * b` of two operators on the same register list.
inline OperatorMatrix compose(const OperatorMatrix& a, const OperatorMatrix& b) {
    if (a.registers() != b.registers() || a.size() != b.size()) {
        throw ConfigurationError("compose: operators act on different registers");
    }
    const bool unitary = a.kind() == OperatorKind::unitary && b.kind() == OperatorKind::unitary;
    return OperatorMatrix(a.registers(), a.matrix() * b.matrix(),
                          unitary ? OperatorKind::unitary : OperatorKind::general);
}

/// a (x) b on the concatenated (disjoint) register lists.
inline OperatorMatrix kron(const OperatorMatrix& a, const OperatorMatrix& b) {
    std::vector<std::string> regs = a.registers();
    for (const auto& r : b.registers()) {
        for (const auto& x : regs) {
            if (x == r) throw ConfigurationError("kron: register '" + r + "' on both factors");
        }
        regs.push_back(r);
    }
    OperatorKind kind = OperatorKind::general;
    if (a.kind() == b.kind()) kind = a.kind();
    return OperatorMatrix(std::move(regs), detail::kron(a.matrix(), b.matrix()), kind);
}

namespace detail {

inline std::vector<std::size_t> checked_targets(const RegisterLayout& layout,
                                                const OperatorMatrix& op) {
    auto regs = layout.indices_of(op.registers());
    if (layout.dimension_of(regs) != static_cast<std::size_t>(op.size())) {
        throw ConfigurationError("operator dimension does not match its registers");
    }
    return regs;
}

/// Raw action of any operator kind; no normalisation, no checks on the result.
inline Vector act(const StateVector& state, const OperatorMatrix& op) {
    const auto regs = checked_targets(state.layout(), op);
    return apply_local(state.layout(), state.amplitudes(), regs, op.matrix());
}

}  // namespace detail

/// Unitary evolution of `state` by `op` (x) identity. Only unitary-flagged
/// operators are accepted; the norm must survive within 1e-12.
inline StateVector apply_operator(const StateVector& state, const OperatorMatrix& op) {
    if (op.kind() != OperatorKind::unitary) {
        throw ContractError("apply_operator: evolution requires a unitary operator");
    }
    Vector out = detail::act(state, op);
    const double drift = std::abs(out.norm() - state.norm());
    if (drift > tol::kExact) {
        throw NumericalContractViolation("norm drift " + std::to_string(drift) +
                                         " during unitary application");
    }
    return StateVector(state.layout_ptr(), std::move(out));
}

/// Applies a sequence of unitaries in order.
inline StateVector apply_sequence(StateVector state, const std::vector<OperatorMatrix>& ops) {
    for (const auto& op : ops) state = apply_operator(state, op);
    return state;
}

/// <state| op |state>, real part for hermitian operators.
inline Complex expectation(const StateVector& state, const OperatorMatrix& op) {
    return state.amplitudes().dot(detail::act(state, op));
}

/// <state| a (x) b |state> for operators on disjoint registers.
inline double correlator(const StateVector& state, const OperatorMatrix& a,
                         const OperatorMatrix& b) {
    if (a.kind() != OperatorKind::hermitian || b.kind() != OperatorKind::hermitian) {
        throw ContractError("correlator expects hermitian observables");
    }
    return expectation(state, kron(a, b)).real();
}

/// Dense matrix of `op` embedded into the full layout (tests, small layouts).
inline Matrix embed(const RegisterLayout& layout, const OperatorMatrix& op) {
    const auto regs = detail::checked_targets(layout, op);
    const auto n = static_cast<Eigen::Index>(layout.dimension());
    Matrix full(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        Vector e = Vector::Unit(n, j);
        full.col(j) = detail::apply_local(layout, e, regs, op.matrix());
    }
    return full;
}

}  // namespace friendlab
