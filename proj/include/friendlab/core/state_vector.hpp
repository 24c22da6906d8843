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
#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "friendlab/core/local_ops.hpp"
#include "friendlab/core/register_layout.hpp"
#include "friendlab/core/tolerance.hpp"
#include "friendlab/errors.hpp"

namespace friendlab {

/// Register label -> basis state name.
using BasisAssignment = std::map<std::string, std::string>;

/**
 * Normalised pure state over a RegisterLayout's product basis.
 *
 * Immutable: every operation returns a new state. Construction enforces
 * |norm - 1| <= 1e-12 and throws NumericalContractViolation otherwise, so a
 * StateVector in hand is always a valid ket.
 */
class StateVector {
   public:
    StateVector(LayoutPtr layout, Vector amplitudes)
        : layout_(std::move(layout)), amps_(std::move(amplitudes)) {
        if (!layout_) throw ConfigurationError("state needs a layout");
        if (static_cast<std::size_t>(amps_.size()) != layout_->dimension()) {
            throw ConfigurationError("amplitude count does not match layout dimension");
        }
        const double n = amps_.norm();
        if (!std::isfinite(n) || std::abs(n - 1.0) > tol::kExact) {
            throw NumericalContractViolation("state norm " + std::to_string(n) +
                                             " drifted from 1 beyond 1e-12");
        }
    }

    const RegisterLayout& layout() const { return *layout_; }
    const LayoutPtr& layout_ptr() const { return layout_; }
    const Vector& amplitudes() const { return amps_; }
    std::size_t dimension() const { return static_cast<std::size_t>(amps_.size()); }
    double norm() const { return amps_.norm(); }

    Complex amplitude(const BasisAssignment& names) const {
        return amps_[flat_index(*layout_, names)];
    }

    bool same_layout(const StateVector& o) const {
        return layout_ == o.layout_ || *layout_ == *o.layout_;
    }

    static std::size_t flat_index(const RegisterLayout& layout, const BasisAssignment& names) {
        for (const auto& [label, _] : names) layout.index_of(label);
        std::size_t flat = 0;
        for (std::size_t i = 0; i < layout.size(); ++i) {
            auto it = names.find(layout.reg(i).label);
            if (it == names.end()) {
                throw ConfigurationError("register '" + layout.reg(i).label +
                                         "' has no basis state assigned");
            }
            flat += layout.basis_index(i, it->second) * layout.stride(i);
        }
        return flat;
    }

   private:
    LayoutPtr layout_;
    Vector amps_;
};

/// Product basis state with every register assigned a basis name.
inline StateVector build_basis_state(const LayoutPtr& layout, const BasisAssignment& names) {
    if (!layout) throw ConfigurationError("null layout");
    Vector v = Vector::Zero(static_cast<Eigen::Index>(layout->dimension()));
    v[StateVector::flat_index(*layout, names)] = 1.0;
    return StateVector(layout, std::move(v));
}

/// Linear combination of states on one layout. The coefficients must already
/// give unit norm within 1e-9; the result is then renormalised once.
inline StateVector superpose(const std::vector<std::pair<Complex, StateVector>>& terms) {
    if (terms.empty()) throw ConfigurationError("superpose needs at least one term");
    const auto& first = terms.front().second;
    Vector acc = Vector::Zero(first.amplitudes().size());
    for (const auto& [coef, s] : terms) {
        if (!s.same_layout(first)) throw ConfigurationError("superpose: mismatched layouts");
        acc += coef * s.amplitudes();
    }
    const double n = acc.norm();
    if (n <= tol::kZeroProbability) throw ConfigurationError("superpose: zero vector");
    if (std::abs(n - 1.0) > tol::kSuperpose) {
        throw ConfigurationError("superpose: coefficients give norm " + std::to_string(n) +
                                 ", expected 1 within 1e-9");
    }
    acc /= n;
    return StateVector(first.layout_ptr(), std::move(acc));
}

/// Tensor product; registers of `a` come first.
inline StateVector tensor(const StateVector& a, const StateVector& b) {
    std::vector<Register> regs = a.layout().registers();
    const auto& rb = b.layout().registers();
    regs.insert(regs.end(), rb.begin(), rb.end());
    Vector v(a.amplitudes().size() * b.amplitudes().size());
    for (Eigen::Index i = 0; i < a.amplitudes().size(); ++i) {
        v.segment(i * b.amplitudes().size(), b.amplitudes().size()) =
            a.amplitudes()[i] * b.amplitudes();
    }
    return StateVector(make_layout(std::move(regs)), std::move(v));
}

inline Complex inner(const StateVector& bra, const StateVector& ket) {
    if (!bra.same_layout(ket)) throw ConfigurationError("inner product: layout mismatch");
    return bra.amplitudes().dot(ket.amplitudes());
}

/// |<s1|s2>|^2.
inline double fidelity(const StateVector& s1, const StateVector& s2) {
    if (!s1.same_layout(s2)) throw ConfigurationError("fidelity: layout mismatch");
    return std::min(1.0, std::norm(inner(s1, s2)));
}

}  // namespace friendlab
