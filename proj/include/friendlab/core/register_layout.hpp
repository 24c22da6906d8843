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
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "friendlab/core/tolerance.hpp"
#include "friendlab/errors.hpp"

namespace friendlab {

/// One labelled finite-dimensional subsystem. The basis names double as the
/// names of its computational basis states, in order.
struct Register {
    std::string label;
    std::vector<std::string> basis;

    std::size_t dim() const { return basis.size(); }
    bool operator==(const Register&) const = default;
};

/**
 * Ordered list of registers defining a composite Hilbert space.
 *
 * Flat indices are row-major: the first register is the most significant
 * digit. Layouts are immutable once built and usually shared between states
 * through a shared_ptr.
 */
class RegisterLayout {
   public:
    explicit RegisterLayout(std::vector<Register> registers) : registers_(std::move(registers)) {
        if (registers_.empty()) {
            throw ConfigurationError("layout needs at least one register");
        }
        std::unordered_set<std::string> labels;
        dimension_ = 1;
        for (const auto& r : registers_) {
            if (r.label.empty()) {
                throw ConfigurationError("register label must be non-empty");
            }
            if (!labels.insert(r.label).second) {
                throw ConfigurationError("duplicate register label '" + r.label + "'");
            }
            if (r.dim() < 2) {
                throw ConfigurationError("register '" + r.label + "' needs dimension >= 2");
            }
            std::unordered_set<std::string> names(r.basis.begin(), r.basis.end());
            if (names.size() != r.basis.size()) {
                throw ConfigurationError("register '" + r.label + "' has duplicate basis names");
            }
            if (dimension_ > tol::kMaxDimension / r.dim()) {
                throw ConfigurationError("layout dimension exceeds 2^20");
            }
            dimension_ *= r.dim();
        }
        strides_.assign(registers_.size(), 1);
        for (std::size_t i = registers_.size() - 1; i > 0; --i) {
            strides_[i - 1] = strides_[i] * registers_[i].dim();
        }
    }

    std::size_t size() const { return registers_.size(); }
    std::size_t dimension() const { return dimension_; }
    const Register& reg(std::size_t i) const { return registers_.at(i); }
    const std::vector<Register>& registers() const { return registers_; }
    std::size_t stride(std::size_t i) const { return strides_.at(i); }

    bool contains(std::string_view label) const {
        return std::any_of(registers_.begin(), registers_.end(),
                           [&](const Register& r) { return r.label == label; });
    }

    std::size_t index_of(std::string_view label) const {
        for (std::size_t i = 0; i < registers_.size(); ++i) {
            if (registers_[i].label == label) return i;
        }
        throw ConfigurationError("unknown register '" + std::string(label) + "'");
    }

    std::size_t basis_index(std::size_t reg_index, std::string_view name) const {
        const auto& r = reg(reg_index);
        auto it = std::find(r.basis.begin(), r.basis.end(), name);
        if (it == r.basis.end()) {
            throw ConfigurationError("register '" + r.label + "' has no basis state '" +
                                     std::string(name) + "'");
        }
        return static_cast<std::size_t>(it - r.basis.begin());
    }

    std::size_t basis_index(std::string_view label, std::string_view name) const {
        return basis_index(index_of(label), name);
    }

    /// Register positions for a list of labels, rejecting repeats.
    std::vector<std::size_t> indices_of(std::span<const std::string> labels) const {
        std::vector<std::size_t> out;
        out.reserve(labels.size());
        for (const auto& l : labels) {
            auto i = index_of(l);
            if (std::find(out.begin(), out.end(), i) != out.end()) {
                throw ConfigurationError("register '" + l + "' listed twice");
            }
            out.push_back(i);
        }
        return out;
    }

    /// Product of the dimensions of the given registers.
    std::size_t dimension_of(std::span<const std::size_t> regs) const {
        std::size_t d = 1;
        for (auto i : regs) d *= reg(i).dim();
        return d;
    }

    /// Layout restricted to `regs`, in the given order.
    RegisterLayout sub_layout(std::span<const std::size_t> regs) const {
        std::vector<Register> sub;
        sub.reserve(regs.size());
        for (auto i : regs) sub.push_back(reg(i));
        return RegisterLayout(std::move(sub));
    }

    /// Digit of register `reg_index` inside flat index `flat`.
    std::size_t digit(std::size_t flat, std::size_t reg_index) const {
        return (flat / strides_[reg_index]) % registers_[reg_index].dim();
    }

    /// Human-readable name of a product basis state, e.g. "c=heads,X=heads".
    std::string describe(std::size_t flat) const {
        std::string s;
        for (std::size_t i = 0; i < registers_.size(); ++i) {
            if (i) s += ',';
            s += registers_[i].label;
            s += '=';
            s += registers_[i].basis[digit(flat, i)];
        }
        return s;
    }

    bool operator==(const RegisterLayout& o) const { return registers_ == o.registers_; }

   private:
    std::vector<Register> registers_;
    std::vector<std::size_t> strides_;
    std::size_t dimension_ = 1;
};

using LayoutPtr = std::shared_ptr<const RegisterLayout>;

inline LayoutPtr make_layout(std::vector<Register> registers) {
    return std::make_shared<const RegisterLayout>(std::move(registers));
}

}  // namespace friendlab
