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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "friendlab/core/register_layout.hpp"

namespace friendlab {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

namespace detail {

/// Flat offsets of every configuration of `regs` (first listed register most
/// significant), with all other registers at digit zero.
inline std::vector<std::size_t> local_offsets(const RegisterLayout& layout,
                                              std::span<const std::size_t> regs) {
    std::vector<std::size_t> offs{0};
    for (auto r : regs) {
        std::vector<std::size_t> next;
        next.reserve(offs.size() * layout.reg(r).dim());
        for (auto base : offs) {
            for (std::size_t k = 0; k < layout.reg(r).dim(); ++k) {
                next.push_back(base + k * layout.stride(r));
            }
        }
        offs = std::move(next);
    }
    return offs;
}

/// Flat offsets of every configuration of the registers *not* in `regs`.
inline std::vector<std::size_t> rest_offsets(const RegisterLayout& layout,
                                             std::span<const std::size_t> regs) {
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < layout.size(); ++i) {
        bool used = false;
        for (auto r : regs) used = used || (r == i);
        if (!used) rest.push_back(i);
    }
    return local_offsets(layout, rest);
}

/// Applies `m` (acting on `regs`, identity elsewhere) to `in`.
inline Vector apply_local(const RegisterLayout& layout, const Vector& in,
                          std::span<const std::size_t> regs, const Matrix& m) {
    const auto local = local_offsets(layout, regs);
    const auto rest = rest_offsets(layout, regs);
    const auto n = static_cast<Eigen::Index>(local.size());
    Vector out(in.size());
    Vector gathered(n);
    Vector result(n);
    for (auto base : rest) {
        for (Eigen::Index j = 0; j < n; ++j) gathered[j] = in[base + local[j]];
        result.noalias() = m * gathered;
        for (Eigen::Index j = 0; j < n; ++j) out[base + local[j]] = result[j];
    }
    return out;
}

/// Kronecker product, `a` on the most significant factor.
inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

inline double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace detail
}  // namespace friendlab
