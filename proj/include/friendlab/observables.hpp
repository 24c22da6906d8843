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
 * Builders for the observables and measurement unitaries used by the
 * scenarios: planar spin components, lab pointer observables, the OK/fail
 * record basis and measurement dilations.
 *
 * Conventions (reported in every CLI report header):
 *  - spin basis order is (up, down); sigma(phi) = cos(phi) Z + sin(phi) X;
 *  - |up_phi> = (cos phi/2, sin phi/2), |down_phi> = (-sin phi/2, cos phi/2);
 *  - |fail> = (|o1> + |o2>)/sqrt2, |OK> = (|o1> - |o2>)/sqrt2 where o1, o2
 *    are the two record states of a lab in their listed order.
 */

#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "friendlab/core/measurement.hpp"
#include "friendlab/core/operator.hpp"
#include "friendlab/core/projector.hpp"
#include "friendlab/core/register_layout.hpp"

namespace friendlab {

/// Measurement direction in a fixed plane, in radians.
class DirectionAngle {
   public:
    DirectionAngle() = default;

    static DirectionAngle radians(double r) {
        if (!std::isfinite(r)) throw ConfigurationError("direction angle must be finite");
        DirectionAngle a;
        a.value_ = r;
        return a;
    }
    static DirectionAngle degrees(double d) { return radians(d * std::numbers::pi / 180.0); }

    double value() const { return value_; }
    /// Representative in [0, 2 pi).
    double reduced() const {
        double r = std::fmod(value_, 2.0 * std::numbers::pi);
        return r < 0 ? r + 2.0 * std::numbers::pi : r;
    }
    bool same_direction(const DirectionAngle& o, double tol = tol::kExact) const {
        double d = std::abs(reduced() - o.reduced());
        return std::min(d, 2.0 * std::numbers::pi - d) <= tol;
    }

   private:
    double value_ = 0.0;
};

inline Matrix pauli_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}
inline Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

/// cos(phi) Z + sin(phi) X on a single qubit register.
inline OperatorMatrix spin_observable(DirectionAngle angle, std::string reg = "1") {
    const double phi = angle.value();
    Matrix m = std::cos(phi) * pauli_z() + std::sin(phi) * pauli_x();
    return OperatorMatrix({std::move(reg)}, std::move(m), OperatorKind::hermitian);
}

/// Columns: |up_phi>, |down_phi>; real, det = +1.
inline Matrix spin_eigenbasis(DirectionAngle angle) {
    const double h = angle.value() / 2.0;
    Matrix m(2, 2);
    m << std::cos(h), -std::sin(h), std::sin(h), std::cos(h);
    return m;
}

/// Projector on spin up (+1) or down (-1) along `angle` for register `reg`.
inline ProjectorSpec spin_projector(DirectionAngle angle, int sign, std::string reg) {
    const Matrix b = spin_eigenbasis(angle);
    return ProjectorSpec::subspace({std::move(reg)}, b.col(sign > 0 ? 0 : 1),
                                   sign > 0 ? "up" : "down");
}

/// A particle register together with the lab that records its z spin.
struct LabSide {
    std::string particle;
    std::string lab;
};

inline const LabSide kSideA{"1", "X"};
inline const LabSide kSideB{"2", "Y"};

enum class PointerKind { z, x };

/// |particle=up,lab="up"> and |particle=down,lab="down"> as columns on the
/// (particle, lab) register pair.
inline Matrix pointer_records(const RegisterLayout& layout, const LabSide& side) {
    const auto p = layout.index_of(side.particle);
    const auto l = layout.index_of(side.lab);
    const auto dl = static_cast<Eigen::Index>(layout.reg(l).dim());
    const auto d = static_cast<Eigen::Index>(layout.reg(p).dim()) * dl;
    Matrix m = Matrix::Zero(d, 2);
    const std::array<const char*, 2> names{"up", "down"};
    for (Eigen::Index k = 0; k < 2; ++k) {
        const auto ip = static_cast<Eigen::Index>(layout.basis_index(p, names[k]));
        const auto il = static_cast<Eigen::Index>(layout.basis_index(l, names[k]));
        m(ip * dl + il, k) = 1.0;
    }
    return m;
}

/// Eigenvectors (+1 first) of a pointer observable on its pointer subspace.
inline Matrix pointer_eigenvectors(const RegisterLayout& layout, const LabSide& side,
                                   PointerKind kind) {
    const Matrix rec = pointer_records(layout, side);
    if (kind == PointerKind::z) return rec;
    const double s = 1.0 / std::numbers::sqrt2;
    Matrix m(rec.rows(), 2);
    m.col(0) = s * (rec.col(0) + rec.col(1));
    m.col(1) = s * (rec.col(0) - rec.col(1));
    return m;
}

/**
 * Rank-2 lab observable on (particle, lab):
 *   z: |up,"up"><up,"up"| - |down,"down"><down,"down"|
 *   x: |up,"up"><down,"down"| + |down,"down"><up,"up"|
 * Eigenvalue 0 on the complement of the pointer subspace.
 */
inline OperatorMatrix pointer_observable(const RegisterLayout& layout, const LabSide& side,
                                         PointerKind kind) {
    const Matrix rec = pointer_records(layout, side);
    const Matrix up = rec.col(0);
    const Matrix down = rec.col(1);
    Matrix m = kind == PointerKind::z ? Matrix(up * up.adjoint() - down * down.adjoint())
                                      : Matrix(up * down.adjoint() + down * up.adjoint());
    return OperatorMatrix({side.particle, side.lab}, std::move(m), OperatorKind::hermitian);
}

/// Eigenprojector of a pointer observable for outcome +1 / -1.
inline ProjectorSpec pointer_projector(const RegisterLayout& layout, const LabSide& side,
                                       PointerKind kind, int sign) {
    const Matrix ev = pointer_eigenvectors(layout, side, kind);
    const std::string name =
        std::string(kind == PointerKind::z ? "Az" : "Ax") + (sign > 0 ? "+" : "-");
    return ProjectorSpec::subspace({side.particle, side.lab}, ev.col(sign > 0 ? 0 : 1), name);
}

/// A lab whose two record states each span several registers, e.g. the
/// heads record |heads>_c |heads>_X of the coin lab.
struct RecordPair {
    std::vector<std::string> registers;
    std::array<std::vector<std::string>, 2> outcomes;  // basis names per register
};

/// Coin lab X = c + X-: records heads, tails.
inline RecordPair record_pair_x() {
    return {{"c", "X"}, {{{"heads", "heads"}, {"tails", "tails"}}}};
}
/// Spin lab Y = s + Y-: records -1/2 (spin down), +1/2 (spin up).
inline RecordPair record_pair_y() { return {{"s", "Y"}, {{{"down", "-1/2"}, {"up", "+1/2"}}}}; }

enum class RecordSide { X, Y };

inline RecordPair record_pair(RecordSide side) {
    return side == RecordSide::X ? record_pair_x() : record_pair_y();
}

/// Columns: the two record states as vectors on the pair's registers.
inline Matrix record_vectors(const RegisterLayout& layout, const RecordPair& pair) {
    const auto regs = layout.indices_of(pair.registers);
    const auto d = static_cast<Eigen::Index>(layout.dimension_of(regs));
    Matrix m = Matrix::Zero(d, 2);
    for (Eigen::Index k = 0; k < 2; ++k) {
        const auto& names = pair.outcomes[static_cast<std::size_t>(k)];
        if (names.size() != regs.size())
            throw ConfigurationError("record names/registers mismatch");
        std::size_t flat = 0;
        for (std::size_t i = 0; i < regs.size(); ++i) {
            flat = flat * layout.reg(regs[i]).dim() + layout.basis_index(regs[i], names[i]);
        }
        m(static_cast<Eigen::Index>(flat), k) = 1.0;
    }
    return m;
}

/// Columns: |fail>, |OK> for the given record pair.
inline Matrix okfail_vectors(const RegisterLayout& layout, const RecordPair& pair) {
    const Matrix rec = record_vectors(layout, pair);
    const double s = 1.0 / std::numbers::sqrt2;
    Matrix m(rec.rows(), 2);
    m.col(0) = s * (rec.col(0) + rec.col(1));
    m.col(1) = s * (rec.col(0) - rec.col(1));
    return m;
}

inline ProjectorSpec okfail_projector(const RegisterLayout& layout, RecordSide side, bool ok) {
    const auto pair = record_pair(side);
    const Matrix v = okfail_vectors(layout, pair);
    return ProjectorSpec::subspace(pair.registers, v.col(ok ? 1 : 0), ok ? "OK" : "fail");
}

/// Projector onto one record state (e.g. the heads record c=heads & X=heads).
inline ProjectorSpec record_projector(const RecordPair& pair, std::size_t outcome) {
    ProjectorSpec p;
    for (std::size_t i = 0; i < pair.registers.size(); ++i) {
        p = p && ProjectorSpec::basis(pair.registers[i], pair.outcomes.at(outcome)[i]);
    }
    return p;
}

/**
 * Basis change between the record basis {o1, o2} and {fail, OK}: on the
 * two-dimensional record span it is the Hadamard matrix, elsewhere the
 * identity. Applied to a state it moves the <fail|psi> amplitude into the o1
 * slot and <OK|psi> into the o2 slot. Hermitian, unitary and self-inverse.
 */
inline OperatorMatrix okfail_transform(const RegisterLayout& layout, RecordSide side) {
    const auto pair = record_pair(side);
    const Matrix rec = record_vectors(layout, pair);
    const Matrix ok = okfail_vectors(layout, pair);
    const auto d = rec.rows();
    Matrix m = Matrix::Identity(d, d) - rec * rec.adjoint();
    // |o1><fail| + |o2><OK| restricted to the record span.
    m += rec.col(0) * ok.col(0).adjoint() + rec.col(1) * ok.col(1).adjoint();
    return OperatorMatrix(pair.registers, std::move(m), OperatorKind::unitary);
}

/**
 * Unitary model of a measurement that copies the measured basis into a
 * pointer register:  |b_i>|ready> -> |b_i>|name_i>.
 *
 * `basis` holds orthonormal columns on the measured registers; it may span
 * only a subspace, in which case the complement leaves the pointer alone.
 * Pointer states other than ready are completed by the cyclic shift that
 * takes ready to name_i, so the result is a permutation on each branch.
 */
struct MeasurementDilation {
    std::vector<std::string> measured_registers;
    std::string pointer_register;
    Matrix basis;
    std::vector<std::string> pointer_names;
    std::string ready_name = "ready";
};

inline OperatorMatrix dilation_unitary(const RegisterLayout& layout, const MeasurementDilation& d) {
    const auto measured = layout.indices_of(d.measured_registers);
    const auto ptr = layout.index_of(d.pointer_register);
    for (auto m : measured) {
        if (m == ptr) throw ConfigurationError("pointer register is also measured");
    }
    const auto dm = static_cast<Eigen::Index>(layout.dimension_of(measured));
    const auto dp = static_cast<Eigen::Index>(layout.reg(ptr).dim());
    if (d.basis.rows() != dm || d.basis.cols() == 0) {
        throw ConfigurationError("dilation basis has the wrong shape");
    }
    if (static_cast<Eigen::Index>(d.pointer_names.size()) != d.basis.cols()) {
        throw ConfigurationError("dilation needs one pointer name per basis vector");
    }
    const Matrix gram = d.basis.adjoint() * d.basis;
    if (detail::max_abs(gram - Matrix::Identity(gram.rows(), gram.cols())) > tol::kExact) {
        throw ConfigurationError("dilation basis is not orthonormal within 1e-12");
    }
    const auto ready = static_cast<Eigen::Index>(layout.basis_index(ptr, d.ready_name));

    auto shift = [&](Eigen::Index k) {
        Matrix s = Matrix::Zero(dp, dp);
        for (Eigen::Index j = 0; j < dp; ++j) s((j + k) % dp, j) = 1.0;
        return s;
    };

    Matrix complement = Matrix::Identity(dm, dm) - d.basis * d.basis.adjoint();
    Matrix u = detail::kron(complement, Matrix::Identity(dp, dp));
    for (Eigen::Index i = 0; i < d.basis.cols(); ++i) {
        const auto target = static_cast<Eigen::Index>(
            layout.basis_index(ptr, d.pointer_names[static_cast<std::size_t>(i)]));
        const Eigen::Index k = ((target - ready) % dp + dp) % dp;
        const Matrix proj = d.basis.col(i) * d.basis.col(i).adjoint();
        u += detail::kron(proj, shift(k));
    }
    std::vector<std::string> regs = d.measured_registers;
    regs.push_back(d.pointer_register);
    return OperatorMatrix(std::move(regs), std::move(u), OperatorKind::unitary);
}

/// Spin measurement of `particle` along `angle`, recorded as "up"/"down".
inline OperatorMatrix spin_dilation(const RegisterLayout& layout, std::string particle,
                                    std::string pointer, DirectionAngle angle) {
    return dilation_unitary(
        layout,
        {{std::move(particle)}, std::move(pointer), spin_eigenbasis(angle), {"up", "down"}});
}

}  // namespace friendlab
