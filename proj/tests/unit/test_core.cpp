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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "friendlab/friendlab.hpp"
#include "generators.hpp"

namespace friendlab {
namespace {

using Names = std::vector<std::string>;

const double kH = 1.0 / std::numbers::sqrt2;

LayoutPtr spin_layout() { return make_layout({{"1", {"up", "down"}}}); }

StateVector up() { return build_basis_state(spin_layout(), {{"1", "up"}}); }
StateVector down() { return build_basis_state(spin_layout(), {{"1", "down"}}); }

// ------------------------------------------------------------------ layout

TEST(RegisterLayout, DimensionAndStrides) {
    const auto l = make_layout({{"1", {"up", "down"}}, {"X", {"ready", "up", "down"}}});
    EXPECT_EQ(l->dimension(), 6u);
    EXPECT_EQ(l->stride(0), 3u);
    EXPECT_EQ(l->stride(1), 1u);
    EXPECT_EQ(l->basis_index("X", "down"), 2u);
    EXPECT_EQ(l->digit(5, 0), 1u);
    EXPECT_EQ(l->digit(5, 1), 2u);
}

TEST(RegisterLayout, RejectsMalformedRegisters) {
    EXPECT_THROW(RegisterLayout({}), ConfigurationError);
    EXPECT_THROW(RegisterLayout({{"a", {"0", "1"}}, {"a", {"0", "1"}}}), ConfigurationError);
    EXPECT_THROW(RegisterLayout(std::vector<Register>{{"a", {"only"}}}), ConfigurationError);
    EXPECT_THROW(RegisterLayout({{"a", {"0", "0"}}}), ConfigurationError);
    EXPECT_THROW(RegisterLayout({{"", {"0", "1"}}}), ConfigurationError);
}

TEST(RegisterLayout, CapsTotalDimension) {
    std::vector<Register> regs;
    for (int i = 0; i < 20; ++i) regs.push_back({"q" + std::to_string(i), {"0", "1"}});
    EXPECT_NO_THROW(RegisterLayout{regs});
    regs.push_back({"extra", {"0", "1"}});
    EXPECT_THROW(RegisterLayout{regs}, ConfigurationError);
}

TEST(RegisterLayout, UnknownLookupsAreConfigurationErrors) {
    const auto l = spin_layout();
    EXPECT_THROW(l->index_of("Q"), ConfigurationError);
    EXPECT_THROW(l->basis_index("1", "sideways"), ConfigurationError);
}

// ----------------------------------------------------------- basis states

TEST(BuildBasisState, SingleRegisterReady) {
    const auto l = make_layout({{"c", {"ready", "heads", "tails"}}});
    const auto s = build_basis_state(l, {{"c", "ready"}});
    EXPECT_EQ(s.amplitudes()[0], Complex(1.0));
    EXPECT_EQ(s.amplitudes()[1], Complex(0.0));
    EXPECT_EQ(s.amplitudes()[2], Complex(0.0));
}

TEST(BuildBasisState, ProductKet) {
    const auto l = make_layout({{"1", {"up", "down"}}, {"X", {"ready", "up", "down"}}});
    const auto s = build_basis_state(l, {{"1", "up"}, {"X", "ready"}});
    EXPECT_EQ(s.amplitudes()[0], Complex(1.0));
    EXPECT_DOUBLE_EQ(s.norm(), 1.0);
    EXPECT_EQ(s.amplitude({{"1", "up"}, {"X", "ready"}}), Complex(1.0));
}

TEST(BuildBasisState, UnknownNamesAndRegisters) {
    const auto l = spin_layout();
    EXPECT_THROW(build_basis_state(l, {{"1", "sideways"}}), ConfigurationError);
    EXPECT_THROW(build_basis_state(l, {{"1", "up"}, {"Q", "up"}}), ConfigurationError);
    EXPECT_THROW(build_basis_state(l, {}), ConfigurationError);
    EXPECT_THROW(build_basis_state(nullptr, {}), ConfigurationError);
}

// --------------------------------------------------------------- superpose

TEST(Superpose, EqualSuperposition) {
    const auto s = superpose({{kH, up()}, {kH, down()}});
    EXPECT_NEAR(s.amplitudes()[0].real(), kH, 1e-15);
    EXPECT_NEAR(s.amplitudes()[1].real(), kH, 1e-15);
    EXPECT_NEAR(s.norm(), 1.0, 1e-15);
}

TEST(Superpose, ZeroCoefficientIsIdentity) {
    const auto s = superpose({{1.0, up()}, {0.0, down()}});
    EXPECT_NEAR(fidelity(s, up()), 1.0, 1e-15);
}

TEST(Superpose, RefusesToRenormaliseLargeErrors) {
    EXPECT_THROW(superpose({{1.0, up()}, {1.0, down()}}), ConfigurationError);
    EXPECT_THROW(superpose({{kH, up()}, {-kH, up()}}), ConfigurationError);
    EXPECT_THROW(superpose({}), ConfigurationError);
}

TEST(Superpose, MismatchedLayouts) {
    const auto other = build_basis_state(make_layout({{"2", {"up", "down"}}}), {{"2", "up"}});
    EXPECT_THROW(superpose({{kH, up()}, {kH, other}}), ConfigurationError);
}

TEST(StateVector, RejectsUnnormalisedAmplitudes) {
    Vector v(2);
    v << 1.0, 1.0;
    EXPECT_THROW(StateVector(spin_layout(), v), NumericalContractViolation);
    Vector w(3);
    w << 1.0, 0.0, 0.0;
    EXPECT_THROW(StateVector(spin_layout(), w), ConfigurationError);
}

TEST(Tensor, ConcatenatesLayouts) {
    const auto b = build_basis_state(make_layout({{"2", {"up", "down"}}}), {{"2", "down"}});
    const auto t = tensor(up(), b);
    EXPECT_EQ(t.layout().size(), 2u);
    EXPECT_EQ(t.amplitude({{"1", "up"}, {"2", "down"}}), Complex(1.0));
}

// ---------------------------------------------------------------- fidelity

TEST(Fidelity, Basics) {
    EXPECT_DOUBLE_EQ(fidelity(up(), up()), 1.0);
    EXPECT_DOUBLE_EQ(fidelity(up(), down()), 0.0);
    const auto plus = superpose({{kH, up()}, {kH, down()}});
    EXPECT_NEAR(fidelity(plus, up()), 0.5, 1e-15);
    const auto other = build_basis_state(make_layout({{"2", {"up", "down"}}}), {{"2", "up"}});
    EXPECT_THROW(fidelity(up(), other), ConfigurationError);
}

TEST(Fidelity, IgnoresGlobalPhase) {
    const auto s = superpose({{Complex(0.0, 1.0), up()}});
    EXPECT_NEAR(fidelity(s, up()), 1.0, 1e-15);
}

// --------------------------------------------------------------- operators

TEST(OperatorMatrix, FlagsAreValidated) {
    Matrix m(2, 2);
    m << 1, 1, 0, 1;
    EXPECT_THROW(OperatorMatrix({"1"}, m, OperatorKind::unitary), ContractError);
    EXPECT_THROW(OperatorMatrix({"1"}, m, OperatorKind::hermitian), ContractError);
    EXPECT_NO_THROW(OperatorMatrix({"1"}, m, OperatorKind::general));
    EXPECT_THROW(OperatorMatrix({"1"}, Matrix(2, 3), OperatorKind::general), ConfigurationError);
    EXPECT_THROW(OperatorMatrix({}, Matrix::Identity(2, 2), OperatorKind::unitary),
                 ConfigurationError);
}

TEST(ApplyOperator, IdentityLeavesStateUnchanged) {
    const OperatorMatrix id({"1"}, Matrix::Identity(2, 2), OperatorKind::unitary);
    const auto plus = superpose({{kH, up()}, {kH, down()}});
    const auto out = apply_operator(plus, id);
    EXPECT_LE((out.amplitudes() - plus.amplitudes()).norm(), 0.0);
}

TEST(ApplyOperator, UnitaryThenDaggerRestores) {
    testing::Gen g(7);
    const auto l = make_layout({{"1", {"up", "down"}}, {"X", {"ready", "up", "down"}}});
    const auto s = testing::random_state(g, l);
    const auto u = testing::random_local_unitary(g, *l);
    EXPECT_GE(fidelity(apply_operator(apply_operator(s, u), dagger(u)), s), 1.0 - 1e-12);
}

TEST(ApplyOperator, RejectsNonUnitaryAndWrongDimension) {
    EXPECT_THROW(apply_operator(up(), OperatorMatrix({"1"}, pauli_z(), OperatorKind::hermitian)),
                 ContractError);
    EXPECT_THROW(
        apply_operator(up(), OperatorMatrix({"1"}, Matrix::Identity(3, 3), OperatorKind::unitary)),
        ConfigurationError);
    EXPECT_THROW(
        apply_operator(up(), OperatorMatrix({"Q"}, Matrix::Identity(2, 2), OperatorKind::unitary)),
        ConfigurationError);
}

TEST(ApplyOperator, ActsOnNonLeadingRegister) {
    const auto l = make_layout({{"a", {"0", "1"}}, {"b", {"0", "1", "2"}}, {"c", {"0", "1"}}});
    Matrix shift = Matrix::Zero(3, 3);
    shift(1, 0) = shift(2, 1) = shift(0, 2) = 1.0;
    const auto s = build_basis_state(l, {{"a", "1"}, {"b", "2"}, {"c", "1"}});
    const auto out = apply_operator(s, OperatorMatrix({"b"}, shift, OperatorKind::unitary));
    EXPECT_EQ(out.amplitude({{"a", "1"}, {"b", "0"}, {"c", "1"}}), Complex(1.0));
}

TEST(ApplyOperator, RegisterOrderOfOperatorIsRespected) {
    const auto l = make_layout({{"a", {"0", "1"}}, {"b", {"0", "1"}}});
    // CNOT with control b, target a, written in (b, a) order.
    Matrix cnot = Matrix::Zero(4, 4);
    cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
    const OperatorMatrix op({"b", "a"}, cnot, OperatorKind::unitary);
    const auto s = build_basis_state(l, {{"a", "0"}, {"b", "1"}});
    EXPECT_EQ(apply_operator(s, op).amplitude({{"a", "1"}, {"b", "1"}}), Complex(1.0));
}

TEST(Dagger, Involution) {
    testing::Gen g(11);
    const auto l = make_layout({{"a", {"0", "1", "2"}}});
    const auto u = testing::random_local_unitary(g, *l);
    const auto back = dagger(dagger(u));
    EXPECT_EQ(back.matrix(), u.matrix());
    const OperatorMatrix id({"a"}, Matrix::Identity(3, 3), OperatorKind::unitary);
    EXPECT_EQ(dagger(id).matrix(), id.matrix());
    const auto obs = spin_observable(DirectionAngle::radians(0.3));
    EXPECT_LE(detail::max_abs(dagger(obs).matrix() - obs.matrix()), 1e-15);
}

TEST(Compose, MatrixProductAndMismatch) {
    const OperatorMatrix x({"1"}, pauli_x(), OperatorKind::unitary);
    const auto xx = compose(x, x);
    EXPECT_LE(detail::max_abs(xx.matrix() - Matrix::Identity(2, 2)), 1e-15);
    const OperatorMatrix y({"2"}, pauli_x(), OperatorKind::unitary);
    EXPECT_THROW(compose(x, y), ConfigurationError);
}

TEST(Expectation, PauliOnBasisStates) {
    const auto z = spin_observable(DirectionAngle::radians(0));
    EXPECT_NEAR(expectation(up(), z).real(), 1.0, 1e-15);
    EXPECT_NEAR(expectation(down(), z).real(), -1.0, 1e-15);
}

// -------------------------------------------------------------- projectors

TEST(ProjectorSpec, MaterialisesIdempotentHermitian) {
    const auto l = make_layout({{"1", {"up", "down"}}, {"X", {"ready", "up", "down"}}});
    const auto p =
        ProjectorSpec::basis("X", Names{"up", "down"}) && ProjectorSpec::basis("1", "up");
    const auto regs = std::vector<std::size_t>{0, 1};
    const Matrix m = p.matrix_on(*l, regs);
    EXPECT_LE(detail::max_abs(m * m - m), 1e-15);
    EXPECT_LE(detail::max_abs(m - m.adjoint()), 1e-15);
    EXPECT_NEAR(m.trace().real(), 2.0, 1e-15);
}

TEST(ProjectorSpec, ValidationErrors) {
    const auto l = spin_layout();
    EXPECT_THROW(ProjectorSpec::basis("Q", "up").materialize(*l), ConfigurationError);
    EXPECT_THROW(ProjectorSpec::basis("1", "sideways").materialize(*l), ConfigurationError);
    Matrix notortho(2, 2);
    notortho << 1, 1, 0, 1;
    EXPECT_THROW(ProjectorSpec::subspace({"1"}, notortho, "bad").materialize(*l),
                 ConfigurationError);
}

TEST(ProjectorSpec, DescribeIsReadable) {
    EXPECT_EQ(ProjectorSpec::identity().describe(), "1");
    EXPECT_EQ((ProjectorSpec::basis("X", Names{"up", "down"}) && ProjectorSpec::basis("1", "up"))
                  .describe(),
              "X=up|down & 1=up");
}

TEST(ProjectorSpec, Commutation) {
    const auto l = spin_layout();
    const auto z = ProjectorSpec::basis("1", "up");
    const auto x = spin_projector(DirectionAngle::radians(std::numbers::pi / 2), 1, "1");
    EXPECT_TRUE(projectors_commute(*l, z, z));
    EXPECT_TRUE(projectors_commute(*l, z, ProjectorSpec::identity()));
    EXPECT_FALSE(projectors_commute(*l, z, x));
}

// ------------------------------------------------------------- measurement

TEST(BornProbability, CompleteSetSumsToOne) {
    const auto plus = superpose({{kH, up()}, {kH, down()}});
    const double pu = born_probability(plus, ProjectorSpec::basis("1", "up"));
    const double pd = born_probability(plus, ProjectorSpec::basis("1", "down"));
    EXPECT_NEAR(pu + pd, 1.0, 1e-12);
    EXPECT_NEAR(pu, 0.5, 1e-15);
    EXPECT_DOUBLE_EQ(born_probability(plus, ProjectorSpec::identity()), 1.0);
}

TEST(ConditionalProbability, FullSpaceConditionIsBorn) {
    testing::Gen g(3);
    const auto l = testing::random_layout(g);
    const auto s = testing::random_state(g, l);
    const auto t = testing::random_basis_projector(g, *l);
    EXPECT_NEAR(conditional_probability(s, ProjectorSpec::identity(), t), born_probability(s, t),
                1e-12);
}

TEST(ConditionalProbability, ZeroProbabilityConditionIsAnError) {
    EXPECT_THROW(conditional_probability(up(), ProjectorSpec::basis("1", "down"),
                                         ProjectorSpec::basis("1", "up")),
                 UndefinedConditionalError);
}

TEST(ConditionalProbability, NonCommutingIsAContractError) {
    const auto plus = superpose({{kH, up()}, {kH, down()}});
    const auto x = spin_projector(DirectionAngle::radians(std::numbers::pi / 2), 1, "1");
    EXPECT_THROW(conditional_probability(plus, ProjectorSpec::basis("1", "up"), x), ContractError);
}

TEST(ProjectCollapse, BasisStateOntoItself) {
    const auto s = project_collapse(up(), ProjectorSpec::basis("1", "up"));
    EXPECT_DOUBLE_EQ(fidelity(s, up()), 1.0);
    EXPECT_THROW(project_collapse(up(), ProjectorSpec::basis("1", "down")),
                 UndefinedConditionalError);
}

TEST(ProjectCollapse, RenormalisesBranch) {
    const auto plus = superpose({{kH, up()}, {kH, down()}});
    const auto s = project_collapse(plus, ProjectorSpec::basis("1", "down"));
    EXPECT_NEAR(fidelity(s, down()), 1.0, 1e-15);
    EXPECT_NEAR(s.norm(), 1.0, 1e-15);
}

TEST(Partition, RejectsIncompleteOrOverlapping) {
    const auto l = make_layout({{"c", {"ready", "heads", "tails"}}});
    EXPECT_THROW(
        Partition(l, {ProjectorSpec::basis("c", "heads"), ProjectorSpec::basis("c", "tails")}),
        ContractError);
    EXPECT_THROW(Partition(l, {ProjectorSpec::basis("c", Names{"ready", "heads"}),
                               ProjectorSpec::basis("c", Names{"heads", "tails"})}),
                 ContractError);
    EXPECT_THROW(Partition(l, {}), ContractError);
}

TEST(SampleOutcome, SingletNeverGivesEqualOutcomes) {
    const auto l = make_layout({{"1", {"up", "down"}}, {"2", {"up", "down"}}});
    const auto ud = build_basis_state(l, {{"1", "up"}, {"2", "down"}});
    const auto du = build_basis_state(l, {{"1", "down"}, {"2", "up"}});
    const auto singlet = superpose({{kH, ud}, {-kH, du}});
    std::vector<ProjectorSpec> part;
    for (const char* a : {"up", "down"}) {
        for (const char* b : {"up", "down"}) {
            part.push_back(ProjectorSpec::basis("1", a) && ProjectorSpec::basis("2", b));
        }
    }
    const Partition p(l, part);
    for (std::uint64_t t = 0; t < 2000; ++t) {
        const auto k = sample_outcome(singlet, p, {5, t, 0}).index;
        EXPECT_TRUE(k == 1 || k == 2) << "trial " << t;
    }
}

TEST(SampleOutcome, DeterministicInKeyAndCollapses) {
    const auto plus = superpose({{kH, up()}, {kH, down()}});
    const auto part = testing::register_partition(plus.layout(), 0);
    for (std::uint64_t t = 0; t < 50; ++t) {
        const auto a = sample_outcome(plus, part, {9, t, 3});
        const auto b = sample_outcome(plus, part, {9, t, 3});
        EXPECT_EQ(a.index, b.index);
        EXPECT_DOUBLE_EQ(fidelity(a.state, a.index == 0 ? up() : down()), 1.0);
    }
}

TEST(DrawOutcome, SkipsZeroWeightsAndRejectsEmpty) {
    for (std::uint64_t t = 0; t < 200; ++t) {
        EXPECT_EQ(draw_outcome({0.0, 1.0, 0.0}, {1, t, 0}), 1u);
    }
    EXPECT_THROW(draw_outcome({0.0, 0.0}, {1, 0, 0}), ContractError);
}

}  // namespace
}  // namespace friendlab
