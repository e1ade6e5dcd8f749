#include <numbers>

#include <gtest/gtest.h>

#include "pauliforge/builtins.hpp"
#include "pauliforge/semantics.hpp"
#include "test_util.hpp"

namespace pauliforge {
namespace {

using testing::Equivalent;
using testing::SameUpToPhase;
using testing::toffoli;

UnitaryMatrix cnot4() {
  UnitaryMatrix m = UnitaryMatrix::Zero(4, 4);
  m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
  return m;
}

UnitaryMatrix projector(int bit) {
  UnitaryMatrix p = UnitaryMatrix::Zero(2, 2);
  p(bit, bit) = 1;
  return p;
}

TEST(GateUnitary, CnotPermutation) { EXPECT_EQ(gate_unitary(cx(0, 1), 2), cnot4()); }

TEST(GateUnitary, FourControlledForms) {
  const Matrix2<double> u = pauli_root(Axis::Y, RootExponent{1, 4});
  const UnitaryMatrix i2 = UnitaryMatrix::Identity(2, 2);
  const UnitaryMatrix um(u);
  EXPECT_TRUE(approx_equal(gate_unitary(Gate(root(Axis::Y, 1, 4), 1, {pos(0)}), 2),
                           kron(projector(0), i2) + kron(projector(1), um)));
  EXPECT_TRUE(approx_equal(gate_unitary(Gate(root(Axis::Y, 1, 4), 0, {pos(1)}), 2),
                           kron(i2, projector(0)) + kron(um, projector(1))));
  EXPECT_TRUE(approx_equal(gate_unitary(Gate(root(Axis::Y, 1, 4), 1, {neg(0)}), 2),
                           kron(projector(0), um) + kron(projector(1), i2)));
  EXPECT_TRUE(approx_equal(gate_unitary(Gate(root(Axis::Y, 1, 4), 0, {neg(1)}), 2),
                           kron(um, projector(0)) + kron(i2, projector(1))));
}

TEST(GateUnitary, NegativeControlLeavesOneUnchanged) {
  const UnitaryMatrix m = gate_unitary(Gate(ops::X(), 1, {neg(0)}), 2);
  EXPECT_EQ(m(2, 2), std::complex<double>(1));
  EXPECT_EQ(m(3, 3), std::complex<double>(1));
}

TEST(GateUnitary, ZRootControlAndTargetSymmetric) {
  for (int k : {1, 2, 4, 8})
    EXPECT_TRUE(approx_equal(gate_unitary(Gate(root(Axis::Z, 1, k), 0, {pos(1)}), 2),
                             gate_unitary(Gate(root(Axis::Z, 1, k), 1, {pos(0)}), 2)));
}

TEST(GateUnitary, LineZeroIsMostSignificant) {
  const UnitaryMatrix m = gate_unitary(Gate(ops::X(), 0), 3);
  EXPECT_EQ(m(4, 0), std::complex<double>(1));  // |000> -> |100>
}

TEST(GateUnitary, InvalidGateThrows) {
  EXPECT_THROW(gate_unitary(Gate(ops::X(), 3), 2), std::invalid_argument);
}

TEST(CircuitUnitary, EmptyIsIdentity) {
  EXPECT_EQ(circuit_unitary(Circuit(3)), UnitaryMatrix::Identity(8, 8));
}

TEST(CircuitUnitary, TooManyQubits) {
  EXPECT_THROW(circuit_unitary(Circuit(kMaxDenseQubits + 1)), ResourceError);
}

TEST(CircuitUnitary, FirstGateActsFirst) {
  const Circuit c(1, {Gate(ops::H(), 0), Gate(ops::T(), 0)});
  EXPECT_TRUE(approx_equal(circuit_unitary(c), UnitaryMatrix(pauli_root(Axis::Z, RootExponent{1, 4}) * hadamard())));
}

TEST(CircuitUnitary, UnitaryWithinTolerance) {
  testing::CircuitSampler s(3);
  for (int i = 0; i < 50; ++i) {
    const Circuit c = s.circuit(s.uniform(1, 4), 30);
    EXPECT_TRUE(is_unitary(circuit_unitary(c), kEpsilon * 30));
  }
}

TEST(Equivalent, BarencoIsToffoli) { EXPECT_TRUE(Equivalent(builtin("barenco-toffoli"), toffoli())); }

TEST(Equivalent, AmyIsToffoli) { EXPECT_TRUE(Equivalent(builtin("amy-toffoli"), toffoli())); }

TEST(Equivalent, ToffoliIsNotCnot) { EXPECT_FALSE(equivalent(toffoli(), Circuit(3, {cx(0, 2)})).equivalent); }

TEST(Equivalent, CircuitThenInverseIsEmpty) {
  testing::CircuitSampler s(11);
  for (int i = 0; i < 50; ++i) {
    Circuit c = s.circuit(3, 12);
    const Circuit inv = inverse(c);
    c.gates.insert(c.gates.end(), inv.gates.begin(), inv.gates.end());
    EXPECT_TRUE(Equivalent(c, Circuit(3)));
  }
}

TEST(Equivalent, ReportsPhase) {
  const auto eq = equivalent(Circuit(1, {Gate(ops::Z(), 0)}), Circuit(1, {Gate(Negator{Axis::Z, std::numbers::pi / 2}, 0)}));
  ASSERT_TRUE(eq.equivalent);
  EXPECT_NEAR(std::abs(eq.phase - std::complex<double>(1)), 0.0, 1e-12);
}

TEST(Equivalent, QubitMismatchThrows) { EXPECT_THROW(equivalent(Circuit(1), Circuit(2)), std::invalid_argument); }

TEST(TruthTable, Toffoli) {
  const auto tt = truth_table(toffoli());
  ASSERT_TRUE(tt);
  EXPECT_EQ(*tt, (std::vector<std::uint64_t>{0, 1, 2, 3, 4, 5, 7, 6}));
}

TEST(TruthTable, PhasedPermutationIsClassical) {
  const auto tt = truth_table(builtin("barenco-toffoli"));
  ASSERT_TRUE(tt);
  EXPECT_EQ((*tt)[6], 7u);
}

TEST(TruthTable, HadamardIsNotClassical) { EXPECT_FALSE(truth_table(Circuit(1, {Gate(ops::H(), 0)}))); }

// per-entry phases are allowed, only the basis map matters
TEST(TruthTable, RelativePhaseIgnored) {
  const auto tt = truth_table(Circuit(1, {Gate(ops::T(), 0)}));
  ASSERT_TRUE(tt);
  EXPECT_EQ(*tt, (std::vector<std::uint64_t>{0, 1}));
}

TEST(TruthTable, SuperpositionIsNotClassical) {
  EXPECT_FALSE(truth_table(Circuit(2, {Gate(ops::V(), 1, {pos(0)})})));
}

// Controlled-operation identities checked as dense matrices over all axes and k in {1, 2, 4}.
class ControlledIdentities : public ::testing::TestWithParam<std::tuple<Axis, int>> {};

TEST_P(ControlledIdentities, MergeSameControls) {
  const auto [a, k] = GetParam();
  const Circuit pair(3, {Gate(root(a, 1, k), 2, {pos(0), neg(1)}), Gate(root(a, 3, k), 2, {pos(0), neg(1)})});
  EXPECT_TRUE(Equivalent(pair, Circuit(3, {Gate(root(a, 4, k), 2, {pos(0), neg(1)})})));
}

TEST_P(ControlledIdentities, OppositePolaritiesCommute) {
  const auto [a, k] = GetParam();
  const Gate g1(root(a, 1, k), 1, {pos(0)});
  const Gate g2(root(a == Axis::X ? Axis::Z : Axis::X, -1, k), 1, {neg(0)});
  EXPECT_TRUE(approx_equal(circuit_unitary(Circuit(2, {g1, g2})), circuit_unitary(Circuit(2, {g2, g1}))));
}

TEST_P(ControlledIdentities, BothPolaritiesCompose) {
  const auto [a, k] = GetParam();
  const Circuit both(2, {Gate(root(a, 1, k), 1, {neg(0)}), Gate(root(a, 1, k), 1, {pos(0)})});
  EXPECT_TRUE(approx_equal(circuit_unitary(both), circuit_unitary(Circuit(2, {Gate(root(a, 1, k), 1)}))));
}

TEST_P(ControlledIdentities, CaseGate) {
  const auto [a, k] = GetParam();
  const auto u1 = pauli_root(a, RootExponent{1, k});
  const auto u2 = pauli_root(a, RootExponent{-1, 2 * k});
  const Circuit c(2, {Gate(root(a, 1, k), 1, {neg(0)}), Gate(root(a, -1, 2 * k), 1, {pos(0)})});
  EXPECT_TRUE(approx_equal(circuit_unitary(c), kron(projector(0), UnitaryMatrix(u1)) + kron(projector(1), UnitaryMatrix(u2))));
}

TEST_P(ControlledIdentities, ZRootMovesAcrossControl) {
  const auto [a, k] = GetParam();
  const Gate z(root(Axis::Z, 1, k), 0);
  const Gate g(root(a, 1, k), 1, {pos(0)});
  EXPECT_TRUE(approx_equal(circuit_unitary(Circuit(2, {z, g})), circuit_unitary(Circuit(2, {g, z}))));
}

INSTANTIATE_TEST_SUITE_P(AxesAndDegrees, ControlledIdentities,
                         ::testing::Combine(::testing::ValuesIn(kAxes), ::testing::ValuesIn(testing::kDegrees)));

TEST(Relabel, PermutationSimilarity) {
  testing::CircuitSampler s(5);
  const std::vector<int> perm{2, 0, 1};
  const UnitaryMatrix p = line_permutation_matrix(perm);
  for (int i = 0; i < 30; ++i) {
    const Gate g = s.gate(3);
    Gate moved = g;
    moved.target = perm[static_cast<std::size_t>(g.target)];
    std::vector<Control> cs;
    for (auto c : g.controls) cs.push_back({perm[static_cast<std::size_t>(c.line)], c.polarity});
    moved = Gate(g.op, moved.target, cs);
    EXPECT_TRUE(approx_equal(gate_unitary(moved, 3), p * gate_unitary(g, 3) * p.adjoint()));
  }
}

}  // namespace
}  // namespace pauliforge
