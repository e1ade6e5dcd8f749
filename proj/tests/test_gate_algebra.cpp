#include <cmath>
#include <complex>
#include <numbers>

#include <gtest/gtest.h>

#include "pauliforge/gate_algebra.hpp"
#include "test_util.hpp"

namespace pauliforge {
namespace {

using testing::SameUpToPhase;
using C = std::complex<double>;
constexpr double kPi = std::numbers::pi;
const C kI{0, 1};

Matrix2<double> phase(double angle) { return unit_phase(angle) * identity2(); }

TEST(RootExponent, ReducesAndNormalizesSign) {
  EXPECT_EQ(RootExponent(2, 8), RootExponent(1, 4));
  EXPECT_EQ(RootExponent(3, -6).num(), -1);
  EXPECT_EQ(RootExponent(3, -6).den(), 2);
  EXPECT_EQ(RootExponent(0, 5).den(), 1);
  EXPECT_THROW(RootExponent(1, 0), std::invalid_argument);
}

TEST(RootExponent, WrapsIntoHalfOpenInterval) {
  EXPECT_EQ(RootExponent(5, 4).wrapped(), RootExponent(-3, 4));
  EXPECT_EQ(RootExponent(-1, 1).wrapped(), RootExponent(1, 1));
  EXPECT_EQ(RootExponent(2, 1).wrapped(), RootExponent(0, 1));
}

TEST(Rotation, ZeroAngleIsIdentity) {
  for (Axis a : kAxes) EXPECT_TRUE(approx_equal(rotation(a, 0.0), identity2()));
}

TEST(Rotation, HalfTurnAboutZ) {
  EXPECT_TRUE(approx_equal(rotation(Axis::Z, kPi), std::exp(-kI * kPi / 2.0) * pauli(Axis::Z)));
}

TEST(Rotation, AnglesAdd) {
  const Matrix2<double> q = rotation(Axis::X, kPi / 2);
  EXPECT_TRUE(approx_equal(q * q, rotation(Axis::X, kPi)));
}

TEST(Rotation, RejectsNonFiniteAngle) {
  EXPECT_THROW(rotation(Axis::X, std::nan("")), std::invalid_argument);
  EXPECT_THROW(negator(Axis::X, INFINITY), std::invalid_argument);
}

TEST(PauliRoot, TIsDiagonalPhase) {
  Matrix2<double> t = Matrix2<double>::Zero();
  t(0, 0) = 1;
  t(1, 1) = std::exp(kI * kPi / 4.0);
  EXPECT_TRUE(approx_equal(pauli_root(Axis::Z, RootExponent{1, 4}), t));
}

TEST(PauliRoot, ZeroPowerIsIdentity) {
  for (Axis a : kAxes) EXPECT_TRUE(approx_equal(pauli_root(a, RootExponent{0}), identity2()));
}

TEST(PauliRoot, VSquaredIsX) {
  const auto v = pauli_root(Axis::X, RootExponent{1, 2});
  EXPECT_TRUE(approx_equal(v * v, pauli(Axis::X)));
}

TEST(PauliRoot, FullPowerIsExactPauli) {
  for (Axis a : kAxes) EXPECT_EQ(pauli_root(a, RootExponent{1}), pauli(a));
}

TEST(PauliRoot, MatchesRotationForm) {
  for (Axis a : kAxes)
    for (int k : testing::kDegrees)
      for (int m = -2 * k; m <= 2 * k; ++m) {
        const double angle = kPi * m / k;
        EXPECT_TRUE(approx_equal(pauli_root(a, RootExponent{m, k}), unit_phase(angle / 2) * rotation(a, angle)))
            << axis_letter(a) << " " << m << "/" << k;
      }
}

TEST(PauliRoot, ExponentsAdd) {
  for (Axis a : kAxes)
    for (int k1 : {1, 2, 4, 8})
      for (int k2 : {1, 2, 4, 8})
        for (int m1 = -k1; m1 <= k1; ++m1)
          for (int m2 = -k2; m2 <= k2; ++m2) {
            const RootExponent e1{m1, k1}, e2{m2, k2};
            EXPECT_TRUE(approx_equal(pauli_root(a, e1) * pauli_root(a, e2), pauli_root(a, e1 + e2)));
          }
}

TEST(PauliRoot, NegativeExponentIsDagger) {
  for (Axis a : kAxes)
    for (int k : {1, 2, 4, 8})
      EXPECT_TRUE(approx_equal(pauli_root(a, RootExponent{-1, k}), pauli_root(a, RootExponent{1, k}).adjoint()));
}

TEST(PauliIdentities, PauliAsHalfTurn) {
  for (Axis a : kAxes) EXPECT_TRUE(approx_equal(pauli(a), unit_phase(kPi / 2) * rotation(a, kPi)));
}

TEST(PauliIdentities, RotationDaggerByConjugation) {
  for (Axis a : kAxes)
    for (Axis b : kAxes) {
      if (a == b) continue;
      for (double theta : {0.3, 1.1, -2.7, kPi / 3}) {
        const auto r = rotation(a, theta);
        EXPECT_TRUE(approx_equal(r.adjoint(), rotation(a, -theta)));
        EXPECT_TRUE(approx_equal(r.adjoint(), pauli(b) * r * pauli(b)));
      }
    }
}

TEST(PauliIdentities, RootsAsRotations) {
  for (Axis a : kAxes)
    for (int k : {1, 2, 4, 8}) {
      const auto root = pauli_root(a, RootExponent{1, k});
      EXPECT_TRUE(approx_equal(root, unit_phase(kPi / (2 * k)) * rotation(a, kPi / k)));
      EXPECT_TRUE(approx_equal(root.adjoint(), unit_phase(-kPi / (2 * k)) * rotation(a, kPi / k).adjoint()));
      EXPECT_TRUE(approx_equal(rotation(a, kPi / k), unit_phase(-kPi / (2 * k)) * root));
    }
}

TEST(PauliIdentities, RootAsConjugatedDagger) {
  for (Axis a : kAxes)
    for (Axis b : kAxes) {
      if (a == b) continue;
      for (int k : {1, 2, 4, 8}) {
        const auto root = pauli_root(a, RootExponent{1, k});
        EXPECT_TRUE(approx_equal(root, unit_phase(kPi / k) * pauli(b) * root.adjoint() * pauli(b)));
        EXPECT_TRUE(approx_equal(root.adjoint(), unit_phase(-kPi / k) * pauli(b) * root * pauli(b)));
      }
    }
}

TEST(Translation, HadamardIsXZ) {
  Matrix2<double> h;
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  EXPECT_TRUE(approx_equal(translation(Axis::X, Axis::Z), h));
  EXPECT_TRUE(approx_equal(hadamard(), h));
}

TEST(Translation, SameAxisIsIdentity) {
  for (Axis a : kAxes) EXPECT_EQ(translation(a, a), identity2());
}

TEST(Translation, XYMatchesRotationProduct) {
  const auto q = kPi / 2;
  EXPECT_TRUE(approx_equal(translation(Axis::X, Axis::Y),
                           unit_phase(kPi / 2) * rotation(Axis::X, q) * rotation(Axis::Y, q) * rotation(Axis::X, q)));
}

TEST(Translation, HermitianInvolutionAndSymmetric) {
  for (Axis a : kAxes)
    for (Axis b : kAxes) {
      const auto r = translation(a, b);
      EXPECT_TRUE(approx_equal(r, r.adjoint()));
      EXPECT_TRUE(approx_equal(r * r, identity2()));
      EXPECT_TRUE(approx_equal(r, translation(b, a)));
      if (a == b) continue;
      const auto q = kPi / 2;
      EXPECT_TRUE(approx_equal(r, unit_phase(kPi / 2) * rotation(a, q) * rotation(b, q) * rotation(a, q)));
    }
}

TEST(Translation, ConjugatesPaulisAndRoots) {
  for (Axis a : kAxes)
    for (Axis b : kAxes) {
      if (a == b) continue;
      const auto r = translation(a, b);
      EXPECT_TRUE(approx_equal(pauli(a), r * pauli(b) * r));
      for (int k : {1, 2, 4, 8})
        EXPECT_TRUE(approx_equal(pauli_root(a, RootExponent{1, k}), r * pauli_root(b, RootExponent{1, k}) * r));
    }
}

TEST(Hadamard, AsRotationsAndAsBasisChange) {
  const auto q = kPi / 2;
  const auto h = hadamard();
  EXPECT_TRUE(approx_equal(h, unit_phase(kPi / 2) * rotation(Axis::X, q) * rotation(Axis::Z, q) * rotation(Axis::X, q)));
  EXPECT_TRUE(approx_equal(h, (pauli(Axis::X) + pauli(Axis::Z)) / std::sqrt(2.0)));
  EXPECT_TRUE(approx_equal(pauli(Axis::Z), h * pauli(Axis::X) * h));
  EXPECT_TRUE(approx_equal(pauli(Axis::X), h * pauli(Axis::Z) * h));
}

TEST(PauliProducts, CommutationRelations) {
  for (Axis a : kAxes)
    for (Axis b : kAxes) {
      Matrix2<double> rhs = a == b ? identity2() : Matrix2<double>::Zero();
      for (Axis c : kAxes) rhs += kI * double(levi_civita(a, b, c)) * pauli(c);
      EXPECT_TRUE(approx_equal(pauli(a) * pauli(b), rhs)) << axis_letter(a) << axis_letter(b);
    }
}

TEST(PauliProducts, PauliAsProductOfOthers) {
  // sigma_c = -i eps_abc sigma_a sigma_b for distinct a, b
  for (Axis a : kAxes)
    for (Axis b : kAxes) {
      if (a == b) continue;
      const Axis c = third_axis(a, b);
      EXPECT_TRUE(approx_equal(pauli(c), -kI * double(levi_civita(a, b, c)) * pauli(a) * pauli(b)));
    }
}

TEST(PauliProducts, RootConjugationCyclicCase) {
  for (Axis a : kAxes)
    for (Axis b : kAxes) {
      if (a == b) continue;
      const Axis c = third_axis(a, b);
      if (levi_civita(a, b, c) != 1) continue;
      const auto sc = pauli_root(c, RootExponent{1, 2});
      for (int k : testing::kDegrees)
        EXPECT_TRUE(approx_equal(pauli_root(b, RootExponent{1, k}), sc * pauli_root(a, RootExponent{1, k}) * sc.adjoint()))
            << axis_letter(a) << axis_letter(b) << " k=" << k;
    }
}

// The anti-cyclic ordering does not hold with the same form: sqrt(sigma_c) rotates the
// other way. Only the conjugation by the dagger works there.
TEST(PauliProducts, RootConjugationAntiCyclicNeedsDagger) {
  const Axis a = Axis::Y, b = Axis::X, c = Axis::Z;
  ASSERT_EQ(levi_civita(a, b, c), -1);
  const auto sc = pauli_root(c, RootExponent{1, 2});
  for (int k : {2, 4}) {
    const auto lhs = pauli_root(b, RootExponent{1, k});
    EXPECT_FALSE(equal_up_to_phase(lhs, sc * pauli_root(a, RootExponent{1, k}) * sc.adjoint()));
    EXPECT_TRUE(approx_equal(lhs, sc.adjoint() * pauli_root(a, RootExponent{1, k}) * sc));
  }
}

TEST(Negator, ZeroAngleIsIdentity) {
  for (Axis a : kAxes) EXPECT_TRUE(approx_equal(negator(a, 0.0), identity2()));
}

TEST(Negator, QuarterTurnIsSquareRoot) {
  for (Axis a : kAxes) EXPECT_TRUE(approx_equal(negator(a, kPi / 4), pauli_root(a, RootExponent{1, 2})));
}

TEST(Negator, EqualsPhasedRotation) {
  for (Axis a : kAxes)
    for (double theta : {0.3, 1.1, 2.7, -0.9}) {
      EXPECT_TRUE(approx_equal(negator(a, theta), unit_phase(theta) * rotation(a, 2 * theta)));
      EXPECT_TRUE(is_unitary(negator(a, theta)));
    }
}

TEST(Negator, HalfTurnIsPauli) {
  for (Axis a : kAxes) EXPECT_TRUE(approx_equal(negator(a, kPi / 2), pauli(a)));
}

TEST(Kron, Basics) {
  EXPECT_TRUE(approx_equal(kron(identity2(), identity2()), UnitaryMatrix::Identity(4, 4)));
  UnitaryMatrix zi = UnitaryMatrix::Zero(4, 4);
  zi.diagonal() << 1, 1, -1, -1;
  EXPECT_TRUE(approx_equal(kron(pauli(Axis::Z), identity2()), zi));
  Eigen::VectorXcd ket10 = Eigen::VectorXcd::Zero(4);
  ket10(2) = 1;
  Eigen::VectorXcd ket00 = Eigen::VectorXcd::Zero(4);
  ket00(0) = 1;
  EXPECT_TRUE(approx_equal(kron(pauli(Axis::X), identity2()) * ket10, ket00));
}

TEST(EqualUpToPhase, ReturnsPhase) {
  const auto lambda = equal_up_to_phase(phase(kPi / 7), identity2());
  ASSERT_TRUE(lambda);
  EXPECT_NEAR(std::abs(*lambda - std::exp(kI * kPi / 7.0)), 0.0, 1e-12);
}

TEST(EqualUpToPhase, DifferentZeroPatterns) {
  EXPECT_FALSE(equal_up_to_phase(pauli(Axis::X), pauli(Axis::Z)));
}

TEST(EqualUpToPhase, PauliAsRotation) {
  for (Axis a : kAxes) {
    const auto lambda = equal_up_to_phase(pauli(a), rotation(a, kPi));
    ASSERT_TRUE(lambda);
    EXPECT_NEAR(std::abs(*lambda - kI), 0.0, 1e-12);
  }
}

TEST(EqualUpToPhase, DimensionMismatchThrows) {
  EXPECT_THROW(equal_up_to_phase(identity2(), UnitaryMatrix::Identity(4, 4)), std::invalid_argument);
}

TEST(EqualUpToPhase, RejectsNonUnitScale) {
  EXPECT_FALSE(equal_up_to_phase(UnitaryMatrix(2.0 * identity2()), UnitaryMatrix(identity2())));
}

TEST(Constructors, AllUnitary) {
  for (Axis a : kAxes) {
    for (Axis b : kAxes) EXPECT_TRUE(is_unitary(translation(a, b), 10 * kEpsilon));
    for (int k : {1, 2, 3, 4, 8, 16})
      for (int m = -k; m <= k; ++m) EXPECT_TRUE(is_unitary(pauli_root(a, RootExponent{m, k}), 10 * kEpsilon));
  }
}

TEST(Constructors, SnapsTinyEntries) {
  const auto h = rotation(Axis::X, kPi);
  EXPECT_EQ(h(0, 0), C(0, 0));
}

}  // namespace
}  // namespace pauliforge
