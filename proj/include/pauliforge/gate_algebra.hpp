#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <stdexcept>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "pauliforge/named_op.hpp"

namespace pauliforge {

template <typename Scalar>
using Complex = std::complex<Scalar>;

template <typename Scalar>
using Matrix2 = Eigen::Matrix<std::complex<Scalar>, 2, 2>;

template <typename Scalar>
using MatrixX = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

/// Dense 2^n x 2^n unitary, row index = output basis state.
using UnitaryMatrix = MatrixX<double>;

/// Per-entry absolute tolerance used throughout.
inline constexpr double kEpsilon = 1e-9;

/// Constructor outputs have real and imaginary parts below this snapped to zero.
inline constexpr double kSnapThreshold = 1e-12;

template <typename Derived>
void snap_in_place(Eigen::MatrixBase<Derived>& m) {
  using C = typename Derived::Scalar;
  using R = typename C::value_type;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      C v = m(i, j);
      R re = std::abs(v.real()) < R(kSnapThreshold) ? R(0) : v.real();
      R im = std::abs(v.imag()) < R(kSnapThreshold) ? R(0) : v.imag();
      m(i, j) = C(re, im);
    }
  }
}

template <typename Scalar = double>
Matrix2<Scalar> identity2() {
  return Matrix2<Scalar>::Identity();
}

template <typename Scalar = double>
Matrix2<Scalar> pauli(Axis a) {
  using C = Complex<Scalar>;
  Matrix2<Scalar> m;
  switch (a) {
    case Axis::X: m << C(0), C(1), C(1), C(0); break;
    case Axis::Y: m << C(0), C(0, -1), C(0, 1), C(0); break;
    case Axis::Z: m << C(1), C(0), C(0), C(-1); break;
  }
  return m;
}

/// Levi-Civita symbol over axis indices 1..3.
constexpr int levi_civita(Axis a, Axis b, Axis c) {
  const int x = index_of(a), y = index_of(b), z = index_of(c);
  return (x - y) * (y - z) * (z - x) / 2;
}

/// R_a(theta) = cos(theta/2) I - i sin(theta/2) sigma_a.
template <typename Scalar = double>
Matrix2<Scalar> rotation(Axis a, Scalar theta) {
  if (!std::isfinite(theta)) throw std::invalid_argument("rotation angle must be finite");
  const Complex<Scalar> minus_i(0, -1);
  Matrix2<Scalar> m = std::cos(theta / 2) * identity2<Scalar>() + minus_i * std::sin(theta / 2) * pauli<Scalar>(a);
  snap_in_place(m);
  return m;
}

template <typename Scalar = double>
Complex<Scalar> unit_phase(Scalar angle) {
  return std::polar(Scalar(1), angle);
}

/// sigma_a^{m/k} = e^{i pi m / 2k} R_a(pi m / k).
template <typename Scalar = double>
Matrix2<Scalar> pauli_root(Axis a, const RootExponent& e) {
  const RootExponent w = e.wrapped();
  if (w == RootExponent{1}) return pauli<Scalar>(a);
  if (w.is_zero()) return identity2<Scalar>();
  const Scalar angle = std::numbers::pi_v<Scalar> * Scalar(w.num()) / Scalar(w.den());
  Matrix2<Scalar> m = unit_phase<Scalar>(angle / 2) * rotation<Scalar>(a, angle);
  snap_in_place(m);
  return m;
}

/// rho_ab = (sigma_a + sigma_b) / sqrt 2; rho_aa = I.
template <typename Scalar = double>
Matrix2<Scalar> translation(Axis a, Axis b) {
  if (a == b) return identity2<Scalar>();
  Matrix2<Scalar> m = (pauli<Scalar>(a) + pauli<Scalar>(b)) / std::sqrt(Scalar(2));
  snap_in_place(m);
  return m;
}

template <typename Scalar = double>
Matrix2<Scalar> hadamard() {
  return translation<Scalar>(Axis::X, Axis::Z);
}

/// N_a(theta) = I + i sin(theta) e^{i theta} (I - sigma_a).
template <typename Scalar = double>
Matrix2<Scalar> negator(Axis a, Scalar theta) {
  if (!std::isfinite(theta)) throw std::invalid_argument("negator angle must be finite");
  const Complex<Scalar> coeff = Complex<Scalar>(0, std::sin(theta)) * unit_phase<Scalar>(theta);
  Matrix2<Scalar> m = identity2<Scalar>() + coeff * (identity2<Scalar>() - pauli<Scalar>(a));
  snap_in_place(m);
  return m;
}

template <typename Scalar = double>
Matrix2<Scalar> op_matrix(const NamedOp& op) {
  if (auto* r = std::get_if<PauliRoot>(&op)) return pauli_root<Scalar>(r->axis, r->exponent);
  if (auto* t = std::get_if<Translation>(&op)) return translation<Scalar>(t->first, t->second);
  const auto& n = std::get<Negator>(op);
  return negator<Scalar>(n.axis, Scalar(n.theta));
}

template <typename A, typename B>
auto kron(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  using C = typename A::Scalar;
  Eigen::Matrix<C, Eigen::Dynamic, Eigen::Dynamic> out = Eigen::kroneckerProduct(a.derived(), b.derived()).eval();
  return out;
}

template <typename Derived>
bool is_unitary(const Eigen::MatrixBase<Derived>& u, double eps = kEpsilon) {
  if (u.rows() != u.cols()) return false;
  const auto prod = (u * u.adjoint()).eval();
  using C = typename Derived::Scalar;
  for (Eigen::Index i = 0; i < prod.rows(); ++i)
    for (Eigen::Index j = 0; j < prod.cols(); ++j)
      if (std::abs(prod(i, j) - (i == j ? C(1) : C(0))) > eps) return false;
  return true;
}

template <typename A, typename B>
bool approx_equal(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b, double eps = kEpsilon) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (std::abs(a(i, j) - b(i, j)) > eps) return false;
  return true;
}

/// If a = lambda * b for a unit-modulus lambda (per-entry within eps), returns lambda.
/// lambda is read off the largest-magnitude entry of b.
template <typename A, typename B>
std::optional<typename A::Scalar> equal_up_to_phase(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b,
                                                    double eps = kEpsilon) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("equal_up_to_phase: dimension mismatch");
  using C = typename A::Scalar;
  Eigen::Index bi = 0, bj = 0;
  b.cwiseAbs().maxCoeff(&bi, &bj);
  if (std::abs(b(bi, bj)) <= eps) return approx_equal(a, b, eps) ? std::optional<C>(C(1)) : std::nullopt;
  C lambda = a(bi, bj) / b(bi, bj);
  if (std::abs(std::abs(lambda) - 1) > std::sqrt(eps)) return std::nullopt;
  lambda /= std::abs(lambda);
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (std::abs(a(i, j) - lambda * b(i, j)) > eps) return std::nullopt;
  return lambda;
}

}  // namespace pauliforge
