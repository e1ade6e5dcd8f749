#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "pauliforge/circuit.hpp"
#include "pauliforge/gate_algebra.hpp"

namespace pauliforge {

/// Dense simulation limit.
inline constexpr int kMaxDenseQubits = 12;

class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bit mask of line `q` in an n-qubit basis index; line 0 is the most significant bit.
constexpr std::uint64_t line_mask(int q, int n) { return std::uint64_t{1} << (n - 1 - q); }

/// Applies `g` in place to the columns of `m` (left-multiplies by the gate unitary).
template <typename Scalar, typename Derived>
void apply_gate_left(const Gate& g, int n, Eigen::MatrixBase<Derived>& m) {
  const Matrix2<Scalar> u = op_matrix<Scalar>(g.op);
  const std::uint64_t tbit = line_mask(g.target, n);
  std::uint64_t care = 0, want = 0;
  for (const auto& c : g.controls) {
    care |= line_mask(c.line, n);
    if (c.polarity == Polarity::Positive) want |= line_mask(c.line, n);
  }
  const std::uint64_t dim = std::uint64_t{1} << n;
  for (std::uint64_t row = 0; row < dim; ++row) {
    if (row & tbit) continue;
    if ((row & care) != want) continue;
    const auto r0 = static_cast<Eigen::Index>(row);
    const auto r1 = static_cast<Eigen::Index>(row | tbit);
    for (Eigen::Index col = 0; col < m.cols(); ++col) {
      const auto a = m(r0, col), b = m(r1, col);
      m(r0, col) = u(0, 0) * a + u(0, 1) * b;
      m(r1, col) = u(1, 0) * a + u(1, 1) * b;
    }
  }
}

/// 2^n x 2^n matrix of a single gate: the 2x2 op acts on the target bit of every
/// basis state whose control bits all match their polarities.
template <typename Scalar = double>
MatrixX<Scalar> gate_unitary(const Gate& g, int n) {
  require_valid(Circuit(n, {g}));
  if (n > kMaxDenseQubits) throw ResourceError("dense simulation limited to " + std::to_string(kMaxDenseQubits) + " qubits");
  MatrixX<Scalar> m = MatrixX<Scalar>::Identity(Eigen::Index{1} << n, Eigen::Index{1} << n);
  apply_gate_left<Scalar>(g, n, m);
  return m;
}

/// Product of gate unitaries; the first gate in the list acts first.
template <typename Scalar = double>
MatrixX<Scalar> circuit_unitary(const Circuit& c) {
  require_valid(c);
  if (c.qubits > kMaxDenseQubits)
    throw ResourceError("dense simulation limited to " + std::to_string(kMaxDenseQubits) + " qubits");
  const Eigen::Index dim = Eigen::Index{1} << c.qubits;
  MatrixX<Scalar> m = MatrixX<Scalar>::Identity(dim, dim);
  for (const auto& g : c.gates) apply_gate_left<Scalar>(g, c.qubits, m);
  return m;
}

struct Equivalence {
  bool equivalent = false;
  std::complex<double> phase{1.0, 0.0};  // unitary(a) = phase * unitary(b) when equivalent
};

/// Throws std::invalid_argument when qubit counts differ.
Equivalence equivalent(const Circuit& a, const Circuit& b, double eps = kEpsilon);

/// Basis permutation realised by a circuit whose unitary is a permutation matrix up
/// to unit-modulus entries; nullopt when the circuit is not classical.
std::optional<std::vector<std::uint64_t>> truth_table(const Circuit& c, double eps = kEpsilon);

/// Permutation matrix for relabelling lines: new line perm[q] takes the role of line q.
UnitaryMatrix line_permutation_matrix(const std::vector<int>& perm);

}  // namespace pauliforge
