#include "pauliforge/semantics.hpp"

namespace pauliforge {

Equivalence equivalent(const Circuit& a, const Circuit& b, double eps) {
  if (a.qubits != b.qubits) throw std::invalid_argument("equivalent: qubit counts differ");
  const auto ua = circuit_unitary(a);
  const auto ub = circuit_unitary(b);
  const auto phase = equal_up_to_phase(ua, ub, eps);
  if (!phase) return {};
  return {true, *phase};
}

std::optional<std::vector<std::uint64_t>> truth_table(const Circuit& c, double eps) {
  const auto u = circuit_unitary(c);
  const auto dim = static_cast<std::uint64_t>(u.rows());
  std::vector<std::uint64_t> perm(dim);
  std::vector<bool> hit(dim, false);
  const double tol = eps;
  for (std::uint64_t col = 0; col < dim; ++col) {
    std::optional<std::uint64_t> image;
    for (std::uint64_t row = 0; row < dim; ++row) {
      const double mag = std::abs(u(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)));
      if (std::abs(mag - 1.0) <= tol) {
        if (image) return std::nullopt;
        image = row;
      } else if (mag > tol) {
        return std::nullopt;
      }
    }
    if (!image || hit[*image]) return std::nullopt;
    hit[*image] = true;
    perm[col] = *image;
  }
  return perm;
}

UnitaryMatrix line_permutation_matrix(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  const Eigen::Index dim = Eigen::Index{1} << n;
  UnitaryMatrix p = UnitaryMatrix::Zero(dim, dim);
  for (std::uint64_t x = 0; x < static_cast<std::uint64_t>(dim); ++x) {
    std::uint64_t y = 0;
    for (int q = 0; q < n; ++q)
      if (x & line_mask(q, n)) y |= line_mask(perm[static_cast<std::size_t>(q)], n);
    p(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(x)) = 1.0;
  }
  return p;
}

}  // namespace pauliforge
