#include "pauliforge/clifford_groups.hpp"

#include <cctype>
#include <cmath>
#include <deque>
#include <numbers>
#include <stdexcept>

namespace pauliforge {

namespace {

constexpr double kGrid = 1e-6;

int qubits_of(const UnitaryMatrix& u) {
  if (u.rows() != u.cols()) throw std::invalid_argument("matrix is not square");
  for (int n = 0; n <= 3; ++n)
    if (u.rows() == (Eigen::Index{1} << n)) return n;
  throw std::invalid_argument("dimension must be 2^n with n <= 3, got " + std::to_string(u.rows()));
}

const std::complex<double> kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

// Scale so the first clearly nonzero entry (row-major) is 1, then snap to the grid.
UnitaryMatrix phase_normalized(const UnitaryMatrix& u) {
  const double big = u.cwiseAbs().maxCoeff();
  for (Eigen::Index r = 0; r < u.rows(); ++r)
    for (Eigen::Index c = 0; c < u.cols(); ++c)
      if (std::abs(u(r, c)) > 0.5 * big) return u * (std::abs(u(r, c)) / u(r, c));
  return u;
}

std::size_t grid_hash(const UnitaryMatrix& normalized) {
  std::size_t h = 0;
  auto mix = [&h](long long v) { h ^= std::hash<long long>{}(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  for (Eigen::Index r = 0; r < normalized.rows(); ++r)
    for (Eigen::Index c = 0; c < normalized.cols(); ++c) {
      mix(std::llround(normalized(r, c).real() / kGrid));
      mix(std::llround(normalized(r, c).imag() / kGrid));
    }
  return h;
}

UnitaryMatrix embed(const Matrix2<double>& m, int line, int n) {
  UnitaryMatrix out = UnitaryMatrix::Identity(1, 1);
  for (int q = 0; q < n; ++q) {
    const UnitaryMatrix f = q == line ? UnitaryMatrix(m) : UnitaryMatrix::Identity(2, 2);
    out = kron(out, f);
  }
  return out;
}

UnitaryMatrix controlled(const Matrix2<double>& m, int control, int target) {
  UnitaryMatrix out = UnitaryMatrix::Identity(4, 4);
  const auto cbit = line_mask(control, 2), tbit = line_mask(target, 2);
  for (std::uint64_t row = 0; row < 4; ++row) {
    if (!(row & cbit) || (row & tbit)) continue;
    const auto r0 = static_cast<Eigen::Index>(row), r1 = static_cast<Eigen::Index>(row | tbit);
    out(r0, r0) = m(0, 0);
    out(r0, r1) = m(0, 1);
    out(r1, r0) = m(1, 0);
    out(r1, r1) = m(1, 1);
  }
  return out;
}

}  // namespace

UnitaryMatrix PauliWord::matrix() const {
  UnitaryMatrix out = UnitaryMatrix::Identity(1, 1);
  for (const auto& l : labels) out = kron(out, l ? UnitaryMatrix(pauli(*l)) : UnitaryMatrix::Identity(2, 2));
  return kIPowers[((phase % 4) + 4) % 4] * out;
}

std::string PauliWord::to_string() const {
  static const char* prefix[4] = {"", "i", "-", "-i"};
  std::string s = prefix[((phase % 4) + 4) % 4];
  for (const auto& l : labels) s += l ? static_cast<char>(std::toupper(axis_letter(*l))) : 'I';
  return s;
}

PauliWord operator*(const PauliWord& a, const PauliWord& b) {
  if (a.labels.size() != b.labels.size()) throw std::invalid_argument("Pauli words of different length");
  PauliWord out;
  out.phase = a.phase + b.phase;
  for (std::size_t q = 0; q < a.labels.size(); ++q) {
    const auto& x = a.labels[q];
    const auto& y = b.labels[q];
    if (!x) {
      out.labels.push_back(y);
    } else if (!y) {
      out.labels.push_back(x);
    } else if (*x == *y) {
      out.labels.push_back(std::nullopt);
    } else {
      // sigma_x sigma_y = i eps_xyz sigma_z
      const Axis z = third_axis(*x, *y);
      out.labels.push_back(z);
      out.phase += levi_civita(*x, *y, z) > 0 ? 1 : 3;
    }
  }
  out.phase %= 4;
  return out;
}

std::optional<PauliWord> is_pauli_word(const UnitaryMatrix& u, double eps) {
  const int n = qubits_of(u);
  const std::optional<Axis> choices[4] = {std::nullopt, Axis::X, Axis::Y, Axis::Z};
  const int total = 1 << (2 * n);
  for (int code = 0; code < total; ++code) {
    PauliWord w;
    for (int q = 0; q < n; ++q) w.labels.push_back(choices[(code >> (2 * (n - 1 - q))) & 3]);
    const UnitaryMatrix m = w.matrix();
    for (int p = 0; p < 4; ++p)
      if (approx_equal(u, kIPowers[p] * m, eps)) {
        w.phase = p;
        return w;
      }
  }
  return std::nullopt;
}

CliffordCheck is_clifford(const UnitaryMatrix& u, double eps) {
  const int n = qubits_of(u);
  CliffordCheck out;
  for (int q = 0; q < n; ++q)
    for (Axis a : {Axis::X, Axis::Z}) {
      PauliWord g;
      g.labels.assign(static_cast<std::size_t>(n), std::nullopt);
      g.labels[static_cast<std::size_t>(q)] = a;
      UnitaryMatrix conj = u * g.matrix() * u.adjoint();
      if (!is_pauli_word(conj, eps)) {
        out.generator = g;
        out.conjugate = std::move(conj);
        return out;
      }
    }
  out.clifford = true;
  return out;
}

GroupClosure::GroupClosure(Eigen::Index dim) : dim_(dim) {
  insert(UnitaryMatrix::Identity(dim, dim), 0, -1);
}

std::optional<std::size_t> GroupClosure::find(const UnitaryMatrix& u) const {
  const UnitaryMatrix v = phase_normalized(u);
  auto it = buckets_.find(grid_hash(v));
  if (it == buckets_.end()) return std::nullopt;
  for (std::size_t i : it->second)
    if (approx_equal(elements_[i], v, 10 * kGrid)) return i;
  return std::nullopt;
}

std::pair<std::size_t, bool> GroupClosure::insert(UnitaryMatrix u, std::size_t parent, int generator) {
  if (u.rows() != dim_) throw std::invalid_argument("element dimension does not match the group");
  if (auto i = find(u)) return {*i, false};
  UnitaryMatrix v = phase_normalized(u);
  const std::size_t idx = elements_.size();
  buckets_[grid_hash(v)].push_back(idx);
  elements_.push_back(std::move(v));
  origins_.push_back({parent, generator});
  return {idx, true};
}

std::vector<int> GroupClosure::word(std::size_t i) const {
  std::vector<int> w;
  while (origins_.at(i).generator >= 0) {
    w.push_back(origins_[i].generator);
    i = origins_[i].parent;
  }
  return {w.rbegin(), w.rend()};
}

bool GroupClosure::same_elements(const GroupClosure& other) const {
  if (order() != other.order() || dim_ != other.dim_) return false;
  for (const auto& e : elements_)
    if (!other.contains(e)) return false;
  return true;
}

GroupClosure bfs_closure(const std::vector<UnitaryMatrix>& gens, std::size_t max_order) {
  const Eigen::Index dim = gens.empty() ? 1 : gens.front().rows();
  for (const auto& g : gens) {
    if (g.rows() != dim || g.cols() != dim) throw std::invalid_argument("generators differ in dimension");
    if (!is_unitary(g, 1e-8)) throw std::invalid_argument("generator is not unitary");
  }
  GroupClosure group(dim);
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const std::size_t cur = queue.front();
    queue.pop_front();
    for (std::size_t k = 0; k < gens.size(); ++k) {
      auto [idx, fresh] = group.insert(gens[k] * group.element(cur), cur, static_cast<int>(k));
      if (!fresh) continue;
      if (group.order() > max_order)
        throw ResourceError("closure exceeded max order " + std::to_string(max_order) + " (reached " +
                            std::to_string(group.order()) + ")");
      queue.push_back(idx);
    }
  }
  return group;
}

bool generators_equivalent(const std::vector<UnitaryMatrix>& a, const std::vector<UnitaryMatrix>& b,
                           std::size_t max_order) {
  if (!a.empty() && !b.empty() && a.front().rows() != b.front().rows())
    throw std::invalid_argument("generator sets act on different dimensions");
  return bfs_closure(a, max_order).same_elements(bfs_closure(b, max_order));
}

std::vector<UnitaryMatrix> clifford_generators(GeneratorSet set, int n, Axis a, Axis b) {
  if (n != 1 && n != 2) throw std::invalid_argument("generator sets are provided for 1 or 2 lines");
  if (set != GeneratorSet::Standard && a == b) throw std::invalid_argument("axes must differ");
  Matrix2<double> single, change, target;
  switch (set) {
    case GeneratorSet::Standard:
      single = pauli_root<double>(Axis::Z, RootExponent{1, 2});
      change = hadamard<double>();
      target = pauli<double>(Axis::X);
      break;
    case GeneratorSet::PauliRoot:
      single = pauli_root<double>(a, RootExponent{1, 2});
      change = translation<double>(a, b);
      target = pauli<double>(a);
      break;
    case GeneratorSet::Corollary:
      single = pauli_root<double>(b, RootExponent{1, 2});
      change = translation<double>(a, b);
      target = pauli<double>(a);
      break;
    case GeneratorSet::Negator:
      single = negator<double>(a, std::numbers::pi / 4);
      change = translation<double>(a, b);
      target = pauli<double>(a);
      break;
  }
  std::vector<UnitaryMatrix> out;
  if (n == 2) {
    out.push_back(controlled(target, 0, 1));
    out.push_back(controlled(target, 1, 0));
  }
  for (int q = 0; q < n; ++q) {
    out.push_back(embed(single, q, n));
    out.push_back(embed(change, q, n));
  }
  return out;
}

std::vector<IdentityCheck> clifford_identities_check() {
  const UnitaryMatrix s = pauli_root<double>(Axis::Z, RootExponent{1, 2});
  const UnitaryMatrix h = hadamard<double>();
  const UnitaryMatrix x = pauli<double>(Axis::X), y = pauli<double>(Axis::Y), z = pauli<double>(Axis::Z);
  auto same = [](const UnitaryMatrix& p, const UnitaryMatrix& q) { return equal_up_to_phase(p, q).has_value(); };
  // products read right to left: the rightmost factor acts first
  return {
      {"Z = S S", same(z, s * s)},
      {"X = H S S H", same(x, h * s * s * h)},
      {"Y = S H S S H S S S", same(y, s * h * s * s * h * s * s * s)},
      {"Y = S X S^dagger", same(y, s * x * s.adjoint())},
  };
}

}  // namespace pauliforge
