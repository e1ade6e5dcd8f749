#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "pauliforge/gate_algebra.hpp"
#include "pauliforge/semantics.hpp"

namespace pauliforge {

/// phase * (label_0 (x) label_1 (x) ...), phase a power of i. Empty label = identity.
struct PauliWord {
  std::vector<std::optional<Axis>> labels;
  int phase = 0;  // exponent of i, 0..3

  UnitaryMatrix matrix() const;
  std::string to_string() const;

  bool operator==(const PauliWord&) const = default;
};

PauliWord operator*(const PauliWord& a, const PauliWord& b);

/// Throws std::invalid_argument unless u is square with a power-of-two dimension up to 8.
std::optional<PauliWord> is_pauli_word(const UnitaryMatrix& u, double eps = kEpsilon);

struct CliffordCheck {
  bool clifford = false;
  std::optional<PauliWord> generator;  // X_i or Z_i whose conjugate left the Pauli group
  UnitaryMatrix conjugate;             // U g U^dagger for that generator

  explicit operator bool() const { return clifford; }
};

CliffordCheck is_clifford(const UnitaryMatrix& u, double eps = kEpsilon);

/// Unitaries modulo global phase, with the generator word that first reached each one.
class GroupClosure {
 public:
  explicit GroupClosure(Eigen::Index dim);

  std::size_t order() const { return elements_.size(); }
  const UnitaryMatrix& element(std::size_t i) const { return elements_[i]; }
  /// Generator indices, first applied first.
  std::vector<int> word(std::size_t i) const;
  bool contains(const UnitaryMatrix& u) const { return find(u).has_value(); }
  bool same_elements(const GroupClosure& other) const;

  std::optional<std::size_t> find(const UnitaryMatrix& u) const;
  /// Returns the index and whether it was new.
  std::pair<std::size_t, bool> insert(UnitaryMatrix u, std::size_t parent, int generator);

 private:
  struct Origin {
    std::size_t parent;
    int generator;  // -1 for the identity
  };
  Eigen::Index dim_;
  std::vector<UnitaryMatrix> elements_;
  std::vector<Origin> origins_;
  std::unordered_map<std::size_t, std::vector<std::size_t>> buckets_;
};

inline constexpr std::size_t kDefaultMaxOrder = 20000;

/// Left-multiplies by generators breadth first until closed. Throws ResourceError when
/// the order would exceed max_order and std::invalid_argument on mismatched dimensions.
GroupClosure bfs_closure(const std::vector<UnitaryMatrix>& gens, std::size_t max_order = kDefaultMaxOrder);

bool generators_equivalent(const std::vector<UnitaryMatrix>& a, const std::vector<UnitaryMatrix>& b,
                           std::size_t max_order = kDefaultMaxOrder);

enum class GeneratorSet {
  Standard,   // CNOT, S, H
  PauliRoot,  // C(sigma_a), sqrt sigma_a, rho_ab
  Corollary,  // C(sigma_a), sqrt sigma_b, rho_ab
  Negator,    // C(sigma_a), N_a(pi/4), rho_ab
};

/// Generators on n = 1 or 2 lines. For n = 2 single-line gates are placed on both lines
/// and controlled gates in both orientations; n = 1 drops the controlled gate.
std::vector<UnitaryMatrix> clifford_generators(GeneratorSet set, int n, Axis a = Axis::X, Axis b = Axis::Z);

struct IdentityCheck {
  std::string name;
  bool holds = false;
};

/// Z = SS, X = HSSH, Y = SHSSHSSS, Y = S X S^dagger, each up to global phase.
std::vector<IdentityCheck> clifford_identities_check();

}  // namespace pauliforge
