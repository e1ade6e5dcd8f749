#pragma once

#include <optional>
#include <string>
#include <variant>

#include "pauliforge/rational.hpp"

namespace pauliforge {

enum class Axis : int { X = 1, Y = 2, Z = 3 };

inline constexpr Axis kAxes[] = {Axis::X, Axis::Y, Axis::Z};

constexpr int index_of(Axis a) { return static_cast<int>(a); }

inline char axis_letter(Axis a) {
  switch (a) {
    case Axis::X: return 'x';
    case Axis::Y: return 'y';
    case Axis::Z: return 'z';
  }
  return '?';
}

inline std::optional<Axis> axis_from_letter(char c) {
  switch (c) {
    case 'x': case 'X': case '1': return Axis::X;
    case 'y': case 'Y': case '2': return Axis::Y;
    case 'z': case 'Z': case '3': return Axis::Z;
    default: return std::nullopt;
  }
}

/// The axis different from both arguments; requires a != b.
constexpr Axis third_axis(Axis a, Axis b) { return static_cast<Axis>(6 - index_of(a) - index_of(b)); }

/// sigma_axis^exponent. The exponent is kept in (-1, 1].
struct PauliRoot {
  Axis axis = Axis::Z;
  RootExponent exponent{1};

  PauliRoot() = default;
  PauliRoot(Axis a, RootExponent e) : axis(a), exponent(e.wrapped()) {}

  bool is_pauli() const { return exponent == RootExponent{1}; }
  bool is_identity() const { return exponent.is_zero(); }
  PauliRoot adjoint() const { return {axis, -exponent}; }

  bool operator==(const PauliRoot&) const = default;
};

/// rho_ab = (sigma_a + sigma_b) / sqrt 2, with rho_aa = I. Stored with first <= second.
struct Translation {
  Axis first = Axis::X;
  Axis second = Axis::Z;

  Translation() = default;
  Translation(Axis a, Axis b) : first(index_of(a) <= index_of(b) ? a : b), second(index_of(a) <= index_of(b) ? b : a) {}

  bool is_identity() const { return first == second; }
  bool operator==(const Translation&) const = default;
};

/// N_a(theta) = e^{i theta} R_a(2 theta).
struct Negator {
  Axis axis = Axis::X;
  double theta = 0.0;

  bool operator==(const Negator&) const = default;
};

using NamedOp = std::variant<PauliRoot, Translation, Negator>;

inline const PauliRoot* as_root(const NamedOp& op) { return std::get_if<PauliRoot>(&op); }

inline NamedOp root(Axis a, std::int64_t m, std::int64_t k = 1) { return PauliRoot{a, RootExponent{m, k}}; }

/// Adjoint as a named op; translations are Hermitian.
inline NamedOp adjoint(const NamedOp& op) {
  if (auto* r = std::get_if<PauliRoot>(&op)) return r->adjoint();
  if (auto* n = std::get_if<Negator>(&op)) return Negator{n->axis, -n->theta};
  return op;
}

/// True when op * op = I exactly.
inline bool is_involution(const NamedOp& op) {
  if (auto* r = std::get_if<PauliRoot>(&op)) return r->is_pauli() || r->is_identity();
  if (std::holds_alternative<Translation>(op)) return true;
  return std::get<Negator>(op).theta == 0.0;
}

namespace ops {
inline NamedOp X() { return root(Axis::X, 1); }
inline NamedOp Y() { return root(Axis::Y, 1); }
inline NamedOp Z() { return root(Axis::Z, 1); }
inline NamedOp H() { return Translation{Axis::X, Axis::Z}; }
inline NamedOp S() { return root(Axis::Z, 1, 2); }
inline NamedOp Sdg() { return root(Axis::Z, -1, 2); }
inline NamedOp T() { return root(Axis::Z, 1, 4); }
inline NamedOp Tdg() { return root(Axis::Z, -1, 4); }
inline NamedOp V() { return root(Axis::X, 1, 2); }
inline NamedOp Vdg() { return root(Axis::X, -1, 2); }
inline NamedOp W() { return root(Axis::X, 1, 4); }
inline NamedOp Wdg() { return root(Axis::X, -1, 4); }
}  // namespace ops

/// Alias mnemonic used by the text format, if the op has one.
inline std::optional<std::string> sugar_name(const NamedOp& op) {
  if (auto* t = std::get_if<Translation>(&op)) {
    if (t->first == Axis::X && t->second == Axis::Z) return "h";
    return std::nullopt;
  }
  const auto* r = std::get_if<PauliRoot>(&op);
  if (r == nullptr) return std::nullopt;
  const auto e = r->exponent;
  const char a = axis_letter(r->axis);
  if (e == RootExponent{1}) return std::string(1, a);
  if (r->axis == Axis::Y) return std::nullopt;
  const bool z = r->axis == Axis::Z;
  if (e == RootExponent{1, 2}) return z ? "s" : "v";
  if (e == RootExponent{-1, 2}) return z ? "sdg" : "vdg";
  if (e == RootExponent{1, 4}) return z ? "t" : "w";
  if (e == RootExponent{-1, 4}) return z ? "tdg" : "wdg";
  return std::nullopt;
}

}  // namespace pauliforge
