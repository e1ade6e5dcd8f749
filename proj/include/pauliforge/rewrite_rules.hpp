#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pauliforge/circuit.hpp"

namespace pauliforge {

/// Catalog of anchored circuit identities. Each rule rewrites a window of adjacent
/// gates starting at the anchor index.
enum class RuleId {
  MergeSameControls,        // C(U1) C(U2) = C(U1 U2), same axis
  CommuteOppositePolarity,  // gates with opposite control polarity on a shared line commute
  EliminateBothPolarities,  // C^-(U) C(U) = U
  CaseGateSplit,            // C^-(U1) C(U2) = U1 C(U1^dagger U2)
  FlipZRootControlTarget,   // C_1(Z^e) = C_2(Z^e)
  ConjugateByTranslation,   // sigma_a^e = rho_ab sigma_b^e rho_ab, or the control-flipping composite
  MoveZRootOverControl,     // Z^e on a control line commutes with the controlled gate
  CnotRuleD7,               // CX(p,q) CX(q,r) = CX(q,r) CX(p,q) CX(p,r)
  Lemma1Case,               // case(sigma^-e, sigma^e) = C(sigma_b) [Z^e ; sigma^-e] C(sigma_b)
  Lemma1CaseCorollary,      // same identity with the opposite sign of e
  Thm1RemoveControl,        // C(sigma^e) as five gates with halved roots
  Thm2BarencoExtended,      // CC(sigma_a^e) as singly controlled sigma_b^{e/2} roots and CNOTs
  SwapTConjugation,         // CX(c,t) Z^e(t) CX(c,t) = CX(t,c) Z^e(c) CX(t,c)
  CancelAdjacentInverses,   // U U^dagger = I
  CancelInvolution,         // U U = I for involutory U
  CommuteGates,             // adjacent gates acting compatibly on every shared line commute
};

enum class Direction { Forward, Backward };

/// Optional knobs. Flags that a rule does not understand make it inapplicable.
struct RuleParams {
  Direction direction = Direction::Forward;
  std::optional<Axis> b;        // the sigma_b choice, or the translation target axis
  std::optional<int> line;      // which control line a rule acts on

  // Thm1RemoveControl layouts.
  bool first_gate_to_end = false;
  bool z_root_over_controls = false;
  bool use_c2 = false;  // only with b = Z

  // Thm2BarencoExtended layouts.
  bool swap_control_lines = false;
  bool dagger_roots = false;
  bool last_root_first = false;

  bool flip = false;          // ConjugateByTranslation: control/target flipping composite
  bool extra_before = false;  // CnotRuleD7: emit the additional CNOT first

  bool operator==(const RuleParams&) const = default;
};

struct RewriteStep {
  RuleId rule = RuleId::CommuteGates;
  std::size_t anchor = 0;
  RuleParams params;

  bool operator==(const RewriteStep&) const = default;
};

struct Applicability {
  bool ok = false;
  std::string diagnostic;  // first failing structural condition when !ok
  std::size_t width = 0;   // matched window length when ok

  explicit operator bool() const { return ok; }
};

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::vector<RuleId> all_rules();
std::string rule_name(RuleId id);
std::optional<RuleId> rule_from_name(std::string_view name);

/// Rules whose backward direction is implemented (self-inverse rules included).
bool is_bidirectional(RuleId id);

/// Rules where the backward direction is the forward rewrite itself.
bool is_self_inverse(RuleId id);

/// Throws std::invalid_argument when anchor is out of bounds.
Applicability applicable(RuleId rule, const Circuit& c, std::size_t anchor, const RuleParams& params = {});

/// Throws PreconditionError carrying the diagnostic when the rule does not match.
Circuit apply(const RewriteStep& step, const Circuit& c);

/// True when two gates commute by the line-compatibility criterion used by CommuteGates.
bool gates_commute(const Gate& a, const Gate& b);

struct SoundnessReport {
  RuleId rule{};
  int trials = 0;
  int applied = 0;
  std::vector<std::string> counterexamples;  // `.prc` text of failing inputs with the step

  bool ok() const { return counterexamples.empty() && applied > 0; }
};

/// Random applicable instances on up to four qubits with roots of degree 1, 2 or 4,
/// embedded in random context; every rewrite is checked against the dense unitary.
SoundnessReport check_soundness(RuleId rule, int trials, std::uint64_t seed);

}  // namespace pauliforge
