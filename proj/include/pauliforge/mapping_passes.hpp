#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "pauliforge/circuit.hpp"
#include "pauliforge/rewrite_rules.hpp"

namespace pauliforge {

/// Inserts two copies of an involutory gate before position `index`.
struct InsertIdentityPair {
  std::size_t index = 0;
  Gate gate;

  bool operator==(const InsertIdentityPair&) const = default;
};

/// [begin, end) starts and ends with a three-CNOT swap of the same two lines.
/// Both swaps are dropped and the gates in between have the two lines exchanged.
struct RelabelLines {
  std::size_t begin = 0;
  std::size_t end = 0;

  bool operator==(const RelabelLines&) const = default;
};

using ScriptAction = std::variant<RewriteStep, InsertIdentityPair, RelabelLines>;

struct ScriptStep {
  ScriptAction action;
  std::string note;
};

struct DerivationScript {
  std::string name;
  Circuit initial;
  std::vector<ScriptStep> steps;
  std::optional<Circuit> expected_final;
};

class ScriptError : public std::runtime_error {
 public:
  ScriptError(std::size_t step, const std::string& message)
      : std::runtime_error("step " + std::to_string(step) + ": " + message), step_(step) {}
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

struct ScriptResult {
  std::vector<Circuit> circuits;  // initial circuit followed by the result of each step
  bool matches_expected = true;   // canonical text equals expected_final when one is given

  const Circuit& final_circuit() const { return circuits.back(); }
};

/// Throws PreconditionError when the action does not apply.
Circuit execute(const ScriptAction& action, const Circuit& c);

std::string describe(const ScriptAction& action);

/// Executes every step and checks each intermediate against the initial circuit.
/// Throws ScriptError naming the failing step.
ScriptResult run_script(const DerivationScript& script);

/// Records steps while executing them, so a bad anchor fails at construction.
class ScriptBuilder {
 public:
  ScriptBuilder(std::string name, Circuit initial);

  ScriptBuilder& rewrite(RuleId rule, std::size_t anchor, RuleParams params = {}, std::string note = {});
  /// Moves the gate at `from` to position `to` by adjacent commutations.
  ScriptBuilder& move(std::size_t from, std::size_t to, std::string note = {});
  ScriptBuilder& insert_pair(std::size_t index, Gate gate, std::string note = {});
  ScriptBuilder& relabel(std::size_t begin, std::size_t end, std::string note = {});

  const Circuit& current() const { return current_; }
  DerivationScript build(std::optional<Circuit> expected = std::nullopt) const;

 private:
  ScriptBuilder& push(ScriptAction action, std::string note);

  DerivationScript script_;
  Circuit current_;
};

struct ToffoliFamilyParams {
  int a = 0;
  int b = 1;
  int c = 0;
};

/// Replaces every doubly controlled X by the five-gate controlled-V construction.
/// Throws std::invalid_argument for X gates with more than two controls or negative controls.
Circuit expand_ncv(const Circuit& c);

/// Three-line Clifford+T circuit computing x3 ^= f(x1, x2), with f selected by the bits.
Circuit toffoli_family(const ToffoliFamilyParams& p);

/// The control function of toffoli_family(p) evaluated on (x1, x2).
bool toffoli_family_function(const ToffoliFamilyParams& p, bool x1, bool x2);

/// Five-gate control removal at `gate_index`. Throws std::invalid_argument when the
/// gate is not a controlled Pauli root.
Circuit remove_control(const Circuit& c, std::size_t gate_index, std::optional<Axis> b = std::nullopt);

/// Conjugates every uncontrolled root off `target` into `target` with translation
/// gates, then cancels translations that meet on a line.
Circuit translate_library(const Circuit& c, Axis target);

/// The translate_library rewrites appended to a script in progress.
void append_translation(ScriptBuilder& b, Axis target);

/// Cancels and merges gates that can be brought together by commutation, leftmost first.
/// Stops after 10 * gate_count rewrites.
Circuit cleanup(const Circuit& c);

/// expand-ncv, controlled V roots rewritten to controlled S roots, control removal, cleanup.
Circuit ncv_to_clifford_t(const Circuit& c);

DerivationScript derive_amy_toffoli();
DerivationScript derive_full_adder();
/// Full adder in the X-axis library: the full-adder derivation followed by the W translation.
DerivationScript derive_w_adder();

}  // namespace pauliforge
