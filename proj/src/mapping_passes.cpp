#include "pauliforge/mapping_passes.hpp"

#include <algorithm>
#include <sstream>

#include "pauliforge/circuit_text.hpp"
#include "pauliforge/semantics.hpp"

namespace pauliforge {

namespace {

std::optional<std::pair<int, int>> swap_lines(const Circuit& c, std::size_t at) {
  if (at + 3 > c.size()) return std::nullopt;
  const Gate& g0 = c.gates[at];
  if (g0.controls.size() != 1 || g0 != cx(g0.controls[0].line, g0.target)) return std::nullopt;
  const int x = g0.controls[0].line, y = g0.target;
  if (c.gates[at + 1] != cx(y, x) || c.gates[at + 2] != g0) return std::nullopt;
  return std::pair{std::min(x, y), std::max(x, y)};
}

Circuit relabel(const RelabelLines& r, const Circuit& c) {
  if (r.end > c.size() || r.begin + 6 > r.end) throw PreconditionError("relabel window too short or out of bounds");
  const auto head = swap_lines(c, r.begin);
  const auto tail = swap_lines(c, r.end - 3);
  if (!head || !tail) throw PreconditionError("relabel window must start and end with a three-CNOT swap");
  if (*head != *tail) throw PreconditionError("the two swaps act on different lines");
  const auto [a, b] = *head;
  auto map = [a = a, b = b](int l) { return l == a ? b : l == b ? a : l; };
  Circuit out(c.qubits);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if ((i >= r.begin && i < r.begin + 3) || (i + 3 >= r.end && i < r.end)) continue;
    const Gate& g = c.gates[i];
    if (i < r.begin || i >= r.end) {
      out.add(g);
      continue;
    }
    std::vector<Control> cs;
    for (const auto& ctl : g.controls) cs.push_back({map(ctl.line), ctl.polarity});
    out.add(Gate(g.op, map(g.target), cs));
  }
  return out;
}

std::string params_text(const RuleParams& p) {
  std::ostringstream os;
  if (p.direction == Direction::Backward) os << " backward";
  if (p.b) os << " b=" << axis_letter(*p.b);
  if (p.line) os << " line=" << *p.line;
  if (p.first_gate_to_end) os << " first_gate_to_end";
  if (p.z_root_over_controls) os << " z_root_over_controls";
  if (p.use_c2) os << " use_c2";
  if (p.swap_control_lines) os << " swap_control_lines";
  if (p.dagger_roots) os << " dagger_roots";
  if (p.last_root_first) os << " last_root_first";
  if (p.flip) os << " flip";
  if (p.extra_before) os << " extra_before";
  return os.str();
}

std::string gate_text(const Gate& g) {
  int lines = g.target;
  for (const auto& ctl : g.controls) lines = std::max(lines, ctl.line);
  std::string text = print_circuit(Circuit(lines + 1, {g}), true);
  text = text.substr(text.find('\n') + 1);
  if (!text.empty() && text.back() == '\n') text.pop_back();
  return text;
}

bool is_toffoli_shaped(const Gate& g) {
  const auto* r = as_root(g.op);
  return r && r->axis == Axis::X && r->is_pauli() && g.controls.size() >= 2;
}

}  // namespace

Circuit execute(const ScriptAction& action, const Circuit& c) {
  if (const auto* step = std::get_if<RewriteStep>(&action)) return apply(*step, c);
  if (const auto* ins = std::get_if<InsertIdentityPair>(&action)) {
    if (ins->index > c.size()) throw PreconditionError("insertion index out of bounds");
    if (!is_involution(ins->gate.op)) throw PreconditionError("inserted gate is not an involution");
    Circuit out = c;
    const auto at = out.gates.begin() + static_cast<std::ptrdiff_t>(ins->index);
    out.gates.insert(at, 2, ins->gate);
    if (!validate(out).empty()) throw PreconditionError("inserted gate is invalid for this circuit");
    return out;
  }
  return relabel(std::get<RelabelLines>(action), c);
}

std::string describe(const ScriptAction& action) {
  if (const auto* step = std::get_if<RewriteStep>(&action))
    return rule_name(step->rule) + " @" + std::to_string(step->anchor) + params_text(step->params);
  if (const auto* ins = std::get_if<InsertIdentityPair>(&action))
    return "InsertIdentityPair @" + std::to_string(ins->index) + " " + gate_text(ins->gate);
  const auto& r = std::get<RelabelLines>(action);
  return "RelabelLines @" + std::to_string(r.begin) + ".." + std::to_string(r.end);
}

ScriptResult run_script(const DerivationScript& script) {
  ScriptResult result;
  result.circuits.push_back(script.initial);
  for (std::size_t i = 0; i < script.steps.size(); ++i) {
    const auto& step = script.steps[i];
    Circuit next;
    try {
      next = execute(step.action, result.circuits.back());
    } catch (const std::exception& e) {
      throw ScriptError(i, describe(step.action) + ": " + e.what());
    }
    if (!equivalent(script.initial, next).equivalent)
      throw ScriptError(i, describe(step.action) + ": intermediate not equivalent to the initial circuit");
    result.circuits.push_back(std::move(next));
  }
  if (script.expected_final)
    result.matches_expected = print_circuit(result.final_circuit()) == print_circuit(*script.expected_final);
  return result;
}

ScriptBuilder::ScriptBuilder(std::string name, Circuit initial) : current_(initial) {
  require_valid(initial);
  script_.name = std::move(name);
  script_.initial = std::move(initial);
}

ScriptBuilder& ScriptBuilder::push(ScriptAction action, std::string note) {
  current_ = execute(action, current_);
  script_.steps.push_back({std::move(action), std::move(note)});
  return *this;
}

ScriptBuilder& ScriptBuilder::rewrite(RuleId rule, std::size_t anchor, RuleParams params, std::string note) {
  return push(RewriteStep{rule, anchor, params}, std::move(note));
}

ScriptBuilder& ScriptBuilder::move(std::size_t from, std::size_t to, std::string note) {
  auto swap_at = [&](std::size_t k) {
    for (RuleId r : {RuleId::MoveZRootOverControl, RuleId::CommuteOppositePolarity, RuleId::CommuteGates})
      if (applicable(r, current_, k)) return rewrite(r, k, {}, note);
    throw PreconditionError("gates at " + std::to_string(k) + " and " + std::to_string(k + 1) + " do not commute");
  };
  for (std::size_t k = from; k < to; ++k) swap_at(k);
  for (std::size_t k = from; k > to; --k) swap_at(k - 1);
  return *this;
}

ScriptBuilder& ScriptBuilder::insert_pair(std::size_t index, Gate gate, std::string note) {
  return push(InsertIdentityPair{index, std::move(gate)}, std::move(note));
}

ScriptBuilder& ScriptBuilder::relabel(std::size_t begin, std::size_t end, std::string note) {
  return push(RelabelLines{begin, end}, std::move(note));
}

DerivationScript ScriptBuilder::build(std::optional<Circuit> expected) const {
  DerivationScript out = script_;
  out.expected_final = std::move(expected);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

void expand_ncv_into(ScriptBuilder& b) {
  for (std::size_t i = 0; i < b.current().size(); ++i) {
    const Gate& g = b.current().gates[i];
    if (!is_toffoli_shaped(g)) continue;
    if (g.controls.size() > 2) throw std::invalid_argument("expand-ncv: X gates with more than two controls are unsupported");
    for (const auto& ctl : g.controls)
      if (ctl.polarity != Polarity::Positive)
        throw std::invalid_argument("expand-ncv: negative controls on doubly controlled X are unsupported");
    b.rewrite(RuleId::Thm2BarencoExtended, i);
    i += 4;
  }
}

// Brings equal, inverse or same-axis gates together through commuting neighbours and
// combines them. Returns false when nothing changed.
bool cleanup_once(ScriptBuilder& b) {
  const auto& gates = b.current().gates;
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Gate g = gates[i];
    for (std::size_t j = i + 1; j < gates.size(); ++j) {
      const Gate& h = gates[j];
      const bool shares = [&] {
        for (int l : g.lines())
          if (h.touches(l)) return true;
        return false;
      }();
      if (!shares) continue;
      std::optional<RuleId> rule;
      if (h.target == g.target && h.controls == g.controls) {
        const auto *rg = as_root(g.op), *rh = as_root(h.op);
        if (h.op == adjoint(g.op)) rule = RuleId::CancelAdjacentInverses;
        else if (h == g && is_involution(g.op)) rule = RuleId::CancelInvolution;
        else if (rg && rh && rg->axis == rh->axis) rule = RuleId::MergeSameControls;
      }
      if (rule) {
        b.move(i, j - 1);
        b.rewrite(*rule, j - 1);
        return true;
      }
      if (!gates_commute(g, h)) break;
    }
  }
  return false;
}

void cleanup_into(ScriptBuilder& b) {
  const std::size_t cap = 10 * std::max<std::size_t>(b.current().size(), 1);
  for (std::size_t k = 0; k < cap && cleanup_once(b); ++k) {
  }
}

// Cancels translation gates that meet on their line with nothing in between.
void cancel_translations(ScriptBuilder& b) {
  for (bool changed = true; changed;) {
    changed = false;
    const auto& gates = b.current().gates;
    for (std::size_t i = 0; i < gates.size() && !changed; ++i) {
      const Gate g = gates[i];
      if (g.is_controlled() || !std::holds_alternative<Translation>(g.op)) continue;
      for (std::size_t j = i + 1; j < gates.size(); ++j) {
        if (!gates[j].touches(g.target)) continue;
        if (gates[j] == g) {
          b.move(j, i + 1);
          b.rewrite(RuleId::CancelInvolution, i);
          changed = true;
        }
        break;
      }
    }
  }
}

void translate_into(ScriptBuilder& b, Axis target, bool flip_cnots) {
  for (std::size_t i = 0; i < b.current().size(); ++i) {
    const Gate& g = b.current().gates[i];
    const auto* r = as_root(g.op);
    if (!r || r->is_identity()) continue;
    if (!g.is_controlled() && r->axis != target) {
      RuleParams p;
      p.b = target;
      b.rewrite(RuleId::ConjugateByTranslation, i, p, "translate root");
      i += 2;
    } else if (flip_cnots && target != Axis::Y && r->axis == Axis::X && r->is_pauli() && g.controls.size() == 1 &&
               g.controls[0].polarity == Polarity::Positive) {
      RuleParams p;
      p.flip = true;
      b.rewrite(RuleId::ConjugateByTranslation, i, p, "flip CNOT");
      i += 4;
    }
  }
  cancel_translations(b);
}

}  // namespace

Circuit expand_ncv(const Circuit& c) {
  ScriptBuilder b("expand-ncv", c);
  expand_ncv_into(b);
  return b.current();
}

Circuit cleanup(const Circuit& c) {
  ScriptBuilder b("cleanup", c);
  cleanup_into(b);
  return b.current();
}

void append_translation(ScriptBuilder& b, Axis target) {
  ScriptBuilder plain = b;
  translate_into(plain, target, false);
  ScriptBuilder flipped = b;
  translate_into(flipped, target, true);
  b = flipped.current().size() < plain.current().size() ? flipped : plain;
}

Circuit translate_library(const Circuit& c, Axis target) {
  ScriptBuilder b("translate", c);
  append_translation(b, target);
  return b.current();
}

Circuit remove_control(const Circuit& c, std::size_t gate_index, std::optional<Axis> b) {
  require_valid(c);
  if (gate_index >= c.size()) throw std::invalid_argument("gate index out of bounds");
  const Gate& g = c.gates[gate_index];
  if (!as_root(g.op)) throw std::invalid_argument("remove-control: target op is not a Pauli root");
  if (!g.is_controlled()) throw std::invalid_argument("remove-control: gate has no control");
  RuleParams p;
  p.b = b;
  return apply({RuleId::Thm1RemoveControl, gate_index, p}, c);
}

Circuit ncv_to_clifford_t(const Circuit& c) {
  ScriptBuilder b("ncv-to-clifford-t", c);
  expand_ncv_into(b);
  auto is_root = [](const Gate& g, Axis a, std::int64_t den) {
    const auto* r = as_root(g.op);
    return r && r->axis == a && r->exponent.den() == den && g.is_controlled();
  };
  for (std::size_t i = 0; i < b.current().size(); ++i) {
    if (!is_root(b.current().gates[i], Axis::X, 2)) continue;
    RuleParams p;
    p.b = Axis::Z;
    b.rewrite(RuleId::ConjugateByTranslation, i, p);
    i += 2;
  }
  for (std::size_t i = 0; i < b.current().size(); ++i) {
    if (!is_root(b.current().gates[i], Axis::Z, 2)) continue;
    b.rewrite(RuleId::Thm1RemoveControl, i);
    i += 4;
  }
  cleanup_into(b);
  return b.current();
}

Circuit toffoli_family(const ToffoliFamilyParams& p) {
  for (int bit : {p.a, p.b, p.c})
    if (bit != 0 && bit != 1) throw std::invalid_argument("toffoli family parameters are bits");
  // T^0 = T, T^1 = T dagger.
  auto t = [](int bit, int line) { return Gate(bit == 0 ? ops::T() : ops::Tdg(), line); };
  Circuit c(3);
  c.add(Gate(ops::H(), 2)).add(cx(1, 2));
  c.add(t(p.c, 0)).add(t(p.a, 1)).add(t(1 - p.a, 2));
  c.add(cx(0, 2)).add(cx(0, 1)).add(t(1 - p.b, 2));
  c.add(cx(1, 2));
  const int merged = (p.a == 0 ? 1 : -1) + (p.b == 0 ? 1 : -1);
  if (merged != 0) c.add(Gate(root(Axis::Z, merged, 4), 2));
  c.add(cx(2, 0));
  c.add(t(1 - p.c, 0)).add(t(p.b, 1)).add(t(p.c, 2));
  c.add(cx(2, 0)).add(cx(0, 1)).add(Gate(ops::H(), 2));
  return c;
}

bool toffoli_family_function(const ToffoliFamilyParams& p, bool x1, bool x2) {
  if (p.a == p.b && p.b == p.c) return x1 || x2;
  if (p.c == p.a) return x1 && x2;
  if (p.b == p.a) return x1 && !x2;
  return !x1 && x2;
}

}  // namespace pauliforge
