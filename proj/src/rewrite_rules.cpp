#include "pauliforge/rewrite_rules.hpp"

#include <algorithm>
#include <array>
#include <variant>

namespace pauliforge {

namespace {

struct Match {
  std::size_t width = 0;
  std::vector<Gate> replacement;
};

// Either a rewrite or the reason there is none.
using MatchResult = std::variant<Match, std::string>;

constexpr RootExponent kOne{1};

const PauliRoot* root_of(const Gate& g) { return as_root(g.op); }

bool is_cnot(const Gate& g) {
  const auto* r = root_of(g);
  return r && r->axis == Axis::X && r->is_pauli() && g.controls.size() == 1 &&
         g.controls[0].polarity == Polarity::Positive;
}

bool is_uncontrolled_translation(const Gate& g) {
  return !g.is_controlled() && std::holds_alternative<Translation>(g.op);
}

std::vector<Control> without(std::vector<Control> cs, int line) {
  std::erase_if(cs, [&](const Control& c) { return c.line == line; });
  return cs;
}

std::vector<Control> with(std::vector<Control> cs, Control c) {
  cs.push_back(c);
  return cs;
}

Axis default_b(Axis a) { return a == Axis::X ? Axis::Z : Axis::X; }

std::optional<int> first_positive_control(const Gate& g) {
  for (const auto& c : g.controls)
    if (c.polarity == Polarity::Positive) return c.line;
  return std::nullopt;
}

// The single line on which two control lists differ by polarity only.
std::optional<int> opposite_polarity_line(const Gate& a, const Gate& b) {
  if (a.controls.size() != b.controls.size()) return std::nullopt;
  std::optional<int> found;
  for (std::size_t i = 0; i < a.controls.size(); ++i) {
    if (a.controls[i].line != b.controls[i].line) return std::nullopt;
    if (a.controls[i].polarity != b.controls[i].polarity) {
      if (found) return std::nullopt;
      found = a.controls[i].line;
    }
  }
  return found;
}

bool window_fits(const Circuit& c, std::size_t anchor, std::size_t width) { return anchor + width <= c.size(); }

const std::string kShort = "window extends past the end of the circuit";

// Which optional knobs each rule understands.
std::string reject_flags(RuleId id, const RuleParams& p) {
  auto bad = [](const char* name) { return std::string("flag '") + name + "' not accepted by this rule"; };
  const bool takes_b = id == RuleId::ConjugateByTranslation || id == RuleId::Lemma1Case ||
                       id == RuleId::Lemma1CaseCorollary || id == RuleId::Thm1RemoveControl ||
                       id == RuleId::Thm2BarencoExtended;
  const bool takes_line = id == RuleId::EliminateBothPolarities || id == RuleId::FlipZRootControlTarget ||
                          id == RuleId::ConjugateByTranslation || id == RuleId::Thm1RemoveControl;
  if (p.direction == Direction::Backward && !is_bidirectional(id)) return "rule has no backward direction";
  if (p.b && !takes_b) return bad("b");
  if (p.line && !takes_line) return bad("line");
  if (id != RuleId::Thm1RemoveControl) {
    if (p.first_gate_to_end) return bad("first_gate_to_end");
    if (p.z_root_over_controls) return bad("z_root_over_controls");
    if (p.use_c2) return bad("use_c2");
  }
  if (id != RuleId::Thm2BarencoExtended) {
    if (p.swap_control_lines) return bad("swap_control_lines");
    if (p.dagger_roots) return bad("dagger_roots");
    if (p.last_root_first) return bad("last_root_first");
  }
  if (p.flip && id != RuleId::ConjugateByTranslation) return bad("flip");
  if (p.extra_before && id != RuleId::CnotRuleD7) return bad("extra_before");
  return {};
}

// ---------------------------------------------------------------------------

MatchResult merge_same_controls(const Circuit& c, std::size_t i) {
  if (!window_fits(c, i, 2)) return kShort;
  const Gate& g0 = c.gates[i];
  const Gate& g1 = c.gates[i + 1];
  if (g0.target != g1.target) return "targets differ";
  if (g0.controls != g1.controls) return "control sets differ";
  if (auto *r0 = root_of(g0), *r1 = root_of(g1); r0 && r1) {
    if (r0->axis != r1->axis) return "axes differ";
    const PauliRoot sum{r0->axis, r0->exponent + r1->exponent};
    if (sum.is_identity()) return Match{2, {}};
    return Match{2, {Gate(sum, g0.target, g0.controls)}};
  }
  auto* n0 = std::get_if<Negator>(&g0.op);
  auto* n1 = std::get_if<Negator>(&g1.op);
  if (n0 && n1) {
    if (n0->axis != n1->axis) return "axes differ";
    return Match{2, {Gate(Negator{n0->axis, n0->theta + n1->theta}, g0.target, g0.controls)}};
  }
  return "gates are not both Pauli roots or both negators";
}

MatchResult commute_opposite_polarity(const Circuit& c, std::size_t i) {
  if (!window_fits(c, i, 2)) return kShort;
  const Gate& g0 = c.gates[i];
  const Gate& g1 = c.gates[i + 1];
  for (const auto& ctl : g0.controls)
    if (auto* other = g1.control_on(ctl.line); other && other->polarity != ctl.polarity)
      return Match{2, {g1, g0}};
  return "no shared control line with opposite polarities";
}

MatchResult eliminate_both_polarities(const Circuit& c, std::size_t i, const RuleParams& p) {
  if (p.direction == Direction::Backward) {
    const Gate& g = c.gates[i];
    if (!p.line) return "backward direction needs a control line";
    const int l = *p.line;
    if (l < 0 || l >= c.qubits) return "control line out of range";
    if (g.touches(l)) return "gate already acts on the requested line";
    return Match{1, {Gate(g.op, g.target, with(g.controls, neg(l))), Gate(g.op, g.target, with(g.controls, pos(l)))}};
  }
  if (p.line) return "flag 'line' is only used backward";
  if (!window_fits(c, i, 2)) return kShort;
  const Gate& g0 = c.gates[i];
  const Gate& g1 = c.gates[i + 1];
  if (g0.op != g1.op) return "ops differ";
  if (g0.target != g1.target) return "targets differ";
  const auto l = opposite_polarity_line(g0, g1);
  if (!l) return "controls do not differ by polarity on exactly one line";
  return Match{2, {Gate(g0.op, g0.target, without(g0.controls, *l))}};
}

MatchResult case_gate_split(const Circuit& c, std::size_t i, const RuleParams& p) {
  if (!window_fits(c, i, 2)) return kShort;
  const Gate& g0 = c.gates[i];
  const Gate& g1 = c.gates[i + 1];
  const auto *r0 = root_of(g0), *r1 = root_of(g1);
  if (!r0 || !r1) return "gates are not both Pauli roots";
  if (r0->axis != r1->axis) return "axes differ";
  if (g0.target != g1.target) return "targets differ";
  const Axis a = r0->axis;
  if (p.direction == Direction::Backward) {
    if (g1.controls.size() != g0.controls.size() + 1) return "second gate must carry exactly one extra control";
    for (const auto& ctl : g1.controls) {
      if (ctl.polarity != Polarity::Positive || g0.has_control_on(ctl.line)) continue;
      if (without(g1.controls, ctl.line) != g0.controls) continue;
      const int l = ctl.line;
      if (r1->exponent.is_zero()) return "second gate is the identity";
      return Match{2,
                   {Gate(PauliRoot{a, r0->exponent}, g0.target, with(g0.controls, neg(l))),
                    Gate(PauliRoot{a, r0->exponent + r1->exponent}, g0.target, with(g0.controls, pos(l)))}};
    }
    return "second gate must carry one extra positive control";
  }
  const auto l = opposite_polarity_line(g0, g1);
  if (!l) return "controls do not differ by polarity on exactly one line";
  const bool neg_first = g0.control_on(*l)->polarity == Polarity::Negative;
  const RootExponent e1 = neg_first ? r0->exponent : r1->exponent;
  const RootExponent e2 = neg_first ? r1->exponent : r0->exponent;
  const auto rest = without(g0.controls, *l);
  std::vector<Gate> out{Gate(PauliRoot{a, e1}, g0.target, rest)};
  const PauliRoot diff{a, e2 - e1};
  if (!diff.is_identity()) out.emplace_back(diff, g0.target, with(rest, pos(*l)));
  return Match{2, out};
}

MatchResult flip_z_root(const Circuit& c, std::size_t i, const RuleParams& p) {
  const Gate& g = c.gates[i];
  const auto* r = root_of(g);
  if (!r || r->axis != Axis::Z) return "gate is not a Z root";
  const auto l = p.line ? p.line : first_positive_control(g);
  if (!l) return "gate has no positive control";
  const Control* ctl = g.control_on(*l);
  if (!ctl || ctl->polarity != Polarity::Positive) return "no positive control on the requested line";
  return Match{1, {Gate(g.op, *l, with(without(g.controls, *l), pos(g.target)))}};
}

std::vector<Gate> flip_composite(Axis a, RootExponent e, int t, int l, const std::vector<Control>& others) {
  Gate flipped(PauliRoot{a, e}, l, with(others, pos(t)));
  if (a == Axis::Z) return {flipped};
  const Translation rho{a, Axis::Z};
  return {Gate(rho, t), Gate(rho, l), flipped, Gate(rho, l), Gate(rho, t)};
}

MatchResult conjugate_by_translation(const Circuit& c, std::size_t i, const RuleParams& p) {
  const bool fwd = p.direction == Direction::Forward;
  if (p.flip) {
    if (p.b) return "flag 'b' not accepted with 'flip'";
    if (fwd) {
      const Gate& g = c.gates[i];
      const auto* r = root_of(g);
      if (!r) return "gate is not a Pauli root";
      const auto l = p.line ? p.line : first_positive_control(g);
      if (!l) return "gate has no positive control";
      const Control* ctl = g.control_on(*l);
      if (!ctl || ctl->polarity != Polarity::Positive) return "no positive control on the requested line";
      return Match{1, flip_composite(r->axis, r->exponent, g.target, *l, without(g.controls, *l))};
    }
    if (!window_fits(c, i, 5)) return kShort;
    const Gate& mid = c.gates[i + 2];
    const auto* r = root_of(mid);
    if (!r || r->axis == Axis::Z) return "middle gate is not an X or Y root";
    const Gate& g0 = c.gates[i];
    const Gate& g1 = c.gates[i + 1];
    if (!is_uncontrolled_translation(g0) || !is_uncontrolled_translation(g1))
      return "window does not open with two translations";
    const int l = mid.target;
    const int t = g0.target == l ? g1.target : g0.target;
    if (p.line && *p.line != l) return "requested line does not match the flipped gate";
    const Control* ctl = mid.control_on(t);
    if (!ctl || ctl->polarity != Polarity::Positive) return "flipped gate lacks a positive control on the translated line";
    auto expect = flip_composite(r->axis, r->exponent, l, t, without(mid.controls, t));
    // The two outer pairs act on different lines and may appear in either order.
    for (std::size_t k : {std::size_t{0}, std::size_t{3}}) {
      const bool same = c.gates[i + k] == expect[k] && c.gates[i + k + 1] == expect[k + 1];
      const bool swapped = c.gates[i + k] == expect[k + 1] && c.gates[i + k + 1] == expect[k];
      if (!same && !swapped) return "translations do not match the flipped gate";
    }
    return Match{5, {Gate(mid.op, t, with(without(mid.controls, t), pos(l)))}};
  }
  if (p.line) return "flag 'line' is only used with 'flip'";
  if (fwd) {
    const Gate& g = c.gates[i];
    const auto* r = root_of(g);
    if (!r) return "gate is not a Pauli root";
    const Axis b = p.b.value_or(default_b(r->axis));
    if (b == r->axis) return "b must differ from the root axis";
    const Translation rho{r->axis, b};
    return Match{1, {Gate(rho, g.target), Gate(PauliRoot{b, r->exponent}, g.target, g.controls), Gate(rho, g.target)}};
  }
  if (!window_fits(c, i, 3)) return kShort;
  const Gate& g0 = c.gates[i];
  const Gate& mid = c.gates[i + 1];
  const Gate& g2 = c.gates[i + 2];
  if (!is_uncontrolled_translation(g0) || g0 != g2) return "window is not bracketed by equal uncontrolled translations";
  const auto& rho = std::get<Translation>(g0.op);
  if (rho.is_identity()) return "translation is the identity";
  const auto* r = root_of(mid);
  if (!r || mid.target != g0.target) return "middle gate is not a Pauli root on the translated line";
  if (r->axis != rho.first && r->axis != rho.second) return "root axis is not one of the translation axes";
  const Axis other = r->axis == rho.first ? rho.second : rho.first;
  if (p.b && *p.b != r->axis) return "root axis differs from requested b";
  return Match{3, {Gate(PauliRoot{other, r->exponent}, mid.target, mid.controls)}};
}

MatchResult move_z_root(const Circuit& c, std::size_t i) {
  if (!window_fits(c, i, 2)) return kShort;
  const Gate& g0 = c.gates[i];
  const Gate& g1 = c.gates[i + 1];
  auto z_on_control = [](const Gate& z, const Gate& other) {
    const auto* r = root_of(z);
    if (!r || r->axis != Axis::Z || z.is_controlled()) return false;
    const Control* ctl = other.control_on(z.target);
    return ctl && ctl->polarity == Polarity::Positive;
  };
  if (z_on_control(g0, g1) || z_on_control(g1, g0)) return Match{2, {g1, g0}};
  return "no uncontrolled Z root next to a positive control on its line";
}

MatchResult cnot_d7(const Circuit& c, std::size_t i, const RuleParams& p) {
  auto emit = [&](std::vector<Gate> two, const Gate& extra) {
    if (p.extra_before) two.insert(two.begin(), extra);
    else two.push_back(extra);
    return two;
  };
  if (p.direction == Direction::Forward) {
    if (!window_fits(c, i, 2)) return kShort;
    const Gate& g0 = c.gates[i];
    const Gate& g1 = c.gates[i + 1];
    if (!is_cnot(g0) || !is_cnot(g1)) return "gates are not both CNOTs";
    const int p0 = g0.controls[0].line, q0 = g0.target;
    const int p1 = g1.controls[0].line, q1 = g1.target;
    if (q0 == p1 && p0 != q1) return Match{2, emit({g1, g0}, cx(p0, q1))};  // CX(p,q) CX(q,r)
    if (p0 == q1 && q0 != p1) return Match{2, emit({g1, g0}, cx(p1, q0))};  // CX(q,r) CX(p,q)
    return "CNOTs do not form a chain over three lines";
  }
  if (!window_fits(c, i, 3)) return kShort;
  for (std::size_t x = 0; x < 3; ++x) {
    std::array<const Gate*, 2> rest{};
    std::size_t k = 0;
    for (std::size_t j = 0; j < 3; ++j)
      if (j != x) rest[k++] = &c.gates[i + j];
    const Gate& extra = c.gates[i + x];
    const Gate& a = *rest[0];
    const Gate& b = *rest[1];
    if (!is_cnot(extra) || !is_cnot(a) || !is_cnot(b)) return "window is not three CNOTs";
    const int pa = a.controls[0].line, qa = a.target, pb = b.controls[0].line, qb = b.target;
    // a = CX(q,r), b = CX(p,q) with extra CX(p,r); or a = CX(p,q), b = CX(q,r).
    const bool first_form = pa == qb && pb != qa && extra == cx(pb, qa);
    const bool second_form = qa == pb && pa != qb && extra == cx(pa, qb);
    if ((first_form || second_form) && (x == 0) == p.extra_before && (p.extra_before || x == 2))
      return Match{3, {b, a}};
  }
  return "window does not match the three-CNOT side";
}

std::vector<Gate> lemma1_pattern(Axis a, RootExponent e, int t, int ctl, const std::vector<Control>& s, Axis b) {
  const Gate cb(PauliRoot{b, kOne}, t, {pos(ctl)});
  return {cb, Gate(PauliRoot{Axis::Z, e}, ctl, s), Gate(PauliRoot{a, -e}, t, s), cb};
}

MatchResult lemma1(const Circuit& c, std::size_t i, const RuleParams& p, bool corollary) {
  auto sign_ok = [&](RootExponent e) { return corollary ? e.num() < 0 : e.num() > 0; };
  const char* sign_msg = corollary ? "positive-control exponent must be negative" : "positive-control exponent must be positive";
  if (p.direction == Direction::Forward) {
    if (!window_fits(c, i, 2)) return kShort;
    const Gate& g0 = c.gates[i];
    const Gate& g1 = c.gates[i + 1];
    const auto *r0 = root_of(g0), *r1 = root_of(g1);
    if (!r0 || !r1) return "gates are not both Pauli roots";
    if (r0->axis != r1->axis) return "axes differ";
    if (g0.target != g1.target) return "targets differ";
    const auto l = opposite_polarity_line(g0, g1);
    if (!l) return "controls do not differ by polarity on exactly one line";
    const bool neg_first = g0.control_on(*l)->polarity == Polarity::Negative;
    const RootExponent e_pos = neg_first ? r1->exponent : r0->exponent;
    const RootExponent e_neg = neg_first ? r0->exponent : r1->exponent;
    if (PauliRoot(r0->axis, -e_pos).exponent != e_neg) return "exponents are not opposite";
    if (!sign_ok(e_pos)) return sign_msg;
    const Axis b = p.b.value_or(default_b(r0->axis));
    if (b == r0->axis) return "b must differ from the root axis";
    return Match{2, lemma1_pattern(r0->axis, e_pos, g0.target, *l, without(g0.controls, *l), b)};
  }
  if (!window_fits(c, i, 4)) return kShort;
  const Gate& cb = c.gates[i];
  if (c.gates[i + 3] != cb) return "window is not bracketed by equal controlled gates";
  const auto* rb = root_of(cb);
  if (!rb || !rb->is_pauli() || cb.controls.size() != 1 || cb.controls[0].polarity != Polarity::Positive)
    return "bracketing gate is not a singly controlled Pauli";
  const int t = cb.target, ctl = cb.controls[0].line;
  for (int order = 0; order < 2; ++order) {
    const Gate& z = c.gates[i + 1 + order];
    const Gate& m = c.gates[i + 2 - order];
    const auto *rz = root_of(z), *rm = root_of(m);
    if (!rz || !rm || rz->axis != Axis::Z || z.target != ctl || m.target != t) continue;
    if (z.controls != m.controls) continue;
    if (p.b && *p.b != rb->axis) return "bracketing axis differs from requested b";
    const RootExponent e = rz->exponent;
    if (!sign_ok(e)) return sign_msg;
    auto expect = lemma1_pattern(rm->axis, e, t, ctl, z.controls, rb->axis);
    if (expect[2] != m) continue;
    if (rb->axis == rm->axis) return "bracketing axis must differ from the root axis";
    return Match{4, {Gate(PauliRoot{rm->axis, -e}, t, with(z.controls, neg(ctl))),
                     Gate(PauliRoot{rm->axis, e}, t, with(z.controls, pos(ctl)))}};
  }
  return "middle gates do not match the lemma pattern";
}

std::vector<Gate> thm1_pattern(Axis a, RootExponent e, int t, int ctl, const std::vector<Control>& s, Axis b,
                               const RuleParams& p) {
  const RootExponent h = PauliRoot(a, e).exponent.halved();
  const Gate cb = p.use_c2 ? Gate(PauliRoot{Axis::Z, kOne}, ctl, {pos(t)}) : Gate(PauliRoot{b, kOne}, t, {pos(ctl)});
  std::vector<Gate> out{Gate(PauliRoot{a, h}, t, s), cb, Gate(PauliRoot{Axis::Z, h}, ctl, s),
                        Gate(PauliRoot{a, -h}, t, s), cb};
  if (p.z_root_over_controls) std::swap(out[1], out[2]);
  if (p.first_gate_to_end) std::rotate(out.begin(), out.begin() + 1, out.end());
  return out;
}

MatchResult thm1(const Circuit& c, std::size_t i, const RuleParams& p) {
  if (p.use_c2 && p.b.value_or(Axis::Z) != Axis::Z) return "use_c2 requires b = z";
  if (p.direction == Direction::Forward) {
    const Gate& g = c.gates[i];
    const auto* r = root_of(g);
    if (!r) return "gate is not a Pauli root";
    const auto l = p.line ? p.line : first_positive_control(g);
    if (!l) return "gate has no positive control";
    const Control* ctl = g.control_on(*l);
    if (!ctl || ctl->polarity != Polarity::Positive) return "no positive control on the requested line";
    const Axis b = p.use_c2 ? Axis::Z : p.b.value_or(default_b(r->axis));
    if (b == r->axis) return "b must differ from the root axis";
    return Match{1, thm1_pattern(r->axis, r->exponent, g.target, *l, without(g.controls, *l), b, p)};
  }
  if (!window_fits(c, i, 5)) return kShort;
  // Locate the pieces through the same layout permutation the forward direction uses.
  std::vector<int> slot{0, 1, 2, 3, 4};
  if (p.z_root_over_controls) std::swap(slot[1], slot[2]);
  if (p.first_gate_to_end) std::rotate(slot.begin(), slot.begin() + 1, slot.end());
  auto at = [&](int role) -> const Gate& {
    return c.gates[i + static_cast<std::size_t>(std::find(slot.begin(), slot.end(), role) - slot.begin())];
  };
  const Gate& first = at(0);
  const Gate& z = at(2);
  const Gate& cb = at(1);
  const auto *r = root_of(first), *rz = root_of(z), *rb = root_of(cb);
  if (!r || !rz || !rb) return "window gates are not Pauli roots";
  if (rz->axis != Axis::Z) return "control-line gate is not a Z root";
  const Axis b = p.use_c2 ? Axis::Z : rb->axis;
  if (p.b && *p.b != b) return "bracketing axis differs from requested b";
  if (b == r->axis) return "bracketing axis must differ from the root axis";
  const int ctl = z.target;
  if (p.line && *p.line != ctl) return "requested line does not match the pattern";
  const RootExponent e = (r->exponent + r->exponent).wrapped();
  auto expect = thm1_pattern(r->axis, e, first.target, ctl, first.controls, b, p);
  if (!std::equal(expect.begin(), expect.end(), c.gates.begin() + static_cast<std::ptrdiff_t>(i)))
    return "window does not match the five-gate pattern";
  return Match{5, {Gate(PauliRoot{r->axis, e}, first.target, with(first.controls, pos(ctl)))}};
}

std::vector<Gate> thm2_pattern(Axis a, RootExponent e, int t, int c1, int c2, const std::vector<Control>& s, Axis b,
                               const RuleParams& p) {
  if (p.swap_control_lines) std::swap(c1, c2);
  RootExponent h = PauliRoot(a, e).exponent.halved();
  if (p.dagger_roots) h = -h;
  std::vector<Gate> out{Gate(PauliRoot{b, h}, t, with(s, pos(c2))), cx(c1, c2), Gate(PauliRoot{b, -h}, t, with(s, pos(c2))),
                        cx(c1, c2)};
  const Gate last(PauliRoot{b, h}, t, with(s, pos(c1)));
  if (p.last_root_first) out.insert(out.begin(), last);
  else out.push_back(last);
  if (a != b) {
    const Translation rho{a, b};
    out.insert(out.begin(), Gate(rho, t));
    out.emplace_back(rho, t);
  }
  return out;
}

MatchResult thm2(const Circuit& c, std::size_t i, const RuleParams& p) {
  if (p.direction == Direction::Forward) {
    const Gate& g = c.gates[i];
    const auto* r = root_of(g);
    if (!r) return "gate is not a Pauli root";
    std::vector<int> positives;
    for (const auto& ctl : g.controls)
      if (ctl.polarity == Polarity::Positive) positives.push_back(ctl.line);
    if (positives.size() < 2) return "gate needs two positive controls";
    if (p.dagger_roots && !r->is_pauli()) return "dagger_roots requires a Pauli target";
    const Axis b = p.b.value_or(r->axis);
    const int c1 = positives[0], c2 = positives[1];
    return Match{1, thm2_pattern(r->axis, r->exponent, g.target, c1, c2, without(without(g.controls, c1), c2), b, p)};
  }
  const bool translated = is_uncontrolled_translation(c.gates[i]);
  const std::size_t width = translated ? 7 : 5;
  if (!window_fits(c, i, width)) return kShort;
  const std::size_t base = i + (translated ? 1 : 0);
  const Gate& probe = c.gates[base];
  const Gate& cnot = c.gates[base + (p.last_root_first ? 2 : 1)];
  if (!is_cnot(cnot)) return "window does not contain the CNOT pair";
  int c1 = cnot.controls[0].line, c2 = cnot.target;
  const auto* rb = root_of(probe);
  if (!rb) return "window gates are not Pauli roots";
  const Axis b = rb->axis;
  if (p.b && *p.b != b) return "root axis differs from requested b";
  Axis a = b;
  if (translated) {
    const auto& rho = std::get<Translation>(c.gates[i].op);
    if (rho.first != b && rho.second != b) return "translation does not involve the root axis";
    a = rho.first == b ? rho.second : rho.first;
    if (a == b) return "translation is the identity";
  }
  const int t = probe.target;
  auto s = without(without(probe.controls, c1), c2);
  RootExponent h = rb->exponent;
  if (p.dagger_roots) h = -h;
  const RootExponent e = (h + h).wrapped();
  if (p.swap_control_lines) std::swap(c1, c2);
  auto expect = thm2_pattern(a, e, t, c1, c2, s, b, p);
  if (expect.size() != width ||
      !std::equal(expect.begin(), expect.end(), c.gates.begin() + static_cast<std::ptrdiff_t>(i)))
    return "window does not match the Barenco pattern";
  return Match{width, {Gate(PauliRoot{a, e}, t, with(with(s, pos(c1)), pos(c2)))}};
}

MatchResult swap_t_conjugation(const Circuit& c, std::size_t i) {
  if (!window_fits(c, i, 3)) return kShort;
  const Gate& g0 = c.gates[i];
  const Gate& z = c.gates[i + 1];
  if (!is_cnot(g0) || c.gates[i + 2] != g0) return "window is not bracketed by equal CNOTs";
  const auto* r = root_of(z);
  if (!r || r->axis != Axis::Z || z.is_controlled()) return "middle gate is not an uncontrolled Z root";
  const int ctl = g0.controls[0].line, t = g0.target;
  if (z.target != t) return "Z root is not on the CNOT target";
  return Match{3, {cx(t, ctl), Gate(z.op, ctl), cx(t, ctl)}};
}

MatchResult cancel_inverses(const Circuit& c, std::size_t i) {
  if (!window_fits(c, i, 2)) return kShort;
  const Gate& g0 = c.gates[i];
  const Gate& g1 = c.gates[i + 1];
  if (g0.target != g1.target) return "targets differ";
  if (g0.controls != g1.controls) return "control sets differ";
  if (g1.op != adjoint(g0.op)) return "ops are not mutually inverse";
  return Match{2, {}};
}

MatchResult cancel_involution(const Circuit& c, std::size_t i) {
  if (!window_fits(c, i, 2)) return kShort;
  const Gate& g0 = c.gates[i];
  if (!is_involution(g0.op)) return "op is not an involution";
  if (c.gates[i + 1] != g0) return "gates are not identical";
  return Match{2, {}};
}

MatchResult commute_gates(const Circuit& c, std::size_t i) {
  if (!window_fits(c, i, 2)) return kShort;
  if (!gates_commute(c.gates[i], c.gates[i + 1])) return "gates act incompatibly on a shared line";
  return Match{2, {c.gates[i + 1], c.gates[i]}};
}

MatchResult match(RuleId id, const Circuit& c, std::size_t i, const RuleParams& p) {
  if (auto why = reject_flags(id, p); !why.empty()) return why;
  switch (id) {
    case RuleId::MergeSameControls: return merge_same_controls(c, i);
    case RuleId::CommuteOppositePolarity: return commute_opposite_polarity(c, i);
    case RuleId::EliminateBothPolarities: return eliminate_both_polarities(c, i, p);
    case RuleId::CaseGateSplit: return case_gate_split(c, i, p);
    case RuleId::FlipZRootControlTarget: return flip_z_root(c, i, p);
    case RuleId::ConjugateByTranslation: return conjugate_by_translation(c, i, p);
    case RuleId::MoveZRootOverControl: return move_z_root(c, i);
    case RuleId::CnotRuleD7: return cnot_d7(c, i, p);
    case RuleId::Lemma1Case: return lemma1(c, i, p, false);
    case RuleId::Lemma1CaseCorollary: return lemma1(c, i, p, true);
    case RuleId::Thm1RemoveControl: return thm1(c, i, p);
    case RuleId::Thm2BarencoExtended: return thm2(c, i, p);
    case RuleId::SwapTConjugation: return swap_t_conjugation(c, i);
    case RuleId::CancelAdjacentInverses: return cancel_inverses(c, i);
    case RuleId::CancelInvolution: return cancel_involution(c, i);
    case RuleId::CommuteGates: return commute_gates(c, i);
  }
  return "unknown rule";
}

MatchResult checked_match(RuleId id, const Circuit& c, std::size_t anchor, const RuleParams& p) {
  require_valid(c);
  if (anchor >= c.size())
    throw std::invalid_argument("anchor " + std::to_string(anchor) + " out of bounds for " + std::to_string(c.size()) +
                                " gates");
  auto m = match(id, c, anchor, p);
  if (auto* ok = std::get_if<Match>(&m)) {
    Circuit probe(c.qubits, ok->replacement);
    if (!validate(probe).empty()) return "replacement would be an invalid circuit";
  }
  return m;
}

// How a gate acts on one of its lines, for the commutation test.
enum class LineAction { Anything, ZType, XType, YType, Translation, Other };

LineAction action_on(const Gate& g, int line) {
  if (g.target != line) return LineAction::ZType;
  if (const auto* r = root_of(g)) {
    if (r->is_identity()) return LineAction::Anything;
    switch (r->axis) {
      case Axis::X: return LineAction::XType;
      case Axis::Y: return LineAction::YType;
      case Axis::Z: return LineAction::ZType;
    }
  }
  if (const auto* n = std::get_if<Negator>(&g.op)) {
    switch (n->axis) {
      case Axis::X: return LineAction::XType;
      case Axis::Y: return LineAction::YType;
      case Axis::Z: return LineAction::ZType;
    }
  }
  const auto& t = std::get<Translation>(g.op);
  if (t.is_identity()) return LineAction::Anything;
  return LineAction::Other;
}

}  // namespace

bool gates_commute(const Gate& a, const Gate& b) {
  for (int line : a.lines()) {
    if (!b.touches(line)) continue;
    const auto x = action_on(a, line);
    const auto y = action_on(b, line);
    if (x == LineAction::Anything || y == LineAction::Anything) continue;
    if (x == LineAction::Other || y == LineAction::Other) {
      // Translations commute only with the identical translation.
      if (a.target == line && b.target == line && a.op == b.op) continue;
      return false;
    }
    if (x != y) return false;
  }
  return true;
}

std::vector<RuleId> all_rules() {
  return {RuleId::MergeSameControls,      RuleId::CommuteOppositePolarity, RuleId::EliminateBothPolarities,
          RuleId::CaseGateSplit,          RuleId::FlipZRootControlTarget,  RuleId::ConjugateByTranslation,
          RuleId::MoveZRootOverControl,   RuleId::CnotRuleD7,              RuleId::Lemma1Case,
          RuleId::Lemma1CaseCorollary,    RuleId::Thm1RemoveControl,       RuleId::Thm2BarencoExtended,
          RuleId::SwapTConjugation,       RuleId::CancelAdjacentInverses,  RuleId::CancelInvolution,
          RuleId::CommuteGates};
}

std::string rule_name(RuleId id) {
  switch (id) {
    case RuleId::MergeSameControls: return "MergeSameControls";
    case RuleId::CommuteOppositePolarity: return "CommuteOppositePolarity";
    case RuleId::EliminateBothPolarities: return "EliminateBothPolarities";
    case RuleId::CaseGateSplit: return "CaseGateSplit";
    case RuleId::FlipZRootControlTarget: return "FlipZRootControlTarget";
    case RuleId::ConjugateByTranslation: return "ConjugateByTranslation";
    case RuleId::MoveZRootOverControl: return "MoveZRootOverControl";
    case RuleId::CnotRuleD7: return "CnotRuleD7";
    case RuleId::Lemma1Case: return "Lemma1Case";
    case RuleId::Lemma1CaseCorollary: return "Lemma1CaseCorollary";
    case RuleId::Thm1RemoveControl: return "Thm1RemoveControl";
    case RuleId::Thm2BarencoExtended: return "Thm2BarencoExtended";
    case RuleId::SwapTConjugation: return "SwapTConjugation";
    case RuleId::CancelAdjacentInverses: return "CancelAdjacentInverses";
    case RuleId::CancelInvolution: return "CancelInvolution";
    case RuleId::CommuteGates: return "CommuteGates";
  }
  return "?";
}

std::optional<RuleId> rule_from_name(std::string_view name) {
  for (auto id : all_rules())
    if (rule_name(id) == name) return id;
  return std::nullopt;
}

bool is_self_inverse(RuleId id) {
  switch (id) {
    case RuleId::CommuteOppositePolarity:
    case RuleId::FlipZRootControlTarget:
    case RuleId::MoveZRootOverControl:
    case RuleId::SwapTConjugation:
    case RuleId::CommuteGates: return true;
    default: return false;
  }
}

bool is_bidirectional(RuleId id) {
  switch (id) {
    case RuleId::MergeSameControls:
    case RuleId::CancelAdjacentInverses:
    case RuleId::CancelInvolution: return false;
    default: return true;
  }
}

Applicability applicable(RuleId rule, const Circuit& c, std::size_t anchor, const RuleParams& params) {
  auto m = checked_match(rule, c, anchor, params);
  if (auto* why = std::get_if<std::string>(&m)) return {false, *why, 0};
  return {true, {}, std::get<Match>(m).width};
}

Circuit apply(const RewriteStep& step, const Circuit& c) {
  auto m = checked_match(step.rule, c, step.anchor, step.params);
  if (auto* why = std::get_if<std::string>(&m))
    throw PreconditionError(rule_name(step.rule) + " at " + std::to_string(step.anchor) + ": " + *why);
  const auto& ok = std::get<Match>(m);
  Circuit out(c.qubits);
  out.gates.reserve(c.size() - ok.width + ok.replacement.size());
  const auto begin = c.gates.begin() + static_cast<std::ptrdiff_t>(step.anchor);
  out.gates.insert(out.gates.end(), c.gates.begin(), begin);
  out.gates.insert(out.gates.end(), ok.replacement.begin(), ok.replacement.end());
  out.gates.insert(out.gates.end(), begin + static_cast<std::ptrdiff_t>(ok.width), c.gates.end());
  return out;
}

}  // namespace pauliforge
