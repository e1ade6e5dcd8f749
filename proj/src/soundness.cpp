#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "pauliforge/circuit_text.hpp"
#include "pauliforge/rewrite_rules.hpp"
#include "pauliforge/semantics.hpp"

namespace pauliforge {

namespace {

struct Instance {
  int qubits = 2;
  std::vector<Gate> window;
  RuleParams forward;
  std::optional<RuleParams> backward;  // set when the rule can undo its own rewrite here
};

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return uniform(0, 1) == 1; }
  Axis axis() { return kAxes[uniform(0, 2)]; }
  Axis axis_other_than(Axis a) {
    Axis b = axis();
    while (b == a) b = axis();
    return b;
  }

  // Nonzero m/k with k in {1, 2, 4}.
  RootExponent exponent() {
    static constexpr int kDegrees[] = {1, 2, 4};
    const int k = kDegrees[uniform(0, 2)];
    int m = 0;
    while (m == 0) m = uniform(-k + 1, k);
    return {m, k};
  }

  RootExponent positive_exponent() {
    RootExponent e = exponent();
    return e.num() < 0 ? -e : e;
  }

  std::vector<int> distinct_lines(int n, int count) {
    std::vector<int> lines(static_cast<std::size_t>(n));
    std::iota(lines.begin(), lines.end(), 0);
    std::shuffle(lines.begin(), lines.end(), rng_);
    lines.resize(static_cast<std::size_t>(count));
    return lines;
  }

  Polarity polarity() { return coin() ? Polarity::Positive : Polarity::Negative; }

  // Random extra controls on lines outside `used`.
  std::vector<Control> extra_controls(int n, const std::vector<int>& used, int max_count = 1) {
    std::vector<Control> out;
    for (int l = 0; l < n && static_cast<int>(out.size()) < max_count; ++l) {
      if (std::find(used.begin(), used.end(), l) != used.end()) continue;
      if (uniform(0, 2) == 0) out.push_back({l, polarity()});
    }
    return out;
  }

  NamedOp op() {
    switch (uniform(0, 5)) {
      case 0: return Translation{axis(), axis()};
      case 1: return Negator{axis(), std::uniform_real_distribution<double>(-3.0, 3.0)(rng_)};
      default: return PauliRoot{axis(), exponent()};
    }
  }

  NamedOp involution() {
    if (coin()) return Translation{axis(), axis()};
    return PauliRoot{axis(), RootExponent{1}};
  }

  Gate gate(int n) {
    const auto lines = distinct_lines(n, 1);
    std::vector<Control> controls;
    for (int l = 0; l < n; ++l)
      if (l != lines[0] && uniform(0, 3) == 0) controls.push_back({l, polarity()});
    return Gate(op(), lines[0], controls);
  }

 private:
  std::mt19937_64 rng_;
};

std::vector<Control> with(std::vector<Control> cs, Control c) {
  cs.push_back(c);
  return cs;
}

Instance make_instance(RuleId id, Sampler& s) {
  Instance in;
  const int n = s.uniform(3, 4);
  in.qubits = n;
  RuleParams bwd;
  bwd.direction = Direction::Backward;
  switch (id) {
    case RuleId::MergeSameControls: {
      const auto l = s.distinct_lines(n, 2);
      const auto ctl = s.extra_controls(n, {l[0]}, 2);
      const Axis a = s.axis();
      if (s.uniform(0, 4) == 0) {
        const double th = 0.5 * s.uniform(-4, 4);
        in.window = {Gate(Negator{a, th}, l[0], ctl), Gate(Negator{a, -0.25}, l[0], ctl)};
        break;
      }
      const RootExponent e = s.exponent();
      const RootExponent f = s.coin() ? -e : s.exponent();
      in.window = {Gate(PauliRoot{a, e}, l[0], ctl), Gate(PauliRoot{a, f}, l[0], ctl)};
      break;
    }
    case RuleId::CommuteOppositePolarity: {
      const auto l = s.distinct_lines(n, 3);
      const Polarity p = s.polarity();
      const Polarity q = p == Polarity::Positive ? Polarity::Negative : Polarity::Positive;
      in.window = {Gate(s.op(), l[1], with(s.extra_controls(n, {l[0], l[1]}), {l[0], p})),
                   Gate(s.op(), s.coin() ? l[1] : l[2], {{l[0], q}})};
      in.backward = bwd;
      break;
    }
    case RuleId::EliminateBothPolarities: {
      const auto l = s.distinct_lines(n, 2);
      const auto rest = s.extra_controls(n, {l[0], l[1]});
      const NamedOp op = s.op();
      in.window = {Gate(op, l[0], with(rest, neg(l[1]))), Gate(op, l[0], with(rest, pos(l[1])))};
      bwd.line = l[1];
      in.backward = bwd;
      break;
    }
    case RuleId::CaseGateSplit: {
      const auto l = s.distinct_lines(n, 2);
      const auto rest = s.extra_controls(n, {l[0], l[1]});
      const Axis a = s.axis();
      const RootExponent e1 = s.exponent();
      RootExponent e2 = s.exponent();
      while (PauliRoot(a, e2) == PauliRoot(a, e1)) e2 = s.exponent();
      in.window = {Gate(PauliRoot{a, e1}, l[0], with(rest, neg(l[1]))), Gate(PauliRoot{a, e2}, l[0], with(rest, pos(l[1])))};
      in.backward = bwd;
      break;
    }
    case RuleId::FlipZRootControlTarget: {
      const auto l = s.distinct_lines(n, 2);
      in.window = {Gate(PauliRoot{Axis::Z, s.exponent()}, l[0], with(s.extra_controls(n, {l[0], l[1]}), pos(l[1])))};
      in.forward.line = l[1];
      bwd.line = l[0];
      in.backward = bwd;
      break;
    }
    case RuleId::ConjugateByTranslation: {
      const auto l = s.distinct_lines(n, 2);
      const Axis a = s.axis();
      const auto rest = s.extra_controls(n, {l[0], l[1]});
      if (s.coin()) {
        in.forward.flip = true;
        in.forward.line = l[1];
        in.window = {Gate(PauliRoot{a, s.exponent()}, l[0], with(rest, pos(l[1])))};
        bwd.flip = true;
        if (a != Axis::Z) in.backward = bwd;
      } else {
        in.forward.b = s.axis_other_than(a);
        in.window = {Gate(PauliRoot{a, s.exponent()}, l[0], s.coin() ? with(rest, pos(l[1])) : rest)};
        in.backward = bwd;
      }
      break;
    }
    case RuleId::MoveZRootOverControl: {
      const auto l = s.distinct_lines(n, 2);
      const Gate z(PauliRoot{Axis::Z, s.exponent()}, l[1]);
      const Gate g(s.op(), l[0], with(s.extra_controls(n, {l[0], l[1]}), pos(l[1])));
      in.window = s.coin() ? std::vector<Gate>{z, g} : std::vector<Gate>{g, z};
      in.backward = bwd;
      break;
    }
    case RuleId::CnotRuleD7: {
      const auto l = s.distinct_lines(n, 3);
      const int p = l[0], q = l[1], r = l[2];
      in.window = s.coin() ? std::vector<Gate>{cx(p, q), cx(q, r)} : std::vector<Gate>{cx(q, r), cx(p, q)};
      in.forward.extra_before = s.coin();
      bwd.extra_before = in.forward.extra_before;
      in.backward = bwd;
      break;
    }
    case RuleId::Lemma1Case:
    case RuleId::Lemma1CaseCorollary: {
      const auto l = s.distinct_lines(n, 2);
      const auto rest = s.extra_controls(n, {l[0], l[1]});
      const Axis a = s.axis();
      RootExponent e = s.positive_exponent();
      if (id == RuleId::Lemma1CaseCorollary) {
        while (e == RootExponent{1}) e = s.positive_exponent();
        e = -e;
      }
      in.window = {Gate(PauliRoot{a, -e}, l[0], with(rest, neg(l[1]))), Gate(PauliRoot{a, e}, l[0], with(rest, pos(l[1])))};
      in.forward.b = s.axis_other_than(a);
      bwd.b = in.forward.b;
      in.backward = bwd;
      break;
    }
    case RuleId::Thm1RemoveControl: {
      const auto l = s.distinct_lines(n, 2);
      const Axis a = s.axis();
      RuleParams p;
      p.b = s.axis_other_than(a);
      p.line = l[1];
      p.first_gate_to_end = s.coin();
      p.z_root_over_controls = s.coin();
      p.use_c2 = *p.b == Axis::Z && s.coin();
      const RootExponent e = s.exponent();
      in.window = {Gate(PauliRoot{a, e}, l[0], with(s.extra_controls(n, {l[0], l[1]}), pos(l[1])))};
      in.forward = p;
      bwd = p;
      bwd.direction = Direction::Backward;
      in.backward = bwd;
      break;
    }
    case RuleId::Thm2BarencoExtended: {
      const auto l = s.distinct_lines(n, 3);
      const Axis a = s.axis();
      const RootExponent e = s.coin() ? RootExponent{1} : s.exponent();
      RuleParams p;
      p.b = s.axis();
      p.swap_control_lines = s.coin();
      p.last_root_first = s.coin();
      p.dagger_roots = e == RootExponent{1} && s.coin();
      // Extra controls are negative so the chosen pair stays the first two positive ones.
      std::vector<Control> ctl{pos(l[1]), pos(l[2])};
      if (n > 3 && s.coin()) ctl.push_back(neg(6 - l[0] - l[1] - l[2]));  // the fourth line
      in.window = {Gate(PauliRoot{a, e}, l[0], ctl)};
      in.forward = p;
      bwd = p;
      bwd.direction = Direction::Backward;
      in.backward = bwd;
      break;
    }
    case RuleId::SwapTConjugation: {
      const auto l = s.distinct_lines(n, 2);
      in.window = {cx(l[0], l[1]), Gate(PauliRoot{Axis::Z, s.exponent()}, l[1]), cx(l[0], l[1])};
      in.backward = bwd;
      break;
    }
    case RuleId::CancelAdjacentInverses: {
      const Gate g = s.gate(n);
      in.window = {g, Gate(adjoint(g.op), g.target, g.controls)};
      break;
    }
    case RuleId::CancelInvolution: {
      Gate g = s.gate(n);
      g.op = s.involution();
      in.window = {g, g};
      break;
    }
    case RuleId::CommuteGates: {
      Gate a = s.gate(n), b = s.gate(n);
      for (int tries = 0; tries < 200 && !gates_commute(a, b); ++tries) {
        a = s.gate(n);
        b = s.gate(n);
      }
      if (!gates_commute(a, b)) {
        a = Gate(PauliRoot{Axis::Z, s.exponent()}, 0);
        b = Gate(PauliRoot{Axis::X, s.exponent()}, 1, {pos(0)});
      }
      in.window = {a, b};
      in.backward = bwd;
      break;
    }
  }
  return in;
}

std::string describe(RuleId id, std::size_t anchor, const RuleParams& p) {
  std::ostringstream os;
  os << "# " << rule_name(id) << " at " << anchor << (p.direction == Direction::Forward ? " forward" : " backward");
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
  os << "\n";
  return os.str();
}

}  // namespace

SoundnessReport check_soundness(RuleId rule, int trials, std::uint64_t seed) {
  SoundnessReport report;
  report.rule = rule;
  report.trials = trials;
  Sampler s(seed ^ (static_cast<std::uint64_t>(rule) * 0x9E3779B97F4A7C15ULL));
  for (int trial = 0; trial < trials; ++trial) {
    Instance in = make_instance(rule, s);
    Circuit c(in.qubits);
    const int before = s.uniform(0, 3), after = s.uniform(0, 3);
    for (int k = 0; k < before; ++k) c.add(s.gate(in.qubits));
    const auto anchor = c.size();
    for (auto& g : in.window) c.add(g);
    for (int k = 0; k < after; ++k) c.add(s.gate(in.qubits));

    auto fail = [&](const Circuit& input, const RuleParams& p, const std::string& why) {
      report.counterexamples.push_back(describe(rule, anchor, p) + "# " + why + "\n" + print_circuit(input));
    };
    Circuit out;
    try {
      out = apply({rule, anchor, in.forward}, c);
    } catch (const std::exception& e) {
      fail(c, in.forward, std::string("generated instance not applicable: ") + e.what());
      continue;
    }
    ++report.applied;
    if (!equivalent(c, out).equivalent) {
      fail(c, in.forward, "rewrite changes the unitary");
      continue;
    }
    if (!in.backward) continue;
    Circuit back;
    try {
      back = apply({rule, anchor, *in.backward}, out);
    } catch (const std::exception& e) {
      fail(out, *in.backward, std::string("backward rewrite not applicable: ") + e.what());
      continue;
    }
    if (!equivalent(out, back).equivalent) fail(out, *in.backward, "backward rewrite changes the unitary");
    else if (back != c) fail(out, *in.backward, "backward rewrite does not restore the original window");
  }
  return report;
}

}  // namespace pauliforge
