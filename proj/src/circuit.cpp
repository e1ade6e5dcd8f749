#include "pauliforge/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace pauliforge {

Gate::Gate(NamedOp o, int t, std::vector<Control> c) : op(std::move(o)), target(t), controls(std::move(c)) {
  std::stable_sort(controls.begin(), controls.end(), [](const Control& a, const Control& b) { return a.line < b.line; });
}

bool Gate::has_control_on(int line) const { return control_on(line) != nullptr; }

const Control* Gate::control_on(int line) const {
  for (const auto& c : controls)
    if (c.line == line) return &c;
  return nullptr;
}

std::vector<int> Gate::lines() const {
  std::vector<int> out;
  out.reserve(controls.size() + 1);
  out.push_back(target);
  for (const auto& c : controls) out.push_back(c.line);
  return out;
}

std::vector<Violation> validate(const Circuit& c) {
  std::vector<Violation> out;
  if (c.qubits < 1) out.push_back({0, "qubit count must be at least 1"});
  for (std::size_t i = 0; i < c.gates.size(); ++i) {
    const Gate& g = c.gates[i];
    auto in_range = [&](int line) { return line >= 0 && line < c.qubits; };
    if (!in_range(g.target))
      out.push_back({i, "target line " + std::to_string(g.target) + " out of range"});
    for (std::size_t k = 0; k < g.controls.size(); ++k) {
      const int line = g.controls[k].line;
      if (!in_range(line)) out.push_back({i, "control line " + std::to_string(line) + " out of range"});
      if (line == g.target) out.push_back({i, "line " + std::to_string(line) + " is both target and control"});
      if (k > 0 && g.controls[k - 1].line == line)
        out.push_back({i, "duplicate control on line " + std::to_string(line)});
    }
    if (auto* n = std::get_if<Negator>(&g.op); n && !std::isfinite(n->theta))
      out.push_back({i, "negator angle is not finite"});
  }
  return out;
}

void require_valid(const Circuit& c) {
  const auto violations = validate(c);
  if (violations.empty()) return;
  std::ostringstream os;
  os << "invalid circuit:";
  for (const auto& v : violations) os << " [gate " << v.gate_index << "] " << v.message << ";";
  throw std::invalid_argument(os.str());
}

bool is_t_type(const Gate& g) {
  if (g.is_controlled()) return false;
  const auto* r = as_root(g.op);
  return r && r->axis == Axis::Z && r->exponent.den() == 4 && r->exponent.num() % 2 != 0;
}

namespace {

bool is_controlled_t(const Gate& g) {
  if (!g.is_controlled()) return false;
  const auto* r = as_root(g.op);
  return r && r->axis == Axis::Z && r->exponent.den() == 4 && r->exponent.num() % 2 != 0;
}

// Longest weighted path ending at each gate; weight(g) is added at g.
template <typename Weight>
std::vector<int> longest_paths(const Circuit& c, Weight weight) {
  require_valid(c);
  std::vector<int> frontier(static_cast<std::size_t>(c.qubits), 0);
  std::vector<int> out;
  out.reserve(c.gates.size());
  for (const auto& g : c.gates) {
    int start = 0;
    for (int line : g.lines()) start = std::max(start, frontier[static_cast<std::size_t>(line)]);
    const int end = start + weight(g);
    for (int line : g.lines()) frontier[static_cast<std::size_t>(line)] = end;
    out.push_back(end);
  }
  return out;
}

int max_or_zero(const std::vector<int>& v) { return v.empty() ? 0 : *std::max_element(v.begin(), v.end()); }

}  // namespace

int critical_depth(const Circuit& c) { return max_or_zero(stage_indices(c)); }

int t_depth(const Circuit& c) {
  return max_or_zero(longest_paths(c, [](const Gate& g) { return is_t_type(g) ? 1 : 0; }));
}

std::vector<int> stage_indices(const Circuit& c) {
  return longest_paths(c, [](const Gate&) { return 1; });
}

std::string op_kind(const Gate& g) {
  std::string prefix(g.controls.size(), 'c');
  if (auto name = sugar_name(g.op)) return prefix + *name;
  if (auto* r = as_root(g.op)) return prefix + "root(" + axis_letter(r->axis) + "," + r->exponent.str() + ")";
  if (auto* t = std::get_if<Translation>(&g.op))
    return prefix + "trans(" + axis_letter(t->first) + "," + axis_letter(t->second) + ")";
  return prefix + "neg(" + axis_letter(std::get<Negator>(g.op).axis) + ")";
}

CircuitStats stats(const Circuit& c) {
  CircuitStats s;
  s.depth = critical_depth(c);
  s.t_depth = t_depth(c);
  s.gate_count = static_cast<int>(c.gates.size());
  for (const auto& g : c.gates) {
    ++s.counts[op_kind(g)];
    if (is_t_type(g)) ++s.t_count;
    if (is_controlled_t(g)) s.controlled_t_present = true;
  }
  return s;
}

Circuit reversed(const Circuit& c) {
  Circuit out(c.qubits, c.gates);
  std::reverse(out.gates.begin(), out.gates.end());
  return out;
}

Circuit inverse(const Circuit& c) {
  Circuit out = reversed(c);
  for (auto& g : out.gates) g.op = adjoint(g.op);
  return out;
}

}  // namespace pauliforge
