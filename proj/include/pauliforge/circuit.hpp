#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "pauliforge/named_op.hpp"

namespace pauliforge {

enum class Polarity { Positive, Negative };

struct Control {
  int line = 0;
  Polarity polarity = Polarity::Positive;

  bool operator==(const Control&) const = default;
};

inline Control pos(int line) { return {line, Polarity::Positive}; }
inline Control neg(int line) { return {line, Polarity::Negative}; }

/// One target op on `target`, fired when every control matches its polarity.
/// Controls are kept sorted by line.
struct Gate {
  NamedOp op;
  int target = 0;
  std::vector<Control> controls;

  Gate() = default;
  Gate(NamedOp o, int t, std::vector<Control> c = {});

  bool is_controlled() const { return !controls.empty(); }
  bool has_control_on(int line) const;
  const Control* control_on(int line) const;
  bool touches(int line) const { return target == line || has_control_on(line); }
  std::vector<int> lines() const;

  bool operator==(const Gate&) const = default;
};

/// Controlled-X with a single positive control.
inline Gate cx(int control, int target) { return Gate(ops::X(), target, {pos(control)}); }

struct Circuit {
  int qubits = 1;
  std::vector<Gate> gates;

  Circuit() = default;
  Circuit(int n, std::vector<Gate> g = {}) : qubits(n), gates(std::move(g)) {}

  std::size_t size() const { return gates.size(); }
  bool empty() const { return gates.empty(); }
  Circuit& add(Gate g) {
    gates.push_back(std::move(g));
    return *this;
  }

  bool operator==(const Circuit&) const = default;
};

struct Violation {
  std::size_t gate_index = 0;
  std::string message;
};

/// Every index-range and control-overlap problem, in gate order.
std::vector<Violation> validate(const Circuit& c);

/// Throws std::invalid_argument listing all violations.
void require_valid(const Circuit& c);

/// True for uncontrolled Z^{m/4} with m odd: T, T^dagger and their odd powers.
bool is_t_type(const Gate& g);

/// Longest path in the line-occupancy dependency DAG, one unit per gate.
int critical_depth(const Circuit& c);

/// Same DAG, counting only T-type gates.
int t_depth(const Circuit& c);

/// 1-based DAG layer of each gate under as-soon-as-possible scheduling.
std::vector<int> stage_indices(const Circuit& c);

struct CircuitStats {
  int depth = 0;
  int t_depth = 0;
  int gate_count = 0;
  int t_count = 0;
  bool controlled_t_present = false;
  std::map<std::string, int> counts;
};

CircuitStats stats(const Circuit& c);

/// Short kind label such as "t", "cx", "ccx", "cs", "root(x,1/8)".
std::string op_kind(const Gate& g);

/// The same gates in reverse order.
Circuit reversed(const Circuit& c);

/// Reverse order with every op replaced by its adjoint.
Circuit inverse(const Circuit& c);

}  // namespace pauliforge
