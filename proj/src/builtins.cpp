#include "pauliforge/builtins.hpp"

#include <stdexcept>
#include <utility>

#include "pauliforge/circuit_text.hpp"

namespace pauliforge {

namespace {

// Lines are numbered from the top; the Toffoli target is the bottom line.
const std::pair<const char*, const char*> kBuiltins[] = {
    {"barenco-toffoli", R"(qubits 3
v 2 ctrl +1
cx 0 1
vdg 2 ctrl +1
cx 0 1
v 2 ctrl +0
)"},
    {"amy-toffoli", R"(qubits 3
h 2
t 0
t 1
t 2
cx 1 0
cx 2 1
cx 0 2
tdg 1
cx 0 1
tdg 0
tdg 1
t 2
cx 2 1
cx 0 2
cx 1 0
h 2
)"},
    {"peres-pair-adder", R"(qubits 4
x 3 ctrl +0 +1
cx 0 1
x 3 ctrl +1 +2
cx 1 2
)"},
    {"full-adder-final", R"(qubits 4
h 3
cx 2 3
t 0
t 1
t 2
tdg 3
cx 0 1
cx 2 3
cx 3 0
cx 1 2
cx 0 1
cx 2 3
tdg 0
tdg 1
tdg 2
t 3
cx 0 1
cx 2 3
s 3
cx 3 0
h 3
)"},
    {"w-adder", R"(qubits 4
h 0
h 1
h 2
cx 3 2
w 0
w 1
w 2
wdg 3
cx 1 0
cx 3 2
cx 0 3
cx 2 1
cx 1 0
cx 3 2
wdg 0
wdg 1
wdg 2
w 3
cx 1 0
cx 3 2
v 3
cx 0 3
h 0
h 1
h 2
)"},
};

}  // namespace

std::vector<std::string> builtin_names() {
  std::vector<std::string> out;
  for (const auto& [name, text] : kBuiltins) out.emplace_back(name);
  return out;
}

std::string builtin_text(std::string_view name) {
  for (const auto& [id, text] : kBuiltins)
    if (name == id) return text;
  throw std::invalid_argument("unknown builtin circuit '" + std::string(name) + "'");
}

Circuit builtin(std::string_view name) { return parse_circuit(builtin_text(name)); }

}  // namespace pauliforge
