#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "pauliforge/circuit.hpp"

namespace pauliforge {

/// 1-based line and column range [column_begin, column_end] (inclusive).
struct SourceSpan {
  int line = 1;
  int column_begin = 1;
  int column_end = 1;

  bool operator==(const SourceSpan&) const = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, SourceSpan span)
      : std::runtime_error("line " + std::to_string(span.line) + ", col " + std::to_string(span.column_begin) + ": " +
                           message),
        message_(message),
        span_(span) {}

  const SourceSpan& span() const { return span_; }
  const std::string& bare_message() const { return message_; }

 private:
  std::string message_;
  SourceSpan span_;
};

/// Parses the line-oriented `.prc` circuit format.
///
///   qubits N
///   root <x|y|z> <m>/<k> <target> [ctrl (+|-)<line> ...]
///   trans <axis> <axis> <target> [ctrl ...]
///   neg <axis> <theta> <target> [ctrl ...]
///   x|y|z|h|s|sdg|t|tdg|v|vdg|w|wdg <target> [ctrl ...]
///   cx <control> <target>
///
/// `#` starts a comment; blank lines are ignored; CRLF is accepted.
Circuit parse_circuit(std::string_view text);

/// Canonical text. With sugar=false only root/trans/neg directives are emitted.
std::string print_circuit(const Circuit& c, bool sugar = false);

}  // namespace pauliforge
