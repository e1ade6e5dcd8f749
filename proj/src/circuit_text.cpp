#include "pauliforge/circuit_text.hpp"

#include <charconv>
#include <cmath>
#include <optional>
#include <sstream>
#include <vector>

namespace pauliforge {

namespace {

struct Token {
  std::string_view text;
  int column = 1;  // 1-based column of the first character

  SourceSpan span(int line) const { return {line, column, column + static_cast<int>(text.size()) - 1}; }
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (line[i] == ' ' || line[i] == '\t') {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '#') ++i;
    out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

template <typename Int>
std::optional<Int> parse_int(std::string_view s) {
  Int v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

class LineParser {
 public:
  LineParser(std::vector<Token> tokens, int line_no, int line_length, int qubits)
      : tokens_(std::move(tokens)), line_(line_no), line_length_(line_length), qubits_(qubits) {}

  Gate parse_gate() {
    const Token& head = next("directive");
    const std::string_view m = head.text;
    if (m == "root") {
      const Axis a = axis(next("axis"));
      const RootExponent e = rational(next("rational m/k"));
      return finish(PauliRoot{a, e});
    }
    if (m == "trans") {
      const Axis a = axis(next("axis"));
      const Axis b = axis(next("axis"));
      return finish(Translation{a, b});
    }
    if (m == "neg") {
      const Axis a = axis(next("axis"));
      const Token& t = next("angle");
      double theta = 0;
      auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), theta);
      if (ec != std::errc() || ptr != t.text.data() + t.text.size() || !std::isfinite(theta))
        fail("malformed angle '" + std::string(t.text) + "'", t);
      return finish(Negator{a, theta});
    }
    if (m == "cx") {
      const Token& ct = next("control line");
      const int control = line_index(ct);
      Gate g = finish(ops::X());
      for (const auto& c : g.controls)
        if (c.line == control) fail("duplicate control on line " + std::to_string(control), ct);
      if (control == g.target) fail("target line used as control", ct);
      g.controls.push_back(pos(control));
      return Gate(g.op, g.target, g.controls);
    }
    if (auto op = sugar(m)) return finish(*op);
    fail("unknown mnemonic '" + std::string(m) + "'", head);
  }

  int parse_qubits() {
    next("qubits");
    const Token& t = next("qubit count");
    auto n = parse_int<int>(t.text);
    if (!n || *n < 1) fail("qubit count must be a positive integer", t);
    if (*n > 64) fail("qubit count too large", t);
    expect_end();
    return *n;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, const Token& t) const { throw ParseError(msg, t.span(line_)); }
  [[noreturn]] void fail_at_end(const std::string& msg) const {
    throw ParseError(msg, {line_, line_length_ + 1, line_length_ + 1});
  }

  const Token& next(const char* what) {
    if (pos_ >= tokens_.size()) fail_at_end(std::string("expected ") + what);
    return tokens_[pos_++];
  }

  void expect_end() {
    if (pos_ < tokens_.size()) fail("unexpected token '" + std::string(tokens_[pos_].text) + "'", tokens_[pos_]);
  }

  Axis axis(const Token& t) const {
    if (t.text.size() == 1)
      if (auto a = axis_from_letter(t.text[0])) return *a;
    fail("unknown axis '" + std::string(t.text) + "'", t);
  }

  RootExponent rational(const Token& t) const {
    const auto slash = t.text.find('/');
    if (slash == std::string_view::npos) fail("malformed rational '" + std::string(t.text) + "'", t);
    auto m = parse_int<std::int64_t>(t.text.substr(0, slash));
    auto k = parse_int<std::int64_t>(t.text.substr(slash + 1));
    if (!m || !k || *k <= 0) fail("malformed rational '" + std::string(t.text) + "'", t);
    return RootExponent{*m, *k};
  }

  int line_index(const Token& t) const {
    auto v = parse_int<int>(t.text);
    if (!v || *v < 0) fail("malformed line index '" + std::string(t.text) + "'", t);
    if (*v >= qubits_)
      fail("line " + std::to_string(*v) + " out of range for " + std::to_string(qubits_) + " qubits", t);
    return *v;
  }

  static std::optional<NamedOp> sugar(std::string_view m) {
    if (m == "x") return ops::X();
    if (m == "y") return ops::Y();
    if (m == "z") return ops::Z();
    if (m == "h") return ops::H();
    if (m == "s") return ops::S();
    if (m == "sdg") return ops::Sdg();
    if (m == "t") return ops::T();
    if (m == "tdg") return ops::Tdg();
    if (m == "v") return ops::V();
    if (m == "vdg") return ops::Vdg();
    if (m == "w") return ops::W();
    if (m == "wdg") return ops::Wdg();
    return std::nullopt;
  }

  // Target line followed by an optional control list.
  Gate finish(NamedOp op) {
    const int target = line_index(next("target line"));
    std::vector<Control> controls;
    bool saw_keyword = false;
    const Token* keyword = nullptr;
    while (pos_ < tokens_.size()) {
      const Token& t = tokens_[pos_++];
      if (t.text == "ctrl" && !saw_keyword) {
        saw_keyword = true;
        keyword = &t;
        continue;
      }
      if (!saw_keyword || t.text.size() < 2 || (t.text[0] != '+' && t.text[0] != '-'))
        fail("unexpected token '" + std::string(t.text) + "'", t);
      const Polarity p = t.text[0] == '+' ? Polarity::Positive : Polarity::Negative;
      const int line = line_index(Token{t.text.substr(1), t.column + 1});
      if (line == target) fail("target line used as control", t);
      for (const auto& c : controls)
        if (c.line == line) fail("duplicate control on line " + std::to_string(line), t);
      controls.push_back({line, p});
    }
    if (keyword && controls.empty()) fail("ctrl needs at least one control line", *keyword);
    return Gate(std::move(op), target, std::move(controls));
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int line_;
  int line_length_;
  int qubits_;
};

std::string format_theta(double theta) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), theta);
  std::string s(buf, ptr);
  // Keep it recognisably decimal.
  if (s.find_first_of(".eE") == std::string::npos && s.find("inf") == std::string::npos &&
      s.find("nan") == std::string::npos)
    s += ".0";
  return s;
}

}  // namespace

Circuit parse_circuit(std::string_view text) {
  std::optional<Circuit> circuit;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    auto tokens = tokenize(line);
    if (!tokens.empty()) {
      const bool is_qubits = tokens.front().text == "qubits";
      if (!circuit) {
        if (!is_qubits) throw ParseError("expected 'qubits N' as the first directive", tokens.front().span(line_no));
        LineParser p(std::move(tokens), line_no, static_cast<int>(line.size()), 0);
        circuit.emplace(p.parse_qubits());
      } else {
        if (is_qubits) throw ParseError("duplicate 'qubits' directive", tokens.front().span(line_no));
        LineParser p(std::move(tokens), line_no, static_cast<int>(line.size()), circuit->qubits);
        circuit->gates.push_back(p.parse_gate());
      }
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  if (!circuit) throw ParseError("missing 'qubits N' directive", {std::max(line_no, 1), 1, 1});
  return *circuit;
}

std::string print_circuit(const Circuit& c, bool sugar) {
  std::ostringstream os;
  os << "qubits " << c.qubits << "\n";
  for (const auto& g : c.gates) {
    const auto* r = as_root(g.op);
    if (sugar && r && r->axis == Axis::X && r->is_pauli() && g.controls.size() == 1 &&
        g.controls[0].polarity == Polarity::Positive) {
      os << "cx " << g.controls[0].line << " " << g.target << "\n";
      continue;
    }
    std::optional<std::string> name = sugar ? sugar_name(g.op) : std::nullopt;
    if (name) {
      os << *name;
    } else if (r) {
      os << "root " << axis_letter(r->axis) << " " << r->exponent.str();
    } else if (auto* t = std::get_if<Translation>(&g.op)) {
      os << "trans " << axis_letter(t->first) << " " << axis_letter(t->second);
    } else {
      const auto& n = std::get<Negator>(g.op);
      os << "neg " << axis_letter(n.axis) << " " << format_theta(n.theta);
    }
    os << " " << g.target;
    if (!g.controls.empty()) {
      os << " ctrl";
      for (const auto& ctl : g.controls) os << " " << (ctl.polarity == Polarity::Positive ? '+' : '-') << ctl.line;
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace pauliforge
