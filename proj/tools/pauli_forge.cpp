#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "http_server.hpp"
#include "pauliforge/builtins.hpp"
#include "pauliforge/circuit_text.hpp"
#include "pauliforge/clifford_groups.hpp"
#include "pauliforge/mapping_passes.hpp"
#include "pauliforge/rewrite_rules.hpp"
#include "pauliforge/semantics.hpp"

using namespace pauliforge;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kResource = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Circuit read_circuit(const std::string& path) {
  std::string text;
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    text = os.str();
  } else {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  try {
    return parse_circuit(text);
  } catch (const ParseError& e) {
    throw UsageError(path + ":" + std::to_string(e.span().line) + ":" + std::to_string(e.span().column_begin) + ": " +
                     e.bare_message());
  }
}

void write_circuit(const Circuit& c, const std::string& out, bool sugar) {
  const std::string text = print_circuit(c, sugar);
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw UsageError("cannot write " + out);
  f << text;
}

bool check_equivalent(const Circuit& input, const Circuit& output, const std::string& what) {
  if (equivalent(input, output).equivalent) return true;
  std::cerr << what << ": output is not equivalent to the input\n";
  return false;
}

int cmd_stats(const std::string& file, bool as_json) {
  const Circuit c = read_circuit(file);
  const CircuitStats s = stats(c);
  if (as_json) {
    json j = {{"qubits", c.qubits},         {"depth", s.depth},     {"t_depth", s.t_depth},
              {"gate_count", s.gate_count}, {"t_count", s.t_count}, {"controlled_t", s.controlled_t_present},
              {"counts", s.counts}};
    std::cout << j.dump() << "\n";
    return kOk;
  }
  std::cout << "qubits=" << c.qubits << " depth=" << s.depth << " t_depth=" << s.t_depth
            << " gate_count=" << s.gate_count << " t_count=" << s.t_count << "\n";
  for (const auto& [kind, n] : s.counts) std::cout << "  " << kind << " " << n << "\n";
  return kOk;
}

int cmd_verify(const std::string& a, const std::string& b) {
  const Circuit ca = read_circuit(a), cb = read_circuit(b);
  if (ca.qubits != cb.qubits) throw UsageError("circuits act on different numbers of lines");
  const Equivalence eq = equivalent(ca, cb);
  if (!eq.equivalent) {
    std::cout << "not equivalent\n";
    return kFailed;
  }
  std::cout << "equivalent, phase " << eq.phase.real() << (eq.phase.imag() < 0 ? " - " : " + ")
            << std::abs(eq.phase.imag()) << "i\n";
  return kOk;
}

int cmd_map(const std::string& file, const std::string& pass, const std::string& out, bool sugar) {
  const Circuit c = read_circuit(file);
  Circuit r;
  if (pass == "expand-ncv") {
    r = expand_ncv(c);
  } else if (pass == "ncv-to-clifford-t") {
    r = ncv_to_clifford_t(c);
  } else if (pass == "cleanup") {
    r = cleanup(c);
  } else if (pass.rfind("translate:", 0) == 0 && pass.size() == 11 && axis_from_letter(pass[10])) {
    r = translate_library(c, *axis_from_letter(pass[10]));
  } else {
    throw UsageError("unknown pass " + pass);
  }
  if (!check_equivalent(c, r, pass)) return kFailed;
  write_circuit(r, out, sugar);
  return kOk;
}

int run_derivation(const DerivationScript& script, const std::string& out, bool sugar, bool trace) {
  ScriptResult result;
  try {
    result = run_script(script);
  } catch (const ScriptError& e) {
    std::cerr << script.name << ": " << e.what() << "\n";
    return kFailed;
  }
  if (trace) {
    for (std::size_t i = 0; i < script.steps.size(); ++i) {
      const CircuitStats s = stats(result.circuits[i + 1]);
      std::cerr << i << "\t" << describe(script.steps[i].action) << "\tgates=" << s.gate_count << " depth=" << s.depth
                << " t_depth=" << s.t_depth;
      if (!script.steps[i].note.empty()) std::cerr << "\t# " << script.steps[i].note;
      std::cerr << "\n";
    }
  }
  write_circuit(result.final_circuit(), out, sugar);
  if (!result.matches_expected) {
    std::cerr << script.name << ": final circuit differs from the expected circuit\n";
    return kFailed;
  }
  return kOk;
}

int cmd_derive_toffoli(const ToffoliFamilyParams& p, const std::string& out, bool sugar) {
  const Circuit c = toffoli_family(p);
  write_circuit(c, out, sugar);
  const auto table = truth_table(c);
  bool ok = table.has_value();
  for (int x = 0; ok && x < 8; ++x) {
    const bool x1 = x & 4, x2 = x & 2, x3 = x & 1;
    const auto expect = static_cast<std::uint64_t>((x & 6) | (x3 ^ toffoli_family_function(p, x1, x2)));
    ok = (*table)[static_cast<std::size_t>(x)] == expect;
  }
  if (!ok) {
    std::cerr << "control function differs from the table entry for a=" << p.a << " b=" << p.b << " c=" << p.c
              << "\n";
    return kFailed;
  }
  return kOk;
}

int cmd_rules_check(const std::string& rule, int trials, std::uint64_t seed, bool as_json) {
  std::vector<RuleId> rules;
  if (rule.empty()) {
    rules = all_rules();
  } else if (auto id = rule_from_name(rule)) {
    rules.push_back(*id);
  } else {
    throw UsageError("unknown rule " + rule);
  }
  bool ok = true;
  json reports = json::array();
  for (RuleId id : rules) {
    const SoundnessReport r = check_soundness(id, trials, seed);
    ok = ok && r.ok();
    if (as_json) {
      reports.push_back({{"rule", rule_name(id)},
                         {"trials", r.trials},
                         {"applied", r.applied},
                         {"counterexamples", r.counterexamples}});
      continue;
    }
    std::cout << (r.ok() ? "ok   " : "FAIL ") << rule_name(id) << " trials=" << r.trials << " applied=" << r.applied
              << " counterexamples=" << r.counterexamples.size() << "\n";
    for (const auto& ce : r.counterexamples) std::cout << ce << "\n";
  }
  if (as_json) std::cout << json{{"ok", ok}, {"seed", seed}, {"rules", reports}}.dump() << "\n";
  return ok ? kOk : kFailed;
}

int cmd_clifford_identities() {
  bool ok = true;
  for (const auto& c : clifford_identities_check()) {
    std::cout << (c.holds ? "ok   " : "FAIL ") << c.name << "\n";
    ok = ok && c.holds;
  }
  return ok ? kOk : kFailed;
}

int cmd_clifford_closure(const std::string& set, int qubits, char a, char b) {
  GeneratorSet gs;
  if (set == "pauli-root" || set == "paper") gs = GeneratorSet::PauliRoot;
  else if (set == "corollary") gs = GeneratorSet::Corollary;
  else if (set == "standard") gs = GeneratorSet::Standard;
  else if (set == "negator") gs = GeneratorSet::Negator;
  else throw UsageError("unknown generator set " + set);
  const auto ax = axis_from_letter(a), bx = axis_from_letter(b);
  if (!ax || !bx) throw UsageError("axes must be x, y or z");
  if (qubits != 1 && qubits != 2) throw UsageError("--qubits must be 1 or 2");
  if (gs != GeneratorSet::Standard && *ax == *bx) throw UsageError("--a and --b must differ");
  const GroupClosure group = bfs_closure(clifford_generators(gs, qubits, *ax, *bx));
  const GroupClosure reference = bfs_closure(clifford_generators(GeneratorSet::Standard, qubits));
  const bool same = group.same_elements(reference);
  std::cout << "order " << group.order() << "\n"
            << "equals closure of {CNOT, S, H}: " << (same ? "yes" : "no") << "\n";
  return same ? kOk : kFailed;
}

int cmd_builtin(const std::string& name, bool list, const std::string& out) {
  if (list || name.empty()) {
    for (const auto& n : builtin_names()) std::cout << n << "\n";
    return kOk;
  }
  try {
    const std::string text = builtin_text(name);
    if (out.empty() || out == "-") {
      std::cout << text;
    } else {
      std::ofstream f(out);
      if (!f) throw UsageError("cannot write " + out);
      f << text;
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rewriting toolkit for circuits over Pauli-root gates"};
  app.require_subcommand(1);
  bool sugar = false;
  app.add_flag("--sugar", sugar, "Print T, S, H, CNOT and friends by short names");

  std::string file, file2, out, pass, name, rule, set;
  bool as_json = false, trace = false, list = false;
  int trials = 200, qubits = 1;
  std::uint64_t seed = 1;
  ToffoliFamilyParams fam;
  char axis_a = 'x', axis_b = 'z';
  ServeOptions serve_opts;

  auto* stats_cmd = app.add_subcommand("stats", "Depth, T-depth and gate counts");
  stats_cmd->add_option("file", file, "Circuit file, - for stdin")->required();
  stats_cmd->add_flag("--json", as_json);

  auto* verify_cmd = app.add_subcommand("verify", "Equivalence up to global phase");
  verify_cmd->add_option("a", file)->required();
  verify_cmd->add_option("b", file2)->required();

  auto* map_cmd = app.add_subcommand("map", "Run a mapping pass");
  map_cmd->add_option("file", file)->required();
  map_cmd->add_option("--pass", pass, "expand-ncv | ncv-to-clifford-t | cleanup | translate:<axis>")->required();
  map_cmd->add_option("-o,--output", out);

  auto* derive_cmd = app.add_subcommand("derive", "Run a scripted derivation");
  derive_cmd->add_option("name", name, "toffoli | amy-toffoli | full-adder | w-adder")->required();
  derive_cmd->add_option("--a", fam.a)->check(CLI::Range(0, 1));
  derive_cmd->add_option("--b", fam.b)->check(CLI::Range(0, 1));
  derive_cmd->add_option("--c", fam.c)->check(CLI::Range(0, 1));
  derive_cmd->add_option("-o,--output", out);
  derive_cmd->add_flag("--trace", trace, "List every step on stderr");

  auto* rules_cmd = app.add_subcommand("rules", "Rule catalog");
  rules_cmd->require_subcommand(1);
  auto* check_cmd = rules_cmd->add_subcommand("check", "Randomized soundness check against dense unitaries");
  check_cmd->add_option("--rule", rule);
  check_cmd->add_option("--trials", trials)->check(CLI::PositiveNumber);
  check_cmd->add_option("--seed", seed);
  check_cmd->add_flag("--json", as_json);
  auto* list_rules_cmd = rules_cmd->add_subcommand("list", "Rule names");

  auto* cliff_cmd = app.add_subcommand("clifford", "Clifford group checks");
  cliff_cmd->require_subcommand(1);
  auto* ident_cmd = cliff_cmd->add_subcommand("identities", "Products expressing Z, X, Y through S and H");
  auto* closure_cmd = cliff_cmd->add_subcommand("closure", "Closure order of a generator set");
  closure_cmd->add_option("--set", set, "pauli-root | corollary | standard | negator")->required();
  closure_cmd->add_option("--qubits", qubits)->check(CLI::Range(1, 2));
  closure_cmd->add_option("--a", axis_a);
  closure_cmd->add_option("--b", axis_b);

  auto* builtin_cmd = app.add_subcommand("builtin", "Print a named circuit");
  builtin_cmd->add_option("name", name);
  builtin_cmd->add_flag("--list", list);
  builtin_cmd->add_option("-o,--output", out);

  auto* serve_cmd = app.add_subcommand("serve", "HTTP JSON session API");
  serve_cmd->add_option("--port", serve_opts.port);
  serve_cmd->add_option("--host", serve_opts.host);
  serve_cmd->add_option("--static", serve_opts.static_dir, "Directory served at /");
  serve_cmd->add_option("--max-sessions", serve_opts.max_sessions);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*stats_cmd) return cmd_stats(file, as_json);
    if (*verify_cmd) return cmd_verify(file, file2);
    if (*map_cmd) return cmd_map(file, pass, out, sugar);
    if (*derive_cmd) {
      if (name == "toffoli") return cmd_derive_toffoli(fam, out, sugar);
      if (name == "amy-toffoli") return run_derivation(derive_amy_toffoli(), out, sugar, trace);
      if (name == "full-adder") return run_derivation(derive_full_adder(), out, sugar, trace);
      if (name == "w-adder") return run_derivation(derive_w_adder(), out, sugar, trace);
      throw UsageError("unknown derivation " + name);
    }
    if (*check_cmd) return cmd_rules_check(rule, trials, seed, as_json);
    if (*list_rules_cmd) {
      for (RuleId id : all_rules()) std::cout << rule_name(id) << "\n";
      return kOk;
    }
    if (*ident_cmd) return cmd_clifford_identities();
    if (*closure_cmd) return cmd_clifford_closure(set, qubits, axis_a, axis_b);
    if (*builtin_cmd) return cmd_builtin(name, list, out);
    if (*serve_cmd) return serve(serve_opts) ? kOk : kUsage;
  } catch (const UsageError& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const ResourceError& e) {
    std::cerr << e.what() << "\n";
    return kResource;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
