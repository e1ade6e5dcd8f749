#include "pauliforge/session.hpp"

#include <algorithm>

#include <json.hpp>

#include "pauliforge/builtins.hpp"
#include "pauliforge/semantics.hpp"

namespace pauliforge {

using nlohmann::json;

StatsDelta operator-(const CircuitStats& after, const CircuitStats& before) {
  return {after.depth - before.depth, after.t_depth - before.t_depth, after.gate_count - before.gate_count,
          after.t_count - before.t_count};
}

std::vector<RuleParams> canonical_params(RuleId rule) {
  std::vector<RuleParams> out{RuleParams{}};
  if (is_bidirectional(rule) && !is_self_inverse(rule)) {
    RuleParams back;
    back.direction = Direction::Backward;
    out.push_back(back);
  }
  switch (rule) {
    case RuleId::CnotRuleD7:
      for (Direction d : {Direction::Forward, Direction::Backward}) {
        RuleParams p;
        p.direction = d;
        p.extra_before = true;
        out.push_back(p);
      }
      break;
    case RuleId::ConjugateByTranslation:
      for (Axis b : kAxes) {
        RuleParams p;
        p.b = b;
        out.push_back(p);
      }
      break;
    case RuleId::Thm1RemoveControl: {
      RuleParams p;
      p.b = Axis::Z;
      out.push_back(p);
      break;
    }
    default:
      break;
  }
  return out;
}

SessionService::SessionService(std::size_t capacity) : capacity_(capacity == 0 ? 1 : capacity) {}

Session& SessionService::locate(const std::string& id) {
  auto it = index_.find(id);
  if (it == index_.end()) throw SessionError(404, "not_found", "no session " + id);
  lru_.splice(lru_.begin(), lru_, it->second);
  return lru_.front();
}

Session SessionService::open(const Circuit& c) {
  try {
    require_valid(c);
  } catch (const std::invalid_argument& e) {
    throw SessionError(400, "invalid_circuit", e.what());
  }
  if (c.qubits > kMaxDenseQubits)
    throw SessionError(400, "too_large", "sessions are limited to " + std::to_string(kMaxDenseQubits) + " qubits");
  std::lock_guard lock(mutex_);
  Session s;
  s.id = "s" + std::to_string(next_id_++);
  s.history.push_back({std::nullopt, c, stats(c)});
  lru_.push_front(s);
  index_[s.id] = lru_.begin();
  while (lru_.size() > capacity_) {
    index_.erase(lru_.back().id);
    lru_.pop_back();
  }
  return s;
}

Session SessionService::get(const std::string& id) {
  std::lock_guard lock(mutex_);
  return locate(id);
}

std::vector<MoveOption> SessionService::enumerate_moves(const std::string& id) {
  Circuit c;
  CircuitStats before;
  {
    std::lock_guard lock(mutex_);
    const Session& s = locate(id);
    c = s.current();
    before = s.current_stats();
  }
  std::vector<MoveOption> out;
  for (RuleId rule : all_rules())
    for (const RuleParams& params : canonical_params(rule))
      for (std::size_t anchor = 0; anchor < c.size(); ++anchor) {
        if (!applicable(rule, c, anchor, params)) continue;
        RewriteStep step{rule, anchor, params};
        out.push_back({step, stats(apply(step, c)) - before});
      }
  return out;
}

Session SessionService::apply_move(const std::string& id, const ScriptAction& action) {
  std::lock_guard lock(mutex_);
  Session& s = locate(id);
  Circuit next;
  try {
    next = execute(action, s.current());
  } catch (const std::exception& e) {
    throw SessionError(409, "inapplicable", describe(action) + ": " + e.what());
  }
  if (!equivalent(s.initial(), next).equivalent)
    throw SessionError(500, "unsound", describe(action) + " produced a circuit not equivalent to the initial one");
  s.history.resize(s.cursor + 1);
  CircuitStats st = stats(next);
  s.history.push_back({action, std::move(next), std::move(st)});
  ++s.cursor;
  return s;
}

Session SessionService::undo(const std::string& id) {
  std::lock_guard lock(mutex_);
  Session& s = locate(id);
  if (s.cursor == 0) throw SessionError(409, "nothing_to_undo", "session is at its initial circuit");
  --s.cursor;
  return s;
}

Session SessionService::redo(const std::string& id) {
  std::lock_guard lock(mutex_);
  Session& s = locate(id);
  if (s.cursor + 1 >= s.history.size()) throw SessionError(409, "nothing_to_redo", "no undone step to redo");
  ++s.cursor;
  return s;
}

std::size_t SessionService::size() const {
  std::lock_guard lock(mutex_);
  return lru_.size();
}

namespace {

json stats_json(const CircuitStats& st) {
  return {{"depth", st.depth}, {"t_depth", st.t_depth}, {"gate_count", st.gate_count}, {"t_count", st.t_count}};
}

json delta_json(const StatsDelta& d) {
  return {{"depth", d.depth}, {"t_depth", d.t_depth}, {"gate_count", d.gate_count}, {"t_count", d.t_count}};
}

json params_json(const RuleParams& p) {
  json j = json::object();
  j["direction"] = p.direction == Direction::Forward ? "forward" : "backward";
  if (p.b) j["b"] = std::string(1, axis_letter(*p.b));
  if (p.line) j["line"] = *p.line;
  const std::pair<const char*, bool> flags[] = {
      {"first_gate_to_end", p.first_gate_to_end}, {"z_root_over_controls", p.z_root_over_controls},
      {"use_c2", p.use_c2},                       {"swap_control_lines", p.swap_control_lines},
      {"dagger_roots", p.dagger_roots},           {"last_root_first", p.last_root_first},
      {"flip", p.flip},                           {"extra_before", p.extra_before},
  };
  for (const auto& [name, on] : flags)
    if (on) j[name] = true;
  return j;
}

SessionError bad_request(const std::string& message) { return SessionError(400, "bad_request", message); }

RuleParams params_from_json(const json& j) {
  RuleParams p;
  if (j.is_null()) return p;
  if (!j.is_object()) throw bad_request("params must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key == "direction") {
      const auto d = value.get<std::string>();
      if (d == "forward") p.direction = Direction::Forward;
      else if (d == "backward") p.direction = Direction::Backward;
      else throw bad_request("direction must be forward or backward");
    } else if (key == "b") {
      const auto s = value.get<std::string>();
      auto a = s.size() == 1 ? axis_from_letter(s[0]) : std::nullopt;
      if (!a) throw bad_request("b must be x, y or z");
      p.b = a;
    } else if (key == "line") {
      p.line = value.get<int>();
    } else if (key == "first_gate_to_end") p.first_gate_to_end = value.get<bool>();
    else if (key == "z_root_over_controls") p.z_root_over_controls = value.get<bool>();
    else if (key == "use_c2") p.use_c2 = value.get<bool>();
    else if (key == "swap_control_lines") p.swap_control_lines = value.get<bool>();
    else if (key == "dagger_roots") p.dagger_roots = value.get<bool>();
    else if (key == "last_root_first") p.last_root_first = value.get<bool>();
    else if (key == "flip") p.flip = value.get<bool>();
    else if (key == "extra_before") p.extra_before = value.get<bool>();
    else throw bad_request("unknown parameter " + key);
  }
  return p;
}

Circuit parse_payload(const std::string& text) {
  try {
    return parse_circuit(text);
  } catch (const ParseError& e) {
    throw SessionError(400, "parse_error", e.bare_message(), e.span());
  }
}

ScriptAction action_from_json(const json& j, int qubits) {
  if (!j.contains("rule") || !j["rule"].is_string()) throw bad_request("missing rule");
  const auto name = j["rule"].get<std::string>();
  const std::size_t anchor = j.value("anchor", std::size_t{0});
  const json params = j.value("params", json::object());
  if (name == "InsertIdentityPair") {
    if (!params.contains("gate")) throw bad_request("InsertIdentityPair needs params.gate");
    Circuit one = parse_payload("qubits " + std::to_string(qubits) + "\n" + params["gate"].get<std::string>());
    if (one.size() != 1) throw bad_request("params.gate must be exactly one gate");
    return InsertIdentityPair{anchor, one.gates.front()};
  }
  if (name == "RelabelLines") {
    if (!params.contains("end")) throw bad_request("RelabelLines needs params.end");
    return RelabelLines{anchor, params["end"].get<std::size_t>()};
  }
  auto rule = rule_from_name(name);
  if (!rule) throw bad_request("unknown rule " + name);
  return RewriteStep{*rule, anchor, params_from_json(params)};
}

json session_json(const Session& s) {
  return {{"id", s.id},
          {"stats", stats_json(s.current_stats())},
          {"circuit", print_circuit(s.current())},
          {"stages", stage_indices(s.current())},
          {"equivalent", true},
          {"cursor", s.cursor},
          {"history_length", s.history.size()}};
}

json error_json(const SessionError& e) {
  json j = {{"code", e.code()}, {"message", e.what()}};
  if (e.span())
    j["span"] = {{"line", e.span()->line}, {"column_begin", e.span()->column_begin},
                 {"column_end", e.span()->column_end}};
  return j;
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : path.substr(0, path.find('?'))) {
    if (ch == '/') {
      if (!cur.empty()) parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) parts.push_back(cur);
  return parts;
}

json parse_body(const std::string& body) {
  if (body.empty()) return json::object();
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    throw bad_request(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

ApiResponse route_request(SessionService& service, const std::string& method, const std::string& path,
                          const std::string& body) {
  try {
    const auto parts = split_path(path);
    if (method == "GET" && parts == std::vector<std::string>{"builtins"}) {
      json j = json::object();
      for (const auto& name : builtin_names()) j[name] = builtin_text(name);
      return {200, j.dump()};
    }
    if (method == "GET" && parts.size() == 2 && parts[0] == "builtins") {
      const auto names = builtin_names();
      if (std::find(names.begin(), names.end(), parts[1]) == names.end())
        throw SessionError(404, "not_found", "no builtin circuit " + parts[1]);
      return {200, json{{"name", parts[1]}, {"circuit", builtin_text(parts[1])}}.dump()};
    }
    if (parts.empty() || parts[0] != "sessions") throw SessionError(404, "not_found", "no route " + path);
    if (parts.size() == 1 && method == "POST") {
      const json j = parse_body(body);
      if (!j.contains("circuit") || !j["circuit"].is_string()) throw bad_request("missing circuit text");
      return {200, session_json(service.open(parse_payload(j["circuit"].get<std::string>()))).dump()};
    }
    if (parts.size() == 2 && method == "GET") return {200, session_json(service.get(parts[1])).dump()};
    if (parts.size() == 3) {
      const std::string& id = parts[1];
      const std::string& verb = parts[2];
      if (verb == "moves" && method == "GET") {
        json list = json::array();
        for (const auto& m : service.enumerate_moves(id))
          list.push_back({{"rule", rule_name(m.step.rule)},
                          {"anchor", m.step.anchor},
                          {"params", params_json(m.step.params)},
                          {"delta", delta_json(m.delta)}});
        return {200, list.dump()};
      }
      if (verb == "apply" && method == "POST") {
        const int qubits = service.get(id).current().qubits;
        return {200, session_json(service.apply_move(id, action_from_json(parse_body(body), qubits))).dump()};
      }
      if (verb == "undo" && method == "POST") return {200, session_json(service.undo(id)).dump()};
      if (verb == "redo" && method == "POST") return {200, session_json(service.redo(id)).dump()};
    }
    throw SessionError(404, "not_found", "no route " + method + " " + path);
  } catch (const SessionError& e) {
    return {e.status(), error_json(e).dump()};
  } catch (const json::exception& e) {
    return {400, error_json(bad_request(e.what())).dump()};
  }
}

}  // namespace pauliforge
