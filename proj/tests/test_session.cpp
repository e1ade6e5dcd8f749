#include <thread>

#include <gtest/gtest.h>
#include <json.hpp>

#include "http_server.hpp"
#include "pauliforge/builtins.hpp"
#include "pauliforge/session.hpp"
#include "test_util.hpp"

// after Eigen: resolv.h defines a _res macro that collides with Eigen parameter names
#include <httplib.h>

namespace pauliforge {
namespace {

using json = nlohmann::json;

RewriteStep step(RuleId rule, std::size_t anchor, RuleParams p = {}) { return {rule, anchor, p}; }

TEST(SessionService, OpenAndGet) {
  SessionService svc;
  const Session s = svc.open(builtin("barenco-toffoli"));
  EXPECT_EQ(s.history.size(), 1u);
  EXPECT_EQ(s.cursor, 0u);
  EXPECT_EQ(s.current_stats().gate_count, 5);
  EXPECT_EQ(svc.get(s.id).current(), s.current());
  EXPECT_EQ(svc.size(), 1u);
}

TEST(SessionService, DistinctIds) {
  SessionService svc;
  EXPECT_NE(svc.open(Circuit(1)).id, svc.open(Circuit(1)).id);
}

TEST(SessionService, RejectsInvalidAndLarge) {
  SessionService svc;
  try {
    svc.open(Circuit(2, {Gate(ops::X(), 1, {pos(1)})}));
    FAIL();
  } catch (const SessionError& e) {
    EXPECT_EQ(e.status(), 400);
    EXPECT_EQ(e.code(), "invalid_circuit");
  }
  try {
    svc.open(Circuit(kMaxDenseQubits + 1));
    FAIL();
  } catch (const SessionError& e) {
    EXPECT_EQ(e.code(), "too_large");
  }
}

TEST(SessionService, UnknownIdIs404) {
  SessionService svc;
  try {
    svc.get("nope");
    FAIL();
  } catch (const SessionError& e) {
    EXPECT_EQ(e.status(), 404);
  }
}

TEST(SessionService, ApplyUndoRedo) {
  SessionService svc;
  const Session s = svc.open(Circuit(2, {cx(0, 1), cx(0, 1), Gate(ops::T(), 0)}));
  const Session a = svc.apply_move(s.id, step(RuleId::CancelInvolution, 0));
  EXPECT_EQ(a.current(), Circuit(2, {Gate(ops::T(), 0)}));
  EXPECT_EQ(a.cursor, 1u);
  EXPECT_EQ(a.current_stats().gate_count, 1);

  const Session u = svc.undo(s.id);
  EXPECT_EQ(u.cursor, 0u);
  EXPECT_EQ(u.current(), s.current());
  const Session r = svc.redo(s.id);
  EXPECT_EQ(r.current(), a.current());
  EXPECT_THROW(svc.redo(s.id), SessionError);
}

TEST(SessionService, UndoAtStartIs409) {
  SessionService svc;
  const Session s = svc.open(Circuit(1));
  try {
    svc.undo(s.id);
    FAIL();
  } catch (const SessionError& e) {
    EXPECT_EQ(e.status(), 409);
    EXPECT_EQ(e.code(), "nothing_to_undo");
  }
}

TEST(SessionService, ApplyAfterUndoDropsRedoTail) {
  SessionService svc;
  const Session s = svc.open(Circuit(2, {cx(0, 1), cx(0, 1)}));
  svc.apply_move(s.id, step(RuleId::CancelInvolution, 0));
  svc.undo(s.id);
  const Session b = svc.apply_move(s.id, InsertIdentityPair{0, Gate(ops::H(), 1)});
  EXPECT_EQ(b.history.size(), 2u);
  EXPECT_EQ(b.current().size(), 4u);
  EXPECT_THROW(svc.redo(s.id), SessionError);
}

TEST(SessionService, InapplicableIs409AndLeavesState) {
  SessionService svc;
  const Session s = svc.open(Circuit(3, {cx(0, 2), cx(1, 2)}));
  try {
    svc.apply_move(s.id, step(RuleId::MergeSameControls, 0));
    FAIL();
  } catch (const SessionError& e) {
    EXPECT_EQ(e.status(), 409);
    EXPECT_EQ(e.code(), "inapplicable");
  }
  EXPECT_EQ(svc.get(s.id).history.size(), 1u);
}

TEST(SessionService, LeastRecentlyUsedEviction) {
  SessionService svc(2);
  const auto a = svc.open(Circuit(1)).id;
  const auto b = svc.open(Circuit(1)).id;
  svc.get(a);
  const auto c = svc.open(Circuit(1)).id;
  EXPECT_EQ(svc.size(), 2u);
  EXPECT_NO_THROW(svc.get(a));
  EXPECT_NO_THROW(svc.get(c));
  EXPECT_THROW(svc.get(b), SessionError);
}

TEST(SessionService, EnumeratedMovesApplyAndStayEquivalent) {
  SessionService svc;
  const Session s = svc.open(builtin("peres-pair-adder"));
  const auto moves = svc.enumerate_moves(s.id);
  ASSERT_FALSE(moves.empty());
  for (const auto& m : moves) {
    const Session after = svc.apply_move(s.id, m.step);
    EXPECT_EQ(after.current_stats() - s.current_stats(), m.delta) << describe(m.step);
    EXPECT_TRUE(testing::Equivalent(after.current(), s.initial()));
    svc.undo(s.id);
  }
}

TEST(SessionService, EnumeratedMovesOnToffoliIncludeExpansion) {
  SessionService svc;
  const Session s = svc.open(testing::toffoli());
  const auto moves = svc.enumerate_moves(s.id);
  EXPECT_TRUE(std::any_of(moves.begin(), moves.end(),
                          [](const MoveOption& m) { return m.step.rule == RuleId::Thm2BarencoExtended; }));
}

TEST(SessionService, AmyDerivationReplays) {
  const auto script = derive_amy_toffoli();
  SessionService svc;
  const Session s = svc.open(script.initial);
  Session last = s;
  for (const auto& st : script.steps) last = svc.apply_move(s.id, st.action);
  EXPECT_EQ(print_circuit(last.current()), print_circuit(builtin("amy-toffoli")));
  EXPECT_EQ(last.current_stats().t_depth, 3);
  EXPECT_EQ(last.history.size(), script.steps.size() + 1);
}

TEST(StatsDelta, Difference) {
  CircuitStats a, b;
  a.depth = 5;
  a.t_count = 3;
  b.depth = 2;
  b.gate_count = 4;
  EXPECT_EQ(a - b, (StatsDelta{3, 0, -4, 3}));
}

TEST(CanonicalParams, NonEmptyForEveryRule) {
  for (RuleId id : all_rules()) EXPECT_FALSE(canonical_params(id).empty()) << rule_name(id);
}

// --- JSON routing without a socket

json call(SessionService& svc, const std::string& method, const std::string& path, const json& body, int expect) {
  const ApiResponse r = route_request(svc, method, path, body.is_null() ? "" : body.dump());
  EXPECT_EQ(r.status, expect) << method << " " << path << " " << r.body;
  return json::parse(r.body);
}

TEST(Routes, SessionLifecycle) {
  SessionService svc;
  const json opened = call(svc, "POST", "/sessions", {{"circuit", "qubits 2\ncx 0 1\ncx 0 1\n"}}, 200);
  const std::string id = opened["id"];
  EXPECT_EQ(opened["stats"]["gate_count"], 2);
  EXPECT_EQ(opened["stages"], json::array({1, 2}));
  EXPECT_TRUE(opened["equivalent"].get<bool>());

  const json moves = call(svc, "GET", "/sessions/" + id + "/moves", nullptr, 200);
  ASSERT_TRUE(moves.is_array());
  bool has_cancel = false;
  for (const auto& m : moves) has_cancel = has_cancel || m["rule"] == "CancelInvolution";
  EXPECT_TRUE(has_cancel);

  const json applied =
      call(svc, "POST", "/sessions/" + id + "/apply", {{"rule", "CancelInvolution"}, {"anchor", 0}}, 200);
  EXPECT_EQ(applied["circuit"], "qubits 2\n");
  EXPECT_EQ(applied["cursor"], 1);

  EXPECT_EQ(call(svc, "POST", "/sessions/" + id + "/undo", nullptr, 200)["cursor"], 0);
  EXPECT_EQ(call(svc, "POST", "/sessions/" + id + "/redo", nullptr, 200)["cursor"], 1);
  EXPECT_EQ(call(svc, "GET", "/sessions/" + id, nullptr, 200)["history_length"], 2);
}

TEST(Routes, ParseErrorCarriesSpan) {
  SessionService svc;
  const json err = call(svc, "POST", "/sessions", {{"circuit", "qubits 2\nfoo 1"}}, 400);
  EXPECT_EQ(err["code"], "parse_error");
  EXPECT_EQ(err["span"]["line"], 2);
}

TEST(Routes, Errors) {
  SessionService svc;
  EXPECT_EQ(call(svc, "GET", "/sessions/zzz", nullptr, 404)["code"], "not_found");
  EXPECT_EQ(call(svc, "GET", "/nothing", nullptr, 404)["code"], "not_found");
  EXPECT_EQ(route_request(svc, "POST", "/sessions", "{not json").status, 400);
  EXPECT_EQ(call(svc, "POST", "/sessions", json::object(), 400)["code"], "bad_request");

  const std::string id = call(svc, "POST", "/sessions", {{"circuit", "qubits 1\nt 0"}}, 200)["id"];
  EXPECT_EQ(call(svc, "POST", "/sessions/" + id + "/apply", {{"rule", "Bogus"}}, 400)["code"], "bad_request");
  EXPECT_EQ(call(svc, "POST", "/sessions/" + id + "/apply", {{"rule", "CancelInvolution"}, {"anchor", 0}}, 409)["code"],
            "inapplicable");
  EXPECT_EQ(call(svc, "POST", "/sessions/" + id + "/apply",
                 {{"rule", "MergeSameControls"}, {"anchor", 0}, {"params", {{"wat", true}}}}, 400)["code"],
            "bad_request");
  EXPECT_EQ(call(svc, "POST", "/sessions/" + id + "/undo", nullptr, 409)["code"], "nothing_to_undo");
}

TEST(Routes, PseudoSteps) {
  SessionService svc;
  const std::string swap = "cx 0 1\ncx 1 0\ncx 0 1\n";
  const std::string id = call(svc, "POST", "/sessions", {{"circuit", "qubits 2\n" + swap + "t 0\n" + swap}}, 200)["id"];
  const json rel = call(svc, "POST", "/sessions/" + id + "/apply",
                        {{"rule", "RelabelLines"}, {"anchor", 0}, {"params", {{"end", 7}}}}, 200);
  EXPECT_EQ(rel["circuit"], "qubits 2\nroot z 1/4 1\n");
  const json ins = call(svc, "POST", "/sessions/" + id + "/apply",
                        {{"rule", "InsertIdentityPair"}, {"anchor", 1}, {"params", {{"gate", "cx 0 1"}}}}, 200);
  EXPECT_EQ(ins["stats"]["gate_count"], 3);
  call(svc, "POST", "/sessions/" + id + "/apply",
       {{"rule", "InsertIdentityPair"}, {"anchor", 0}, {"params", {{"gate", "t 0"}}}}, 409);
}

TEST(Routes, Builtins) {
  SessionService svc;
  const json all = call(svc, "GET", "/builtins", nullptr, 200);
  EXPECT_TRUE(all.contains("amy-toffoli"));
  const json one = call(svc, "GET", "/builtins/amy-toffoli", nullptr, 200);
  EXPECT_EQ(parse_circuit(one["circuit"].get<std::string>()), builtin("amy-toffoli"));
  call(svc, "GET", "/builtins/none", nullptr, 404);
}

// --- over a real socket

TEST(Http, ServesSessionApi) {
  SessionService svc;
  httplib::Server server;
  install_routes(server, svc);
  const int port = server.bind_to_any_port("127.0.0.1");
  ASSERT_GT(port, 0);
  std::thread t([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  httplib::Client client("127.0.0.1", port);
  auto opened = client.Post("/sessions", json{{"circuit", builtin_text("barenco-toffoli")}}.dump(), "application/json");
  ASSERT_TRUE(opened);
  EXPECT_EQ(opened->status, 200);
  const std::string id = json::parse(opened->body)["id"];

  auto moves = client.Get("/sessions/" + id + "/moves");
  ASSERT_TRUE(moves);
  EXPECT_EQ(moves->status, 200);
  EXPECT_TRUE(json::parse(moves->body).is_array());

  auto missing = client.Get("/sessions/none");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);

  auto builtins = client.Get("/builtins");
  ASSERT_TRUE(builtins);
  EXPECT_EQ(builtins->get_header_value("Content-Type"), "application/json");

  server.stop();
  t.join();
}

}  // namespace
}  // namespace pauliforge
