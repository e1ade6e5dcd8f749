#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

#include "pauliforge/builtins.hpp"
#include "pauliforge/circuit_text.hpp"
#include "pauliforge/semantics.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(PAULI_FORGE_BIN) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("pauliforge-cli-" + std::to_string(::getpid()) + "-" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(Cli, StatsAmy) {
  const auto r = run("stats " + file("amy.txt", pauliforge::builtin_text("amy-toffoli")));
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("t_depth=3"), std::string::npos);
}

TEST_F(Cli, StatsJson) {
  const auto r = run("stats --json " + file("b.txt", pauliforge::builtin_text("barenco-toffoli")));
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["gate_count"], 5);
  EXPECT_EQ(j["qubits"], 3);
}

TEST_F(Cli, VerifyExitCodes) {
  const auto tof = file("tof.txt", "qubits 3\nx 2 ctrl +0 +1\n");
  const auto cnot = file("cnot.txt", "qubits 3\ncx 0 2\n");
  const auto amy = file("amy.txt", pauliforge::builtin_text("amy-toffoli"));
  EXPECT_EQ(run("verify " + tof + " " + amy).code, 0);
  EXPECT_EQ(run("verify " + tof + " " + cnot).code, 1);
}

TEST_F(Cli, ParseErrorIsUsage) {
  EXPECT_EQ(run("stats " + file("bad.txt", "qubits 2\nfoo 1\n")).code, 2);
  EXPECT_EQ(run("stats " + path("missing.txt")).code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
}

TEST_F(Cli, MapWritesEquivalentCircuit) {
  const auto in = file("fa.txt", pauliforge::builtin_text("full-adder-final"));
  const auto out = path("w.txt");
  ASSERT_EQ(run("map " + in + " --pass translate:x -o " + out).code, 0);
  std::ifstream f(out);
  const std::string text((std::istreambuf_iterator<char>(f)), {});
  EXPECT_TRUE(pauliforge::equivalent(pauliforge::parse_circuit(text), pauliforge::builtin("full-adder-final")).equivalent);
  EXPECT_EQ(run("map " + in + " --pass nonsense").code, 2);
}

TEST_F(Cli, DeriveToffoliFamily) {
  EXPECT_EQ(run("derive toffoli --a 0 --b 1 --c 0").code, 0);
  EXPECT_EQ(run("derive toffoli --a 0 --b 0 --c 0").code, 0);
  // drawn circuit computes (not x1) x2 here, the table row says x1 (not x2)
  EXPECT_EQ(run("derive toffoli --a 0 --b 0 --c 1").code, 1);
  EXPECT_EQ(run("derive toffoli --a 0 --b 1 --c 5").code, 2);
}

TEST_F(Cli, DeriveAmy) {
  const auto r = run("derive amy-toffoli");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(pauliforge::parse_circuit(r.out), pauliforge::builtin("amy-toffoli"));
}

TEST_F(Cli, RulesCheckJson) {
  const auto r = run("rules check --rule CnotRuleD7 --trials 20 --json");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["ok"].get<bool>());
  EXPECT_EQ(j["rules"][0]["counterexamples"].size(), 0u);
  EXPECT_EQ(run("rules check --rule Nope").code, 2);
}

TEST_F(Cli, CliffordCommands) {
  EXPECT_EQ(run("clifford identities").code, 0);
  const auto r = run("clifford closure --set pauli-root --qubits 1 --a y --b z");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("order 24"), std::string::npos);
  EXPECT_EQ(run("clifford closure --set paper --qubits 1 --a x --b z").code, 0);
  EXPECT_EQ(run("clifford closure --set negator --qubits 1").code, 0);
  EXPECT_EQ(run("clifford closure --set paper --a x --b x").code, 2);
}

TEST_F(Cli, BuiltinListing) {
  const auto r = run("builtin --list");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("amy-toffoli"), std::string::npos);
  EXPECT_EQ(run("builtin no-such").code, 2);
}

}  // namespace
