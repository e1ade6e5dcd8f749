#pragma once

#include <cstddef>
#include <list>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "pauliforge/circuit.hpp"
#include "pauliforge/circuit_text.hpp"
#include "pauliforge/mapping_passes.hpp"
#include "pauliforge/rewrite_rules.hpp"

namespace pauliforge {

/// Error surfaced to API clients. `code` is a short machine-readable tag.
class SessionError : public std::runtime_error {
 public:
  SessionError(int status, std::string code, const std::string& message, std::optional<SourceSpan> span = {})
      : std::runtime_error(message), status_(status), code_(std::move(code)), span_(span) {}

  int status() const { return status_; }
  const std::string& code() const { return code_; }
  const std::optional<SourceSpan>& span() const { return span_; }

 private:
  int status_;
  std::string code_;
  std::optional<SourceSpan> span_;
};

struct StatsDelta {
  int depth = 0;
  int t_depth = 0;
  int gate_count = 0;
  int t_count = 0;

  bool operator==(const StatsDelta&) const = default;
};

StatsDelta operator-(const CircuitStats& after, const CircuitStats& before);

struct MoveOption {
  RewriteStep step;
  StatsDelta delta;
};

/// The parameter variants offered for a rule when moves are enumerated.
std::vector<RuleParams> canonical_params(RuleId rule);

struct Session {
  struct Entry {
    std::optional<ScriptAction> action;  // empty for the initial circuit
    Circuit circuit;
    CircuitStats stats;
  };

  std::string id;
  std::vector<Entry> history;  // history[0] is the initial circuit
  std::size_t cursor = 0;

  const Circuit& initial() const { return history.front().circuit; }
  const Circuit& current() const { return history[cursor].circuit; }
  const CircuitStats& current_stats() const { return history[cursor].stats; }
};

/// In-memory sessions with least-recently-used eviction. All calls are serialized.
class SessionService {
 public:
  explicit SessionService(std::size_t capacity = 64);

  /// Throws SessionError 400 for invalid circuits or more than kMaxDenseQubits lines.
  Session open(const Circuit& c);
  Session get(const std::string& id);

  std::vector<MoveOption> enumerate_moves(const std::string& id);

  /// Rewrite steps and the script pseudo-steps are both accepted. Drops any redo tail.
  /// Throws SessionError 409 when the action does not apply and 500 if the result is
  /// not equivalent to the initial circuit.
  Session apply_move(const std::string& id, const ScriptAction& action);

  /// Throws SessionError 409 when there is nothing to undo or redo.
  Session undo(const std::string& id);
  Session redo(const std::string& id);

  std::size_t size() const;
  std::size_t capacity() const { return capacity_; }

 private:
  Session& locate(const std::string& id);  // caller holds the lock

  std::size_t capacity_;
  std::size_t next_id_ = 1;
  mutable std::mutex mutex_;
  std::list<Session> lru_;  // most recent first
  std::unordered_map<std::string, std::list<Session>::iterator> index_;
};

struct ApiResponse {
  int status = 200;
  std::string body;  // JSON
};

/// Transport-free HTTP JSON router for the session API and builtin listing.
ApiResponse route_request(SessionService& service, const std::string& method, const std::string& path,
                          const std::string& body);

}  // namespace pauliforge
