#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tgx/graph.hpp"
#include "tgx/scenario.hpp"

namespace tgx {

/// Input that cannot be checked: malformed trace, or a trace that was not
/// produced from the given scenario.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class EventKind { Send, Deliver, RbDeliver, TimerExpire, Crash, OutputChange };

std::string_view to_string(EventKind kind);

struct TraceEvent {
  Tick tick = 0;
  ProcessId process = 0;
  EventKind kind = EventKind::Send;
  /// Encoded message for SEND / DELIVER / RB_DELIVER, empty otherwise.
  std::string message;
  /// SEND: destination; DELIVER: sender; RB_DELIVER: broadcaster;
  /// TIMER_EXPIRE: monitored peer.
  std::optional<ProcessId> peer;
  /// Per-link sequence number (point-to-point) or broadcast id.
  std::optional<std::uint64_t> seq;
  /// Send tick, on deliveries.
  std::optional<Tick> sent;
  /// The process's output after the event.
  std::optional<TimelinessGraph> output;

  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

struct TraceHeader {
  std::string algo;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  Tick horizon = 0;
  std::uint64_t scenario_digest = 0;

  friend bool operator==(const TraceHeader&, const TraceHeader&) = default;
};

/// Counter snapshots taken by the simulator after every process step.
struct CounterAudit {
  std::uint64_t samples = 0;
  std::uint64_t regressions = 0;
  std::string first_regression;

  friend bool operator==(const CounterAudit&, const CounterAudit&) = default;
};

struct Trace {
  TraceHeader header;
  std::vector<TraceEvent> events;
  /// Absent when the AUDIT line is missing (truncated file).
  std::optional<CounterAudit> audit;

  friend bool operator==(const Trace&, const Trace&) = default;
};

/// One JSON object per line with fields tick, process, kind, detail, output.
/// The first line (kind META) carries the header; the last (kind AUDIT) the
/// counter audit.
void write_trace(std::ostream& out, const Trace& trace);
std::string serialize_trace(const Trace& trace);
Trace read_trace(std::istream& in);
Trace load_trace(const std::string& path);

}  // namespace tgx
