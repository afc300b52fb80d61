#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tgx/message.hpp"
#include "tgx/scenario.hpp"
#include "tgx/trace.hpp"

namespace tgx {

/// A point-to-point message in flight.
struct Envelope {
  ProcessId from = 0;
  ProcessId to = 0;
  Message msg;
  Tick send_tick = 0;
  Tick deliver_tick = 0;
  std::uint64_t seq = 0;

  friend bool operator==(const Envelope&, const Envelope&) = default;
};

/// One receiver's copy of a reliable broadcast.
struct BroadcastCopy {
  ProcessId origin = 0;
  ProcessId to = 0;
  Message msg;
  Tick send_tick = 0;
  Tick deliver_tick = 0;
  std::uint64_t id = 0;

  friend bool operator==(const BroadcastCopy&, const BroadcastCopy&) = default;
};

/// Message number j² (j ≥ 1, counting from 1) on a non-timely link is held
/// back at least 4·δ + kSpikeStep·j ticks.  The spikes outgrow any fixed
/// bound while leaving the link unblocked most of the time.
inline constexpr Tick kSpikeStep = 2;

/// Lock-step simulation of one scenario.  Tick 0 initializes every process;
/// each advance() moves to the next tick, where every live process takes one
/// step: due point-to-point deliveries (by sender, then sequence number), due
/// broadcast deliveries, due timer expiries (by peer), then the periodic task
/// on ticks that are multiples of K.  Processes step in ascending id order.
class Simulation {
 public:
  /// Validates the scenario (ConfigError) and runs initialization at tick 0.
  Simulation(Scenario scenario, const ProtocolFactory& factory, std::string algo = "custom");

  Simulation(const Simulation&) = delete;
  Simulation& operator=(const Simulation&) = delete;

  void advance();
  /// Advances until tick `until`; throws std::invalid_argument past the
  /// scenario horizon.
  const Trace& run(Tick until);

  Tick now() const { return now_; }
  bool is_live(ProcessId p) const { return live_[p]; }
  const Scenario& scenario() const { return scenario_; }
  const Trace& trace() const { return trace_; }
  Protocol& protocol(ProcessId p) { return *procs_[p]; }
  const Protocol& protocol(ProcessId p) const { return *procs_[p]; }

  std::vector<Envelope> pending_messages() const;
  std::vector<BroadcastCopy> pending_broadcasts() const;
  std::optional<Tick> timer_expiry(ProcessId p, ProcessId peer) const { return timers_[p][peer]; }
  std::uint64_t ignored_sends() const { return ignored_sends_; }

  void send(ProcessId from, ProcessId to, Message msg);
  void set_timer(ProcessId p, ProcessId peer, Tick after);
  void rbcast(ProcessId from, Message msg);

 private:
  Tick uniform(Tick lo, Tick hi);
  Tick link_delay(ProcessId from, ProcessId to, Tick send_tick, std::uint64_t seq);
  Tick apply_directives(ProcessId from, ProcessId to, Tick send_tick, Tick delay) const;
  Tick cap_to_horizon(ProcessId to, Tick send_tick, Tick deliver) const;

  void step(ProcessId p, std::vector<Envelope>& inbox, std::vector<BroadcastCopy>& rb_inbox);
  void apply(ProcessId p, Actions actions);
  void note_output(ProcessId p);
  void audit(ProcessId p);
  void record(ProcessId p, EventKind kind, std::string message = {}, std::optional<ProcessId> peer = {},
              std::optional<std::uint64_t> seq = {}, std::optional<Tick> sent = {});

  Scenario scenario_;
  std::mt19937_64 rng_;
  Tick now_ = 0;
  std::vector<std::unique_ptr<Protocol>> procs_;
  std::vector<bool> live_;
  std::vector<std::optional<MemberIndex>> outputs_;
  std::vector<std::vector<std::optional<Tick>>> timers_;
  std::vector<std::vector<std::uint64_t>> next_seq_;
  std::vector<std::vector<Tick>> last_delivery_;
  std::map<Tick, std::vector<Envelope>> inbox_;
  std::map<Tick, std::vector<BroadcastCopy>> rb_inbox_;
  std::uint64_t next_broadcast_ = 0;
  std::uint64_t ignored_sends_ = 0;
  std::vector<std::vector<CounterSample>> last_counters_;
  std::vector<CounterSample> scratch_;
  Trace trace_;
};

}  // namespace tgx
