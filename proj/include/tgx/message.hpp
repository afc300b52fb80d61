#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tgx/family.hpp"
#include "tgx/scenario.hpp"

namespace tgx {

using Counter = std::int64_t;

struct Alive {
  friend bool operator==(const Alive&, const Alive&) = default;
};

/// ACC{q,h} of the general algorithm: `accuser` blames every member lacking
/// it (link_from empty) or containing the link (link_from, accuser).
struct LinkAccusation {
  std::optional<ProcessId> link_from;
  ProcessId accuser = 0;
  friend bool operator==(const LinkAccusation&, const LinkAccusation&) = default;
};

/// A member together with the counters its root attached when proposing it.
struct Candidate {
  MemberIndex member = 0;
  Counter acc = 0;
  Counter prop = 0;
  Tick timeout = 0;
  friend bool operator==(const Candidate&, const Candidate&) = default;
};

/// NEW: proposal of a candidate, point-to-point and relayed along its edges.
struct Proposal {
  Candidate cand;
  friend bool operator==(const Proposal&, const Proposal&) = default;
};

/// ACC of the efficient algorithm: blame of one specific candidate epoch.
struct CandidateAccusation {
  Candidate cand;
  friend bool operator==(const CandidateAccusation&, const CandidateAccusation&) = default;
};

using Message = std::variant<Alive, LinkAccusation, Proposal, CandidateAccusation>;

/// `ALIVE`, `ACC{q:1,h:2}`, `ACC{q:⊥,h:0}`, `NEW{x:<graph>,a:0,pr:0,d:4}`,
/// `ACC{x:<graph>,a:0,pr:0,d:4}`.
std::string encode(const Message& m, const GraphFamily& family);

struct SendTo {
  ProcessId to = 0;
  Message msg;
};
struct Broadcast {
  Message msg;
};
/// (Re)arms the countdown for `peer`; it expires `after` ticks from now.
struct ArmTimer {
  ProcessId peer = 0;
  Tick after = 0;
};

using Action = std::variant<SendTo, Broadcast, ArmTimer>;
using Actions = std::vector<Action>;

struct CounterSample {
  MemberIndex member = 0;
  Counter acc = 0;
  Counter prop = 0;
};

struct ProtocolEnv {
  ProcessId self = 0;
  std::size_t n = 0;
  std::shared_ptr<const GraphFamily> family;
  Tick k_period = kDefaultPeriod;
};

/// One process's automaton as driven by the simulator.  Each handler runs
/// atomically and returns the actions to perform.
class Protocol {
 public:
  virtual ~Protocol() = default;

  virtual Actions start() = 0;
  virtual Actions periodic() = 0;
  virtual Actions receive(ProcessId from, const Message& msg) = 0;
  virtual Actions deliver(ProcessId origin, const Message& msg) = 0;
  virtual Actions expire(ProcessId peer) = 0;

  virtual std::optional<MemberIndex> output() const = 0;
  /// Counters the process owns, in a fixed order across calls.
  virtual void counters(std::vector<CounterSample>& out) const = 0;
};

using ProtocolFactory = std::function<std::unique_ptr<Protocol>(const ProtocolEnv&)>;

}  // namespace tgx
