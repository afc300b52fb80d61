#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "tgx/family.hpp"
#include "tgx/message.hpp"

namespace tgx {

/// Per-process state of the general extraction algorithm.
struct BasicState {
  ProcessId self = 0;
  std::size_t n = 0;
  std::shared_ptr<const GraphFamily> family;
  /// Accusation counter per member, indexed like family->members.
  std::vector<Counter> acc;
  /// Adaptive timeout per peer; starts at 1 and only grows.
  std::vector<Tick> delta_est;
  std::optional<MemberIndex> output;

  /// Strawman used to replay the non-exactness construction: only members
  /// whose node set equals the currently trusted set are eligible, and the
  /// previous output is kept when none is.
  bool exact_mode = false;
  std::vector<bool> suspected;
};

/// Throws ConfigError on an empty family.
BasicState basic_init(ProcessId self, std::size_t n, std::shared_ptr<const GraphFamily> family,
                      bool exact_mode = false);

/// Arms every peer timer to 1.
Actions basic_start(const BasicState& s);
/// ALIVE to every peer, then a broadcast accusation of members without self.
Actions basic_periodic(const BasicState& s);
Actions basic_on_alive(BasicState& s, ProcessId q);
/// Broadcasts ACC(q, self), increments the peer timeout and re-arms.
Actions basic_on_expire(BasicState& s, ProcessId q);
void basic_on_deliver_acc(BasicState& s, const LinkAccusation& acc);
/// Reselects the output as the least (acc[x], x).
void basic_select(BasicState& s);

class BasicProtocol final : public Protocol {
 public:
  explicit BasicProtocol(const ProtocolEnv& env, bool exact_mode = false);

  Actions start() override;
  Actions periodic() override;
  Actions receive(ProcessId from, const Message& msg) override;
  Actions deliver(ProcessId origin, const Message& msg) override;
  Actions expire(ProcessId peer) override;

  std::optional<MemberIndex> output() const override { return state_.output; }
  void counters(std::vector<CounterSample>& out) const override;

  const BasicState& state() const { return state_; }

 private:
  BasicState state_;
};

ProtocolFactory basic_factory(bool exact_mode = false);

}  // namespace tgx
