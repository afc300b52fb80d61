#pragma once

#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "tgx/family.hpp"
#include "tgx/message.hpp"

namespace tgx {

using Epoch = std::pair<Counter, Counter>;

/// Per-process state of the communication-efficient algorithm.  Counter
/// vectors are indexed by member; acc/prop/dmember are meaningful only for
/// members rooted at self, heard only for the others.
struct EffState {
  ProcessId self = 0;
  std::size_t n = 0;
  std::shared_ptr<const GraphFamily> family;
  std::vector<ProcessId> root;
  std::vector<MemberIndex> rooted;

  std::vector<Counter> acc;
  std::vector<Counter> prop;
  std::vector<Tick> dmember;
  std::vector<Epoch> heard;

  /// Candidates proposed by other roots, one tuple per member.
  std::map<MemberIndex, Candidate> other_cand;
  bool local = false;
  std::optional<MemberIndex> me;
  std::vector<Tick> delta_est;
  std::optional<MemberIndex> output;

  /// Tuple for the own candidate with its current counters.
  Candidate me_tuple() const;
  /// other_cand plus the own candidate while it is proposed.
  std::vector<Candidate> candidates() const;
};

/// Throws ConfigError if some member has no root.  Runs the first update, so
/// the returned actions hold the initial proposal if any.
EffState eff_init(ProcessId self, std::size_t n, std::shared_ptr<const GraphFamily> family, Actions& out);

void eff_update(EffState& s, Actions& out);
Actions eff_periodic(const EffState& s);
Actions eff_on_alive(EffState& s, ProcessId q);
Actions eff_on_expire(EffState& s, ProcessId q);
Actions eff_on_new(EffState& s, const Candidate& c);
Actions eff_on_deliver_acc(EffState& s, const Candidate& c);

class EfficientProtocol final : public Protocol {
 public:
  explicit EfficientProtocol(const ProtocolEnv& env);

  Actions start() override;
  Actions periodic() override;
  Actions receive(ProcessId from, const Message& msg) override;
  Actions deliver(ProcessId origin, const Message& msg) override;
  Actions expire(ProcessId peer) override;

  std::optional<MemberIndex> output() const override { return state_.output; }
  void counters(std::vector<CounterSample>& out) const override;

  const EffState& state() const { return state_; }

 private:
  Actions initial_;
  EffState state_;
};

ProtocolFactory efficient_factory();

}  // namespace tgx
