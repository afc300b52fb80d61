#include "tgx/basic.hpp"

#include <algorithm>
#include <utility>

namespace tgx {

BasicState basic_init(ProcessId self, std::size_t n, std::shared_ptr<const GraphFamily> family,
                      bool exact_mode) {
  if (!family || family->size() == 0) throw ConfigError("family: must have at least one member");
  BasicState s;
  s.self = self;
  s.n = n;
  s.acc.assign(family->size(), 0);
  s.delta_est.assign(n, 1);
  s.family = std::move(family);
  s.exact_mode = exact_mode;
  s.suspected.assign(n, false);
  basic_select(s);
  return s;
}

void basic_select(BasicState& s) {
  const auto& members = s.family->members;
  std::optional<MemberIndex> best;
  for (MemberIndex x = 0; x < members.size(); ++x) {
    if (s.exact_mode) {
      const auto& nodes = members[x].nodes();
      bool matches = true;
      for (ProcessId q = 0; q < s.n && matches; ++q) {
        const bool trusted = q == s.self || !s.suspected[q];
        matches = trusted == std::binary_search(nodes.begin(), nodes.end(), q);
      }
      if (!matches) continue;
    }
    if (!best || s.acc[x] < s.acc[*best]) best = x;
  }
  if (best || !s.exact_mode) s.output = best;
}

Actions basic_start(const BasicState& s) {
  Actions out;
  for (ProcessId q = 0; q < s.n; ++q) {
    if (q != s.self) out.push_back(ArmTimer{q, s.delta_est[q]});
  }
  return out;
}

Actions basic_periodic(const BasicState& s) {
  Actions out;
  for (ProcessId q = 0; q < s.n; ++q) {
    if (q != s.self) out.push_back(SendTo{q, Alive{}});
  }
  out.push_back(Broadcast{LinkAccusation{std::nullopt, s.self}});
  return out;
}

Actions basic_on_alive(BasicState& s, ProcessId q) {
  if (s.exact_mode && s.suspected[q]) {
    s.suspected[q] = false;
    basic_select(s);
  }
  return {ArmTimer{q, s.delta_est[q]}};
}

Actions basic_on_expire(BasicState& s, ProcessId q) {
  Actions out{Broadcast{LinkAccusation{q, s.self}}};
  ++s.delta_est[q];
  out.push_back(ArmTimer{q, s.delta_est[q]});
  if (s.exact_mode && !s.suspected[q]) {
    s.suspected[q] = true;
    basic_select(s);
  }
  return out;
}

void basic_on_deliver_acc(BasicState& s, const LinkAccusation& a) {
  const auto& members = s.family->members;
  for (MemberIndex x = 0; x < members.size(); ++x) {
    const bool hit = a.link_from ? members[x].has_edge(*a.link_from, a.accuser) : !members[x].has_node(a.accuser);
    if (hit) ++s.acc[x];
  }
  basic_select(s);
}

BasicProtocol::BasicProtocol(const ProtocolEnv& env, bool exact_mode)
    : state_(basic_init(env.self, env.n, env.family, exact_mode)) {}

Actions BasicProtocol::start() { return basic_start(state_); }

Actions BasicProtocol::periodic() { return basic_periodic(state_); }

Actions BasicProtocol::receive(ProcessId from, const Message& msg) {
  if (std::holds_alternative<Alive>(msg)) return basic_on_alive(state_, from);
  return {};
}

Actions BasicProtocol::deliver(ProcessId, const Message& msg) {
  if (const auto* a = std::get_if<LinkAccusation>(&msg)) basic_on_deliver_acc(state_, *a);
  return {};
}

Actions BasicProtocol::expire(ProcessId peer) { return basic_on_expire(state_, peer); }

void BasicProtocol::counters(std::vector<CounterSample>& out) const {
  for (MemberIndex x = 0; x < state_.acc.size(); ++x) out.push_back(CounterSample{x, state_.acc[x], 0});
}

ProtocolFactory basic_factory(bool exact_mode) {
  return [exact_mode](const ProtocolEnv& env) -> std::unique_ptr<Protocol> {
    return std::make_unique<BasicProtocol>(env, exact_mode);
  };
}

}  // namespace tgx
