#include "tgx/efficient.hpp"

#include <algorithm>
#include <set>
#include <tuple>

namespace tgx {

namespace {

using Rank = std::pair<Counter, MemberIndex>;

// Applies the timeout of a candidate to the links entering self and forwards
// the proposal to successors other than the root.
void join_candidate(EffState& s, const Candidate& c, Actions& out) {
  const auto& g = (*s.family)[c.member];
  for (ProcessId h = 0; h < s.n; ++h) {
    if (h == s.self) continue;
    if (g.has_edge(h, s.self)) {
      s.delta_est[h] = std::max(s.delta_est[h], c.timeout);
      out.push_back(ArmTimer{h, s.delta_est[h]});
    }
    if (g.has_edge(s.self, h) && h != s.root[c.member]) out.push_back(SendTo{h, Proposal{c}});
  }
}

}  // namespace

Candidate EffState::me_tuple() const { return Candidate{*me, acc[*me], prop[*me], dmember[*me]}; }

std::vector<Candidate> EffState::candidates() const {
  std::vector<Candidate> out;
  for (const auto& [x, c] : other_cand) out.push_back(c);
  if (local && me) out.push_back(me_tuple());
  return out;
}

EffState eff_init(ProcessId self, std::size_t n, std::shared_ptr<const GraphFamily> family, Actions& out) {
  if (!family || family->size() == 0) throw ConfigError("family: must have at least one member");
  EffState s;
  s.self = self;
  s.n = n;
  const std::size_t m = family->size();
  s.root.resize(m);
  for (MemberIndex x = 0; x < m; ++x) {
    auto r = root_of((*family)[x]);
    if (!r) throw ConfigError("family: member " + (*family)[x].to_string() + " has no root");
    s.root[x] = *r;
    if (*r == self) s.rooted.push_back(x);
  }
  s.acc.assign(m, 0);
  s.prop.assign(m, 0);
  s.dmember.assign(m, static_cast<Tick>(n));
  s.heard.assign(m, Epoch{-1, -1});
  s.delta_est.assign(n, 1);
  s.family = std::move(family);
  if (!s.rooted.empty()) s.me = s.rooted.front();
  eff_update(s, out);
  return s;
}

void eff_update(EffState& s, Actions& out) {
  std::optional<Rank> best_other;
  for (const auto& [x, c] : s.other_cand) {
    const Rank r{c.acc, x};
    if (!best_other || r < *best_other) best_other = r;
  }
  // An absent minimum compares as (∞,∞).
  auto beats_me = [&](const Rank& mine) { return best_other && *best_other < mine; };
  auto me_beats = [&](const Rank& mine) { return !best_other || mine < *best_other; };

  if (s.me && s.local && beats_me({s.acc[*s.me], *s.me})) {
    out.push_back(Broadcast{CandidateAccusation{s.me_tuple()}});
    ++s.prop[*s.me];
    s.local = false;
  }

  if (!s.rooted.empty()) {
    MemberIndex best = s.rooted.front();
    for (MemberIndex x : s.rooted) {
      if (Rank{s.acc[x], x} < Rank{s.acc[best], best}) best = x;
    }
    s.me = best;
  }

  if (s.me && !s.local && me_beats({s.acc[*s.me], *s.me})) {
    s.local = true;
    const Candidate c = s.me_tuple();
    const auto& g = (*s.family)[c.member];
    // Members are also told directly: a crashed member would otherwise cut
    // the relay and leave its successors unaware of the candidate.
    for (ProcessId q = 0; q < s.n; ++q) {
      if (q != s.self && !g.has_edge(s.self, q)) out.push_back(SendTo{q, Proposal{c}});
    }
    join_candidate(s, c, out);
  }

  std::optional<Rank> best;
  for (const auto& c : s.candidates()) {
    const Rank r{c.acc, c.member};
    if (!best || r < *best) best = r;
  }
  s.output = best ? std::optional<MemberIndex>(best->second) : std::nullopt;
}

Actions eff_periodic(const EffState& s) {
  std::set<ProcessId> targets;
  for (const auto& c : s.candidates()) {
    for (ProcessId q : (*s.family)[c.member].successors(s.self)) targets.insert(q);
  }
  Actions out;
  for (ProcessId q : targets) out.push_back(SendTo{q, Alive{}});
  return out;
}

Actions eff_on_alive(EffState& s, ProcessId q) { return {ArmTimer{q, s.delta_est[q]}}; }

Actions eff_on_expire(EffState& s, ProcessId q) {
  Actions out;
  for (const auto& [x, c] : s.other_cand) {
    if ((*s.family)[x].has_edge(q, s.self)) out.push_back(Broadcast{CandidateAccusation{c}});
  }
  if (s.me && (*s.family)[*s.me].has_edge(q, s.self)) out.push_back(Broadcast{CandidateAccusation{s.me_tuple()}});
  return out;
}

Actions eff_on_new(EffState& s, const Candidate& c) {
  Actions out;
  const MemberIndex x = c.member;
  if (s.root[x] == s.self) return out;
  if (!(*s.family)[x].has_node(s.self)) {
    out.push_back(Broadcast{CandidateAccusation{c}});
    return out;
  }
  const Epoch epoch{c.acc, c.prop};
  bool fresh = false;
  auto it = s.other_cand.find(x);
  if (it == s.other_cand.end()) {
    fresh = s.heard[x] < epoch;
  } else if (Epoch{it->second.acc, it->second.prop} < epoch) {
    s.other_cand.erase(it);
    fresh = true;
  }
  if (!fresh) return out;
  s.other_cand[x] = c;
  eff_update(s, out);
  s.heard[x] = epoch;
  join_candidate(s, c, out);
  return out;
}

Actions eff_on_deliver_acc(EffState& s, const Candidate& c) {
  Actions out;
  const MemberIndex x = c.member;
  if (s.root[x] == s.self) {
    if (s.me == x && c.acc == s.acc[x] && c.prop == s.prop[x]) {
      ++s.acc[x];
      ++s.dmember[x];
      s.local = false;
    }
  } else {
    auto it = s.other_cand.find(x);
    if (it != s.other_cand.end() && it->second == c) s.other_cand.erase(it);
    s.heard[x] = std::max(s.heard[x], Epoch{c.acc, c.prop});
  }
  eff_update(s, out);
  return out;
}

EfficientProtocol::EfficientProtocol(const ProtocolEnv& env) : state_(eff_init(env.self, env.n, env.family, initial_)) {}

Actions EfficientProtocol::start() { return std::exchange(initial_, {}); }

Actions EfficientProtocol::periodic() { return eff_periodic(state_); }

Actions EfficientProtocol::receive(ProcessId from, const Message& msg) {
  if (std::holds_alternative<Alive>(msg)) return eff_on_alive(state_, from);
  if (const auto* p = std::get_if<Proposal>(&msg)) return eff_on_new(state_, p->cand);
  return {};
}

Actions EfficientProtocol::deliver(ProcessId, const Message& msg) {
  if (const auto* a = std::get_if<CandidateAccusation>(&msg)) return eff_on_deliver_acc(state_, a->cand);
  return {};
}

Actions EfficientProtocol::expire(ProcessId peer) { return eff_on_expire(state_, peer); }

void EfficientProtocol::counters(std::vector<CounterSample>& out) const {
  for (MemberIndex x : state_.rooted) out.push_back(CounterSample{x, state_.acc[x], state_.prop[x]});
}

ProtocolFactory efficient_factory() {
  return [](const ProtocolEnv& env) -> std::unique_ptr<Protocol> { return std::make_unique<EfficientProtocol>(env); };
}

}  // namespace tgx
