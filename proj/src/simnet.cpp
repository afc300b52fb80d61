#include "tgx/simnet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tgx {

Simulation::Simulation(Scenario scenario, const ProtocolFactory& factory, std::string algo)
    : scenario_(std::move(scenario)), rng_(scenario_.seed) {
  scenario_.validate();
  const std::size_t n = scenario_.n;
  live_.assign(n, true);
  outputs_.assign(n, std::nullopt);
  timers_.assign(n, std::vector<std::optional<Tick>>(n));
  next_seq_.assign(n, std::vector<std::uint64_t>(n, 0));
  last_delivery_.assign(n, std::vector<Tick>(n, 0));
  last_counters_.resize(n);
  trace_.header = TraceHeader{std::move(algo), scenario_.seed, n, 0, scenario_digest(scenario_)};
  trace_.audit = CounterAudit{};

  for (ProcessId p = 0; p < n; ++p) {
    procs_.push_back(factory(ProtocolEnv{p, n, scenario_.family, scenario_.k_period}));
  }
  for (ProcessId p = 0; p < n; ++p) {
    Actions actions = procs_[p]->start();
    outputs_[p] = procs_[p]->output();
    record(p, EventKind::OutputChange);
    apply(p, std::move(actions));
    procs_[p]->counters(last_counters_[p]);
  }
}

Tick Simulation::uniform(Tick lo, Tick hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<Tick>(rng_() % span);
}

Tick Simulation::apply_directives(ProcessId from, ProcessId to, Tick send_tick, Tick delay) const {
  for (const auto& d : scenario_.adversary) {
    if (d.link == Edge{from, to} && send_tick >= d.window_start && send_tick <= d.window_end) {
      delay = std::max(delay, d.min_delay);
    }
  }
  return delay;
}

Tick Simulation::link_delay(ProcessId from, ProcessId to, Tick send_tick, std::uint64_t seq) {
  if (scenario_.is_timely(from, to)) return uniform(1, scenario_.delta);
  Tick delay = uniform(1, 4 * scenario_.delta);
  const auto j = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(seq + 1)));
  if (j * j == seq + 1) delay = std::max(delay, 4 * scenario_.delta + kSpikeStep * static_cast<Tick>(j));
  return apply_directives(from, to, send_tick, delay);
}

Tick Simulation::cap_to_horizon(ProcessId to, Tick send_tick, Tick deliver) const {
  if (!scenario_.is_correct(to)) return deliver;
  return std::min(deliver, std::max(send_tick + 1, scenario_.horizon));
}

void Simulation::send(ProcessId from, ProcessId to, Message msg) {
  if (!live_[from] || from == to || to >= scenario_.n) {
    ++ignored_sends_;
    return;
  }
  const std::uint64_t seq = next_seq_[from][to]++;
  Tick deliver = cap_to_horizon(to, now_, now_ + link_delay(from, to, now_, seq));
  deliver = std::max(deliver, last_delivery_[from][to]);
  last_delivery_[from][to] = deliver;
  record(from, EventKind::Send, encode(msg, *scenario_.family), to, seq);
  inbox_[deliver].push_back(Envelope{from, to, std::move(msg), now_, deliver, seq});
}

void Simulation::set_timer(ProcessId p, ProcessId peer, Tick after) {
  if (!live_[p]) return;
  timers_[p][peer] = now_ + std::max<Tick>(after, 1);
}

void Simulation::rbcast(ProcessId from, Message msg) {
  if (!live_[from]) {
    ++ignored_sends_;
    return;
  }
  const std::uint64_t id = next_broadcast_++;
  if (scenario_.crash_broadcast == CrashBroadcast::Drop) {
    auto crash = scenario_.crash_times.find(from);
    if (crash != scenario_.crash_times.end() && crash->second <= now_ + scenario_.rbcast_bound) return;
  }
  for (ProcessId to = 0; to < scenario_.n; ++to) {
    Tick delay = uniform(1, scenario_.rbcast_bound);
    if (to != from) delay = apply_directives(from, to, now_, delay);
    const Tick deliver = cap_to_horizon(to, now_, now_ + delay);
    rb_inbox_[deliver].push_back(BroadcastCopy{from, to, msg, now_, deliver, id});
  }
}

void Simulation::record(ProcessId p, EventKind kind, std::string message, std::optional<ProcessId> peer,
                        std::optional<std::uint64_t> seq, std::optional<Tick> sent) {
  TraceEvent e;
  e.tick = now_;
  e.process = p;
  e.kind = kind;
  e.message = std::move(message);
  e.peer = peer;
  e.seq = seq;
  e.sent = sent;
  if (outputs_[p]) e.output = (*scenario_.family)[*outputs_[p]];
  trace_.events.push_back(std::move(e));
}

void Simulation::note_output(ProcessId p) {
  auto current = procs_[p]->output();
  if (current == outputs_[p]) return;
  outputs_[p] = current;
  record(p, EventKind::OutputChange);
}

void Simulation::apply(ProcessId p, Actions actions) {
  for (auto& action : actions) {
    if (auto* s = std::get_if<SendTo>(&action)) {
      send(p, s->to, std::move(s->msg));
    } else if (auto* b = std::get_if<Broadcast>(&action)) {
      rbcast(p, std::move(b->msg));
    } else if (auto* t = std::get_if<ArmTimer>(&action)) {
      set_timer(p, t->peer, t->after);
    }
  }
}

void Simulation::audit(ProcessId p) {
  scratch_.clear();
  procs_[p]->counters(scratch_);
  auto& prev = last_counters_[p];
  auto& audit = *trace_.audit;
  ++audit.samples;
  const std::size_t common = std::min(prev.size(), scratch_.size());
  for (std::size_t i = 0; i < common; ++i) {
    const auto& before = prev[i];
    const auto& after = scratch_[i];
    if (before.member != after.member || after.acc < before.acc || after.prop < before.prop) {
      if (audit.regressions++ == 0) {
        audit.first_regression = "tick " + std::to_string(now_) + " process " + std::to_string(p) +
                                 " member " + std::to_string(after.member) + " acc " +
                                 std::to_string(before.acc) + "->" + std::to_string(after.acc) + " prop " +
                                 std::to_string(before.prop) + "->" + std::to_string(after.prop);
      }
    }
  }
  if (prev.size() != scratch_.size() && audit.regressions++ == 0) {
    audit.first_regression = "tick " + std::to_string(now_) + " process " + std::to_string(p) +
                             " changed its counter set";
  }
  prev.swap(scratch_);
}

void Simulation::step(ProcessId p, std::vector<Envelope>& inbox, std::vector<BroadcastCopy>& rb_inbox) {
  auto crash = scenario_.crash_times.find(p);
  if (live_[p] && crash != scenario_.crash_times.end() && crash->second == now_) {
    record(p, EventKind::Crash);
    live_[p] = false;
    for (auto& t : timers_[p]) t.reset();
    return;
  }
  if (!live_[p]) return;

  bool acted = false;
  for (auto& env : inbox) {
    if (env.to != p) continue;
    acted = true;
    record(p, EventKind::Deliver, encode(env.msg, *scenario_.family), env.from, env.seq, env.send_tick);
    Actions actions = procs_[p]->receive(env.from, env.msg);
    note_output(p);
    apply(p, std::move(actions));
  }
  for (auto& copy : rb_inbox) {
    if (copy.to != p) continue;
    acted = true;
    record(p, EventKind::RbDeliver, encode(copy.msg, *scenario_.family), copy.origin, copy.id, copy.send_tick);
    Actions actions = procs_[p]->deliver(copy.origin, copy.msg);
    note_output(p);
    apply(p, std::move(actions));
  }
  for (ProcessId peer = 0; peer < scenario_.n; ++peer) {
    if (timers_[p][peer] != now_) continue;
    acted = true;
    timers_[p][peer].reset();
    record(p, EventKind::TimerExpire, {}, peer);
    Actions actions = procs_[p]->expire(peer);
    note_output(p);
    apply(p, std::move(actions));
  }
  if (now_ % scenario_.k_period == 0) {
    acted = true;
    Actions actions = procs_[p]->periodic();
    note_output(p);
    apply(p, std::move(actions));
  }
  if (acted) audit(p);
}

void Simulation::advance() {
  ++now_;
  trace_.header.horizon = now_;
  std::vector<Envelope> inbox;
  if (auto it = inbox_.find(now_); it != inbox_.end()) {
    inbox = std::move(it->second);
    inbox_.erase(it);
  }
  std::vector<BroadcastCopy> rb_inbox;
  if (auto it = rb_inbox_.find(now_); it != rb_inbox_.end()) {
    rb_inbox = std::move(it->second);
    rb_inbox_.erase(it);
  }
  std::sort(inbox.begin(), inbox.end(), [](const Envelope& a, const Envelope& b) {
    return std::tie(a.to, a.from, a.seq) < std::tie(b.to, b.from, b.seq);
  });
  std::sort(rb_inbox.begin(), rb_inbox.end(), [](const BroadcastCopy& a, const BroadcastCopy& b) {
    return std::tie(a.to, a.origin, a.id) < std::tie(b.to, b.origin, b.id);
  });
  for (ProcessId p = 0; p < scenario_.n; ++p) step(p, inbox, rb_inbox);
}

const Trace& Simulation::run(Tick until) {
  if (until > scenario_.horizon) {
    throw std::invalid_argument("run horizon " + std::to_string(until) + " exceeds scenario horizon " +
                                std::to_string(scenario_.horizon));
  }
  while (now_ < until) advance();
  return trace_;
}

std::vector<Envelope> Simulation::pending_messages() const {
  std::vector<Envelope> out;
  for (const auto& [tick, bucket] : inbox_) out.insert(out.end(), bucket.begin(), bucket.end());
  return out;
}

std::vector<BroadcastCopy> Simulation::pending_broadcasts() const {
  std::vector<BroadcastCopy> out;
  for (const auto& [tick, bucket] : rb_inbox_) out.insert(out.end(), bucket.begin(), bucket.end());
  return out;
}

}  // namespace tgx
