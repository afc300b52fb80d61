#include "tgx/scripts.hpp"

#include <algorithm>
#include <memory>

namespace tgx {

namespace {

constexpr Tick kPairDelta = 5;
constexpr Tick kPairHorizon = 10000;
constexpr std::uint64_t kPairSeed = 7;
constexpr Tick kTreeHorizon = 10000;
constexpr std::uint64_t kTreeSeed = 11;
constexpr Tick kTreeWarmup = 200;

const std::vector<Edge> kPair01{{0, 1}, {1, 0}};
const std::vector<Edge> kPair23{{2, 3}, {3, 2}};
const std::vector<ProcessId> kPairNodes{0, 1, 2, 3, 4};

using Class = std::optional<std::string>;

// Class of p's output as of the end of tick t.
Class class_at(const Trace& trace, ProcessId p, const OutputClassifier& classify, Tick t) {
  Class cls;
  for (const auto& e : trace.events) {
    if (e.tick > t) break;
    if (e.process == p && e.kind == EventKind::OutputChange) cls = classify(e.output);
  }
  return cls;
}

// First tick >= from at which p's output falls in a class accepted by want.
template <typename Pred>
std::optional<Tick> first_tick(const Trace& trace, ProcessId p, const OutputClassifier& classify, Tick from,
                               Pred want) {
  if (want(class_at(trace, p, classify, from))) return from;
  for (const auto& e : trace.events) {
    if (e.tick <= from || e.process != p || e.kind != EventKind::OutputChange) continue;
    if (want(classify(e.output))) return e.tick;
  }
  return std::nullopt;
}

// Holds every message from `side` to the other processes during
// [start, start + length - 1] for at least `length` ticks.
void hold(Scenario& s, const std::vector<ProcessId>& side, Tick start, Tick length) {
  for (ProcessId from : side) {
    for (ProcessId to = 0; to < s.n; ++to) {
      if (std::find(side.begin(), side.end(), to) != side.end()) continue;
      s.adversary.push_back(DelayDirective{{from, to}, start, start + length - 1, length});
    }
  }
}

void require_flips(std::size_t flips) {
  if (flips == 0) throw InputError("flips: must be at least 1");
}

}  // namespace

AdversaryScript pair_counterexample(std::size_t flips) {
  require_flips(flips);
  const std::size_t n = 5;
  Scenario s;
  s.n = n;
  s.family = std::make_shared<const GraphFamily>(generate_family(FamilyName::Pair, n));
  std::vector<Edge> edges = kPair01;
  edges.insert(edges.end(), kPair23.begin(), kPair23.end());
  s.truth = make_graph(kPairNodes, edges);
  s.delta = kPairDelta;
  s.horizon = kPairHorizon;
  s.seed = kPairSeed;
  s.validate();

  AdversaryScript script{"pair", s, "basic", 4, flips};
  const OutputClassifier classify = script_classifier(script);
  auto any = [](const Class& c) { return c.has_value(); };

  Trace trace = simulate(s, "basic");
  auto first = first_tick(trace, 4, classify, 0, any);
  if (!first) throw CapacityError("pair script: process 4 never outputs a pair graph");
  Tick start = *first;

  for (std::size_t i = 0; i < flips; ++i) {
    auto current = first_tick(trace, 4, classify, start, any);
    if (!current) throw CapacityError("pair script: process 4 left both pair graphs");
    start = *current;
    const Class cls = class_at(trace, 4, classify, start);
    const std::string target = *cls == "0" ? "1" : "0";
    const std::vector<ProcessId> side = target == "0" ? std::vector<ProcessId>{0, 1} : std::vector<ProcessId>{2, 3};
    auto reached = [&](const Class& c) { return c == target; };

    Scenario probe = s;
    hold(probe, side, start, s.horizon - start);
    auto switched = first_tick(simulate(probe, "basic"), 4, classify, start, reached);
    if (!switched) throw CapacityError("pair script: flip " + std::to_string(i + 1) + " cannot be forced");

    const Tick length = 2 * std::max<Tick>(1, *switched - start);
    if (start + length >= s.horizon) throw CapacityError("pair script: flips exceed the horizon");
    hold(s, side, start, length);
    trace = simulate(s, "basic");
    start += length;
  }
  script.scenario = s;
  return script;
}

AdversaryScript tree_nonexact_counterexample(std::size_t flips) {
  require_flips(flips);
  const std::size_t n = 3;
  Scenario s;
  s.n = n;
  s.family = std::make_shared<const GraphFamily>(generate_family(FamilyName::Tree, n));
  s.truth = make_graph({0, 1, 2}, {{0, 1}, {0, 2}});
  s.horizon = kTreeHorizon;
  s.seed = kTreeSeed;
  s.validate();

  AdversaryScript script{"tree", s, "strawman", 0, flips};
  const OutputClassifier classify = script_classifier(script);
  const std::vector<ProcessId> side{2};

  const Class full = classify(s.truth);
  auto left = [&](const Class& c) { return c.has_value() && c != full; };
  auto back = [&](const Class& c) { return c == full; };

  Trace trace = simulate(s, "strawman");
  Tick start = kTreeWarmup;
  for (std::size_t i = 0; i < flips; ++i) {
    auto ready = first_tick(trace, 0, classify, start, back);
    if (!ready) throw CapacityError("tree script: process 0 never trusts all processes");
    start = *ready;

    Scenario probe = s;
    hold(probe, side, start, s.horizon - start);
    auto dropped = first_tick(simulate(probe, "strawman"), 0, classify, start, left);
    if (!dropped) throw CapacityError("tree script: phase " + std::to_string(i + 1) + " cannot drop process 2");

    const Tick length = 2 * std::max<Tick>(1, *dropped - start);
    const Tick release = start + length;
    if (release >= s.horizon / 2) throw CapacityError("tree script: flips exceed half the horizon");
    hold(s, side, start, length);
    trace = simulate(s, "strawman");
    auto returned = first_tick(trace, 0, classify, release, back);
    if (!returned) throw CapacityError("tree script: process 2 never returns to the output");
    start = *returned + std::max<Tick>(s.k_period, 2 * (*returned - release));
  }
  script.scenario = s;
  return script;
}

OutputClassifier script_classifier(const AdversaryScript& script) {
  if (script.name == "pair") return graph_classifier({make_graph(kPairNodes, kPair01), make_graph(kPairNodes, kPair23)});
  return node_set_classifier({{0, 1, 2}, {0, 1}});
}

std::size_t script_alternations(const AdversaryScript& script, const Trace& trace) {
  return count_class_switches(trace, script.watched, script_classifier(script));
}

}  // namespace tgx
