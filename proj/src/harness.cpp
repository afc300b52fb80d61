#include "tgx/harness.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"
#include "tgx/basic.hpp"
#include "tgx/efficient.hpp"
#include "tgx/simnet.hpp"

namespace tgx {

namespace {

PropertyVerdict pass(std::string detail = {}) { return {Verdict::Pass, std::move(detail)}; }
PropertyVerdict fail(std::string detail) { return {Verdict::Fail, std::move(detail)}; }
PropertyVerdict not_applicable(std::string detail = {}) { return {Verdict::NotApplicable, std::move(detail)}; }

std::string edge_text(ProcessId a, ProcessId b) {
  return "(" + std::to_string(a) + "," + std::to_string(b) + ")";
}

bool is_exact_family(FamilyName f) {
  return f == FamilyName::SC || f == FamilyName::Complete || f == FamilyName::Ring || f == FamilyName::BIC;
}

// Every simple path of g from a correct node to another correct node, fed to
// visit() edge by edge.
void for_each_correct_path(const TimelinessGraph& g, const std::set<ProcessId>& correct,
                           const std::function<void(const std::vector<ProcessId>&)>& visit) {
  std::vector<ProcessId> path;
  std::set<ProcessId> on_path;
  std::function<void(ProcessId)> dfs = [&](ProcessId u) {
    if (path.size() > 1 && correct.contains(u)) visit(path);
    for (ProcessId v : g.successors(u)) {
      if (on_path.contains(v)) continue;
      path.push_back(v);
      on_path.insert(v);
      dfs(v);
      on_path.erase(v);
      path.pop_back();
    }
  };
  for (ProcessId s : g.nodes()) {
    if (!correct.contains(s)) continue;
    path = {s};
    on_path = {s};
    dfs(s);
  }
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "PASS";
    case Verdict::Fail:
      return "FAIL";
    case Verdict::NotApplicable:
      return "N/A";
  }
  return "?";
}

std::vector<std::pair<std::string_view, const PropertyVerdict*>> PropertyReport::verdicts() const {
  return {{"convergence", &convergence}, {"compatibility", &compatibility}, {"closure", &closure},
          {"validity", &validity},       {"exactness", &exactness},         {"root_correct", &root_correct},
          {"efficiency", &efficiency},   {"monotonicity", &monotonicity},   {"fifo", &fifo},
          {"timeliness", &timeliness},   {"routing", &routing}};
}

bool PropertyReport::all_pass() const {
  for (const auto& [name, v] : verdicts()) {
    if (!v->ok()) return false;
  }
  return true;
}

std::string report_to_text(const PropertyReport& r) {
  std::ostringstream out;
  out << "converged: " << (r.converged ? "yes" : "no") << '\n';
  out << "stabilization_tick: " << (r.stabilization_tick ? std::to_string(*r.stabilization_tick) : "none") << '\n';
  out << "final_graph: " << (r.final_graph ? r.final_graph->to_string() : "none") << '\n';
  for (const auto& [name, v] : r.verdicts()) {
    out << name << ": " << to_string(v->verdict);
    if (!v->detail.empty()) out << " (" << v->detail << ")";
    out << '\n';
  }
  return out.str();
}

std::string report_to_json(const PropertyReport& r) {
  using json = nlohmann::ordered_json;
  json j;
  j["converged"] = r.converged;
  j["stabilization_tick"] = r.stabilization_tick ? json(*r.stabilization_tick) : json();
  j["final_graph"] = r.final_graph ? json(r.final_graph->to_string()) : json();
  json verdicts = json::object();
  for (const auto& [name, v] : r.verdicts()) {
    verdicts[std::string(name)] = {{"verdict", std::string(to_string(v->verdict))}, {"detail", v->detail}};
  }
  j["verdicts"] = verdicts;
  return j.dump(2);
}

PropertyReport check_properties(const Trace& trace, const Scenario& scenario) {
  const auto& h = trace.header;
  if (h.seed != scenario.seed) throw InputError("trace seed does not match scenario seed");
  if (h.n != scenario.n) throw InputError("trace process count does not match scenario n");
  if (h.scenario_digest != scenario_digest(scenario)) throw InputError("trace was produced from a different scenario");

  const GraphFamily& family = *scenario.family;
  const std::vector<ProcessId> correct_list = scenario.correct();
  const std::set<ProcessId> correct(correct_list.begin(), correct_list.end());
  const Tick horizon = h.horizon;

  PropertyReport r;

  // Final outputs and last change per correct process.
  std::map<ProcessId, std::optional<TimelinessGraph>> final_out;
  std::map<ProcessId, Tick> last_change;
  for (const auto& e : trace.events) {
    if (e.kind != EventKind::OutputChange || !correct.contains(e.process)) continue;
    final_out[e.process] = e.output;
    last_change[e.process] = e.tick;
  }

  std::optional<std::optional<TimelinessGraph>> agreed;
  std::string disagreement;
  if (correct.empty()) {
    disagreement = "no correct process";
  } else if (final_out.size() != correct.size()) {
    disagreement = "some correct process has no output record";
  } else {
    agreed = final_out.begin()->second;
    for (const auto& [p, out] : final_out) {
      if (out != *agreed) {
        disagreement = "processes " + std::to_string(final_out.begin()->first) + " and " + std::to_string(p) +
                       " end with different outputs";
        agreed.reset();
        break;
      }
    }
    if (agreed && !*agreed) {
      disagreement = "final output is none";
      agreed.reset();
    }
  }
  if (agreed) {
    r.final_graph = **agreed;
    Tick t_star = 0;
    for (const auto& [p, t] : last_change) t_star = std::max(t_star, t);
    r.stabilization_tick = t_star;
  }

  if (!trace.audit) {
    r.convergence = fail("trace has no audit line (truncated)");
  } else if (!r.final_graph) {
    r.convergence = fail(disagreement);
  } else if (*r.stabilization_tick > horizon / 2) {
    r.convergence = fail("last output change at tick " + std::to_string(*r.stabilization_tick) + " after horizon/2 = " +
                         std::to_string(horizon / 2));
  } else {
    r.converged = true;
    r.convergence = pass("stable from tick " + std::to_string(*r.stabilization_tick));
  }

  const bool exact_family = is_exact_family(family.name);
  const bool rooted_family = family.name == FamilyName::Star || family.name == FamilyName::Tree;
  const bool efficient = h.algo == "efficient";

  if (!r.final_graph) {
    const std::string why = "no common final graph";
    r.compatibility = fail(why);
    r.closure = fail(why);
    r.validity = fail(why);
    r.exactness = exact_family ? fail(why) : not_applicable();
    r.root_correct = rooted_family ? fail(why) : not_applicable();
    r.efficiency = efficient ? fail(why) : not_applicable();
    r.routing = fail(why);
  } else {
    const TimelinessGraph& g = *r.final_graph;
    const TimelinessGraph restricted = induced_subgraph(g, correct_list);

    if (is_compatible(restricted, scenario.truth)) {
      r.compatibility = pass();
    } else if (restricted.nodes() != scenario.truth.nodes()) {
      r.compatibility = fail("final graph misses a correct process");
    } else {
      std::string extra;
      for (const auto& [a, b] : restricted.edges()) {
        if (!scenario.truth.has_edge(a, b)) extra += edge_text(a, b);
      }
      r.compatibility = fail("edges not timely: " + extra);
    }

    if (restricted == g) {
      r.closure = pass("final graph has only correct nodes");
    } else {
      Dicut cut;
      for (ProcessId p : g.nodes()) (correct.contains(p) ? cut.x_side : cut.y_side).push_back(p);
      if (!cut.x_side.empty() && is_dicut(g, cut)) {
        r.closure = pass("crashed nodes sit behind a dicut");
      } else {
        r.closure = fail("an edge leads from a crashed node to a correct one");
      }
    }

    r.validity = family.contains(g) ? pass() : fail("final graph is not a family member");

    if (!exact_family) {
      r.exactness = not_applicable();
    } else if (g.nodes() == correct_list) {
      r.exactness = pass();
    } else {
      r.exactness = fail("node set differs from the correct set");
    }

    if (!rooted_family) {
      r.root_correct = not_applicable();
    } else {
      auto root = root_of(g);
      if (root && correct.contains(*root)) {
        r.root_correct = pass("root " + std::to_string(*root));
      } else {
        r.root_correct = fail(root ? "root " + std::to_string(*root) + " crashed" : "final graph has no root");
      }
    }

    if (!efficient) {
      r.efficiency = not_applicable();
    } else {
      const Tick from = horizon - horizon / 4;
      std::size_t off = 0;
      std::string first;
      for (const auto& e : trace.events) {
        if (e.kind != EventKind::Send || e.tick < from || !correct.contains(e.process)) continue;
        if (!g.has_edge(e.process, *e.peer)) {
          if (off++ == 0) first = e.message + " " + edge_text(e.process, *e.peer) + " at tick " + std::to_string(e.tick);
        }
      }
      r.efficiency = off == 0 ? pass() : fail(std::to_string(off) + " sends off the final graph, first " + first);
    }

    std::map<Edge, Tick> worst_delay;
    for (const auto& e : trace.events) {
      if (e.kind != EventKind::Deliver) continue;
      Tick& w = worst_delay[{*e.peer, e.process}];
      w = std::max(w, e.tick - *e.sent);
    }
    std::string bad;
    for_each_correct_path(g, correct, [&](const std::vector<ProcessId>& path) {
      if (!bad.empty()) return;
      for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        const ProcessId a = path[i], b = path[i + 1];
        if (!correct.contains(a) || !correct.contains(b)) {
          bad = "path through crashed process via " + edge_text(a, b);
          return;
        }
        auto it = worst_delay.find({a, b});
        if (!scenario.truth.has_edge(a, b) || (it != worst_delay.end() && it->second > scenario.delta)) {
          bad = "link " + edge_text(a, b) + " is not timely";
          return;
        }
      }
    });
    r.routing = bad.empty() ? pass() : fail(bad);
  }

  if (!trace.audit) {
    r.monotonicity = fail("trace has no audit line");
  } else if (trace.audit->regressions == 0) {
    r.monotonicity = pass(std::to_string(trace.audit->samples) + " samples");
  } else {
    r.monotonicity = fail(std::to_string(trace.audit->regressions) + " regressions, first at " +
                          trace.audit->first_regression);
  }

  // FIFO: per link, deliveries come in send order.
  std::map<Edge, std::pair<std::uint64_t, Tick>> last_seen;
  std::string fifo_issue;
  for (const auto& e : trace.events) {
    if (e.kind != EventKind::Deliver) continue;
    const Edge link{*e.peer, e.process};
    auto it = last_seen.find(link);
    if (it != last_seen.end() && (*e.seq <= it->second.first || *e.sent < it->second.second)) {
      fifo_issue = "reordering on " + edge_text(link.first, link.second) + " at tick " + std::to_string(e.tick);
      break;
    }
    last_seen[link] = {*e.seq, *e.sent};
  }
  r.fifo = fifo_issue.empty() ? pass() : fail(fifo_issue);

  // Timeliness: timely links deliver within δ and crashed processes go silent.
  std::string late;
  for (const auto& e : trace.events) {
    auto crash = scenario.crash_times.find(e.process);
    if (crash != scenario.crash_times.end() && e.tick >= crash->second && e.kind != EventKind::Crash) {
      late = "process " + std::to_string(e.process) + " acts at tick " + std::to_string(e.tick) + " after crashing";
      break;
    }
    if (e.kind == EventKind::Deliver && scenario.is_timely(*e.peer, e.process) && e.tick - *e.sent > scenario.delta) {
      late = "timely link " + edge_text(*e.peer, e.process) + " took " + std::to_string(e.tick - *e.sent) + " ticks";
      break;
    }
  }
  r.timeliness = late.empty() ? pass() : fail(late);
  return r;
}

std::vector<TimelinessGraph> brute_force_extraction_oracle(const Scenario& scenario, const GraphFamily& family) {
  const std::vector<ProcessId> correct = scenario.correct();
  std::vector<TimelinessGraph> out;
  for (const auto& g : family.members) {
    const TimelinessGraph restricted = induced_subgraph(g, correct);
    if (!is_compatible(restricted, scenario.truth)) continue;
    if (restricted != g) {
      const auto reductions = dicut_reductions(g);
      if (!std::binary_search(reductions.begin(), reductions.end(), restricted)) continue;
    }
    out.push_back(g);
  }
  return out;
}

ProtocolFactory factory_for(std::string_view algo) {
  if (algo == "basic") return basic_factory(false);
  if (algo == "strawman") return basic_factory(true);
  if (algo == "efficient") return efficient_factory();
  throw ConfigError("algo: expected basic, efficient or strawman, got '" + std::string(algo) + "'");
}

Trace simulate(const Scenario& scenario, std::string_view algo) {
  Simulation sim(scenario, factory_for(algo), std::string(algo));
  return sim.run(scenario.horizon);
}

std::size_t count_class_switches(const Trace& trace, ProcessId p, const OutputClassifier& classify) {
  std::optional<std::string> current;
  std::size_t switches = 0;
  for (const auto& e : trace.events) {
    if (e.process != p || e.kind != EventKind::OutputChange) continue;
    auto cls = classify(e.output);
    if (!cls) continue;
    if (current && *cls != *current) ++switches;
    current = std::move(cls);
  }
  return switches;
}

OutputClassifier node_set_classifier(std::vector<std::vector<ProcessId>> only) {
  return [only = std::move(only)](const std::optional<TimelinessGraph>& g) -> std::optional<std::string> {
    if (!g) return std::nullopt;
    if (!only.empty() && std::find(only.begin(), only.end(), g->nodes()) == only.end()) return std::nullopt;
    std::string s;
    for (ProcessId p : g->nodes()) s += std::to_string(p) + ",";
    return s;
  };
}

OutputClassifier graph_classifier(std::vector<TimelinessGraph> graphs) {
  return [graphs = std::move(graphs)](const std::optional<TimelinessGraph>& g) -> std::optional<std::string> {
    if (!g) return std::nullopt;
    auto it = std::find(graphs.begin(), graphs.end(), *g);
    if (it == graphs.end()) return std::nullopt;
    return std::to_string(it - graphs.begin());
  };
}

Scenario random_suite_scenario(FamilyName name, std::size_t n, std::uint64_t seed, Tick horizon) {
  std::mt19937_64 rng(seed);
  auto below = [&](std::uint64_t k) { return static_cast<std::size_t>(rng() % k); };

  auto family = std::make_shared<const GraphFamily>(generate_family(name, n));
  auto feasible = [&](std::size_t correct) {
    if (name == FamilyName::Ring) return correct >= 2;
    if (name == FamilyName::BIC) return correct != 2;
    return correct >= 1;
  };

  Scenario s;
  s.n = n;
  s.family = family;
  s.horizon = horizon;
  s.seed = seed;

  std::vector<ProcessId> order(n);
  for (ProcessId p = 0; p < n; ++p) order[p] = p;
  std::shuffle(order.begin(), order.end(), rng);
  std::size_t crashes = below(n);
  while (!feasible(n - crashes)) --crashes;
  const Tick latest = std::max<Tick>(1, default_horizon(n, s.k_period, s.delta) / 10);
  for (std::size_t i = 0; i < crashes; ++i) s.crash_times[order[i]] = 1 + static_cast<Tick>(below(latest));

  const std::vector<ProcessId> correct = s.correct();
  std::vector<const TimelinessGraph*> on_correct;
  for (const auto& g : family->members) {
    if (g.nodes() == correct) on_correct.push_back(&g);
  }
  const TimelinessGraph& base = *on_correct[below(on_correct.size())];
  std::vector<Edge> edges = base.edges();
  for (ProcessId a : correct) {
    for (ProcessId b : correct) {
      if (a != b && !base.has_edge(a, b) && below(4) == 0) edges.emplace_back(a, b);
    }
  }
  s.truth = make_graph(correct, std::move(edges));

  if (below(2) == 0) {
    std::vector<Edge> slow;
    for (ProcessId a = 0; a < n; ++a) {
      for (ProcessId b = 0; b < n; ++b) {
        if (a != b && !s.truth.has_edge(a, b)) slow.emplace_back(a, b);
      }
    }
    if (!slow.empty()) {
      const Edge link = slow[below(slow.size())];
      const Tick start = static_cast<Tick>(below(static_cast<std::uint64_t>(horizon / 4) + 1));
      s.adversary.push_back(DelayDirective{link, start, start + horizon / 8, 4 * s.delta});
    }
  }
  s.validate();
  return s;
}

}  // namespace tgx
