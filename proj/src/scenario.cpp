#include "tgx/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace tgx {

using json = nlohmann::ordered_json;

std::vector<ProcessId> Scenario::correct() const {
  std::vector<ProcessId> out;
  for (ProcessId p = 0; p < n; ++p) {
    if (is_correct(p)) out.push_back(p);
  }
  return out;
}

bool operator==(const Scenario& a, const Scenario& b) {
  const bool same_family = (a.family == b.family) || (a.family && b.family && *a.family == *b.family);
  return a.n == b.n && same_family && a.truth == b.truth && a.delta == b.delta &&
         a.k_period == b.k_period && a.rbcast_bound == b.rbcast_bound &&
         a.crash_times == b.crash_times && a.adversary == b.adversary &&
         a.crash_broadcast == b.crash_broadcast && a.horizon == b.horizon && a.seed == b.seed;
}

void Scenario::validate() const {
  if (n == 0) throw ConfigError("n: must be at least 1");
  if (!family) throw ConfigError("family: missing");
  if (family->n != n) throw ConfigError("family: universe size differs from n");
  if (family->members.empty()) throw ConfigError("family: no members");
  for (const auto& g : family->members) {
    if (!g.nodes().empty() && g.nodes().back() >= n) {
      throw ConfigError("family: member " + g.to_string() + " has a node outside [0,n)");
    }
  }
  if (delta < 1) throw ConfigError("delta: must be at least 1");
  if (k_period < 1) throw ConfigError("k_period: must be at least 1");
  if (rbcast_bound < 1) throw ConfigError("rbcast_bound: must be at least 1");
  if (horizon <= 0) throw ConfigError("horizon: must be positive");
  for (const auto& [p, tick] : crash_times) {
    if (p >= n) throw ConfigError("crash_times: process " + std::to_string(p) + " outside [0,n)");
    if (tick < 1) throw ConfigError("crash_times: crash tick of process " + std::to_string(p) + " must be >= 1");
  }
  if (truth.nodes() != correct()) {
    throw ConfigError("truth: node set must equal the processes without a crash time");
  }
  for (const auto& d : adversary) {
    if (d.link.first >= n || d.link.second >= n || d.link.first == d.link.second) {
      throw ConfigError("adversary: directive link (" + std::to_string(d.link.first) + "," +
                        std::to_string(d.link.second) + ") is not a link between distinct processes");
    }
    if (truth.has_edge(d.link.first, d.link.second)) {
      throw ConfigError("adversary: directive targets timely link (" + std::to_string(d.link.first) +
                        "," + std::to_string(d.link.second) + ")");
    }
    if (d.window_end < d.window_start) throw ConfigError("adversary: window end precedes start");
    if (d.min_delay < 1) throw ConfigError("adversary: min_delay must be at least 1");
  }
}

Tick default_horizon(std::size_t n, Tick k_period, Tick delta) {
  return 10 * static_cast<Tick>(n) * k_period * delta;
}

namespace {

json family_to_json(const GraphFamily& f) {
  if (f.name != FamilyName::Custom) return std::string(to_string(f.name));
  json members = json::array();
  for (const auto& g : f.members) members.push_back(g.to_string());
  return json{{"name", "CUSTOM"}, {"members", members}};
}

template <typename T>
T field_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string(key) + ": " + e.what());
  }
}

}  // namespace

std::string scenario_to_json(const Scenario& s) {
  json crashes = json::object();
  for (const auto& [p, tick] : s.crash_times) crashes[std::to_string(p)] = tick;
  json adversary = json::array();
  for (const auto& d : s.adversary) {
    adversary.push_back(json{{"link", {d.link.first, d.link.second}},
                             {"window", {d.window_start, d.window_end}},
                             {"min_delay", d.min_delay}});
  }
  json j{{"n", s.n},
         {"family", s.family ? family_to_json(*s.family) : json()},
         {"truth", s.truth.to_string()},
         {"delta", s.delta},
         {"k_period", s.k_period},
         {"rbcast_bound", s.rbcast_bound},
         {"crash_times", crashes},
         {"adversary", adversary},
         {"crash_broadcast", s.crash_broadcast == CrashBroadcast::Drop ? "drop" : "deliver"},
         {"horizon", s.horizon},
         {"seed", s.seed}};
  return j.dump(2) + "\n";
}

Scenario scenario_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("scenario: malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("scenario: top level must be an object");
  Scenario s;
  if (!j.contains("n")) throw ConfigError("n: missing");
  s.n = field_or<std::size_t>(j, "n", 0);
  s.delta = field_or<Tick>(j, "delta", kDefaultDelta);
  s.k_period = field_or<Tick>(j, "k_period", kDefaultPeriod);
  s.rbcast_bound = field_or<Tick>(j, "rbcast_bound", s.delta);
  s.horizon = field_or<Tick>(j, "horizon", default_horizon(s.n, s.k_period, s.delta));
  s.seed = field_or<std::uint64_t>(j, "seed", 0);

  if (!j.contains("family")) throw ConfigError("family: missing");
  try {
    const json& f = j.at("family");
    if (f.is_string()) {
      s.family = std::make_shared<const GraphFamily>(generate_family(parse_family_name(f.get<std::string>()), s.n));
    } else {
      if (f.value("name", "") != "CUSTOM") throw ConfigError("family: object form requires name CUSTOM");
      std::vector<TimelinessGraph> members;
      for (const auto& m : f.at("members")) members.push_back(TimelinessGraph::parse(m.get<std::string>()));
      s.family = std::make_shared<const GraphFamily>(make_custom_family(s.n, std::move(members)));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("family: ") + e.what());
  }

  if (!j.contains("truth")) throw ConfigError("truth: missing");
  try {
    s.truth = TimelinessGraph::parse(j.at("truth").get<std::string>());
  } catch (const std::exception& e) {
    throw ConfigError(std::string("truth: ") + e.what());
  }

  if (j.contains("crash_times")) {
    const json& c = j.at("crash_times");
    if (!c.is_object()) throw ConfigError("crash_times: must be an object of process -> tick");
    for (const auto& [key, value] : c.items()) {
      try {
        s.crash_times[static_cast<ProcessId>(std::stoul(key))] = value.get<Tick>();
      } catch (const std::exception& e) {
        throw ConfigError("crash_times: entry '" + key + "': " + e.what());
      }
    }
  }
  if (j.contains("adversary")) {
    for (const auto& d : j.at("adversary")) {
      try {
        DelayDirective dir;
        dir.link = {d.at("link").at(0).get<ProcessId>(), d.at("link").at(1).get<ProcessId>()};
        dir.window_start = d.at("window").at(0).get<Tick>();
        dir.window_end = d.at("window").at(1).get<Tick>();
        dir.min_delay = d.at("min_delay").get<Tick>();
        s.adversary.push_back(dir);
      } catch (const json::exception& e) {
        throw ConfigError(std::string("adversary: ") + e.what());
      }
    }
  }
  const std::string policy = field_or<std::string>(j, "crash_broadcast", "deliver");
  if (policy == "drop") {
    s.crash_broadcast = CrashBroadcast::Drop;
  } else if (policy != "deliver") {
    throw ConfigError("crash_broadcast: expected 'deliver' or 'drop'");
  }
  s.validate();
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("scenario: cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return scenario_from_json(buf.str());
}

void save_scenario(const Scenario& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("scenario: cannot write '" + path + "'");
  out << scenario_to_json(s);
}

std::uint64_t scenario_digest(const Scenario& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : scenario_to_json(s)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace tgx
