#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "tgx/family.hpp"
#include "tgx/graph.hpp"

namespace tgx {

using Tick = std::int64_t;

/// Scenario field violates an invariant; the message names the field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Messages on `link` sent during [window_start, window_end] are delivered no
/// sooner than `min_delay` ticks after sending.  Only non-timely links may be
/// targeted.
struct DelayDirective {
  Edge link{};
  Tick window_start = 0;
  Tick window_end = 0;
  Tick min_delay = 0;

  friend bool operator==(const DelayDirective&, const DelayDirective&) = default;
};

/// What happens to a reliable broadcast whose sender crashes before the
/// broadcast's delivery bound elapses: every correct process delivers it, or
/// none does.
enum class CrashBroadcast { Deliver, Drop };

inline constexpr Tick kDefaultDelta = 3;
inline constexpr Tick kDefaultPeriod = 5;

struct Scenario {
  std::size_t n = 0;
  std::shared_ptr<const GraphFamily> family;
  /// Node set is the correct set, edges are the timely links.
  TimelinessGraph truth;
  Tick delta = kDefaultDelta;
  Tick k_period = kDefaultPeriod;
  Tick rbcast_bound = kDefaultDelta;
  std::map<ProcessId, Tick> crash_times;
  std::vector<DelayDirective> adversary;
  CrashBroadcast crash_broadcast = CrashBroadcast::Deliver;
  Tick horizon = 0;
  std::uint64_t seed = 0;

  bool is_correct(ProcessId p) const { return !crash_times.contains(p); }
  std::vector<ProcessId> correct() const;
  bool is_timely(ProcessId from, ProcessId to) const { return truth.has_edge(from, to); }

  /// Throws ConfigError naming the offending field.
  void validate() const;

  friend bool operator==(const Scenario& a, const Scenario& b);
};

/// 10·n·K·δ.
Tick default_horizon(std::size_t n, Tick k_period, Tick delta);

/// JSON config form.  `family` is either a tag string (generated over n) or
/// an object {"name":"CUSTOM","members":[graph text, ...]}.  Missing numeric
/// fields take the defaults above; parse validates.
std::string scenario_to_json(const Scenario& s);
Scenario scenario_from_json(const std::string& text);
Scenario load_scenario(const std::string& path);
void save_scenario(const Scenario& s, const std::string& path);

/// Stable 64-bit fingerprint of the canonical JSON form.
std::uint64_t scenario_digest(const Scenario& s);

}  // namespace tgx
