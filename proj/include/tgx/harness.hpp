#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tgx/family.hpp"
#include "tgx/message.hpp"
#include "tgx/scenario.hpp"
#include "tgx/trace.hpp"

namespace tgx {

enum class Verdict { Pass, Fail, NotApplicable };

std::string_view to_string(Verdict v);

struct PropertyVerdict {
  Verdict verdict = Verdict::NotApplicable;
  std::string detail;

  bool ok() const { return verdict != Verdict::Fail; }
  friend bool operator==(const PropertyVerdict&, const PropertyVerdict&) = default;
};

struct PropertyReport {
  bool converged = false;
  std::optional<Tick> stabilization_tick;
  std::optional<TimelinessGraph> final_graph;

  PropertyVerdict convergence;
  PropertyVerdict compatibility;
  PropertyVerdict closure;
  PropertyVerdict validity;
  PropertyVerdict exactness;
  PropertyVerdict root_correct;
  PropertyVerdict efficiency;
  PropertyVerdict monotonicity;
  PropertyVerdict fifo;
  PropertyVerdict timeliness;
  /// Paths of the final graph between correct processes use only correct
  /// nodes and links observed within δ.
  PropertyVerdict routing;

  /// (name, verdict) in report order.
  std::vector<std::pair<std::string_view, const PropertyVerdict*>> verdicts() const;
  /// No verdict is FAIL.
  bool all_pass() const;

  friend bool operator==(const PropertyReport&, const PropertyReport&) = default;
};

std::string report_to_text(const PropertyReport& r);
std::string report_to_json(const PropertyReport& r);

/// Throws InputError when the trace header does not match the scenario
/// (seed, n or digest).  Convergence needs every correct process to agree on
/// a member from some tick t* ≤ horizon/2 on, and the counter audit line to
/// be present.
PropertyReport check_properties(const Trace& trace, const Scenario& scenario);

/// Members that satisfy compatibility, closure and validity against the
/// scenario's truth, straight from the definitions.
std::vector<TimelinessGraph> brute_force_extraction_oracle(const Scenario& scenario, const GraphFamily& family);

/// basic | efficient | strawman (the exact-mode variant of basic).
ProtocolFactory factory_for(std::string_view algo);
/// Runs the scenario to its horizon.
Trace simulate(const Scenario& scenario, std::string_view algo);

/// Maps an output to a class, or nullopt to skip it.
using OutputClassifier = std::function<std::optional<std::string>(const std::optional<TimelinessGraph>&)>;

/// Number of class changes in process p's output sequence, skipping
/// unclassified outputs.
std::size_t count_class_switches(const Trace& trace, ProcessId p, const OutputClassifier& classify);

/// Class = node set of the output.  A nonempty `only` skips other node sets.
OutputClassifier node_set_classifier(std::vector<std::vector<ProcessId>> only = {});
/// Class = position of the output in `graphs`; other outputs are skipped.
OutputClassifier graph_classifier(std::vector<TimelinessGraph> graphs);

/// Random scenario for the extraction suites: crash set, a truth built from
/// a member on the correct set plus extra timely links, crash ticks within
/// the first tenth of the default horizon, and occasional extra delay on a
/// non-timely link.
Scenario random_suite_scenario(FamilyName name, std::size_t n, std::uint64_t seed, Tick horizon);

}  // namespace tgx
