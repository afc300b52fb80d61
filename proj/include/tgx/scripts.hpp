#pragma once

#include <cstddef>
#include <string>

#include "tgx/harness.hpp"
#include "tgx/scenario.hpp"

namespace tgx {

/// A scenario whose delay directives force a watched process to keep
/// changing its mind.  `algo` is the protocol the expectation refers to.
struct AdversaryScript {
  std::string name;
  Scenario scenario;
  std::string algo;
  ProcessId watched = 0;
  std::size_t min_alternations = 0;
};

/// Two disjoint timely pairs {0,1} and {2,3} plus a bystander 4 on PAIR(5).
/// Each phase holds the messages of the pair that 4 does not currently
/// output, long enough to flip 4 to it.  Phase lengths are twice the switch
/// time observed while building the script.  Throws InputError for
/// flips == 0 and CapacityError when a flip cannot be forced in the horizon.
AdversaryScript pair_counterexample(std::size_t flips);

/// TREE(3) with truth ({0,1,2}, {(0,1),(0,2)}).  Each phase holds process
/// 2's outgoing messages so that a process trusting only live-looking peers
/// drops 2 from its output and then takes it back.  Checked against the
/// exact-mode strawman.  Same errors as above.
AdversaryScript tree_nonexact_counterexample(std::size_t flips);

/// Class of an output for the script's alternation count: the pair edge set
/// for pair scripts, the node set otherwise.
OutputClassifier script_classifier(const AdversaryScript& script);

/// Alternations at the watched process in a trace of the script.
std::size_t script_alternations(const AdversaryScript& script, const Trace& trace);

}  // namespace tgx
