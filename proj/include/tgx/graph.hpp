#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tgx {

using ProcessId = std::uint32_t;
using Edge = std::pair<ProcessId, ProcessId>;

/// Families and dicut enumerations are materialized explicitly, so node
/// counts above this are rejected.
inline constexpr std::size_t kEnumerationCap = 5;

/// Malformed graph or partition input (dangling endpoints, self-loops,
/// sides that do not partition the node set).
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Requested enumeration exceeds kEnumerationCap.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Directed graph over a subset of process ids.  Nodes and edges are kept
/// sorted and duplicate-free, so the defaulted comparison is the total order
/// used to break ties between family members: node list first, then edge
/// list, both lexicographic.
class TimelinessGraph {
 public:
  TimelinessGraph() = default;

  const std::vector<ProcessId>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t node_count() const { return nodes_.size(); }
  bool empty() const { return nodes_.empty(); }

  bool has_node(ProcessId p) const;
  bool has_edge(ProcessId from, ProcessId to) const;
  std::vector<ProcessId> successors(ProcessId p) const;
  std::vector<ProcessId> predecessors(ProcessId p) const;

  /// Text form `nodes:[0,1,2];edges:[(1,2),(2,1)]`.
  std::string to_string() const;
  static TimelinessGraph parse(std::string_view text);

  friend auto operator<=>(const TimelinessGraph&, const TimelinessGraph&) = default;
  friend bool operator==(const TimelinessGraph&, const TimelinessGraph&) = default;

 private:
  friend TimelinessGraph make_graph(std::vector<ProcessId> nodes, std::vector<Edge> edges);
  std::vector<ProcessId> nodes_;
  std::vector<Edge> edges_;
};

/// Canonicalizes and validates.  Throws StructuralError on a self-loop or an
/// edge endpoint outside `nodes`.
TimelinessGraph make_graph(std::vector<ProcessId> nodes, std::vector<Edge> edges);

TimelinessGraph induced_subgraph(const TimelinessGraph& g, std::span<const ProcessId> keep);

struct Dicut {
  std::vector<ProcessId> x_side;
  std::vector<ProcessId> y_side;
};

/// True iff no edge of `g` runs from the y side to the x side.  Throws
/// StructuralError when the sides do not partition Node(g).
bool is_dicut(const TimelinessGraph& g, const Dicut& d);

/// G[X] for every dicut (X,Y) of `g` with both sides nonempty; sorted and
/// duplicate-free.
std::vector<TimelinessGraph> dicut_reductions(const TimelinessGraph& g);

/// Same node set and Edge(g) ⊆ Edge(h).
bool is_compatible(const TimelinessGraph& g, const TimelinessGraph& h);

std::strong_ordering graph_order(const TimelinessGraph& g, const TimelinessGraph& h);

bool reaches_all(const TimelinessGraph& g, ProcessId from);
bool is_strongly_connected(const TimelinessGraph& g);

/// Smallest node from which every node is reachable, if any.
std::optional<ProcessId> root_of(const TimelinessGraph& g);

}  // namespace tgx
