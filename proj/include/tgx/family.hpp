#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tgx/graph.hpp"

namespace tgx {

enum class FamilyName { Async, Complete, Star, Tree, Ring, SC, BIC, Pair, Custom };

std::string_view to_string(FamilyName name);
/// Accepts the upper-case tags (ASYNC, COMPLETE, ...); throws
/// std::invalid_argument otherwise.
FamilyName parse_family_name(std::string_view text);

using MemberIndex = std::size_t;

/// Finite system of timeliness graphs.  `members` is strictly increasing under
/// graph_order, so member indices realize the tie-break order.
struct GraphFamily {
  FamilyName name = FamilyName::Custom;
  std::size_t n = 0;
  std::vector<TimelinessGraph> members;

  std::optional<MemberIndex> index_of(const TimelinessGraph& g) const;
  bool contains(const TimelinessGraph& g) const { return index_of(g).has_value(); }
  const TimelinessGraph& operator[](MemberIndex i) const { return members[i]; }
  std::size_t size() const { return members.size(); }

  friend bool operator==(const GraphFamily&, const GraphFamily&) = default;
};

/// Builds a CUSTOM family: sorts, drops duplicates, and rejects members with
/// nodes outside {0..n-1}.
GraphFamily make_custom_family(std::size_t n, std::vector<TimelinessGraph> members);

/// Every member of the named system over nonempty node subsets of {0..n-1}.
/// Throws CapacityError for n above kEnumerationCap and std::invalid_argument
/// for n == 0 or a CUSTOM tag.
GraphFamily generate_family(FamilyName name, std::size_t n);

struct ClosureWitness {
  TimelinessGraph member;
  Dicut dicut;
  TimelinessGraph reduced;
};

struct ClosureReport {
  bool closed = true;
  /// Smallest counterexample: least reduced graph, then least member.
  std::optional<ClosureWitness> witness;
  std::size_t violations = 0;
};

ClosureReport is_dicut_closed(const GraphFamily& family);

/// Two internally vertex-disjoint directed paths between every ordered pair
/// of distinct nodes.
bool is_biconnected(const TimelinessGraph& g);

}  // namespace tgx
