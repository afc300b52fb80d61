#include "tgx/family.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace tgx {

namespace {

constexpr std::array<std::pair<FamilyName, std::string_view>, 9> kNames{{
    {FamilyName::Async, "ASYNC"},
    {FamilyName::Complete, "COMPLETE"},
    {FamilyName::Star, "STAR"},
    {FamilyName::Tree, "TREE"},
    {FamilyName::Ring, "RING"},
    {FamilyName::SC, "SC"},
    {FamilyName::BIC, "BIC"},
    {FamilyName::Pair, "PAIR"},
    {FamilyName::Custom, "CUSTOM"},
}};

std::vector<ProcessId> nodes_of(std::uint32_t mask) {
  std::vector<ProcessId> out;
  for (ProcessId p = 0; mask >> p; ++p) {
    if (mask & (1u << p)) out.push_back(p);
  }
  return out;
}

// Bitmask digraph on at most kEnumerationCap nodes: adj[p] holds the
// successors of p.
struct MaskGraph {
  std::uint32_t nodes = 0;
  std::array<std::uint32_t, kEnumerationCap> adj{};
};

std::uint32_t reach(const MaskGraph& g, ProcessId from, std::uint32_t banned, Edge skipped) {
  std::uint32_t seen = 1u << from;
  std::uint32_t frontier = seen;
  while (frontier) {
    std::uint32_t next = 0;
    for (ProcessId p = 0; p < kEnumerationCap; ++p) {
      if (!(frontier & (1u << p))) continue;
      std::uint32_t succ = g.adj[p] & ~banned;
      if (p == skipped.first) succ &= ~(1u << skipped.second);
      next |= succ;
    }
    frontier = next & ~seen;
    seen |= next;
  }
  return seen;
}

constexpr Edge kNoEdge{kEnumerationCap, kEnumerationCap};

bool mask_strongly_connected(const MaskGraph& g) {
  for (ProcessId p = 0; p < kEnumerationCap; ++p) {
    if ((g.nodes & (1u << p)) && (reach(g, p, 0, kNoEdge) & g.nodes) != g.nodes) return false;
  }
  return true;
}

bool mask_biconnected(const MaskGraph& g) {
  const auto nodes = nodes_of(g.nodes);
  for (ProcessId p : nodes) {
    for (ProcessId q : nodes) {
      if (p == q) continue;
      if (g.adj[p] & (1u << q)) {
        if (!(reach(g, p, 0, {p, q}) & (1u << q))) return false;
        continue;
      }
      if (!(reach(g, p, 0, kNoEdge) & (1u << q))) return false;
      for (ProcessId v : nodes) {
        if (v == p || v == q) continue;
        if (!(reach(g, p, 1u << v, kNoEdge) & (1u << q))) return false;
      }
    }
  }
  return true;
}

MaskGraph to_mask(const TimelinessGraph& g) {
  MaskGraph m;
  for (ProcessId p : g.nodes()) m.nodes |= 1u << p;
  for (const auto& [from, to] : g.edges()) m.adj[from] |= 1u << to;
  return m;
}

template <typename Emit>
void for_each_edge_subset(const std::vector<ProcessId>& nodes, Emit&& emit) {
  std::vector<Edge> slots;
  for (ProcessId p : nodes) {
    for (ProcessId q : nodes) {
      if (p != q) slots.emplace_back(p, q);
    }
  }
  const std::uint64_t limit = std::uint64_t{1} << slots.size();
  MaskGraph g;
  for (ProcessId p : nodes) g.nodes |= 1u << p;
  for (std::uint64_t bits = 0; bits < limit; ++bits) {
    g.adj.fill(0);
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (bits & (std::uint64_t{1} << i)) g.adj[slots[i].first] |= 1u << slots[i].second;
    }
    emit(g, [&] {
      std::vector<Edge> edges;
      for (std::size_t i = 0; i < slots.size(); ++i) {
        if (bits & (std::uint64_t{1} << i)) edges.push_back(slots[i]);
      }
      return edges;
    });
  }
}

void add_trees(const std::vector<ProcessId>& nodes, std::vector<TimelinessGraph>& out) {
  const std::size_t k = nodes.size();
  for (std::size_t r = 0; r < k; ++r) {
    // parent[i] is an index into nodes; the root keeps itself.
    std::vector<std::size_t> parent(k, 0);
    std::vector<std::size_t> others;
    for (std::size_t i = 0; i < k; ++i) {
      if (i != r) others.push_back(i);
    }
    std::size_t combos = 1;
    for (std::size_t i = 0; i < others.size(); ++i) combos *= k;
    for (std::size_t code = 0; code < combos; ++code) {
      std::size_t c = code;
      bool ok = true;
      for (std::size_t i : others) {
        parent[i] = c % k;
        c /= k;
        if (parent[i] == i) ok = false;
      }
      if (!ok) continue;
      for (std::size_t i : others) {
        std::size_t walk = i;
        for (std::size_t steps = 0; walk != r && steps <= k; ++steps) walk = parent[walk];
        if (walk != r) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      std::vector<Edge> edges;
      for (std::size_t i : others) edges.emplace_back(nodes[parent[i]], nodes[i]);
      out.push_back(make_graph(nodes, std::move(edges)));
    }
  }
}

void add_rings(const std::vector<ProcessId>& nodes, std::vector<TimelinessGraph>& out) {
  if (nodes.size() < 2) return;
  std::vector<ProcessId> order(nodes.begin() + 1, nodes.end());
  do {
    std::vector<Edge> edges;
    ProcessId prev = nodes.front();
    for (ProcessId p : order) {
      edges.emplace_back(prev, p);
      prev = p;
    }
    edges.emplace_back(prev, nodes.front());
    out.push_back(make_graph(nodes, std::move(edges)));
  } while (std::next_permutation(order.begin(), order.end()));
}

}  // namespace

std::string_view to_string(FamilyName name) {
  for (const auto& [value, text] : kNames) {
    if (value == name) return text;
  }
  return "CUSTOM";
}

FamilyName parse_family_name(std::string_view text) {
  for (const auto& [value, name] : kNames) {
    if (name == text) return value;
  }
  throw std::invalid_argument("unknown family '" + std::string(text) + "'");
}

std::optional<MemberIndex> GraphFamily::index_of(const TimelinessGraph& g) const {
  auto it = std::lower_bound(members.begin(), members.end(), g);
  if (it == members.end() || *it != g) return std::nullopt;
  return static_cast<MemberIndex>(it - members.begin());
}

GraphFamily make_custom_family(std::size_t n, std::vector<TimelinessGraph> members) {
  for (const auto& g : members) {
    if (!g.nodes().empty() && g.nodes().back() >= n) {
      throw StructuralError("family member " + g.to_string() + " has a node outside [0," +
                            std::to_string(n) + ")");
    }
  }
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return GraphFamily{FamilyName::Custom, n, std::move(members)};
}

GraphFamily generate_family(FamilyName name, std::size_t n) {
  if (name == FamilyName::Custom) throw std::invalid_argument("CUSTOM families cannot be generated");
  if (n == 0) throw std::invalid_argument("family universe must contain at least one process");
  if (n > kEnumerationCap) {
    throw CapacityError("family over " + std::to_string(n) + " processes exceeds cap " +
                        std::to_string(kEnumerationCap));
  }
  std::vector<TimelinessGraph> members;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    const auto nodes = nodes_of(mask);
    switch (name) {
      case FamilyName::Async:
        members.push_back(make_graph(nodes, {}));
        break;
      case FamilyName::Complete: {
        std::vector<Edge> edges;
        for (ProcessId p : nodes) {
          for (ProcessId q : nodes) {
            if (p != q) edges.emplace_back(p, q);
          }
        }
        members.push_back(make_graph(nodes, std::move(edges)));
        break;
      }
      case FamilyName::Star:
        for (ProcessId center : nodes) {
          std::vector<Edge> edges;
          for (ProcessId q : nodes) {
            if (q != center) edges.emplace_back(center, q);
          }
          members.push_back(make_graph(nodes, std::move(edges)));
        }
        break;
      case FamilyName::Pair:
        for (std::size_t i = 0; i < nodes.size(); ++i) {
          for (std::size_t j = i + 1; j < nodes.size(); ++j) {
            members.push_back(make_graph(nodes, {{nodes[i], nodes[j]}, {nodes[j], nodes[i]}}));
          }
        }
        break;
      case FamilyName::Ring:
        add_rings(nodes, members);
        break;
      case FamilyName::Tree:
        add_trees(nodes, members);
        break;
      case FamilyName::SC:
      case FamilyName::BIC: {
        const bool need_bic = name == FamilyName::BIC;
        for_each_edge_subset(nodes, [&](const MaskGraph& g, auto&& edges) {
          if (!mask_strongly_connected(g)) return;
          if (need_bic && !mask_biconnected(g)) return;
          members.push_back(make_graph(nodes, edges()));
        });
        break;
      }
      case FamilyName::Custom:
        break;
    }
  }
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return GraphFamily{name, n, std::move(members)};
}

ClosureReport is_dicut_closed(const GraphFamily& family) {
  ClosureReport report;
  for (const auto& member : family.members) {
    for (auto& reduced : dicut_reductions(member)) {
      if (family.contains(reduced)) continue;
      ++report.violations;
      report.closed = false;
      const bool better = !report.witness || reduced < report.witness->reduced ||
                          (reduced == report.witness->reduced && member < report.witness->member);
      if (!better) continue;
      Dicut cut;
      cut.x_side = reduced.nodes();
      std::set_difference(member.nodes().begin(), member.nodes().end(), reduced.nodes().begin(),
                          reduced.nodes().end(), std::back_inserter(cut.y_side));
      report.witness = ClosureWitness{member, std::move(cut), std::move(reduced)};
    }
  }
  return report;
}

bool is_biconnected(const TimelinessGraph& g) {
  if (g.nodes().empty()) return true;
  if (g.nodes().back() >= kEnumerationCap) {
    throw CapacityError("biconnectivity check limited to process ids below " +
                        std::to_string(kEnumerationCap));
  }
  return mask_biconnected(to_mask(g));
}

}  // namespace tgx
