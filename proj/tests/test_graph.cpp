#include <gtest/gtest.h>

#include <algorithm>
#include <vector>

#include "tgx/graph.hpp"

using namespace tgx;

namespace {

TimelinessGraph ring3() { return make_graph({0, 1, 2}, {{0, 1}, {1, 2}, {2, 0}}); }
TimelinessGraph pair_graph() { return make_graph({0, 1, 2}, {{1, 2}, {2, 1}}); }

// Every graph over nonempty subsets of {0..n-1}.
std::vector<TimelinessGraph> all_graphs(ProcessId n) {
  std::vector<TimelinessGraph> out;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<ProcessId> nodes;
    for (ProcessId p = 0; p < n; ++p) {
      if (mask >> p & 1u) nodes.push_back(p);
    }
    std::vector<Edge> slots;
    for (ProcessId a : nodes) {
      for (ProcessId b : nodes) {
        if (a != b) slots.emplace_back(a, b);
      }
    }
    for (unsigned e = 0; e < (1u << slots.size()); ++e) {
      std::vector<Edge> edges;
      for (std::size_t i = 0; i < slots.size(); ++i) {
        if (e >> i & 1u) edges.push_back(slots[i]);
      }
      out.push_back(make_graph(nodes, edges));
    }
  }
  return out;
}

}  // namespace

TEST(MakeGraph, CanonicalizesAndCounts) {
  const auto g = pair_graph();
  EXPECT_EQ(g.node_count(), 3u);
  EXPECT_EQ(g.edges().size(), 2u);
  EXPECT_EQ(make_graph({2, 0, 1, 0}, {{2, 1}, {1, 2}, {1, 2}}), g);
  EXPECT_EQ(make_graph(g.nodes(), g.edges()), g);
}

TEST(MakeGraph, SingleNode) {
  const auto g = make_graph({0}, {});
  EXPECT_EQ(g.node_count(), 1u);
  EXPECT_TRUE(g.edges().empty());
}

TEST(MakeGraph, RejectsSelfLoopAndDanglingEdge) {
  EXPECT_THROW(make_graph({0, 1}, {{0, 0}}), StructuralError);
  EXPECT_THROW(make_graph({0, 1}, {{0, 2}}), StructuralError);
}

TEST(GraphText, RoundTrip) {
  const auto g = pair_graph();
  EXPECT_EQ(g.to_string(), "nodes:[0,1,2];edges:[(1,2),(2,1)]");
  EXPECT_EQ(TimelinessGraph::parse(g.to_string()), g);
  EXPECT_EQ(TimelinessGraph::parse("nodes:[3];edges:[]"), make_graph({3}, {}));
  EXPECT_THROW(TimelinessGraph::parse("nodes:[0,1];edges:[(0,5)]"), StructuralError);
}

TEST(InducedSubgraph, Examples) {
  EXPECT_EQ(induced_subgraph(pair_graph(), std::vector<ProcessId>{0}), make_graph({0}, {}));
  EXPECT_EQ(induced_subgraph(ring3(), std::vector<ProcessId>{0, 1}), make_graph({0, 1}, {{0, 1}}));
  EXPECT_EQ(induced_subgraph(ring3(), std::vector<ProcessId>{1, 7}), make_graph({1}, {}));
}

TEST(InducedSubgraph, IdentityOnOwnNodes) {
  for (const auto& g : all_graphs(3)) EXPECT_EQ(induced_subgraph(g, g.nodes()), g);
}

TEST(IsDicut, Examples) {
  EXPECT_TRUE(is_dicut(pair_graph(), Dicut{{0}, {1, 2}}));
  EXPECT_TRUE(is_dicut(make_graph({0, 1, 2}, {}), Dicut{{1}, {0, 2}}));
  EXPECT_FALSE(is_dicut(ring3(), Dicut{{0}, {1, 2}}));
}

TEST(IsDicut, RejectsNonPartition) {
  EXPECT_THROW(is_dicut(ring3(), Dicut{{0}, {1}}), StructuralError);
  EXPECT_THROW(is_dicut(ring3(), Dicut{{0, 1}, {1, 2}}), StructuralError);
}

TEST(DicutReductions, PairExampleMatchesBruteForce) {
  const auto g = pair_graph();
  const auto r = dicut_reductions(g);
  // Partitions of {0,1,2} with no edge from Y to X: {0}|{1,2} and {1,2}|{0}.
  const std::vector<TimelinessGraph> expected{make_graph({0}, {}), make_graph({1, 2}, {{1, 2}, {2, 1}})};
  EXPECT_EQ(r, expected);
}

TEST(DicutReductions, EmptyForStronglyConnectedAndSingleton) {
  EXPECT_TRUE(dicut_reductions(ring3()).empty());
  EXPECT_TRUE(dicut_reductions(make_graph({4}, {})).empty());
}

TEST(DicutReductions, CapacityError) {
  EXPECT_THROW(dicut_reductions(make_graph({0, 1, 2, 3, 4, 5}, {})), CapacityError);
}

TEST(DicutReductions, EveryReductionIsConfirmedByIsDicut) {
  for (const auto& g : all_graphs(3)) {
    for (const auto& r : dicut_reductions(g)) {
      Dicut d;
      d.x_side = r.nodes();
      for (ProcessId p : g.nodes()) {
        if (!r.has_node(p)) d.y_side.push_back(p);
      }
      ASSERT_FALSE(d.y_side.empty());
      EXPECT_TRUE(is_dicut(g, d)) << g.to_string() << " -> " << r.to_string();
      EXPECT_EQ(induced_subgraph(g, d.x_side), r);
    }
  }
}

TEST(IsCompatible, Examples) {
  EXPECT_TRUE(is_compatible(make_graph({0, 1}, {}), make_graph({0, 1}, {{0, 1}})));
  EXPECT_TRUE(is_compatible(ring3(), ring3()));
  EXPECT_FALSE(is_compatible(make_graph({0, 1}, {{0, 1}}), make_graph({0, 1, 2}, {{0, 1}})));
  EXPECT_FALSE(is_compatible(make_graph({0, 1}, {{1, 0}}), make_graph({0, 1}, {{0, 1}})));
}

TEST(GraphOrder, Examples) {
  EXPECT_EQ(graph_order(make_graph({0}, {}), make_graph({0, 1}, {})), std::strong_ordering::less);
  EXPECT_EQ(graph_order(ring3(), ring3()), std::strong_ordering::equal);
  EXPECT_EQ(graph_order(make_graph({0, 1}, {{0, 1}}), make_graph({0, 1}, {{1, 0}})), std::strong_ordering::less);
}

TEST(GraphOrder, StrictTotalOrderOnSmallGraphs) {
  auto gs = all_graphs(2);
  const auto three = all_graphs(3);
  // All pairs and triples over n=2, plus a sampled slice of n=3.
  for (std::size_t i = 0; i < three.size(); i += 9) gs.push_back(three[i]);
  for (const auto& a : gs) {
    for (const auto& b : gs) {
      const auto ab = graph_order(a, b);
      EXPECT_EQ(ab == std::strong_ordering::equal, a == b);
      EXPECT_EQ(ab == std::strong_ordering::less, graph_order(b, a) == std::strong_ordering::greater);
      if (ab != std::strong_ordering::less) continue;
      for (const auto& c : gs) {
        if (graph_order(b, c) == std::strong_ordering::less) {
          EXPECT_EQ(graph_order(a, c), std::strong_ordering::less);
        }
      }
    }
  }
}

TEST(RootOf, Examples) {
  EXPECT_EQ(root_of(make_graph({0, 1, 2}, {{2, 0}, {2, 1}})), 2u);
  EXPECT_EQ(root_of(make_graph({5}, {})), 5u);
  EXPECT_EQ(root_of(make_graph({0, 1}, {})), std::nullopt);
  EXPECT_EQ(root_of(ring3()), 0u);
}

TEST(Connectivity, StronglyConnected) {
  EXPECT_TRUE(is_strongly_connected(ring3()));
  EXPECT_FALSE(is_strongly_connected(pair_graph()));
  EXPECT_TRUE(reaches_all(make_graph({0, 1, 2}, {{1, 0}, {1, 2}}), 1));
  EXPECT_FALSE(reaches_all(make_graph({0, 1, 2}, {{1, 0}, {1, 2}}), 0));
}

TEST(Neighbors, SuccessorsAndPredecessors) {
  const auto g = make_graph({0, 1, 2}, {{0, 1}, {0, 2}, {2, 1}});
  EXPECT_EQ(g.successors(0), (std::vector<ProcessId>{1, 2}));
  EXPECT_EQ(g.predecessors(1), (std::vector<ProcessId>{0, 2}));
  EXPECT_TRUE(g.successors(1).empty());
}
