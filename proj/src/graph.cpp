#include "tgx/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <deque>

namespace tgx {

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  void expect(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) != token) {
      throw StructuralError("graph text: expected '" + std::string(token) + "' at offset " +
                            std::to_string(pos_) + " in '" + std::string(text_) + "'");
    }
    pos_ += token.size();
  }
  ProcessId number() {
    skip_space();
    ProcessId value = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
    if (ec != std::errc()) {
      throw StructuralError("graph text: expected process id at offset " + std::to_string(pos_));
    }
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return value;
  }
  bool done() {
    skip_space();
    return pos_ == text_.size();
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

bool TimelinessGraph::has_node(ProcessId p) const {
  return std::binary_search(nodes_.begin(), nodes_.end(), p);
}

bool TimelinessGraph::has_edge(ProcessId from, ProcessId to) const {
  return std::binary_search(edges_.begin(), edges_.end(), Edge{from, to});
}

std::vector<ProcessId> TimelinessGraph::successors(ProcessId p) const {
  std::vector<ProcessId> out;
  auto it = std::lower_bound(edges_.begin(), edges_.end(), Edge{p, 0});
  for (; it != edges_.end() && it->first == p; ++it) out.push_back(it->second);
  return out;
}

std::vector<ProcessId> TimelinessGraph::predecessors(ProcessId p) const {
  std::vector<ProcessId> out;
  for (const auto& [from, to] : edges_) {
    if (to == p) out.push_back(from);
  }
  return out;
}

std::string TimelinessGraph::to_string() const {
  std::string out = "nodes:[";
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(nodes_[i]);
  }
  out += "];edges:[";
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (i) out += ',';
    out += '(' + std::to_string(edges_[i].first) + ',' + std::to_string(edges_[i].second) + ')';
  }
  out += ']';
  return out;
}

TimelinessGraph TimelinessGraph::parse(std::string_view text) {
  Cursor cur(text);
  std::vector<ProcessId> nodes;
  std::vector<Edge> edges;
  cur.expect("nodes:[");
  if (!cur.peek(']')) {
    do {
      nodes.push_back(cur.number());
    } while (cur.peek(',') && (cur.expect(","), true));
  }
  cur.expect("]");
  cur.expect(";");
  cur.expect("edges:[");
  if (!cur.peek(']')) {
    do {
      cur.expect("(");
      ProcessId from = cur.number();
      cur.expect(",");
      ProcessId to = cur.number();
      cur.expect(")");
      edges.emplace_back(from, to);
    } while (cur.peek(',') && (cur.expect(","), true));
  }
  cur.expect("]");
  if (!cur.done()) throw StructuralError("graph text: trailing characters in '" + std::string(text) + "'");
  return make_graph(std::move(nodes), std::move(edges));
}

TimelinessGraph make_graph(std::vector<ProcessId> nodes, std::vector<Edge> edges) {
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  for (const auto& [from, to] : edges) {
    if (from == to) {
      throw StructuralError("self-loop on process " + std::to_string(from));
    }
    if (!std::binary_search(nodes.begin(), nodes.end(), from) ||
        !std::binary_search(nodes.begin(), nodes.end(), to)) {
      throw StructuralError("edge (" + std::to_string(from) + "," + std::to_string(to) +
                            ") has an endpoint outside the node set");
    }
  }
  TimelinessGraph g;
  g.nodes_ = std::move(nodes);
  g.edges_ = std::move(edges);
  return g;
}

TimelinessGraph induced_subgraph(const TimelinessGraph& g, std::span<const ProcessId> keep) {
  std::vector<ProcessId> wanted(keep.begin(), keep.end());
  std::sort(wanted.begin(), wanted.end());
  std::vector<ProcessId> nodes;
  std::set_intersection(g.nodes().begin(), g.nodes().end(), wanted.begin(), wanted.end(),
                        std::back_inserter(nodes));
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) {
    if (std::binary_search(nodes.begin(), nodes.end(), e.first) &&
        std::binary_search(nodes.begin(), nodes.end(), e.second)) {
      edges.push_back(e);
    }
  }
  return make_graph(std::move(nodes), std::move(edges));
}

bool is_dicut(const TimelinessGraph& g, const Dicut& d) {
  std::vector<ProcessId> x = d.x_side;
  std::vector<ProcessId> y = d.y_side;
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  std::vector<ProcessId> both;
  std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(both));
  std::vector<ProcessId> all;
  std::merge(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(all));
  if (!both.empty() || all != g.nodes()) {
    throw StructuralError("dicut sides do not partition the node set of " + g.to_string());
  }
  for (const auto& [from, to] : g.edges()) {
    if (std::binary_search(y.begin(), y.end(), from) && std::binary_search(x.begin(), x.end(), to)) {
      return false;
    }
  }
  return true;
}

std::vector<TimelinessGraph> dicut_reductions(const TimelinessGraph& g) {
  const auto& nodes = g.nodes();
  const std::size_t k = nodes.size();
  if (k > kEnumerationCap) {
    throw CapacityError("dicut enumeration over " + std::to_string(k) + " nodes exceeds cap " +
                        std::to_string(kEnumerationCap));
  }
  std::vector<TimelinessGraph> out;
  if (k < 2) return out;
  const std::uint32_t full = (1u << k) - 1;
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    std::vector<ProcessId> x;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask & (1u << i)) x.push_back(nodes[i]);
    }
    bool crossing = false;
    for (const auto& [from, to] : g.edges()) {
      if (!std::binary_search(x.begin(), x.end(), from) && std::binary_search(x.begin(), x.end(), to)) {
        crossing = true;
        break;
      }
    }
    if (!crossing) out.push_back(induced_subgraph(g, x));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_compatible(const TimelinessGraph& g, const TimelinessGraph& h) {
  return g.nodes() == h.nodes() &&
         std::includes(h.edges().begin(), h.edges().end(), g.edges().begin(), g.edges().end());
}

std::strong_ordering graph_order(const TimelinessGraph& g, const TimelinessGraph& h) { return g <=> h; }

bool reaches_all(const TimelinessGraph& g, ProcessId from) {
  if (!g.has_node(from)) return false;
  std::vector<ProcessId> seen{from};
  std::deque<ProcessId> frontier{from};
  while (!frontier.empty()) {
    ProcessId p = frontier.front();
    frontier.pop_front();
    for (ProcessId q : g.successors(p)) {
      if (std::find(seen.begin(), seen.end(), q) == seen.end()) {
        seen.push_back(q);
        frontier.push_back(q);
      }
    }
  }
  return seen.size() == g.node_count();
}

bool is_strongly_connected(const TimelinessGraph& g) {
  return std::all_of(g.nodes().begin(), g.nodes().end(), [&](ProcessId p) { return reaches_all(g, p); });
}

std::optional<ProcessId> root_of(const TimelinessGraph& g) {
  for (ProcessId p : g.nodes()) {
    if (reaches_all(g, p)) return p;
  }
  return std::nullopt;
}

}  // namespace tgx
