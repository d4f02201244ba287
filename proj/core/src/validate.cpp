#include "mcs/validate.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <sstream>

namespace mcs {

const char* property_name(GraphProperty p) {
  switch (p) {
    case GraphProperty::Acyclic: return "acyclic";
    case GraphProperty::UniqueSource: return "unique_source";
    case GraphProperty::Transitive: return "transitive";
    case GraphProperty::OrderPreserving: return "order_preserving";
  }
  return "?";
}

std::string ValidationReport::to_string() const {
  std::ostringstream os;
  for (const Violation& v : violations) {
    os << property_name(v.property) << ": " << v.detail << "\n";
  }
  return os.str();
}

namespace {

// Kahn peeling; nodes left over sit on cycles.
std::vector<NodeId> nodes_on_cycles(const ColoredDag& g) {
  const int n = g.node_count();
  std::vector<int> indeg(n, 0);
  for (NodeId v = 0; v < n; ++v) indeg[v] = static_cast<int>(g.in_edges(v).size());
  std::deque<NodeId> queue;
  for (NodeId v = 0; v < n; ++v)
    if (indeg[v] == 0) queue.push_back(v);
  int peeled = 0;
  while (!queue.empty()) {
    NodeId u = queue.front();
    queue.pop_front();
    ++peeled;
    for (const OutEdge& e : g.out_edges(u))
      if (--indeg[e.to] == 0) queue.push_back(e.to);
  }
  std::vector<NodeId> cyclic;
  if (peeled < n) {
    for (NodeId v = 0; v < n; ++v)
      if (indeg[v] > 0) cyclic.push_back(v);
  }
  return cyclic;
}

std::vector<bool> reachable_from(const ColoredDag& g, NodeId start) {
  std::vector<bool> seen(g.node_count(), false);
  std::vector<NodeId> stack{start};
  seen[start] = true;
  while (!stack.empty()) {
    NodeId u = stack.back();
    stack.pop_back();
    for (const OutEdge& e : g.out_edges(u)) {
      if (!seen[e.to]) {
        seen[e.to] = true;
        stack.push_back(e.to);
      }
    }
  }
  return seen;
}

}  // namespace

ValidationReport validate_graph(const ColoredDag& g, const PropertyFlags& flags) {
  ValidationReport report;
  const int n = g.node_count();

  if (flags.acyclic) {
    for (NodeId v : nodes_on_cycles(g)) {
      report.violations.push_back(
          {GraphProperty::Acyclic, v, -1, "node " + std::to_string(v) + " lies on a cycle"});
    }
  }

  if (flags.unique_source) {
    std::vector<bool> seen = reachable_from(g, g.root());
    for (NodeId v = 0; v < n; ++v) {
      if (!seen[v])
        report.violations.push_back({GraphProperty::UniqueSource, v, -1,
                                     "node " + std::to_string(v) + " unreachable from root"});
    }
    if (!g.in_edges(g.root()).empty())
      report.violations.push_back(
          {GraphProperty::UniqueSource, g.root(), -1, "root has incoming edges"});
  }

  if (flags.transitive) {
    std::set<std::pair<NodeId, NodeId>> missing;
    for (NodeId u = 0; u < n; ++u) {
      for (const OutEdge& uv : g.out_edges(u)) {
        for (const OutEdge& vw : g.out_edges(uv.to)) {
          if (vw.to != u && !g.has_edge(u, vw.to)) missing.insert({u, vw.to});
        }
      }
    }
    for (auto [u, w] : missing) {
      report.violations.push_back({GraphProperty::Transitive, u, w,
                                   "missing shortcut edge (" + std::to_string(u) + "," +
                                       std::to_string(w) + ")"});
    }
  }

  if (flags.order_preserving) {
    for (NodeId u = 0; u < n; ++u) {
      for (const OutEdge& e : g.out_edges(u)) {
        if (g.rank_of(u) >= g.rank_of(e.to))
          report.violations.push_back({GraphProperty::OrderPreserving, u, e.to,
                                       "edge (" + std::to_string(u) + "," + std::to_string(e.to) +
                                           ") does not increase color rank"});
      }
    }
  }

  return report;
}

ColoredDag transitive_closure(const ColoredDag& g,
                              const std::function<double(NodeId, NodeId)>& weight_rule) {
  const int n = g.node_count();
  DagBuilder b;
  for (const ColorId& c : g.color_table()) b.add_color(c.index, c.rank);
  for (NodeId v = 0; v < n; ++v) b.add_node(g.color(v), g.label(v));
  b.set_root(g.root());

  for (NodeId u = 0; u < n; ++u) {
    std::vector<bool> seen = reachable_from(g, u);
    for (NodeId v = 0; v < n; ++v) {
      if (v == u || !seen[v]) continue;
      if (auto w = g.edge_weight(u, v))
        b.add_edge(u, v, *w);
      else
        b.add_edge(u, v, weight_rule(u, v));
    }
  }
  return b.build();
}

ColoredDag attach_superroot(const ColoredDag& g, NodeId desired_root, double bonus) {
  if (desired_root < 0 || desired_root >= g.node_count())
    throw GraphError("attach_superroot: node " + std::to_string(desired_root) + " does not exist");

  const int k = g.color_count();
  DagBuilder b;
  // fresh color, ordered before every existing color
  for (const ColorId& c : g.color_table()) b.add_color(c.index, c.rank + 1);
  b.add_color(k, 0);

  for (NodeId v = 0; v < g.node_count(); ++v) b.add_node(g.color(v), g.label(v));
  NodeId superroot = b.add_node(k, "superroot");
  g.for_each_edge([&](NodeId u, NodeId v, double w) { b.add_edge(u, v, w); });
  b.add_edge(superroot, desired_root, bonus);
  b.set_root(superroot);
  return b.build();
}

double tree_score(const ColoredDag& g, const SubtreeSolution& t) {
  double total = 0.0;
  t.for_each_edge([&](NodeId u, NodeId v) {
    auto w = g.edge_weight(u, v);
    if (!w)
      throw GraphError("tree edge (" + std::to_string(u) + "," + std::to_string(v) +
                       ") is not an edge of the graph");
    total += *w;
  });
  return total;
}

std::vector<std::string> tree_violations(const ColoredDag& g, const SubtreeSolution& t) {
  std::vector<std::string> problems;
  const int n = g.node_count();

  if (static_cast<int>(t.parent.size()) != n) {
    problems.push_back("parent map size does not match the graph");
    return problems;
  }
  if (t.parent[g.root()] != kTreeRoot) problems.push_back("root is not marked as the tree root");
  for (NodeId v = 0; v < n; ++v) {
    if (v != g.root() && t.parent[v] == kTreeRoot)
      problems.push_back("node " + std::to_string(v) + " marked as root but is not g.root");
  }

  // every edge present in g, connectivity via parent chains
  double recomputed = 0.0;
  std::vector<int> state(n, 0);  // 0 unknown, 1 on current chain, 2 verified
  for (NodeId v = 0; v < n; ++v) {
    if (!t.in_tree(v)) continue;
    if (v != g.root()) {
      NodeId p = t.parent[v];
      if (p < 0 || p >= n || !t.in_tree(p)) {
        problems.push_back("node " + std::to_string(v) + " has a parent outside the tree");
        continue;
      }
      auto w = g.edge_weight(p, v);
      if (!w) {
        problems.push_back("tree edge (" + std::to_string(p) + "," + std::to_string(v) +
                           ") missing from the graph");
        continue;
      }
      recomputed += *w;
    }
    // walk to the root, guarding against stray cycles in the parent map
    NodeId cur = v;
    std::vector<NodeId> chain;
    while (cur != g.root() && state[cur] == 0) {
      state[cur] = 1;
      chain.push_back(cur);
      NodeId p = t.parent[cur];
      if (p < 0 || p >= n || !t.in_tree(p)) break;
      cur = p;
    }
    if (state[cur] == 1 && cur != g.root()) {
      problems.push_back("parent chain of node " + std::to_string(v) + " never reaches the root");
    }
    for (NodeId c : chain) state[c] = 2;
  }

  std::vector<NodeId> color_owner(g.color_count(), -1);
  for (NodeId v = 0; v < n; ++v) {
    if (!t.in_tree(v)) continue;
    ColorIndex c = g.color(v);
    if (color_owner[c] != -1)
      problems.push_back("nodes " + std::to_string(color_owner[c]) + " and " + std::to_string(v) +
                         " share color " + std::to_string(c));
    color_owner[c] = v;
  }

  if (std::abs(recomputed - t.score) > 1e-9)
    problems.push_back("stored score " + std::to_string(t.score) +
                       " differs from recomputed " + std::to_string(recomputed));
  return problems;
}

}  // namespace mcs
