#include "mcs/postprocess.hpp"

#include <algorithm>

namespace mcs {

namespace {

// Children lists restricted to the tree, plus a topological order of tree
// nodes (parents before children) derived by chasing parent chains.
struct TreeView {
  std::vector<std::vector<NodeId>> children;
  std::vector<NodeId> order;  // root first
};

TreeView tree_view(const ColoredDag& g, const SubtreeSolution& t) {
  const int n = g.node_count();
  TreeView view;
  view.children.assign(n, {});
  std::vector<int> depth(n, -1);
  depth[g.root()] = 0;

  auto resolve_depth = [&](NodeId v) {
    std::vector<NodeId> chain;
    NodeId cur = v;
    while (depth[cur] < 0) {
      chain.push_back(cur);
      cur = t.parent[cur];
    }
    int d = depth[cur];
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) depth[*it] = ++d;
  };

  for (NodeId v = 0; v < n; ++v) {
    if (!t.in_tree(v)) continue;
    if (v != g.root()) view.children[t.parent[v]].push_back(v);
    resolve_depth(v);
    view.order.push_back(v);
  }
  std::sort(view.order.begin(), view.order.end(),
            [&](NodeId a, NodeId b) { return depth[a] < depth[b]; });
  return view;
}

}  // namespace

std::vector<double> rds_scores(const ColoredDag& g, const SubtreeSolution& t) {
  TreeView view = tree_view(g, t);
  std::vector<double> d(g.node_count(), 0.0);
  for (auto it = view.order.rbegin(); it != view.order.rend(); ++it) {
    NodeId u = *it;
    double sum = 0.0;
    for (NodeId v : view.children[u]) sum += std::max(0.0, *g.edge_weight(u, v) + d[v]);
    d[u] = sum;
  }
  return d;
}

SubtreeSolution remove_dangling_edges(const ColoredDag& g, const SubtreeSolution& t) {
  TreeView view = tree_view(g, t);
  const int n = g.node_count();
  std::vector<int> child_count(n, 0);
  for (NodeId v = 0; v < n; ++v) child_count[v] = static_cast<int>(view.children[v].size());

  SubtreeSolution out = t;
  std::vector<NodeId> worklist;
  for (NodeId v : view.order)
    if (child_count[v] == 0 && v != g.root()) worklist.push_back(v);

  while (!worklist.empty()) {
    NodeId leaf = worklist.back();
    worklist.pop_back();
    if (!out.in_tree(leaf) || child_count[leaf] != 0 || leaf == g.root()) continue;
    NodeId p = out.parent[leaf];
    double w = *g.edge_weight(p, leaf);
    if (w >= 0) continue;
    out.parent[leaf] = kNotInTree;
    out.score -= w;
    if (--child_count[p] == 0 && p != g.root()) worklist.push_back(p);
  }
  return out;
}

SubtreeSolution remove_dangling_subtrees(const ColoredDag& g, const SubtreeSolution& t) {
  TreeView view = tree_view(g, t);
  std::vector<double> d = rds_scores(g, t);

  SubtreeSolution out = SubtreeSolution::root_only(g);
  // top-down: keep a child edge only when it pays for itself including its
  // best-pruned subtree; nodes below a cut edge vanish with it
  std::vector<NodeId> stack{g.root()};
  while (!stack.empty()) {
    NodeId u = stack.back();
    stack.pop_back();
    for (NodeId v : view.children[u]) {
      double w = *g.edge_weight(u, v);
      if (w + d[v] < 0) continue;
      out.parent[v] = u;
      out.score += w;
      stack.push_back(v);
    }
  }
  return out;
}

}  // namespace mcs
