#include "mcs/heuristics.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <vector>

#include "mcs/postprocess.hpp"

namespace mcs {

std::string_view solver_name(Solver s) {
  switch (s) {
    case Solver::Kruskal: return "kruskal";
    case Solver::Prim: return "prim";
    case Solver::Insertion: return "insertion";
    case Solver::TopDown: return "topdown";
    case Solver::CriticalPath1: return "cp1";
    case Solver::CriticalPath2: return "cp2";
    case Solver::CriticalPath3: return "cp3";
    case Solver::Maximum: return "max";
    case Solver::Exact: return "exact";
  }
  return "?";
}

std::optional<Solver> solver_from_name(std::string_view name) {
  for (Solver s : {Solver::Kruskal, Solver::Prim, Solver::Insertion, Solver::TopDown,
                   Solver::CriticalPath1, Solver::CriticalPath2, Solver::CriticalPath3,
                   Solver::Maximum, Solver::Exact}) {
    if (solver_name(s) == name) return s;
  }
  return std::nullopt;
}

bool policy_applies_rds(Solver s) {
  return s == Solver::Kruskal || s == Solver::Prim || s == Solver::Insertion ||
         s == Solver::TopDown;
}

namespace {

struct UnionFind {
  std::vector<int> parent, size;

  explicit UnionFind(int n) : parent(n), size(n, 1) {
    std::iota(parent.begin(), parent.end(), 0);
  }

  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];  // path halving
      x = parent[x];
    }
    return x;
  }

  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size[a] < size[b]) std::swap(a, b);
    parent[b] = a;
    size[a] += size[b];
    return true;
  }
};

// Critical-path scores against the current used-color set: S[u] is the best
// weight of a path from u into unused colors, floored at 0. Colors are
// scanned in reverse rank order, so every edge target is already final.
// best_child records the first path edge, -1 when stopping at u is optimal.
struct PathScores {
  std::vector<double> s;
  std::vector<NodeId> best_child;

  explicit PathScores(int n) : s(n, 0.0), best_child(n, -1) {}
};

void compute_path_scores(const ColoredDag& g, const std::vector<char>& used_color,
                         PathScores& ps) {
  for (int rank = g.color_count() - 1; rank >= 0; --rank) {
    for (NodeId u : g.nodes_of_color(g.color_at_rank(rank))) {
      double best = 0.0;
      NodeId child = -1;
      for (const OutEdge& e : g.out_edges(u)) {
        if (used_color[g.color(e.to)]) continue;
        double cand = e.weight + ps.s[e.to];
        if (cand > best) {  // out-edges ascend by target, so ties keep the smaller id
          best = cand;
          child = e.to;
        }
      }
      ps.s[u] = best;
      ps.best_child[u] = child;
    }
  }
}

}  // namespace

SubtreeSolution solve_kruskal(const ColoredDag& g) {
  const int n = g.node_count();

  struct Cand {
    NodeId from, to;
    double w;
  };
  std::vector<Cand> edges;
  edges.reserve(static_cast<size_t>(g.edge_count()));
  g.for_each_edge([&](NodeId u, NodeId v, double w) { edges.push_back({u, v, w}); });
  std::sort(edges.begin(), edges.end(), [](const Cand& a, const Cand& b) {
    if (a.w != b.w) return a.w > b.w;
    if (a.to != b.to) return a.to < b.to;
    return a.from < b.from;
  });

  UnionFind uf(n);
  for (ColorIndex c = 0; c < g.color_count(); ++c) {
    auto nodes = g.nodes_of_color(c);
    for (size_t i = 1; i < nodes.size(); ++i) uf.unite(nodes[0], nodes[i]);
  }

  std::vector<NodeId> accepted_parent(n, -1);
  std::vector<std::vector<NodeId>> accepted_children(n);
  for (const Cand& e : edges) {
    if (accepted_parent[e.to] != -1) continue;
    if (uf.find(e.from) == uf.find(e.to)) continue;
    uf.unite(e.from, e.to);
    accepted_parent[e.to] = e.from;
    accepted_children[e.from].push_back(e.to);
  }

  // the accepted edges form a branching; keep the component of the root
  SubtreeSolution t = SubtreeSolution::root_only(g);
  std::vector<NodeId> stack{g.root()};
  while (!stack.empty()) {
    NodeId u = stack.back();
    stack.pop_back();
    for (NodeId v : accepted_children[u]) {
      t.parent[v] = u;
      t.score += *g.edge_weight(u, v);
      stack.push_back(v);
    }
  }
  return t;
}

SubtreeSolution solve_prim(const ColoredDag& g) {
  struct Cand {
    NodeId from, to;
    double w;
  };
  auto worse = [](const Cand& a, const Cand& b) {
    if (a.w != b.w) return a.w < b.w;
    if (a.to != b.to) return a.to > b.to;
    return a.from > b.from;
  };
  std::priority_queue<Cand, std::vector<Cand>, decltype(worse)> pq(worse);

  SubtreeSolution t = SubtreeSolution::root_only(g);
  std::vector<char> used_color(g.color_count(), 0);
  used_color[g.color(g.root())] = 1;
  auto push_edges = [&](NodeId u) {
    for (const OutEdge& e : g.out_edges(u))
      if (!t.in_tree(e.to) && !used_color[g.color(e.to)]) pq.push({u, e.to, e.weight});
  };
  push_edges(g.root());

  while (!pq.empty()) {
    Cand c = pq.top();
    pq.pop();
    if (t.in_tree(c.to) || used_color[g.color(c.to)]) continue;  // stale entry
    t.parent[c.to] = c.from;
    t.score += c.w;
    used_color[g.color(c.to)] = 1;
    push_edges(c.to);
  }
  return t;
}

SubtreeSolution solve_topdown(const ColoredDag& g) {
  SubtreeSolution t = SubtreeSolution::root_only(g);
  std::vector<char> used_color(g.color_count(), 0);
  used_color[g.color(g.root())] = 1;

  NodeId endpoint = g.root();
  while (true) {
    const OutEdge* best = nullptr;
    for (const OutEdge& e : g.out_edges(endpoint)) {
      if (used_color[g.color(e.to)]) continue;
      if (!best || e.weight > best->weight) best = &e;
    }
    if (best) {
      t.parent[best->to] = endpoint;
      t.score += best->weight;
      used_color[g.color(best->to)] = 1;
      endpoint = best->to;
    } else if (endpoint != g.root()) {
      endpoint = g.root();  // dead end: start the next path at the root
    } else {
      break;
    }
  }
  return t;
}

SubtreeSolution solve_insertion(const ColoredDag& g) {
  const int n = g.node_count();
  SubtreeSolution t = SubtreeSolution::root_only(g);
  std::vector<char> in_tree(n, 0);
  in_tree[g.root()] = 1;
  std::vector<char> used_color(g.color_count(), 0);
  used_color[g.color(g.root())] = 1;

  // in(v): best attachment edge weight from the tree (valid when has_in);
  // out(v): total gain from rerouting current tree edges through v;
  // parent_weight: weight of the tree edge into each tree node.
  std::vector<double> in_score(n, 0.0), out_score(n, 0.0), parent_weight(n, 0.0);
  std::vector<char> has_in(n, 0);
  for (const OutEdge& e : g.out_edges(g.root())) {
    in_score[e.to] = e.weight;
    has_in[e.to] = 1;
  }

  while (true) {
    NodeId v = -1;
    double best_gain = 0.0;
    for (NodeId cand = 0; cand < n; ++cand) {
      if (in_tree[cand] || !has_in[cand] || used_color[g.color(cand)]) continue;
      double gain = in_score[cand] + out_score[cand];
      if (v == -1 || gain > best_gain) {
        v = cand;
        best_gain = gain;
      }
    }
    if (v == -1) break;

    // optimal tree parent: maximum w(uv), ties to the smaller source id
    NodeId parent = -1;
    double wpv = 0.0;
    for (const InEdge& e : g.in_edges(v)) {
      if (!in_tree[e.from]) continue;
      if (parent == -1 || e.weight > wpv) {
        parent = e.from;
        wpv = e.weight;
      }
    }
    t.parent[v] = parent;
    t.score += wpv;
    parent_weight[v] = wpv;
    used_color[g.color(v)] = 1;

    // reroute existing tree edges through v where that improves them,
    // adjusting each affected out(u) term exactly
    for (const OutEdge& e : g.out_edges(v)) {
      NodeId x = e.to;
      if (!in_tree[x] || x == g.root()) continue;
      if (e.weight > parent_weight[x]) {
        double w_old = parent_weight[x], w_new = e.weight;
        t.parent[x] = v;
        t.score += w_new - w_old;
        parent_weight[x] = w_new;
        for (const InEdge& ie : g.in_edges(x)) {
          double delta = std::max(0.0, ie.weight - w_new) - std::max(0.0, ie.weight - w_old);
          if (delta != 0.0) out_score[ie.from] += delta;
        }
      }
    }
    in_tree[v] = 1;

    // v joined the tree: account for its rerouting term and attachment edges
    for (const InEdge& ie : g.in_edges(v)) {
      out_score[ie.from] += std::max(0.0, ie.weight - wpv);
    }
    for (const OutEdge& e : g.out_edges(v)) {
      if (!has_in[e.to] || e.weight > in_score[e.to]) {
        in_score[e.to] = e.weight;
        has_in[e.to] = 1;
      }
    }
  }
  return t;
}

SubtreeSolution solve_critical_path_1(const ColoredDag& g) {
  const int n = g.node_count();
  SubtreeSolution t = SubtreeSolution::root_only(g);
  std::vector<char> used_color(g.color_count(), 0);
  used_color[g.color(g.root())] = 1;
  PathScores ps(n);

  while (true) {
    compute_path_scores(g, used_color, ps);
    NodeId start = -1;
    double best = 0.0;
    for (NodeId u = 0; u < n; ++u) {
      if (!t.in_tree(u)) continue;
      if (ps.s[u] > best) {
        best = ps.s[u];
        start = u;
      }
    }
    if (start == -1) break;  // best path score is 0: nothing left to gain

    NodeId cur = start, next = ps.best_child[start];
    while (next != -1) {
      t.parent[next] = cur;
      t.score += *g.edge_weight(cur, next);
      used_color[g.color(next)] = 1;
      cur = next;
      next = ps.best_child[cur];
    }
  }
  return t;
}

SubtreeSolution solve_critical_path_2(const ColoredDag& g) {
  const int n = g.node_count();
  SubtreeSolution t = SubtreeSolution::root_only(g);
  std::vector<char> used_color(g.color_count(), 0);
  used_color[g.color(g.root())] = 1;
  PathScores ps(n);

  while (true) {
    compute_path_scores(g, used_color, ps);
    NodeId start = -1;
    double best = 0.0;
    for (NodeId u = 0; u < n; ++u) {
      if (!t.in_tree(u)) continue;
      if (ps.s[u] > best) {
        best = ps.s[u];
        start = u;
      }
    }
    if (start == -1) break;

    NodeId v = ps.best_child[start];  // only the first edge of the path
    t.parent[v] = start;
    t.score += *g.edge_weight(start, v);
    used_color[g.color(v)] = 1;
  }
  return t;
}

SubtreeSolution solve_critical_path_3(const ColoredDag& g) {
  const int n = g.node_count();
  SubtreeSolution t = SubtreeSolution::root_only(g);
  std::vector<char> in_tree(n, 0);
  in_tree[g.root()] = 1;
  std::vector<char> used_color(g.color_count(), 0);
  used_color[g.color(g.root())] = 1;
  std::vector<double> out_score(n, 0.0), parent_weight(n, 0.0);
  PathScores ps(n);

  while (true) {
    compute_path_scores(g, used_color, ps);

    // best edge (u,v) by attachment gain plus the path score below v
    NodeId best_u = -1, best_v = -1;
    double best_val = 0.0, best_w = 0.0;
    for (NodeId u = 0; u < n; ++u) {
      if (!in_tree[u]) continue;
      for (const OutEdge& e : g.out_edges(u)) {
        NodeId v = e.to;
        if (used_color[g.color(v)]) continue;
        double val = e.weight + out_score[v] + ps.s[v];
        bool better = best_v == -1 ? val > 0.0
                                   : (val > best_val ||
                                      (val == best_val &&
                                       (v < best_v || (v == best_v && u < best_u))));
        if (better) {
          best_u = u;
          best_v = v;
          best_val = val;
          best_w = e.weight;
        }
      }
    }
    if (best_v == -1) break;  // no positive total gain left

    NodeId v = best_v;
    t.parent[v] = best_u;
    t.score += best_w;
    parent_weight[v] = best_w;
    used_color[g.color(v)] = 1;

    for (const OutEdge& e : g.out_edges(v)) {
      NodeId x = e.to;
      if (!in_tree[x] || x == g.root()) continue;
      if (e.weight > parent_weight[x]) {
        double w_old = parent_weight[x], w_new = e.weight;
        t.parent[x] = v;
        t.score += w_new - w_old;
        parent_weight[x] = w_new;
        for (const InEdge& ie : g.in_edges(x)) {
          double delta = std::max(0.0, ie.weight - w_new) - std::max(0.0, ie.weight - w_old);
          if (delta != 0.0) out_score[ie.from] += delta;
        }
      }
    }
    in_tree[v] = 1;
    for (const InEdge& ie : g.in_edges(v)) {
      out_score[ie.from] += std::max(0.0, ie.weight - parent_weight[v]);
    }
  }
  return t;
}

SubtreeSolution solve_heuristic(const ColoredDag& g, Solver s) {
  switch (s) {
    case Solver::Kruskal: return solve_kruskal(g);
    case Solver::Prim: return solve_prim(g);
    case Solver::Insertion: return solve_insertion(g);
    case Solver::TopDown: return solve_topdown(g);
    case Solver::CriticalPath1: return solve_critical_path_1(g);
    case Solver::CriticalPath2: return solve_critical_path_2(g);
    case Solver::CriticalPath3: return solve_critical_path_3(g);
    default: throw std::invalid_argument("solve_heuristic: not a heuristic solver");
  }
}

MaximumResult solve_maximum(const ColoredDag& g) {
  MaximumResult result;
  bool first = true;
  for (int i = 0; i < kHeuristicCount; ++i) {
    Solver s = kHeuristics[i];
    SubtreeSolution t = solve_heuristic(g, s);
    if (policy_applies_rds(s)) t = remove_dangling_subtrees(g, t);
    result.scores[i] = t.score;
    if (first || t.score > result.best.score) {
      result.best = std::move(t);
      result.best_solver = s;
      first = false;
    }
  }
  return result;
}

}  // namespace mcs
