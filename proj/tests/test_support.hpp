#pragma once

// Shared fixtures, random-instance generation and independent reference
// implementations used as oracles. Everything here stays deliberately
// naive and separate from the library's solver code paths.

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "mcs/colored_dag.hpp"
#include "mcs/formula.hpp"
#include "mcs/validate.hpp"

namespace mcs::test {

struct InstanceOptions {
  int n_min = 4, n_max = 16;
  int k_min = 3, k_max = 8;
  double edge_prob = 0.5;
  bool transitive = true;
  bool integer_weights = false;
  double weight_min = -5.0, weight_max = 10.0;
};

// Random rooted DAG with order-preserving colors and unique source; the
// root holds the first-ordered color alone. Transitive closure on demand.
inline ColoredDag make_random_instance(std::mt19937_64& rng, const InstanceOptions& opt) {
  int n = std::uniform_int_distribution<int>(opt.n_min, opt.n_max)(rng);
  int k = std::uniform_int_distribution<int>(opt.k_min, opt.k_max)(rng);
  n = std::max(n, 1);
  k = std::max(std::min(k, n), 1);
  if (k == 1) n = 1;  // a lone color can only ever hold the root

  auto draw_weight = [&]() -> double {
    if (opt.integer_weights)
      return std::uniform_int_distribution<int>(static_cast<int>(opt.weight_min),
                                                static_cast<int>(opt.weight_max))(rng);
    return std::uniform_real_distribution<double>(opt.weight_min, opt.weight_max)(rng);
  };

  DagBuilder b;
  for (int c = 0; c < k; ++c) b.add_color(c, c);
  std::vector<ColorIndex> colors(n);
  colors[0] = 0;
  b.add_node(0, "n0");
  for (int v = 1; v < n; ++v) {
    colors[v] = k == 1 ? 0 : std::uniform_int_distribution<int>(1, k - 1)(rng);
    b.add_node(colors[v], "n" + std::to_string(v));
  }
  b.set_root(0);

  std::bernoulli_distribution flip(opt.edge_prob);
  std::vector<std::vector<int>> incoming(n);
  for (int u = 0; u < n; ++u) {
    for (int v = 1; v < n; ++v) {
      if (colors[u] >= colors[v]) continue;
      if (!flip(rng)) continue;
      b.add_edge(u, v, draw_weight());
      incoming[v].push_back(u);
    }
  }
  for (int v = 1; v < n; ++v) {
    if (!incoming[v].empty()) continue;
    std::vector<int> lower;
    for (int u = 0; u < n; ++u)
      if (colors[u] < colors[v]) lower.push_back(u);
    int u = lower[std::uniform_int_distribution<size_t>(0, lower.size() - 1)(rng)];
    b.add_edge(u, v, draw_weight());
  }

  ColoredDag g = b.build();
  if (opt.transitive) g = transitive_closure(g, [&](NodeId, NodeId) { return draw_weight(); });
  return g;
}

// The non-transitive six-node instance where committing whole paths beats
// committing single edges: r->u=2, u->v=1, v->x=3, v->y=2, r->z=5, with v
// and z sharing a color. Optimum 8.
inline ColoredDag small_path_trap_fixture() {
  DagBuilder b;
  for (int c = 0; c < 5; ++c) b.add_color(c, c);
  NodeId r = b.add_node(0, "r");
  NodeId u = b.add_node(1, "u");
  NodeId v = b.add_node(2, "v");
  NodeId x = b.add_node(3, "x");
  NodeId y = b.add_node(4, "y");
  NodeId z = b.add_node(2, "z");
  b.add_edge(r, u, 2.0);
  b.add_edge(u, v, 1.0);
  b.add_edge(v, x, 3.0);
  b.add_edge(v, y, 2.0);
  b.add_edge(r, z, 5.0);
  b.set_root(r);
  return b.build();
}

// Exhaustive optimum over all node subsets: a subset containing the root
// is feasible when every other member has an in-edge from the subset, and
// in a DAG the best tree on a fixed subset picks each node's heaviest
// in-edge independently. Wholly separate from the subset DP.
inline double enumeration_optimum(const ColoredDag& g) {
  const int n = g.node_count();
  assert(n <= 20);
  const NodeId root = g.root();
  double best = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (!(mask & (1u << root))) continue;
    std::uint64_t colors_seen = 0;
    bool colorful = true;
    for (int v = 0; v < n && colorful; ++v) {
      if (!(mask & (1u << v))) continue;
      std::uint64_t bit = std::uint64_t{1} << g.color(v);
      if (colors_seen & bit) colorful = false;
      colors_seen |= bit;
    }
    if (!colorful) continue;

    double sum = 0.0;
    bool feasible = true;
    for (int v = 0; v < n && feasible; ++v) {
      if (v == root || !(mask & (1u << v))) continue;
      bool found = false;
      double best_in = 0.0;
      for (const InEdge& e : g.in_edges(v)) {
        if (!(mask & (1u << e.from))) continue;
        if (!found || e.weight > best_in) {
          best_in = e.weight;
          found = true;
        }
      }
      if (!found)
        feasible = false;
      else
        sum += best_in;
    }
    if (feasible && sum > best) best = sum;
  }
  return best;
}

// Straightforward insertion heuristic: recomputes every gain from scratch
// each round (cubic in the color count) with the shared tie-break rules.
inline SubtreeSolution naive_insertion_reference(const ColoredDag& g) {
  const int n = g.node_count();
  SubtreeSolution t = SubtreeSolution::root_only(g);
  std::vector<char> in_tree(n, 0), used(g.color_count(), 0);
  in_tree[g.root()] = 1;
  used[g.color(g.root())] = 1;
  std::vector<double> parent_weight(n, 0.0);

  while (true) {
    NodeId best_v = -1;
    double best_gain = 0.0;
    for (NodeId v = 0; v < n; ++v) {
      if (in_tree[v] || used[g.color(v)]) continue;
      bool attachable = false;
      double in = 0.0;
      for (const InEdge& e : g.in_edges(v)) {
        if (!in_tree[e.from]) continue;
        if (!attachable || e.weight > in) in = e.weight;
        attachable = true;
      }
      if (!attachable) continue;
      double out = 0.0;
      for (const OutEdge& e : g.out_edges(v)) {
        if (!in_tree[e.to] || e.to == g.root()) continue;
        if (e.weight > parent_weight[e.to]) out += e.weight - parent_weight[e.to];
      }
      double gain = in + out;
      if (best_v == -1 || gain > best_gain) {
        best_v = v;
        best_gain = gain;
      }
    }
    if (best_v == -1) break;

    NodeId parent = -1;
    double wpv = 0.0;
    for (const InEdge& e : g.in_edges(best_v)) {
      if (!in_tree[e.from]) continue;
      if (parent == -1 || e.weight > wpv) {
        parent = e.from;
        wpv = e.weight;
      }
    }
    t.parent[best_v] = parent;
    t.score += wpv;
    parent_weight[best_v] = wpv;
    used[g.color(best_v)] = 1;
    for (const OutEdge& e : g.out_edges(best_v)) {
      if (!in_tree[e.to] || e.to == g.root()) continue;
      if (e.weight > parent_weight[e.to]) {
        t.score += e.weight - parent_weight[e.to];
        t.parent[e.to] = best_v;
        parent_weight[e.to] = e.weight;
      }
    }
    in_tree[best_v] = 1;
  }
  return t;
}

// Best score over every way of cutting whole subtrees out of t, by brute
// force over edge subsets.
inline double best_pruned_score(const ColoredDag& g, const SubtreeSolution& t) {
  struct TreeEdge {
    NodeId from, to;
    double w;
  };
  std::vector<TreeEdge> edges;
  t.for_each_edge([&](NodeId u, NodeId v) { edges.push_back({u, v, *g.edge_weight(u, v)}); });
  const int m = static_cast<int>(edges.size());
  assert(m <= 20);

  std::vector<int> edge_into(g.node_count(), -1);
  for (int i = 0; i < m; ++i) edge_into[edges[i].to] = i;

  double best = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    bool valid = true;
    double sum = 0.0;
    for (int i = 0; i < m && valid; ++i) {
      if (!(mask & (1u << i))) continue;
      NodeId p = edges[i].from;
      if (p != g.root() && !(mask & (1u << edge_into[p]))) valid = false;
      sum += edges[i].w;
    }
    if (valid && sum > best) best = sum;
  }
  return best;
}

// Brute-force formula enumeration within bounds, kept independent of the
// pruned recursive decomposer.
inline std::vector<Formula> brute_force_decompose(double mass, double tolerance_ppm,
                                                  const FormulaBounds& bounds,
                                                  const MassTable& masses = default_masses()) {
  std::vector<Formula> found;
  double tol = mass * tolerance_ppm * 1e-6;
  Formula f;
  for (int c = 0; c <= bounds.max_counts[0]; ++c)
    for (int h = 0; h <= bounds.max_counts[1]; ++h)
      for (int nn = 0; nn <= bounds.max_counts[2]; ++nn)
        for (int o = 0; o <= bounds.max_counts[3]; ++o)
          for (int p = 0; p <= bounds.max_counts[4]; ++p)
            for (int s = 0; s <= bounds.max_counts[5]; ++s) {
              f = Formula::of(c, h, nn, o, p, s);
              if (std::abs(f.mass(masses) - mass) <= tol && bounds.admits(f)) found.push_back(f);
            }
  std::sort(found.begin(), found.end(), [&](const Formula& a, const Formula& b) {
    double ea = std::abs(a.mass(masses) - mass), eb = std::abs(b.mass(masses) - mass);
    if (ea != eb) return ea < eb;
    return a.counts < b.counts;
  });
  return found;
}

}  // namespace mcs::test
