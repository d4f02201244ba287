#include "mcs/exact.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

namespace mcs {

namespace {

using Mask = std::uint32_t;

struct ChildRef {
  NodeId node;
  double weight;
  int shift;     // bit distance between the child's color and the parent's
  int bit;       // child color bit within the parent's available space
};

struct DpState {
  const ColoredDag& g;
  std::vector<int> bitpos;                  // node -> compact color bit, -1 unreachable
  std::vector<std::vector<double>> table;   // node -> value per available-color mask
  std::vector<std::vector<ChildRef>> kids;  // node -> usable out-edges
  SubtreeSolution tree;

  explicit DpState(const ColoredDag& graph) : g(graph), tree(SubtreeSolution::root_only(graph)) {}

  void backtrace(NodeId v, Mask avail, double value);
};

void DpState::backtrace(NodeId v, Mask avail, double value) {
  if (value == 0.0) return;  // single node: ties prefer the smaller tree

  for (const ChildRef& c : kids[v]) {  // ascending child id
    if (!(avail & (Mask{1} << c.bit))) continue;
    Mask child_avail = avail >> c.shift;
    double child_val = table[c.node][child_avail];
    if (c.weight + child_val == value) {
      tree.parent[c.node] = v;
      tree.score += c.weight;
      backtrace(c.node, child_avail, child_val);
      return;
    }
  }

  Mask low = avail & (~avail + 1);
  for (Mask sub = (avail - 1) & avail; sub > 0; sub = (sub - 1) & avail) {
    if (!(sub & low)) continue;
    Mask rest = avail ^ sub;
    if (table[v][sub] + table[v][rest] == value) {
      backtrace(v, sub, table[v][sub]);
      backtrace(v, rest, table[v][rest]);
      return;
    }
  }
  throw std::logic_error("exact solver backtrace failed to reproduce a table entry");
}

}  // namespace

SubtreeSolution solve_exact_dp(const ColoredDag& g, int max_colors) {
  const int n = g.node_count();
  const NodeId root = g.root();

  std::vector<char> reachable(n, 0);
  {
    std::vector<NodeId> stack{root};
    reachable[root] = 1;
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      for (const OutEdge& e : g.out_edges(u)) {
        if (!reachable[e.to]) {
          reachable[e.to] = 1;
          stack.push_back(e.to);
        }
      }
    }
  }

  // compact the ranks of colors that actually occur below the root
  std::vector<char> color_used(g.color_count(), 0);
  for (NodeId v = 0; v < n; ++v)
    if (reachable[v]) color_used[g.color(v)] = 1;
  std::vector<int> rank_to_bit(g.color_count(), -1);
  int k_eff = 0;
  for (int rank = 0; rank < g.color_count(); ++rank) {
    ColorIndex c = g.color_at_rank(rank);
    if (color_used[c]) rank_to_bit[rank] = k_eff++;
  }
  if (k_eff > max_colors)
    throw CapacityError("instance uses " + std::to_string(k_eff) +
                        " colors, above the solver capacity of " + std::to_string(max_colors) +
                        " colors");

  DpState st(g);
  st.bitpos.assign(n, -1);
  for (NodeId v = 0; v < n; ++v)
    if (reachable[v]) st.bitpos[v] = rank_to_bit[g.rank_of(v)];
  if (st.bitpos[root] != 0)
    throw GraphError("exact solver requires the root color to come first in the order");

  // nodes grouped by color bit, processed from the highest bit down
  std::vector<std::vector<NodeId>> by_bit(k_eff);
  std::size_t total_entries = 0;
  for (NodeId v = 0; v < n; ++v) {
    if (!reachable[v]) continue;
    by_bit[st.bitpos[v]].push_back(v);
    total_entries += std::size_t{1} << (k_eff - st.bitpos[v] - 1);
  }
  if (total_entries > std::size_t{200'000'000})
    throw CapacityError("subset table would need " + std::to_string(total_entries) +
                        " entries; export the instance as an LP model instead");

  st.table.assign(n, {});
  st.kids.assign(n, {});
  for (NodeId v = 0; v < n; ++v) {
    if (!reachable[v]) continue;
    int p = st.bitpos[v];
    for (const OutEdge& e : g.out_edges(v)) {
      if (!reachable[e.to]) continue;
      int q = st.bitpos[e.to];
      if (q <= p) throw GraphError("exact solver requires an order-preserving coloring");
      st.kids[v].push_back(ChildRef{e.to, e.weight, q - p, q - p - 1});
    }
  }

  for (int bit = k_eff - 1; bit >= 0; --bit) {
    for (NodeId v : by_bit[bit]) {
      const int nbits = k_eff - bit - 1;
      auto& row = st.table[v];
      row.assign(std::size_t{1} << nbits, 0.0);
      for (Mask avail = 1; avail < (Mask{1} << nbits); ++avail) {
        double best = 0.0;
        for (const ChildRef& c : st.kids[v]) {
          if (!(avail & (Mask{1} << c.bit))) continue;
          double cand = c.weight + st.table[c.node][avail >> c.shift];
          if (cand > best) best = cand;
        }
        Mask low = avail & (~avail + 1);
        for (Mask sub = (avail - 1) & avail; sub > 0; sub = (sub - 1) & avail) {
          if (!(sub & low)) continue;
          double cand = row[sub] + row[avail ^ sub];
          if (cand > best) best = cand;
        }
        row[avail] = best;
      }
    }
  }

  Mask full = (k_eff == 1) ? 0 : (Mask{1} << (k_eff - 1)) - 1;
  double best = st.table[root][full];
  st.backtrace(root, full, best);
  return std::move(st.tree);
}

}  // namespace mcs
