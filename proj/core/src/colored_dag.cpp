#include "mcs/colored_dag.hpp"

#include <algorithm>
#include <cmath>

namespace mcs {

std::optional<double> ColoredDag::edge_weight(NodeId u, NodeId v) const {
  const auto& edges = out_[u];
  auto it = std::lower_bound(edges.begin(), edges.end(), v,
                             [](const OutEdge& e, NodeId id) { return e.to < id; });
  if (it != edges.end() && it->to == v) return it->weight;
  return std::nullopt;
}

void ColoredDag::for_each_edge(const std::function<void(NodeId, NodeId, double)>& fn) const {
  for (NodeId u = 0; u < node_count(); ++u) {
    for (const OutEdge& e : out_[u]) fn(u, e.to, e.weight);
  }
}

std::vector<ColorId> ColoredDag::color_table() const {
  std::vector<ColorId> table(color_rank_.size());
  for (ColorIndex c = 0; c < color_count(); ++c) table[c] = ColorId{c, color_rank_[c]};
  return table;
}

DagBuilder& DagBuilder::add_color(ColorIndex index, int rank) {
  colors_.emplace_back(index, rank);
  return *this;
}

NodeId DagBuilder::add_node(ColorIndex color, std::string label) {
  node_colors_.push_back(color);
  labels_.push_back(std::move(label));
  return static_cast<NodeId>(node_colors_.size()) - 1;
}

DagBuilder& DagBuilder::add_edge(NodeId from, NodeId to, double weight) {
  edges_.push_back(RawEdge{from, to, weight});
  return *this;
}

DagBuilder& DagBuilder::set_root(NodeId root) {
  root_ = root;
  return *this;
}

ColoredDag DagBuilder::build() {
  const int n = static_cast<int>(node_colors_.size());
  const int k = static_cast<int>(colors_.size());

  ColoredDag g;
  g.color_rank_.assign(k, -1);
  g.rank_to_color_.assign(k, -1);
  for (const auto& [index, rank] : colors_) {
    if (index < 0 || index >= k)
      throw GraphError("color index " + std::to_string(index) + " not dense in 0.." + std::to_string(k - 1));
    if (rank < 0 || rank >= k)
      throw GraphError("color rank " + std::to_string(rank) + " out of range");
    if (g.color_rank_[index] != -1) throw GraphError("duplicate color index " + std::to_string(index));
    if (g.rank_to_color_[rank] != -1) throw GraphError("duplicate color rank " + std::to_string(rank));
    g.color_rank_[index] = rank;
    g.rank_to_color_[rank] = index;
  }

  for (NodeId v = 0; v < n; ++v) {
    ColorIndex c = node_colors_[v];
    if (c < 0 || c >= k)
      throw GraphError("node " + std::to_string(v) + " references unknown color " + std::to_string(c));
  }
  if (!root_.has_value()) throw GraphError("no root set");
  if (*root_ < 0 || *root_ >= n) throw GraphError("root id " + std::to_string(*root_) + " does not resolve");

  g.root_ = *root_;
  g.node_colors_ = std::move(node_colors_);
  g.labels_ = std::move(labels_);
  g.out_.assign(n, {});
  g.in_.assign(n, {});

  for (const RawEdge& e : edges_) {
    if (e.from < 0 || e.from >= n || e.to < 0 || e.to >= n)
      throw GraphError("edge (" + std::to_string(e.from) + "," + std::to_string(e.to) +
                       ") references a node id that does not resolve");
    if (e.from == e.to) throw GraphError("self-loop at node " + std::to_string(e.from));
    if (!std::isfinite(e.weight))
      throw GraphError("non-finite weight on edge (" + std::to_string(e.from) + "," +
                       std::to_string(e.to) + ")");
    g.out_[e.from].push_back(OutEdge{e.to, e.weight});
  }

  g.edge_count_ = 0;
  for (NodeId u = 0; u < n; ++u) {
    auto& edges = g.out_[u];
    std::sort(edges.begin(), edges.end(), [](const OutEdge& a, const OutEdge& b) {
      return a.to != b.to ? a.to < b.to : a.weight > b.weight;
    });
    // duplicate (u,v): keep the maximum weight
    auto last = std::unique(edges.begin(), edges.end(),
                            [](const OutEdge& a, const OutEdge& b) { return a.to == b.to; });
    edges.erase(last, edges.end());
    g.edge_count_ += static_cast<long>(edges.size());
    for (const OutEdge& e : edges) g.in_[e.to].push_back(InEdge{u, e.weight});
  }
  // in-edges come out sorted by source already (u ascending), nothing to do

  g.nodes_by_color_.assign(k, {});
  for (NodeId v = 0; v < n; ++v) g.nodes_by_color_[g.node_colors_[v]].push_back(v);

  return g;
}

SubtreeSolution SubtreeSolution::root_only(const ColoredDag& g) {
  SubtreeSolution t;
  t.parent.assign(g.node_count(), kNotInTree);
  t.parent[g.root()] = kTreeRoot;
  t.score = 0.0;
  return t;
}

int SubtreeSolution::node_count() const {
  int n = 0;
  for (NodeId p : parent)
    if (p != kNotInTree) ++n;
  return n;
}

std::vector<NodeId> SubtreeSolution::tree_nodes() const {
  std::vector<NodeId> nodes;
  for (NodeId v = 0; v < static_cast<NodeId>(parent.size()); ++v)
    if (parent[v] != kNotInTree) nodes.push_back(v);
  return nodes;
}

}  // namespace mcs
