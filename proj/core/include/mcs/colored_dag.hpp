#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mcs {

using NodeId = std::int32_t;
using ColorIndex = std::int32_t;

inline constexpr NodeId kTreeRoot = -1;   // parent value of the root node
inline constexpr NodeId kNotInTree = -2;  // parent value of nodes outside a tree

/// Structural problems: unresolved ids, self-loops, non-finite weights,
/// malformed color tables. Distinct from property violations, which are
/// reported by validate_graph as values.
class GraphError : public std::runtime_error {
 public:
  explicit GraphError(const std::string& what) : std::runtime_error(what) {}
};

/// A color together with its position in the total order on colors.
/// Ranks of a graph's colors form a permutation of 0..k-1; edges are
/// order-preserving when they always go from a smaller to a larger rank.
struct ColorId {
  ColorIndex index = 0;
  int rank = 0;
};

struct OutEdge {
  NodeId to;
  double weight;
};

struct InEdge {
  NodeId from;
  double weight;
};

/// Rooted, node-colored, edge-weighted DAG: the problem instance.
///
/// Node ids are dense integers 0..n-1, color indices dense 0..k-1.
/// Adjacency is kept both forward and backward, each sorted by the far
/// endpoint, since the greedy solvers scan out-edges while the
/// critical-path recurrence and the insertion updates scan in-edges.
/// Immutable after construction; safe to share across concurrent solves.
class ColoredDag {
 public:
  ColoredDag() = default;

  NodeId root() const { return root_; }
  int node_count() const { return static_cast<int>(node_colors_.size()); }
  long edge_count() const { return edge_count_; }
  int color_count() const { return static_cast<int>(color_rank_.size()); }

  ColorIndex color(NodeId v) const { return node_colors_[v]; }
  int rank_of_color(ColorIndex c) const { return color_rank_[c]; }
  ColorIndex color_at_rank(int rank) const { return rank_to_color_[rank]; }
  int rank_of(NodeId v) const { return color_rank_[node_colors_[v]]; }
  const std::string& label(NodeId v) const { return labels_[v]; }

  std::span<const OutEdge> out_edges(NodeId v) const { return out_[v]; }
  std::span<const InEdge> in_edges(NodeId v) const { return in_[v]; }
  std::span<const NodeId> nodes_of_color(ColorIndex c) const { return nodes_by_color_[c]; }

  /// Weight of edge (u,v), or nullopt when the edge is absent.
  std::optional<double> edge_weight(NodeId u, NodeId v) const;
  bool has_edge(NodeId u, NodeId v) const { return edge_weight(u, v).has_value(); }

  void for_each_edge(const std::function<void(NodeId, NodeId, double)>& fn) const;

  std::vector<ColorId> color_table() const;

 private:
  friend class DagBuilder;

  NodeId root_ = 0;
  long edge_count_ = 0;
  std::vector<ColorIndex> node_colors_;
  std::vector<std::string> labels_;
  std::vector<int> color_rank_;           // color index -> rank
  std::vector<ColorIndex> rank_to_color_; // rank -> color index
  std::vector<std::vector<OutEdge>> out_; // sorted by target id
  std::vector<std::vector<InEdge>> in_;   // sorted by source id
  std::vector<std::vector<NodeId>> nodes_by_color_;
};

/// Accumulates colors, nodes and edges, then checks structure and builds.
/// Self-loops and non-finite weights are rejected; a duplicate (u,v)
/// insertion keeps the maximum weight, since only the heaviest edge
/// between a node pair can appear in an optimum tree.
class DagBuilder {
 public:
  /// Declares color `index` with the given rank. Indices must come out
  /// dense (0..k-1) and ranks must form a permutation of 0..k-1.
  DagBuilder& add_color(ColorIndex index, int rank);

  /// Adds a node; returns its dense id.
  NodeId add_node(ColorIndex color, std::string label = {});

  DagBuilder& add_edge(NodeId from, NodeId to, double weight);
  DagBuilder& set_root(NodeId root);

  /// Validates structure (ids resolve, color table sane) and produces the
  /// immutable graph. Throws GraphError on structural problems.
  ColoredDag build();

 private:
  struct RawEdge {
    NodeId from, to;
    double weight;
  };
  std::vector<std::pair<ColorIndex, int>> colors_;
  std::vector<ColorIndex> node_colors_;
  std::vector<std::string> labels_;
  std::vector<RawEdge> edges_;
  std::optional<NodeId> root_;
};

/// An r-rooted colorful subtree, stored as a parent map over the host
/// graph's node ids plus the accumulated score.
struct SubtreeSolution {
  std::vector<NodeId> parent;  // kTreeRoot at the root, kNotInTree outside
  double score = 0.0;

  static SubtreeSolution root_only(const ColoredDag& g);

  bool in_tree(NodeId v) const { return parent[v] != kNotInTree; }
  int node_count() const;
  std::vector<NodeId> tree_nodes() const;

  /// Visits every tree edge as (parent, child, ...).
  template <typename Fn>
  void for_each_edge(Fn&& fn) const {
    for (NodeId v = 0; v < static_cast<NodeId>(parent.size()); ++v) {
      if (parent[v] >= 0) fn(parent[v], v);
    }
  }

  bool operator==(const SubtreeSolution& other) const { return parent == other.parent; }
};

}  // namespace mcs
