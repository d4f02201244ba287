#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mcs/colored_dag.hpp"

namespace mcs {

enum class GraphProperty { Acyclic, UniqueSource, Transitive, OrderPreserving };

const char* property_name(GraphProperty p);

struct Violation {
  GraphProperty property;
  NodeId u = -1;  // offending nodes/edge endpoints, -1 when not applicable
  NodeId v = -1;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string to_string() const;
};

struct PropertyFlags {
  bool acyclic = false;
  bool unique_source = false;
  bool transitive = false;
  bool order_preserving = false;

  static PropertyFlags all() { return {true, true, true, true}; }
};

/// Checks the requested properties and reports every violation found.
/// The transitivity check is quadratic in out-degrees and can be skipped
/// through the flag set.
ValidationReport validate_graph(const ColoredDag& g, const PropertyFlags& flags);

/// Reachability closure: the result has edge (u,v) exactly when v is
/// reachable from u. Existing weights are preserved, new edges are
/// weighted by `weight_rule`, which is invoked in ascending (u,v) order.
ColoredDag transitive_closure(const ColoredDag& g,
                              const std::function<double(NodeId, NodeId)>& weight_rule);

/// Adds a fresh superroot with a fresh first-ordered color and a single
/// edge of weight `bonus` to `desired_root`; the new node becomes the root.
ColoredDag attach_superroot(const ColoredDag& g, NodeId desired_root, double bonus);

/// Recomputes the tree score as the sum of host-graph edge weights.
/// Throws GraphError when a tree edge is missing from the graph.
double tree_score(const ColoredDag& g, const SubtreeSolution& t);

/// Checks the solution invariants (rooted at g.root, connected, colorful,
/// edges present in g, stored score within 1e-9 of the recomputed sum).
/// Returns human-readable problems; empty means the tree is valid.
std::vector<std::string> tree_violations(const ColoredDag& g, const SubtreeSolution& t);

}  // namespace mcs
