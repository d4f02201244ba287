#pragma once

#include <vector>

#include "mcs/colored_dag.hpp"

namespace mcs {

/// Bottom-up subtree potentials: d[u] = sum over tree children v of
/// max(0, w(u,v) + d[v]); 0 at leaves and at nodes outside the tree.
std::vector<double> rds_scores(const ColoredDag& g, const SubtreeSolution& t);

/// Iteratively removes leaves attached by a negative edge until no such
/// leaf remains. O(|V_T|) via a worklist over parents of removed leaves.
SubtreeSolution remove_dangling_edges(const ColoredDag& g, const SubtreeSolution& t);

/// Removes every edge (u,v) with w(u,v) + d[v] < 0 together with the
/// subtree below it; the result is the best tree obtainable from t by
/// cutting whole subtrees. Edges with w(u,v) + d[v] == 0 are kept.
SubtreeSolution remove_dangling_subtrees(const ColoredDag& g, const SubtreeSolution& t);

}  // namespace mcs
