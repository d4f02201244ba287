#pragma once

#include <stdexcept>

#include "mcs/colored_dag.hpp"

namespace mcs {

/// Raised when an instance needs more colors than the solver accepts.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr int kDefaultExactMaxColors = 22;

/// Exact optimum by dynamic programming over color subsets.
///
/// For every node v and color set S containing c(v), the table holds the
/// best weight of a colorful v-rooted subtree using colors from S, built
/// by either extending along one edge or merging two subtrees that share
/// only v. Order preservation keeps each node's table limited to colors
/// ranked at or above its own, so the table stays well below n * 2^k
/// entries in practice.
///
/// Throws CapacityError when the number of colors on nodes reachable from
/// the root exceeds max_colors. Ties in the backtrace go to smaller node
/// ids, so results are deterministic.
SubtreeSolution solve_exact_dp(const ColoredDag& g, int max_colors = kDefaultExactMaxColors);

}  // namespace mcs
