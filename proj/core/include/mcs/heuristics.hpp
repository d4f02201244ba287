#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "mcs/colored_dag.hpp"

namespace mcs {

enum class Solver {
  Kruskal,
  Prim,
  Insertion,
  TopDown,
  CriticalPath1,
  CriticalPath2,
  CriticalPath3,
  Maximum,
  Exact,
};

inline constexpr int kHeuristicCount = 7;
inline constexpr std::array<Solver, kHeuristicCount> kHeuristics = {
    Solver::Kruskal,        Solver::Prim,          Solver::Insertion,
    Solver::TopDown,        Solver::CriticalPath1, Solver::CriticalPath2,
    Solver::CriticalPath3};

std::string_view solver_name(Solver s);
std::optional<Solver> solver_from_name(std::string_view name);

// All solvers expect a rooted DAG with order-preserving colors (the
// builder's graphs additionally come out transitive, with root as the
// unique source). Ties are broken by smaller target node id, then smaller
// source node id, so repeated runs return identical trees.

/// Sorts edges by decreasing weight and accepts an edge when its endpoints
/// sit in different union-find components (all nodes of one color start
/// merged) and the target has no incoming tree edge yet. Returns the
/// accepted component containing the root.
SubtreeSolution solve_kruskal(const ColoredDag& g);

/// Grows the tree from the root, always adding the maximum-weight edge to
/// an outside node of unused color, regardless of sign.
SubtreeSolution solve_prim(const ColoredDag& g);

/// Greedy node insertion with rerouting: repeatedly attaches the node v of
/// unused color maximizing in(v) + out(v), where in(v) is the best
/// attachment edge from the tree and out(v) the gain from rerouting
/// existing tree edges through v. Incremental tables keep this at
/// O(k^2 n); the selected sequence matches the quadratic-per-step
/// recomputation exactly.
SubtreeSolution solve_insertion(const ColoredDag& g);

/// Adds greedy paths starting at the root; on a dead end, restarts at the
/// root; stops when no edge at the root can be chosen. Every internal node
/// except the root ends up with exactly one child.
SubtreeSolution solve_topdown(const ColoredDag& g);

/// Repeatedly adds the whole maximum-score color-disjoint path starting at
/// a tree node (the critical path), until the best path score drops to 0.
SubtreeSolution solve_critical_path_1(const ColoredDag& g);

/// Like critical path 1, but commits only the first edge of the best path
/// per iteration.
SubtreeSolution solve_critical_path_2(const ColoredDag& g);

/// Combines insertion and critical paths: per iteration picks the edge
/// (u,v), u in tree and c(v) unused, maximizing the rerouting-aware
/// attachment gain plus the critical-path score below v; attaches v with
/// rerouting as in solve_insertion; stops when the best total drops to 0.
SubtreeSolution solve_critical_path_3(const ColoredDag& g);

SubtreeSolution solve_heuristic(const ColoredDag& g, Solver s);

struct MaximumResult {
  SubtreeSolution best;
  Solver best_solver = Solver::Kruskal;
  /// Scores in kHeuristics order, after the evaluation-policy
  /// postprocessing (dangling-subtree removal for Kruskal, Prim,
  /// Insertion and Top-down; critical-path variants untouched).
  std::array<double, kHeuristicCount> scores{};
};

/// Runs all seven heuristics under the evaluation policy and returns the
/// best tree together with the per-heuristic score table.
MaximumResult solve_maximum(const ColoredDag& g);

/// True for the heuristics that get the dangling-subtree postprocessing in
/// evaluation runs (everything but the critical-path family).
bool policy_applies_rds(Solver s);

}  // namespace mcs
