#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mcs/builder.hpp"
#include "mcs/exact.hpp"
#include "mcs/heuristics.hpp"

namespace mcs {

struct SolveOptions {
  int exact_max_colors = kDefaultExactMaxColors;
  /// Evaluation policy keeps the dangling-subtree postprocessing off for
  /// the critical-path variants; this opt-in flag applies it to variant 3
  /// to measure how often it would help.
  bool rds_on_cp3 = false;
};

struct TimedSolve {
  SubtreeSolution tree;
  double seconds = 0.0;
};

/// Runs one solver under the evaluation policy (dangling-subtree removal
/// for Kruskal/Prim/Insertion/Top-down) and reports wall-clock time.
TimedSolve run_solver(const ColoredDag& g, Solver s, const SolveOptions& options = {});

struct RankedCandidate {
  int candidate_index = -1;
  double score = 0.0;
  double seconds = 0.0;
  SubtreeSolution tree;
  bool failed = false;        // capacity or other solver error
  std::string error_message;
};

struct CandidateRanking {
  /// Successfully solved candidates, best score first; ties go to the
  /// smaller absolute candidate mass error, then the lexicographically
  /// smaller formula.
  std::vector<RankedCandidate> entries;
  std::vector<RankedCandidate> failures;
  /// 1 + number of candidates scoring strictly higher than the truth.
  std::optional<int> truth_rank;
};

CandidateRanking rank_candidates(const CompoundInstance& compound, Solver method,
                                 const SolveOptions& options = {}, int threads = 1);

struct KBestOptions {
  int k = 5;
  int warmup = 10;
  Solver heuristic = Solver::CriticalPath3;
  SolveOptions solve;
  /// Testing hook: pins the score gap instead of estimating it.
  std::optional<double> delta_override;
};

struct KBestResult {
  std::vector<RankedCandidate> topk;  // exact scores, best first
  int exact_solves = 0;
  double delta = 0.0;        // largest observed exact-minus-heuristic gap
  bool fewer_than_k = false; // instance had fewer candidates than k
  std::vector<RankedCandidate> failures;
};

/// Exact scores for (what should be) the k best candidates while solving
/// as few instances exactly as possible: candidates are ordered by
/// heuristic score, the first `warmup` are solved exactly, the largest
/// exact-minus-heuristic gap delta is tracked, and the scan down the list
/// stops once heuristic score + delta drops below the running k-th best
/// exact score. The gap bound is empirical, so the result can miss true
/// top-k members.
KBestResult kbest_exact_with_gap(const CompoundInstance& compound, const KBestOptions& options);

/// |A cap B| / |A cup B|; two empty sets count as identical (1).
double jaccard(const std::set<std::string>& a, const std::set<std::string>& b);

struct StructureComparison {
  double jaccard_fragments = 1.0;  // node labels
  double jaccard_losses = 1.0;     // per-edge label differences
  int heuristic_size = 0;
  int exact_size = 0;
};

std::set<std::string> fragment_labels(const ColoredDag& g, const SubtreeSolution& t);
std::set<std::string> loss_labels(const ColoredDag& g, const SubtreeSolution& t);

StructureComparison compare_structures(const SubtreeSolution& heuristic_tree,
                                       const SubtreeSolution& exact_tree, const ColoredDag& g);

}  // namespace mcs
