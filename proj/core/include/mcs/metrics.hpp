#pragma once

#include <span>
#include <vector>

#include "mcs/ranking.hpp"

namespace mcs {

inline constexpr int kTopKMax = 25;

/// Identification, score and structure metrics for one method over a
/// ground-truth corpus. Rates are fractions of all compounds; a compound
/// whose candidate list misses the truth formula can never be identified
/// and is tallied in compounds_without_truth. Relative scores and
/// structure comparisons cover the truth instances only, against the
/// exact solver at 100%.
struct EvalSummary {
  Solver method = Solver::Exact;
  int compounds = 0;
  int compounds_without_truth = 0;

  std::vector<double> topk_rate;         // index k-1 holds the rate for top-k
  std::vector<double> diff_vs_exact_pp;  // percentage points against exact

  std::vector<double> relative_scores;
  int relative_excluded = 0;  // exact score 0 but heuristic differs
  double mean_relative = 0.0;
  double share_relative_ge_99 = 0.0;

  std::vector<StructureComparison> structures;
  std::vector<double> truth_scores;        // this method, truth instance
  std::vector<double> truth_exact_scores;  // exact, truth instance
  double pearson_vs_exact = 0.0;

  double top1_rate() const { return topk_rate.empty() ? 0.0 : topk_rate[0]; }
};

/// Sample Pearson correlation; 0 when fewer than two points or either
/// variance vanishes.
double pearson(std::span<const double> x, std::span<const double> y);

/// Runs every requested method over the corpus (exact is always computed,
/// it anchors the normalized rates) and aggregates the metrics. Truth must
/// be known for all compounds.
std::vector<EvalSummary> evaluate_corpus(const std::vector<CompoundInstance>& compounds,
                                         const std::vector<Solver>& methods,
                                         const SolveOptions& options = {}, int threads = 1);

}  // namespace mcs
