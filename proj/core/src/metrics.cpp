#include "mcs/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace mcs {

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) return 0.0;
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0 || syy <= 0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

namespace {

template <typename Fn>
void parallel_over(int count, int threads, Fn&& fn) {
  if (threads <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < std::min(threads, count); ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

}  // namespace

std::vector<EvalSummary> evaluate_corpus(const std::vector<CompoundInstance>& compounds,
                                         const std::vector<Solver>& methods,
                                         const SolveOptions& options, int threads) {
  const int n = static_cast<int>(compounds.size());
  for (const CompoundInstance& c : compounds)
    if (!c.truth) throw std::invalid_argument("evaluate_corpus needs truth for every compound");

  // exact rankings anchor everything else; truth-instance exact trees are
  // reused for the structure comparisons
  std::vector<CandidateRanking> exact_rankings(n);
  parallel_over(n, threads, [&](int i) {
    exact_rankings[i] = rank_candidates(compounds[i], Solver::Exact, options);
  });

  auto rates_for = [&](const std::vector<CandidateRanking>& rankings) {
    std::vector<double> rates(kTopKMax, 0.0);
    for (int i = 0; i < n; ++i) {
      if (!rankings[i].truth_rank) continue;
      int rank = *rankings[i].truth_rank;
      for (int k = rank; k <= kTopKMax; ++k) rates[k - 1] += 1.0;
    }
    for (double& r : rates) r /= std::max(1, n);
    return rates;
  };
  const std::vector<double> exact_rates = rates_for(exact_rankings);

  auto truth_entry = [](const CandidateRanking& ranking,
                        int truth_index) -> const RankedCandidate* {
    for (const RankedCandidate& rc : ranking.entries)
      if (rc.candidate_index == truth_index) return &rc;
    return nullptr;
  };

  std::vector<EvalSummary> summaries;
  for (Solver method : methods) {
    EvalSummary s;
    s.method = method;
    s.compounds = n;

    std::vector<CandidateRanking> rankings(n);
    if (method == Solver::Exact) {
      rankings = exact_rankings;
    } else {
      parallel_over(n, threads, [&](int i) {
        rankings[i] = rank_candidates(compounds[i], method, options);
      });
    }

    s.topk_rate = rates_for(rankings);
    s.diff_vs_exact_pp.resize(kTopKMax);
    for (int k = 0; k < kTopKMax; ++k)
      s.diff_vs_exact_pp[k] = (s.topk_rate[k] - exact_rates[k]) * 100.0;

    for (int i = 0; i < n; ++i) {
      auto truth_index = compounds[i].truth_index();
      if (!truth_index) {
        ++s.compounds_without_truth;
        continue;
      }
      const RankedCandidate* mine = truth_entry(rankings[i], *truth_index);
      const RankedCandidate* exact = truth_entry(exact_rankings[i], *truth_index);
      if (!mine || !exact) {
        ++s.compounds_without_truth;
        continue;
      }

      s.truth_scores.push_back(mine->score);
      s.truth_exact_scores.push_back(exact->score);
      if (exact->score == 0.0) {
        if (mine->score == 0.0)
          s.relative_scores.push_back(1.0);
        else
          ++s.relative_excluded;
      } else {
        s.relative_scores.push_back(mine->score / exact->score);
      }
      s.structures.push_back(compare_structures(
          mine->tree, exact->tree, compounds[i].candidates[*truth_index].graph));
    }

    if (!s.relative_scores.empty()) {
      double sum = 0, ge99 = 0;
      for (double r : s.relative_scores) {
        sum += r;
        if (r >= 0.99) ge99 += 1.0;
      }
      s.mean_relative = sum / static_cast<double>(s.relative_scores.size());
      s.share_relative_ge_99 = ge99 / static_cast<double>(s.relative_scores.size());
    }
    s.pearson_vs_exact = pearson(s.truth_scores, s.truth_exact_scores);
    summaries.push_back(std::move(s));
  }
  return summaries;
}

}  // namespace mcs
