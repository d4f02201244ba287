#include "mcs/ranking.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

#include "mcs/postprocess.hpp"

namespace mcs {

namespace {

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// sort key shared by every candidate ordering: score desc, then smaller
// absolute formula mass error, then formula text
bool ranks_before(const RankedCandidate& a, const RankedCandidate& b,
                  const CompoundInstance& compound) {
  if (a.score != b.score) return a.score > b.score;
  double ea = std::abs(compound.candidates[a.candidate_index].mass_error_ppm);
  double eb = std::abs(compound.candidates[b.candidate_index].mass_error_ppm);
  if (ea != eb) return ea < eb;
  return compound.candidates[a.candidate_index].formula.str() <
         compound.candidates[b.candidate_index].formula.str();
}

RankedCandidate solve_candidate(const CompoundInstance& compound, int index, Solver method,
                                const SolveOptions& options) {
  RankedCandidate rc;
  rc.candidate_index = index;
  try {
    TimedSolve solved = run_solver(compound.candidates[index].graph, method, options);
    rc.tree = std::move(solved.tree);
    rc.score = rc.tree.score;
    rc.seconds = solved.seconds;
  } catch (const std::exception& e) {
    rc.failed = true;
    rc.error_message = e.what();
  }
  return rc;
}

}  // namespace

TimedSolve run_solver(const ColoredDag& g, Solver s, const SolveOptions& options) {
  auto start = std::chrono::steady_clock::now();
  TimedSolve result;
  switch (s) {
    case Solver::Maximum:
      result.tree = solve_maximum(g).best;
      break;
    case Solver::Exact:
      result.tree = solve_exact_dp(g, options.exact_max_colors);
      break;
    default:
      result.tree = solve_heuristic(g, s);
      if (policy_applies_rds(s) || (s == Solver::CriticalPath3 && options.rds_on_cp3))
        result.tree = remove_dangling_subtrees(g, result.tree);
      break;
  }
  result.seconds = elapsed_seconds(start);
  return result;
}

CandidateRanking rank_candidates(const CompoundInstance& compound, Solver method,
                                 const SolveOptions& options, int threads) {
  const int count = static_cast<int>(compound.candidates.size());
  std::vector<RankedCandidate> solved(count);

  if (threads <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) solved[i] = solve_candidate(compound, i, method, options);
  } else {
    std::atomic<int> next{0};
    auto worker = [&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1))
        solved[i] = solve_candidate(compound, i, method, options);
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < std::min(threads, count); ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  CandidateRanking ranking;
  for (RankedCandidate& rc : solved) {
    if (rc.failed)
      ranking.failures.push_back(std::move(rc));
    else
      ranking.entries.push_back(std::move(rc));
  }
  std::sort(ranking.entries.begin(), ranking.entries.end(),
            [&](const RankedCandidate& a, const RankedCandidate& b) {
              return ranks_before(a, b, compound);
            });

  if (auto truth = compound.truth_index()) {
    for (const RankedCandidate& rc : ranking.entries) {
      if (rc.candidate_index == *truth) {
        int above = 0;
        for (const RankedCandidate& other : ranking.entries)
          if (other.score > rc.score) ++above;
        ranking.truth_rank = above + 1;
        break;
      }
    }
  }
  return ranking;
}

KBestResult kbest_exact_with_gap(const CompoundInstance& compound, const KBestOptions& options) {
  if (options.k < 1 || options.warmup < options.k)
    throw std::invalid_argument("kbest needs warmup >= k >= 1");

  KBestResult result;
  const int count = static_cast<int>(compound.candidates.size());
  result.fewer_than_k = count < options.k;

  CandidateRanking heuristic = rank_candidates(compound, options.heuristic, options.solve);
  for (RankedCandidate& rc : heuristic.failures) result.failures.push_back(std::move(rc));

  std::vector<RankedCandidate> exact_solved;
  double delta = options.delta_override.value_or(0.0);

  auto threshold = [&]() {
    // k-th best exact score so far (entries kept sorted)
    return exact_solved[options.k - 1].score;
  };

  for (int pos = 0; pos < static_cast<int>(heuristic.entries.size()); ++pos) {
    const RankedCandidate& h = heuristic.entries[pos];
    if (pos >= options.warmup && static_cast<int>(exact_solved.size()) >= options.k &&
        h.score + delta < threshold())
      break;

    RankedCandidate ex = solve_candidate(compound, h.candidate_index, Solver::Exact, options.solve);
    if (ex.failed) {
      result.failures.push_back(std::move(ex));
      continue;
    }
    ++result.exact_solves;
    if (!options.delta_override) delta = std::max(delta, ex.score - h.score);

    auto at = std::upper_bound(exact_solved.begin(), exact_solved.end(), ex,
                               [&](const RankedCandidate& a, const RankedCandidate& b) {
                                 return ranks_before(a, b, compound);
                               });
    exact_solved.insert(at, std::move(ex));
  }

  result.delta = std::max(0.0, delta);
  int keep = std::min<int>(options.k, static_cast<int>(exact_solved.size()));
  result.topk.assign(exact_solved.begin(), exact_solved.begin() + keep);
  return result;
}

double jaccard(const std::set<std::string>& a, const std::set<std::string>& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::size_t common = 0;
  for (const std::string& item : a) common += b.count(item);
  std::size_t total = a.size() + b.size() - common;
  return static_cast<double>(common) / static_cast<double>(total);
}

std::set<std::string> fragment_labels(const ColoredDag& g, const SubtreeSolution& t) {
  std::set<std::string> labels;
  for (NodeId v : t.tree_nodes()) labels.insert(g.label(v));
  return labels;
}

std::set<std::string> loss_labels(const ColoredDag& g, const SubtreeSolution& t) {
  std::set<std::string> labels;
  t.for_each_edge([&](NodeId u, NodeId v) {
    auto fu = Formula::parse(g.label(u));
    auto fv = Formula::parse(g.label(v));
    if (fu && fv && fv->subformula_of(*fu))
      labels.insert(fu->minus(*fv).str());
    else
      labels.insert(g.label(u) + ">" + g.label(v));
  });
  return labels;
}

StructureComparison compare_structures(const SubtreeSolution& heuristic_tree,
                                       const SubtreeSolution& exact_tree, const ColoredDag& g) {
  StructureComparison cmp;
  cmp.jaccard_fragments =
      jaccard(fragment_labels(g, heuristic_tree), fragment_labels(g, exact_tree));
  cmp.jaccard_losses = jaccard(loss_labels(g, heuristic_tree), loss_labels(g, exact_tree));
  cmp.heuristic_size = heuristic_tree.node_count();
  cmp.exact_size = exact_tree.node_count();
  return cmp;
}

}  // namespace mcs
