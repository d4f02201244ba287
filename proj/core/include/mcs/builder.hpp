#pragma once

#include <optional>
#include <vector>

#include "mcs/colored_dag.hpp"
#include "mcs/formula.hpp"
#include "mcs/scoring.hpp"
#include "mcs/spectrum.hpp"

namespace mcs {

struct CandidateGraph {
  Formula formula;            // hypothesized precursor formula
  double mass_error_ppm = 0;  // signed error of the formula against the precursor m/z
  bool is_truth = false;
  ColoredDag graph;
};

/// One compound: the spectrum plus one candidate graph per explanation of
/// the precursor mass. All candidate graphs share one color table (one
/// color per retained peak, the precursor first); a candidate may leave
/// colors unused when it cannot explain the corresponding peak.
struct CompoundInstance {
  Spectrum spectrum;
  std::vector<CandidateGraph> candidates;
  std::optional<Formula> truth;

  bool no_candidates() const { return candidates.empty(); }
  std::optional<int> truth_index() const;
};

struct BuildOptions {
  double tolerance_ppm = 10.0;
  int max_peaks = 60;
  FormulaBounds bounds = FormulaBounds::precursor_default();
  ScoringModel scoring;
  MassTable masses;
};

/// Builds the graph for one precursor candidate: keeps the max_peaks most
/// intense peaks that decompose under the candidate, creates one node per
/// (peak, explaining subformula) pair colored by its peak, ranks colors by
/// decreasing peak mass, and adds an edge u -> v exactly when v's formula
/// is a proper subformula of u's. Throws when the candidate is outside the
/// precursor tolerance window.
ColoredDag build_candidate_dag(const Spectrum& spectrum, const Formula& precursor,
                               double tolerance_ppm, int max_peaks, const ScoringModel& scoring,
                               const MassTable& masses = default_masses());

/// Decomposes the precursor m/z and builds one candidate graph per hit.
/// Peak retention is shared across candidates so the color table is, too.
CompoundInstance build_compound(const Spectrum& spectrum, const BuildOptions& options,
                                std::optional<Formula> truth = std::nullopt);

}  // namespace mcs
