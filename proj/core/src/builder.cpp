#include "mcs/builder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mcs {

std::optional<int> CompoundInstance::truth_index() const {
  if (!truth) return std::nullopt;
  for (int i = 0; i < static_cast<int>(candidates.size()); ++i)
    if (candidates[i].formula == *truth) return i;
  return std::nullopt;
}

namespace {

struct RetainedPeak {
  double mz = 0.0;
  double intensity = 0.0;
  std::vector<std::vector<Formula>> explanations;  // per candidate
};

// Builds every candidate graph over a shared peak retention: a peak stays
// when at least one candidate explains it, the most intense max_peaks such
// peaks survive, and colors are ranked by decreasing peak mass with the
// precursor peak first.
CompoundInstance build_shared(const Spectrum& spectrum, std::vector<Formula> precursors,
                              const BuildOptions& options, std::optional<Formula> truth) {
  CompoundInstance compound;
  compound.spectrum = spectrum;
  compound.spectrum.sort_by_intensity();
  compound.truth = truth;

  const int candidate_count = static_cast<int>(precursors.size());
  std::vector<RetainedPeak> retained;
  for (const Peak& peak : compound.spectrum.peaks) {
    if (static_cast<int>(retained.size()) >= options.max_peaks) break;
    RetainedPeak rp;
    rp.mz = peak.mz;
    rp.intensity = peak.intensity;
    rp.explanations.resize(candidate_count);
    bool decomposable = false;
    for (int c = 0; c < candidate_count; ++c) {
      std::vector<Formula> hits = decompose_mass(
          peak.mz, options.tolerance_ppm, FormulaBounds::from_formula(precursors[c]),
          options.masses);
      // the candidate formula itself never explains a fragment peak
      std::erase_if(hits, [&](const Formula& f) { return f.empty() || f == precursors[c]; });
      decomposable |= !hits.empty();
      rp.explanations[c] = std::move(hits);
    }
    if (decomposable) retained.push_back(std::move(rp));
  }

  // color 0 is the precursor peak; fragment peaks follow by decreasing mass
  std::vector<int> by_mass(retained.size());
  for (size_t i = 0; i < retained.size(); ++i) by_mass[i] = static_cast<int>(i);
  std::sort(by_mass.begin(), by_mass.end(), [&](int a, int b) {
    if (retained[a].mz != retained[b].mz) return retained[a].mz > retained[b].mz;
    return a < b;
  });

  // intensity share is taken against the base peak of the retained set
  double base_intensity = 0.0;
  for (const RetainedPeak& rp : retained) base_intensity = std::max(base_intensity, rp.intensity);
  if (base_intensity <= 0) base_intensity = 1.0;

  for (int c = 0; c < candidate_count; ++c) {
    const Formula& precursor = precursors[c];
    const double precursor_mass = precursor.mass(options.masses);

    DagBuilder b;
    for (size_t color = 0; color < retained.size() + 1; ++color)
      b.add_color(static_cast<ColorIndex>(color), static_cast<int>(color));

    struct BuiltNode {
      Formula formula;
      double mass_error_ppm;
      double intensity_share;
    };
    std::vector<BuiltNode> nodes;
    NodeId root = b.add_node(0, precursor.str());
    nodes.push_back({precursor, 0.0, 0.0});

    for (size_t pos = 0; pos < by_mass.size(); ++pos) {
      const RetainedPeak& rp = retained[by_mass[pos]];
      ColorIndex color = static_cast<ColorIndex>(pos + 1);
      for (const Formula& f : rp.explanations[c]) {
        double fmass = f.mass(options.masses);
        b.add_node(color, f.str());
        nodes.push_back({f, (rp.mz - fmass) / fmass * 1e6, rp.intensity / base_intensity});
      }
    }

    for (size_t u = 0; u < nodes.size(); ++u) {
      for (size_t v = 1; v < nodes.size(); ++v) {
        if (u == v) continue;
        if (!nodes[v].formula.proper_subformula_of(nodes[u].formula)) continue;
        Formula loss = nodes[u].formula.minus(nodes[v].formula);
        double w = options.scoring.edge_weight(loss, nodes[v].mass_error_ppm,
                                               nodes[v].intensity_share, options.tolerance_ppm);
        b.add_edge(static_cast<NodeId>(u), static_cast<NodeId>(v), w);
      }
    }
    b.set_root(root);

    CandidateGraph cg;
    cg.formula = precursor;
    cg.mass_error_ppm =
        (precursor_mass - spectrum.precursor_mz) / spectrum.precursor_mz * 1e6;
    cg.is_truth = truth && precursor == *truth;
    cg.graph = b.build();
    compound.candidates.push_back(std::move(cg));
  }
  return compound;
}

}  // namespace

ColoredDag build_candidate_dag(const Spectrum& spectrum, const Formula& precursor,
                               double tolerance_ppm, int max_peaks, const ScoringModel& scoring,
                               const MassTable& masses) {
  double window = spectrum.precursor_mz * tolerance_ppm * 1e-6;
  if (std::abs(precursor.mass(masses) - spectrum.precursor_mz) > window)
    throw std::invalid_argument("candidate formula " + precursor.str() +
                                " lies outside the precursor tolerance window");
  BuildOptions options;
  options.tolerance_ppm = tolerance_ppm;
  options.max_peaks = max_peaks;
  options.scoring = scoring;
  options.masses = masses;
  CompoundInstance one = build_shared(spectrum, {precursor}, options, std::nullopt);
  return std::move(one.candidates.front().graph);
}

CompoundInstance build_compound(const Spectrum& spectrum, const BuildOptions& options,
                                std::optional<Formula> truth) {
  if (spectrum.precursor_mz <= 0) throw SpectrumError("compound has no precursor m/z");
  std::vector<Formula> precursors =
      decompose_mass(spectrum.precursor_mz, options.tolerance_ppm, options.bounds, options.masses);
  return build_shared(spectrum, std::move(precursors), options, truth);
}

}  // namespace mcs
