#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "mcs/builder.hpp"
#include "mcs/synthetic.hpp"
#include "mcs/validate.hpp"
#include "test_support.hpp"

using namespace mcs;
using mcs::test::brute_force_decompose;

TEST_CASE("formula basics") {
  Formula water = Formula::of(0, 2, 0, 1);
  CHECK(water.str() == "H2O");
  CHECK(water.mass() == doctest::Approx(18.010565).epsilon(1e-9));
  CHECK(water.atom_count() == 3);

  Formula glucose = Formula::of(6, 12, 0, 6);
  CHECK(glucose.str() == "C6H12O6");
  CHECK(water.subformula_of(glucose));
  CHECK(water.proper_subformula_of(glucose));
  CHECK(!glucose.subformula_of(water));
  CHECK(glucose.minus(water) == Formula::of(6, 10, 0, 5));

  CHECK(Formula::parse("C6H12O6") == glucose);
  CHECK(Formula::parse("H2O") == water);
  CHECK(Formula::parse(glucose.str()) == glucose);
  CHECK(Formula::parse("-") == Formula{});
  CHECK(!Formula::parse("Xe2").has_value());
  CHECK(!Formula::parse("C0H").has_value());
}

TEST_CASE("water is the only decomposition of 18.010565 at 5 ppm") {
  FormulaBounds bounds;
  bounds.max_counts = {10, 20, 5, 5, 2, 2};
  std::vector<Formula> hits = decompose_mass(18.010565, 5.0, bounds);
  REQUIRE(hits.size() == 1);
  CHECK(hits[0] == Formula::of(0, 2, 0, 1));
}

TEST_CASE("masses below hydrogen decompose to nothing") {
  CHECK(decompose_mass(0.5, 100.0, FormulaBounds::chnops_default()).empty());
  CHECK(decompose_mass(-3.0, 10.0, FormulaBounds::chnops_default()).empty());
}

TEST_CASE("decomposition equals brute force and stays inside the window") {
  std::mt19937_64 rng(808);
  FormulaBounds bounds;
  bounds.max_counts = {14, 24, 4, 6, 2, 2};
  for (int round = 0; round < 25; ++round) {
    double mass = std::uniform_real_distribution<double>(40.0, 220.0)(rng);
    double ppm = std::uniform_real_distribution<double>(3.0, 40.0)(rng);
    std::vector<Formula> fast = decompose_mass(mass, ppm, bounds);
    std::vector<Formula> slow = brute_force_decompose(mass, ppm, bounds);
    CHECK(fast == slow);
    for (const Formula& f : fast)
      CHECK(std::abs(f.mass() - mass) <= mass * ppm * 1e-6 + 1e-12);
  }
  // a known multi-hit window: errors come out sorted
  std::vector<Formula> hits = decompose_mass(100.0, 500.0, bounds);
  CHECK(hits.size() > 1);
  for (size_t i = 1; i < hits.size(); ++i)
    CHECK(std::abs(hits[i - 1].mass() - 100.0) <= std::abs(hits[i].mass() - 100.0) + 1e-15);
}

TEST_CASE("single-peak spectrum builds a single-node graph") {
  Formula glucose = Formula::of(6, 12, 0, 6);
  Spectrum s;
  s.precursor_mz = glucose.mass();
  s.peaks.push_back(Peak{glucose.mass(), 100.0});
  ColoredDag g = build_candidate_dag(s, glucose, 10.0, 60, ScoringModel{});
  CHECK(g.node_count() == 1);
  CHECK(g.edge_count() == 0);
  CHECK(g.label(g.root()) == "C6H12O6");
}

TEST_CASE("a fragment with one explanation gives two nodes and one edge") {
  Formula glucose = Formula::of(6, 12, 0, 6);
  Formula fragment = glucose.minus(Formula::of(0, 2, 0, 1));  // water loss
  Spectrum s;
  s.precursor_mz = glucose.mass();
  s.peaks.push_back(Peak{glucose.mass(), 50.0});
  s.peaks.push_back(Peak{fragment.mass(), 100.0});
  ColoredDag g = build_candidate_dag(s, glucose, 5.0, 60, ScoringModel{});
  CHECK(g.node_count() == 2);
  CHECK(g.edge_count() == 1);
  CHECK(validate_graph(g, PropertyFlags::all()).ok());
}

TEST_CASE("candidate outside the precursor window is rejected") {
  Spectrum s;
  s.precursor_mz = 100.0;
  s.peaks.push_back(Peak{50.0, 1.0});
  CHECK_THROWS(build_candidate_dag(s, Formula::of(6, 12, 0, 6), 5.0, 60, ScoringModel{}));
}

TEST_CASE("compound building keeps one shared color table") {
  GeneratorConfig cfg;
  cfg.noise_peaks_min = cfg.noise_peaks_max = 1;
  SyntheticCompound sc = generate_synthetic_compound(cfg.compound_seed(3), cfg);

  BuildOptions options;
  CompoundInstance compound = build_compound(sc.spectrum, options, sc.truth);
  REQUIRE(!compound.no_candidates());
  int colors = compound.candidates.front().graph.color_count();
  for (const CandidateGraph& cg : compound.candidates) {
    CHECK(cg.graph.color_count() == colors);
    CHECK(cg.graph.label(cg.graph.root()) == cg.formula.str());
    CHECK(std::abs(cg.mass_error_ppm) <= options.tolerance_ppm + 1e-9);
  }
  CHECK(compound.truth_index().has_value());
}

TEST_CASE("built graphs satisfy all four properties") {
  GeneratorConfig cfg;
  cfg.fragments_min = 3;
  cfg.fragments_max = 7;
  cfg.noise_peaks_max = 2;
  BuildOptions options;
  int graphs = 0;
  for (int i = 0; i < 12; ++i) {
    SyntheticCompound sc = generate_synthetic_compound(cfg.compound_seed(i), cfg);
    CompoundInstance compound = build_compound(sc.spectrum, options, sc.truth);
    for (const CandidateGraph& cg : compound.candidates) {
      CHECK(validate_graph(cg.graph, PropertyFlags::all()).ok());
      ++graphs;
    }
  }
  CHECK(graphs > 12);
}

TEST_CASE("edges are exactly the proper-subformula pairs") {
  GeneratorConfig cfg;
  cfg.fragments_min = 2;
  cfg.fragments_max = 5;
  SyntheticCompound sc = generate_synthetic_compound(cfg.compound_seed(17), cfg);
  CompoundInstance compound = build_compound(sc.spectrum, BuildOptions{}, sc.truth);
  REQUIRE(compound.truth_index().has_value());
  const ColoredDag& g = compound.candidates[*compound.truth_index()].graph;

  for (NodeId u = 0; u < g.node_count(); ++u) {
    Formula fu = *Formula::parse(g.label(u));
    for (NodeId v = 0; v < g.node_count(); ++v) {
      if (u == v) continue;
      Formula fv = *Formula::parse(g.label(v));
      bool expect = v != g.root() && fv.proper_subformula_of(fu);
      CHECK(g.has_edge(u, v) == expect);
    }
  }
}

TEST_CASE("peak cap keeps the most intense decomposable prefix") {
  Formula glucose = Formula::of(6, 12, 0, 6);
  Spectrum s;
  s.precursor_mz = glucose.mass();
  // several explainable fragments with descending intensities
  std::vector<Formula> losses = {Formula::of(0, 2, 0, 1), Formula::of(1, 0, 0, 1),
                                 Formula::of(1, 2, 0, 1), Formula::of(1, 0, 0, 2),
                                 Formula::of(2, 4, 0, 0)};
  double intensity = 100.0;
  for (const Formula& loss : losses) {
    s.peaks.push_back(Peak{glucose.minus(loss).mass(), intensity});
    intensity *= 0.5;
  }
  ColoredDag capped = build_candidate_dag(s, glucose, 5.0, 2, ScoringModel{});
  // root color plus exactly the two most intense fragment peaks
  CHECK(capped.color_count() == 3);
  ColoredDag uncapped = build_candidate_dag(s, glucose, 5.0, 60, ScoringModel{});
  CHECK(uncapped.color_count() == 6);
}

TEST_CASE("generator is deterministic and honest at zero noise") {
  GeneratorConfig cfg;
  cfg.noise_sigma_ppm = 0.0;
  cfg.noise_peaks_min = cfg.noise_peaks_max = 0;

  SyntheticCompound a = generate_synthetic_compound(99, cfg);
  SyntheticCompound b = generate_synthetic_compound(99, cfg);
  CHECK(a.truth == b.truth);
  REQUIRE(a.spectrum.peaks.size() == b.spectrum.peaks.size());
  for (size_t i = 0; i < a.spectrum.peaks.size(); ++i) {
    CHECK(a.spectrum.peaks[i].mz == b.spectrum.peaks[i].mz);
    CHECK(a.spectrum.peaks[i].intensity == b.spectrum.peaks[i].intensity);
  }

  // with zero noise every planted fragment mass decomposes back to a
  // formula set containing the fragment
  FormulaBounds bounds = FormulaBounds::from_formula(a.truth);
  for (const Formula& fragment : a.fragments) {
    std::vector<Formula> hits = decompose_mass(fragment.mass(), 5.0, bounds);
    CHECK(std::find(hits.begin(), hits.end(), fragment) != hits.end());
  }
  CHECK(a.spectrum.precursor_mz == doctest::Approx(a.truth.mass()).epsilon(1e-12));
}

TEST_CASE("planted edges connect planted fragments") {
  GeneratorConfig cfg;
  SyntheticCompound sc = generate_synthetic_compound(5, cfg);
  for (const auto& [parent, child] : sc.planted_edges) {
    CHECK(child.proper_subformula_of(parent));
    bool parent_known = parent == sc.truth ||
                        std::find(sc.fragments.begin(), sc.fragments.end(), parent) !=
                            sc.fragments.end();
    CHECK(parent_known);
  }
}

TEST_CASE("spectrum files round-trip") {
  GeneratorConfig cfg;
  SyntheticCompound sc = generate_synthetic_compound(31, cfg);
  std::stringstream buffer;
  save_spectrum(sc.spectrum, buffer);
  Spectrum loaded = load_spectrum(buffer);
  // the text format keeps six decimals
  CHECK(loaded.precursor_mz == doctest::Approx(sc.spectrum.precursor_mz).epsilon(1e-8));
  REQUIRE(loaded.peaks.size() == sc.spectrum.peaks.size());
  for (size_t i = 0; i < loaded.peaks.size(); ++i)
    CHECK(loaded.peaks[i].mz == doctest::Approx(sc.spectrum.peaks[i].mz).epsilon(1e-8));

  std::istringstream broken("1.0 2.0\n");
  CHECK_THROWS_AS(load_spectrum(broken), SpectrumError);
  std::istringstream negative("PRECURSOR 100\n50 -3\n");
  CHECK_THROWS_AS(load_spectrum(negative), SpectrumError);
}

TEST_CASE("generator config round-trips through json") {
  GeneratorConfig cfg;
  cfg.seed = 7;
  cfg.compound_count = 5;
  cfg.noise_sigma_ppm = 1.25;
  GeneratorConfig loaded = GeneratorConfig::from_json(cfg.to_json());
  CHECK(loaded.seed == 7);
  CHECK(loaded.compound_count == 5);
  CHECK(loaded.noise_sigma_ppm == 1.25);
  CHECK(loaded.masses.mass[0] == cfg.masses.mass[0]);

  CHECK_THROWS(GeneratorConfig::from_json(R"({"fragments_min": -3})"));
  CHECK_THROWS(GeneratorConfig::from_json(R"({"common_loss_probability": 1.5})"));
}

TEST_CASE("scoring model favors clean common losses") {
  ScoringModel model;
  Formula water = Formula::of(0, 2, 0, 1);
  Formula odd = Formula::of(3, 7, 1, 2);
  CHECK(model.loss_term(water) == doctest::Approx(2.0));
  CHECK(model.loss_term(odd) == doctest::Approx(-1.3));
  double good = model.edge_weight(water, 0.5, 0.4, 10.0);
  double worse_mass = model.edge_weight(water, 8.0, 0.4, 10.0);
  double worse_loss = model.edge_weight(odd, 0.5, 0.4, 10.0);
  CHECK(good > worse_mass);
  CHECK(good > worse_loss);

  ScoringModel parsed = ScoringModel::from_json(model.to_json());
  CHECK(parsed.alpha == model.alpha);
  CHECK(parsed.losses == model.losses);
}
