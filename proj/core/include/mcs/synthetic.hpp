#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mcs/formula.hpp"
#include "mcs/spectrum.hpp"

namespace mcs {

/// Knobs for the synthetic compound generator; loadable from JSON so a
/// corpus is fully described by one config file plus seeds.
struct GeneratorConfig {
  std::uint64_t seed = 424242;
  int compound_count = 200;
  double precursor_mass_min = 230.0;
  double precursor_mass_max = 400.0;
  int fragments_min = 9;
  int fragments_max = 14;
  // the first few fragments hang directly under the precursor via common
  // losses and keep a guaranteed share of the base peak, so every usable
  // spectrum carries some positive primary structure
  int primary_fragments = 3;
  double primary_share_floor = 0.3;
  double noise_sigma_ppm = 0.8;
  int noise_peaks_min = 2;
  int noise_peaks_max = 5;
  double intensity_log_mu = 3.0;
  // peaks fade with fragmentation depth; primary fragments stay strong
  double intensity_depth_attenuation = 0.5;
  // per-compound severity: the intensity spread is drawn from this range,
  // so most compounds stay clean while a tail gets genuinely hard
  double intensity_log_sigma_min = 0.45;
  double intensity_log_sigma_max = 1.05;
  double noise_intensity_factor = 0.8;
  // share of noise peaks placed at (planted fragment - common loss)
  double harmonic_noise_probability = 0.6;
  double common_loss_probability = 0.7;
  double chain_bias = 0.3;
  MassTable masses;

  std::string to_json() const;
  static GeneratorConfig from_json(const std::string& text);
  static GeneratorConfig load_file(const std::string& path);

  /// Seed for one compound of the corpus, decorrelated across indices.
  std::uint64_t compound_seed(int index) const;
};

/// One generated compound: the noisy spectrum, the true precursor formula
/// and the planted fragmentation tree behind the peaks.
struct SyntheticCompound {
  Spectrum spectrum;
  Formula truth;
  std::vector<Formula> fragments;                        // excludes the precursor
  std::vector<std::pair<Formula, Formula>> planted_edges;  // (parent, child)
};

/// Deterministic in `seed`: samples a precursor formula in the configured
/// mass range, grows a fragmentation tree whose losses are mostly drawn
/// from the common-loss table, and emits peaks with ppm-scaled Gaussian
/// m/z noise, log-normal intensities and optional noise peaks.
SyntheticCompound generate_synthetic_compound(std::uint64_t seed, const GeneratorConfig& config);

}  // namespace mcs
