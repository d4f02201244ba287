#include "mcs/synthetic.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace mcs {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

}  // namespace

std::uint64_t GeneratorConfig::compound_seed(int index) const {
  return splitmix64(seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(index + 1)));
}

std::string GeneratorConfig::to_json() const {
  nlohmann::ordered_json j;
  j["seed"] = seed;
  j["compound_count"] = compound_count;
  j["precursor_mass_min"] = precursor_mass_min;
  j["precursor_mass_max"] = precursor_mass_max;
  j["fragments_min"] = fragments_min;
  j["fragments_max"] = fragments_max;
  j["primary_fragments"] = primary_fragments;
  j["primary_share_floor"] = primary_share_floor;
  j["noise_sigma_ppm"] = noise_sigma_ppm;
  j["noise_peaks_min"] = noise_peaks_min;
  j["noise_peaks_max"] = noise_peaks_max;
  j["intensity_log_mu"] = intensity_log_mu;
  j["intensity_depth_attenuation"] = intensity_depth_attenuation;
  j["intensity_log_sigma_min"] = intensity_log_sigma_min;
  j["intensity_log_sigma_max"] = intensity_log_sigma_max;
  j["noise_intensity_factor"] = noise_intensity_factor;
  j["harmonic_noise_probability"] = harmonic_noise_probability;
  j["common_loss_probability"] = common_loss_probability;
  j["chain_bias"] = chain_bias;
  nlohmann::ordered_json masses_json;
  for (int e = 0; e < kElementCount; ++e)
    masses_json[std::string(1, kElementSymbols[e])] = masses.mass[e];
  j["element_masses"] = masses_json;
  return j.dump(2);
}

GeneratorConfig GeneratorConfig::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  GeneratorConfig c;
  c.seed = j.value("seed", c.seed);
  c.compound_count = j.value("compound_count", c.compound_count);
  c.precursor_mass_min = j.value("precursor_mass_min", c.precursor_mass_min);
  c.precursor_mass_max = j.value("precursor_mass_max", c.precursor_mass_max);
  c.fragments_min = j.value("fragments_min", c.fragments_min);
  c.fragments_max = j.value("fragments_max", c.fragments_max);
  c.primary_fragments = j.value("primary_fragments", c.primary_fragments);
  c.primary_share_floor = j.value("primary_share_floor", c.primary_share_floor);
  c.noise_sigma_ppm = j.value("noise_sigma_ppm", c.noise_sigma_ppm);
  c.noise_peaks_min = j.value("noise_peaks_min", c.noise_peaks_min);
  c.noise_peaks_max = j.value("noise_peaks_max", c.noise_peaks_max);
  c.intensity_log_mu = j.value("intensity_log_mu", c.intensity_log_mu);
  c.intensity_depth_attenuation =
      j.value("intensity_depth_attenuation", c.intensity_depth_attenuation);
  c.intensity_log_sigma_min = j.value("intensity_log_sigma_min", c.intensity_log_sigma_min);
  c.intensity_log_sigma_max = j.value("intensity_log_sigma_max", c.intensity_log_sigma_max);
  c.noise_intensity_factor = j.value("noise_intensity_factor", c.noise_intensity_factor);
  c.harmonic_noise_probability = j.value("harmonic_noise_probability", c.harmonic_noise_probability);
  c.common_loss_probability = j.value("common_loss_probability", c.common_loss_probability);
  c.chain_bias = j.value("chain_bias", c.chain_bias);
  if (j.contains("element_masses")) {
    for (int e = 0; e < kElementCount; ++e) {
      std::string key(1, kElementSymbols[e]);
      c.masses.mass[e] = j["element_masses"].value(key, c.masses.mass[e]);
    }
  }
  if (c.compound_count < 0 || c.fragments_min < 0 || c.fragments_max < c.fragments_min ||
      c.precursor_mass_min <= 0 || c.precursor_mass_max < c.precursor_mass_min ||
      c.noise_sigma_ppm < 0 || c.noise_peaks_min < 0 || c.noise_peaks_max < c.noise_peaks_min ||
      c.common_loss_probability < 0 || c.common_loss_probability > 1 || c.chain_bias < 0 ||
      c.chain_bias > 1 || c.intensity_log_sigma_min < 0 ||
      c.intensity_log_sigma_max < c.intensity_log_sigma_min ||
      c.harmonic_noise_probability < 0 || c.harmonic_noise_probability > 1)
    throw std::invalid_argument("generator config values out of range");
  return c;
}

GeneratorConfig GeneratorConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open generator config: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

SyntheticCompound generate_synthetic_compound(std::uint64_t seed, const GeneratorConfig& cfg) {
  std::mt19937_64 rng(seed);
  auto gauss = [&](double sigma) {
    return sigma > 0 ? std::normal_distribution<double>(0.0, sigma)(rng) : 0.0;
  };
  auto log_normal = [&](double mu, double sigma) {
    return sigma > 0 ? std::lognormal_distribution<double>(mu, sigma)(rng) : std::exp(mu);
  };

  SyntheticCompound out;

  // precursor formula by rejection into the mass window
  for (int attempt = 0; attempt < 4000; ++attempt) {
    int c = uniform_int(rng, 10, 30);
    int h = uniform_int(rng, std::max(4, c / 2), 2 * c + 2);
    Formula f = Formula::of(c, h, uniform_int(rng, 0, 4), uniform_int(rng, 1, 10),
                            uniform_int(rng, 0, 99) < 15 ? 1 : 0,
                            uniform_int(rng, 0, 99) < 15 ? 1 : 0);
    double m = f.mass(cfg.masses);
    out.truth = f;
    if (m >= cfg.precursor_mass_min && m <= cfg.precursor_mass_max) break;
  }

  // plant the fragmentation tree; losses are mostly common ones so the
  // built graphs keep a healthy share of positive edges
  std::vector<Formula> nodes{out.truth};
  std::vector<int> depth{0};
  std::vector<int> fragment_depth;
  int wanted = uniform_int(rng, cfg.fragments_min, cfg.fragments_max);
  for (int i = 0; i < wanted; ++i) {
    bool primary = i < cfg.primary_fragments;
    for (int attempt = 0; attempt < 30; ++attempt) {
      // a chain bias keeps fragmentation cascades deep
      bool extend_tip = !primary && nodes.size() > 1 &&
                        std::uniform_real_distribution<double>(0.0, 1.0)(rng) < cfg.chain_bias;
      int parent_at = primary ? 0
                     : extend_tip
                         ? static_cast<int>(nodes.size()) - 1
                         : uniform_int(rng, 0, static_cast<int>(nodes.size()) - 1);
      const Formula& parent = nodes[parent_at];
      Formula loss;
      if (primary ||
          std::uniform_real_distribution<double>(0.0, 1.0)(rng) < cfg.common_loss_probability) {
        const auto& table = common_losses();
        loss = table[uniform_int(rng, 0, static_cast<int>(table.size()) - 1)];
      } else {
        loss = Formula::of(uniform_int(rng, 0, 3), uniform_int(rng, 0, 6), uniform_int(rng, 0, 1),
                           uniform_int(rng, 0, 2));
      }
      if (loss.empty() || !loss.subformula_of(parent)) continue;
      Formula child = parent.minus(loss);
      if (child.empty() || child.mass(cfg.masses) < 40.0) continue;
      if (std::find(nodes.begin(), nodes.end(), child) != nodes.end()) continue;
      out.planted_edges.emplace_back(parent, child);
      out.fragments.push_back(child);
      nodes.push_back(child);
      depth.push_back(depth[parent_at] + 1);
      fragment_depth.push_back(depth[parent_at] + 1);
      break;
    }
  }

  // emit peaks: precursor, fragments, then noise; intensity fades with
  // fragmentation depth, so primary fragments stay well above the floor
  double sigma_int = std::uniform_real_distribution<double>(cfg.intensity_log_sigma_min,
                                                            cfg.intensity_log_sigma_max)(rng);
  out.spectrum.precursor_mz =
      out.truth.mass(cfg.masses) * (1.0 + gauss(cfg.noise_sigma_ppm) * 1e-6);
  auto emit = [&](double mass, double intensity) {
    Peak p;
    p.mz = mass * (1.0 + gauss(cfg.noise_sigma_ppm) * 1e-6);
    p.intensity = intensity;
    out.spectrum.peaks.push_back(p);
  };
  emit(out.truth.mass(cfg.masses), log_normal(cfg.intensity_log_mu, sigma_int));
  for (size_t i = 0; i < out.fragments.size(); ++i) {
    double mu = cfg.intensity_log_mu - cfg.intensity_depth_attenuation * fragment_depth[i];
    emit(out.fragments[i].mass(cfg.masses), log_normal(mu, sigma_int));
  }
  // hold the primary fragments above the share floor
  double base = 0.0;
  for (const Peak& p : out.spectrum.peaks) base = std::max(base, p.intensity);
  for (int i = 0; i < cfg.primary_fragments && i + 1 < static_cast<int>(out.spectrum.peaks.size());
       ++i) {
    Peak& p = out.spectrum.peaks[i + 1];  // peak 0 is the precursor
    p.intensity = std::max(p.intensity, cfg.primary_share_floor * base);
  }

  // noise peaks: mostly secondary-fragmentation lookalikes one common loss
  // below a planted node, the rest uniform hiss
  int noise_count = uniform_int(rng, cfg.noise_peaks_min, cfg.noise_peaks_max);
  for (int i = 0; i < noise_count; ++i) {
    double mz = 0.0;
    bool harmonic =
        std::uniform_real_distribution<double>(0.0, 1.0)(rng) < cfg.harmonic_noise_probability;
    if (harmonic) {
      const Formula& base = nodes[uniform_int(rng, 0, static_cast<int>(nodes.size()) - 1)];
      const auto& table = common_losses();
      const Formula& loss = table[uniform_int(rng, 0, static_cast<int>(table.size()) - 1)];
      if (loss.subformula_of(base)) {
        double mass = base.minus(loss).mass(cfg.masses);
        if (mass > 35.0) mz = mass;
      }
    }
    if (mz == 0.0)
      mz = std::uniform_real_distribution<double>(0.25, 0.95)(rng) * out.truth.mass(cfg.masses);
    bool near_planted = false;
    for (const Formula& f : nodes)
      if (std::abs(f.mass(cfg.masses) - mz) < mz * 25e-6) near_planted = true;
    if (near_planted) continue;  // noise must not shadow a planted peak
    // decoys live at mid-depth intensity, tempting but never dominant
    double noise_mu = cfg.intensity_log_mu - 2.0 * cfg.intensity_depth_attenuation;
    double intensity = cfg.noise_intensity_factor * log_normal(noise_mu, sigma_int);
    out.spectrum.peaks.push_back(Peak{mz * (1.0 + gauss(cfg.noise_sigma_ppm) * 1e-6), intensity});
  }
  out.spectrum.sort_by_intensity();
  return out;
}

}  // namespace mcs
