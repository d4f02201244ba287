#include "mcs/scoring.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace mcs {

double ScoringModel::loss_term(const Formula& loss) const {
  for (const Formula& common : losses)
    if (loss == common) return loss_bonus;
  return -loss_penalty_per_atom * loss.atom_count();
}

double ScoringModel::edge_weight(const Formula& loss, double mass_error_ppm,
                                 double intensity_share, double tolerance_ppm) const {
  // both log terms are referenced to their maxima (a perfectly placed peak
  // as intense as the base peak scores 0), so the common-loss bonus is what
  // pushes an edge positive
  double sigma = tolerance_ppm / sigma_divisor;
  double z = mass_error_ppm / sigma;
  double mass_ll = -0.5 * z * z;
  double intensity_ll = std::log(std::min(1.0, intensity_share));
  return alpha * mass_ll + beta * intensity_ll + gamma * loss_term(loss);
}

std::string ScoringModel::to_json() const {
  nlohmann::ordered_json j;
  j["alpha"] = alpha;
  j["beta"] = beta;
  j["gamma"] = gamma;
  j["loss_bonus"] = loss_bonus;
  j["loss_penalty_per_atom"] = loss_penalty_per_atom;
  j["sigma_divisor"] = sigma_divisor;
  auto arr = nlohmann::ordered_json::array();
  for (const Formula& f : losses) arr.push_back(f.str());
  j["common_losses"] = arr;
  return j.dump(2);
}

ScoringModel ScoringModel::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  ScoringModel m;
  m.alpha = j.value("alpha", m.alpha);
  m.beta = j.value("beta", m.beta);
  m.gamma = j.value("gamma", m.gamma);
  m.loss_bonus = j.value("loss_bonus", m.loss_bonus);
  m.loss_penalty_per_atom = j.value("loss_penalty_per_atom", m.loss_penalty_per_atom);
  m.sigma_divisor = j.value("sigma_divisor", m.sigma_divisor);
  if (m.sigma_divisor <= 0) throw std::invalid_argument("sigma_divisor must be positive");
  if (j.contains("common_losses")) {
    m.losses.clear();
    for (const auto& item : j["common_losses"]) {
      auto f = Formula::parse(item.get<std::string>());
      if (!f) throw std::invalid_argument("bad formula in common_losses: " + item.get<std::string>());
      m.losses.push_back(*f);
    }
  }
  return m;
}

ScoringModel ScoringModel::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scoring config: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

}  // namespace mcs
