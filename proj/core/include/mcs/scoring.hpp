#pragma once

#include <string>
#include <vector>

#include "mcs/formula.hpp"

namespace mcs {

/// Edge scoring for candidate graphs. The weight of an edge into a child
/// node folds the child's node evidence into the edge:
///
///   alpha * log-density of the child's mass error under a zero-mean
///           Gaussian with sigma = tolerance_ppm / sigma_divisor
/// + beta  * log(child peak intensity share)
/// + gamma * loss term: +loss_bonus for a common neutral loss, otherwise
///           -loss_penalty_per_atom * (atom count of the loss)
///
/// All knobs live here and can be loaded from a JSON config block.
struct ScoringModel {
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 1.0;
  double loss_bonus = 2.0;
  double loss_penalty_per_atom = 0.1;
  double sigma_divisor = 3.0;
  std::vector<Formula> losses = common_losses();

  double loss_term(const Formula& loss) const;
  double edge_weight(const Formula& loss, double mass_error_ppm, double intensity_share,
                     double tolerance_ppm) const;

  std::string to_json() const;
  static ScoringModel from_json(const std::string& text);
  static ScoringModel load_file(const std::string& path);
};

}  // namespace mcs
