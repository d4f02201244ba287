#include "mcs/formula.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace mcs {

const MassTable& default_masses() {
  static const MassTable table;
  return table;
}

double Formula::mass(const MassTable& masses) const {
  double total = 0.0;
  for (int e = 0; e < kElementCount; ++e) total += counts[e] * masses.mass[e];
  return total;
}

int Formula::atom_count() const {
  int total = 0;
  for (int e = 0; e < kElementCount; ++e) total += counts[e];
  return total;
}

bool Formula::empty() const { return atom_count() == 0; }

bool Formula::subformula_of(const Formula& other) const {
  for (int e = 0; e < kElementCount; ++e)
    if (counts[e] > other.counts[e]) return false;
  return true;
}

bool Formula::proper_subformula_of(const Formula& other) const {
  return subformula_of(other) && counts != other.counts;
}

Formula Formula::minus(const Formula& other) const {
  Formula diff;
  for (int e = 0; e < kElementCount; ++e) {
    diff.counts[e] = static_cast<std::int16_t>(counts[e] - other.counts[e]);
    if (diff.counts[e] < 0) throw std::invalid_argument("formula subtraction went negative");
  }
  return diff;
}

std::string Formula::str() const {
  if (empty()) return "-";
  std::string out;
  for (int e = 0; e < kElementCount; ++e) {
    if (counts[e] == 0) continue;
    out += kElementSymbols[e];
    if (counts[e] > 1) out += std::to_string(counts[e]);
  }
  return out;
}

std::optional<Formula> Formula::parse(std::string_view text) {
  if (text == "-") return Formula{};
  Formula f;
  std::size_t i = 0;
  while (i < text.size()) {
    char sym = text[i++];
    int element = -1;
    for (int e = 0; e < kElementCount; ++e)
      if (kElementSymbols[e] == sym) element = e;
    if (element == -1) return std::nullopt;
    long count = 1;
    if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      count = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        count = count * 10 + (text[i++] - '0');
        if (count > 30000) return std::nullopt;
      }
    }
    if (count == 0) return std::nullopt;
    f.counts[element] = static_cast<std::int16_t>(f.counts[element] + count);
  }
  return f;
}

Formula Formula::of(int c, int h, int n, int o, int p, int s) {
  Formula f;
  f.counts = {static_cast<std::int16_t>(c), static_cast<std::int16_t>(h),
              static_cast<std::int16_t>(n), static_cast<std::int16_t>(o),
              static_cast<std::int16_t>(p), static_cast<std::int16_t>(s)};
  return f;
}

double ring_double_bond_equivalent(const Formula& f) {
  return f.counts[0] + 1.0 + 0.5 * (f.counts[2] + f.counts[4]) - 0.5 * f.counts[1];
}

bool FormulaBounds::admits(const Formula& f) const {
  for (int e = 0; e < kElementCount; ++e)
    if (f.counts[e] > max_counts[e]) return false;
  if (require_valence) {
    double rdbe = ring_double_bond_equivalent(f);
    if (rdbe < 0.0 || rdbe > max_rdbe) return false;
  }
  return true;
}

FormulaBounds FormulaBounds::chnops_default() {
  FormulaBounds b;
  b.max_counts = {40, 80, 10, 20, 4, 4};
  return b;
}

FormulaBounds FormulaBounds::precursor_default() {
  FormulaBounds b = chnops_default();
  b.require_valence = true;
  return b;
}

FormulaBounds FormulaBounds::from_formula(const Formula& f) {
  FormulaBounds b;
  for (int e = 0; e < kElementCount; ++e) b.max_counts[e] = f.counts[e];
  return b;
}

namespace {

struct Decomposer {
  double target;
  double tol;
  const FormulaBounds& bounds;
  const MassTable& masses;
  std::array<double, kElementCount + 1> max_tail;  // heaviest reachable mass from element e on
  std::vector<Formula> found;
  Formula current;

  // elements in decreasing mass for tighter pruning
  static constexpr std::array<int, kElementCount> kOrder = {5, 4, 3, 2, 0, 1};  // S P O N C H

  Decomposer(double target_mass, double tolerance, const FormulaBounds& b, const MassTable& m)
      : target(target_mass), tol(tolerance), bounds(b), masses(m) {
    max_tail[kElementCount] = 0.0;
    for (int i = kElementCount - 1; i >= 0; --i) {
      int e = kOrder[i];
      max_tail[i] = max_tail[i + 1] + bounds.max_counts[e] * masses.mass[e];
    }
  }

  void recurse(int pos, double residual) {
    if (residual < -tol) return;
    if (residual - max_tail[pos] > tol) return;  // remaining elements cannot reach the window
    if (pos == kElementCount) {
      if (std::abs(residual) <= tol && bounds.admits(current)) found.push_back(current);
      return;
    }
    int e = kOrder[pos];
    double em = masses.mass[e];
    int limit = std::min<long>(bounds.max_counts[e], static_cast<long>((residual + tol) / em));
    for (int cnt = 0; cnt <= limit; ++cnt) {
      current.counts[e] = static_cast<std::int16_t>(cnt);
      recurse(pos + 1, residual - cnt * em);
    }
    current.counts[e] = 0;
  }
};

}  // namespace

std::vector<Formula> decompose_mass(double mass, double tolerance_ppm,
                                    const FormulaBounds& bounds, const MassTable& masses) {
  if (mass <= 0) return {};
  Decomposer d(mass, mass * tolerance_ppm * 1e-6, bounds, masses);
  d.recurse(0, mass);

  std::sort(d.found.begin(), d.found.end(), [&](const Formula& a, const Formula& b) {
    double ea = std::abs(a.mass(masses) - mass), eb = std::abs(b.mass(masses) - mass);
    if (ea != eb) return ea < eb;
    return a.counts < b.counts;
  });
  return d.found;
}

const std::vector<Formula>& common_losses() {
  static const std::vector<Formula> losses = {
      Formula::of(0, 2, 0, 1),  // H2O
      Formula::of(1, 0, 0, 1),  // CO
      Formula::of(0, 3, 1, 0),  // NH3
      Formula::of(1, 2, 0, 1),  // CH2O
      Formula::of(1, 0, 0, 2),  // CO2
      Formula::of(2, 4, 0, 0),  // C2H4
  };
  return losses;
}

}  // namespace mcs
