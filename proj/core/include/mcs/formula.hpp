#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mcs {

inline constexpr int kElementCount = 6;
inline constexpr std::array<char, kElementCount> kElementSymbols = {'C', 'H', 'N', 'O', 'P', 'S'};

/// Monoisotopic masses in Dalton, overridable through configuration files.
struct MassTable {
  std::array<double, kElementCount> mass = {12.000000, 1.007825, 14.003074,
                                            15.994915, 30.973762, 31.972071};
};

const MassTable& default_masses();

/// A molecular formula over C, H, N, O, P, S.
struct Formula {
  std::array<std::int16_t, kElementCount> counts{};

  double mass(const MassTable& masses = default_masses()) const;
  int atom_count() const;
  bool empty() const;

  /// Componentwise <= (the subformula partial order).
  bool subformula_of(const Formula& other) const;
  bool proper_subformula_of(const Formula& other) const;

  /// Componentwise difference; requires other to be a subformula of *this.
  Formula minus(const Formula& other) const;

  std::string str() const;
  static std::optional<Formula> parse(std::string_view text);

  static Formula of(int c, int h, int n = 0, int o = 0, int p = 0, int s = 0);

  auto operator<=>(const Formula&) const = default;
};

/// Degree of unsaturation: C + 1 + (N + P)/2 - H/2.
double ring_double_bond_equivalent(const Formula& f);

/// Per-element maximum counts for decomposition, with an optional valence
/// filter (non-negative ring-double-bond equivalent) that weeds out
/// chemically impossible hydrogen counts.
struct FormulaBounds {
  std::array<int, kElementCount> max_counts{};
  bool require_valence = false;
  double max_rdbe = 40.0;

  bool admits(const Formula& f) const;

  static FormulaBounds chnops_default();
  /// chnops_default plus the valence filter; the right choice for
  /// decomposing precursor masses into candidate formulas.
  static FormulaBounds precursor_default();
  static FormulaBounds from_formula(const Formula& f);
};

/// Every formula within the bounds whose mass lies within the relative
/// window |mass(f) - mass| <= mass * tolerance_ppm * 1e-6, ordered by
/// absolute mass error, then lexicographically by counts.
std::vector<Formula> decompose_mass(double mass, double tolerance_ppm,
                                    const FormulaBounds& bounds,
                                    const MassTable& masses = default_masses());

/// The handful of neutral losses that get a score bonus.
const std::vector<Formula>& common_losses();

}  // namespace mcs
