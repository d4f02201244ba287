#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace mcs {

class SpectrumError : public std::runtime_error {
 public:
  explicit SpectrumError(const std::string& what) : std::runtime_error(what) {}
};

struct Peak {
  double mz = 0.0;
  double intensity = 0.0;
};

/// A fragment spectrum: precursor m/z plus peaks, kept sorted by
/// decreasing intensity (the order the peak cap works in).
struct Spectrum {
  double precursor_mz = 0.0;
  std::vector<Peak> peaks;

  void sort_by_intensity();
  double total_intensity() const;
};

/// Text format: a "PRECURSOR <mz>" header line, then one "<mz> <intensity>"
/// line per peak. '#' starts a comment.
Spectrum load_spectrum(std::istream& in);
Spectrum load_spectrum_file(const std::string& path);
void save_spectrum(const Spectrum& s, std::ostream& out);
void save_spectrum_file(const Spectrum& s, const std::string& path);

}  // namespace mcs
