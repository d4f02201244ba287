#include "mcs/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace mcs {

void Spectrum::sort_by_intensity() {
  std::stable_sort(peaks.begin(), peaks.end(), [](const Peak& a, const Peak& b) {
    if (a.intensity != b.intensity) return a.intensity > b.intensity;
    return a.mz < b.mz;
  });
}

double Spectrum::total_intensity() const {
  double total = 0.0;
  for (const Peak& p : peaks) total += p.intensity;
  return total;
}

Spectrum load_spectrum(std::istream& in) {
  Spectrum s;
  bool have_precursor = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "PRECURSOR") {
      if (!(ls >> s.precursor_mz) || !std::isfinite(s.precursor_mz) || s.precursor_mz <= 0)
        throw SpectrumError("line " + std::to_string(lineno) + ": bad precursor m/z");
      have_precursor = true;
      continue;
    }
    Peak p;
    try {
      p.mz = std::stod(first);
    } catch (const std::exception&) {
      throw SpectrumError("line " + std::to_string(lineno) + ": bad peak m/z");
    }
    if (!(ls >> p.intensity)) throw SpectrumError("line " + std::to_string(lineno) + ": missing intensity");
    if (!std::isfinite(p.mz) || !std::isfinite(p.intensity) || p.mz <= 0 || p.intensity <= 0)
      throw SpectrumError("line " + std::to_string(lineno) + ": peak values must be positive");
    s.peaks.push_back(p);
  }
  if (!have_precursor) throw SpectrumError("spectrum has no PRECURSOR line");
  s.sort_by_intensity();
  return s;
}

Spectrum load_spectrum_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpectrumError("cannot open spectrum file: " + path);
  return load_spectrum(in);
}

void save_spectrum(const Spectrum& s, std::ostream& out) {
  char buf[80];
  std::snprintf(buf, sizeof(buf), "PRECURSOR %.6f\n", s.precursor_mz);
  out << buf;
  for (const Peak& p : s.peaks) {
    std::snprintf(buf, sizeof(buf), "%.6f %.4f\n", p.mz, p.intensity);
    out << buf;
  }
}

void save_spectrum_file(const Spectrum& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw SpectrumError("cannot write spectrum file: " + path);
  save_spectrum(s, out);
}

}  // namespace mcs
