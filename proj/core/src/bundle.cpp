#include "mcs/bundle.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "mcs/graph_io.hpp"

namespace mcs {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

std::string candidate_file(int index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "cand_%04d.json", index);
  return buf;
}

}  // namespace

void write_bundle(const fs::path& dir, const CompoundInstance& compound,
                  std::optional<std::uint64_t> seed) {
  fs::create_directories(dir);
  save_spectrum_file(compound.spectrum, (dir / "spectrum.txt").string());

  json manifest;
  if (seed) manifest["seed"] = *seed;
  manifest["precursor_mz"] = compound.spectrum.precursor_mz;
  if (compound.truth) manifest["truth"] = compound.truth->str();
  manifest["truth_in_candidates"] = compound.truth_index().has_value();
  manifest["no_candidates"] = compound.no_candidates();

  json list = json::array();
  for (int i = 0; i < static_cast<int>(compound.candidates.size()); ++i) {
    const CandidateGraph& cg = compound.candidates[i];
    std::string file = candidate_file(i);
    save_graph_file(cg.graph, (dir / file).string());
    list.push_back({{"formula", cg.formula.str()},
                    {"mass_error_ppm", cg.mass_error_ppm},
                    {"is_truth", cg.is_truth},
                    {"graph", file},
                    {"nodes", cg.graph.node_count()},
                    {"edges", cg.graph.edge_count()},
                    {"colors", cg.graph.color_count()}});
  }
  manifest["candidates"] = std::move(list);

  std::ofstream out(dir / "manifest.json");
  if (!out) throw std::runtime_error("cannot write manifest in " + dir.string());
  out << manifest.dump(2) << "\n";
}

CompoundInstance load_bundle(const fs::path& dir) {
  std::ifstream in(dir / "manifest.json");
  if (!in) throw std::runtime_error("no manifest.json in " + dir.string());
  json manifest = json::parse(in);

  CompoundInstance compound;
  compound.spectrum = load_spectrum_file((dir / "spectrum.txt").string());
  if (manifest.contains("truth")) {
    auto truth = Formula::parse(manifest["truth"].get<std::string>());
    if (!truth) throw std::runtime_error("bad truth formula in " + dir.string());
    compound.truth = *truth;
  }
  for (const json& entry : manifest["candidates"]) {
    CandidateGraph cg;
    auto f = Formula::parse(entry.at("formula").get<std::string>());
    if (!f) throw std::runtime_error("bad candidate formula in " + dir.string());
    cg.formula = *f;
    cg.mass_error_ppm = entry.at("mass_error_ppm").get<double>();
    cg.is_truth = entry.value("is_truth", false);
    cg.graph = load_graph_file((dir / entry.at("graph").get<std::string>()).string());
    compound.candidates.push_back(std::move(cg));
  }
  return compound;
}

std::vector<fs::path> list_bundles(const fs::path& corpus_dir) {
  std::vector<fs::path> dirs;
  for (const auto& entry : fs::directory_iterator(corpus_dir)) {
    if (entry.is_directory() && fs::exists(entry.path() / "manifest.json"))
      dirs.push_back(entry.path());
  }
  std::sort(dirs.begin(), dirs.end());
  return dirs;
}

}  // namespace mcs
