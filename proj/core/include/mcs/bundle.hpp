#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mcs/builder.hpp"

namespace mcs {

/// On-disk layout of one compound:
///   <dir>/spectrum.txt      spectrum in the text format
///   <dir>/cand_0000.json..  one graph file per candidate
///   <dir>/manifest.json     candidate formulas, ppm errors, truth flags
void write_bundle(const std::filesystem::path& dir, const CompoundInstance& compound,
                  std::optional<std::uint64_t> seed = std::nullopt);

CompoundInstance load_bundle(const std::filesystem::path& dir);

/// Compound subdirectories of a corpus directory, sorted by name.
std::vector<std::filesystem::path> list_bundles(const std::filesystem::path& corpus_dir);

}  // namespace mcs
