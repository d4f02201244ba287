#pragma once

#include <iosfwd>
#include <string>

#include "mcs/colored_dag.hpp"

namespace mcs {

/// Structured-text graph format:
///   {"root": id,
///    "colors": [{"id": c, "rank": r}, ...],
///    "nodes":  [{"id": v, "color": c, "label": "..."}, ...],
///    "edges":  [{"from": u, "to": v, "w": weight}, ...]}
/// Node and color ids may be arbitrary distinct non-negative integers in
/// files; they are remapped to dense ids in ascending order on load.
/// Non-finite weights are rejected.
ColoredDag load_graph(std::istream& in);
ColoredDag load_graph_file(const std::string& path);

void save_graph(const ColoredDag& g, std::ostream& out);
void save_graph_file(const ColoredDag& g, const std::string& path);

/// Dumps a solution tree in the same format (loadable by load_graph) with
/// an extra "tree": true marker. Node ids keep the host graph's ids.
void save_tree(const ColoredDag& g, const SubtreeSolution& t, std::ostream& out);
void save_tree_file(const ColoredDag& g, const SubtreeSolution& t, const std::string& path);

}  // namespace mcs
