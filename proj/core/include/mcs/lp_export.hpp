#pragma once

#include <iosfwd>
#include <string>

#include "mcs/colored_dag.hpp"

namespace mcs {

/// Writes the instance as a 0/1 integer program in the textual LP format,
/// one binary variable x_u_v per edge:
///   maximize   sum of w(u,v) * x_u_v
///   subject to (per node) at most one incoming edge,
///              (per non-root node v, edge vw) x_v_w <= sum of incoming x,
///              (per color) at most one incoming edge over its nodes.
/// The model is written, not solved.
void export_lp(const ColoredDag& g, std::ostream& sink);
void export_lp_file(const ColoredDag& g, const std::string& path);

}  // namespace mcs
