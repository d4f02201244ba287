#include "mcs/lp_export.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <vector>

namespace mcs {

namespace {

std::string var_name(NodeId u, NodeId v) {
  return "x_" + std::to_string(u) + "_" + std::to_string(v);
}

std::string coeff(double w) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", w);
  return buf;
}

// LP-format lines are kept short for picky readers; wraps between terms.
class LineWriter {
 public:
  explicit LineWriter(std::ostream& out) : out_(out) {}

  void begin(const std::string& head) {
    out_ << " " << head;
    column_ = head.size() + 1;
  }

  void term(const std::string& text) {
    if (column_ + text.size() + 1 > 200) {
      out_ << "\n   ";
      column_ = 3;
    }
    out_ << " " << text;
    column_ += text.size() + 1;
  }

  void end(const std::string& tail) {
    term(tail);
    out_ << "\n";
  }

 private:
  std::ostream& out_;
  std::size_t column_ = 0;
};

}  // namespace

void export_lp(const ColoredDag& g, std::ostream& sink) {
  const int n = g.node_count();
  LineWriter w(sink);

  sink << "\\ maximum colorful subtree instance: " << n << " nodes, " << g.edge_count()
       << " edges, " << g.color_count() << " colors, root " << g.root() << "\n";
  sink << "Maximize\n";
  w.begin("obj:");
  bool first = true;
  g.for_each_edge([&](NodeId u, NodeId v, double weight) {
    std::string sign = weight < 0 ? "- " : (first ? "" : "+ ");
    w.term(sign + coeff(std::abs(weight)) + " " + var_name(u, v));
    first = false;
  });
  sink << "\n";

  sink << "Subject To\n";
  // at most one incoming edge per node
  for (NodeId v = 0; v < n; ++v) {
    auto in = g.in_edges(v);
    if (in.empty()) continue;
    w.begin("indeg_" + std::to_string(v) + ":");
    bool lead = true;
    for (const InEdge& e : in) {
      w.term((lead ? "" : "+ ") + var_name(e.from, v));
      lead = false;
    }
    w.end("<= 1");
  }
  // an edge may leave a non-root node only when the node is entered
  for (NodeId v = 0; v < n; ++v) {
    if (v == g.root()) continue;
    for (const OutEdge& out : g.out_edges(v)) {
      w.begin("conn_" + std::to_string(v) + "_" + std::to_string(out.to) + ":");
      w.term(var_name(v, out.to));
      for (const InEdge& e : g.in_edges(v)) w.term("- " + var_name(e.from, v));
      w.end("<= 0");
    }
  }
  // each color enters the tree at most once
  for (ColorIndex c = 0; c < g.color_count(); ++c) {
    bool any = false;
    for (NodeId v : g.nodes_of_color(c))
      if (!g.in_edges(v).empty()) any = true;
    if (!any) continue;
    w.begin("color_" + std::to_string(c) + ":");
    bool lead = true;
    for (NodeId v : g.nodes_of_color(c)) {
      for (const InEdge& e : g.in_edges(v)) {
        w.term((lead ? "" : "+ ") + var_name(e.from, v));
        lead = false;
      }
    }
    w.end("<= 1");
  }

  sink << "Binaries\n";
  w.begin("");
  g.for_each_edge([&](NodeId u, NodeId v, double) { w.term(var_name(u, v)); });
  sink << "\n";
  sink << "End\n";
  if (!sink) throw GraphError("failed writing LP model");
}

void export_lp_file(const ColoredDag& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw GraphError("cannot write LP file: " + path);
  export_lp(g, out);
}

}  // namespace mcs
