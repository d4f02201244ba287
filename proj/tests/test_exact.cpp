#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "mcs/exact.hpp"
#include "mcs/heuristics.hpp"
#include "mcs/lp_export.hpp"
#include "mcs/validate.hpp"
#include "test_support.hpp"

using namespace mcs;
using mcs::test::enumeration_optimum;
using mcs::test::InstanceOptions;
using mcs::test::make_random_instance;

TEST_CASE("exact optimum on the path-trap fixture is 8") {
  ColoredDag g = test::small_path_trap_fixture();
  SubtreeSolution t = solve_exact_dp(g);
  CHECK(t.score == doctest::Approx(8.0).epsilon(1e-12));
  CHECK(tree_violations(g, t).empty());
  CHECK(enumeration_optimum(g) == doctest::Approx(8.0));
}

TEST_CASE("root-only graph solves to zero") {
  DagBuilder b;
  b.add_color(0, 0);
  b.add_node(0);
  b.set_root(0);
  ColoredDag g = b.build();
  SubtreeSolution t = solve_exact_dp(g);
  CHECK(t.score == 0.0);
  CHECK(t.node_count() == 1);
}

TEST_CASE("exact equals exhaustive enumeration on small instances") {
  std::mt19937_64 rng(2024);
  InstanceOptions opt;
  opt.n_min = 2;
  opt.n_max = 8;
  opt.k_min = 2;
  opt.k_max = 8;
  for (int round = 0; round < 400; ++round) {
    opt.edge_prob = 0.2 + 0.1 * (round % 7);
    opt.transitive = round % 2 == 0;
    ColoredDag g = make_random_instance(rng, opt);
    SubtreeSolution t = solve_exact_dp(g);
    CHECK(std::abs(t.score - enumeration_optimum(g)) <= 1e-9);
    CHECK(tree_violations(g, t).empty());
  }
}

TEST_CASE("fresh positive pendant edge raises the optimum by its weight") {
  std::mt19937_64 rng(5150);
  InstanceOptions opt;
  opt.n_min = 5;
  opt.n_max = 10;
  for (int round = 0; round < 30; ++round) {
    ColoredDag g = make_random_instance(rng, opt);
    double base = solve_exact_dp(g).score;

    DagBuilder b;
    int k = g.color_count();
    for (const ColorId& c : g.color_table()) b.add_color(c.index, c.rank);
    b.add_color(k, k);
    for (NodeId v = 0; v < g.node_count(); ++v) b.add_node(g.color(v), g.label(v));
    NodeId fresh = b.add_node(k, "fresh");
    g.for_each_edge([&](NodeId u, NodeId v, double w) { b.add_edge(u, v, w); });
    double bonus = 2.5 + round;
    b.add_edge(g.root(), fresh, bonus);
    b.set_root(g.root());
    ColoredDag grown = b.build();

    CHECK(solve_exact_dp(grown).score == doctest::Approx(base + bonus).epsilon(1e-12));
  }
}

TEST_CASE("capacity refusal is explicit") {
  DagBuilder b;
  const int k = 24;
  for (int c = 0; c < k; ++c) b.add_color(c, c);
  NodeId root = b.add_node(0, "r");
  for (int c = 1; c < k; ++c) {
    NodeId v = b.add_node(c);
    b.add_edge(root, v, 1.0);
  }
  b.set_root(root);
  ColoredDag g = b.build();
  CHECK_THROWS_AS(solve_exact_dp(g, 22), CapacityError);
  CHECK_NOTHROW(solve_exact_dp(g, 24));
}

TEST_CASE("capacity counts colors on nodes, not table entries") {
  // a graph carrying a wide color table but few colored nodes still solves
  DagBuilder b;
  for (int c = 0; c < 30; ++c) b.add_color(c, c);
  NodeId r = b.add_node(0, "r");
  NodeId a = b.add_node(29, "a");
  b.add_edge(r, a, 4.0);
  b.set_root(r);
  ColoredDag g = b.build();
  SubtreeSolution t = solve_exact_dp(g, 22);
  CHECK(t.score == doctest::Approx(4.0));
}

TEST_CASE("backtraced trees are deterministic") {
  std::mt19937_64 rng(31337);
  InstanceOptions opt;
  opt.integer_weights = true;  // plenty of score ties
  for (int round = 0; round < 50; ++round) {
    ColoredDag g = make_random_instance(rng, opt);
    SubtreeSolution a = solve_exact_dp(g);
    SubtreeSolution b = solve_exact_dp(g);
    CHECK(a == b);
  }
}

namespace {

struct LpModel {
  std::string objective;
  std::vector<std::string> constraints;
  std::vector<std::string> binaries;
};

LpModel parse_lp(const std::string& text) {
  LpModel model;
  std::istringstream in(text);
  std::string line, section;
  std::string pending;
  auto flush = [&]() {
    if (pending.empty()) return;
    if (section == "objective")
      model.objective += pending;
    else if (section == "constraints")
      model.constraints.push_back(pending);
    pending.clear();
  };
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '\\') continue;
    if (line == "Maximize") {
      section = "objective";
      continue;
    }
    if (line == "Subject To") {
      flush();
      section = "constraints";
      continue;
    }
    if (line == "Binaries") {
      flush();
      section = "binaries";
      continue;
    }
    if (line == "End") {
      flush();
      break;
    }
    bool continuation = line.rfind("   ", 0) == 0;
    if (section == "binaries") {
      std::istringstream vars(line);
      std::string v;
      while (vars >> v) model.binaries.push_back(v);
      continue;
    }
    if (!continuation) flush();
    pending += line;
  }
  return model;
}

}  // namespace

TEST_CASE("LP export of a single edge has one variable and two constraints") {
  DagBuilder b;
  b.add_color(0, 0).add_color(1, 1);
  NodeId r = b.add_node(0, "r"), a = b.add_node(1, "a");
  b.add_edge(r, a, 5.0).set_root(r);
  ColoredDag g = b.build();

  std::ostringstream out;
  export_lp(g, out);
  LpModel model = parse_lp(out.str());
  CHECK(model.binaries == std::vector<std::string>{"x_0_1"});
  REQUIRE(model.constraints.size() == 2);
  CHECK(model.constraints[0].find("indeg_1:") != std::string::npos);
  CHECK(model.constraints[1].find("color_1:") != std::string::npos);
  CHECK(model.objective.find("5 x_0_1") != std::string::npos);
}

TEST_CASE("LP export counts variables and color constraints") {
  std::mt19937_64 rng(4242);
  InstanceOptions opt;
  opt.n_min = 6;
  opt.n_max = 14;
  for (int round = 0; round < 20; ++round) {
    ColoredDag g = make_random_instance(rng, opt);
    std::ostringstream out;
    export_lp(g, out);
    LpModel model = parse_lp(out.str());
    CHECK(static_cast<long>(model.binaries.size()) == g.edge_count());

    int color_constraints = 0;
    int indeg_constraints = 0;
    for (const std::string& c : model.constraints) {
      if (c.find("color_") == 1) ++color_constraints;
      if (c.find("indeg_") == 1) ++indeg_constraints;
    }
    // root color held by the root alone: every other color constrained
    int colors_with_nodes = 0;
    for (ColorIndex c = 0; c < g.color_count(); ++c)
      if (!g.nodes_of_color(c).empty()) ++colors_with_nodes;
    CHECK(color_constraints == colors_with_nodes - 1);
    int nodes_with_in = 0;
    for (NodeId v = 0; v < g.node_count(); ++v)
      if (!g.in_edges(v).empty()) ++nodes_with_in;
    CHECK(indeg_constraints == nodes_with_in);
  }
}

TEST_CASE("LP model brute force reproduces the fixture optimum") {
  // feasible assignments of the exported 0/1 model are exactly the
  // colorful rooted subtrees; with five edges we can try all of them
  ColoredDag g = test::small_path_trap_fixture();
  std::ostringstream out;
  export_lp(g, out);
  CHECK(out.str().find("Binaries") != std::string::npos);

  struct Edge {
    NodeId from, to;
    double w;
  };
  std::vector<Edge> edges;
  g.for_each_edge([&](NodeId u, NodeId v, double w) { edges.push_back({u, v, w}); });
  REQUIRE(edges.size() == 5);

  double best = 0.0;
  for (unsigned mask = 0; mask < (1u << edges.size()); ++mask) {
    std::vector<int> indeg(g.node_count(), 0), color_in(g.color_count(), 0);
    double value = 0.0;
    bool ok = true;
    for (size_t i = 0; i < edges.size(); ++i) {
      if (!(mask & (1u << i))) continue;
      indeg[edges[i].to]++;
      color_in[g.color(edges[i].to)]++;
      value += edges[i].w;
    }
    for (NodeId v = 0; v < g.node_count() && ok; ++v)
      if (indeg[v] > 1) ok = false;
    for (ColorIndex c = 0; c < g.color_count() && ok; ++c)
      if (color_in[c] > 1) ok = false;
    for (size_t i = 0; i < edges.size() && ok; ++i) {
      if (!(mask & (1u << i))) continue;
      if (edges[i].from != g.root() && indeg[edges[i].from] == 0) ok = false;
    }
    if (ok && value > best) best = value;
  }
  CHECK(best == doctest::Approx(8.0));
}
