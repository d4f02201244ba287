#include "mcs/graph_io.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <ostream>

#include <json.hpp>

namespace mcs {

using json = nlohmann::ordered_json;

namespace {

double weight_from_json(const json& j) {
  if (!j.is_number()) throw GraphError("edge weight is not a finite number");
  double w = j.get<double>();
  if (!std::isfinite(w)) throw GraphError("edge weight is not finite");
  return w;
}

}  // namespace

ColoredDag load_graph(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw GraphError(std::string("graph file is not valid: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("root") || !doc.contains("nodes") ||
      !doc.contains("colors") || !doc.contains("edges"))
    throw GraphError("graph file must carry root, colors, nodes and edges");

  std::map<long, ColorIndex> color_map;
  for (const json& c : doc["colors"]) {
    long id = c.at("id").get<long>();
    if (id < 0) throw GraphError("negative color id in graph file");
    if (!color_map.emplace(id, 0).second)
      throw GraphError("duplicate color id " + std::to_string(id));
  }
  ColorIndex next_color = 0;
  for (auto& [id, dense] : color_map) dense = next_color++;

  std::map<long, NodeId> node_map;
  for (const json& nd : doc["nodes"]) {
    long id = nd.at("id").get<long>();
    if (id < 0) throw GraphError("negative node id in graph file");
    if (!node_map.emplace(id, 0).second)
      throw GraphError("duplicate node id " + std::to_string(id));
  }
  NodeId next_node = 0;
  for (auto& [id, dense] : node_map) dense = next_node++;

  DagBuilder b;
  for (const json& c : doc["colors"])
    b.add_color(color_map.at(c.at("id").get<long>()), c.at("rank").get<int>());

  std::vector<std::pair<NodeId, json>> nodes;
  for (const json& nd : doc["nodes"]) nodes.emplace_back(node_map.at(nd.at("id").get<long>()), nd);
  std::sort(nodes.begin(), nodes.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [dense, nd] : nodes) {
    long color_id = nd.at("color").get<long>();
    auto it = color_map.find(color_id);
    if (it == color_map.end())
      throw GraphError("node references unknown color " + std::to_string(color_id));
    b.add_node(it->second, nd.value("label", std::string{}));
  }

  for (const json& e : doc["edges"]) {
    long from = e.at("from").get<long>(), to = e.at("to").get<long>();
    auto fit = node_map.find(from), tit = node_map.find(to);
    if (fit == node_map.end() || tit == node_map.end())
      throw GraphError("edge (" + std::to_string(from) + "," + std::to_string(to) +
                       ") references an unknown node id");
    b.add_edge(fit->second, tit->second, weight_from_json(e.at("w")));
  }

  long root = doc["root"].get<long>();
  auto rit = node_map.find(root);
  if (rit == node_map.end()) throw GraphError("root id " + std::to_string(root) + " is unknown");
  b.set_root(rit->second);
  return b.build();
}

ColoredDag load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open graph file: " + path);
  return load_graph(in);
}

void save_graph(const ColoredDag& g, std::ostream& out) {
  json doc;
  doc["root"] = g.root();
  json colors = json::array();
  for (const ColorId& c : g.color_table()) colors.push_back({{"id", c.index}, {"rank", c.rank}});
  doc["colors"] = std::move(colors);
  json nodes = json::array();
  for (NodeId v = 0; v < g.node_count(); ++v)
    nodes.push_back({{"id", v}, {"color", g.color(v)}, {"label", g.label(v)}});
  doc["nodes"] = std::move(nodes);
  json edges = json::array();
  g.for_each_edge([&](NodeId u, NodeId v, double w) {
    edges.push_back({{"from", u}, {"to", v}, {"w", w}});
  });
  doc["edges"] = std::move(edges);
  out << doc.dump(2) << "\n";
}

void save_graph_file(const ColoredDag& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw GraphError("cannot write graph file: " + path);
  save_graph(g, out);
}

void save_tree(const ColoredDag& g, const SubtreeSolution& t, std::ostream& out) {
  json doc;
  doc["tree"] = true;
  doc["root"] = g.root();
  doc["score"] = t.score;
  // only colors and nodes that occur in the tree
  json colors = json::array();
  for (const ColorId& c : g.color_table()) {
    for (NodeId v : t.tree_nodes()) {
      if (g.color(v) == c.index) {
        colors.push_back({{"id", c.index}, {"rank", c.rank}});
        break;
      }
    }
  }
  doc["colors"] = std::move(colors);
  json nodes = json::array();
  for (NodeId v : t.tree_nodes())
    nodes.push_back({{"id", v}, {"color", g.color(v)}, {"label", g.label(v)}});
  doc["nodes"] = std::move(nodes);
  json edges = json::array();
  t.for_each_edge([&](NodeId u, NodeId v) {
    edges.push_back({{"from", u}, {"to", v}, {"w", *g.edge_weight(u, v)}});
  });
  doc["edges"] = std::move(edges);
  out << doc.dump(2) << "\n";
}

void save_tree_file(const ColoredDag& g, const SubtreeSolution& t, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw GraphError("cannot write tree file: " + path);
  save_tree(g, t, out);
}

}  // namespace mcs
