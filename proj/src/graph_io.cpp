#include "graphgap/graph_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace graphgap {

using nlohmann::json;

std::string graph_to_json(const Multigraph& g) {
  json j;
  j["vertex_count"] = g.vertex_count();
  json edges = json::array();
  for (const Edge& e : g.edges()) {
    edges.push_back(json::array({e.u, e.v, e.mult}));
  }
  j["edges"] = std::move(edges);
  j["labels"] = g.labels();
  j["transitive"] = g.transitive();
  return j.dump(2) + "\n";
}

Multigraph graph_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("graph file: ") + e.what());
  }
  if (!j.is_object() || !j.contains("vertex_count") || !j.contains("edges")) {
    throw std::runtime_error(
        "graph file: expected an object with vertex_count and edges");
  }
  int n = j.at("vertex_count").get<int>();
  std::vector<Edge> edges;
  for (const auto& entry : j.at("edges")) {
    if (!entry.is_array() || entry.size() != 3) {
      throw std::runtime_error("graph file: edges must be [u, v, mult] triples");
    }
    edges.push_back({entry[0].get<int>(), entry[1].get<int>(),
                     entry[2].get<int>()});
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    labels = j.at("labels").get<std::vector<std::string>>();
  }
  bool transitive = j.value("transitive", false);
  return Multigraph(n, std::move(edges), std::move(labels), transitive);
}

void save_graph(const Multigraph& g, const std::string& path) {
  atomic_write_file(path, graph_to_json(g));
}

Multigraph load_graph(const std::string& path) {
  return graph_from_json(read_file(path));
}

void atomic_write_file(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
    out << content;
    if (!out) throw std::runtime_error("write failed: " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("cannot rename " + tmp + " to " + path);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace graphgap
