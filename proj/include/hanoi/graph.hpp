#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace hanoi {

struct GraphEdge {
  std::size_t u = 0;
  std::size_t v = 0;
  double length = 1.0;
  std::string label; // generator name, "x|y" Moore label, ...
  std::string kind;  // backbone, jump, nearest, loop, connector, ...
  bool loop() const { return u == v; }
};

/// Node set with labeled edges of positive length. Shared carrier for
/// Schreier graphs, Moore diagrams and the Hanoi networks.
struct WeightedGraph {
  bool directed = false;
  std::vector<std::string> nodes;
  std::vector<GraphEdge> edges;

  std::size_t add_node(std::string name) {
    nodes.push_back(std::move(name));
    return nodes.size() - 1;
  }
  void add_edge(std::size_t u, std::size_t v, double length = 1.0, std::string label = {},
                std::string kind = {}) {
    edges.push_back(GraphEdge{u, v, length, std::move(label), std::move(kind)});
  }

  /// Neighbour lists ignoring loops, each neighbour listed once.
  std::vector<std::vector<std::size_t>> adjacency() const;
  std::vector<std::size_t> degrees(bool count_loops_twice = true) const;
  bool connected() const;
  /// Unweighted BFS hop distances from a set of sources (-1 = unreachable).
  std::vector<long> hop_distances(const std::vector<std::size_t> &sources) const;
};

/// Graphviz export. Edge labels come from GraphEdge::label; loop edges are
/// drawn dotted.
std::string to_dot(const WeightedGraph &g, const std::string &name);

/// Quotes a CSV field when it contains a separator or quote.
std::string csv_field(const std::string &s);

/// CSV edge list: u,v,length,kind,label with node names in the u/v columns.
std::string to_edge_csv(const WeightedGraph &g);

} // namespace hanoi
