#include "hanoi/graph.hpp"

#include <algorithm>
#include <deque>
#include <iomanip>
#include <limits>
#include <sstream>

namespace hanoi {

std::vector<std::vector<std::size_t>> WeightedGraph::adjacency() const {
  std::vector<std::vector<std::size_t>> adj(nodes.size());
  for (const auto &e : edges) {
    if (e.loop())
      continue;
    adj[e.u].push_back(e.v);
    if (!directed)
      adj[e.v].push_back(e.u);
  }
  for (auto &list : adj) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return adj;
}

std::vector<std::size_t> WeightedGraph::degrees(bool count_loops_twice) const {
  std::vector<std::size_t> deg(nodes.size(), 0);
  for (const auto &e : edges) {
    if (e.loop()) {
      deg[e.u] += count_loops_twice ? 2 : 1;
    } else {
      ++deg[e.u];
      ++deg[e.v];
    }
  }
  return deg;
}

std::vector<long> WeightedGraph::hop_distances(const std::vector<std::size_t> &sources) const {
  auto adj = adjacency();
  std::vector<long> dist(nodes.size(), -1);
  std::deque<std::size_t> queue;
  for (auto s : sources) {
    if (dist[s] < 0) {
      dist[s] = 0;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    auto u = queue.front();
    queue.pop_front();
    for (auto v : adj[u])
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
  }
  return dist;
}

bool WeightedGraph::connected() const {
  if (nodes.empty())
    return true;
  WeightedGraph undirected = *this;
  undirected.directed = false;
  auto dist = undirected.hop_distances({0});
  return std::all_of(dist.begin(), dist.end(), [](long d) { return d >= 0; });
}

namespace {

std::string quote(const std::string &s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\')
      out += '\\';
    out += c;
  }
  return out + '"';
}

} // namespace

std::string csv_field(const std::string &s) {
  if (s.find_first_of(",\"\n") == std::string::npos)
    return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"')
      out += '"';
    out += c;
  }
  return out + '"';
}

std::string to_dot(const WeightedGraph &g, const std::string &name) {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10);
  const char *arrow = g.directed ? " -> " : " -- ";
  os << (g.directed ? "digraph " : "graph ") << quote(name) << " {\n";
  for (std::size_t i = 0; i < g.nodes.size(); ++i)
    os << "  n" << i << " [label=" << quote(g.nodes[i]) << "];\n";
  for (const auto &e : g.edges) {
    os << "  n" << e.u << arrow << "n" << e.v << " [";
    bool sep = false;
    if (!e.label.empty()) {
      os << "label=" << quote(e.label);
      sep = true;
    }
    if (!e.kind.empty()) {
      os << (sep ? ", " : "") << "kind=" << quote(e.kind);
      sep = true;
    }
    os << (sep ? ", " : "") << "len=" << e.length;
    if (e.loop())
      os << ", style=dotted";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

std::string to_edge_csv(const WeightedGraph &g) {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10);
  os << "u,v,length,kind,label\n";
  for (const auto &e : g.edges)
    os << csv_field(g.nodes[e.u]) << ',' << csv_field(g.nodes[e.v]) << ',' << e.length << ','
       << csv_field(e.kind) << ',' << csv_field(e.label) << '\n';
  return os.str();
}

} // namespace hanoi
