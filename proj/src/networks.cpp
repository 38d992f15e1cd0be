#include "hanoi/networks.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <iomanip>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace hanoi {

// Disk sequence -------------------------------------------------------------------

int disk_number(long n) {
  if (n < 1)
    throw std::invalid_argument("disk numbers are defined for n >= 1");
  int v = 1;
  while (n % 2 == 0) {
    n /= 2;
    ++v;
  }
  return v;
}

std::vector<int> disk_sequence(std::size_t N) {
  std::vector<int> s(N);
  for (std::size_t i = 0; i < N; ++i)
    s[i] = disk_number(static_cast<long>(i + 1));
  return s;
}

std::vector<int> disk_sequence_recursive(int n) {
  if (n < 1)
    throw std::invalid_argument("S_n needs n >= 1");
  std::vector<int> s{1};
  for (int m = 2; m <= n; ++m) {
    std::vector<int> next = s;
    next.push_back(m);
    next.insert(next.end(), s.begin(), s.end());
    s = std::move(next);
  }
  return s;
}

// HN3 / HN4 -------------------------------------------------------------------------

std::size_t HanoiNetwork::node_at(long position) const {
  auto it = std::find(positions.begin(), positions.end(), position);
  if (it == positions.end())
    throw std::out_of_range("no node at position " + std::to_string(position));
  return static_cast<std::size_t>(it - positions.begin());
}

namespace {

// Calls f(a, b, i) for every HN3 jump a < b <= N between disk-i nodes.
template <class F> void for_each_jump(long N, F f) {
  for (int i = 1; (1L << (i - 1)) * 3 <= N; ++i) {
    const long unit = 1L << (i - 1);
    for (long j = 0;; ++j) {
      const long a = unit * (4 * j + 1), b = unit * (4 * j + 3);
      if (b > N)
        break;
      f(a, b, i);
    }
  }
}

} // namespace

HanoiNetwork build_hn3(long N) {
  if (N < 1)
    throw std::invalid_argument("HN3 needs N >= 1");
  HanoiNetwork net;
  for (long p = 1; p <= N; ++p) {
    net.graph.add_node(std::to_string(p));
    net.positions.push_back(p);
    net.disks.push_back(disk_number(p));
  }
  for (long p = 1; p < N; ++p)
    net.graph.add_edge(p - 1, p, 1.0, {}, "backbone");
  for_each_jump(N, [&](long a, long b, int i) {
    net.graph.add_edge(a - 1, b - 1, static_cast<double>(b - a), "disk " + std::to_string(i), "jump");
  });
  return net;
}

HanoiNetwork build_hn4(long N) {
  if (N < 1)
    throw std::invalid_argument("HN4 needs N >= 1");
  HanoiNetwork net;
  auto node = [N](long p) { return static_cast<std::size_t>(p + N); };
  for (long p = -N; p <= N; ++p) {
    net.graph.add_node(std::to_string(p));
    net.positions.push_back(p);
    net.disks.push_back(p == 0 ? 0 : disk_number(std::labs(p)));
  }
  for (long p = -N; p < N; ++p)
    net.graph.add_edge(node(p), node(p + 1), 1.0, {}, "backbone");
  std::set<std::pair<long, long>> present;
  for_each_jump(N, [&](long a, long b, int i) {
    const std::string label = "disk " + std::to_string(i);
    net.graph.add_edge(node(a), node(b), static_cast<double>(b - a), label, "jump");
    net.graph.add_edge(node(-b), node(-a), static_cast<double>(b - a), label, "jump");
    present.insert({a, b});
    present.insert({-b, -a});
  });
  // nearest equal-disk neighbour to the right; the left one is its mirror
  for (long p = -N; p <= N; ++p) {
    if (p == 0)
      continue;
    const int d = disk_number(std::labs(p));
    long q = p + 1;
    while (q <= N && (q == 0 || disk_number(std::labs(q)) != d))
      ++q;
    if (q > N || present.contains({p, q}))
      continue;
    present.insert({p, q});
    net.graph.add_edge(node(p), node(q), static_cast<double>(q - p), "disk " + std::to_string(d),
                       "nearest");
  }
  net.graph.add_edge(node(0), node(0), 1.0, {}, "loop");
  return net;
}

// H_n --------------------------------------------------------------------------------

namespace {

constexpr double sqrt3_2 = 0.86602540378443864676;

Point2 reflect(const Point2 &x, const Point2 &c, const Point2 &dir) {
  const double len = std::hypot(dir[0], dir[1]);
  const double ux = dir[0] / len, uy = dir[1] / len;
  const double dx = x[0] - c[0], dy = x[1] - c[1];
  const double t = dx * ux + dy * uy;
  return {c[0] + 2 * t * ux - dx, c[1] + 2 * t * uy - dy};
}

// Copy i of a level-(m-1) picture with side L: reflected across the line
// through corner i and the midpoint of the other two, then translated.
Point2 place_copy(const Point2 &x, int i, double L) {
  const Point2 corner[3] = {{0, 0}, {L, 0}, {L / 2, L * sqrt3_2}};
  const Point2 offset[3] = {{0, 0}, {L + 1, 0}, {(L + 1) / 2, (L + 1) * sqrt3_2}};
  const Point2 &a = corner[(i + 1) % 3], &b = corner[(i + 2) % 3];
  const Point2 mid{(a[0] + b[0]) / 2, (a[1] + b[1]) / 2};
  const Point2 dir{mid[0] - corner[i][0], mid[1] - corner[i][1]};
  Point2 y = L > 0 ? reflect(x, corner[i], dir) : x;
  return {y[0] + offset[i][0], y[1] + offset[i][1]};
}

std::size_t pow3(int n) {
  std::size_t p = 1;
  for (int t = 0; t < n; ++t)
    p *= 3;
  return p;
}

std::string word_string(const Word &w) {
  std::string s;
  for (Letter x : w)
    s += static_cast<char>('0' + x);
  return s;
}

} // namespace

std::size_t AutomatonNetwork::index_of(const Word &w) const {
  if (static_cast<int>(w.size()) != n)
    throw std::invalid_argument("state has the wrong number of disks");
  std::size_t index = 0;
  for (int t = n - 1; t >= 0; --t) {
    if (w[t] < 0 || w[t] > 2)
      throw std::out_of_range("peg outside {0,1,2}");
    index = index * 3 + static_cast<std::size_t>(w[t]);
  }
  return index;
}

AutomatonNetwork build_automaton_network(int n) {
  if (n < 1 || n > max_automaton_level)
    throw std::length_error("automaton network level must be in [1, " +
                            std::to_string(max_automaton_level) + "]");
  AutomatonNetwork net;
  net.n = n;
  net.edge_length = 1.0 / static_cast<double>((1L << n) - 1);
  const std::size_t count = pow3(n);
  net.states.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    Word w(n);
    std::size_t r = i;
    for (int t = 0; t < n; ++t) {
      w[t] = static_cast<Letter>(r % 3);
      r /= 3;
    }
    net.states[i] = std::move(w);
    net.graph.add_node(word_string(net.states[i]));
  }

  std::vector<Point2> pts{{0, 0}, {1, 0}, {0.5, sqrt3_2}};
  for (int m = 2; m <= n; ++m) {
    const double L = static_cast<double>((1L << (m - 1)) - 1);
    std::vector<Point2> next(3 * pts.size());
    for (int i = 0; i < 3; ++i)
      for (std::size_t s = 0; s < pts.size(); ++s)
        next[i * pts.size() + s] = place_copy(pts[s], i, L);
    pts = std::move(next);
  }
  for (auto &p : pts)
    p = {p[0] * net.edge_length, p[1] * net.edge_length};
  net.coords = std::move(pts);

  for (std::size_t i = 0; i < count; ++i) {
    const Word &w = net.states[i];
    // smallest disk to either other peg
    for (Letter y = w[0] + 1; y < 3; ++y) {
      Word v = w;
      v[0] = y;
      net.graph.add_edge(i, net.index_of(v), net.edge_length, "1", "base");
    }
    // the one other legal move: smallest disk not on the smallest disk's peg
    std::size_t t = 1;
    while (t < w.size() && w[t] == w[0])
      ++t;
    if (t < w.size()) {
      Word v = w;
      v[t] = 3 - w[0] - w[t];
      const std::size_t j = net.index_of(v);
      if (i < j)
        net.graph.add_edge(i, j, net.edge_length, std::to_string(t + 1), "connector");
    }
  }
  return net;
}

// H'_n ---------------------------------------------------------------------------------

std::string collapsed_label(const Word &w) {
  for (std::size_t t = w.size(); t-- > 0;)
    if (w[t] == 2)
      return word_string(Word(w.begin() + static_cast<long>(t), w.end()));
  return word_string(w);
}

std::size_t MinorNetwork::index_of(const std::string &label) const {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end())
    throw std::out_of_range("no H'_n node labeled " + label);
  return static_cast<std::size_t>(it - labels.begin());
}

namespace {

struct MinorLevel {
  std::vector<std::string> labels;
  std::vector<Point2> coords;
  std::vector<GraphEdge> edges;
};

MinorLevel minor_level(int n) {
  MinorLevel g;
  g.labels = {""};
  g.coords = {{0, 0}};
  for (int m = 1; m <= n; ++m) {
    const double L = static_cast<double>((1L << (m - 1)) - 1);
    MinorLevel next;
    std::map<std::string, std::size_t> index;
    auto add = [&](std::string label, Point2 p) {
      index[label] = next.labels.size();
      next.labels.push_back(std::move(label));
      next.coords.push_back(p);
    };
    for (int i = 0; i < 2; ++i) {
      const std::size_t base = next.labels.size();
      for (std::size_t s = 0; s < g.labels.size(); ++s)
        add(g.labels[s] + static_cast<char>('0' + i), place_copy(g.coords[s], i, L));
      for (const auto &e : g.edges)
        next.edges.push_back(GraphEdge{base + e.u, base + e.v, 1.0, e.label, e.kind});
    }
    add("2", {(2 * L + 1) / 2, (2 * L + 1) * sqrt3_2});
    const std::string ones(static_cast<std::size_t>(m - 1), '1'), zeros(static_cast<std::size_t>(m - 1), '0');
    const std::string centre = m == 1 ? "" : "2";
    next.edges.push_back(GraphEdge{index.at(ones + "0"), index.at("2"), 1.0, {}, "backbone"});
    next.edges.push_back(GraphEdge{index.at(zeros + "1"), index.at("2"), 1.0, {}, "backbone"});
    next.edges.push_back(GraphEdge{index.at(centre + "0"), index.at(centre + "1"), 1.0, {}, "jump"});
    g = std::move(next);
  }
  return g;
}

} // namespace

MinorNetwork build_minor(int n) {
  if (n < 1 || n > max_automaton_level)
    throw std::length_error("minor level must be in [1, " + std::to_string(max_automaton_level) + "]");
  auto level = minor_level(n);
  MinorNetwork net;
  net.n = n;
  const double edge = 1.0 / static_cast<double>((1L << n) - 1);
  net.labels = level.labels;
  for (const auto &label : net.labels)
    net.graph.add_node(label);
  for (const auto &e : level.edges)
    net.graph.add_edge(e.u, e.v, edge, e.label, e.kind);
  for (const auto &p : level.coords)
    net.coords.push_back({p[0] * edge, p[1] * edge});

  for (const auto &label : net.labels) {
    const bool collapsed = !label.empty() && label.front() == '2';
    net.disk_numbers.push_back(collapsed ? n - static_cast<int>(label.size()) + 2 : 1);
    // every state w . label
    const int free = n - static_cast<int>(label.size());
    std::vector<std::size_t> blob;
    const std::size_t count = pow3(free);
    for (std::size_t r = 0; r < count; ++r) {
      std::size_t index = 0, digits = r;
      std::vector<Letter> w(n);
      for (int t = 0; t < free; ++t) {
        w[t] = static_cast<Letter>(digits % 3);
        digits /= 3;
      }
      for (std::size_t t = 0; t < label.size(); ++t)
        w[free + t] = label[t] - '0';
      for (int t = n - 1; t >= 0; --t)
        index = index * 3 + static_cast<std::size_t>(w[t]);
      blob.push_back(index);
    }
    std::sort(blob.begin(), blob.end());
    net.blobs.push_back(std::move(blob));
  }
  return net;
}

std::string correspondence_label(int n, long p) {
  if (n < 0 || p < 1 || p >= (2L << n))
    throw std::out_of_range("HN3 position outside 1 .. 2^{n+1}-1");
  std::string suffix;
  for (int m = n; m >= 1; --m) {
    const long mid = 1L << m;
    if (p == mid)
      return "2" + suffix;
    if (p > mid) {
      p -= mid;
      suffix = "1" + suffix;
    } else {
      suffix = "0" + suffix;
    }
  }
  return suffix;
}

// Isomorphism --------------------------------------------------------------------------

namespace {

struct Simple {
  std::vector<std::vector<std::size_t>> adj;
  std::vector<std::vector<bool>> matrix;
  std::size_t edges = 0;
};

Simple simple_graph(const WeightedGraph &g) {
  Simple s;
  s.adj = g.adjacency();
  s.matrix.assign(g.nodes.size(), std::vector<bool>(g.nodes.size(), false));
  for (std::size_t u = 0; u < s.adj.size(); ++u)
    for (auto v : s.adj[u]) {
      s.matrix[u][v] = true;
      ++s.edges;
    }
  return s;
}

} // namespace

bool is_isomorphism(const WeightedGraph &a, const WeightedGraph &b, const std::vector<std::size_t> &map) {
  if (a.nodes.size() != b.nodes.size() || map.size() != a.nodes.size())
    return false;
  std::vector<char> hit(b.nodes.size(), 0);
  for (auto v : map) {
    if (v >= b.nodes.size() || hit[v])
      return false;
    hit[v] = 1;
  }
  const auto sa = simple_graph(a), sb = simple_graph(b);
  if (sa.edges != sb.edges)
    return false;
  for (std::size_t u = 0; u < sa.adj.size(); ++u)
    for (auto v : sa.adj[u])
      if (!sb.matrix[map[u]][map[v]])
        return false;
  return true;
}

std::optional<std::vector<std::size_t>> find_isomorphism(const WeightedGraph &a, const WeightedGraph &b) {
  const std::size_t n = a.nodes.size();
  if (b.nodes.size() != n)
    return std::nullopt;
  const auto sa = simple_graph(a), sb = simple_graph(b);
  if (sa.edges != sb.edges)
    return std::nullopt;
  std::vector<std::size_t> da(n), db(n);
  for (std::size_t v = 0; v < n; ++v) {
    da[v] = sa.adj[v].size();
    db[v] = sb.adj[v].size();
  }
  {
    auto x = da, y = db;
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    if (x != y)
      return std::nullopt;
  }
  // BFS order over a, each component started at its highest-degree vertex
  std::vector<std::size_t> order, parent(n, n);
  std::vector<char> placed(n, 0);
  while (order.size() < n) {
    std::size_t start = n;
    for (std::size_t v = 0; v < n; ++v)
      if (!placed[v] && (start == n || da[v] > da[start]))
        start = v;
    std::deque<std::size_t> queue{start};
    placed[start] = 1;
    while (!queue.empty()) {
      auto u = queue.front();
      queue.pop_front();
      order.push_back(u);
      for (auto v : sa.adj[u])
        if (!placed[v]) {
          placed[v] = 1;
          parent[v] = u;
          queue.push_back(v);
        }
    }
  }
  constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> map(n, none), inverse(n, none);

  auto feasible = [&](std::size_t v, std::size_t w) {
    if (inverse[w] != none || da[v] != db[w])
      return false;
    std::size_t mapped_a = 0, mapped_b = 0;
    for (auto x : sa.adj[v])
      if (map[x] != none) {
        if (!sb.matrix[w][map[x]])
          return false;
        ++mapped_a;
      }
    for (auto y : sb.adj[w])
      if (inverse[y] != none)
        ++mapped_b;
    return mapped_a == mapped_b;
  };

  std::function<bool(std::size_t)> extend = [&](std::size_t depth) {
    if (depth == n)
      return true;
    const std::size_t v = order[depth];
    std::vector<std::size_t> candidates;
    if (parent[v] != n) {
      candidates = sb.adj[map[parent[v]]];
    } else {
      candidates.resize(n);
      for (std::size_t w = 0; w < n; ++w)
        candidates[w] = w;
    }
    for (auto w : candidates) {
      if (!feasible(v, w))
        continue;
      map[v] = w;
      inverse[w] = v;
      if (extend(depth + 1))
        return true;
      map[v] = none;
      inverse[w] = none;
    }
    return false;
  };
  if (!extend(0))
    return std::nullopt;
  return map;
}

IsomorphismResult verify_isomorphism(int n, bool run_oracle) {
  const long N = (2L << n) - 1;
  const auto hn3 = build_hn3(N);
  const auto minor = build_minor(n);
  IsomorphismResult result;
  result.mapping.resize(hn3.graph.nodes.size());
  for (std::size_t v = 0; v < hn3.graph.nodes.size(); ++v)
    result.mapping[v] = minor.index_of(correspondence_label(n, hn3.positions[v]));
  result.constructive = is_isomorphism(hn3.graph, minor.graph, result.mapping);

  std::map<std::pair<std::size_t, std::size_t>, std::string> kinds;
  for (const auto &e : minor.graph.edges)
    kinds[{std::min(e.u, e.v), std::max(e.u, e.v)}] = e.kind;
  result.kinds_match = result.constructive;
  for (const auto &e : hn3.graph.edges) {
    const auto u = result.mapping[e.u], v = result.mapping[e.v];
    auto it = kinds.find({std::min(u, v), std::max(u, v)});
    if (it == kinds.end() || it->second != e.kind)
      result.kinds_match = false;
  }
  if (run_oracle) {
    auto found = find_isomorphism(hn3.graph, minor.graph);
    result.oracle = found && is_isomorphism(hn3.graph, minor.graph, *found);
  }
  return result;
}

MinorCheck verify_minor(int n) {
  const auto h = build_automaton_network(n);
  const auto minor = build_minor(n);
  const std::size_t states = h.states.size();
  MinorCheck check;

  constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> owner(states, none);
  check.partition = true;
  for (std::size_t v = 0; v < minor.blobs.size(); ++v)
    for (auto s : minor.blobs[v]) {
      if (owner[s] != none)
        check.partition = false;
      owner[s] = v;
    }
  for (std::size_t s = 0; s < states; ++s) {
    if (owner[s] == none)
      check.partition = false;
    else if (minor.labels[owner[s]] != collapsed_label(h.states[s]))
      check.partition = false;
  }
  if (!check.partition)
    return check;

  const auto adj = h.graph.adjacency();
  check.blobs_connected = true;
  for (const auto &blob : minor.blobs) {
    std::set<std::size_t> members(blob.begin(), blob.end()), seen{blob.front()};
    std::vector<std::size_t> stack{blob.front()};
    while (!stack.empty()) {
      auto u = stack.back();
      stack.pop_back();
      for (auto v : adj[u])
        if (members.contains(v) && seen.insert(v).second)
          stack.push_back(v);
    }
    if (seen.size() != members.size())
      check.blobs_connected = false;
  }

  std::set<std::pair<std::size_t, std::size_t>> quotient, kept;
  for (const auto &e : h.graph.edges) {
    auto a = owner[e.u], b = owner[e.v];
    if (a != b)
      quotient.insert({std::min(a, b), std::max(a, b)});
  }
  check.edges_realized = true;
  for (const auto &e : minor.graph.edges) {
    std::pair<std::size_t, std::size_t> key{std::min(e.u, e.v), std::max(e.u, e.v)};
    kept.insert(key);
    if (!quotient.contains(key))
      check.edges_realized = false;
  }
  check.deleted_edges = quotient.size() - std::min(quotient.size(), kept.size());

  check.blob_sizes = true;
  for (std::size_t v = 0; v < minor.blobs.size(); ++v) {
    const int d = minor.disk_numbers[v];
    const std::size_t expected = d == 1 ? 1 : pow3(d - 2);
    if (minor.blobs[v].size() != expected)
      check.blob_sizes = false;
  }
  return check;
}

// Distortion ---------------------------------------------------------------------------

DistortionReport distortion_report(int n) {
  const auto h = build_automaton_network(n);
  const auto minor = build_minor(n);
  const auto hn3 = build_hn3((2L << n) - 1);
  DistortionReport report;
  report.n = n;
  report.edge_length = h.edge_length;
  report.bound = std::ldexp(1.0, -n + 1);
  report.min_ratio = std::numeric_limits<double>::infinity();

  auto representative = [&](const std::string &label) {
    Word w(static_cast<std::size_t>(n), 2);
    for (std::size_t t = 0; t < label.size(); ++t)
      w[n - label.size() + t] = label[t] - '0';
    return h.index_of(w);
  };
  for (const auto &e : hn3.graph.edges) {
    DistortionRow row;
    row.a = hn3.positions[e.u];
    row.b = hn3.positions[e.v];
    row.kind = e.kind;
    row.hn3_length = e.length;
    const auto la = correspondence_label(n, row.a), lb = correspondence_label(n, row.b);
    const auto &blob_a = minor.blobs[minor.index_of(la)];
    const auto &blob_b = minor.blobs[minor.index_of(lb)];
    const auto from_blob = h.graph.hop_distances(blob_a);
    row.blob_hops = std::numeric_limits<long>::max();
    for (auto s : blob_b)
      row.blob_hops = std::min(row.blob_hops, from_blob[s]);
    row.representative_hops = h.graph.hop_distances({representative(la)})[representative(lb)];
    row.ratio = static_cast<double>(row.blob_hops) * h.edge_length / row.hn3_length;
    report.min_ratio = std::min(report.min_ratio, row.ratio);
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::string coordinates_csv(const WeightedGraph &g, const std::vector<Point2> &coords) {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10);
  os << "node,label,x,y\n";
  for (std::size_t i = 0; i < coords.size(); ++i)
    os << i << ',' << csv_field(g.nodes[i]) << ',' << coords[i][0] << ',' << coords[i][1] << '\n';
  return os.str();
}

} // namespace hanoi
