#include <doctest.h>

#include <cmath>
#include <set>

#include "hanoi/networks.hpp"
#include "hanoi/schreier.hpp"
#include "oracles.hpp"

using namespace hanoi;

namespace {

using Pair = std::pair<long, long>;

std::set<Pair> edges_of_kind(const HanoiNetwork &net, const std::string &kind) {
  std::set<Pair> out;
  for (const auto &e : net.graph.edges)
    if (e.kind == kind) {
      long a = net.positions[e.u], b = net.positions[e.v];
      out.insert({std::min(a, b), std::max(a, b)});
    }
  return out;
}

std::set<std::pair<Word, Word>> word_edges(const WeightedGraph &g, const std::vector<Word> &words) {
  std::set<std::pair<Word, Word>> out;
  for (const auto &e : g.edges)
    if (!e.loop())
      out.insert({std::min(words[e.u], words[e.v]), std::max(words[e.u], words[e.v])});
  return out;
}

long ipow(long b, int e) {
  long r = 1;
  while (e--)
    r *= b;
  return r;
}

} // namespace

TEST_CASE("disk sequence") {
  CHECK(disk_sequence(7) == std::vector<int>{1, 2, 1, 3, 1, 2, 1});
  CHECK(disk_sequence(1) == std::vector<int>{1});
  CHECK(disk_number(16) == 5);
  CHECK(disk_sequence(16).back() == 5);
  for (int n = 1; n <= 12; ++n) {
    auto s = disk_sequence_recursive(n);
    CHECK(s.size() == static_cast<std::size_t>((1 << n) - 1));
    CHECK(s == disk_sequence(s.size()));
    auto next = disk_sequence_recursive(n + 1);
    std::vector<int> glued = s;
    glued.push_back(n + 1);
    glued.insert(glued.end(), s.begin(), s.end());
    CHECK(next == glued);
  }
}

TEST_CASE("HN3") {
  auto net = build_hn3(16);
  auto jumps = edges_of_kind(net, "jump");
  CHECK(jumps.count({1, 3}));
  CHECK(jumps.count({5, 7}));
  CHECK(jumps.count({9, 11}));
  CHECK(jumps.count({2, 6}));
  CHECK(jumps.count({10, 14}));
  CHECK_FALSE(jumps.count({3, 5}));
  CHECK(edges_of_kind(net, "backbone").size() == 15);
  for (const auto &e : net.graph.edges) {
    long a = net.positions[e.u], b = net.positions[e.v];
    if (e.kind == "jump")
      CHECK(e.length == std::abs(b - a));
    else
      CHECK(e.length == 1);
  }

  // literal between-labels rule over all pairs up to 2048
  const long N = 2048;
  std::set<Pair> literal;
  for (long a = 1; a <= N; ++a) {
    int i = oracle::ruler(a);
    bool has_next = false;
    for (long b = a + 1; b <= N; ++b) {
      int d = oracle::ruler(b);
      if (d >= i + 2)
        break;
      if (d == i && has_next)
        literal.insert({a, b});
      if (d == i + 1)
        has_next = true;
    }
  }
  CHECK(edges_of_kind(build_hn3(N), "jump") == literal);
  CHECK(oracle::hn3_jump(2, 6));
  CHECK_FALSE(oracle::hn3_jump(6, 10));
}

TEST_CASE("HN4") {
  const long N = 64;
  auto net = build_hn4(N);
  auto nearest = edges_of_kind(net, "nearest");
  CHECK(nearest.count({3, 5}));
  CHECK(nearest.count({7, 9}));
  CHECK(nearest.count({-5, -3}));
  CHECK_FALSE(nearest.count({1, 3}));
  CHECK(edges_of_kind(net, "loop").count({0, 0}));
  auto deg = net.graph.degrees(false);
  for (long x = -N / 4; x <= N / 4; ++x)
    if (x != 0)
      CHECK(deg[net.node_at(x)] == 4);
  // symmetric over 0
  std::set<Pair> all;
  for (const auto &e : net.graph.edges) {
    long a = net.positions[e.u], b = net.positions[e.v];
    all.insert({std::min(a, b), std::max(a, b)});
  }
  for (const auto &[a, b] : all)
    CHECK(all.count({-b, -a}));
}

TEST_CASE("automaton networks") {
  auto h1 = build_automaton_network(1);
  CHECK(h1.graph.nodes.size() == 3);
  CHECK(h1.graph.edges.size() == 3);
  for (int n = 1; n <= 6; ++n) {
    auto h = build_automaton_network(n);
    CHECK(h.states.size() == static_cast<std::size_t>(ipow(3, n)));
    CHECK(h.graph.edges.size() == static_cast<std::size_t>((ipow(3, n + 1) - 3) / 2));
    CHECK(h.edge_length == doctest::Approx(1.0 / ((1 << n) - 1)));

    // legal moves
    std::set<std::pair<Word, Word>> legal;
    for (const auto &a : h.states)
      for (const auto &b : h.states)
        if (a < b && oracle::legal_move(a, b))
          legal.insert({a, b});
    CHECK(word_edges(h.graph, h.states) == legal);

    // same as the level-n Schreier graph of the three-peg group
    auto s = schreier(hanoi_towers_generators(3), n);
    std::vector<Word> names;
    for (std::size_t i = 0; i < s.graph.nodes.size(); ++i)
      names.push_back(word_at(3, n, i));
    CHECK(word_edges(s.graph, names) == legal);

    // embedding
    for (const auto &e : h.graph.edges) {
      double len = std::hypot(h.coords[e.u][0] - h.coords[e.v][0], h.coords[e.u][1] - h.coords[e.v][1]);
      CHECK(std::abs(len - h.edge_length) < 1e-12);
    }
    Word zero(static_cast<std::size_t>(n), 0), one(static_cast<std::size_t>(n), 1), two(static_cast<std::size_t>(n), 2);
    auto c0 = h.coords[h.index_of(zero)], c1 = h.coords[h.index_of(one)], c2 = h.coords[h.index_of(two)];
    CHECK(std::abs(std::hypot(c0[0] - c1[0], c0[1] - c1[1]) - 1) < 1e-12);
    CHECK(std::abs(std::hypot(c0[0] - c2[0], c0[1] - c2[1]) - 1) < 1e-12);
    auto d = h.graph.hop_distances({h.index_of(zero)});
    CHECK(std::abs(static_cast<double>(d[h.index_of(one)]) * h.edge_length - 1) < 1e-12);

    // each block with the largest disk fixed is a copy of H_{n-1}
    if (n >= 2) {
      auto prev = build_automaton_network(n - 1);
      auto prev_edges = word_edges(prev.graph, prev.states);
      for (Letter i = 0; i < 3; ++i) {
        std::set<std::pair<Word, Word>> block;
        for (const auto &[a, b] : legal)
          if (a.back() == i && b.back() == i)
            block.insert({Word(a.begin(), a.end() - 1), Word(b.begin(), b.end() - 1)});
        CHECK(block == prev_edges);
      }
    }
  }
  CHECK_THROWS(build_automaton_network(max_automaton_level + 1));
}

TEST_CASE("collapsed labels and the minor") {
  CHECK(collapsed_label(Word{0, 2, 1}) == "21");
  CHECK(collapsed_label(Word{2, 0, 2}) == "2");
  CHECK(collapsed_label(Word{0, 1}) == "01");

  auto m1 = build_minor(1);
  auto h1 = build_automaton_network(1);
  CHECK(m1.graph.nodes.size() == 3);
  CHECK(m1.graph.edges.size() == 3);
  CHECK(find_isomorphism(m1.graph, h1.graph).has_value());

  for (int n = 1; n <= 6; ++n) {
    auto m = build_minor(n);
    CHECK(m.graph.nodes.size() == static_cast<std::size_t>((2 << n) - 1));
    for (std::size_t v = 0; v < m.labels.size(); ++v) {
      int d = m.disk_numbers[v];
      if (d > 1)
        CHECK(m.blobs[v].size() == static_cast<std::size_t>(ipow(3, d - 2)));
    }
    auto check = verify_minor(n);
    CHECK(check.ok());
    CHECK(check.deleted_edges == 0);
  }
}

TEST_CASE("correspondence") {
  CHECK(correspondence_label(3, 8) == "2");
  CHECK(correspondence_label(3, 1) == "000");
  CHECK(correspondence_label(3, 15) == "111");
  CHECK(correspondence_label(2, 2) == "20");
  CHECK_THROWS(correspondence_label(2, 8));
  for (int n = 1; n <= 5; ++n) {
    auto r = verify_isomorphism(n);
    CHECK(r.constructive);
    CHECK(r.kinds_match);
    CHECK(r.oracle);
  }
  for (int n = 1; n <= 8; ++n) {
    auto hn3 = build_hn3((2L << n) - 1);
    auto minor = build_minor(n);
    auto a = hn3.graph.degrees(false), b = minor.graph.degrees(false);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);
  }
}

TEST_CASE("isomorphism search") {
  WeightedGraph c4, c4b, path, star;
  for (int i = 0; i < 4; ++i) {
    c4.add_node(std::to_string(i));
    c4b.add_node(std::to_string(i));
    path.add_node(std::to_string(i));
    star.add_node(std::to_string(i));
  }
  for (std::size_t i = 0; i < 4; ++i)
    c4.add_edge(i, (i + 1) % 4);
  c4b.add_edge(0, 2);
  c4b.add_edge(2, 1);
  c4b.add_edge(1, 3);
  c4b.add_edge(3, 0);
  path.add_edge(0, 1);
  path.add_edge(1, 2);
  path.add_edge(2, 3);
  star.add_edge(0, 1);
  star.add_edge(0, 2);
  star.add_edge(0, 3);
  auto m = find_isomorphism(c4, c4b);
  REQUIRE(m.has_value());
  CHECK(is_isomorphism(c4, c4b, *m));
  CHECK_FALSE(find_isomorphism(path, star).has_value());
  CHECK_FALSE(find_isomorphism(c4, path).has_value());
}

TEST_CASE("distortion") {
  auto r3 = distortion_report(3);
  bool found = false;
  for (const auto &row : r3.rows) {
    if (row.kind == "jump")
      CHECK(row.blob_hops == 1);
    if (row.a == 2 && row.b == 6) {
      found = true;
      CHECK(row.hn3_length == 4);
      CHECK(row.blob_hops == 1);
    }
  }
  CHECK(found);
  auto r2 = distortion_report(2);
  for (const auto &row : r2.rows)
    if (row.kind == "backbone" && (row.a == 2 || row.b == 2))
      CHECK(row.blob_hops == 1);
  for (int n = 1; n <= 6; ++n) {
    auto r = distortion_report(n);
    CHECK(r.bound == doctest::Approx(std::pow(2.0, -n + 1)));
    CHECK(r.min_ratio < r.bound);
    CHECK(r.rows.size() == build_hn3((2L << n) - 1).graph.edges.size());
  }
}

TEST_CASE("coordinate export") {
  auto h = build_automaton_network(1);
  auto csv = coordinates_csv(h.graph, h.coords);
  CHECK(csv.rfind("node,label,x,y\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}
