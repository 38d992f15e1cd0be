#include <doctest.h>

#include <random>
#include <stdexcept>

#include "hanoi/automorphism.hpp"
#include "oracles.hpp"

using namespace hanoi;
using oracle::gen;

namespace {

TreeAutomorphism a01() { return gen(3, {2}, {{0, 1}}); }
TreeAutomorphism a02() { return gen(3, {1}, {{0, 2}}); }
TreeAutomorphism a12() { return gen(3, {0}, {{1, 2}}); }

} // namespace

TEST_CASE("sections") {
  auto one = TreeAutomorphism::identity(3);
  CHECK(a01().section(2) == a01());
  CHECK(a01().section(0) == one);
  for (Letter x = 0; x < 3; ++x)
    CHECK(one.section(x) == one);
  CHECK((a01() * a12()).section(0) == a12());
  CHECK_THROWS_AS(a01().section(3), std::out_of_range);

  Word w22{2, 2};
  CHECK(a01().section(w22) == a01());
  CHECK(a01().section(Word{}) == a01());

  std::mt19937 rng(7);
  std::vector<TreeAutomorphism> gens{a01(), a02(), a12()};
  std::uniform_int_distribution<int> pick(0, 2);
  for (int trial = 0; trial < 200; ++trial) {
    auto g = TreeAutomorphism::identity(3);
    for (int l = 0; l < 5; ++l)
      g = g * gens[static_cast<std::size_t>(pick(rng))];
    Word w;
    for (int l = 0; l < 4; ++l)
      w.push_back(pick(rng));
    auto folded = g;
    for (Letter x : w)
      folded = folded.section(x);
    CHECK(g.section(w) == folded);
  }
}

TEST_CASE("composition matches the wreath recursions") {
  auto ab = a01() * a12();
  CHECK(ab.root_permutation() == Permutation::parse(3, "(0 1 2)"));
  CHECK(ab.section(0) == a12());
  CHECK(ab.section(1) == a01());
  CHECK(ab.section(2).is_identity());
  CHECK(a01() * TreeAutomorphism::identity(3) == a01());

  auto a = gen(4, {2, 3}, {{0, 1}});
  auto b = gen(4, {0, 3}, {{1, 2}});
  auto ab4 = a * b;
  CHECK(ab4.root_permutation() == Permutation::parse(4, "(0 1 2)"));
  CHECK(ab4.section(0) == b);
  CHECK(ab4.section(1) == a);
  CHECK(ab4.section(2).is_identity());
  CHECK(ab4.section(3) == ab4);

  CHECK_THROWS_AS(a01() * a, std::invalid_argument);
}

TEST_CASE("inverse") {
  CHECK(a01().inverse() == a01());
  CHECK(TreeAutomorphism::identity(4).inverse().is_identity());
  auto a = gen(5, {3, 4}, {{0, 1, 2}});
  auto inv = a.inverse();
  CHECK(equals(a * inv, TreeAutomorphism::identity(5)));
  CHECK(inv.root_permutation() == Permutation::parse(5, "(0 2 1)"));
  CHECK(inv.section(3) == inv);
  CHECK(inv.section(0).is_identity());
}

TEST_CASE("action on words") {
  CHECK(a01().act(Word{2, 2, 0}) == Word{2, 2, 1});
  CHECK(a01().act(Word{0, 2, 2}) == Word{1, 2, 2});
  auto one = TreeAutomorphism::identity(3);
  for (const auto &w : oracle::all_words(3, 4)) {
    CHECK(one.act(w) == w);
    CHECK(a02().act(a02().act(w)) == w);
    CHECK(a02().act(w) == oracle::run_machine(a02(), w));
  }
  CHECK_THROWS_AS(a01().act(Word{3}), std::out_of_range);
}

TEST_CASE("equality") {
  CHECK(equals(a01(), a01()));
  CHECK_FALSE(equals(a01(), a02()));
  CHECK(a01().act(Word{0}) != a02().act(Word{0}));

  // the parity example: ab = 1 although neither is trivial
  auto sys = parse_wreath_system(4, "a = (0 1 2)(1,1,1,b); b = (0 2 1)(1,1,1,a)");
  const auto &a = sys.at("a");
  const auto &b = sys.at("b");
  CHECK_FALSE(a.is_identity());
  CHECK(equals(a * b, TreeAutomorphism::identity(4)));
  CHECK((a * b).is_identity());
  CHECK(a.state_count() == 3);
}

TEST_CASE("order and powers") {
  CHECK(order(a01()) == 2);
  CHECK(order(TreeAutomorphism::identity(3)) == 1);
  CHECK(order(gen(5, {3, 4}, {{0, 1, 2}})) == 3);
  // a01 a12 in H^(3) has infinite order; the bounded search gives up
  CHECK_FALSE(order(a01() * a12(), 50).has_value());
  auto g = a01() * a02();
  CHECK(power(g, 0).is_identity());
  CHECK(power(g, 3) == g * g * g);
  CHECK(power(g, -2) == g.inverse() * g.inverse());
}

TEST_CASE("section_product") {
  std::vector<TreeAutomorphism> prod{a01(), a12()};
  auto sp = section_product(prod, 0);
  REQUIRE(sp.factors.size() == 2);
  CHECK(sp.factors[0].is_identity());
  CHECK(sp.factors[1] == a12());
  CHECK(sp.trajectory == std::vector<Letter>{0, 0});
  CHECK(product(sp.factors, 3) == (a01() * a12()).section(0));

  std::vector<TreeAutomorphism> single{a02()};
  auto one = section_product(single, 1);
  CHECK(one.factors[0] == a02().section(1));
  CHECK(one.trajectory == std::vector<Letter>{1});

  CHECK_THROWS(section_product(prod, 5));
}

TEST_CASE("wreath text") {
  CHECK(to_wreath_string(a01(), "a01") == "(0 1)(1, 1, a01)");
  auto sys = parse_wreath_system(3, "a = (0 1)(1, 1, a)\nb = (1 2)(b, 1, 1)");
  CHECK(sys.at("a") == a01());
  CHECK(sys.at("b") == a12());
  CHECK_THROWS(parse_wreath_system(3, "a = (0 1)(1, 1, c)"));
  CHECK_THROWS(parse_wreath_system(3, "a = (0 1)(1, a)"));
}

TEST_CASE("canonical form") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    int k = 2 + trial % 3;
    auto g = oracle::random_machine(rng, k, 1 + trial % 4);
    // idempotent
    CHECK(TreeAutomorphism::from_states(k, g.states(), 0) == g);
    // BFS numbering: state 0 is initial and every state is reachable
    std::vector<bool> seen(g.state_count());
    std::vector<int> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
      int s = stack.back();
      stack.pop_back();
      for (int t : g.states()[static_cast<std::size_t>(s)].next)
        if (!seen[static_cast<std::size_t>(t)])
          seen[static_cast<std::size_t>(t)] = true, stack.push_back(t);
    }
    CHECK(std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }));
  }
  // identity: one state, identity permutation, self-loops
  auto one = TreeAutomorphism::identity(4);
  CHECK(one.state_count() == 1);
  CHECK(one.states()[0].next == std::vector<int>{0, 0, 0, 0});
}
