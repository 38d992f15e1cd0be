#include <doctest.h>

#include <set>

#include "hanoi/contraction.hpp"
#include "oracles.hpp"

using namespace hanoi;
using oracle::gen;

TEST_CASE("condition (*) on named families") {
  CHECK(check_star(family_S(3, 1)).holds);
  for (int k = 3; k <= 6; ++k)
    CHECK(check_star(family_Hc(k)).holds);
  CHECK(check_star(hanoi_towers_generators(3)).holds);
  CHECK_FALSE(check_star(hanoi_towers_generators(4)).holds);

  GeneratorSet ab(4);
  ab.add("a01", oracle::hg(4, {2, 3}, {{0, 1}}));
  ab.add("a12", oracle::hg(4, {0, 3}, {{1, 2}}));
  auto res = check_star(ab);
  REQUIRE_FALSE(res.holds);
  REQUIRE(res.violation.has_value());
  CHECK(res.violation->j == 0);
  CHECK(res.violation->subset.subset == std::vector<std::string>{"a01", "a12"});
  CHECK(res.violation->subset.essential == LetterSet{3});
  CHECK(res.violation->subset.orbit_of(0) == LetterSet{0, 1, 2});

  CHECK(check_star(GeneratorSet(4)).holds);
  CHECK(check_star(oracle::rotational5()).holds);
  CHECK(check_star(oracle::dihedral6()).holds);
}

TEST_CASE("maximal subsets alone can miss a violation") {
  GeneratorSet s(5);
  s.add("s1", oracle::hg(5, {2, 4}, {{0, 1}}));
  s.add("s2", oracle::hg(5, {0, 4}, {{1, 2}}));
  s.add("s3", oracle::hg(5, {4}, {{0, 3}}));
  CHECK_FALSE(oracle::star_brute_force(s));
  CHECK_FALSE(check_star(s).holds);
  CHECK(check_star_maximal_only(s).holds);
  // the proper subset {s1, s2} carries it
  auto v = check_star(s).violation;
  REQUIRE(v.has_value());
  CHECK(v->subset.subset == std::vector<std::string>{"s1", "s2"});
}

TEST_CASE("subset analysis") {
  auto h4 = hanoi_towers_generators(4).non_identity();
  std::vector<NamedGenerator> t{h4[0], h4[1]};
  auto an = analyze_subset(4, t);
  CHECK(an.subset.size() == 2);
  CHECK(an.essential == (an.inactive[0] & an.inactive[1]));
  LetterSet covered;
  for (auto o : an.orbits) {
    CHECK_FALSE(o.intersects(covered));
    covered = covered | o;
  }
  CHECK(covered == LetterSet::all(4));
  for (Letter x : an.fixed.letters())
    CHECK(an.orbit_of(x).size() == 1);
}

TEST_CASE("witnesses") {
  auto w = find_witness(hanoi_towers_generators(4), 2);
  REQUIRE(w.has_value());
  CHECK(verify_witness(*w));
  CHECK(w->word == std::vector<std::string>{"a01", "a02"});
  CHECK(w->i == 3);
  CHECK(w->j == 0);
  CHECK(w->n == 3);
  CHECK(w->m == -1);

  // g = a01 a12 with i = 3, j = 0, n = 3, m = 1
  auto a = gen(4, {2, 3}, {{0, 1}});
  auto b = gen(4, {0, 3}, {{1, 2}});
  Witness ab{a * b, {"a01", "a12"}, 3, 0, 3, 1};
  CHECK(verify_witness(ab));
  CHECK(power(a * b, 3).section(0) == a * b);
  Witness bad = ab;
  bad.m = 2;
  CHECK_FALSE(verify_witness(bad));
  bad = ab;
  bad.i = 0;
  CHECK_FALSE(verify_witness(bad));

  CHECK_FALSE(find_witness(hanoi_towers_generators(3), 4).has_value());
  CHECK(find_witness(hanoi_towers_generators(5), 2).has_value());

  // fully symmetric closure of a generator with two inactive pegs
  GeneratorSet s(4);
  s.add("a", oracle::hg(4, {2, 3}, {{0, 1}}));
  auto closed = symmetry_closure(s, Symmetry::full);
  CHECK_FALSE(check_star(closed).holds);
  auto w6 = find_witness(closed, 2);
  REQUIRE(w6.has_value());
  CHECK(verify_witness(*w6));
  auto ga = gen(4, {2, 3}, {{0, 1}});
  auto gb = sym_action(Permutation::parse(4, "(0 2)"), oracle::hg(4, {2, 3}, {{0, 1}}))
                .to_automorphism();
  auto g = ga * gb.inverse();
  auto direct = witness_for(g);
  REQUIRE(direct.has_value());
  CHECK(direct->n == 3);
  CHECK(power(g, 3).section(direct->j) == power(g, direct->m));

  // powers g^{nl} of a witness are pairwise distinct
  std::set<TreeAutomorphism> powers;
  for (long l = 1; l <= 10; ++l)
    powers.insert(power(w->g, w->n * l));
  CHECK(powers.size() == 10);
}

TEST_CASE("prenucleus and nucleus") {
  auto h3 = hanoi_towers_generators(3);
  auto n3 = nucleus(h3);
  CHECK(n3.size() == 4);
  for (const auto &g : h3.members())
    CHECK(n3.contains(g.gen.to_automorphism()));
  CHECK(is_state_closed(n3));

  for (int k = 3; k <= 4; ++k) {
    auto nk = nucleus(family_Hc(k));
    auto s = family_S(k, 1);
    CHECK(nk.size() == s.size());
    for (const auto &g : s.members())
      CHECK(nk.contains(g.gen.to_automorphism()));
  }

  auto triv = nucleus(GeneratorSet(3));
  CHECK(triv.size() == 1);
  CHECK(triv.elements[0].is_identity());
  CHECK(triv.name_of(0) == "1");

  auto rot = nucleus(oracle::rotational5());
  CHECK(is_state_closed(rot));
  for (const auto &g : rot.elements)
    for (Letter x = 0; x < 5; ++x)
      CHECK(rot.contains(g.section(x)));

  CHECK_THROWS_AS(nucleus(hanoi_towers_generators(4)), NotContracting);
  CHECK_THROWS_AS(prenucleus(hanoi_towers_generators(4), 50), CapExceeded);
  CHECK_THROWS_AS(prenucleus_serial(hanoi_towers_generators(4), 50), CapExceeded);

  // words evaluate to their elements
  for (std::size_t i = 0; i < rot.size(); ++i) {
    auto g = TreeAutomorphism::identity(5);
    for (const auto &name : rot.words[i])
      g = g * oracle::rotational5().find(name)->gen.to_automorphism();
    CHECK(g == rot.elements[i]);
  }
}

TEST_CASE("moore diagrams") {
  auto n3 = nucleus(hanoi_towers_generators(3));
  auto md = moore_diagram(n3);
  CHECK(md.directed);
  CHECK(md.nodes.size() == 4);
  CHECK(md.edges.size() == 12);
  std::size_t loops = 0;
  for (const auto &e : md.edges)
    loops += e.kind == "identity-loop" ? 1 : 0;
  CHECK(loops == 3);
  bool found = false;
  for (const auto &e : md.edges)
    found = found || (md.nodes[e.u] == "a01" && md.nodes[e.v] == "a01" && e.label == "2|2");
  CHECK(found);

  auto triv = moore_diagram(nucleus(GeneratorSet(4)));
  CHECK(triv.nodes.size() == 1);
  CHECK(triv.edges.size() == 4);

  auto md4 = moore_diagram(nucleus(family_Hc(4)));
  std::vector<int> out(md4.nodes.size());
  for (const auto &e : md4.edges)
    ++out[e.u];
  for (int d : out)
    CHECK(d == 4);
}

TEST_CASE("equivalence patterns") {
  for (int k = 3; k <= 4; ++k) {
    auto pats = equivalence_patterns(nucleus(family_Hc(k)));
    std::size_t nondiagonal = 0;
    for (const auto &p : pats) {
      if (p.diagonal())
        continue;
      ++nondiagonal;
      REQUIRE(p.cycle.size() == 1);
      REQUIRE(p.suffix.size() == 1);
      Letter l = p.cycle[0].first, i = p.suffix[0].first, j = p.suffix[0].second;
      CHECK(p.cycle[0].second == l);
      CHECK(i != j);
      CHECK(l != i);
      CHECK(l != j);
      CHECK(p.free_tail);
    }
    // every ordered pair i != j next to every third letter l
    std::size_t expected = 0;
    for (Letter l = 0; l < k; ++l)
      expected += static_cast<std::size_t>((k - 1) * (k - 2));
    if (k == 3)
      CHECK(nondiagonal == expected);
    else
      CHECK(nondiagonal >= expected);
  }
  auto n3 = nucleus(hanoi_towers_generators(3));
  bool seen = false;
  for (const auto &p : equivalence_patterns(n3))
    seen = seen || p.to_string() == "(...(2) 0 v, ...(2) 1 v)";
  CHECK(seen);

  for (const auto &p : equivalence_patterns(nucleus(GeneratorSet(3))))
    CHECK(p.diagonal());
}
