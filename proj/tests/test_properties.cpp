#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "hanoi/contraction.hpp"
#include "hanoi/fractal.hpp"
#include "hanoi/schreier.hpp"
#include "oracles.hpp"

using namespace hanoi;

namespace {

std::vector<TreeAutomorphism> machines(const GeneratorSet &s) {
  std::vector<TreeAutomorphism> out;
  for (const auto &g : s.non_identity())
    out.push_back(g.gen.to_automorphism());
  return out;
}

/// Random product of generators, leftmost first.
std::vector<std::size_t> random_word(std::mt19937 &rng, std::size_t gens, int len) {
  std::uniform_int_distribution<std::size_t> pick(0, gens - 1);
  std::vector<std::size_t> w;
  for (int i = 0; i < len; ++i)
    w.push_back(pick(rng));
  return w;
}

/// Shortest word length of every element in the ball of radius r.
std::map<TreeAutomorphism, int> ball(const std::vector<TreeAutomorphism> &gens, int k, int r) {
  std::map<TreeAutomorphism, int> dist{{TreeAutomorphism::identity(k), 0}};
  std::vector<TreeAutomorphism> frontier{TreeAutomorphism::identity(k)};
  for (int d = 1; d <= r; ++d) {
    std::vector<TreeAutomorphism> next;
    for (const auto &g : frontier)
      for (const auto &s : gens) {
        auto h = g * s;
        if (dist.emplace(h, d).second)
          next.push_back(h);
      }
    frontier = std::move(next);
  }
  return dist;
}

} // namespace

TEST_CASE("wreath recursion law and action homomorphism") {
  std::mt19937 rng(1);
  for (int trial = 0; trial < 1000; ++trial) {
    int k = 3 + trial % 4;
    auto gens = machines(family_S(k, 1 + trial % (k - 2)));
    auto wg = random_word(rng, gens.size(), 1 + trial % 3);
    auto wh = random_word(rng, gens.size(), 1 + trial % 3);
    auto g = TreeAutomorphism::identity(k), h = g;
    for (auto i : wg)
      g = g * gens[i];
    for (auto i : wh)
      h = h * gens[i];
    auto gh = g * h;
    for (Letter x = 0; x < k; ++x) {
      CHECK(gh.section(x) == g.section(h.root_permutation()(x)) * h.section(x));
      CHECK(equals(gh.section(x), g.section(h.root_permutation()(x)) * h.section(x)));
    }
    Word w;
    std::uniform_int_distribution<int> letter(0, k - 1);
    for (int l = 0; l < 6; ++l)
      w.push_back(letter(rng));
    CHECK(oracle::run_machine(gh, w) == oracle::run_machine(g, oracle::run_machine(h, w)));
    // prefix property
    auto image = gh.act(w);
    CHECK(Word(image.begin(), image.end() - 1) == gh.act(Word(w.begin(), w.end() - 1)));
  }
  // exhaustive on three letters up to length 6
  auto h3 = machines(hanoi_towers_generators(3));
  auto words = oracle::all_words(3, 6);
  for (const auto &g : h3)
    for (const auto &h : h3) {
      auto gh = g * h;
      for (const auto &w : words)
        REQUIRE(gh.act(w) == g.act(h.act(w)));
    }
}

TEST_CASE("section product law") {
  std::mt19937 rng(2);
  for (int trial = 0; trial < 1000; ++trial) {
    int k = 3 + trial % 4;
    auto gens = machines(family_S(k, 1 + trial % (k - 2)));
    auto word = random_word(rng, gens.size(), 1 + trial % 6);
    std::vector<TreeAutomorphism> factors;
    for (auto i : word)
      factors.push_back(gens[i]);
    Letter j = std::uniform_int_distribution<int>(0, k - 1)(rng);
    auto sp = section_product(factors, j);
    auto whole = product(factors, k);
    CHECK(product(sp.factors, k) == whole.section(j));
    // trajectory by hand: rightmost factor first
    Letter x = j;
    for (std::size_t l = 0; l < factors.size(); ++l) {
      std::size_t pos = factors.size() - 1 - l;
      CHECK(sp.trajectory[l] == x);
      CHECK(sp.factors[pos] == factors[pos].section(x));
      x = factors[pos].root_permutation()(x);
    }
  }
}

TEST_CASE("canonical equality is semantic equality") {
  std::mt19937 rng(3);
  std::vector<TreeAutomorphism> pool;
  for (int i = 0; i < 100; ++i)
    pool.push_back(oracle::random_machine(rng, 2, 1 + i % 3));
  // add equal machines built another way
  for (int i = 0; i < 20; ++i)
    pool.push_back(pool[static_cast<std::size_t>(i)] * pool[static_cast<std::size_t>(i + 1)] *
                   pool[static_cast<std::size_t>(i + 1)].inverse());
  for (const auto &g : pool)
    for (const auto &h : pool) {
      bool same = oracle::agree_on_level(g, h, static_cast<int>(g.state_count() + h.state_count()));
      CHECK((g == h) == same);
      CHECK(equals(g, h) == same);
    }
  // equivalence relation
  for (const auto &g : pool) {
    CHECK(equals(g, g));
    for (const auto &h : pool) {
      CHECK(equals(g, h) == equals(h, g));
      if (!equals(g, h))
        continue;
      for (const auto &f : pool)
        if (equals(h, f))
          CHECK(equals(g, f));
    }
  }
}

TEST_CASE("Lemma 4.3 on random products") {
  std::mt19937 rng(4);
  for (int trial = 0; trial < 1000; ++trial) {
    int k = 3 + trial % 4;
    auto s = family_S(k, 1 + trial % (k - 2));
    auto named = s.non_identity();
    auto word = random_word(rng, named.size(), 1 + trial % 6);
    LetterSet q = LetterSet::all(k);
    auto g = TreeAutomorphism::identity(k);
    for (auto i : word) {
      q = q & named[i].gen.inactive();
      g = g * named[i].gen.to_automorphism();
    }
    // part 1: the section at an essential letter is the element itself
    for (Letter j : q.letters())
      CHECK(g.section(j) == g);
  }
  // part 2: empty essential set shortens every section
  for (int trial = 0; trial < 200; ++trial) {
    int k = 3 + trial % 3;
    auto named = oracle::random_set(rng, k, 3, k - 2).non_identity();
    std::vector<TreeAutomorphism> gens;
    for (const auto &g : named)
      gens.push_back(g.gen.to_automorphism());
    int len = 1 + trial % 4;
    auto word = random_word(rng, gens.size(), len);
    LetterSet q = LetterSet::all(k);
    auto g = TreeAutomorphism::identity(k);
    for (auto i : word) {
      q = q & named[i].gen.inactive();
      g = g * gens[i];
    }
    if (!q.empty())
      continue;
    auto b = ball(gens, k, len - 1);
    for (Letter j = 0; j < k; ++j) {
      auto it = b.find(g.section(j));
      REQUIRE(it != b.end());
      CHECK(it->second < len);
    }
  }
}

TEST_CASE("Lemma 4.8 layering") {
  std::mt19937 rng(5);
  for (const auto &s : {family_Hc(4), oracle::rotational5(), oracle::dihedral6(), family_Hc(5)}) {
    REQUIRE(check_star(s).holds);
    auto named = s.non_identity();
    int k = s.degree();
    for (int trial = 0; trial < 200; ++trial) {
      auto word = random_word(rng, named.size(), 1 + trial % 6);
      LetterSet q = LetterSet::all(k);
      std::set<std::size_t> used(word.begin(), word.end());
      std::vector<TreeAutomorphism> factors;
      for (auto i : word) {
        q = q & named[i].gen.inactive();
        factors.push_back(named[i].gen.to_automorphism());
      }
      if (q.empty())
        continue;
      auto g = product(factors, k);
      for (Letter j = 0; j < k; ++j) {
        auto sp = section_product(factors, j);
        std::set<std::size_t> remaining;
        for (std::size_t l = 0; l < word.size(); ++l)
          if (!sp.factors[l].is_identity())
            remaining.insert(word[l]);
        bool same = g.section(j) == g;
        CHECK((same || remaining.size() < used.size()));
      }
    }
  }
}

TEST_CASE("subset monotonicity") {
  for (const auto &s : {hanoi_towers_generators(4), oracle::rotational5(), family_S(4, 2)}) {
    auto named = s.non_identity();
    const std::size_t m = named.size();
    REQUIRE(m <= 12);
    std::vector<SubsetAnalysis> an(std::size_t{1} << m);
    for (std::size_t mask = 1; mask < an.size(); ++mask) {
      std::vector<NamedGenerator> t;
      for (std::size_t i = 0; i < m; ++i)
        if (mask >> i & 1)
          t.push_back(named[i]);
      an[mask] = analyze_subset(s.degree(), t);
    }
    for (std::size_t big = 1; big < an.size(); ++big)
      for (std::size_t small = big; small; small = (small - 1) & big) {
        CHECK(an[big].fixed.subset_of(an[small].fixed));
        CHECK(an[big].essential.subset_of(an[small].essential));
        for (Letter j = 0; j < s.degree(); ++j)
          CHECK(an[small].orbit_of(j).subset_of(an[big].orbit_of(j)));
      }
  }
}

TEST_CASE("condition (*) against the literal definition") {
  std::mt19937 rng(6);
  int contracting = 0, not_contracting = 0;
  for (int trial = 0; trial < 400; ++trial) {
    int k = 3 + trial % 3;
    auto s = oracle::random_set(rng, k, 2 + trial % 4, k - 2);
    bool brute = oracle::star_brute_force(s);
    CHECK(check_star(s).holds == brute);
    if (brute)
      CHECK(check_star_maximal_only(s).holds);
    (brute ? contracting : not_contracting)++;
  }
  CHECK(contracting > 20);
  CHECK(not_contracting > 20);
}

TEST_CASE("contraction consistency") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    int k = 3 + trial % 2;
    auto s = oracle::random_set(rng, k, 2 + trial % 3, k - 2);
    if (check_star(s).holds) {
      auto n = nucleus(s);
      CHECK(is_state_closed(n));
    } else if (auto w = find_witness(s, 2)) {
      CHECK(verify_witness(*w));
      std::set<TreeAutomorphism> powers;
      for (long l = 1; l <= 10; ++l)
        powers.insert(power(w->g, w->n * l));
      CHECK(powers.size() == 10);
    }
  }
}

TEST_CASE("connectivity matches transitivity") {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 60; ++trial) {
    int k = 3 + trial % 3;
    auto s = oracle::random_set(rng, k, 1 + trial % 3, k - 2, 1);
    bool t = root_transitivity(s).transitive;
    for (int n = 1; n <= 3; ++n)
      CHECK(is_connected(s, n) == t);
  }
}

TEST_CASE("parallel kernels match their serial references") {
  for (const auto &s : {family_Hc(4), oracle::dihedral6()})
    CHECK(schreier_images(s, 4) == schreier_images_serial(s, 4));

  for (int k = 3; k <= 5; ++k) {
    auto ifs = build_ifs(build_simplex(k));
    auto a = attractor_points(ifs, 3), b = attractor_points_serial(ifs, 3);
    CHECK(a.addresses == b.addresses);
    CHECK(a.cells == b.cells);
    bool same = a.coords.size() == b.coords.size();
    for (std::size_t i = 0; same && i < a.coords.size(); ++i)
      same = a.coords[i] == b.coords[i];
    CHECK(same);
    CHECK(assemble_cell_counts(k, a.cells, a.coords.size()) ==
          assemble_cell_counts_serial(k, a.cells, a.coords.size()));
  }

  for (const auto &s : {family_Hc(5), oracle::rotational5(), hanoi_towers_generators(3)}) {
    auto a = prenucleus(s), b = prenucleus_serial(s);
    CHECK(a.elements == b.elements);
    CHECK(a.words == b.words);
  }
}

TEST_CASE("harmonic extension identities") {
  std::mt19937 rng(9);
  std::normal_distribution<double> n(0, 1);
  for (int k = 3; k <= 8; ++k) {
    auto hs = renormalize(k);
    auto l1 = level_energy(hs, 1);
    std::vector<std::size_t> boundary, centroid;
    for (int i = 0; i < k; ++i) {
      boundary.push_back(l1.points.index_of(Address{{}, i}));
      centroid.push_back(l1.points.index_of(Address{{(i + 1) % k}, i}));
    }
    for (int trial = 0; trial < 20; ++trial) {
      Eigen::VectorXd a(k);
      for (int i = 0; i < k; ++i)
        a[i] = n(rng);
      auto u = harmonic_extension(l1.H, boundary, a);
      double X = 0;
      for (auto c : centroid)
        X += u[static_cast<Eigen::Index>(c)];
      CHECK(std::abs(X - a.sum()) < 1e-10);
      for (int i = 0; i < k; ++i)
        CHECK(std::abs((k * k - k - 1) * u[static_cast<Eigen::Index>(centroid[static_cast<std::size_t>(i)])] -
                       ((k - 1) * X - a[i])) < 1e-10);
    }
  }
}

TEST_CASE("energy monotonicity and symmetry") {
  std::mt19937 rng(10);
  std::normal_distribution<double> n(0, 1);
  for (int k = 3; k <= 4; ++k) {
    auto hs = renormalize(k);
    const int top = 3;
    std::vector<LevelGraph> levels;
    for (int m = 0; m <= top; ++m)
      levels.push_back(level_energy(hs, m));
    for (int trial = 0; trial < 10; ++trial) {
      Eigen::VectorXd u(static_cast<Eigen::Index>(levels[top].points.coords.size()));
      for (Eigen::Index i = 0; i < u.size(); ++i)
        u[i] = n(rng);
      double prev = -1;
      for (int m = 0; m <= top; ++m) {
        const auto &pts = levels[static_cast<std::size_t>(m)].points;
        Eigen::VectorXd r(static_cast<Eigen::Index>(pts.coords.size()));
        for (std::size_t i = 0; i < pts.addresses.size(); ++i)
          r[static_cast<Eigen::Index>(i)] = u[static_cast<Eigen::Index>(levels[top].points.index_of(pts.addresses[i]))];
        double e = energy(levels[static_cast<std::size_t>(m)].H, r);
        CHECK(e >= -1e-9);
        CHECK(e >= prev - 1e-9);
        prev = e;
      }
    }
    auto R = resistance_matrix(levels[2].H);
    auto p0 = static_cast<Eigen::Index>(levels[2].points.index_of(Address{{}, 0}));
    auto p1 = static_cast<Eigen::Index>(levels[2].points.index_of(Address{{}, 1}));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        if (i != j) {
          auto pi = levels[2].points.index_of(Address{{}, i});
          auto pj = levels[2].points.index_of(Address{{}, j});
          CHECK(std::abs(R(static_cast<Eigen::Index>(pi), static_cast<Eigen::Index>(pj)) - R(p0, p1)) < 1e-10);
        }
  }
}
