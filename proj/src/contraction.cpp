#include "hanoi/contraction.hpp"

#include <algorithm>
#include <deque>
#include <exception>
#include <functional>
#include <numeric>
#include <set>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hanoi {

// Subsets and condition (*) ---------------------------------------------------

LetterSet SubsetAnalysis::orbit_of(Letter j) const {
  for (auto o : orbits)
    if (o.contains(j))
      return o;
  return LetterSet{j};
}

namespace {

std::vector<LetterSet> orbits_of(int k, const std::vector<const HanoiGenerator *> &gens) {
  std::vector<int> parent(k);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const auto *g : gens)
    for (int x = 0; x < k; ++x) {
      int a = find(x), b = find(g->perm()(x));
      if (a != b)
        parent[std::max(a, b)] = std::min(a, b);
    }
  std::vector<LetterSet> by_root(k);
  for (int x = 0; x < k; ++x)
    by_root[find(x)].insert(x);
  std::vector<LetterSet> out;
  for (auto s : by_root)
    if (!s.empty())
      out.push_back(s);
  return out;
}

SubsetAnalysis analyze(int k, const std::vector<const NamedGenerator *> &subset) {
  SubsetAnalysis a;
  a.essential = LetterSet::all(k);
  std::vector<const HanoiGenerator *> gens;
  for (const auto *m : subset) {
    a.subset.push_back(m->name);
    a.inactive.push_back(m->gen.inactive());
    a.essential = a.essential & m->gen.inactive();
    gens.push_back(&m->gen);
  }
  a.orbits = orbits_of(k, gens);
  for (auto o : a.orbits)
    if (o.size() == 1)
      a.fixed = a.fixed | o;
  return a;
}

std::vector<const NamedGenerator *> members_with_inactive(const GeneratorSet &s, Letter q) {
  std::vector<const NamedGenerator *> out;
  for (const auto &m : s.members())
    if (!m.gen.is_identity() && m.gen.inactive().contains(q))
      out.push_back(&m);
  return out;
}

LetterSet orbit_under(int k, const std::vector<const NamedGenerator *> &t, Letter j) {
  LetterSet orbit{j};
  std::vector<Letter> stack{j};
  while (!stack.empty()) {
    Letter x = stack.back();
    stack.pop_back();
    for (const auto *m : t) {
      Letter y = m->gen.perm()(x);
      if (!orbit.contains(y)) {
        orbit.insert(y);
        stack.push_back(y);
      }
    }
  }
  (void)k;
  return orbit;
}

} // namespace

SubsetAnalysis analyze_subset(int k, std::span<const NamedGenerator> subset) {
  std::vector<const NamedGenerator *> ptrs;
  for (const auto &m : subset)
    ptrs.push_back(&m);
  return analyze(k, ptrs);
}

StarCheck check_star(const GeneratorSet &s) {
  const int k = s.degree();
  for (Letter q = 0; q < k; ++q) {
    const auto tq = members_with_inactive(s, q);
    if (tq.empty())
      continue;
    for (Letter j = 0; j < k; ++j) {
      auto t = tq;
      LetterSet orbit;
      while (true) {
        orbit = orbit_under(k, t, j);
        auto keep = std::partition(t.begin(), t.end(), [&](const NamedGenerator *m) {
          return m->gen.inactive().intersects(orbit);
        });
        if (keep == t.end())
          break;
        t.erase(keep, t.end());
      }
      if (!t.empty() && orbit.size() > 1) {
        std::sort(t.begin(), t.end());
        return StarCheck{false, StarViolation{analyze(k, t), j}};
      }
    }
  }
  return StarCheck{};
}

StarCheck check_star_maximal_only(const GeneratorSet &s) {
  const int k = s.degree();
  for (Letter q = 0; q < k; ++q) {
    const auto t = members_with_inactive(s, q);
    if (t.empty())
      continue;
    for (Letter j = 0; j < k; ++j) {
      LetterSet orbit = orbit_under(k, t, j);
      if (orbit.size() < 2)
        continue;
      bool all_meet = std::all_of(t.begin(), t.end(), [&](const NamedGenerator *m) {
        return m->gen.inactive().intersects(orbit);
      });
      if (all_meet)
        return StarCheck{false, StarViolation{analyze(k, t), j}};
    }
  }
  return StarCheck{};
}

// Witnesses --------------------------------------------------------------------

bool verify_witness(const Witness &w) {
  const auto &g = w.g;
  const int k = g.degree();
  if (k < 2 || w.i < 0 || w.i >= k || w.j < 0 || w.j >= k)
    return false;
  const auto &sigma = g.root_permutation();
  if (w.n <= 1 || sigma.order() != w.n)
    return false;
  if (!sigma.fixes(w.i) || !equals(g.section(w.i), g))
    return false;
  if (w.m == 0 || std::abs(w.m) >= w.n)
    return false;
  return equals(power(g, w.n).section(w.j), power(g, w.m));
}

std::optional<Witness> witness_for(const TreeAutomorphism &g, std::vector<std::string> word) {
  const int k = g.degree();
  const auto &sigma = g.root_permutation();
  const long n = static_cast<long>(sigma.order());
  if (n <= 1)
    return std::nullopt;
  std::optional<Letter> fixed;
  for (Letter i = 0; i < k && !fixed; ++i)
    if (sigma.fixes(i) && g.section(i) == g)
      fixed = i;
  if (!fixed)
    return std::nullopt;
  std::vector<TreeAutomorphism> pos(n), neg(n);
  pos[0] = TreeAutomorphism::identity(k);
  for (long m = 1; m < n; ++m)
    pos[m] = pos[m - 1] * g;
  const auto ginv = g.inverse();
  neg[0] = pos[0];
  for (long m = 1; m < n; ++m)
    neg[m] = neg[m - 1] * ginv;
  const auto gn = pos[n - 1] * g;
  for (Letter j = 0; j < k; ++j) {
    const auto h = gn.section(j);
    for (long m = 1; m < n; ++m) {
      if (h == pos[m])
        return Witness{g, std::move(word), *fixed, j, n, m};
      if (h == neg[m])
        return Witness{g, std::move(word), *fixed, j, n, -m};
    }
  }
  return std::nullopt;
}

std::optional<Witness> find_witness(const GeneratorSet &s, int depth) {
  const auto gens = s.non_identity();
  const int k = s.degree();
  std::vector<TreeAutomorphism> machines;
  for (const auto &m : gens)
    machines.push_back(m.gen.to_automorphism());
  std::unordered_map<TreeAutomorphism, bool, TreeAutomorphismHash> tried;
  std::vector<std::string> word;
  std::optional<Witness> found;

  std::function<void(const TreeAutomorphism &, int)> extend = [&](const TreeAutomorphism &prefix,
                                                                  int remaining) {
    if (found)
      return;
    if (remaining == 0) {
      auto [it, fresh] = tried.emplace(prefix, false);
      if (!fresh)
        return;
      if (auto w = witness_for(prefix, word); w && verify_witness(*w))
        found = std::move(w);
      return;
    }
    for (std::size_t a = 0; a < gens.size() && !found; ++a) {
      word.push_back(gens[a].name);
      extend(prefix * machines[a], remaining - 1);
      word.pop_back();
    }
  };
  for (int len = 1; len <= depth && !found; ++len)
    extend(TreeAutomorphism::identity(k), len);
  return found;
}

// Prenucleus -------------------------------------------------------------------

std::optional<std::size_t> Nucleus::index_of(const TreeAutomorphism &g) const {
  auto it = std::lower_bound(elements.begin(), elements.end(), g);
  if (it == elements.end() || *it != g)
    return std::nullopt;
  return static_cast<std::size_t>(it - elements.begin());
}

std::string Nucleus::name_of(std::size_t i) const {
  const auto &w = words.at(i);
  if (w.empty())
    return "1";
  std::string out = w.front();
  for (std::size_t t = 1; t < w.size(); ++t)
    out += "*" + w[t];
  return out;
}

namespace {

using Closure = std::vector<std::pair<TreeAutomorphism, std::vector<std::string>>>;

// BFS over right multiplication by the members of T_q.
Closure subgroup_closure(const GeneratorSet &s, Letter q, std::size_t cap) {
  const int k = s.degree();
  std::vector<std::pair<std::string, TreeAutomorphism>> gens;
  for (const auto *m : members_with_inactive(s, q))
    gens.emplace_back(m->name, m->gen.to_automorphism());
  Closure out;
  if (gens.empty())
    return out;
  std::unordered_map<TreeAutomorphism, std::size_t, TreeAutomorphismHash> seen;
  out.emplace_back(TreeAutomorphism::identity(k), std::vector<std::string>{});
  seen.emplace(out.front().first, 0);
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (const auto &[name, a] : gens) {
      auto h = out[head].first * a;
      if (seen.contains(h))
        continue;
      if (out.size() >= cap)
        throw CapExceeded(cap);
      auto word = out[head].second;
      word.push_back(name);
      seen.emplace(h, out.size());
      out.emplace_back(std::move(h), std::move(word));
    }
  }
  return out;
}

Nucleus merge_closures(int k, std::vector<Closure> &parts, std::size_t cap) {
  std::unordered_map<TreeAutomorphism, std::size_t, TreeAutomorphismHash> seen;
  std::vector<std::pair<TreeAutomorphism, std::vector<std::string>>> all;
  all.emplace_back(TreeAutomorphism::identity(k), std::vector<std::string>{});
  seen.emplace(all.front().first, 0);
  for (auto &part : parts)
    for (auto &[g, w] : part) {
      if (seen.contains(g))
        continue;
      if (all.size() >= cap)
        throw CapExceeded(cap);
      seen.emplace(g, all.size());
      all.emplace_back(std::move(g), std::move(w));
    }
  std::sort(all.begin(), all.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
  Nucleus n;
  n.k = k;
  for (auto &[g, w] : all) {
    n.elements.push_back(std::move(g));
    n.words.push_back(std::move(w));
  }
  return n;
}

} // namespace

Nucleus prenucleus_serial(const GeneratorSet &s, std::size_t cap) {
  const int k = s.degree();
  std::vector<Closure> parts(k);
  for (Letter q = 0; q < k; ++q)
    parts[q] = subgroup_closure(s, q, cap);
  return merge_closures(k, parts, cap);
}

Nucleus prenucleus(const GeneratorSet &s, std::size_t cap) {
  const int k = s.degree();
  std::vector<Closure> parts(k);
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
  for (int q = 0; q < k; ++q) {
    try {
      parts[q] = subgroup_closure(s, q, cap);
    } catch (...) {
#pragma omp critical(prenucleus_error)
      if (!error)
        error = std::current_exception();
    }
  }
  if (error)
    std::rethrow_exception(error);
  return merge_closures(k, parts, cap);
}

bool is_state_closed(const Nucleus &n) {
  for (const auto &g : n.elements)
    for (Letter x = 0; x < n.k; ++x)
      if (!n.contains(g.section(x)))
        return false;
  return true;
}

Nucleus nucleus(const GeneratorSet &s, std::size_t cap) {
  auto star = check_star(s);
  if (!star.holds)
    throw NotContracting(*star.violation);
  auto n = prenucleus(s, cap);
  if (!is_state_closed(n))
    throw std::logic_error("prenucleus is not closed under sections");
  for (const auto &m : s.members())
    if (!m.gen.inactive().empty() && !n.contains(m.gen.to_automorphism()))
      throw std::logic_error("generator " + m.name + " missing from the nucleus");
  return n;
}

// Moore diagram ------------------------------------------------------------------

WeightedGraph moore_diagram(const Nucleus &n) {
  WeightedGraph g;
  g.directed = true;
  for (std::size_t i = 0; i < n.size(); ++i)
    g.add_node(n.name_of(i));
  for (std::size_t i = 0; i < n.size(); ++i) {
    const auto &e = n.elements[i];
    for (Letter x = 0; x < n.k; ++x) {
      auto target = n.index_of(e.section(x));
      if (!target)
        throw std::invalid_argument("nucleus is not closed under sections");
      std::string label = std::to_string(x) + "|" + std::to_string(e.root_permutation()(x));
      std::string kind = (e.is_identity() && *target == i) ? "identity-loop" : "transition";
      g.add_edge(i, *target, 1.0, std::move(label), std::move(kind));
    }
  }
  return g;
}

// Equivalence patterns -------------------------------------------------------------

bool EquivalencePattern::diagonal() const {
  auto diag = [](const auto &p) { return p.first == p.second; };
  return std::all_of(cycle.begin(), cycle.end(), diag) && std::all_of(suffix.begin(), suffix.end(), diag);
}

std::string EquivalencePattern::to_string() const {
  auto side = [&](bool input) {
    auto letter = [&](const std::pair<Letter, Letter> &p) {
      return std::to_string(input ? p.first : p.second);
    };
    std::string s = "...(";
    for (std::size_t t = 0; t < cycle.size(); ++t)
      s += (t ? " " : "") + letter(cycle[t]);
    s += ")";
    for (const auto &p : suffix)
      s += " " + letter(p);
    if (free_tail)
      s += " v";
    return s;
  };
  return "(" + side(true) + ", " + side(false) + ")";
}

std::vector<EquivalencePattern> equivalence_patterns(const Nucleus &n, std::size_t limit) {
  struct Arc {
    std::size_t to;
    Letter in, out;
  };
  const std::size_t size = n.size();
  std::vector<std::vector<Arc>> arcs(size);
  std::optional<std::size_t> identity;
  for (std::size_t i = 0; i < size; ++i) {
    const auto &g = n.elements[i];
    if (g.is_identity())
      identity = i;
    for (Letter x = 0; x < n.k; ++x) {
      auto t = n.index_of(g.section(x));
      if (!t)
        throw std::invalid_argument("nucleus is not closed under sections");
      arcs[i].push_back(Arc{*t, x, g.root_permutation()(x)});
    }
  }

  std::set<EquivalencePattern> found;
  auto full = [&] { return found.size() >= limit; };

  // cycles as sequences of (from, arc index)
  std::vector<std::pair<std::size_t, std::size_t>> path;
  std::vector<char> on_path(size, 0);

  auto emit_for_cycle = [&](const std::vector<std::pair<std::size_t, std::size_t>> &cyc) {
    std::vector<char> in_cycle(size, 0);
    for (auto [u, a] : cyc)
      in_cycle[u] = 1;
    for (std::size_t p = 0; p < cyc.size() && !full(); ++p) {
      EquivalencePattern base;
      for (std::size_t t = 0; t < cyc.size(); ++t) {
        auto [u, a] = cyc[(p + t) % cyc.size()];
        base.cycle.emplace_back(arcs[u][a].in, arcs[u][a].out);
      }
      const std::size_t c = cyc[p].first;
      if (identity && c == *identity) {
        base.free_tail = true;
        found.insert(base);
        continue;
      }
      found.insert(base);
      std::vector<char> visited = in_cycle;
      std::vector<std::pair<Letter, Letter>> suffix;
      std::function<void(std::size_t)> walk = [&](std::size_t u) {
        for (const auto &arc : arcs[u]) {
          if (full() || visited[arc.to])
            continue;
          suffix.emplace_back(arc.in, arc.out);
          if (identity && arc.to == *identity) {
            found.insert(EquivalencePattern{base.cycle, suffix, true});
          } else {
            visited[arc.to] = 1;
            walk(arc.to);
            visited[arc.to] = 0;
          }
          suffix.pop_back();
        }
      };
      walk(c);
    }
  };

  // elementary cycles whose smallest node is `start`
  std::function<void(std::size_t, std::size_t)> search = [&](std::size_t start, std::size_t u) {
    for (std::size_t a = 0; a < arcs[u].size() && !full(); ++a) {
      const std::size_t v = arcs[u][a].to;
      if (v < start)
        continue;
      path.emplace_back(u, a);
      if (v == start) {
        emit_for_cycle(path);
      } else if (!on_path[v]) {
        on_path[v] = 1;
        search(start, v);
        on_path[v] = 0;
      }
      path.pop_back();
    }
  };
  for (std::size_t s = 0; s < size && !full(); ++s) {
    on_path[s] = 1;
    search(s, s);
    on_path[s] = 0;
  }
  return {found.begin(), found.end()};
}

} // namespace hanoi
