#include "hanoi/automorphism.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace hanoi {

namespace {

void check_letter(int k, Letter x) {
  if (x < 0 || x >= k)
    throw std::out_of_range("letter " + std::to_string(x) + " outside alphabet of size " +
                            std::to_string(k));
}

void check_same_alphabet(const TreeAutomorphism &g, const TreeAutomorphism &h) {
  if (g.degree() != h.degree())
    throw std::invalid_argument("automorphisms over alphabets of different size (" +
                                std::to_string(g.degree()) + " vs " + std::to_string(h.degree()) +
                                ")");
}

std::int64_t factorial(int k) {
  std::int64_t f = 1;
  for (int i = 2; i <= k; ++i)
    f *= i;
  return f;
}

inline void hash_combine(std::size_t &seed, std::size_t value) {
  seed ^= value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
    ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
    --e;
  return std::string(s.substr(b, e - b));
}

} // namespace

TreeAutomorphism TreeAutomorphism::identity(int k) {
  if (k < 2)
    throw std::invalid_argument("alphabet size must be at least 2");
  TreeAutomorphism g;
  g.k_ = k;
  g.states_.push_back(State{Permutation::identity(k), std::vector<int>(k, 0)});
  return g;
}

TreeAutomorphism TreeAutomorphism::from_states(int k, std::vector<State> states, int initial) {
  if (k < 2)
    throw std::invalid_argument("alphabet size must be at least 2");
  const int n = static_cast<int>(states.size());
  if (initial < 0 || initial >= n)
    throw std::out_of_range("initial state out of range");
  for (const auto &s : states) {
    if (s.perm.size() != k || static_cast<int>(s.next.size()) != k)
      throw std::invalid_argument("state does not match alphabet size");
    for (int t : s.next)
      if (t < 0 || t >= n)
        throw std::out_of_range("successor state out of range");
  }

  // Reachable part.
  std::vector<int> compact(n, -1);
  std::vector<int> reach;
  compact[initial] = 0;
  reach.push_back(initial);
  for (std::size_t head = 0; head < reach.size(); ++head)
    for (int t : states[reach[head]].next)
      if (compact[t] < 0) {
        compact[t] = static_cast<int>(reach.size());
        reach.push_back(t);
      }
  const int m = static_cast<int>(reach.size());

  // Partition refinement, starting from the partition by root permutation.
  std::vector<int> cls(m);
  int num_classes = 0;
  {
    std::map<Permutation, int> ids;
    for (int i = 0; i < m; ++i) {
      auto [it, inserted] = ids.try_emplace(states[reach[i]].perm, num_classes);
      if (inserted)
        ++num_classes;
      cls[i] = it->second;
    }
  }
  for (;;) {
    std::map<std::vector<int>, int> ids;
    std::vector<int> refined(m);
    for (int i = 0; i < m; ++i) {
      std::vector<int> signature;
      signature.reserve(k + 1);
      signature.push_back(cls[i]);
      for (int t : states[reach[i]].next)
        signature.push_back(cls[compact[t]]);
      auto [it, inserted] = ids.try_emplace(std::move(signature), static_cast<int>(ids.size()));
      refined[i] = it->second;
    }
    const int refined_count = static_cast<int>(ids.size());
    cls = std::move(refined);
    if (refined_count == num_classes)
      break;
    num_classes = refined_count;
  }

  // Quotient machine renumbered by BFS from the initial class.
  std::vector<int> representative(num_classes, -1);
  for (int i = 0; i < m; ++i)
    if (representative[cls[i]] < 0)
      representative[cls[i]] = i;
  std::vector<int> order_of(num_classes, -1);
  std::vector<int> bfs{cls[0]};
  order_of[cls[0]] = 0;
  for (std::size_t head = 0; head < bfs.size(); ++head) {
    const State &s = states[reach[representative[bfs[head]]]];
    for (int t : s.next) {
      int c = cls[compact[t]];
      if (order_of[c] < 0) {
        order_of[c] = static_cast<int>(bfs.size());
        bfs.push_back(c);
      }
    }
  }

  TreeAutomorphism g;
  g.k_ = k;
  g.states_.reserve(bfs.size());
  for (int c : bfs) {
    const State &s = states[reach[representative[c]]];
    State out{s.perm, std::vector<int>(k)};
    for (int x = 0; x < k; ++x)
      out.next[x] = order_of[cls[compact[s.next[x]]]];
    g.states_.push_back(std::move(out));
  }
  return g;
}

bool TreeAutomorphism::is_identity() const {
  return states_.size() == 1 && states_.front().perm.is_identity();
}

TreeAutomorphism TreeAutomorphism::section(Letter x) const {
  check_letter(k_, x);
  return from_states(k_, states_, states_.front().next[x]);
}

TreeAutomorphism TreeAutomorphism::section(std::span<const Letter> w) const {
  int s = 0;
  for (Letter x : w) {
    check_letter(k_, x);
    s = states_[s].next[x];
  }
  if (s == 0)
    return *this;
  return from_states(k_, states_, s);
}

Word TreeAutomorphism::act(std::span<const Letter> w) const {
  Word out;
  out.reserve(w.size());
  int s = 0;
  for (Letter x : w) {
    check_letter(k_, x);
    out.push_back(states_[s].perm(x));
    s = states_[s].next[x];
  }
  return out;
}

TreeAutomorphism TreeAutomorphism::inverse() const {
  // g^-1(sigma(x) v) = x g|_x^-1(v)
  std::vector<State> inv(states_.size());
  for (std::size_t i = 0; i < states_.size(); ++i) {
    const State &s = states_[i];
    Permutation p = s.perm.inverse();
    std::vector<int> next(k_);
    for (int y = 0; y < k_; ++y)
      next[y] = s.next[p(y)];
    inv[i] = State{std::move(p), std::move(next)};
  }
  return from_states(k_, std::move(inv), 0);
}

std::size_t TreeAutomorphism::hash() const {
  std::size_t seed = static_cast<std::size_t>(k_);
  for (const auto &s : states_) {
    for (Letter y : s.perm.images())
      hash_combine(seed, static_cast<std::size_t>(y));
    for (int t : s.next)
      hash_combine(seed, static_cast<std::size_t>(t) * 31u + 7u);
  }
  return seed;
}

TreeAutomorphism compose(const TreeAutomorphism &g, const TreeAutomorphism &h) {
  check_same_alphabet(g, h);
  const int k = g.degree();
  const auto &gs = g.states();
  const auto &hs = h.states();
  const std::size_t hn = hs.size();
  // (gh)|_x = g|_{sigma_h(x)} h|_x, so pair (a, b) -> (a.next[sigma_b(x)], b.next[x]).
  std::vector<int> id_of(gs.size() * hn, -1);
  std::vector<std::pair<int, int>> pairs{{0, 0}};
  id_of[0] = 0;
  std::vector<State> states;
  for (std::size_t head = 0; head < pairs.size(); ++head) {
    auto [a, b] = pairs[head];
    const State &sa = gs[a];
    const State &sb = hs[b];
    State s{sa.perm * sb.perm, std::vector<int>(k)};
    for (int x = 0; x < k; ++x) {
      int na = sa.next[sb.perm(x)];
      int nb = sb.next[x];
      int &id = id_of[static_cast<std::size_t>(na) * hn + nb];
      if (id < 0) {
        id = static_cast<int>(pairs.size());
        pairs.emplace_back(na, nb);
      }
      s.next[x] = id;
    }
    states.push_back(std::move(s));
  }
  return TreeAutomorphism::from_states(k, std::move(states), 0);
}

bool equals(const TreeAutomorphism &g, const TreeAutomorphism &h) {
  check_same_alphabet(g, h);
  const int k = g.degree();
  const std::size_t hn = h.state_count();
  std::vector<bool> seen(g.state_count() * hn, false);
  std::deque<std::pair<int, int>> queue{{0, 0}};
  seen[0] = true;
  while (!queue.empty()) {
    auto [a, b] = queue.front();
    queue.pop_front();
    const State &sa = g.states()[a];
    const State &sb = h.states()[b];
    if (sa.perm != sb.perm)
      return false;
    for (int x = 0; x < k; ++x) {
      int na = sa.next[x], nb = sb.next[x];
      std::size_t key = static_cast<std::size_t>(na) * hn + nb;
      if (!seen[key]) {
        seen[key] = true;
        queue.emplace_back(na, nb);
      }
    }
  }
  return true;
}

TreeAutomorphism power(const TreeAutomorphism &g, long n) {
  TreeAutomorphism base = n < 0 ? g.inverse() : g;
  unsigned long e = n < 0 ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
  TreeAutomorphism result = TreeAutomorphism::identity(g.degree());
  while (e) {
    if (e & 1u)
      result = compose(result, base);
    e >>= 1u;
    if (e)
      base = compose(base, base);
  }
  return result;
}

std::optional<long> order(const TreeAutomorphism &g, long bound) {
  if (bound <= 0)
    bound = 10 * static_cast<long>(factorial(g.degree()));
  TreeAutomorphism acc = g;
  for (long n = 1; n <= bound; ++n) {
    if (acc.is_identity())
      return n;
    acc = compose(acc, g);
  }
  return std::nullopt;
}

SectionProduct section_product(std::span<const TreeAutomorphism> product, Letter j) {
  if (product.empty())
    throw std::invalid_argument("section_product needs a nonempty product");
  const int k = product.front().degree();
  check_letter(k, j);
  SectionProduct out;
  out.factors.resize(product.size());
  Letter letter = j;
  for (std::size_t pos = product.size(); pos-- > 0;) {
    const TreeAutomorphism &a = product[pos];
    if (a.degree() != k)
      throw std::invalid_argument("factors over alphabets of different size");
    out.trajectory.push_back(letter);
    out.factors[pos] = a.section(letter);
    letter = a.root_permutation()(letter);
  }
  return out;
}

TreeAutomorphism product(std::span<const TreeAutomorphism> factors, int k) {
  TreeAutomorphism acc = TreeAutomorphism::identity(k);
  for (const auto &f : factors)
    acc = compose(acc, f);
  return acc;
}

std::string to_wreath_string(const TreeAutomorphism &g, std::string_view self_name) {
  const auto &states = g.states();
  auto is_identity_state = [&](int s) {
    const State &st = states[s];
    return st.perm.is_identity() &&
           std::all_of(st.next.begin(), st.next.end(), [s](int t) { return t == s; });
  };
  std::ostringstream os;
  const State &root = states.front();
  if (!root.perm.is_identity())
    os << root.perm.to_string();
  os << '(';
  for (int x = 0; x < g.degree(); ++x) {
    int t = root.next[x];
    if (x)
      os << ", ";
    if (is_identity_state(t))
      os << '1';
    else if (t == 0)
      os << self_name;
    else
      os << 's' << t;
  }
  os << ')';
  return os.str();
}

std::map<std::string, TreeAutomorphism> parse_wreath_system(int k, std::string_view text) {
  struct Definition {
    std::string name;
    std::string cycles;
    std::vector<std::string> entries;
  };
  std::vector<Definition> defs;
  std::string current;
  auto flush = [&](std::string_view raw) {
    std::string line = trim(raw);
    if (line.empty())
      return;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("wreath definition without '=': " + line);
    Definition d;
    d.name = trim(std::string_view(line).substr(0, eq));
    if (d.name.empty() || d.name == "1")
      throw std::invalid_argument("invalid state name in: " + line);
    std::string rhs = trim(std::string_view(line).substr(eq + 1));
    auto open = rhs.rfind('(');
    auto close = rhs.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open)
      throw std::invalid_argument("missing section tuple in: " + line);
    d.cycles = rhs.substr(0, open);
    std::string tuple = rhs.substr(open + 1, close - open - 1);
    std::size_t start = 0;
    for (;;) {
      auto comma = tuple.find(',', start);
      d.entries.push_back(trim(std::string_view(tuple).substr(start, comma - start)));
      if (comma == std::string::npos)
        break;
      start = comma + 1;
    }
    if (static_cast<int>(d.entries.size()) != k)
      throw std::invalid_argument("section tuple of " + d.name + " has " +
                                  std::to_string(d.entries.size()) + " entries, expected " +
                                  std::to_string(k));
    defs.push_back(std::move(d));
  };
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == '\n' || text[i] == ';') {
      flush(text.substr(start, i - start));
      start = i + 1;
    }
  }

  std::map<std::string, int> index;
  for (const auto &d : defs)
    if (!index.emplace(d.name, static_cast<int>(index.size())).second)
      throw std::invalid_argument("state " + d.name + " defined twice");
  const int identity_state = static_cast<int>(defs.size());
  std::vector<State> states;
  for (const auto &d : defs) {
    State s{Permutation::parse(k, d.cycles), std::vector<int>(k)};
    for (int x = 0; x < k; ++x) {
      const std::string &e = d.entries[x];
      if (e == "1") {
        s.next[x] = identity_state;
      } else {
        auto it = index.find(e);
        if (it == index.end())
          throw std::invalid_argument("undefined state '" + e + "' in definition of " + d.name);
        s.next[x] = it->second;
      }
    }
    states.push_back(std::move(s));
  }
  states.push_back(State{Permutation::identity(k), std::vector<int>(k, identity_state)});

  std::map<std::string, TreeAutomorphism> out;
  for (const auto &[name, idx] : index)
    out.emplace(name, TreeAutomorphism::from_states(k, states, idx));
  return out;
}

} // namespace hanoi
