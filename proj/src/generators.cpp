#include "hanoi/generators.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <stdexcept>

namespace hanoi {

HanoiGenerator HanoiGenerator::make(int k, LetterSet inactive, const Permutation &perm) {
  if (k < 2 || k > 64)
    throw std::invalid_argument("alphabet size must be in [2, 64]");
  if (perm.size() != k)
    throw std::invalid_argument("root permutation is over the wrong alphabet");
  if (!inactive.subset_of(LetterSet::all(k)))
    throw std::out_of_range("inactive peg outside alphabet of size " + std::to_string(k));
  for (Letter q : inactive.letters())
    if (!perm.fixes(q))
      throw std::invalid_argument("root permutation " + perm.to_string() + " moves inactive peg " +
                                  std::to_string(q));
  if (perm.is_identity())
    return identity(k);
  return HanoiGenerator(inactive, perm);
}

HanoiGenerator HanoiGenerator::make(int k, const std::vector<Letter> &inactive,
                                    const std::vector<Cycle> &cycles) {
  for (Letter q : inactive)
    if (q < 0 || q >= k)
      throw std::out_of_range("inactive peg " + std::to_string(q) + " outside alphabet");
  return make(k, LetterSet::from(inactive), Permutation::from_cycles(k, cycles));
}

HanoiGenerator HanoiGenerator::identity(int k) {
  return HanoiGenerator(LetterSet::all(k), Permutation::identity(k));
}

TreeAutomorphism HanoiGenerator::to_automorphism() const {
  const int k = degree();
  if (is_identity())
    return TreeAutomorphism::identity(k);
  // state 0 = a, state 1 = identity
  std::vector<State> states(2);
  states[0].perm = perm_;
  states[0].next.resize(k);
  for (int x = 0; x < k; ++x)
    states[0].next[x] = inactive_.contains(x) ? 0 : 1;
  states[1] = State{Permutation::identity(k), std::vector<int>(k, 1)};
  return TreeAutomorphism::from_states(k, std::move(states), 0);
}

HanoiGenerator HanoiGenerator::inverse() const {
  return HanoiGenerator(inactive_, perm_.inverse());
}

std::string HanoiGenerator::label() const {
  if (is_identity())
    return "1";
  return perm_.to_string() + "@" + inactive_.to_string();
}

HanoiGenerator sym_action(const Permutation &phi, const HanoiGenerator &a) {
  if (phi.size() != a.degree())
    throw std::invalid_argument("relabeling permutation over the wrong alphabet");
  LetterSet moved;
  for (Letter q : a.inactive().letters())
    moved.insert(phi(q));
  return HanoiGenerator::make(a.degree(), moved, a.perm().conjugate_by(phi));
}

GeneratorSet::GeneratorSet(int k) : k_(k) {
  members_.push_back(NamedGenerator{"1", HanoiGenerator::identity(k)});
}

bool GeneratorSet::add(std::string name, const HanoiGenerator &g) {
  if (g.degree() != k_)
    throw std::invalid_argument("generator over the wrong alphabet");
  if (contains(g))
    return false;
  if (find(name))
    throw std::invalid_argument("generator name '" + name + "' used twice");
  members_.push_back(NamedGenerator{std::move(name), g});
  return true;
}

std::vector<NamedGenerator> GeneratorSet::non_identity() const {
  return {members_.begin() + 1, members_.end()};
}

bool GeneratorSet::contains(const HanoiGenerator &g) const {
  return std::any_of(members_.begin(), members_.end(),
                     [&](const NamedGenerator &m) { return m.gen == g; });
}

const NamedGenerator *GeneratorSet::find(std::string_view name) const {
  for (const auto &m : members_)
    if (m.name == name)
      return &m;
  return nullptr;
}

bool GeneratorSet::same_elements(const GeneratorSet &other) const {
  if (k_ != other.k_)
    return false;
  std::set<HanoiGenerator> a, b;
  for (const auto &m : members_)
    a.insert(m.gen);
  for (const auto &m : other.members_)
    b.insert(m.gen);
  return a == b;
}

std::vector<Permutation> permutations_on(int k, LetterSet moving) {
  std::vector<Letter> letters = moving.letters();
  std::vector<Letter> arrangement = letters;
  std::vector<Permutation> out;
  do {
    std::vector<Letter> images(k);
    std::iota(images.begin(), images.end(), 0);
    for (std::size_t i = 0; i < letters.size(); ++i)
      images[letters[i]] = arrangement[i];
    out.emplace_back(std::move(images));
  } while (std::next_permutation(arrangement.begin(), arrangement.end()));
  return out;
}

GeneratorSet family_S(int k, int q) {
  if (k < 2 || k > 20)
    throw std::invalid_argument("family S(k,q) needs 2 <= k <= 20");
  if (q < 0 || q > k)
    throw std::invalid_argument("family S(k,q) needs 0 <= q <= k");
  GeneratorSet s(k);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << k); ++bits) {
    LetterSet inactive(bits);
    if (inactive.size() != q)
      continue;
    for (const auto &perm : permutations_on(k, inactive.complement(k))) {
      if (perm.is_identity())
        continue;
      auto g = HanoiGenerator::make(k, inactive, perm);
      s.add(g.label(), g);
    }
  }
  return s;
}

GeneratorSet hanoi_towers_generators(int k) {
  if (k < 3)
    throw std::invalid_argument("Hanoi Towers groups need k >= 3");
  GeneratorSet s(k);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      LetterSet inactive = LetterSet::all(k);
      inactive.erase(i);
      inactive.erase(j);
      std::string name = k <= 10 ? "a" + std::to_string(i) + std::to_string(j)
                                 : "a" + std::to_string(i) + "_" + std::to_string(j);
      s.add(name, HanoiGenerator::make(k, inactive, Permutation::from_cycles(k, {{i, j}})));
    }
  return s;
}

GeneratorSet family_Hc(int k) {
  if (k < 3)
    throw std::invalid_argument("H_c^(k) needs k >= 3");
  return family_S(k, 1);
}

std::vector<Permutation> symmetry_generators(int k, Symmetry group) {
  std::vector<Letter> rotation(k), reflection(k);
  for (int x = 0; x < k; ++x) {
    rotation[x] = (x + 1) % k;
    reflection[x] = (k - x) % k;
  }
  switch (group) {
  case Symmetry::rotational:
    return {Permutation(rotation)};
  case Symmetry::dihedral:
    return {Permutation(rotation), Permutation(reflection)};
  case Symmetry::full:
    break;
  }
  return {Permutation(rotation), Permutation::from_cycles(k, {{0, 1}})};
}

GeneratorSet symmetry_closure(const GeneratorSet &s, Symmetry group) {
  const int k = s.degree();
  GeneratorSet out(k);
  std::vector<HanoiGenerator> frontier;
  for (const auto &m : s.non_identity())
    if (out.add(m.name, m.gen))
      frontier.push_back(m.gen);
  const auto gens = symmetry_generators(k, group);
  while (!frontier.empty()) {
    std::vector<HanoiGenerator> next;
    for (const auto &a : frontier)
      for (const auto &phi : gens) {
        auto b = sym_action(phi, a);
        if (!out.contains(b)) {
          std::string name = b.label();
          if (out.find(name))
            name += "'";
          out.add(name, b);
          next.push_back(b);
        }
      }
    frontier = std::move(next);
  }
  return out;
}

bool satisfies_window_conditions(const HanoiGenerator &a, int n, Side side) {
  const int k = a.degree();
  if (a.is_identity())
    return true;
  const LetterSet q = a.inactive();
  bool in_window = q.empty();
  for (int m = 0; m < k && !in_window; ++m) {
    LetterSet window;
    for (int t = 1; t <= n; ++t)
      window.insert((m + t) % k);
    in_window = q.subset_of(window);
  }
  if (!in_window)
    return false;
  for (Letter i : q.letters())
    for (int t = 1; t <= n - 1; ++t) {
      Letter neighbour = side == Side::decreasing ? ((i - t) % k + k) % k : (i + t) % k;
      if (!a.perm().fixes(neighbour))
        return false;
    }
  return true;
}

GeneratorSet family_R(int k, int n, Side side) {
  if (n < 1 || 2 * n + 1 > k)
    throw std::invalid_argument("window family needs n >= 1 and 2n + 1 <= k");
  if (k > 9)
    throw std::invalid_argument("window family enumeration limited to k <= 9");
  std::set<LetterSet> inactive_sets;
  for (int m = 0; m < k; ++m) {
    std::vector<Letter> window;
    for (int t = 1; t <= n; ++t)
      window.push_back((m + t) % k);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      LetterSet q;
      for (int t = 0; t < n; ++t)
        if ((mask >> t) & 1u)
          q.insert(window[t]);
      inactive_sets.insert(q);
    }
  }
  GeneratorSet s(k);
  for (LetterSet q : inactive_sets) {
    LetterSet fixed = q;
    for (Letter i : q.letters())
      for (int t = 1; t <= n - 1; ++t)
        fixed.insert(side == Side::decreasing ? ((i - t) % k + k) % k : (i + t) % k);
    for (const auto &perm : permutations_on(k, fixed.complement(k))) {
      if (perm.is_identity())
        continue;
      auto g = HanoiGenerator::make(k, q, perm);
      s.add(g.label(), g);
    }
  }
  return s;
}

namespace {

std::vector<int> parse_arguments(std::string_view spec, std::string_view head) {
  std::string_view rest = spec.substr(head.size());
  if (rest.size() < 2 || rest.front() != '(' || rest.back() != ')')
    throw std::invalid_argument("malformed family name: " + std::string(spec));
  rest = rest.substr(1, rest.size() - 2);
  std::vector<int> args;
  std::size_t pos = 0;
  while (pos <= rest.size()) {
    auto comma = rest.find(',', pos);
    std::string_view part = rest.substr(pos, comma == std::string_view::npos ? rest.npos : comma - pos);
    std::string token;
    for (char c : part)
      if (!std::isspace(static_cast<unsigned char>(c)))
        token += c;
    if (token.empty() || !std::all_of(token.begin(), token.end(),
                                      [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw std::invalid_argument("malformed family argument in: " + std::string(spec));
    args.push_back(std::stoi(token));
    if (comma == std::string_view::npos)
      break;
    pos = comma + 1;
  }
  return args;
}

} // namespace

GeneratorSet family_by_name(std::string_view spec) {
  auto starts = [&](std::string_view head) {
    return spec.substr(0, head.size()) == head && spec.size() > head.size() &&
           spec[head.size()] == '(';
  };
  auto expect = [&](const std::vector<int> &args, std::size_t n) {
    if (args.size() != n)
      throw std::invalid_argument("wrong number of arguments in family name: " + std::string(spec));
  };
  if (starts("Hanoi")) {
    auto a = parse_arguments(spec, "Hanoi");
    expect(a, 1);
    return hanoi_towers_generators(a[0]);
  }
  if (starts("Hc")) {
    auto a = parse_arguments(spec, "Hc");
    expect(a, 1);
    return family_Hc(a[0]);
  }
  if (starts("S")) {
    auto a = parse_arguments(spec, "S");
    expect(a, 2);
    return family_S(a[0], a[1]);
  }
  if (starts("Runder")) {
    auto a = parse_arguments(spec, "Runder");
    expect(a, 2);
    return family_R(a[0], a[1], Side::decreasing);
  }
  if (starts("Rover")) {
    auto a = parse_arguments(spec, "Rover");
    expect(a, 2);
    return family_R(a[0], a[1], Side::increasing);
  }
  throw std::invalid_argument("unknown generator family: " + std::string(spec));
}

} // namespace hanoi
