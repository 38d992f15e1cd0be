#include "hanoi/schreier.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "hanoi/contraction.hpp"

namespace hanoi {

namespace {

std::size_t word_count(int k, int n, std::size_t bound) {
  std::size_t count = 1;
  for (int t = 0; t < n; ++t) {
    if (count > bound / static_cast<std::size_t>(k))
      throw std::length_error("Schreier graph exceeds the vertex bound");
    count *= static_cast<std::size_t>(k);
  }
  if (count > bound)
    throw std::length_error("Schreier graph exceeds the vertex bound");
  return count;
}

// Index of a(w) computed directly on the digit expansion.
std::uint32_t image_index(const HanoiGenerator &a, int n, std::size_t w,
                          const std::vector<std::size_t> &place) {
  const int k = a.degree();
  for (int t = 0; t < n; ++t) {
    const Letter x = static_cast<Letter>((w / place[t]) % k);
    if (a.inactive().contains(x))
      continue;
    const Letter y = a.perm()(x);
    return static_cast<std::uint32_t>(w + (static_cast<std::size_t>(y) - x) * place[t]);
  }
  return static_cast<std::uint32_t>(w);
}

std::vector<std::size_t> places(int k, int n) {
  std::vector<std::size_t> place(n);
  std::size_t p = 1;
  for (int t = n - 1; t >= 0; --t) {
    place[t] = p;
    p *= static_cast<std::size_t>(k);
  }
  return place;
}

} // namespace

std::size_t word_index(int k, const Word &w) {
  std::size_t index = 0;
  for (Letter x : w) {
    if (x < 0 || x >= k)
      throw std::out_of_range("letter outside alphabet");
    index = index * static_cast<std::size_t>(k) + static_cast<std::size_t>(x);
  }
  return index;
}

Word word_at(int k, int n, std::size_t index) {
  Word w(n);
  for (int t = n - 1; t >= 0; --t) {
    w[t] = static_cast<Letter>(index % k);
    index /= k;
  }
  return w;
}

std::string word_name(int k, const Word &w) {
  std::string s;
  for (std::size_t t = 0; t < w.size(); ++t) {
    if (k > 10 && t)
      s += '.';
    s += std::to_string(w[t]);
  }
  return s;
}

Word apply_generator(const HanoiGenerator &a, const Word &w) {
  Word out = w;
  for (auto &x : out) {
    if (a.inactive().contains(x))
      continue;
    x = a.perm()(x);
    break;
  }
  return out;
}

std::vector<std::vector<std::uint32_t>> schreier_images_serial(const GeneratorSet &s, int n) {
  const int k = s.degree();
  const auto gens = s.non_identity();
  const std::size_t count = word_count(k, n, std::size_t{1} << 32);
  const auto place = places(k, n);
  std::vector<std::vector<std::uint32_t>> images(gens.size(), std::vector<std::uint32_t>(count));
  for (std::size_t w = 0; w < count; ++w)
    for (std::size_t g = 0; g < gens.size(); ++g)
      images[g][w] = image_index(gens[g].gen, n, w, place);
  return images;
}

std::vector<std::vector<std::uint32_t>> schreier_images(const GeneratorSet &s, int n) {
  const int k = s.degree();
  const auto gens = s.non_identity();
  const std::size_t count = word_count(k, n, std::size_t{1} << 32);
  const auto place = places(k, n);
  std::vector<std::vector<std::uint32_t>> images(gens.size(), std::vector<std::uint32_t>(count));
  const auto total = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(static)
  for (std::int64_t w = 0; w < total; ++w)
    for (std::size_t g = 0; g < gens.size(); ++g)
      images[g][w] = image_index(gens[g].gen, n, static_cast<std::size_t>(w), place);
  return images;
}

SchreierGraph schreier(const GeneratorSet &s, int n, std::size_t bound) {
  if (n < 1)
    throw std::invalid_argument("Schreier level must be >= 1");
  const int k = s.degree();
  const std::size_t count = word_count(k, n, bound);
  const auto gens = s.non_identity();
  const auto images = schreier_images(s, n);

  SchreierGraph out;
  out.k = k;
  out.level = n;
  out.graph.nodes.reserve(count);
  for (std::size_t w = 0; w < count; ++w)
    out.graph.add_node(word_name(k, word_at(k, n, w)));

  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::string>> merged;
  for (std::size_t w = 0; w < count; ++w)
    for (std::size_t g = 0; g < gens.size(); ++g) {
      const std::size_t v = images[g][w];
      auto &labels = merged[{std::min(w, v), std::max(w, v)}];
      if (std::find(labels.begin(), labels.end(), gens[g].name) == labels.end())
        labels.push_back(gens[g].name);
    }
  for (auto &[uv, labels] : merged) {
    const bool loop = uv.first == uv.second;
    std::string joined;
    for (const auto &name : labels)
      joined += (joined.empty() ? "" : ";") + name;
    out.loop_count += loop ? 1 : 0;
    out.graph.add_edge(uv.first, uv.second, 1.0, std::move(joined), loop ? "loop" : "move");
  }
  return out;
}

bool is_connected(const GeneratorSet &s, int n, std::size_t bound) {
  return schreier(s, n, bound).graph.connected();
}

Transitivity root_transitivity(const GeneratorSet &s) {
  const auto members = s.non_identity();
  auto a = analyze_subset(s.degree(), members);
  return Transitivity{a.orbits.size() == 1, a.orbits};
}

long diameter(const WeightedGraph &g) {
  long best = 0;
  for (std::size_t u = 0; u < g.nodes.size(); ++u) {
    auto dist = g.hop_distances({u});
    for (long d : dist) {
      if (d < 0)
        return -1;
      best = std::max(best, d);
    }
  }
  return best;
}

std::uint64_t optimal_move_count(int n) {
  if (n < 0 || n > 63)
    throw std::invalid_argument("move count defined for 0 <= n <= 63");
  std::uint64_t h = 0;
  for (int t = 0; t < n; ++t)
    h = 2 * h + 1;
  return h;
}

std::string schreier_csv(const SchreierGraph &g) {
  std::ostringstream os;
  os << "level,w,v,generator\n";
  for (const auto &e : g.graph.edges) {
    std::stringstream labels(e.label);
    std::string name;
    while (std::getline(labels, name, ';'))
      os << g.level << ',' << g.graph.nodes[e.u] << ',' << g.graph.nodes[e.v] << ','
         << csv_field(name) << '\n';
  }
  return os.str();
}

} // namespace hanoi
