#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hanoi/generators.hpp"
#include "hanoi/graph.hpp"
#include "hanoi/letter_set.hpp"

namespace hanoi {

/// Level-n Schreier graph. Vertices are the k^n words in lexicographic order,
/// named by their letters leftmost first. Parallel edges between the same two
/// words are merged and carry a ';'-separated label set; fixed points give
/// loop edges (kind "loop"), which never count for connectivity.
struct SchreierGraph {
  int k = 0;
  int level = 0;
  WeightedGraph graph;
  std::size_t loop_count = 0;
};

inline constexpr std::size_t default_schreier_bound = std::size_t{1} << 22;

/// Index of a word among the k^n words of its length, leftmost letter most
/// significant.
std::size_t word_index(int k, const Word &w);
Word word_at(int k, int n, std::size_t index);
std::string word_name(int k, const Word &w);

/// Image of w under a Hanoi generator: letters on inactive pegs are passed
/// over, the first letter on an active peg is moved by the root permutation.
Word apply_generator(const HanoiGenerator &a, const Word &w);

/// images[g][w] for every non-identity generator g and word index w.
std::vector<std::vector<std::uint32_t>> schreier_images(const GeneratorSet &s, int n);
std::vector<std::vector<std::uint32_t>> schreier_images_serial(const GeneratorSet &s, int n);

/// Throws std::length_error past `bound` vertices.
SchreierGraph schreier(const GeneratorSet &s, int n, std::size_t bound = default_schreier_bound);
bool is_connected(const GeneratorSet &s, int n, std::size_t bound = default_schreier_bound);

struct Transitivity {
  bool transitive = false;
  std::vector<LetterSet> orbits;
};
/// Orbits of X_k under the group generated by the root permutations.
Transitivity root_transitivity(const GeneratorSet &s);

/// Largest hop distance in a connected graph (-1 if disconnected).
long diameter(const WeightedGraph &g);

/// h_n = 2 h_{n-1} + 1, h_0 = 0. Requires 0 <= n <= 63.
std::uint64_t optimal_move_count(int n);

/// CSV: level,w,v,generator with one row per generator move (loops included).
std::string schreier_csv(const SchreierGraph &g);

} // namespace hanoi
