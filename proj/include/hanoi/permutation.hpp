#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hanoi {

/// A letter of the alphabet {0, ..., k-1}; letters double as peg numbers.
using Letter = int;

/// A finite word. Index 0 is the leftmost letter, which an automorphism
/// reads first (the smallest disk in game terms).
using Word = std::vector<Letter>;

using Cycle = std::vector<Letter>;

/// Bijection of {0, ..., k-1} stored as an image table.
class Permutation {
public:
  Permutation() = default;
  explicit Permutation(std::vector<Letter> images);

  static Permutation identity(int k);
  static Permutation from_cycles(int k, const std::vector<Cycle> &cycles);
  /// Parses cycle notation such as "(0 1 2)(3 4)". "()" and "" are the identity.
  static Permutation parse(int k, std::string_view text);

  int size() const { return static_cast<int>(images_.size()); }
  Letter operator()(Letter x) const;
  std::span<const Letter> images() const { return images_; }

  /// Composition, right factor applied first: (p * q)(x) = p(q(x)).
  Permutation operator*(const Permutation &rhs) const;
  Permutation inverse() const;
  Permutation conjugate_by(const Permutation &phi) const; // phi * this * phi^-1

  bool is_identity() const;
  bool fixes(Letter x) const { return (*this)(x) == x; }

  /// Nontrivial cycles, each rotated to start at its smallest letter,
  /// ordered by that letter.
  std::vector<Cycle> cycles() const;
  /// Sorted cycle lengths including fixed points.
  std::vector<int> cycle_type() const;
  std::int64_t order() const;

  std::string to_string() const;

  auto operator<=>(const Permutation &) const = default;
  bool operator==(const Permutation &) const = default;

private:
  std::vector<Letter> images_;
};

/// All permutations of {0..k-1} in lexicographic order of image tables.
std::vector<Permutation> all_permutations(int k);

} // namespace hanoi
