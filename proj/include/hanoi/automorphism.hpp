#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hanoi/permutation.hpp"

namespace hanoi {

/// One state of a Mealy machine over X_k: the root permutation of the
/// section it represents plus the successor state for every input letter.
struct State {
  Permutation perm;
  std::vector<int> next;

  auto operator<=>(const State &) const = default;
  bool operator==(const State &) const = default;
};

/// Finite-state automorphism of the rooted tree X_k^*.
///
/// Values are always held in canonical form: only states reachable from the
/// initial state are kept, bisimilar states are merged, and states are
/// numbered in BFS order from the initial state (which is therefore state 0),
/// visiting successors in letter order. Two machines define the same tree
/// automorphism iff they compare equal structurally.
class TreeAutomorphism {
public:
  TreeAutomorphism() = default;

  static TreeAutomorphism identity(int k);
  /// Canonicalizes an arbitrary machine rooted at `initial`.
  static TreeAutomorphism from_states(int k, std::vector<State> states, int initial);

  int degree() const { return k_; }
  std::size_t state_count() const { return states_.size(); }
  const std::vector<State> &states() const { return states_; }
  const Permutation &root_permutation() const { return states_.front().perm; }
  bool is_identity() const;

  /// g|_x, the automorphism induced on the subtree below x.
  TreeAutomorphism section(Letter x) const;
  /// g|_w for a word w read leftmost-first; the empty word returns g.
  TreeAutomorphism section(std::span<const Letter> w) const;
  /// Image of w, computed letter by letter via g(xw) = sigma_g(x) g|_x(w).
  Word act(std::span<const Letter> w) const;

  TreeAutomorphism inverse() const;

  std::size_t hash() const;

  auto operator<=>(const TreeAutomorphism &) const = default;
  bool operator==(const TreeAutomorphism &) const = default;

private:
  int k_ = 0;
  std::vector<State> states_;
};

/// Product g*h acting right-to-left (h first). Built as the reachable part
/// of the pair machine, then canonicalized.
TreeAutomorphism compose(const TreeAutomorphism &g, const TreeAutomorphism &h);
inline TreeAutomorphism operator*(const TreeAutomorphism &g, const TreeAutomorphism &h) {
  return compose(g, h);
}

/// Bisimulation check on the pair closure. Independent of canonical form, so
/// it doubles as a check of the canonicalization.
bool equals(const TreeAutomorphism &g, const TreeAutomorphism &h);

/// g^n for any integer n.
TreeAutomorphism power(const TreeAutomorphism &g, long n);

/// Smallest n >= 1 with g^n = 1, searched up to `bound` (default 10 * k!).
/// std::nullopt means the order is unknown within the bound.
std::optional<long> order(const TreeAutomorphism &g, long bound = 0);

struct SectionProduct {
  /// factors[l] = a_l|_{j} for the factor at the same position of the input,
  /// so the product of `factors` (left to right) equals (a_m ... a_1)|_j.
  std::vector<TreeAutomorphism> factors;
  /// j_1 = j, j_{l+1} = sigma_l(j_l): the letter each factor is sectioned at,
  /// listed starting from the rightmost (first-acting) factor.
  std::vector<Letter> trajectory;
};

/// Section of a product a_m ... a_1 (given leftmost first) at letter j,
/// expressed as a product of sections of the factors.
SectionProduct section_product(std::span<const TreeAutomorphism> product, Letter j);

/// Product of a sequence (leftmost first); the empty product needs k.
TreeAutomorphism product(std::span<const TreeAutomorphism> factors, int k);

struct TreeAutomorphismHash {
  std::size_t operator()(const TreeAutomorphism &g) const { return g.hash(); }
};

// Text I/O -------------------------------------------------------------------

/// Wreath-recursion rendering, e.g. "(0 1)(1, 1, s0)". State 0 is written as
/// `self_name`, the identity as "1" and other states as "s<id>".
std::string to_wreath_string(const TreeAutomorphism &g, std::string_view self_name = "g");

/// Parses a system of wreath recursions such as
///   a = (0 1 2)(1, 1, 1, b)
///   b = (0 2 1)(1, 1, 1, a)
/// Definitions are separated by newlines or ';'. Section entries are "1" or
/// the name of a state defined in the same system. Returns every defined
/// name as its own canonical machine.
std::map<std::string, TreeAutomorphism> parse_wreath_system(int k, std::string_view text);

} // namespace hanoi

template <> struct std::hash<hanoi::TreeAutomorphism> {
  std::size_t operator()(const hanoi::TreeAutomorphism &g) const noexcept { return g.hash(); }
};
