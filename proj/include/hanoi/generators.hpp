#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "hanoi/automorphism.hpp"
#include "hanoi/letter_set.hpp"
#include "hanoi/permutation.hpp"

namespace hanoi {

/// A k-peg Hanoi automorphism a = sigma_a(a|_0, ..., a|_{k-1}) with
/// a|_i = 1 on the active pegs P_a, a|_j = a on the inactive pegs Q_a, and
/// sigma_a fixing Q_a pointwise. The identity is normalized to Q = X_k.
class HanoiGenerator {
public:
  /// Throws std::invalid_argument if perm moves an inactive peg and
  /// std::out_of_range if an inactive peg is outside the alphabet.
  static HanoiGenerator make(int k, LetterSet inactive, const Permutation &perm);
  static HanoiGenerator make(int k, const std::vector<Letter> &inactive,
                             const std::vector<Cycle> &cycles);
  static HanoiGenerator identity(int k);

  int degree() const { return perm_.size(); }
  LetterSet inactive() const { return inactive_; }
  LetterSet active() const { return inactive_.complement(degree()); }
  const Permutation &perm() const { return perm_; }
  bool is_identity() const { return perm_.is_identity(); }

  /// Two-state machine (itself and the identity), or the identity machine.
  TreeAutomorphism to_automorphism() const;
  /// Same inactive pegs, inverse root permutation.
  HanoiGenerator inverse() const;
  /// Canonical display name, e.g. "(0 1 2)@{3,4}".
  std::string label() const;

  auto operator<=>(const HanoiGenerator &) const = default;
  bool operator==(const HanoiGenerator &) const = default;

private:
  HanoiGenerator(LetterSet inactive, Permutation perm)
      : inactive_(inactive), perm_(std::move(perm)) {}

  LetterSet inactive_;
  Permutation perm_;
};

/// phi . a: inactive pegs phi(Q_a), root permutation phi sigma_a phi^-1.
HanoiGenerator sym_action(const Permutation &phi, const HanoiGenerator &a);

struct NamedGenerator {
  std::string name;
  HanoiGenerator gen;
};

/// Finite generating set S of Hanoi automorphisms. The identity is always a
/// member (named "1", index 0); generators are deduplicated by value.
class GeneratorSet {
public:
  explicit GeneratorSet(int k);

  int degree() const { return k_; }
  /// Returns false (and leaves the set unchanged) if an equal generator is
  /// already present. Identity generators are absorbed.
  bool add(std::string name, const HanoiGenerator &g);

  const std::vector<NamedGenerator> &members() const { return members_; }
  std::vector<NamedGenerator> non_identity() const;
  std::size_t size() const { return members_.size(); }
  bool contains(const HanoiGenerator &g) const;
  const NamedGenerator *find(std::string_view name) const;

  /// Same members regardless of names and insertion order.
  bool same_elements(const GeneratorSet &other) const;

private:
  int k_;
  std::vector<NamedGenerator> members_;
};

/// Every permutation of X_k that moves only letters of `moving`.
std::vector<Permutation> permutations_on(int k, LetterSet moving);

/// S_{k,q}: all Hanoi generators with exactly q inactive pegs, plus 1.
GeneratorSet family_S(int k, int q);
/// H^(k): the transposition generators a_ij, named "a<i><j>".
GeneratorSet hanoi_towers_generators(int k);
/// H_c^(k) = S_{k,1}.
GeneratorSet family_Hc(int k);

enum class Symmetry { full, rotational, dihedral };
/// Generators of Sym(X_k), the rotation group, or the dihedral group of the
/// k-gon 0, 1, ..., k-1 (rotation x -> x+1, reflection x -> -x, mod k).
std::vector<Permutation> symmetry_generators(int k, Symmetry group);
/// Smallest superset of S closed under the chosen symmetry group.
GeneratorSet symmetry_closure(const GeneratorSet &s, Symmetry group);

enum class Side { decreasing, increasing };
/// Membership test for the cyclic-window families: Q_a inside n consecutive
/// pegs, and sigma_a fixing the n-1 pegs on the chosen side of each inactive peg.
bool satisfies_window_conditions(const HanoiGenerator &a, int n, Side side);
/// All members of the window family (underlined R for decreasing, overlined
/// R for increasing), plus 1. Requires 2n + 1 <= k.
GeneratorSet family_R(int k, int n, Side side);

/// Resolves "S(k,q)", "Hanoi(k)", "Hc(k)", "Runder(k,n)", "Rover(k,n)".
GeneratorSet family_by_name(std::string_view spec);

} // namespace hanoi
