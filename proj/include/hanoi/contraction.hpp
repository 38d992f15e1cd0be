#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hanoi/automorphism.hpp"
#include "hanoi/generators.hpp"
#include "hanoi/graph.hpp"
#include "hanoi/letter_set.hpp"

namespace hanoi {

/// Essential set, fixed letters and root-permutation orbits of a subset T of
/// a generating set.
struct SubsetAnalysis {
  std::vector<std::string> subset;
  std::vector<LetterSet> inactive; // Q_i, parallel to `subset`
  LetterSet essential;             // intersection of the Q_i
  LetterSet fixed;                 // Fix(T)
  std::vector<LetterSet> orbits;   // partition of X_k, ordered by smallest letter

  LetterSet orbit_of(Letter j) const;
};

SubsetAnalysis analyze_subset(int k, std::span<const NamedGenerator> subset);

struct StarViolation {
  SubsetAnalysis subset;
  Letter j = 0;
};

struct StarCheck {
  bool holds = true;
  std::optional<StarViolation> violation;
};

/// Decides condition (*): for every T with nonempty essential set and every
/// j outside Fix(T), some member's inactive set misses Orb_T(j). Equivalent to
/// contraction for Hanoi groups.
///
/// For each essential letter q and each j the largest "bad" subset of
/// T_q = { s : q in Q_s } is computed as a greatest fixed point (drop every
/// member whose inactive set misses the current orbit of j, recompute the
/// orbit, repeat). A violation exists for (q, j) iff that subset moves j.
StarCheck check_star(const GeneratorSet &s);

/// Evaluates (*) on the maximal subsets T_q only. This shortcut can miss a
/// violation carried by a proper subset; it is kept for comparison.
StarCheck check_star_maximal_only(const GeneratorSet &s);

/// Non-contraction certificate: sigma_g of order n > 1, g|_i = g with i fixed
/// by sigma_g, and g^n|_j = g^m for some 0 < |m| < n.
struct Witness {
  TreeAutomorphism g;
  std::vector<std::string> word; // product of generator names, leftmost first
  Letter i = 0;
  Letter j = 0;
  long n = 0;
  long m = 0;
};

/// Re-checks all three witness conditions from scratch.
bool verify_witness(const Witness &w);

/// Searches letters i, j and exponent m that make g a witness. Letters are
/// scanned in increasing order and m in the order 1, -1, 2, -2, ...
std::optional<Witness> witness_for(const TreeAutomorphism &g, std::vector<std::string> word = {});

/// Products of non-identity generators by increasing length (up to `depth`),
/// lexicographic in generator order; the first verified witness is returned.
/// Returning nullopt does not prove contraction.
std::optional<Witness> find_witness(const GeneratorSet &s, int depth);

class CapExceeded : public std::runtime_error {
public:
  explicit CapExceeded(std::size_t cap)
      : std::runtime_error("prenucleus enumeration exceeded cap of " + std::to_string(cap) +
                           " elements"),
        cap_(cap) {}
  std::size_t cap() const { return cap_; }

private:
  std::size_t cap_;
};

class NotContracting : public std::domain_error {
public:
  explicit NotContracting(StarViolation v)
      : std::domain_error("generating set violates condition (*)"), violation_(std::move(v)) {}
  const StarViolation &violation() const { return violation_; }

private:
  StarViolation violation_;
};

/// Canonically ordered set of automorphisms with a generating word for each.
struct Nucleus {
  int k = 0;
  std::vector<TreeAutomorphism> elements;
  std::vector<std::vector<std::string>> words;

  std::size_t size() const { return elements.size(); }
  std::optional<std::size_t> index_of(const TreeAutomorphism &g) const;
  bool contains(const TreeAutomorphism &g) const { return index_of(g).has_value(); }
  std::string name_of(std::size_t i) const; // "1" or the word joined by '*'
};

inline constexpr std::size_t default_nucleus_cap = 10000;

/// Union over essential letters q of the subgroup generated by T_q, closed
/// by BFS over canonical machines. The per-q closures run in parallel.
/// Throws CapExceeded past `cap` elements.
Nucleus prenucleus(const GeneratorSet &s, std::size_t cap = default_nucleus_cap);
/// Single-threaded reference for prenucleus().
Nucleus prenucleus_serial(const GeneratorSet &s, std::size_t cap = default_nucleus_cap);

/// Prenucleus after checking (*) (throws NotContracting), then verified to be
/// state-closed and to contain 1 and every generator with an inactive peg.
Nucleus nucleus(const GeneratorSet &s, std::size_t cap = default_nucleus_cap);

/// Every section of every member is a member.
bool is_state_closed(const Nucleus &n);

/// Digraph with an edge g -> g|_x labeled "x|g(x)" for every member and
/// letter. Identity self-loops get kind "identity-loop", the rest "transition".
WeightedGraph moore_diagram(const Nucleus &n);

/// Eventually periodic pair of left-infinite sequences read off the Moore
/// diagram: `cycle` repeated forever to the left, then `suffix`, then (when
/// free_tail) an arbitrary common word v.
struct EquivalencePattern {
  std::vector<std::pair<Letter, Letter>> cycle;
  std::vector<std::pair<Letter, Letter>> suffix;
  bool free_tail = false;

  bool diagonal() const;
  std::string to_string() const; // "(...(2)0 v, ...(2)1 v)"
  auto operator<=>(const EquivalencePattern &) const = default;
};

/// Elementary cycles of the Moore diagram, each followed by the simple exit
/// paths that reach the identity state (after which the tail is free).
/// Enumeration stops after `limit` patterns.
std::vector<EquivalencePattern> equivalence_patterns(const Nucleus &n,
                                                     std::size_t limit = 100000);

} // namespace hanoi
