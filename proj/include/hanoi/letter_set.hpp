#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "hanoi/permutation.hpp"

namespace hanoi {

/// Subset of an alphabet of at most 64 letters, as a bit mask.
class LetterSet {
public:
  constexpr LetterSet() = default;
  constexpr explicit LetterSet(std::uint64_t bits) : bits_(bits) {}
  LetterSet(std::initializer_list<Letter> letters) {
    for (Letter x : letters)
      insert(x);
  }
  static LetterSet from(const std::vector<Letter> &letters) {
    LetterSet s;
    for (Letter x : letters)
      s.insert(x);
    return s;
  }
  static constexpr LetterSet all(int k) {
    return LetterSet(k >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << k) - 1));
  }

  constexpr bool contains(Letter x) const { return (bits_ >> x) & 1u; }
  constexpr void insert(Letter x) { bits_ |= std::uint64_t{1} << x; }
  constexpr void erase(Letter x) { bits_ &= ~(std::uint64_t{1} << x); }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::uint64_t bits() const { return bits_; }

  constexpr LetterSet operator&(LetterSet o) const { return LetterSet(bits_ & o.bits_); }
  constexpr LetterSet operator|(LetterSet o) const { return LetterSet(bits_ | o.bits_); }
  constexpr bool intersects(LetterSet o) const { return (bits_ & o.bits_) != 0; }
  constexpr bool subset_of(LetterSet o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr LetterSet complement(int k) const { return LetterSet(~bits_ & all(k).bits_); }

  std::vector<Letter> letters() const {
    std::vector<Letter> out;
    for (std::uint64_t b = bits_; b; b &= b - 1)
      out.push_back(std::countr_zero(b));
    return out;
  }

  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for (Letter x : letters()) {
      s += (first ? "" : ",") + std::to_string(x);
      first = false;
    }
    return s + "}";
  }

  constexpr auto operator<=>(const LetterSet &) const = default;

private:
  std::uint64_t bits_ = 0;
};

} // namespace hanoi
