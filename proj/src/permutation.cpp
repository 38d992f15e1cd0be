#include "hanoi/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace hanoi {

Permutation::Permutation(std::vector<Letter> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (Letter y : images_) {
    if (y < 0 || y >= size() || seen[y])
      throw std::invalid_argument("permutation image table is not a bijection");
    seen[y] = true;
  }
}

Permutation Permutation::identity(int k) {
  if (k < 1)
    throw std::invalid_argument("alphabet size must be positive");
  std::vector<Letter> images(k);
  std::iota(images.begin(), images.end(), 0);
  return Permutation(std::move(images));
}

Permutation Permutation::from_cycles(int k, const std::vector<Cycle> &cycles) {
  std::vector<Letter> images(k);
  std::iota(images.begin(), images.end(), 0);
  std::vector<bool> used(k, false);
  for (const auto &cycle : cycles) {
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      Letter x = cycle[i];
      if (x < 0 || x >= k)
        throw std::out_of_range("cycle letter " + std::to_string(x) + " outside alphabet of size " +
                                std::to_string(k));
      if (used[x])
        throw std::invalid_argument("letter " + std::to_string(x) + " repeated in cycle notation");
      used[x] = true;
      images[x] = cycle[(i + 1) % cycle.size()];
    }
  }
  return Permutation(std::move(images));
}

Permutation Permutation::parse(int k, std::string_view text) {
  std::vector<Cycle> cycles;
  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  };
  skip_space();
  while (pos < text.size()) {
    if (text[pos] != '(')
      throw std::invalid_argument("expected '(' in cycle notation: " + std::string(text));
    ++pos;
    Cycle cycle;
    for (;;) {
      skip_space();
      if (pos >= text.size())
        throw std::invalid_argument("unterminated cycle: " + std::string(text));
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      if (text[pos] == ',') {
        ++pos;
        continue;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[pos])))
        throw std::invalid_argument("unexpected character in cycle notation: " + std::string(text));
      Letter value = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
        value = value * 10 + (text[pos++] - '0');
      cycle.push_back(value);
    }
    if (!cycle.empty())
      cycles.push_back(std::move(cycle));
    skip_space();
  }
  return from_cycles(k, cycles);
}

Letter Permutation::operator()(Letter x) const {
  if (x < 0 || x >= size())
    throw std::out_of_range("letter " + std::to_string(x) + " outside alphabet of size " +
                            std::to_string(size()));
  return images_[x];
}

Permutation Permutation::operator*(const Permutation &rhs) const {
  if (size() != rhs.size())
    throw std::invalid_argument("permutations over different alphabets");
  std::vector<Letter> images(size());
  for (int x = 0; x < size(); ++x)
    images[x] = images_[rhs.images_[x]];
  return Permutation(std::move(images));
}

Permutation Permutation::inverse() const {
  std::vector<Letter> images(size());
  for (int x = 0; x < size(); ++x)
    images[images_[x]] = x;
  return Permutation(std::move(images));
}

Permutation Permutation::conjugate_by(const Permutation &phi) const {
  return phi * *this * phi.inverse();
}

bool Permutation::is_identity() const {
  for (int x = 0; x < size(); ++x)
    if (images_[x] != x)
      return false;
  return true;
}

std::vector<Cycle> Permutation::cycles() const {
  std::vector<Cycle> out;
  std::vector<bool> seen(size(), false);
  for (int start = 0; start < size(); ++start) {
    if (seen[start] || images_[start] == start)
      continue;
    Cycle cycle;
    for (Letter x = start; !seen[x]; x = images_[x]) {
      seen[x] = true;
      cycle.push_back(x);
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

std::vector<int> Permutation::cycle_type() const {
  std::vector<int> lengths;
  std::vector<bool> seen(size(), false);
  for (int start = 0; start < size(); ++start) {
    if (seen[start])
      continue;
    int len = 0;
    for (Letter x = start; !seen[x]; x = images_[x]) {
      seen[x] = true;
      ++len;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.begin(), lengths.end());
  return lengths;
}

std::int64_t Permutation::order() const {
  std::int64_t result = 1;
  for (int len : cycle_type())
    result = std::lcm(result, static_cast<std::int64_t>(len));
  return result;
}

std::string Permutation::to_string() const {
  auto cs = cycles();
  if (cs.empty())
    return "()";
  std::ostringstream os;
  for (const auto &cycle : cs) {
    os << '(';
    for (std::size_t i = 0; i < cycle.size(); ++i)
      os << (i ? " " : "") << cycle[i];
    os << ')';
  }
  return os.str();
}

std::vector<Permutation> all_permutations(int k) {
  std::vector<Letter> images(k);
  std::iota(images.begin(), images.end(), 0);
  std::vector<Permutation> out;
  do {
    out.emplace_back(images);
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

} // namespace hanoi
