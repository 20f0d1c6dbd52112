#pragma once

// The discrete Heisenberg group H3(Z) in (x, y, z) coordinates, with product
//   (x0, y0, z0)·(x, y, z) = (x0 + x, y0 + y, z0 + z + x0·y).
// Coordinates are 64-bit with checked arithmetic: any overflow throws
// std::overflow_error rather than wrapping.

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace heis {

struct GroupElement {
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::int64_t z = 0;

  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

std::ostream& operator<<(std::ostream& os, const GroupElement& g);
std::string to_string(const GroupElement& g);

constexpr GroupElement identity() { return {0, 0, 0}; }
constexpr GroupElement gen_a() { return {1, 0, 0}; }
constexpr GroupElement gen_b() { return {0, 1, 0}; }
/// Generator of the center, c = a b a^-1 b^-1.
constexpr GroupElement gen_c() { return {0, 0, 1}; }

GroupElement multiply(const GroupElement& g0, const GroupElement& g);
GroupElement inverse(const GroupElement& g);
/// g^k for any integer k, in closed form (kx, ky, kz + xy·k(k-1)/2).
GroupElement power(const GroupElement& g, std::int64_t k);

inline GroupElement operator*(const GroupElement& g0, const GroupElement& g) { return multiply(g0, g); }

/// True iff x, y >= 0 and 0 <= z <= xy, i.e. g lies in the semigroup
/// generated by a and b.
bool in_positive_semigroup(const GroupElement& g);

/// The a<->b involution on G+: (x, y, z) -> (y, x, xy - z).
/// Throws std::domain_error outside G+.
GroupElement sigma(const GroupElement& g);

/// x + y, defined on all of G.
std::int64_t degree(const GroupElement& g);

bool is_central(const GroupElement& g);
bool commute(const GroupElement& g, const GroupElement& h);

/// A finite word over {a, b}, stored as the ASCII letters 'a' and 'b'.
class Word {
 public:
  Word() = default;
  /// Throws std::invalid_argument on letters other than 'a' and 'b'.
  explicit Word(std::string letters);

  const std::string& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  std::size_t count_a() const;
  std::size_t count_b() const;
  char operator[](std::size_t i) const { return letters_[i]; }

  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  std::string letters_;
};

std::ostream& operator<<(std::ostream& os, const Word& w);

/// Left-to-right product of the letters, starting from the identity.
GroupElement evaluate(const Word& w);

/// Exchanges every a with b.
Word letter_swap(const Word& w);

/// All 2^n words of length n, in lexicographic order (a < b).
std::vector<Word> all_words(std::size_t n);

// JSON: a group element is the triple [x, y, z].
void to_json(nlohmann::json& j, const GroupElement& g);
void from_json(const nlohmann::json& j, GroupElement& g);

/// Parses "x,y,z" (whitespace tolerated). Throws std::invalid_argument.
GroupElement parse_element(std::string_view text);

struct GroupElementHash {
  std::size_t operator()(const GroupElement& g) const noexcept {
    std::size_t h = std::hash<std::int64_t>{}(g.x);
    h ^= std::hash<std::int64_t>{}(g.y) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= std::hash<std::int64_t>{}(g.z) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

}  // namespace heis
