#pragma once

// Reference computations that share no code with the library: words are
// folded with the group law written out inline, partitions are counted by a
// direct recursion over the largest part.

#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace oracle {

using Point = std::tuple<std::int64_t, std::int64_t, std::int64_t>;

// Right-multiplying by a adds 1 to x; by b adds 1 to y and x to z.
inline Point fold(const std::string& w) {
  std::int64_t x = 0, y = 0, z = 0;
  for (char ch : w) {
    if (ch == 'a') ++x;
    else { ++y; z += x; }
  }
  return {x, y, z};
}

inline std::vector<std::string> words_of_length(int n) {
  std::vector<std::string> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::string w(static_cast<std::size_t>(n), 'a');
    for (int i = 0; i < n; ++i)
      if (mask >> (n - 1 - i) & 1) w[static_cast<std::size_t>(i)] = 'b';
    out.push_back(w);
  }
  return out;  // lexicographic, a < b
}

inline std::map<Point, std::vector<std::string>> fibers_of_length(int n) {
  std::map<Point, std::vector<std::string>> out;
  for (auto& w : words_of_length(n)) out[fold(w)].push_back(w);
  return out;
}

// Partitions of z into at most `rows` parts, each at most `largest`.
inline std::uint64_t count(std::int64_t largest, std::int64_t rows, std::int64_t z) {
  if (z == 0) return 1;
  if (z < 0 || rows <= 0 || largest <= 0) return 0;
  std::uint64_t total = 0;
  for (std::int64_t first = 1; first <= largest && first <= z; ++first) total += count(first, rows - 1, z - first);
  return total;
}

inline void partitions(std::int64_t largest, std::int64_t rows, std::int64_t z, std::vector<std::int64_t>& prefix,
                       std::vector<std::vector<std::int64_t>>& out) {
  if (z == 0) {
    out.push_back(prefix);
    return;
  }
  if (rows <= 0) return;
  for (std::int64_t first = std::min(largest, z); first >= 1; --first) {
    prefix.push_back(first);
    partitions(first, rows - 1, z - first, prefix, out);
    prefix.pop_back();
  }
}

inline std::vector<std::vector<std::int64_t>> partitions(std::int64_t x, std::int64_t y, std::int64_t z) {
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> prefix;
  if (z >= 0) partitions(x, y, z, prefix, out);
  return out;
}

inline std::size_t distinct(const std::vector<std::int64_t>& rows) {
  std::size_t d = 0;
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (i == 0 || rows[i] != rows[i - 1]) ++d;
  return d;
}

}  // namespace oracle
