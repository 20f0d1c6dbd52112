#include "heis/group.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>

#include "heis/numeric.hpp"

namespace heis {

std::ostream& operator<<(std::ostream& os, const GroupElement& g) {
  return os << '(' << g.x << ',' << g.y << ',' << g.z << ')';
}

std::string to_string(const GroupElement& g) {
  std::ostringstream os;
  os << g;
  return os.str();
}

GroupElement multiply(const GroupElement& g0, const GroupElement& g) {
  return {checked_add(g0.x, g.x), checked_add(g0.y, g.y),
          checked_add(checked_add(g0.z, g.z), checked_mul(g0.x, g.y))};
}

GroupElement inverse(const GroupElement& g) {
  return {checked_sub(0, g.x), checked_sub(0, g.y), checked_sub(checked_mul(g.x, g.y), g.z)};
}

GroupElement power(const GroupElement& g, std::int64_t k) {
  // k(k-1) is always even, so halve before multiplying by xy.
  std::int64_t kk = checked_mul(k, checked_sub(k, 1));
  std::int64_t tri = kk / 2;
  return {checked_mul(k, g.x), checked_mul(k, g.y),
          checked_add(checked_mul(k, g.z), checked_mul(checked_mul(g.x, g.y), tri))};
}

bool in_positive_semigroup(const GroupElement& g) {
  return g.x >= 0 && g.y >= 0 && g.z >= 0 && g.z <= checked_mul(g.x, g.y);
}

GroupElement sigma(const GroupElement& g) {
  if (!in_positive_semigroup(g))
    throw std::domain_error("sigma: " + to_string(g) + " is not in the positive semigroup");
  return {g.y, g.x, g.x * g.y - g.z};
}

std::int64_t degree(const GroupElement& g) { return checked_add(g.x, g.y); }

bool is_central(const GroupElement& g) { return g.x == 0 && g.y == 0; }

bool commute(const GroupElement& g, const GroupElement& h) {
  return checked_mul(g.x, h.y) == checked_mul(h.x, g.y);
}

Word::Word(std::string letters) : letters_(std::move(letters)) {
  for (char ch : letters_)
    if (ch != 'a' && ch != 'b')
      throw std::invalid_argument("word letters must be 'a' or 'b', got '" + letters_ + "'");
}

std::size_t Word::count_a() const {
  return static_cast<std::size_t>(std::count(letters_.begin(), letters_.end(), 'a'));
}

std::size_t Word::count_b() const { return letters_.size() - count_a(); }

std::ostream& operator<<(std::ostream& os, const Word& w) { return os << w.letters(); }

GroupElement evaluate(const Word& w) {
  GroupElement g = identity();
  for (char ch : w.letters()) g = multiply(g, ch == 'a' ? gen_a() : gen_b());
  return g;
}

Word letter_swap(const Word& w) {
  std::string s = w.letters();
  for (char& ch : s) ch = (ch == 'a') ? 'b' : 'a';
  return Word(std::move(s));
}

std::vector<Word> all_words(std::size_t n) {
  if (n >= 40) throw std::invalid_argument("all_words: length too large");
  std::vector<Word> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    std::string s(n, 'a');
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::uint64_t{1} << (n - 1 - i))) s[i] = 'b';
    out.emplace_back(std::move(s));
  }
  return out;
}

void to_json(nlohmann::json& j, const GroupElement& g) { j = nlohmann::json::array({g.x, g.y, g.z}); }

void from_json(const nlohmann::json& j, GroupElement& g) {
  if (!j.is_array() || j.size() != 3) throw std::invalid_argument("group element must be [x, y, z]");
  g = {j.at(0).get<std::int64_t>(), j.at(1).get<std::int64_t>(), j.at(2).get<std::int64_t>()};
}

GroupElement parse_element(std::string_view text) {
  std::int64_t v[3];
  std::size_t pos = 0;
  for (int k = 0; k < 3; ++k) {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '(' || text[pos] == '[')) ++pos;
    const char* first = text.data() + pos;
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, v[k]);
    if (ec != std::errc{}) throw std::invalid_argument("malformed group element: " + std::string(text));
    pos = static_cast<std::size_t>(ptr - text.data());
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == ')' || text[pos] == ']')) ++pos;
    if (k < 2) {
      if (pos >= text.size() || text[pos] != ',')
        throw std::invalid_argument("malformed group element: " + std::string(text));
      ++pos;
    }
  }
  if (pos != text.size()) throw std::invalid_argument("malformed group element: " + std::string(text));
  return {v[0], v[1], v[2]};
}

}  // namespace heis
