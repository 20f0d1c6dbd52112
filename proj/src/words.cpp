#include "heis/words.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace heis {

namespace {

void extend(std::string& prefix, GroupElement rest, std::vector<Word>& out) {
  if (rest.x == 0 && rest.y == 0) {
    out.emplace_back(prefix);
    return;
  }
  const GroupElement after_a{rest.x - 1, rest.y, rest.z - rest.y};  // a^-1 · rest
  if (in_positive_semigroup(after_a)) {
    prefix.push_back('a');
    extend(prefix, after_a, out);
    prefix.pop_back();
  }
  const GroupElement after_b{rest.x, rest.y - 1, rest.z};  // b^-1 · rest
  if (in_positive_semigroup(after_b)) {
    prefix.push_back('b');
    extend(prefix, after_b, out);
    prefix.pop_back();
  }
}

std::size_t count_pattern(const Word& w, char first, char second) {
  std::size_t n = 0;
  const auto& s = w.letters();
  for (std::size_t i = 0; i + 1 < s.size(); ++i)
    if (s[i] == first && s[i + 1] == second) ++n;
  return n;
}

std::size_t gap(std::size_t a, std::size_t b) { return a > b ? a - b : b - a; }

}  // namespace

Fiber fiber(const GroupElement& g, std::int64_t max_length) {
  Fiber f{g, {}};
  if (!in_positive_semigroup(g)) return f;
  if (degree(g) > max_length)
    throw BudgetExceeded("fiber: degree " + std::to_string(degree(g)) + " of " + to_string(g) +
                         " exceeds the word-length budget of " + std::to_string(max_length));
  std::string prefix;
  extend(prefix, g, f.words);
  return f;
}

std::size_t inner_corners(const Word& w) { return count_pattern(w, 'a', 'b'); }

std::size_t outer_corners(const Word& w) { return count_pattern(w, 'b', 'a'); }

std::vector<RelationPair> relation_pairs(const GroupElement& g, std::int64_t max_length) {
  std::vector<RelationPair> out;
  for (const Word& w : fiber(g, max_length).words) {
    const auto& s = w.letters();
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      if (s[i] != 'a' || s[i + 1] != 'b') continue;
      std::string swapped = s;
      std::swap(swapped[i], swapped[i + 1]);
      out.push_back(RelationPair{w, Word(std::move(swapped)), i});
    }
  }
  return out;
}

CornerIdentity corner_identity_check(const GroupElement& g, std::int64_t max_length) {
  if (!in_positive_semigroup(g))
    throw std::domain_error("corner_identity_check: " + to_string(g) + " is not in the positive semigroup");
  CornerIdentity out;
  out.target = g;
  const auto pairs = relation_pairs(g, max_length);
  out.pairs = pairs.size();
  out.lhs = Rational(count(g.x, g.y, g.z));
  if (out.lhs < 1) throw std::domain_error("corner_identity_check: empty fiber");
  out.epsilon = pairs.empty() ? 1 : 0;
  out.rhs = out.epsilon;
  out.shifted_rhs = 0;
  for (const auto& pr : pairs) {
    out.rhs += Rational(1, static_cast<long>(inner_corners(pr.w)));
    out.shifted_rhs += Rational(1, static_cast<long>(outer_corners(pr.w_prime)));
  }
  const GroupElement shifted = multiply(g, inverse(gen_c()));
  out.shifted_lhs = Rational(count(shifted.x, shifted.y, shifted.z));
  for (const Word& w : fiber(shifted, max_length).words)
    if (outer_corners(w) == 0) ++out.epsilon_prime;
  out.shifted_rhs += out.epsilon_prime;
  return out;
}

Partition partition_of(const Word& w) {
  Partition p;
  std::int64_t seen_a = 0;
  for (char ch : w.letters()) {
    if (ch == 'a')
      ++seen_a;
    else if (seen_a > 0)
      p.rows.push_back(seen_a);
  }
  std::sort(p.rows.begin(), p.rows.end(), std::greater<>());
  return p;
}

Word word_of(const Partition& p, std::int64_t x, std::int64_t y) {
  if (!p.valid() || !p.fits(x, y)) throw std::domain_error("word_of: partition does not fit the rectangle");
  // b's in order see nondecreasing numbers of a's: the padded rows reversed.
  std::vector<std::int64_t> prefix_counts(static_cast<std::size_t>(y), 0);
  for (std::size_t i = 0; i < p.rows.size(); ++i)
    prefix_counts[static_cast<std::size_t>(y) - 1 - i] = p.rows[i];
  std::string s;
  std::int64_t placed = 0;
  for (auto c : prefix_counts) {
    s.append(static_cast<std::size_t>(c - placed), 'a');
    placed = c;
    s.push_back('b');
  }
  s.append(static_cast<std::size_t>(x - placed), 'a');
  return Word(std::move(s));
}

RelationStats relation_statistics(std::size_t length) {
  RelationStats st;
  st.length = length;
  for (const Word& w : all_words(length)) {
    ++st.words;
    const auto& s = w.letters();
    const std::size_t f_w = inner_corners(w);
    const GroupElement g_w = evaluate(w);
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      if (s[i] != 'a' || s[i + 1] != 'b') continue;
      ++st.pairs;
      std::string swapped = s;
      std::swap(swapped[i], swapped[i + 1]);
      const Word wp(std::move(swapped));
      if (g_w != multiply(evaluate(wp), gen_c())) ++st.value_shift_violations;
      const std::size_t inner_p = inner_corners(wp);
      const std::size_t outer_p = outer_corners(wp);
      const std::size_t d_inner = gap(f_w, inner_p);
      const std::size_t d_prime = gap(inner_p, outer_p);
      const std::size_t d_cross = gap(f_w, outer_p);
      if (d_inner > 2) ++st.inner_gap_violations;
      if (d_cross > 2) ++st.inner_outer_gap_violations;
      if (f_w > 3 * outer_p) ++st.ratio_violations;
      st.max_inner_gap = std::max(st.max_inner_gap, d_inner);
      st.max_prime_gap = std::max(st.max_prime_gap, d_prime);
      st.max_inner_outer_gap = std::max(st.max_inner_outer_gap, d_cross);
    }
  }
  return st;
}

}  // namespace heis
