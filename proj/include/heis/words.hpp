#pragma once

// Words in a, b as boundary paths of Young diagrams: fibers B_g of the
// evaluation map, inner (ab) and outer (ba) corners, and the relation that
// swaps one ab into ba.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "heis/group.hpp"
#include "heis/numeric.hpp"
#include "heis/partition.hpp"

namespace heis {

inline constexpr std::int64_t kDefaultWordBudget = 16;

/// All words evaluating to `target`, in lexicographic order.
struct Fiber {
  GroupElement target;
  std::vector<Word> words;
};

/// w = w0·ab·w1 and w_prime = w0·ba·w1, with the ab starting at `position`.
struct RelationPair {
  Word w;
  Word w_prime;
  std::size_t position = 0;
};

/// Backtracks over letters, keeping the remaining target inside G+.
/// Returns an empty fiber for g outside G+; throws BudgetExceeded when
/// degree(g) exceeds max_length.
Fiber fiber(const GroupElement& g, std::int64_t max_length = kDefaultWordBudget);

/// Number of occurrences of "ab".
std::size_t inner_corners(const Word& w);
/// Number of occurrences of "ba".
std::size_t outer_corners(const Word& w);

/// Every pair of the relation whose first word evaluates to g.
std::vector<RelationPair> relation_pairs(const GroupElement& g, std::int64_t max_length = kDefaultWordBudget);

/// Both sides of
///   p(g)      = eps_g  + sum over pairs of 1/f_w
///   p(g c^-1) = eps'_g + sum over pairs of 1/f'_{w'}
/// as exact rationals. eps_g is 1 iff there are no pairs; eps'_g counts the
/// words of B_{g c^-1} without a "ba".
struct CornerIdentity {
  GroupElement target;
  Rational lhs;
  Rational rhs;
  int epsilon = 0;
  Rational shifted_lhs;
  Rational shifted_rhs;
  std::int64_t epsilon_prime = 0;
  std::size_t pairs = 0;

  bool holds() const {
    return lhs == rhs && shifted_lhs == shifted_rhs && (epsilon_prime == 0 || epsilon_prime == 1);
  }
};

/// Throws std::domain_error for g outside G+ and BudgetExceeded past the
/// word-length budget.
CornerIdentity corner_identity_check(const GroupElement& g, std::int64_t max_length = kDefaultWordBudget);

/// Row lengths read off a word: each b contributes the number of a's before it.
Partition partition_of(const Word& w);
/// Inverse of partition_of on words with x letters a and y letters b.
/// Throws std::domain_error when the partition does not fit.
Word word_of(const Partition& p, std::int64_t x, std::int64_t y);

/// Exhaustive statistics of the swap relation over all words of one length.
struct RelationStats {
  std::size_t length = 0;
  std::size_t words = 0;
  std::size_t pairs = 0;
  std::size_t value_shift_violations = 0;     // g_w != g_{w'} c
  std::size_t inner_gap_violations = 0;       // |f_w - f_{w'}| > 2 (inner vs inner)
  std::size_t inner_outer_gap_violations = 0; // |f_w - f'_{w'}| > 2
  std::size_t ratio_violations = 0;           // f_w > 3 f'_{w'}
  std::size_t max_inner_gap = 0;              // max |f_w - f_{w'}|
  std::size_t max_prime_gap = 0;              // max |f_{w'} - f'_{w'}|
  std::size_t max_inner_outer_gap = 0;        // max |f_w - f'_{w'}|

  bool clean() const {
    return value_shift_violations == 0 && inner_gap_violations == 0 && inner_outer_gap_violations == 0 &&
           ratio_violations == 0;
  }
};

RelationStats relation_statistics(std::size_t length);

}  // namespace heis
