#pragma once

// Bounded partition counts p(x, y, z): the number of partitions of z whose
// Young diagram fits in an x-by-y rectangle, together with p_y(z) (at most y
// rows), the classical p(z), the corner-bounded count p_{<=i}(x, y, z), and
// two oracles that never touch the recurrence (explicit enumeration and the
// Gaussian binomial coefficients).

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <shared_mutex>
#include <utility>
#include <vector>

#include "heis/numeric.hpp"

namespace heis {

/// Row lengths n_1 >= n_2 >= ... >= n_k >= 1.
struct Partition {
  std::vector<std::int64_t> rows;

  std::int64_t area() const;
  bool valid() const;
  bool fits(std::int64_t x, std::int64_t y) const;
  /// Number of distinct row lengths, which is the number of inner corners of
  /// the diagram.
  std::size_t distinct_parts() const;

  friend auto operator<=>(const Partition&, const Partition&) = default;
};

using CountRow = std::shared_ptr<const std::vector<BigInt>>;

/// Memo of count rows z -> p(x, y, z), keyed by the rectangle.
///
/// Rows are filled level by level in the height with the vectorized form of
///   p(k, h, z) = p(k-1, h, z-h) + p(k, h-1, z),
/// reusing the deepest fully cached level. Rows (x, y) and (y, x) share one
/// entry. The table holds at most `capacity` big integers; when a requested
/// row does not fit, the largest stored rows are evicted first. Intermediate
/// rows are only kept when they fit without eviction.
///
/// A second, independent table holds p_y(z) for the regime x >= z.
///
/// Concurrent readers share a lock; computing a missing row takes it
/// exclusively.
class CountTable {
 public:
  static constexpr std::size_t kDefaultCapacity = std::size_t{1} << 22;

  explicit CountTable(std::size_t capacity = kDefaultCapacity);

  CountTable(const CountTable&) = delete;
  CountTable& operator=(const CountTable&) = delete;

  /// Process-wide table used by the free functions below.
  static CountTable& shared();

  BigInt count(std::int64_t x, std::int64_t y, std::int64_t z);
  /// Throws std::domain_error when x < 0 or y < 0.
  CountRow row(std::int64_t x, std::int64_t y);
  BigInt at_most_rows(std::int64_t y, std::int64_t z);

  std::size_t capacity() const;
  void set_capacity(std::size_t capacity);
  std::size_t stored_entries() const;
  std::size_t stored_rows() const;
  bool has_row(std::int64_t x, std::int64_t y) const;
  void clear();

 private:
  using Key = std::pair<std::int64_t, std::int64_t>;
  static Key key_of(std::int64_t x, std::int64_t y);

  CountRow lookup_locked(std::int64_t x, std::int64_t y) const;
  CountRow compute_locked(std::int64_t x, std::int64_t y);
  void insert_locked(const Key& key, const CountRow& row, bool force);
  void grow_at_most_locked(std::int64_t y, std::int64_t z);

  mutable std::shared_mutex mutex_;
  std::size_t capacity_;
  std::size_t entries_ = 0;
  std::map<Key, CountRow> rows_;

  mutable std::shared_mutex at_most_mutex_;
  // at_most_[h][z] = p_h(z) for h <= at_most_height_, z <= at_most_area_.
  std::vector<std::vector<BigInt>> at_most_;
  std::int64_t at_most_height_ = -1;
  std::int64_t at_most_area_ = -1;
};

/// p(x, y, z); zero outside 0 <= z <= xy or when x < 0 or y < 0.
BigInt count(std::int64_t x, std::int64_t y, std::int64_t z);

/// [p(x, y, 0), ..., p(x, y, xy)]. Throws std::domain_error for negative sides.
CountRow count_row(std::int64_t x, std::int64_t y);

/// p_y(z), the number of partitions of z with at most y rows.
BigInt count_at_most_rows(std::int64_t y, std::int64_t z);

/// The classical partition number p(z).
BigInt classical_count(std::int64_t z);

/// p_{<=i}(x, y, z): fitting partitions with at most i distinct row lengths.
/// Enumerates distinct-value profiles with pruning. Throws std::domain_error
/// when i < 0.
BigInt count_bounded_corners(std::int64_t x, std::int64_t y, std::int64_t z, std::int64_t i);

/// Every partition of z fitting in x-by-y, descending lexicographic order
/// (larger first rows first). Throws BudgetExceeded when x·y > cell_budget.
std::vector<Partition> enumerate(std::int64_t x, std::int64_t y, std::int64_t z,
                                 std::int64_t cell_budget = 64);

/// Coefficients of the Gaussian binomial [x+y choose y]_q obtained by
/// multiplying out prod (1 - q^{x+i}) and dividing exactly by prod (1 - q^i).
/// Throws std::domain_error for negative sides.
std::vector<BigInt> gaussian_oracle(std::int64_t x, std::int64_t y);

/// Batch form of count_bounded_corners over a whole box: one enumeration of
/// every partition with at most max_corners distinct parts inside
/// max_x-by-max_y, bucketed by (distinct parts, largest part, number of rows,
/// area) and then accumulated.
class CornerHistogram {
 public:
  CornerHistogram(std::int64_t max_x, std::int64_t max_y, std::int64_t max_corners);

  /// p_{<=i}(x, y, z) for 0 <= x <= max_x, 0 <= y <= max_y, i <= max_corners.
  std::uint64_t at_most(std::int64_t x, std::int64_t y, std::int64_t z, std::int64_t i) const;

  std::int64_t max_x() const { return max_x_; }
  std::int64_t max_y() const { return max_y_; }
  std::int64_t max_corners() const { return max_i_; }
  std::uint64_t partitions_visited() const { return visited_; }

 private:
  std::size_t index(std::int64_t k, std::int64_t v, std::int64_t r, std::int64_t z) const;

  std::int64_t max_x_, max_y_, max_i_, max_z_;
  std::vector<std::uint64_t> cells_;
  std::uint64_t visited_ = 0;
};

}  // namespace heis
