#include "heis/partition.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>
#include <string>

namespace heis {

std::int64_t Partition::area() const {
  std::int64_t s = 0;
  for (auto r : rows) s = checked_add(s, r);
  return s;
}

bool Partition::valid() const {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i] < 1) return false;
    if (i > 0 && rows[i] > rows[i - 1]) return false;
  }
  return true;
}

bool Partition::fits(std::int64_t x, std::int64_t y) const {
  if (x < 0 || y < 0) return false;
  if (static_cast<std::int64_t>(rows.size()) > y) return false;
  return rows.empty() || rows.front() <= x;
}

std::size_t Partition::distinct_parts() const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (i == 0 || rows[i] != rows[i - 1]) ++n;
  return n;
}

// ---------------------------------------------------------------------------

CountTable::CountTable(std::size_t capacity) : capacity_(capacity) {}

CountTable& CountTable::shared() {
  static CountTable table;
  return table;
}

CountTable::Key CountTable::key_of(std::int64_t x, std::int64_t y) {
  return x >= y ? Key{x, y} : Key{y, x};
}

std::size_t CountTable::capacity() const {
  std::shared_lock lock(mutex_);
  return capacity_;
}

void CountTable::set_capacity(std::size_t capacity) {
  std::unique_lock lock(mutex_);
  capacity_ = capacity;
  while (entries_ > capacity_ && !rows_.empty()) {
    auto victim = rows_.begin();
    for (auto it = rows_.begin(); it != rows_.end(); ++it)
      if (it->second->size() >= victim->second->size()) victim = it;
    entries_ -= victim->second->size();
    rows_.erase(victim);
  }
}

std::size_t CountTable::stored_entries() const {
  std::shared_lock lock(mutex_);
  return entries_;
}

std::size_t CountTable::stored_rows() const {
  std::shared_lock lock(mutex_);
  return rows_.size();
}

bool CountTable::has_row(std::int64_t x, std::int64_t y) const {
  std::shared_lock lock(mutex_);
  return lookup_locked(x, y) != nullptr;
}

void CountTable::clear() {
  {
    std::unique_lock lock(mutex_);
    rows_.clear();
    entries_ = 0;
  }
  std::unique_lock lock(at_most_mutex_);
  at_most_.clear();
  at_most_height_ = -1;
  at_most_area_ = -1;
}

CountRow CountTable::lookup_locked(std::int64_t x, std::int64_t y) const {
  if (x == 0 || y == 0) {
    static const CountRow unit = std::make_shared<const std::vector<BigInt>>(1, BigInt(1));
    return unit;
  }
  auto it = rows_.find(key_of(x, y));
  return it == rows_.end() ? nullptr : it->second;
}

void CountTable::insert_locked(const Key& key, const CountRow& row, bool force) {
  if (key.first == 0 || key.second == 0 || rows_.count(key)) return;
  const std::size_t n = row->size();
  if (n > capacity_) return;
  if (entries_ + n > capacity_) {
    if (!force) return;
    // Evict largest rows first; ties go to the larger key.
    while (entries_ + n > capacity_ && !rows_.empty()) {
      auto victim = rows_.begin();
      for (auto it = rows_.begin(); it != rows_.end(); ++it)
        if (it->second->size() >= victim->second->size()) victim = it;
      entries_ -= victim->second->size();
      rows_.erase(victim);
    }
  }
  rows_.emplace(key, row);
  entries_ += n;
}

CountRow CountTable::compute_locked(std::int64_t x, std::int64_t y) {
  // Sweep the shorter side as the level index.
  const std::int64_t width = std::max(x, y);
  const std::int64_t height = std::min(x, y);
  checked_mul(width, height);

  // Deepest level whose rows (k, level) for k <= width are all cached.
  std::int64_t start = 0;
  for (std::int64_t h = height; h > 0; --h) {
    bool complete = true;
    for (std::int64_t k = 1; k <= width && complete; ++k) complete = lookup_locked(k, h) != nullptr;
    if (complete) {
      start = h;
      break;
    }
  }

  std::vector<CountRow> level(static_cast<std::size_t>(width) + 1);
  for (std::int64_t k = 0; k <= width; ++k) level[static_cast<std::size_t>(k)] = lookup_locked(k, start);

  for (std::int64_t h = start + 1; h <= height; ++h) {
    std::vector<CountRow> next(level.size());
    next[0] = lookup_locked(0, h);
    for (std::int64_t k = 1; k <= width; ++k) {
      const auto uk = static_cast<std::size_t>(k);
      if (auto cached = lookup_locked(k, h)) {
        next[uk] = cached;
        continue;
      }
      auto r = std::make_shared<std::vector<BigInt>>(static_cast<std::size_t>(k * h + 1));
      const auto& below = *level[uk];     // (k, h-1)
      const auto& left = *next[uk - 1];   // (k-1, h)
      std::copy(below.begin(), below.end(), r->begin());
      for (std::size_t z = 0; z < left.size(); ++z) (*r)[z + static_cast<std::size_t>(h)] += left[z];
      next[uk] = r;
      insert_locked(key_of(k, h), next[uk], /*force=*/k == width && h == height);
    }
    level = std::move(next);
  }
  return level[static_cast<std::size_t>(width)];
}

CountRow CountTable::row(std::int64_t x, std::int64_t y) {
  if (x < 0 || y < 0)
    throw std::domain_error("count_row: negative rectangle side (" + std::to_string(x) + ", " +
                            std::to_string(y) + ")");
  {
    std::shared_lock lock(mutex_);
    if (auto r = lookup_locked(x, y)) return r;
  }
  std::unique_lock lock(mutex_);
  if (auto r = lookup_locked(x, y)) return r;
  return compute_locked(x, y);
}

void CountTable::grow_at_most_locked(std::int64_t y, std::int64_t z) {
  const std::int64_t new_h = y > at_most_height_ ? std::max(y, at_most_height_ * 2) : at_most_height_;
  const std::int64_t new_z = z > at_most_area_ ? std::max(z, at_most_area_ * 2) : at_most_area_;
  std::vector<std::vector<BigInt>> table(static_cast<std::size_t>(new_h) + 1,
                                         std::vector<BigInt>(static_cast<std::size_t>(new_z) + 1));
  // p_h(z) = p_{h-1}(z) + p_h(z-h): fewer than h rows, or exactly h rows and
  // the first column (of height h) removed.
  table[0][0] = 1;
  for (std::int64_t h = 1; h <= new_h; ++h) {
    auto& cur = table[static_cast<std::size_t>(h)];
    const auto& prev = table[static_cast<std::size_t>(h - 1)];
    for (std::int64_t n = 0; n <= new_z; ++n) {
      cur[static_cast<std::size_t>(n)] = prev[static_cast<std::size_t>(n)];
      if (n >= h) cur[static_cast<std::size_t>(n)] += cur[static_cast<std::size_t>(n - h)];
    }
  }
  at_most_ = std::move(table);
  at_most_height_ = new_h;
  at_most_area_ = new_z;
}

BigInt CountTable::at_most_rows(std::int64_t y, std::int64_t z) {
  if (y < 0 || z < 0) return 0;
  y = std::min(y, z);
  {
    std::shared_lock lock(at_most_mutex_);
    if (y <= at_most_height_ && z <= at_most_area_)
      return at_most_[static_cast<std::size_t>(y)][static_cast<std::size_t>(z)];
  }
  std::unique_lock lock(at_most_mutex_);
  if (!(y <= at_most_height_ && z <= at_most_area_))
    grow_at_most_locked(y, z);
  return at_most_[static_cast<std::size_t>(y)][static_cast<std::size_t>(z)];
}

BigInt CountTable::count(std::int64_t x, std::int64_t y, std::int64_t z) {
  if (x < 0 || y < 0 || z < 0) return 0;
  const std::int64_t cells = checked_mul(x, y);
  if (z > cells) return 0;
  const std::int64_t zz = std::min(z, cells - z);
  if (x >= zz) return at_most_rows(y, zz);
  if (y >= zz) return at_most_rows(x, zz);
  return (*row(x, y))[static_cast<std::size_t>(zz)];
}

// ---------------------------------------------------------------------------

BigInt count(std::int64_t x, std::int64_t y, std::int64_t z) { return CountTable::shared().count(x, y, z); }

CountRow count_row(std::int64_t x, std::int64_t y) { return CountTable::shared().row(x, y); }

BigInt count_at_most_rows(std::int64_t y, std::int64_t z) { return CountTable::shared().at_most_rows(y, z); }

BigInt classical_count(std::int64_t z) {
  if (z < 0) return 0;
  return CountTable::shared().at_most_rows(z, z);
}

namespace {

std::uint64_t corner_profiles(std::int64_t max_value, std::int64_t rows_left, std::int64_t area_left,
                              std::int64_t corners_left) {
  if (area_left == 0) return 1;
  if (corners_left == 0 || rows_left == 0) return 0;
  std::uint64_t total = 0;
  for (std::int64_t v = std::min(max_value, area_left); v >= 1; --v) {
    if (v * rows_left < area_left) break;
    const std::int64_t max_m = std::min(rows_left, area_left / v);
    for (std::int64_t m = 1; m <= max_m; ++m)
      total += corner_profiles(v - 1, rows_left - m, area_left - m * v, corners_left - 1);
  }
  return total;
}

void enumerate_rows(std::vector<std::int64_t>& prefix, std::int64_t max_part, std::int64_t rows_left,
                    std::int64_t remaining, std::vector<Partition>& out) {
  if (remaining == 0) {
    out.push_back(Partition{prefix});
    return;
  }
  if (rows_left == 0) return;
  for (std::int64_t v = std::min(max_part, remaining); v >= 1; --v) {
    if (v * rows_left < remaining) break;
    prefix.push_back(v);
    enumerate_rows(prefix, v, rows_left - 1, remaining - v, out);
    prefix.pop_back();
  }
}

}  // namespace

BigInt count_bounded_corners(std::int64_t x, std::int64_t y, std::int64_t z, std::int64_t i) {
  if (i < 0) throw std::domain_error("count_bounded_corners: negative corner bound");
  if (x < 0 || y < 0 || z < 0 || z > checked_mul(x, y)) return 0;
  return BigInt(corner_profiles(x, y, z, i));
}

std::vector<Partition> enumerate(std::int64_t x, std::int64_t y, std::int64_t z, std::int64_t cell_budget) {
  std::vector<Partition> out;
  if (x < 0 || y < 0 || z < 0) return out;
  if (checked_mul(x, y) > cell_budget)
    throw BudgetExceeded("enumerate: rectangle " + std::to_string(x) + "x" + std::to_string(y) +
                         " exceeds the enumeration budget of " + std::to_string(cell_budget) + " cells");
  if (z > x * y) return out;
  std::vector<std::int64_t> prefix;
  enumerate_rows(prefix, x, y, z, out);
  return out;
}

std::vector<BigInt> gaussian_oracle(std::int64_t x, std::int64_t y) {
  if (x < 0 || y < 0) throw std::domain_error("gaussian_oracle: negative rectangle side");
  auto times_one_minus_q_pow = [](std::vector<BigInt>& poly, std::int64_t k) {
    const auto shift = static_cast<std::size_t>(k);
    poly.resize(poly.size() + shift);
    for (std::size_t d = poly.size(); d-- > shift;) poly[d] -= poly[d - shift];
  };
  std::vector<BigInt> num{1}, den{1};
  for (std::int64_t i = 1; i <= y; ++i) {
    times_one_minus_q_pow(num, x + i);
    times_one_minus_q_pow(den, i);
  }
  // den has constant term 1, so division is the power-series recursion; the
  // tail beyond degree xy must cancel exactly.
  const std::size_t qdeg = num.size() - den.size();
  std::vector<BigInt> quot(qdeg + 1);
  for (std::size_t n = 0; n < num.size(); ++n) {
    BigInt acc = num[n];
    for (std::size_t k = 1; k < den.size() && k <= n; ++k)
      if (n - k <= qdeg) acc -= den[k] * quot[n - k];
    if (n <= qdeg)
      quot[n] = acc;
    else if (acc != 0)
      throw std::logic_error("gaussian_oracle: inexact division");
  }
  return quot;
}

// ---------------------------------------------------------------------------

CornerHistogram::CornerHistogram(std::int64_t max_x, std::int64_t max_y, std::int64_t max_corners)
    : max_x_(max_x), max_y_(max_y), max_i_(max_corners), max_z_(checked_mul(max_x, max_y)) {
  if (max_x < 0 || max_y < 0 || max_corners < 0)
    throw std::domain_error("CornerHistogram: negative bound");
  cells_.assign(static_cast<std::size_t>((max_i_ + 1) * (max_x_ + 1) * (max_y_ + 1) * (max_z_ + 1)), 0);

  // Every node of the search is itself a partition: distinct values chosen in
  // decreasing order, each with a positive multiplicity.
  struct Frame {
    CornerHistogram* self;
    std::int64_t top;
    void visit(std::int64_t next_below, std::int64_t rows, std::int64_t area, std::int64_t k) {
      ++self->cells_[self->index(k, top, rows, area)];
      ++self->visited_;
      if (k == self->max_i_) return;
      for (std::int64_t v = next_below - 1; v >= 1; --v)
        for (std::int64_t m = 1; rows + m <= self->max_y_; ++m) visit(v, rows + m, area + m * v, k + 1);
    }
  };
  ++cells_[index(0, 0, 0, 0)];
  ++visited_;
  if (max_i_ >= 1) {
    for (std::int64_t top = 1; top <= max_x_; ++top) {
      Frame f{this, top};
      for (std::int64_t m = 1; m <= max_y_; ++m) f.visit(top, m, m * top, 1);
    }
  }

  // Accumulate along distinct parts, largest part and row count.
  for (std::int64_t k = 0; k <= max_i_; ++k)
    for (std::int64_t v = 0; v <= max_x_; ++v)
      for (std::int64_t r = 0; r <= max_y_; ++r)
        for (std::int64_t z = 0; z <= max_z_; ++z) {
          std::uint64_t& cell = cells_[index(k, v, r, z)];
          if (k > 0) cell += cells_[index(k - 1, v, r, z)];
          if (v > 0) cell += cells_[index(k, v - 1, r, z)];
          if (r > 0) cell += cells_[index(k, v, r - 1, z)];
          if (v > 0 && r > 0) cell -= cells_[index(k, v - 1, r - 1, z)];
          if (k > 0 && v > 0) cell -= cells_[index(k - 1, v - 1, r, z)];
          if (k > 0 && r > 0) cell -= cells_[index(k - 1, v, r - 1, z)];
          if (k > 0 && v > 0 && r > 0) cell += cells_[index(k - 1, v - 1, r - 1, z)];
        }
}

std::size_t CornerHistogram::index(std::int64_t k, std::int64_t v, std::int64_t r, std::int64_t z) const {
  return static_cast<std::size_t>(((k * (max_x_ + 1) + v) * (max_y_ + 1) + r) * (max_z_ + 1) + z);
}

std::uint64_t CornerHistogram::at_most(std::int64_t x, std::int64_t y, std::int64_t z, std::int64_t i) const {
  if (x < 0 || y < 0 || z < 0 || i < 0) return 0;
  if (x > max_x_ || y > max_y_ || i > max_i_)
    throw std::out_of_range("CornerHistogram: query outside the enumerated box");
  if (z > x * y) return 0;
  return cells_[index(i, x, y, z)];
}

}  // namespace heis
