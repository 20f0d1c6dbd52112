#include <doctest.h>

#include <thread>

#include "heis/partition.hpp"
#include "oracles.hpp"

using namespace heis;

TEST_CASE("small counts") {
  CHECK(count(5, 4, 12) == 11);
  CHECK(count(4, 4, 8) == 8);
  CHECK(count(5, 3, 12) == 3);
  for (std::int64_t x = 0; x <= 6; ++x) CHECK(count(x, 0, 0) == 1);
  CHECK(count(1, 1, 2) == 0);
  CHECK(count(-1, 3, 0) == 0);
  CHECK(count(3, -1, 0) == 0);
  CHECK(count(3, 3, -1) == 0);
  CHECK(count(0, 0, 0) == 1);
  CHECK(count(8, 8, 30) == 515);
}

TEST_CASE("rows") {
  CHECK(*count_row(1, 1) == std::vector<BigInt>{1, 1});
  CHECK(*count_row(2, 2) == std::vector<BigInt>{1, 1, 2, 1, 1});
  BigInt total = 0;
  for (const auto& v : *count_row(5, 4)) total += v;
  CHECK(total == 126);
  CHECK(count_row(0, 7)->size() == 1);
  CHECK_THROWS_AS(count_row(-1, 2), std::domain_error);
}

TEST_CASE("counts agree with the direct recursion") {
  for (std::int64_t x = 0; x <= 9; ++x)
    for (std::int64_t y = 0; y <= 9; ++y)
      for (std::int64_t z = -1; z <= x * y + 1; ++z) REQUIRE(count(x, y, z) == oracle::count(x, y, z));
}

TEST_CASE("gaussian coefficients and enumeration agree with the table") {
  CHECK(gaussian_oracle(1, 1) == std::vector<BigInt>{1, 1});
  CHECK(gaussian_oracle(2, 2) == std::vector<BigInt>{1, 1, 2, 1, 1});
  CHECK(gaussian_oracle(5, 4)[12] == 11);
  CHECK_THROWS_AS(gaussian_oracle(-1, 0), std::domain_error);
  for (std::int64_t x = 0; x <= 8; ++x)
    for (std::int64_t y = 0; y <= 8; ++y) {
      const auto g = gaussian_oracle(x, y);
      REQUIRE(g == *count_row(x, y));
      for (std::int64_t z = 0; z <= x * y; ++z)
        REQUIRE(BigInt(enumerate(x, y, z).size()) == g[static_cast<std::size_t>(z)]);
    }
  // larger rows, beyond 64-bit values
  for (std::int64_t x : {20, 33}) CHECK(gaussian_oracle(x, 31) == *count_row(x, 31));
}

TEST_CASE("enumerate") {
  const auto fig = enumerate(5, 4, 12);
  CHECK(fig.size() == 11);
  CHECK(std::find(fig.begin(), fig.end(), Partition{{5, 4, 2, 1}}) != fig.end());
  CHECK(enumerate(1, 1, 1) == std::vector<Partition>{Partition{{1}}});
  CHECK(enumerate(2, 2, 2) == std::vector<Partition>{Partition{{2}}, Partition{{1, 1}}});
  CHECK(enumerate(3, 3, 0) == std::vector<Partition>{Partition{}});
  CHECK(enumerate(3, 3, 10).empty());
  CHECK_THROWS_AS(enumerate(9, 8, 3), BudgetExceeded);
  CHECK(enumerate(9, 8, 3, 72).size() == 3);
  // same order as the oracle: larger leading rows first
  for (std::int64_t z = 0; z <= 20; ++z) {
    const auto mine = enumerate(6, 5, z);
    const auto ref = oracle::partitions(6, 5, z);
    REQUIRE(mine.size() == ref.size());
    for (std::size_t k = 0; k < ref.size(); ++k) {
      CHECK(mine[k].rows == ref[k]);
      CHECK(mine[k].valid());
      CHECK(mine[k].fits(6, 5));
      CHECK(mine[k].area() == z);
    }
  }
}

TEST_CASE("partition value type") {
  const Partition p{{5, 4, 2, 1}};
  CHECK(p.area() == 12);
  CHECK(p.valid());
  CHECK(p.fits(5, 4));
  CHECK_FALSE(p.fits(4, 4));
  CHECK_FALSE(p.fits(5, 3));
  CHECK(p.distinct_parts() == 4);
  CHECK(Partition{{3, 3, 1}}.distinct_parts() == 2);
  CHECK_FALSE(Partition{{1, 2}}.valid());
  CHECK_FALSE(Partition{{2, 0}}.valid());
}

TEST_CASE("at most y rows and classical counts") {
  CHECK(count_at_most_rows(2, 4) == 3);
  CHECK(count_at_most_rows(0, 0) == 1);
  CHECK(count_at_most_rows(0, 3) == 0);
  CHECK(count_at_most_rows(3, -1) == 0);
  CHECK(count_at_most_rows(-1, 0) == 0);
  CHECK(count_at_most_rows(4, 12) == count(12, 4, 12));
  CHECK(classical_count(0) == 1);
  CHECK(classical_count(5) == 7);
  CHECK(classical_count(12) == count(12, 12, 12));
  CHECK(classical_count(100) == BigInt("190569292"));
  CHECK(classical_count(-3) == 0);
  for (std::int64_t y = 0; y <= 12; ++y)
    for (std::int64_t z = 0; z <= 40; ++z) REQUIRE(count_at_most_rows(y, z) == count(z, y, z));
}

TEST_CASE("recurrence, functional form and symmetry") {
  for (std::int64_t x = -1; x <= 14; ++x)
    for (std::int64_t y = -1; y <= 14; ++y)
      for (std::int64_t z = -2; z <= std::max<std::int64_t>(x * y, 0) + 2; ++z) {
        const auto p = count(x, y, z);
        const BigInt e = (x == 0 && y == 0 && z == 0) ? 1 : 0;
        REQUIRE(p == count(x - 1, y, z - y) + count(x, y - 1, z) + e);
        REQUIRE(p == count(y, x, z));
        if (x >= 0 && y >= 0) REQUIRE(p == count(x, y, x * y - z));
      }
}

TEST_CASE("difference bound below the middle") {
  for (std::int64_t x = 1; x <= 12; ++x)
    for (std::int64_t y = 1; y <= 12; ++y)
      for (std::int64_t z = 1; 2 * z <= x * y; ++z) {
        const BigInt d = count(x, y, z) - count(x, y, z - 1);
        CHECK(d >= 0);
        CHECK(d <= count(x, y - 1, z));
      }
}

TEST_CASE("corner-bounded counts") {
  CHECK(count_bounded_corners(5, 4, 12, 0) == 0);
  for (std::int64_t i = 4; i <= 6; ++i) CHECK(count_bounded_corners(5, 4, 12, i) == 11);
  CHECK(count_bounded_corners(3, 3, 0, 0) == 1);
  CHECK(count_bounded_corners(0, 0, 0, 0) == 1);
  CHECK_THROWS_AS(count_bounded_corners(3, 3, 3, -1), std::domain_error);
  for (std::int64_t x = 0; x <= 7; ++x)
    for (std::int64_t y = 0; y <= 7; ++y)
      for (std::int64_t z = 0; z <= x * y; ++z) {
        std::vector<std::uint64_t> by_corners(8, 0);
        for (const auto& rows : oracle::partitions(x, y, z)) ++by_corners[oracle::distinct(rows)];
        std::uint64_t acc = 0;
        for (std::int64_t i = 0; i <= 5; ++i) {
          acc += by_corners[static_cast<std::size_t>(i)];
          REQUIRE(count_bounded_corners(x, y, z, i) == acc);
        }
      }
}

TEST_CASE("corner histogram matches single queries") {
  const CornerHistogram h(9, 8, 3);
  CHECK(h.max_x() == 9);
  CHECK(h.max_corners() == 3);
  for (std::int64_t x = 0; x <= 9; ++x)
    for (std::int64_t y = 0; y <= 8; ++y)
      for (std::int64_t z = 0; z <= x * y; ++z)
        for (std::int64_t i = 0; i <= 3; ++i) REQUIRE(BigInt(h.at_most(x, y, z, i)) == count_bounded_corners(x, y, z, i));
}

TEST_CASE("a tiny table evicts and stays correct") {
  CountTable table(64);
  for (std::int64_t x = 0; x <= 12; ++x)
    for (std::int64_t y = 0; y <= 12; ++y)
      for (std::int64_t z = 0; z <= x * y; z += 3) REQUIRE(table.count(x, y, z) == oracle::count(x, y, z));
  CHECK(table.capacity() == 64);
  // a single row larger than the capacity is still returned
  CHECK(table.row(12, 12)->size() == 145);
  table.clear();
  CHECK(table.stored_rows() == 0);
  CHECK(table.count(5, 4, 12) == 11);
  CHECK((table.has_row(5, 4) || table.has_row(4, 5) || table.stored_rows() == 0));
}

TEST_CASE("concurrent readers see the same values") {
  CountTable table(1 << 12);
  std::vector<std::thread> pool;
  std::vector<int> bad(4, 0);
  for (int t = 0; t < 4; ++t)
    pool.emplace_back([&, t] {
      for (std::int64_t x = 0; x <= 10; ++x)
        for (std::int64_t y = (x + t) % 3; y <= 10; ++y)
          if (table.count(x, y, x * y / 2) != oracle::count(x, y, x * y / 2)) ++bad[static_cast<std::size_t>(t)];
    });
  for (auto& th : pool) th.join();
  CHECK(bad == std::vector<int>(4, 0));
}
