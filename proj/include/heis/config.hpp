#pragma once

// Run configuration shared by the command line. Sources, in increasing
// priority: built-in defaults, a key=value file, HEIS_<KEY> environment
// variables, explicit flags.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "heis/experiments.hpp"
#include "heis/harmonic.hpp"
#include "heis/partition.hpp"
#include "heis/report.hpp"
#include "heis/words.hpp"

namespace heis {

struct Config {
  std::int64_t enum_cells = 64;                     // enumerate: largest x·y
  std::int64_t word_length = kDefaultWordBudget;    // fiber / corner checks
  std::size_t node_budget = kDefaultNodeBudget;     // operator-power memo
  std::size_t memo_capacity = CountTable::kDefaultCapacity;
  std::int64_t max_cells = kDefaultRatioCells;      // ratio / corner tables
  std::string rng = kWalkRng;
  std::uint64_t seed = 20240601;
  std::string format = "csv";
  int precision = 30;
  unsigned threads = 1;

  /// Sets one field from its textual key (names as in the file format).
  /// Throws std::invalid_argument on an unknown key or a bad value.
  void set(std::string_view key, std::string_view value);

  /// Lines "key = value"; '#' starts a comment.
  void load_file(const std::string& path);
  /// HEIS_ENUM_CELLS, HEIS_SEED, ...
  void load_environment();

  /// Every field, for the metadata block.
  void describe(Metadata& meta) const;
};

}  // namespace heis
