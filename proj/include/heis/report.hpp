#pragma once

// Plain tables with a leading "# key=value" metadata block, written as CSV or
// as a JSON object {"metadata": {...}, "columns": [...], "rows": [[...]]}.

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace heis {

inline constexpr const char* kLibraryVersion = "1.0.0";

struct Metadata {
  std::vector<std::pair<std::string, std::string>> entries;

  Metadata& add(std::string key, std::string value) {
    entries.emplace_back(std::move(key), std::move(value));
    return *this;
  }
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

void write_csv(std::ostream& os, const Metadata& meta, const Table& table);
void write_json(std::ostream& os, const Metadata& meta, const Table& table);

/// Quotes a CSV field when it contains a comma, quote or newline.
std::string csv_field(const std::string& s);

}  // namespace heis
