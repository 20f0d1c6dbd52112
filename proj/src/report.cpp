#include "heis/report.hpp"

#include <nlohmann/json.hpp>

namespace heis {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

void write_csv(std::ostream& os, const Metadata& meta, const Table& table) {
  for (const auto& [k, v] : meta.entries) os << "# " << k << "=" << v << "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i) os << (i ? "," : "") << csv_field(table.columns[i]);
  os << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(row[i]);
    os << "\n";
  }
}

void write_json(std::ostream& os, const Metadata& meta, const Table& table) {
  nlohmann::ordered_json j;
  j["metadata"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : meta.entries) j["metadata"][k] = v;
  j["columns"] = table.columns;
  j["rows"] = table.rows;
  os << j.dump(2) << "\n";
}

}  // namespace heis
