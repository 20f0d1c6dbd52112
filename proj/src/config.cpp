#include "heis/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include <boost/lexical_cast.hpp>

namespace heis {

namespace {

constexpr std::string_view kKeys[] = {"enum_cells", "word_length", "node_budget", "memo_capacity", "max_cells",
                                      "rng",        "seed",        "format",      "precision",     "threads"};

std::string trim(std::string_view s) {
  auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

template <class T>
T parse_number(std::string_view key, std::string_view value) {
  const std::string v = trim(value);
  if (!v.empty() && v.front() == '-' && std::is_unsigned_v<T>)
    throw std::invalid_argument("config: " + std::string(key) + " must be nonnegative");
  try {
    return boost::lexical_cast<T>(v);
  } catch (const boost::bad_lexical_cast&) {
    throw std::invalid_argument("config: bad value for " + std::string(key) + ": '" + v + "'");
  }
}

}  // namespace

void Config::set(std::string_view key, std::string_view value) {
  if (key == "enum_cells") enum_cells = parse_number<std::int64_t>(key, value);
  else if (key == "word_length") word_length = parse_number<std::int64_t>(key, value);
  else if (key == "node_budget") node_budget = parse_number<std::size_t>(key, value);
  else if (key == "memo_capacity") memo_capacity = parse_number<std::size_t>(key, value);
  else if (key == "max_cells") max_cells = parse_number<std::int64_t>(key, value);
  else if (key == "seed") seed = parse_number<std::uint64_t>(key, value);
  else if (key == "threads") threads = std::max(1u, parse_number<unsigned>(key, value));
  else if (key == "precision") {
    precision = parse_number<int>(key, value);
    if (precision < 20) throw std::invalid_argument("config: precision must be at least 20 digits");
  } else if (key == "format") {
    format = trim(value);
    if (format != "csv" && format != "json") throw std::invalid_argument("config: format must be csv or json");
  } else if (key == "rng") {
    // Only one generator is implemented; the key exists so files can pin it.
    if (trim(value) != kWalkRng && trim(value) != "mt19937_64")
      throw std::invalid_argument("config: unsupported rng '" + trim(value) + "'");
    rng = kWalkRng;
  } else {
    throw std::invalid_argument("config: unknown key '" + std::string(key) + "'");
  }
}

void Config::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: " + path + ":" + std::to_string(lineno) + ": expected key=value");
    set(trim(std::string_view(line).substr(0, eq)), std::string_view(line).substr(eq + 1));
  }
}

void Config::load_environment() {
  for (auto key : kKeys) {
    std::string name = "HEIS_";
    for (char ch : key) name += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    if (const char* v = std::getenv(name.c_str())) set(key, v);
  }
}

void Config::describe(Metadata& meta) const {
  meta.add("enum_cells", std::to_string(enum_cells))
      .add("word_length", std::to_string(word_length))
      .add("node_budget", std::to_string(node_budget))
      .add("memo_capacity", std::to_string(memo_capacity))
      .add("max_cells", std::to_string(max_cells))
      .add("rng", rng)
      .add("seed", std::to_string(seed))
      .add("format", format)
      .add("precision", std::to_string(precision))
      .add("threads", std::to_string(threads));
}

}  // namespace heis
