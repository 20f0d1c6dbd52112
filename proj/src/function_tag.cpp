#include "heis/function_tag.hpp"

#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>

namespace heis {

namespace {

bool starts_with(std::string_view s, std::string_view prefix) { return s.substr(0, prefix.size()) == prefix; }

std::optional<Function> try_parse(std::string_view tag);

std::optional<Function> parse_binary(std::string_view body, char op, bool is_sum) {
  for (std::size_t pos = body.find(op); pos != std::string_view::npos; pos = body.find(op, pos + 1)) {
    auto left = try_parse(body.substr(0, pos));
    if (!left) continue;
    auto right = try_parse(body.substr(pos + 1));
    if (!right) continue;
    return is_sum ? Function::sum(*left, *right) : Function::product(*left, *right);
  }
  return std::nullopt;
}

std::optional<Function> try_parse(std::string_view tag) {
  try {
    if (tag == "h0") return Function::h0();
    if (tag == "h1") return Function::h1();
    if (tag == "potential" || tag == "p") return Function::potential();
    if (tag == "psi0") return Function::a_axis_indicator();
    if (tag == "psi1") return Function::b_axis_indicator();
    if (tag == "delta_e") return Function::identity_indicator();
    if (starts_with(tag, "char:")) {
      const auto body = tag.substr(5);
      auto sep = body.find(',');
      if (sep == std::string_view::npos) sep = body.find('/');
      if (sep == std::string_view::npos) return std::nullopt;
      return Function::character(parse_rational(body.substr(0, sep)), parse_rational(body.substr(sep + 1)));
    }
    if (starts_with(tag, "translate:")) {
      const auto body = tag.substr(10);
      const auto sep = body.rfind(':');
      if (sep == std::string_view::npos) return std::nullopt;
      auto inner = try_parse(body.substr(0, sep));
      if (!inner) return std::nullopt;
      return Function::translate(*inner, parse_element(body.substr(sep + 1)));
    }
    if (starts_with(tag, "scale:")) {
      const auto body = tag.substr(6);
      const auto sep = body.rfind(':');
      if (sep == std::string_view::npos) return std::nullopt;
      auto inner = try_parse(body.substr(0, sep));
      if (!inner) return std::nullopt;
      return Function::scale(*inner, parse_rational(body.substr(sep + 1)));
    }
    if (starts_with(tag, "sum:")) return parse_binary(tag.substr(4), '+', true);
    if (starts_with(tag, "prod:")) return parse_binary(tag.substr(5), '*', false);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  } catch (const std::domain_error&) {
    return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace

Function parse_function(std::string_view tag) {
  auto f = try_parse(tag);
  if (!f) throw std::invalid_argument("unknown or malformed function tag: " + std::string(tag));
  return *f;
}

Measure resolve_measure(std::string_view name_or_path) {
  if (name_or_path == "sw") return Measure::southwest();
  if (name_or_path == "sw-prob") return Measure::southwest_probability();
  std::ifstream in{std::string(name_or_path)};
  if (!in) throw std::invalid_argument("measure file not found: " + std::string(name_or_path));
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("measure file is not valid JSON: " + std::string(e.what()));
  }
  return measure_from_json(j, std::string(name_or_path));
}

}  // namespace heis
