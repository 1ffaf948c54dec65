#pragma once

#include "bqf/numerics.hpp"
#include "bqf/rational.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bqf {

inline constexpr int kReportSchemaVersion = 1;

// One command result. Serialized as a JSON object; reals as decimal strings
// with enough digits to round-trip at precision_bits, rationals as "num/den".
struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> inputs;  // in flag order
  std::optional<Complex> value;
  std::optional<Real> err_est;
  std::optional<Rational> rational;
  bool pv_used = false;
  double runtime_ms = 0;
  unsigned precision_bits = 0;
  // command-specific extras, kept as strings
  std::vector<std::pair<std::string, std::string>> extra;

  void add_input(const std::string& k, const std::string& v) { inputs.emplace_back(k, v); }
  void add_extra(const std::string& k, const std::string& v) { extra.emplace_back(k, v); }
  std::string to_json(bool include_runtime = true, int indent = 2) const;
  static Report from_json(const std::string& text);
};

// digits needed so that parsing the string back gives the same binary value
int roundtrip_digits(unsigned bits);
std::string real_to_string(const Real& x, unsigned bits);

}  // namespace bqf
