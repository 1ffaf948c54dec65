#include "bqf/report.hpp"

#include <json.hpp>

#include <cmath>
#include <sstream>

namespace bqf {

using nlohmann::ordered_json;

int roundtrip_digits(unsigned bits) { return static_cast<int>(std::ceil(bits * 0.30102999566398120)) + 2; }

std::string real_to_string(const Real& x, unsigned bits) {
  std::ostringstream os;
  os.precision(roundtrip_digits(bits));
  os << std::scientific << x;
  return os.str();
}

std::string Report::to_json(bool include_runtime, int indent) const {
  ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["command"] = command;
  ordered_json in = ordered_json::object();
  for (const auto& [k, v] : inputs) in[k] = v;
  j["inputs"] = in;
  unsigned bits = precision_bits ? precision_bits : current_bits();
  if (value)
    j["value"] = {{"re", real_to_string(value->re, bits)}, {"im", real_to_string(value->im, bits)}};
  else
    j["value"] = nullptr;
  j["err_est"] = err_est ? ordered_json(real_to_string(*err_est, 64)) : ordered_json(nullptr);
  if (rational) {
    j["rational"] = to_string(*rational);  // "num/den"
  } else {
    j["rational"] = nullptr;
  }
  j["pv_used"] = pv_used;
  if (include_runtime) j["runtime_ms"] = std::round(runtime_ms * 1000) / 1000;
  j["precision_bits"] = precision_bits;
  ordered_json ex = ordered_json::object();
  for (const auto& [k, v] : extra) ex[k] = v;
  j["extra"] = ex;
  return j.dump(indent);
}

Report Report::from_json(const std::string& text) {
  auto j = ordered_json::parse(text);
  if (j.value("schema_version", 0) != kReportSchemaVersion)
    throw std::runtime_error("report: unsupported schema version");
  Report r;
  r.command = j.at("command").get<std::string>();
  for (auto& [k, v] : j.at("inputs").items()) r.inputs.emplace_back(k, v.get<std::string>());
  r.precision_bits = j.at("precision_bits").get<unsigned>();
  PrecisionScope ps(r.precision_bits ? r.precision_bits : 128);
  if (!j.at("value").is_null())
    r.value = Complex(Real(j["value"]["re"].get<std::string>()), Real(j["value"]["im"].get<std::string>()));
  if (!j.at("err_est").is_null()) r.err_est = Real(j["err_est"].get<std::string>());
  if (!j.at("rational").is_null())
    r.rational = parse_rational(j["rational"].get<std::string>());
  r.pv_used = j.at("pv_used").get<bool>();
  if (j.contains("runtime_ms")) r.runtime_ms = j["runtime_ms"].get<double>();
  for (auto& [k, v] : j.at("extra").items()) r.extra.emplace_back(k, v.get<std::string>());
  return r;
}

}  // namespace bqf
