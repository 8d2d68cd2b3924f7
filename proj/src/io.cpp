#include "aoi/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace aoi {
namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::string format_full(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

double parse_double(const std::string& text, const std::string& key) {
  const std::string t = trim(text);
  require(!t.empty(), ErrorCode::InvalidConfig, "empty value for " + key);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  require(end == t.c_str() + t.size(), ErrorCode::InvalidConfig,
          "could not parse number '" + t + "' for " + key);
  return v;
}

}  // namespace

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

void CsvWriter::header(const std::vector<std::string>& columns) { row(columns); }

void CsvWriter::row(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ << ',';
    out_ << fields[i];
  }
  out_ << '\n';
}

KeyValues KeyValues::parse(const std::string& text) {
  KeyValues kv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    require(eq != std::string::npos, ErrorCode::InvalidConfig,
            "expected key=value, got '" + t + "'");
    kv.set(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  return kv;
}

KeyValues KeyValues::load(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::InvalidConfig, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

void KeyValues::set(const std::string& key, const std::string& value) {
  if (!values_.count(key)) order_.push_back(key);
  values_[key] = value;
}

bool KeyValues::has(const std::string& key) const { return values_.count(key) != 0; }

const std::string& KeyValues::get(const std::string& key) const {
  const auto it = values_.find(key);
  require(it != values_.end(), ErrorCode::InvalidConfig, "missing key " + key);
  return it->second;
}

std::string KeyValues::serialize() const {
  std::string out;
  for (const std::string& key : order_) {
    out += key;
    out += '=';
    out += values_.at(key);
    out += '\n';
  }
  return out;
}

KeyValues params_to_kv(const SystemParams& params, ThresholdPolicy policy) {
  KeyValues kv;
  kv.set("lambda_e", format_full(params.lambda_e));
  std::string rates;
  for (std::size_t j = 0; j < params.lambda_d.size(); ++j) {
    if (j) rates += ',';
    rates += format_full(params.lambda_d[j]);
  }
  kv.set("lambda_d", rates);
  kv.set("q", format_full(params.q));
  kv.set("gamma", format_full(policy.gamma));
  return kv;
}

SystemParams params_from_kv(const KeyValues& kv) {
  std::vector<double> rates;
  std::stringstream list(kv.get("lambda_d"));
  std::string item;
  while (std::getline(list, item, ',')) rates.push_back(parse_double(item, "lambda_d"));
  return SystemParams::validated(parse_double(kv.get("lambda_e"), "lambda_e"), std::move(rates),
                                 parse_double(kv.get("q"), "q"));
}

ThresholdPolicy policy_from_kv(const KeyValues& kv) {
  return ThresholdPolicy::validated(kv.has("gamma") ? parse_double(kv.get("gamma"), "gamma")
                                                    : 0.0);
}

void RunManifest::add(const std::string& key, const std::string& value) {
  entries.emplace_back(key, value);
}

void RunManifest::write(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), ErrorCode::InvalidConfig, "cannot write " + path);
  out << "command=" << command << "\n";
  for (const auto& [key, value] : entries) out << key << "=" << value << "\n";
  std::string joined;
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    if (i) joined += ',';
    joined += outputs[i];
  }
  out << "outputs=" << joined << "\n";
  out << "duration_seconds=" << format_number(duration_seconds) << "\n";
}

}  // namespace aoi
