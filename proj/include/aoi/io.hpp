#pragma once

// Flat-file plumbing: CSV with a stable schema, key=value documents (config
// and manifests), and hand-rolled SVG line charts.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "aoi/params.hpp"

namespace aoi {

// Numbers in CSV and manifests carry 12 significant digits.
std::string format_number(double value);

// Comma-delimited, header row first, LF line endings.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}
  void header(const std::vector<std::string>& columns);
  void row(const std::vector<std::string>& fields);

 private:
  std::ostream& out_;
};

// Flat key=value document. One pair per line; '#' starts a comment; blank
// lines are ignored; whitespace around keys and values is trimmed.
class KeyValues {
 public:
  static KeyValues parse(const std::string& text);
  static KeyValues load(const std::string& path);  // throws InvalidConfig

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;
  const std::string& get(const std::string& key) const;  // throws InvalidConfig
  std::string serialize() const;  // keys in insertion order

 private:
  std::vector<std::string> order_;
  std::map<std::string, std::string> values_;
};

// Round-trip of SystemParams (+ threshold) through the key=value format.
// Doubles are printed with max precision so the round trip is exact.
KeyValues params_to_kv(const SystemParams& params, ThresholdPolicy policy);
SystemParams params_from_kv(const KeyValues& kv);
ThresholdPolicy policy_from_kv(const KeyValues& kv);

// Run manifest: written last so its presence signals a complete run.
struct RunManifest {
  std::string command;
  std::vector<std::pair<std::string, std::string>> entries;
  std::vector<std::string> outputs;
  double duration_seconds = 0.0;

  void add(const std::string& key, const std::string& value);
  void write(const std::string& path) const;
};

// Minimal multi-series line chart; one polyline per series.
struct SvgSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

void write_svg_chart(std::ostream& out, const std::string& title, const std::string& x_label,
                     const std::string& y_label, const std::vector<SvgSeries>& series);

}  // namespace aoi
