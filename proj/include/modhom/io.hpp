#pragma once

// CSV and JSON serialization of maps and tables. Every double is written with
// 17 significant digits, so a map written and re-read is bit-identical.

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "modhom/maps.hpp"

namespace modhom {

using Metadata = std::vector<std::pair<std::string, std::string>>;

/// Named numeric columns of equal length.
struct Table {
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;

  void add(std::string name, std::vector<double> column);
  std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
};

enum class OutputFormat { Csv, Json };

OutputFormat output_format_from_string(const std::string& name);
std::string extension(OutputFormat format);

/// "%.17g".
std::string format_double(double value);

/// Map CSV layout:
///   # kind: ModifiedHOM
///   # rows: omega_s start=... step=... count=...
///   # cols: omega_i start=... step=... count=...
///   # <metadata key>: <value>
///   omega_s\omega_i,<column nodes>
///   <row node>,<values>
void write_map_csv(std::ostream& os, const SpectralMap& map, const Metadata& metadata = {});
SpectralMap read_map_csv(std::istream& is);

void write_table_csv(std::ostream& os, const Table& table, const Metadata& metadata = {});
Table read_table_csv(std::istream& is);

/// {grid: {rows: {...}, cols: {...}}, values: [[...]], metadata: {kind, ...}}
nlohmann::json map_to_json(const SpectralMap& map, const Metadata& metadata = {});
SpectralMap map_from_json(const nlohmann::json& j);

/// {grid: {columns: [...]}, values: {name: [...]}, metadata: {...}}
nlohmann::json table_to_json(const Table& table, const Metadata& metadata = {});

void write_map(const std::string& path, OutputFormat format, const SpectralMap& map,
               const Metadata& metadata = {});
void write_table(const std::string& path, OutputFormat format, const Table& table,
                 const Metadata& metadata = {});

}  // namespace modhom
