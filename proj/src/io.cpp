#include "modhom/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include "modhom/error.hpp"

namespace modhom {

namespace {

std::string grid_line(const Grid1D& g) {
  return to_string(g.label()) + " start=" + format_double(g.start()) +
         " step=" + format_double(g.step()) + " count=" + std::to_string(g.count());
}

Grid1D parse_grid_line(const std::string& text) {
  std::istringstream in(text);
  std::string label;
  in >> label;
  double start = 0.0, step = 0.0;
  long long count = 0;
  bool have_start = false, have_step = false, have_count = false;
  std::string field;
  while (in >> field) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) throw InvalidInput("malformed grid field: " + field);
    const std::string key = field.substr(0, eq);
    const std::string val = field.substr(eq + 1);
    if (key == "start") start = std::strtod(val.c_str(), nullptr), have_start = true;
    else if (key == "step") step = std::strtod(val.c_str(), nullptr), have_step = true;
    else if (key == "count") count = std::stoll(val), have_count = true;
  }
  if (!have_start || !have_step || !have_count) throw InvalidInput("incomplete grid line: " + text);
  return {start, step, static_cast<Eigen::Index>(count), axis_label_from_string(label)};
}

std::vector<double> parse_row(const std::string& line) {
  std::vector<double> out;
  const char* p = line.c_str();
  while (*p != '\0') {
    char* end = nullptr;
    const double v = std::strtod(p, &end);
    if (end == p) throw InvalidInput("malformed number in CSV row: " + line);
    out.push_back(v);
    p = end;
    if (*p == ',') ++p;
    else if (*p != '\0' && *p != '\r') throw InvalidInput("malformed CSV row: " + line);
    else if (*p == '\r') break;
  }
  return out;
}

nlohmann::json grid_json(const Grid1D& g) {
  return {{"label", to_string(g.label())}, {"start", g.start()}, {"step", g.step()},
          {"count", g.count()}};
}

Grid1D grid_from_json(const nlohmann::json& j) {
  return {j.at("start").get<double>(), j.at("step").get<double>(),
          j.at("count").get<Eigen::Index>(), axis_label_from_string(j.at("label").get<std::string>())};
}

nlohmann::json metadata_json(const Metadata& metadata) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, v] : metadata) j[k] = v;
  return j;
}

template <class Writer>
void write_file(const std::string& path, Writer&& writer) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw InvalidInput("cannot open output file: " + path);
  writer(os);
  if (!os) throw InvalidInput("failed writing output file: " + path);
}

}  // namespace

void Table::add(std::string name, std::vector<double> column) {
  if (!columns.empty() && column.size() != rows()) {
    throw ContractViolation("table column '" + name + "' has mismatched length");
  }
  names.push_back(std::move(name));
  columns.push_back(std::move(column));
}

OutputFormat output_format_from_string(const std::string& name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw InvalidInput("unknown output format: " + name + " (expected csv or json)");
}

std::string extension(OutputFormat format) { return format == OutputFormat::Csv ? ".csv" : ".json"; }

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_map_csv(std::ostream& os, const SpectralMap& map, const Metadata& metadata) {
  os << "# kind: " << to_string(map.kind) << '\n';
  os << "# rows: " << grid_line(map.grid.rows) << '\n';
  os << "# cols: " << grid_line(map.grid.cols) << '\n';
  for (const auto& [k, v] : metadata) os << "# " << k << ": " << v << '\n';
  os << to_string(map.grid.rows.label()) << '\\' << to_string(map.grid.cols.label());
  for (Eigen::Index c = 0; c < map.grid.cols.count(); ++c) {
    os << ',' << format_double(map.grid.cols.node(c));
  }
  os << '\n';
  for (Eigen::Index r = 0; r < map.values.rows(); ++r) {
    os << format_double(map.grid.rows.node(r));
    for (Eigen::Index c = 0; c < map.values.cols(); ++c) os << ',' << format_double(map.values(r, c));
    os << '\n';
  }
}

SpectralMap read_map_csv(std::istream& is) {
  std::string line;
  std::string kind;
  std::optional<Grid1D> rows, cols;
  bool header_seen = false;
  std::vector<std::vector<double>> data;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto colon = line.find(':');
      if (colon == std::string::npos) continue;
      const std::string key = line.substr(2, colon - 2);
      const std::string val = line.substr(colon + 2);
      if (key == "kind") kind = val;
      else if (key == "rows") rows = parse_grid_line(val);
      else if (key == "cols") cols = parse_grid_line(val);
      continue;
    }
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    data.push_back(parse_row(line));
  }
  if (kind.empty() || !rows || !cols) throw InvalidInput("map CSV lacks kind/rows/cols metadata");
  if (static_cast<Eigen::Index>(data.size()) != rows->count()) {
    throw InvalidInput("map CSV row count does not match its grid");
  }
  RowMajorArrayXXd values(rows->count(), cols->count());
  for (Eigen::Index r = 0; r < rows->count(); ++r) {
    const auto& row = data[static_cast<std::size_t>(r)];
    if (static_cast<Eigen::Index>(row.size()) != cols->count() + 1) {
      throw InvalidInput("map CSV row " + std::to_string(r) + " has the wrong width");
    }
    for (Eigen::Index c = 0; c < cols->count(); ++c) values(r, c) = row[static_cast<std::size_t>(c + 1)];
  }
  return {map_kind_from_string(kind), {*rows, *cols}, std::move(values)};
}

void write_table_csv(std::ostream& os, const Table& table, const Metadata& metadata) {
  for (const auto& [k, v] : metadata) os << "# " << k << ": " << v << '\n';
  for (std::size_t i = 0; i < table.names.size(); ++i) os << (i ? "," : "") << table.names[i];
  os << '\n';
  for (std::size_t r = 0; r < table.rows(); ++r) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      os << (c ? "," : "") << format_double(table.columns[c][r]);
    }
    os << '\n';
  }
}

Table read_table_csv(std::istream& is) {
  Table table;
  std::string line;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      std::istringstream in(line);
      std::string name;
      while (std::getline(in, name, ',')) {
        table.names.push_back(name);
        table.columns.emplace_back();
      }
      header_seen = true;
      continue;
    }
    const auto row = parse_row(line);
    if (row.size() != table.names.size()) throw InvalidInput("table CSV row has the wrong width");
    for (std::size_t c = 0; c < row.size(); ++c) table.columns[c].push_back(row[c]);
  }
  return table;
}

nlohmann::json map_to_json(const SpectralMap& map, const Metadata& metadata) {
  nlohmann::json values = nlohmann::json::array();
  for (Eigen::Index r = 0; r < map.values.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < map.values.cols(); ++c) row.push_back(map.values(r, c));
    values.push_back(std::move(row));
  }
  nlohmann::json meta = metadata_json(metadata);
  meta["kind"] = to_string(map.kind);
  return {{"grid", {{"rows", grid_json(map.grid.rows)}, {"cols", grid_json(map.grid.cols)}}},
          {"values", std::move(values)},
          {"metadata", std::move(meta)}};
}

namespace {

SpectralMap map_from_json_unchecked(const nlohmann::json& j) {
  const Grid1D rows = grid_from_json(j.at("grid").at("rows"));
  const Grid1D cols = grid_from_json(j.at("grid").at("cols"));
  const auto& values = j.at("values");
  if (static_cast<Eigen::Index>(values.size()) != rows.count()) {
    throw InvalidInput("map JSON row count does not match its grid");
  }
  RowMajorArrayXXd out(rows.count(), cols.count());
  for (Eigen::Index r = 0; r < rows.count(); ++r) {
    const auto& row = values.at(static_cast<std::size_t>(r));
    if (static_cast<Eigen::Index>(row.size()) != cols.count()) {
      throw InvalidInput("map JSON row has the wrong width");
    }
    for (Eigen::Index c = 0; c < cols.count(); ++c) out(r, c) = row.at(static_cast<std::size_t>(c)).get<double>();
  }
  return {map_kind_from_string(j.at("metadata").at("kind").get<std::string>()), {rows, cols},
          std::move(out)};
}

}  // namespace

SpectralMap map_from_json(const nlohmann::json& j) {
  try {
    return map_from_json_unchecked(j);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed map JSON: ") + e.what());
  }
}

nlohmann::json table_to_json(const Table& table, const Metadata& metadata) {
  nlohmann::json values = nlohmann::json::object();
  for (std::size_t c = 0; c < table.names.size(); ++c) values[table.names[c]] = table.columns[c];
  return {{"grid", {{"columns", table.names}, {"rows", table.rows()}}},
          {"values", std::move(values)},
          {"metadata", metadata_json(metadata)}};
}

void write_map(const std::string& path, OutputFormat format, const SpectralMap& map,
               const Metadata& metadata) {
  write_file(path, [&](std::ostream& os) {
    if (format == OutputFormat::Csv) write_map_csv(os, map, metadata);
    else os << map_to_json(map, metadata).dump(1) << '\n';
  });
}

void write_table(const std::string& path, OutputFormat format, const Table& table,
                 const Metadata& metadata) {
  write_file(path, [&](std::ostream& os) {
    if (format == OutputFormat::Csv) write_table_csv(os, table, metadata);
    else os << table_to_json(table, metadata).dump(1) << '\n';
  });
}

}  // namespace modhom
