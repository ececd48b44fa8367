#include "vacspec/dataset.hpp"

#include <cstdio>
#include <ostream>
#include <istream>
#include <stdexcept>

namespace vacspec {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

void write_csv(std::ostream& os, const Dataset& d) {
  for (std::size_t c = 0; c < d.columns.size(); ++c) {
    if (c) os << ',';
    os << d.columns[c];
  }
  os << '\n';
  for (const auto& row : d.rows) {
    if (row.size() != d.columns.size())
      throw std::runtime_error("write_csv: row width does not match header");
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) os << ',';
      os << format_double(row[c]);
    }
    os << '\n';
  }
}

void write_json(std::ostream& os, const Dataset& d, const nlohmann::json& meta) {
  nlohmann::json j;
  j["meta"] = meta;
  j["columns"] = d.columns;
  auto& rows = j["rows"] = nlohmann::json::array();
  for (const auto& row : d.rows) {
    if (row.size() != d.columns.size())
      throw std::runtime_error("write_json: row width does not match header");
    rows.push_back(row);
  }
  os << j.dump(2) << '\n';
}

Dataset read_json(std::istream& is, nlohmann::json* meta_out) {
  nlohmann::json j;
  try {
    is >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("read_json: parse failure: ") + e.what());
  }
  if (!j.contains("columns") || !j.contains("rows"))
    throw std::runtime_error("read_json: missing columns/rows");
  Dataset d;
  d.columns = j["columns"].get<std::vector<std::string>>();
  for (const auto& row : j["rows"]) {
    d.rows.push_back(row.get<std::vector<double>>());
    if (d.rows.back().size() != d.columns.size())
      throw std::runtime_error("read_json: row width does not match columns");
  }
  if (meta_out && j.contains("meta")) *meta_out = j["meta"];
  return d;
}

}  // namespace vacspec
