#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace vacspec {

/// Column-named table of doubles: the common currency of the CLI emitters.
struct Dataset {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;  // each row has columns.size() entries
};

/// CSV with a mandatory header row; numbers carry 15 significant digits.
void write_csv(std::ostream& os, const Dataset& d);

/// JSON object {"meta": ..., "columns": [...], "rows": [[...], ...]}. Doubles use
/// the library's shortest round-trip form, so re-reading reproduces them bit for
/// bit.
void write_json(std::ostream& os, const Dataset& d, const nlohmann::json& meta);

/// Parse a dataset produced by write_json; meta_out (optional) receives the meta
/// object. Throws std::runtime_error on malformed input.
Dataset read_json(std::istream& is, nlohmann::json* meta_out = nullptr);

/// "%.15g" formatting used by the CSV writer.
std::string format_double(double v);

}  // namespace vacspec
