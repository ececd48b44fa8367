#include "vacspec/runconfig.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace vacspec {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_number(const std::string& text, const std::string& field) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError(field + ": not a number: '" + text + "'");
  }
}

}  // namespace

std::vector<double> GridSpec::points() const {
  std::vector<double> xs(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    xs[static_cast<std::size_t>(i)] = start + (stop - start) * i / (count - 1);
  return xs;
}

MaterialModel material_preset(const std::string& name) {
  if (name == "gold") return MaterialModel::drude_gold();
  if (name == "dielectric") return MaterialModel::lorentz_dielectric();
  if (name == "vacuum") return MaterialModel::vacuum();
  throw ConfigError("material: unknown preset '" + name +
                    "' (expected gold, dielectric, vacuum, or a file path)");
}

MaterialModel parse_material_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("material: cannot open file '" + path + "'");

  std::map<std::string, double> plain, mu_section;
  bool in_mu = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (trim(line) == "[mu]") {
        in_mu = true;
        continue;
      }
      throw ConfigError("material file " + path + ":" + std::to_string(lineno) +
                        ": unknown section '" + line + "'");
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("material file " + path + ":" + std::to_string(lineno) +
                        ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key != "omega0" && key != "omega_p" && key != "gamma")
      throw ConfigError("material file " + path + ":" + std::to_string(lineno) +
                        ": unknown key '" + key + "'");
    (in_mu ? mu_section : plain)[key] = parse_number(value, key);
  }

  const auto build = [&](const std::map<std::string, double>& kv,
                         const char* where) {
    LorentzOscillator o;
    for (const char* key : {"omega0", "omega_p", "gamma"})
      if (!kv.count(key))
        throw ConfigError(std::string("material file ") + path + ": missing " +
                          where + key);
    o.omega0 = kv.at("omega0");
    o.omega_p = kv.at("omega_p");
    o.gamma = kv.at("gamma");
    return o;
  };

  MaterialModel m;
  m.eps = build(plain, "");
  if (!mu_section.empty()) m.mu = build(mu_section, "[mu] ");
  try {
    m.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("material file " + path + ": " + e.what());
  }
  return m;
}

MaterialModel resolve_material(const std::string& spec) {
  if (spec == "gold" || spec == "dielectric" || spec == "vacuum")
    return material_preset(spec);
  return parse_material_file(spec);
}

double parse_length(const std::string& text) {
  std::size_t split = text.size();
  while (split > 0 && !(std::isdigit(static_cast<unsigned char>(text[split - 1])) ||
                        text[split - 1] == '.'))
    --split;
  const std::string number = text.substr(0, split);
  const std::string unit = text.substr(split);
  if (number.empty()) throw ConfigError("length: missing numeric value in '" + text + "'");
  const double v = parse_number(number, "length");
  double in_inv_ev = 0.0;
  if (unit == "um")
    in_inv_ev = v * kInverseEVPerMicron;
  else if (unit == "inv_eV")
    in_inv_ev = v;
  else
    throw ConfigError("length: unit must be 'um' or 'inv_eV', got '" + unit + "'");
  if (!(in_inv_ev > 0.0)) throw ConfigError("length: must be > 0");
  return in_inv_ev;
}

GridSpec parse_grid(const std::string& text) {
  const auto c1 = text.find(':');
  const auto c2 = text.find(':', c1 == std::string::npos ? c1 : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw ConfigError("grid: expected start:stop:count, got '" + text + "'");
  GridSpec g;
  g.start = parse_number(text.substr(0, c1), "grid.start");
  g.stop = parse_number(text.substr(c1 + 1, c2 - c1 - 1), "grid.stop");
  const double count = parse_number(text.substr(c2 + 1), "grid.count");
  if (count != std::floor(count) || count < 2.0 || count > 1e8)
    throw ConfigError("grid.count: must be an integer >= 2");
  g.count = static_cast<int>(count);
  if (!(g.start > 0.0)) throw ConfigError("grid.start: must be > 0");
  if (!(g.stop > g.start)) throw ConfigError("grid.stop: must exceed grid.start");
  return g;
}

}  // namespace vacspec
