#pragma once

#include <string>
#include <vector>

#include "vacspec/materials.hpp"

namespace vacspec {

/// CLI-facing unit conversion. The core works purely in natural units
/// (hbar = c = eps0 = mu0 = 1, frequency in eV, length in eV^-1); only the CLI
/// converts, with 1 micron = 5.068 eV^-1.
inline constexpr double kInverseEVPerMicron = 5.068;

/// Raised by the configuration parsers; message names the offending field.
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct GridSpec {
  double start = 0.0;
  double stop = 0.0;
  int count = 0;

  std::vector<double> points() const;  ///< linearly spaced, endpoints included
};

enum class OutputFormat { Csv, Json };

/// Validated inputs of one CLI run, all in natural units.
struct RunConfig {
  MaterialModel material;
  std::string material_name;  // preset name or file path, echoed into output meta
  double length = 0.0;        // eV^-1
  GridSpec grid;
  double tolerance = 1e-6;
  std::string output_path;    // empty: stdout
  OutputFormat format = OutputFormat::Csv;
  bool serial = false;
};

/// gold | dielectric | vacuum.
MaterialModel material_preset(const std::string& name);

/// Key-value text: omega0, omega_p, gamma (eV), plus an optional [mu] section with
/// the same three keys. '#' starts a comment. Values validated on load.
MaterialModel parse_material_file(const std::string& path);

/// Preset name or path to a material file.
MaterialModel resolve_material(const std::string& spec);

/// "<value><unit>" with unit in {um, inv_eV}; returns eV^-1.
double parse_length(const std::string& text);

/// "start:stop:count" in eV; count >= 2, 0 < start < stop.
GridSpec parse_grid(const std::string& text);

}  // namespace vacspec
