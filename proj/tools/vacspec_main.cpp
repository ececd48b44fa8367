#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vacspec/dataset.hpp"
#include "vacspec/errors.hpp"
#include "vacspec/parallel.hpp"
#include "vacspec/quadrature.hpp"
#include "vacspec/runconfig.hpp"
#include "vacspec/spectra.hpp"
#include "vacspec/verify.hpp"
#include "vacspec/version.hpp"

namespace {

using namespace vacspec;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;

struct CommonArgs {
  std::string material;
  std::string grid_text;
  double tol = 1e-6;
  std::string out_path;
  std::string format = "csv";
  bool serial = false;
};

void add_common(CLI::App* cmd, CommonArgs* args, bool with_grid) {
  cmd->add_option("--material", args->material,
                  "Material preset (gold|dielectric|vacuum) or config file path")
      ->required();
  if (with_grid)
    cmd->add_option("--grid", args->grid_text, "Frequency grid start:stop:count (eV)")
        ->required();
  cmd->add_option("--tol", args->tol, "Relative tolerance for integrations");
  cmd->add_option("--out", args->out_path, "Output path (default: stdout)");
  cmd->add_option("--format", args->format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_flag("--serial", args->serial, "Single-threaded, bit-reproducible run");
}

OutputFormat parse_format(const std::string& f) {
  return f == "json" ? OutputFormat::Json : OutputFormat::Csv;
}

unsigned worker_count(bool serial) {
  if (serial) return 1;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Positions may be negative (left of the block); lengths may not.
double parse_position(const std::string& text) {
  std::string t = text;
  double sign = 1.0;
  if (!t.empty() && (t[0] == '-' || t[0] == '+')) {
    if (t[0] == '-') sign = -1.0;
    t.erase(0, 1);
  }
  if (t.rfind("um") == t.size() - 2 && t.size() > 2)
    return sign * std::stod(t.substr(0, t.size() - 2)) * kInverseEVPerMicron;
  if (t.size() > 6 && t.rfind("inv_eV") == t.size() - 6)
    return sign * std::stod(t.substr(0, t.size() - 6));
  throw ConfigError("position: expected <value><um|inv_eV>, got '" + text + "'");
}

void emit(const Dataset& d, const nlohmann::json& meta, const CommonArgs& args) {
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!args.out_path.empty()) {
    file.open(args.out_path);
    if (!file) throw std::runtime_error("cannot open output file: " + args.out_path);
    os = &file;
  }
  if (parse_format(args.format) == OutputFormat::Json)
    write_json(*os, d, meta);
  else
    write_csv(*os, d);
}

nlohmann::json base_meta(const std::string& command, const CommonArgs& args) {
  nlohmann::json meta;
  meta["version"] = kVersion;
  meta["command"] = command;
  meta["material"] = args.material;
  meta["tolerance"] = args.tol;
  meta["format"] = args.format;
  meta["serial"] = args.serial;
  return meta;
}

int cmd_spectrum(const CommonArgs& args, const std::string& length_text) {
  const MaterialModel m = resolve_material(args.material);
  const double L = parse_length(length_text);
  const GridSpec grid = parse_grid(args.grid_text);
  const std::vector<double> omegas = grid.points();

  std::vector<SpectralRecord> records(omegas.size());
  parallel_for(omegas.size(), worker_count(args.serial), [&](std::size_t i) {
    records[i] = spectral_energy(response_sample(m, omegas[i]), L);
  });

  Dataset d;
  d.columns = {"omega_eV", "W", "W_free", "W_C"};
  d.rows.reserve(records.size());
  for (const auto& r : records) d.rows.push_back({r.omega, r.W, r.W_free, r.W_C});

  nlohmann::json meta = base_meta("spectrum", args);
  meta["length_invEV"] = L;
  meta["grid"] = args.grid_text;
  emit(d, meta, args);
  return kExitOk;
}

int cmd_variance(const CommonArgs& args, const std::string& length_text,
                 const std::string& position_text) {
  const MaterialModel m = resolve_material(args.material);
  const double L = parse_length(length_text);
  const double x = parse_position(position_text);
  const GridSpec grid = parse_grid(args.grid_text);
  const std::vector<double> omegas = grid.points();
  const BlockGeometry geom(L);

  std::vector<VarianceDensity> rows(omegas.size());
  parallel_for(omegas.size(), worker_count(args.serial), [&](std::size_t i) {
    const ResponseSample s = response_sample(m, omegas[i]);
    switch (geom.region_of(x)) {
      case Region::Inside: rows[i] = variance_density_inside(s, L, x); break;
      case Region::Right: rows[i] = variance_density_outside(s, L, x); break;
      case Region::Left: rows[i] = variance_from_green(m, L, omegas[i], x); break;
    }
  });

  Dataset d;
  d.columns = {"omega_eV", "x_invEV", "dE2", "dB2", "u"};
  for (const auto& v : rows) d.rows.push_back({v.omega, v.x, v.dE2, v.dB2, v.u});

  nlohmann::json meta = base_meta("variance", args);
  meta["length_invEV"] = L;
  meta["position_invEV"] = x;
  meta["grid"] = args.grid_text;
  emit(d, meta, args);
  return kExitOk;
}

int cmd_total_energy(const CommonArgs& args, const std::vector<std::string>& lengths) {
  const MaterialModel m = resolve_material(args.material);
  std::vector<double> Ls;
  Ls.reserve(lengths.size());
  for (const auto& t : lengths) Ls.push_back(parse_length(t));

  Dataset d;
  d.columns = {"L_invEV", "E_C", "error_estimate", "tail_estimate", "converged"};
  bool any_failed = false;
  for (double L : Ls) {
    try {
      const QuadratureResult r = integrate_spectrum(m, L, SpectrumKind::TotalCasimir, args.tol);
      d.rows.push_back({L, r.value, r.error_estimate, r.tail_estimate, 1.0});
    } catch (const NonConvergenceError& e) {
      // Flag the row and keep sweeping.
      d.rows.push_back({L, e.best.value, e.best.error_estimate, e.best.tail_estimate, 0.0});
      any_failed = true;
    }
  }

  nlohmann::json meta = base_meta("total-energy", args);
  meta["lengths_invEV"] = Ls;
  emit(d, meta, args);
  return any_failed ? kExitNumerical : kExitOk;
}

int cmd_kk_check(const CommonArgs& args, double cutoff) {
  const MaterialModel m = resolve_material(args.material);
  const GridSpec grid = parse_grid(args.grid_text);

  // Points where Re eps - 1 nearly vanishes make the pointwise relative residual
  // meaningless; drop them.
  std::vector<double> omegas;
  double scale = 0.0;
  for (double w : grid.points())
    scale = std::max(scale, std::abs(permittivity(m, w).real() - 1.0));
  for (double w : grid.points())
    if (std::abs(permittivity(m, w).real() - 1.0) > 0.02 * scale) omegas.push_back(w);

  Dataset d;
  d.columns = {"cutoff_eV", "max_relative_residual"};
  std::vector<double> residuals;
  for (double c : {cutoff / 16.0, cutoff / 4.0, cutoff}) {
    residuals.push_back(kramers_kronig_residual(m, omegas, c, 1e-9));
    d.rows.push_back({c, residuals.back()});
  }

  nlohmann::json meta = base_meta("kk-check", args);
  meta["cutoff_eV"] = cutoff;
  meta["grid"] = args.grid_text;
  emit(d, meta, args);

  const bool monotone = residuals[0] >= residuals[1] && residuals[1] >= residuals[2];
  return (monotone && residuals.back() < 1e-3) ? kExitOk : kExitNumerical;
}

int cmd_verify(const std::string& material, const std::string& length_text,
               bool quick, const std::string& out_path) {
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw std::runtime_error("cannot open output file: " + out_path);
    os = &file;
  }

  std::vector<std::pair<std::string, MaterialModel>> materials;
  if (material.empty()) {
    materials.emplace_back("gold", MaterialModel::drude_gold());
    materials.emplace_back("dielectric", MaterialModel::lorentz_dielectric());
  } else {
    materials.emplace_back(material, resolve_material(material));
  }
  std::vector<double> lengths;
  if (length_text.empty())
    lengths = {5.068, 50.68};
  else
    lengths = {parse_length(length_text)};

  VerifyOptions opts;
  opts.quick = quick;
  bool ok = true;
  for (const auto& [name, m] : materials) {
    for (double L : lengths) {
      *os << "== material " << name << ", L = " << L << " eV^-1 ==\n";
      const auto results = run_verification(m, L, opts);
      for (const auto& r : results) {
        *os << (r.pass ? "[PASS] " : "[FAIL] ") << r.name
            << ": measured " << format_double(r.measured) << " (threshold "
            << format_double(r.threshold) << ")\n";
      }
      ok = ok && all_passed(results);
    }
  }
  *os << (ok ? "verification passed\n" : "verification FAILED\n");
  return ok ? kExitOk : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "vacspec: zero-point and Casimir energy spectra of light in a 1D dispersive, "
      "absorptive block (natural units: eV and eV^-1; 1 um = 5.068 eV^-1)"};
  app.require_subcommand(1);

  CommonArgs spectrum_args, variance_args, total_args, kk_args;
  std::string spectrum_length, variance_length, variance_position;
  std::vector<std::string> total_lengths;
  double kk_cutoff = 1000.0;

  auto* spectrum = app.add_subcommand(
      "spectrum", "Spectral energies W, W_free, W_C over a frequency grid");
  add_common(spectrum, &spectrum_args, true);
  spectrum->add_option("--length", spectrum_length, "Block length, e.g. 1um or 5.068inv_eV")
      ->required();

  auto* variance = app.add_subcommand(
      "variance", "Field-variance and energy densities at a fixed position");
  add_common(variance, &variance_args, true);
  variance->add_option("--length", variance_length, "Block length, e.g. 1um")->required();
  variance->add_option("--x", variance_position,
                       "Position, e.g. 0.5um or -2inv_eV (left of the block)")
      ->required();

  auto* total = app.add_subcommand(
      "total-energy", "Total Casimir energy for one or more block lengths");
  add_common(total, &total_args, false);
  total->add_option("--length", total_lengths, "Block length(s); repeatable")
      ->required()
      ->take_all();

  auto* kk = app.add_subcommand(
      "kk-check", "Kramers-Kronig reconstruction residual at increasing cutoffs");
  add_common(kk, &kk_args, true);
  kk->add_option("--cutoff", kk_cutoff, "Largest Hilbert-transform cutoff (eV)");

  std::string verify_material, verify_length, verify_out;
  bool verify_quick = false;
  auto* verify = app.add_subcommand(
      "verify", "Run the numerical cross-check suite (default: both presets, both "
                "figure lengths)");
  verify->add_option("--material", verify_material,
                     "Material preset or config file (default: gold and dielectric)");
  verify->add_option("--length", verify_length, "Block length (default: 1um and 10um)");
  verify->add_option("--out", verify_out, "Write the report to a file");
  verify->add_flag("--quick", verify_quick, "Reduced sample counts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (spectrum->parsed()) return cmd_spectrum(spectrum_args, spectrum_length);
    if (variance->parsed())
      return cmd_variance(variance_args, variance_length, variance_position);
    if (total->parsed()) return cmd_total_energy(total_args, total_lengths);
    if (kk->parsed()) return cmd_kk_check(kk_args, kk_cutoff);
    if (verify->parsed())
      return cmd_verify(verify_material, verify_length, verify_quick, verify_out);
  } catch (const ConfigError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NonConvergenceError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
