// vivochan command-line front end: tissue sweeps, layered-stack solutions,
// SAR, path-loss models, channel realizations, link budgets, band lookups
// and dataset dumps, with CSV/JSON output for plotting and scripting.

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "vivochan/channel.hpp"
#include "vivochan/constants.hpp"
#include "vivochan/datasets.hpp"
#include "vivochan/dielectric.hpp"
#include "vivochan/errors.hpp"
#include "vivochan/exposure.hpp"
#include "vivochan/layered.hpp"
#include "vivochan/pathloss.hpp"
#include "vivochan/regulatory.hpp"
#include "vivochan/rng.hpp"
#include "vivochan/tissue_db.hpp"

using nlohmann::ordered_json;
using namespace vivochan;

namespace {

constexpr const char* kVersion = "0.1.0";

// ---------------------------------------------------------------------------
// output envelope

struct Metadata {
  std::string command_line;
  std::optional<std::uint64_t> seed;
};

std::string format_sig(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

// JSON numbers are fixed at 12 significant digits.
ordered_json json_num(double v) {
  if (std::isnan(v) || std::isinf(v)) return nullptr;
  return std::strtod(format_sig(v, 12).c_str(), nullptr);
}

ordered_json metadata_json(const Metadata& meta) {
  ordered_json m;
  m["tool_version"] = kVersion;
  m["command_line"] = meta.command_line;
  if (meta.seed) m["seed"] = *meta.seed;
  return m;
}

using Cell = std::variant<double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  // extra scalar results rendered as JSON keys / CSV comments
  std::vector<std::pair<std::string, ordered_json>> extras;

  void add_row(std::vector<Cell> row) { rows.push_back(std::move(row)); }
};

void write_csv(std::ostream& out, const Table& table, const Metadata& meta) {
  out << "# tool_version = " << kVersion << "\n";
  out << "# command_line = " << meta.command_line << "\n";
  if (meta.seed) out << "# seed = " << *meta.seed << "\n";
  for (const auto& [key, value] : table.extras)
    out << "# " << key << " = " << value.dump() << "\n";
  for (std::size_t c = 0; c < table.columns.size(); ++c)
    out << (c ? "," : "") << table.columns[c];
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << ',';
      if (const auto* num = std::get_if<double>(&row[c]))
        out << format_sig(*num, 6);  // CSV is for plotting
      else
        out << std::get<std::string>(row[c]);
    }
    out << "\n";
  }
}

void write_json(std::ostream& out, const Table& table, const Metadata& meta) {
  ordered_json doc;
  doc["metadata"] = metadata_json(meta);
  for (const auto& [key, value] : table.extras) doc[key] = value;
  doc["columns"] = table.columns;
  ordered_json rows = ordered_json::array();
  for (const auto& row : table.rows) {
    ordered_json jrow = ordered_json::array();
    for (const auto& cell : row) {
      if (const auto* num = std::get_if<double>(&cell))
        jrow.push_back(json_num(*num));
      else
        jrow.push_back(std::get<std::string>(cell));
    }
    rows.push_back(std::move(jrow));
  }
  doc["rows"] = rows;
  out << doc.dump(2) << "\n";
}

struct OutputOptions {
  std::string format = "csv";
  std::string path;  // empty = stdout

  void emit(const Table& table, const Metadata& meta) const {
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!path.empty()) {
      file.open(path);
      if (!file) throw std::runtime_error("cannot open output file '" + path + "'");
      out = &file;
    }
    if (format == "json")
      write_json(*out, table, meta);
    else
      write_csv(*out, table, meta);
  }

  void emit_json_doc(ordered_json doc, const Metadata& meta) const {
    doc["metadata"] = metadata_json(meta);
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!path.empty()) {
      file.open(path);
      if (!file) throw std::runtime_error("cannot open output file '" + path + "'");
      out = &file;
    }
    *out << doc.dump(2) << "\n";
  }
};

// ---------------------------------------------------------------------------
// shared option plumbing

struct GlobalOptions {
  OutputOptions output;
  std::string tissue_db_path;
  std::optional<std::uint64_t> seed;

  TissueDatabase load_db() const {
    std::string path = tissue_db_path;
    if (path.empty()) {
      if (const char* env = std::getenv("VIVOCHAN_TISSUE_DB")) path = env;
    }
    if (path.empty())
      throw ConfigError(
          "no tissue database: pass --tissue-db or set VIVOCHAN_TISSUE_DB");
    return TissueDatabase::load_file(path);
  }

  std::uint64_t seed_or_random() const {
    if (seed) return *seed;
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  }
};

struct Sweep {
  double start = 0.0, stop = 0.0;
  int count = 1;

  std::vector<double> linear() const {
    std::vector<double> xs;
    for (int i = 0; i < count; ++i)
      xs.push_back(count == 1 ? start
                              : start + (stop - start) * i / (count - 1));
    return xs;
  }
  std::vector<double> logspace() const {
    std::vector<double> xs;
    for (int i = 0; i < count; ++i)
      xs.push_back(count == 1
                       ? start
                       : start * std::pow(stop / start,
                                          static_cast<double>(i) / (count - 1)));
    return xs;
  }
};

// "start:stop:count" with inclusive endpoints, or a single value.
Sweep parse_sweep(const std::string& text) {
  Sweep sweep;
  const auto c1 = text.find(':');
  if (c1 == std::string::npos) {
    sweep.start = sweep.stop = std::stod(text);
    sweep.count = 1;
    return sweep;
  }
  const auto c2 = text.find(':', c1 + 1);
  if (c2 == std::string::npos)
    throw std::invalid_argument("sweep '" + text + "': expected start:stop:count");
  sweep.start = std::stod(text.substr(0, c1));
  sweep.stop = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
  sweep.count = std::stoi(text.substr(c2 + 1));
  if (sweep.count < 1)
    throw std::invalid_argument("sweep count must be at least 1");
  if (sweep.count == 1 && sweep.start != sweep.stop)
    throw std::invalid_argument("single-point sweep needs start == stop");
  return sweep;
}

std::string join_args(int argc, char** argv) {
  std::string joined;
  for (int i = 0; i < argc; ++i) {
    if (i) joined += ' ';
    joined += argv[i];
  }
  return joined;
}

// ---------------------------------------------------------------------------
// path-loss model construction shared by `pathloss` and `linkbudget`

struct ModelFlags {
  std::string model = "statA";
  std::string preset;  // region:NAME or side:NAME
  double pl0 = 0.0, slope = 0.0, sigma = 0.0, d0 = 10.0;
  double pl_d0 = 0.0, exponent = 0.0;
  double freq_hz = 0.0, wavelength_m = 0.0;
  double gain_tx = 1.0, gain_rx = 1.0, s11 = 0.0, s22 = 0.0;
  double atten = 0.0;
  double delta = 1.0, p_nf = 0.0, p_ff = 0.0, largest_dim = 0.0, aperture = 0.0;

  bool pl0_set = false, slope_set = false, sigma_set = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--model", model,
                    "statA|statB|fspl|fspl-rl|fspl-rl-abs|pmba-near|pmba-far")
        ->capture_default_str();
    cmd->add_option("--preset", preset,
                    "fitted parameter preset, region:NAME or side:NAME");
    cmd->add_option("--pl0", pl0, "statA intersection term PL0 [dB]")
        ->each([this](const std::string&) { pl0_set = true; });
    cmd->add_option("--slope", slope, "statA decay rate per depth ratio [dB]")
        ->each([this](const std::string&) { slope_set = true; });
    cmd->add_option("--sigma", sigma, "shadowing standard deviation [dB]")
        ->each([this](const std::string&) { sigma_set = true; });
    cmd->add_option("--d0", d0, "reference depth [mm]")->capture_default_str();
    cmd->add_option("--pl-d0", pl_d0, "statB path loss at d0 [dB]");
    cmd->add_option("--exponent", exponent, "statB path loss exponent n");
    cmd->add_option("--freq", freq_hz, "carrier frequency [Hz]");
    cmd->add_option("--wavelength", wavelength_m, "free-space wavelength [m]");
    cmd->add_option("--gain-tx", gain_tx, "transmit antenna gain, linear");
    cmd->add_option("--gain-rx", gain_rx, "receive antenna gain, linear");
    cmd->add_option("--s11", s11, "receiver reflection magnitude |S11|");
    cmd->add_option("--s22", s22, "transmitter reflection magnitude |S22|");
    cmd->add_option("--atten", atten, "tissue attenuation constant a [Np/m]");
    cmd->add_option("--delta", delta, "PMBA aperture ratio Ae/A");
    cmd->add_option("--p-nf", p_nf, "PMBA near-field loss [W]");
    cmd->add_option("--p-ff", p_ff, "PMBA far-field loss [W]");
    cmd->add_option("--largest-dim", largest_dim,
                    "PMBA largest antenna dimension [m]");
    cmd->add_option("--aperture", aperture, "PMBA effective aperture [m^2]");
  }

  double lambda() const {
    if (wavelength_m > 0.0) return wavelength_m;
    if (freq_hz > 0.0) return kSpeedOfLight / freq_hz;
    throw std::invalid_argument("model needs --freq or --wavelength");
  }

  FittedParameterSet lookup_preset() const {
    const auto colon = preset.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument(
          "preset must look like region:NAME or side:NAME");
    const std::string catalog = preset.substr(0, colon);
    const std::string label = preset.substr(colon + 1);
    if (catalog == "region")
      return builtin_parameters(PresetCatalog::BodyRegion, label);
    if (catalog == "side")
      return builtin_parameters(PresetCatalog::BodySide, label);
    throw std::invalid_argument("unknown preset catalog '" + catalog +
                                "' (use region: or side:)");
  }

  PathLossModel build() const {
    if (model == "statA") {
      if (!preset.empty()) {
        StatisticalA a = to_statistical_a(lookup_preset());
        if (sigma_set) a.sigma_db = sigma;
        return a;
      }
      if (!pl0_set || !slope_set)
        throw std::invalid_argument("statA needs --preset or --pl0/--slope");
      return StatisticalA{pl0, slope, d0, sigma};
    }
    if (model == "statB") return StatisticalB{pl_d0, exponent, d0, sigma};
    if (model == "fspl") return Fspl{{gain_tx, 0.0}, {gain_rx, 0.0}, lambda()};
    if (model == "fspl-rl")
      return FsplWithRl{{gain_tx, s22}, {gain_rx, s11}, lambda()};
    if (model == "fspl-rl-abs")
      return FsplRlAbsorption{{gain_tx, s22}, {gain_rx, s11}, lambda(), atten};
    if (model == "pmba-near")
      return PmbaNearField{delta, p_nf, largest_dim, aperture};
    if (model == "pmba-far")
      return PmbaFarField{p_nf, p_ff, lambda(), gain_tx, gain_rx};
    throw std::invalid_argument("unknown model '" + model + "'");
  }

  static bool is_statistical(const PathLossModel& m) {
    return std::holds_alternative<StatisticalA>(m) ||
           std::holds_alternative<StatisticalB>(m);
  }
};

PathLossModel model_from_json(const ordered_json& spec) {
  if (!spec.is_object() || !spec.contains("variant"))
    throw ParseError("model spec: expected {variant, ...}");
  const std::string variant = spec.at("variant").get<std::string>();
  auto num = [&](const char* key,
                 std::optional<double> fallback = std::nullopt) -> double {
    if (!spec.contains(key)) {
      if (fallback) return *fallback;
      throw ParseError(std::string("model spec: missing field '") + key + "'");
    }
    return spec.at(key).get<double>();
  };
  auto lambda = [&]() -> double {
    if (spec.contains("wavelength_m")) return num("wavelength_m");
    if (spec.contains("freq_hz")) return kSpeedOfLight / num("freq_hz");
    throw ParseError("model spec: needs wavelength_m or freq_hz");
  };
  if (variant == "statA") {
    if (spec.contains("preset")) {
      ModelFlags flags;
      flags.preset = spec.at("preset").get<std::string>();
      StatisticalA a = to_statistical_a(flags.lookup_preset());
      if (spec.contains("sigma_db")) a.sigma_db = num("sigma_db");
      return a;
    }
    return StatisticalA{num("pl0_db"), num("slope"), num("d0_mm", 10.0),
                        num("sigma_db", 0.0)};
  }
  if (variant == "statB")
    return StatisticalB{num("pl_d0_db"), num("exponent"), num("d0_mm", 10.0),
                        num("sigma_db", 0.0)};
  if (variant == "fspl")
    return Fspl{{num("gain_tx", 1.0), 0.0}, {num("gain_rx", 1.0), 0.0}, lambda()};
  if (variant == "fspl-rl")
    return FsplWithRl{{num("gain_tx", 1.0), num("s22", 0.0)},
                      {num("gain_rx", 1.0), num("s11", 0.0)},
                      lambda()};
  if (variant == "fspl-rl-abs")
    return FsplRlAbsorption{{num("gain_tx", 1.0), num("s22", 0.0)},
                            {num("gain_rx", 1.0), num("s11", 0.0)},
                            lambda(),
                            num("atten_np_per_m", 0.0)};
  if (variant == "pmba-near")
    return PmbaNearField{num("delta", 1.0), num("p_nf_w", 0.0),
                         num("largest_dim_m"), num("aperture_m2")};
  if (variant == "pmba-far")
    return PmbaFarField{num("p_nf_w", 0.0), num("p_ff_w", 0.0), lambda(),
                        num("gain_tx", 1.0), num("gain_rx", 1.0)};
  throw ParseError("model spec: unknown variant '" + variant + "'");
}

// ---------------------------------------------------------------------------
// subcommands

int cmd_tissue(const GlobalOptions& global, const Metadata& meta,
               const std::string& name, double from, double to, int points) {
  if (from <= 0.0 || to <= 0.0 || from > to)
    throw std::invalid_argument("sweep needs 0 < from <= to");
  if (points < 1) throw std::invalid_argument("--points must be >= 1");
  if (points == 1 && from != to)
    throw std::invalid_argument("--points 1 needs from == to");
  const auto db = global.load_db();
  const auto& spec = db.find(name);
  Sweep sweep{from, to, points};

  Table table;
  table.columns = {"freq_hz",  "eps_real",    "eps_imag",    "sigma_eff",
                   "loss_tan", "pen_depth_m", "wavelength_m"};
  table.extras.emplace_back("tissue", name);
  for (double f : sweep.logspace()) {
    const auto s = evaluate_permittivity(spec, f);
    table.add_row({f, s.eps_real, s.eps_complex.imag(), s.conductivity_effective,
                   s.loss_tangent, s.penetration_depth_m, s.wavelength_m});
  }
  global.output.emit(table, meta);
  return 0;
}

int cmd_pathloss(const GlobalOptions& global, Metadata meta,
                 const ModelFlags& flags, const std::string& depth_expr,
                 const std::string& dist_expr, int samples) {
  const PathLossModel model = flags.build();
  const bool statistical = ModelFlags::is_statistical(model);
  if (depth_expr.empty() == dist_expr.empty())
    throw std::invalid_argument("pass exactly one of --depth or --dist");
  if (!statistical && !depth_expr.empty())
    throw std::invalid_argument("analytical models sweep --dist, not --depth");
  if (statistical && !dist_expr.empty())
    throw std::invalid_argument("statistical models sweep --depth, not --dist");
  if (samples < 0) throw std::invalid_argument("--samples must be >= 0");
  if (samples > 0 && !statistical)
    throw std::invalid_argument("--samples applies to the statistical models");

  std::optional<SeededRng> rng;
  if (samples > 0) {
    const std::uint64_t seed = global.seed_or_random();
    meta.seed = seed;
    rng.emplace(seed);
  }

  const Sweep sweep = parse_sweep(statistical ? depth_expr : dist_expr);
  Table table;
  table.columns = {statistical ? "depth_mm" : "dist_m", "mean_pl_db"};
  if (samples > 0)
    for (const char* c :
         {"sample_mean_db", "sample_std_db", "q05_db", "q50_db", "q95_db"})
      table.columns.push_back(c);

  for (double x : sweep.linear()) {
    std::vector<Cell> row;
    row.emplace_back(x);
    if (statistical) {
      row.emplace_back(mean_path_loss_db(model, x));
    } else {
      const double pr = received_power(model, 1.0, x);
      row.emplace_back(-linear_to_db(pr));
    }
    if (samples > 0) {
      std::vector<double> draws(static_cast<std::size_t>(samples));
      double sum = 0.0, sum_sq = 0.0;
      for (auto& d : draws) {
        d = sample_path_loss_db(model, x, *rng);
        sum += d;
        sum_sq += d * d;
      }
      const double mean = sum / samples;
      const double var = std::max(0.0, sum_sq / samples - mean * mean);
      std::sort(draws.begin(), draws.end());
      auto quantile = [&](double q) {
        const double pos = q * (draws.size() - 1);
        const std::size_t lo = static_cast<std::size_t>(pos);
        const std::size_t hi = std::min(lo + 1, draws.size() - 1);
        return draws[lo] + (draws[hi] - draws[lo]) * (pos - lo);
      };
      row.emplace_back(mean);
      row.emplace_back(std::sqrt(var));
      row.emplace_back(quantile(0.05));
      row.emplace_back(quantile(0.50));
      row.emplace_back(quantile(0.95));
    }
    table.add_row(std::move(row));
  }
  global.output.emit(table, meta);
  return 0;
}

int cmd_channel(const GlobalOptions& global, Metadata meta, double mean_pl,
                double sigma, const PdpShape& shape, double jitter,
                bool no_renorm) {
  const std::uint64_t seed = global.seed_or_random();
  meta.seed = seed;
  RealizeOptions opt;
  opt.tap_jitter_db = jitter;
  opt.renormalize = !no_renorm;
  const auto real = realize_channel(mean_pl, sigma, shape, seed, opt);

  if (global.output.format == "json") {
    ordered_json doc;
    doc["seed"] = real.seed;
    doc["total_path_loss_db"] = json_num(real.total_path_loss_db);
    doc["shadowing_db"] = json_num(real.shadowing_db);
    ordered_json taps = ordered_json::array();
    for (const auto& tap : real.taps)
      taps.push_back({{"delay_ns", json_num(tap.delay_ns)},
                      {"gain_db", json_num(tap.gain_db)}});
    doc["taps"] = taps;
    global.output.emit_json_doc(std::move(doc), meta);
    return 0;
  }
  Table table;
  table.columns = {"delay_ns", "gain_db"};
  table.extras.emplace_back("total_path_loss_db",
                            json_num(real.total_path_loss_db));
  table.extras.emplace_back("shadowing_db", json_num(real.shadowing_db));
  for (const auto& tap : real.taps) table.add_row({tap.delay_ns, tap.gain_db});
  global.output.emit(table, meta);
  return 0;
}

int cmd_stack(const GlobalOptions& global, const Metadata& meta,
              const std::string& stack_path, int samples_per_layer,
              bool profile) {
  const auto db = global.load_db();
  std::ifstream in(stack_path);
  if (!in) throw ParseError("cannot open stack description '" + stack_path + "'");
  const LayerStack stack = load_stack_json(in, db);
  const auto sol = solve_stack(stack, samples_per_layer);

  if (global.output.format == "json") {
    ordered_json doc;
    doc["frequency_hz"] = json_num(sol.frequency_hz);
    doc["input_reflection"] = {{"re", json_num(sol.input_reflection.real())},
                               {"im", json_num(sol.input_reflection.imag())},
                               {"mag", json_num(std::abs(sol.input_reflection))}};
    doc["power_budget"] = {{"incident", json_num(sol.budget.incident)},
                           {"reflected", json_num(sol.budget.reflected)},
                           {"transmitted", json_num(sol.budget.transmitted)},
                           {"absorbed", json_num(sol.budget.absorbed)}};
    ordered_json interfaces = ordered_json::array();
    for (std::size_t i = 0; i < sol.per_interface.size(); ++i) {
      const auto& rec = sol.per_interface[i];
      interfaces.push_back(
          {{"index", i},
           {"gamma_re", json_num(rec.gamma.real())},
           {"gamma_im", json_num(rec.gamma.imag())},
           {"gamma_mag", json_num(std::abs(rec.gamma))},
           {"power_transmission_factor",
            json_num(rec.power_transmission_factor)}});
    }
    doc["interfaces"] = interfaces;
    ordered_json layers = ordered_json::array();
    for (std::size_t i = 0; i < sol.waves.size(); ++i) {
      const auto& wv = sol.waves[i];
      layers.push_back({{"index", i},
                        {"tissue", wv.name},
                        {"semi_infinite", wv.semi_infinite},
                        {"extent_mm", json_num(wv.extent_m * 1e3)},
                        {"attenuation_db", json_num(sol.layer_attenuation_db[i])},
                        {"swr", json_num(standing_wave_ratio(sol, i))}});
    }
    doc["layers"] = layers;
    if (profile) {
      ordered_json fp = ordered_json::array();
      for (const auto& s : sol.field_profile)
        fp.push_back({{"z_m", json_num(s.z_m)}, {"e_mag", json_num(s.magnitude)}});
      doc["field_profile"] = fp;
    }
    global.output.emit_json_doc(std::move(doc), meta);
    return 0;
  }

  Table table;
  table.extras.emplace_back("input_reflection_mag",
                            json_num(std::abs(sol.input_reflection)));
  table.extras.emplace_back("reflected", json_num(sol.budget.reflected));
  table.extras.emplace_back("transmitted", json_num(sol.budget.transmitted));
  table.extras.emplace_back("absorbed", json_num(sol.budget.absorbed));
  if (profile) {
    table.columns = {"z_m", "e_mag"};
    for (const auto& s : sol.field_profile) table.add_row({s.z_m, s.magnitude});
  } else {
    table.columns = {"interface", "gamma_mag", "power_transmission_factor"};
    for (std::size_t i = 0; i < sol.per_interface.size(); ++i)
      table.add_row({static_cast<double>(i),
                     std::abs(sol.per_interface[i].gamma),
                     sol.per_interface[i].power_transmission_factor});
  }
  global.output.emit(table, meta);
  return 0;
}

int cmd_sar(const GlobalOptions& global, const Metadata& meta,
            const std::string& stack_path, double incident, double conductivity,
            double efield, double rho, std::optional<double> limit) {
  const ExposureLimit exposure_limit =
      limit ? ExposureLimit{*limit, 1.0, "user"} : fcc_limit();

  if (!stack_path.empty()) {
    const auto db = global.load_db();
    std::ifstream in(stack_path);
    if (!in) throw ParseError("cannot open stack description '" + stack_path + "'");
    const auto sol = solve_stack(load_stack_json(in, db));
    const auto profile = sar_profile(sol, incident);
    double peak = 0.0;
    for (const auto& s : profile) peak = std::max(peak, s.sar_w_per_kg);
    const auto verdict = check_exposure(peak, exposure_limit);

    Table table;
    table.columns = {"z_m", "layer", "tissue", "sar_w_per_kg"};
    table.extras.emplace_back("incident_w_per_m2", json_num(incident));
    table.extras.emplace_back("peak_sar_w_per_kg", json_num(peak));
    table.extras.emplace_back("limit_w_per_kg",
                              json_num(exposure_limit.limit_w_per_kg));
    table.extras.emplace_back("compliant", verdict.compliant);
    table.extras.emplace_back(
        "margin_db", verdict.margin_db ? json_num(*verdict.margin_db) : nullptr);
    for (const auto& s : profile)
      table.add_row({s.z_m, static_cast<double>(s.layer_index),
                     sol.waves[s.layer_index].name, s.sar_w_per_kg});
    global.output.emit(table, meta);
    return 0;
  }

  const double sar = compute_sar({conductivity, efield, rho});
  const auto verdict = check_exposure(sar, exposure_limit);
  Table table;
  table.columns = {"conductivity_s_per_m", "e_field_rms_v_per_m",
                   "mass_density_kg_per_m3", "sar_w_per_kg", "compliant",
                   "margin_db"};
  table.add_row({conductivity, efield, rho, sar,
                 std::string(verdict.compliant ? "true" : "false"),
                 verdict.margin_db ? Cell{*verdict.margin_db} : Cell{"inf"}});
  global.output.emit(table, meta);
  return 0;
}

int cmd_bands(const GlobalOptions& global, const Metadata& meta, double classify,
              double check_eirp_dbm, const std::string& band_id, double bw_hz,
              bool check_requested) {
  if (check_requested) {
    if (band_id.empty()) throw std::invalid_argument("--check-eirp needs --band");
    const auto& band = find_band(band_id);
    const auto verdict =
        check_eirp(check_eirp_dbm, band,
                   bw_hz > 0.0 ? std::optional<double>(bw_hz) : std::nullopt);
    Table table;
    table.columns = {"band", "eirp_dbm", "status", "margin_db"};
    const char* status = verdict.status == EirpStatus::Compliant ? "compliant"
                         : verdict.status == EirpStatus::Exceeds
                             ? "exceeds"
                             : "not-regulated";
    table.add_row({band.id, check_eirp_dbm, std::string(status),
                   verdict.margin_db ? Cell{*verdict.margin_db} : Cell{""}});
    if (!verdict.warning.empty())
      table.extras.emplace_back("warning", verdict.warning);
    global.output.emit(table, meta);
    return 0;
  }

  const auto rows = classify > 0.0 ? classify_frequency(classify) : band_catalog();
  Table table;
  table.columns = {"id",            "method",     "f_low_hz", "f_high_hz",
                   "channel_bw_hz", "eirp_limit", "eirp_unit"};
  if (classify > 0.0) table.extras.emplace_back("classify_hz", json_num(classify));
  for (const auto& band : rows) {
    table.add_row({band.id, std::string(to_string(band.method)), band.f_low_hz,
                   band.f_high_hz, band.channel_bw_hz,
                   band.eirp_limit ? Cell{band.eirp_limit->value} : Cell{""},
                   band.eirp_limit ? Cell{band.eirp_limit->unit} : Cell{""}});
  }
  global.output.emit(table, meta);
  return 0;
}

int cmd_validate(const GlobalOptions& global, const Metadata& meta,
                 const ModelFlags& flags, const std::string& measurements) {
  const PathLossModel model = flags.build();
  std::vector<PathLossMeasurement> data;
  if (measurements == "builtin:table7.5" || measurements == "builtin") {
    data = cadaver_measurements();
  } else {
    std::ifstream in(measurements);
    if (!in)
      throw ParseError("cannot open measurement file '" + measurements + "'");
    // JSON array or CSV label,depth_mm,pl_db
    int c = in.peek();
    while (c == ' ' || c == '\n' || c == '\r' || c == '\t') {
      in.get();
      c = in.peek();
    }
    if (c == '[') {
      ordered_json doc;
      try {
        doc = ordered_json::parse(in);
      } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("measurement file: ") + e.what());
      }
      for (const auto& item : doc)
        data.push_back(PathLossMeasurement{item.at("label").get<std::string>(),
                                           item.at("depth_mm").get<double>(),
                                           item.at("pl_db").get<double>()});
    } else {
      std::string line;
      int line_no = 0;
      while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        if (line.back() == '\r') line.pop_back();
        if (line.rfind("label", 0) == 0) continue;  // header
        std::istringstream ls(line);
        std::string label, depth, pl;
        if (!std::getline(ls, label, ',') || !std::getline(ls, depth, ',') ||
            !std::getline(ls, pl)) {
          std::ostringstream msg;
          msg << "measurement file line " << line_no
              << ": expected label,depth_mm,pl_db";
          throw ParseError(msg.str());
        }
        data.push_back(PathLossMeasurement{label, std::stod(depth), std::stod(pl)});
      }
    }
  }

  const auto report = validate_against_measurements(model, data);
  Table table;
  table.columns = {"label",        "depth_mm",    "measured_db",
                   "predicted_db", "residual_db", "error"};
  table.extras.emplace_back("mean_abs_residual_db",
                            json_num(report.mean_abs_residual_db));
  table.extras.emplace_back("max_abs_residual_db",
                            json_num(report.max_abs_residual_db));
  table.extras.emplace_back("valid_rows",
                            static_cast<std::uint64_t>(report.valid_rows));
  for (const auto& row : report.rows) {
    if (row.error.empty())
      table.add_row({row.label, row.depth_mm, row.measured_db, row.predicted_db,
                     row.residual_db, std::string()});
    else
      table.add_row({row.label, row.depth_mm, row.measured_db, std::string(),
                     std::string(), row.error});
  }
  global.output.emit(table, meta);
  return 0;
}

int cmd_linkbudget(const GlobalOptions& global, const Metadata& meta,
                   const std::string& scenario_path, const ModelFlags& flags,
                   double tx_dbm, double sensitivity, double dist, double depth,
                   const std::string& band_id, double bw_hz,
                   std::optional<double> sar_w_per_kg) {
  PathLossModel model = StatisticalA{};
  double range = 0.0;
  double tx = tx_dbm, sens = sensitivity;
  LinkBudgetOptions opt;

  if (!scenario_path.empty()) {
    std::ifstream in(scenario_path);
    if (!in) throw ParseError("cannot open scenario '" + scenario_path + "'");
    ordered_json doc;
    try {
      doc = ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(std::string("scenario: ") + e.what());
    }
    tx = doc.at("tx_power_dbm").get<double>();
    sens = doc.at("sensitivity_dbm").get<double>();
    model = model_from_json(doc.at("model"));
    const bool statistical = ModelFlags::is_statistical(model);
    if (doc.contains("distance_mm")) {
      range = doc.at("distance_mm").get<double>();
      if (!statistical) range *= 1e-3;  // analytical models take metres
    } else if (doc.contains("distance_m")) {
      range = doc.at("distance_m").get<double>();
      if (statistical) range *= 1e3;  // statistical models take depth in mm
    } else {
      throw ParseError("scenario: needs distance_mm or distance_m");
    }
    if (doc.contains("band")) opt.band_id = doc.at("band").get<std::string>();
    if (doc.contains("bandwidth_hz"))
      opt.bandwidth_hz = doc.at("bandwidth_hz").get<double>();
    if (doc.contains("tx_gain_db"))
      opt.tx_gain_db = doc.at("tx_gain_db").get<double>();
    if (doc.contains("rx_gain_db"))
      opt.rx_gain_db = doc.at("rx_gain_db").get<double>();
    if (doc.contains("sar_w_per_kg"))
      opt.sar_w_per_kg = doc.at("sar_w_per_kg").get<double>();
  } else {
    model = flags.build();
    const bool statistical = ModelFlags::is_statistical(model);
    if (statistical) {
      if (depth <= 0.0)
        throw std::invalid_argument("statistical model needs --depth [mm]");
      range = depth;
    } else {
      if (dist <= 0.0)
        throw std::invalid_argument("analytical model needs --dist [m]");
      range = dist;
    }
    if (!band_id.empty()) opt.band_id = band_id;
    if (bw_hz > 0.0) opt.bandwidth_hz = bw_hz;
  }
  if (sar_w_per_kg) opt.sar_w_per_kg = sar_w_per_kg;

  const auto report = link_budget(tx, model, range, sens, opt);

  if (global.output.format == "json") {
    ordered_json doc;
    doc["tx_power_dbm"] = json_num(report.tx_power_dbm);
    doc["eirp_dbm"] = json_num(report.eirp_dbm);
    doc["path_loss_db"] = json_num(report.path_loss_db);
    doc["rx_power_dbm"] = json_num(report.rx_power_dbm);
    doc["sensitivity_dbm"] = json_num(report.sensitivity_dbm);
    doc["link_margin_db"] = json_num(report.link_margin_db);
    doc["gains_model_internal"] = report.gains_model_internal;
    doc["feasible"] = report.feasible;
    if (report.band_compliance) {
      const auto& v = *report.band_compliance;
      ordered_json b;
      b["band"] = *report.band_id;
      b["status"] = v.status == EirpStatus::Compliant   ? "compliant"
                    : v.status == EirpStatus::Exceeds   ? "exceeds"
                                                        : "not-regulated";
      if (v.margin_db) b["margin_db"] = json_num(*v.margin_db);
      if (!v.warning.empty()) b["warning"] = v.warning;
      doc["band_compliance"] = b;
    }
    if (report.sar_compliance) {
      const auto& v = *report.sar_compliance;
      doc["sar_compliance"] = {
          {"compliant", v.compliant},
          {"margin_db", v.margin_db ? json_num(*v.margin_db) : nullptr}};
    }
    global.output.emit_json_doc(std::move(doc), meta);
    return 0;
  }
  Table table;
  table.columns = {"tx_power_dbm", "eirp_dbm",        "path_loss_db",
                   "rx_power_dbm", "sensitivity_dbm", "link_margin_db",
                   "feasible"};
  table.add_row({report.tx_power_dbm, report.eirp_dbm, report.path_loss_db,
                 report.rx_power_dbm, report.sensitivity_dbm,
                 report.link_margin_db,
                 std::string(report.feasible ? "true" : "false")});
  global.output.emit(table, meta);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"in-vivo wireless channel modeling toolkit"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  GlobalOptions global;
  Metadata meta;
  meta.command_line = join_args(argc, argv);

  app.add_option("--format", global.output.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--output", global.output.path,
                 "write to file instead of stdout");
  app.add_option("--tissue-db", global.tissue_db_path,
                 "tissue database path (default: $VIVOCHAN_TISSUE_DB)");
  std::uint64_t seed_value = 0;
  auto* seed_opt = app.add_option("--seed", seed_value, "RNG seed");

  // tissue
  auto* tissue = app.add_subcommand("tissue", "dielectric sweep for one tissue");
  std::string tissue_name;
  double t_from = 0.0, t_to = 0.0;
  int t_points = 0;
  tissue->add_option("--name", tissue_name)->required();
  tissue->add_option("--from", t_from, "sweep start [Hz]")->required();
  tissue->add_option("--to", t_to, "sweep stop [Hz]")->required();
  tissue->add_option("--points", t_points, "sweep point count")->required();

  // pathloss
  auto* pathloss = app.add_subcommand("pathloss", "evaluate a path-loss model");
  ModelFlags pl_flags;
  pl_flags.attach(pathloss);
  std::string pl_depth, pl_dist;
  int pl_samples = 0;
  pathloss->add_option("--depth", pl_depth, "depth sweep start:stop:count [mm]");
  pathloss->add_option("--dist", pl_dist, "distance sweep start:stop:count [m]");
  pathloss->add_option("--samples", pl_samples,
                       "shadowing draws per sweep point (statistical models)");

  // channel
  auto* channel = app.add_subcommand("channel", "stochastic channel realization");
  double ch_mean = 0.0, ch_sigma = 0.0, ch_jitter = 1.0;
  PdpShape ch_shape;
  bool ch_no_renorm = false;
  channel->add_option("--mean-pl", ch_mean, "mean path loss [dB]")->required();
  channel->add_option("--sigma", ch_sigma, "shadowing std [dB]")
      ->capture_default_str();
  channel->add_option("--p0", ch_shape.first_tap_gain_db, "first tap gain [dB]");
  channel->add_option("--decay-depth", ch_shape.decay_depth_db,
                      "template decay depth [dB]")
      ->capture_default_str();
  channel->add_option("--time-const", ch_shape.time_constant_ns,
                      "template time constant [ns]")
      ->capture_default_str();
  channel->add_option("--max-delay", ch_shape.max_excess_delay_ns,
                      "max excess delay [ns]")
      ->capture_default_str();
  channel->add_option("--spacing", ch_shape.tap_spacing_ns, "tap spacing [ns]")
      ->capture_default_str();
  channel->add_option("--jitter", ch_jitter, "per-tap gain jitter std [dB]")
      ->capture_default_str();
  channel->add_flag("--no-renorm", ch_no_renorm,
                    "skip post-jitter renormalization");

  // stack
  auto* stack = app.add_subcommand("stack", "solve a layered tissue stack");
  std::string stack_path;
  int stack_samples = 64;
  bool stack_profile = false;
  stack->add_option("--stack", stack_path, "stack description JSON")->required();
  stack->add_option("--samples-per-layer", stack_samples)->capture_default_str();
  stack->add_flag("--profile", stack_profile, "emit the |E(z)| profile");

  // sar
  auto* sar =
      app.add_subcommand("sar", "SAR from a stack profile or a point query");
  std::string sar_stack;
  double sar_incident = 1.0, sar_sigma = 0.0, sar_efield = 0.0, sar_rho = 0.0;
  double sar_limit_val = 0.0;
  sar->add_option("--stack", sar_stack, "stack description JSON (profile mode)");
  sar->add_option("--incident", sar_incident,
                  "incident power density [W/m^2] (profile mode)")
      ->capture_default_str();
  sar->add_option("--conductivity", sar_sigma, "sigma [S/m] (point mode)");
  sar->add_option("--efield", sar_efield, "|E| rms [V/m] (point mode)");
  sar->add_option("--rho", sar_rho, "mass density [kg/m^3] (point mode)");
  auto* sar_limit_opt =
      sar->add_option("--limit", sar_limit_val, "override the 1.6 W/kg limit");

  // bands
  auto* bands = app.add_subcommand("bands", "IEEE 802.15.6 band catalog");
  double bands_classify = 0.0, bands_eirp = 0.0, bands_bw = 0.0;
  std::string bands_band;
  bands->add_option("--classify", bands_classify, "list bands containing f [Hz]");
  auto* check_opt =
      bands->add_option("--check-eirp", bands_eirp, "EIRP to check [dBm]");
  bands->add_option("--band", bands_band, "band id for --check-eirp");
  bands->add_option("--bw", bands_bw, "emission bandwidth [Hz]");

  // validate
  auto* validate =
      app.add_subcommand("validate", "compare a model against measurements");
  ModelFlags val_flags;
  val_flags.attach(validate);
  std::string val_measurements = "builtin:table7.5";
  validate->add_option("--measurements", val_measurements,
                       "builtin:table7.5 or a CSV/JSON file")
      ->capture_default_str();

  // linkbudget
  auto* linkbudget = app.add_subcommand("linkbudget", "end-to-end link budget");
  ModelFlags lb_flags;
  lb_flags.attach(linkbudget);
  std::string lb_scenario, lb_band;
  double lb_tx = 0.0, lb_sens = -90.0, lb_dist = 0.0, lb_depth = 0.0, lb_bw = 0.0;
  linkbudget->add_option("--scenario", lb_scenario, "scenario JSON file");
  linkbudget->add_option("--tx-dbm", lb_tx, "transmit power [dBm]")
      ->capture_default_str();
  linkbudget->add_option("--sensitivity", lb_sens, "receiver sensitivity [dBm]")
      ->capture_default_str();
  linkbudget->add_option("--dist", lb_dist, "link distance [m] (analytical)");
  linkbudget->add_option("--depth", lb_depth, "implant depth [mm] (statistical)");
  linkbudget->add_option("--band", lb_band, "band id for the EIRP check");
  linkbudget->add_option("--bw", lb_bw, "emission bandwidth [Hz]");
  double lb_sar = 0.0;
  auto* lb_sar_opt =
      linkbudget->add_option("--sar", lb_sar, "point SAR to check [W/kg]");

  // dump-datasets
  auto* dump =
      app.add_subcommand("dump-datasets", "export the embedded datasets as JSON");

  // global flags may follow the subcommand
  for (auto* sub : {tissue, pathloss, channel, stack, sar, bands, validate,
                    linkbudget, dump})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (seed_opt->count() > 0) global.seed = seed_value;

  try {
    if (tissue->parsed())
      return cmd_tissue(global, meta, tissue_name, t_from, t_to, t_points);
    if (pathloss->parsed())
      return cmd_pathloss(global, meta, pl_flags, pl_depth, pl_dist, pl_samples);
    if (channel->parsed())
      return cmd_channel(global, meta, ch_mean, ch_sigma, ch_shape, ch_jitter,
                         ch_no_renorm);
    if (stack->parsed())
      return cmd_stack(global, meta, stack_path, stack_samples, stack_profile);
    if (sar->parsed())
      return cmd_sar(global, meta, sar_stack, sar_incident, sar_sigma,
                     sar_efield, sar_rho,
                     sar_limit_opt->count() ? std::optional<double>(sar_limit_val)
                                            : std::nullopt);
    if (bands->parsed())
      return cmd_bands(global, meta, bands_classify, bands_eirp, bands_band,
                       bands_bw, check_opt->count() > 0);
    if (validate->parsed())
      return cmd_validate(global, meta, val_flags, val_measurements);
    if (linkbudget->parsed())
      return cmd_linkbudget(global, meta, lb_scenario, lb_flags, lb_tx, lb_sens,
                            lb_dist, lb_depth, lb_band, lb_bw,
                            lb_sar_opt->count() ? std::optional<double>(lb_sar)
                                                : std::nullopt);
    if (dump->parsed()) {
      ordered_json doc = ordered_json::parse(dump_datasets_json());
      global.output.emit_json_doc(std::move(doc), meta);
      return 0;
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const LookupError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
