#include "vivochan/pathloss.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "vivochan/constants.hpp"
#include "vivochan/errors.hpp"

namespace vivochan {

namespace {

void check_port(const AntennaPort& port, const char* which) {
  if (port.gain_linear <= 0.0)
    throw std::invalid_argument(std::string(which) + " gain must be positive");
  if (port.reflection_mag < 0.0 || port.reflection_mag > 1.0)
    throw std::invalid_argument(std::string(which) +
                                " reflection magnitude must lie in [0, 1]");
}

double friis_factor(double wavelength_m, double distance_m) {
  if (wavelength_m <= 0.0)
    throw std::invalid_argument("wavelength must be positive");
  if (distance_m <= 0.0)
    throw std::domain_error("distance must be positive for far-field models");
  const double ratio = wavelength_m / (4.0 * kPi * distance_m);
  return ratio * ratio;
}

double return_loss_factor(const AntennaPort& port) {
  return 1.0 - port.reflection_mag * port.reflection_mag;
}

// Canonical slug: lower case, punctuation runs collapsed to '-'.
std::string slug(std::string_view text) {
  std::string out;
  bool pending_sep = false;
  for (unsigned char c : text) {
    if (std::isalnum(c)) {
      if (pending_sep && !out.empty()) out.push_back('-');
      pending_sep = false;
      out.push_back(static_cast<char>(std::tolower(c)));
    } else {
      pending_sep = true;
    }
  }
  return out;
}

}  // namespace

double received_power(const PathLossModel& model, double tx_power_w, double range) {
  if (tx_power_w < 0.0)
    throw std::invalid_argument("tx power must be non-negative");
  return std::visit(
      [&](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Fspl>) {
          check_port(m.tx, "tx");
          check_port(m.rx, "rx");
          return tx_power_w * m.tx.gain_linear * m.rx.gain_linear *
                 friis_factor(m.wavelength_m, range);
        } else if constexpr (std::is_same_v<T, FsplWithRl>) {
          check_port(m.tx, "tx");
          check_port(m.rx, "rx");
          return tx_power_w * m.tx.gain_linear * return_loss_factor(m.tx) *
                 m.rx.gain_linear * return_loss_factor(m.rx) *
                 friis_factor(m.wavelength_m, range);
        } else if constexpr (std::is_same_v<T, FsplRlAbsorption>) {
          check_port(m.tx, "tx");
          check_port(m.rx, "rx");
          if (m.attenuation_np_per_m < 0.0)
            throw std::invalid_argument("attenuation constant must be >= 0");
          const double two_way = std::exp(-2.0 * m.attenuation_np_per_m * range);
          return tx_power_w * m.tx.gain_linear * return_loss_factor(m.tx) *
                 m.rx.gain_linear * return_loss_factor(m.rx) *
                 friis_factor(m.wavelength_m, range) * two_way;
        } else if constexpr (std::is_same_v<T, PmbaNearField>) {
          if (m.delta <= 0.0 || m.delta > 1.0)
            throw std::invalid_argument("delta must lie in (0, 1]");
          if (m.largest_dim_m <= 0.0 || m.effective_aperture_m2 <= 0.0)
            throw std::invalid_argument("antenna dimensions must be positive");
          if (m.p_nf_w < 0.0)
            throw std::invalid_argument("near-field loss must be >= 0");
          if (tx_power_w <= m.p_nf_w)
            throw std::domain_error("near-field loss exceeds transmit power");
          return 16.0 * m.delta * (tx_power_w - m.p_nf_w) *
                 m.effective_aperture_m2 / (kPi * m.largest_dim_m * m.largest_dim_m);
        } else if constexpr (std::is_same_v<T, PmbaFarField>) {
          if (m.p_nf_w < 0.0 || m.p_ff_w < 0.0)
            throw std::invalid_argument("field losses must be >= 0");
          if (m.wavelength_m <= 0.0)
            throw std::invalid_argument("wavelength must be positive");
          if (m.tx_gain <= 0.0 || m.rx_gain <= 0.0)
            throw std::invalid_argument("gains must be positive");
          if (range <= 0.0)
            throw std::domain_error("distance must be positive for far-field models");
          if (tx_power_w <= m.p_nf_w + m.p_ff_w)
            throw std::domain_error("near-field loss exceeds transmit power");
          return (tx_power_w - m.p_nf_w - m.p_ff_w) * m.wavelength_m *
                 m.wavelength_m * m.tx_gain * m.rx_gain /
                 (4.0 * kPi * range * range);
        } else {
          // statistical variants: deterministic mean, range is depth in mm
          return tx_power_w * std::pow(10.0, -mean_path_loss_db(m, range) / 10.0);
        }
      },
      model);
}

namespace {

void check_statistical(double d0_mm, double sigma_db, double depth_mm) {
  if (d0_mm <= 0.0) throw std::invalid_argument("d0 must be positive");
  if (sigma_db < 0.0) throw std::invalid_argument("sigma must be >= 0");
  if (depth_mm < d0_mm) {
    std::ostringstream msg;
    msg << "depth " << depth_mm << " mm below reference depth " << d0_mm << " mm";
    throw std::domain_error(msg.str());
  }
}

}  // namespace

double mean_path_loss_db(const StatisticalA& model, double depth_mm) {
  check_statistical(model.d0_mm, model.sigma_db, depth_mm);
  return model.pl0_db + model.slope_db * (depth_mm / model.d0_mm);
}

double mean_path_loss_db(const StatisticalB& model, double depth_mm) {
  check_statistical(model.d0_mm, model.sigma_db, depth_mm);
  return model.pl_d0_db + 10.0 * model.exponent * std::log10(depth_mm / model.d0_mm);
}

double mean_path_loss_db(const PathLossModel& model, double depth_mm) {
  if (const auto* a = std::get_if<StatisticalA>(&model))
    return mean_path_loss_db(*a, depth_mm);
  if (const auto* b = std::get_if<StatisticalB>(&model))
    return mean_path_loss_db(*b, depth_mm);
  throw std::invalid_argument("mean_path_loss_db is defined for the statistical models");
}

double sample_path_loss_db(const StatisticalA& model, double depth_mm, SeededRng& rng) {
  return mean_path_loss_db(model, depth_mm) + model.sigma_db * rng.gaussian();
}

double sample_path_loss_db(const StatisticalB& model, double depth_mm, SeededRng& rng) {
  return mean_path_loss_db(model, depth_mm) + model.sigma_db * rng.gaussian();
}

double sample_path_loss_db(const PathLossModel& model, double depth_mm, SeededRng& rng) {
  if (const auto* a = std::get_if<StatisticalA>(&model))
    return sample_path_loss_db(*a, depth_mm, rng);
  if (const auto* b = std::get_if<StatisticalB>(&model))
    return sample_path_loss_db(*b, depth_mm, rng);
  throw std::invalid_argument("sample_path_loss_db is defined for the statistical models");
}

const std::vector<FittedParameterSet>& body_region_parameters() {
  static const std::vector<FittedParameterSet> rows = {
      {"Above heart", 24.75, 2.30, 3.73},
      {"Heart", 22.70, 1.96, 2.38},
      {"Stomach-kidneys", 22.56, 2.55, 1.79},
      {"Intestine", 24.23, 2.31, 3.47},
      {"Overall torso area", 23.56, 2.28, 3.38},
  };
  return rows;
}

const std::vector<FittedParameterSet>& body_side_parameters() {
  static const std::vector<FittedParameterSet> rows = {
      {"Anterior", 23.83, 2.46, 3.51},
      {"Posterior", 23.76, 2.21, 1.92},
      {"Left lateral", 23.34, 2.28, 3.67},
      {"Right lateral", 23.22, 2.27, 3.51},
      {"Overall torso area", 23.56, 2.28, 3.38},
  };
  return rows;
}

FittedParameterSet builtin_parameters(PresetCatalog catalog, std::string_view label) {
  const auto& rows = catalog == PresetCatalog::BodyRegion ? body_region_parameters()
                                                          : body_side_parameters();
  std::string wanted = slug(label);
  if (wanted == "overall" || wanted == "overall-torso") wanted = "overall-torso-area";
  for (const auto& row : rows)
    if (slug(row.label) == wanted) return row;
  std::ostringstream msg;
  msg << "unknown "
      << (catalog == PresetCatalog::BodyRegion ? "body region" : "body side")
      << " '" << label << "'; valid labels:";
  for (const auto& row : rows) msg << " '" << slug(row.label) << "'";
  throw LookupError(msg.str());
}

StatisticalA to_statistical_a(const FittedParameterSet& params) {
  return StatisticalA{params.pl0_db, params.slope, 10.0, params.sigma_db};
}

const std::vector<PathLossMeasurement>& cadaver_measurements() {
  static const std::vector<PathLossMeasurement> rows = {
      {"Above heart", 30.0, 45.32},   {"Below heart", 80.0, 55.61},
      {"Above stomach", 50.0, 48.19}, {"Inside stomach", 90.0, 50.80},
      {"Above intestine", 20.0, 29.95}, {"Below intestine", 100.0, 50.47},
  };
  return rows;
}

ResidualReport validate_against_measurements(
    const PathLossModel& model,
    const std::vector<PathLossMeasurement>& measurements) {
  if (measurements.empty())
    throw std::invalid_argument("measurement list must not be empty");
  ResidualReport report;
  double abs_sum = 0.0;
  for (const auto& m : measurements) {
    ResidualRow row;
    row.label = m.label;
    row.depth_mm = m.depth_mm;
    row.measured_db = m.pl_db;
    try {
      row.predicted_db = mean_path_loss_db(model, m.depth_mm);
      row.residual_db = m.pl_db - row.predicted_db;
      abs_sum += std::abs(row.residual_db);
      report.max_abs_residual_db =
          std::max(report.max_abs_residual_db, std::abs(row.residual_db));
      ++report.valid_rows;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    report.rows.push_back(std::move(row));
  }
  if (report.valid_rows > 0)
    report.mean_abs_residual_db = abs_sum / static_cast<double>(report.valid_rows);
  return report;
}

}  // namespace vivochan
