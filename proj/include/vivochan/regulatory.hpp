#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vivochan/exposure.hpp"
#include "vivochan/pathloss.hpp"

namespace vivochan {

inline double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watt_to_dbm(double watt) { return 10.0 * std::log10(watt) + 30.0; }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

enum class BandMethod { NarrowBand, Uwb, Hbc };

std::string_view to_string(BandMethod method);

struct EirpLimit {
  double value = 0.0;       // in `unit`
  std::string unit;         // "dBm/MHz" (spectral density) or "W" (total EIRP)
  std::string authority;
  // The 402-405 MHz "25 W EIRP" figure is suspected to be a typo in the
  // source; it is stored exactly as printed and flagged, never used as a
  // default safety limit.
  bool as_printed = false;
};

struct BandSpec {
  std::string id;           // e.g. "402-405MHz", "HBC-16MHz"
  BandMethod method = BandMethod::NarrowBand;
  double f_low_hz = 0.0;
  double f_high_hz = 0.0;
  double channel_bw_hz = 0.0;
  std::optional<EirpLimit> eirp_limit;
};

// The embedded IEEE 802.15.6 band catalog. HBC rows are printed as centre
// frequencies; they are stored as centre +/- half the 4 MHz bandwidth.
const std::vector<BandSpec>& band_catalog();

const BandSpec& find_band(std::string_view id);

// All catalog bands whose [f_low, f_high] contains f, bounds inclusive.
std::vector<BandSpec> classify_frequency(double f_hz);

enum class EirpStatus { Compliant, Exceeds, NotRegulated };

struct EirpVerdict {
  EirpStatus status = EirpStatus::NotRegulated;
  std::optional<double> margin_db;  // positive = headroom
  std::string warning;              // set when the limit is as-printed
};

// Density limits (dBm/MHz) need the emission bandwidth; omitting it is a
// parameter error. Compliance is boundary-inclusive.
EirpVerdict check_eirp(double eirp_dbm, const BandSpec& band,
                       std::optional<double> bandwidth_hz = std::nullopt);

struct LinkBudgetOptions {
  // External antenna gains, applied only when the model has no internal
  // gains (the statistical variants).
  double tx_gain_db = 0.0;
  double rx_gain_db = 0.0;
  std::optional<std::string> band_id;    // enables the band EIRP check
  std::optional<double> bandwidth_hz;    // for density limits
  std::optional<double> sar_w_per_kg;    // enables the SAR check
  std::optional<ExposureLimit> sar_limit;  // defaults to the FCC limit
};

struct LinkBudgetReport {
  double tx_power_dbm = 0.0;
  double eirp_dbm = 0.0;
  double path_loss_db = 0.0;   // tx-to-rx attenuation, internal gains folded in
  double rx_power_dbm = 0.0;
  double sensitivity_dbm = 0.0;
  double link_margin_db = 0.0;
  bool gains_model_internal = false;
  bool feasible = false;
  std::optional<std::string> band_id;
  std::optional<EirpVerdict> band_compliance;
  std::optional<ComplianceVerdict> sar_compliance;
};

// Composes any path-loss model with transmit power and receiver sensitivity.
// `distance_or_depth` follows the model's range convention (metres for the
// analytical variants, depth in millimetres for the statistical ones).
LinkBudgetReport link_budget(double tx_power_dbm, const PathLossModel& model,
                             double distance_or_depth, double sensitivity_dbm,
                             const LinkBudgetOptions& options = {});

}  // namespace vivochan
