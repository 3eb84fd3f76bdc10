#include "vivochan/regulatory.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "vivochan/errors.hpp"

namespace vivochan {

std::string_view to_string(BandMethod method) {
  switch (method) {
    case BandMethod::NarrowBand: return "narrowband";
    case BandMethod::Uwb: return "uwb";
    case BandMethod::Hbc: return "hbc";
  }
  return "unknown";
}

namespace {

constexpr double kUwbDensityLimitDbmPerMhz = -41.3;

EirpLimit uwb_density_limit() {
  return EirpLimit{kUwbDensityLimitDbmPerMhz, "dBm/MHz", "FCC", false};
}

// "25 W EIRP" is carried exactly as printed in the source and flagged.
EirpLimit mics_as_printed_limit() { return EirpLimit{25.0, "W", "FCC", true}; }

}  // namespace

const std::vector<BandSpec>& band_catalog() {
  static const std::vector<BandSpec> catalog = {
      {"402-405MHz", BandMethod::NarrowBand, 402e6, 405e6, 300e3,
       mics_as_printed_limit()},
      {"420-450MHz", BandMethod::NarrowBand, 420e6, 450e6, 300e3, std::nullopt},
      {"863-870MHz", BandMethod::NarrowBand, 863e6, 870e6, 400e3, std::nullopt},
      {"902-928MHz", BandMethod::NarrowBand, 902e6, 928e6, 500e3, std::nullopt},
      {"950-956MHz", BandMethod::NarrowBand, 950e6, 956e6, 400e3, std::nullopt},
      {"2360-2400MHz", BandMethod::NarrowBand, 2360e6, 2400e6, 1e6, std::nullopt},
      {"2400-2438.5MHz", BandMethod::NarrowBand, 2400e6, 2438.5e6, 1e6,
       std::nullopt},
      {"3.2-4.7GHz", BandMethod::Uwb, 3.2e9, 4.7e9, 499e6, uwb_density_limit()},
      {"6.2-10.3GHz", BandMethod::Uwb, 6.2e9, 10.3e9, 499e6, uwb_density_limit()},
      // HBC rows are printed as centre frequencies; stored centre +/- BW/2.
      {"HBC-16MHz", BandMethod::Hbc, 14e6, 18e6, 4e6, std::nullopt},
      {"HBC-27MHz", BandMethod::Hbc, 25e6, 29e6, 4e6, std::nullopt},
  };
  return catalog;
}

const BandSpec& find_band(std::string_view id) {
  for (const auto& band : band_catalog())
    if (band.id == id) return band;
  std::ostringstream msg;
  msg << "unknown band '" << id << "'; valid ids:";
  for (const auto& band : band_catalog()) msg << " '" << band.id << "'";
  throw LookupError(msg.str());
}

std::vector<BandSpec> classify_frequency(double f_hz) {
  if (f_hz <= 0.0)
    throw std::invalid_argument("classify_frequency: frequency must be positive");
  std::vector<BandSpec> matches;
  for (const auto& band : band_catalog())
    if (f_hz >= band.f_low_hz && f_hz <= band.f_high_hz) matches.push_back(band);
  return matches;
}

EirpVerdict check_eirp(double eirp_dbm, const BandSpec& band,
                       std::optional<double> bandwidth_hz) {
  EirpVerdict verdict;
  if (!band.eirp_limit) {
    verdict.status = EirpStatus::NotRegulated;
    return verdict;
  }
  const EirpLimit& limit = *band.eirp_limit;
  double margin = 0.0;
  if (limit.unit == "dBm/MHz") {
    if (!bandwidth_hz || *bandwidth_hz <= 0.0)
      throw std::invalid_argument(
          "check_eirp: spectral-density limit needs the emission bandwidth");
    const double density_dbm_per_mhz =
        eirp_dbm - 10.0 * std::log10(*bandwidth_hz / 1e6);
    margin = limit.value - density_dbm_per_mhz;
  } else if (limit.unit == "W") {
    margin = watt_to_dbm(limit.value) - eirp_dbm;
  } else {
    throw std::invalid_argument("check_eirp: unsupported limit unit '" +
                                limit.unit + "'");
  }
  verdict.status = margin >= 0.0 ? EirpStatus::Compliant : EirpStatus::Exceeds;
  verdict.margin_db = margin;
  if (limit.as_printed)
    verdict.warning =
        "limit stored as printed in the source material; suspected typo, "
        "do not use as a safety reference";
  return verdict;
}

LinkBudgetReport link_budget(double tx_power_dbm, const PathLossModel& model,
                             double distance_or_depth, double sensitivity_dbm,
                             const LinkBudgetOptions& options) {
  LinkBudgetReport report;
  report.tx_power_dbm = tx_power_dbm;
  report.sensitivity_dbm = sensitivity_dbm;

  const bool statistical = std::holds_alternative<StatisticalA>(model) ||
                           std::holds_alternative<StatisticalB>(model);
  report.gains_model_internal = !statistical;

  const double tx_w = dbm_to_watt(tx_power_dbm);
  const double rx_w = received_power(model, tx_w, distance_or_depth);
  double rx_dbm = watt_to_dbm(rx_w);
  double model_tx_gain_db = 0.0;
  if (statistical) {
    rx_dbm += options.tx_gain_db + options.rx_gain_db;
    report.path_loss_db = -linear_to_db(rx_w / tx_w);
    model_tx_gain_db = options.tx_gain_db;
  } else {
    if (options.tx_gain_db != 0.0 || options.rx_gain_db != 0.0)
      throw std::invalid_argument(
          "link_budget: analytical models embed their antenna gains; "
          "external gains must stay 0");
    report.path_loss_db = tx_power_dbm - rx_dbm;
    model_tx_gain_db = std::visit(
        [](const auto& m) -> double {
          using T = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<T, Fspl> || std::is_same_v<T, FsplWithRl> ||
                        std::is_same_v<T, FsplRlAbsorption>)
            return linear_to_db(m.tx.gain_linear);
          else if constexpr (std::is_same_v<T, PmbaFarField>)
            return linear_to_db(m.tx_gain);
          else
            return 0.0;
        },
        model);
  }
  report.rx_power_dbm = rx_dbm;
  report.eirp_dbm = tx_power_dbm + model_tx_gain_db;
  report.link_margin_db = report.rx_power_dbm - sensitivity_dbm;
  report.feasible = report.link_margin_db >= 0.0;

  if (options.band_id) {
    const BandSpec& band = find_band(*options.band_id);
    report.band_id = band.id;
    report.band_compliance = check_eirp(report.eirp_dbm, band, options.bandwidth_hz);
  }
  if (options.sar_w_per_kg) {
    report.sar_compliance = check_exposure(
        *options.sar_w_per_kg, options.sar_limit.value_or(fcc_limit()));
  }
  return report;
}

}  // namespace vivochan
