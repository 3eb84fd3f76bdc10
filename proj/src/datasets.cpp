#include "vivochan/datasets.hpp"

#include <json.hpp>

#include "vivochan/pathloss.hpp"
#include "vivochan/regulatory.hpp"

namespace vivochan {

using ordered_json = nlohmann::ordered_json;

const std::vector<AngularFrequencyStats>& angular_frequency_stats() {
  static const std::vector<AngularFrequencyStats> rows = {
      {0.4, 46.316, 20.3373, 1.197665},
      {1.4, 76.74442, 33.04337, 1.171730},
      {2.4, 108.8819, 45.38211, 1.208047},
  };
  return rows;
}

namespace {

ordered_json fitted_rows_json(const std::vector<FittedParameterSet>& rows) {
  ordered_json arr = ordered_json::array();
  for (const auto& row : rows) {
    arr.push_back({{"label", row.label},
                   {"pl0_db", row.pl0_db},
                   {"slope", row.slope},
                   {"sigma_db", row.sigma_db}});
  }
  return arr;
}

ordered_json band_catalog_json() {
  ordered_json arr = ordered_json::array();
  for (const auto& band : band_catalog()) {
    ordered_json entry = {{"id", band.id},
                          {"method", std::string(to_string(band.method))},
                          {"f_low_hz", band.f_low_hz},
                          {"f_high_hz", band.f_high_hz},
                          {"channel_bw_hz", band.channel_bw_hz}};
    if (band.eirp_limit) {
      entry["eirp_limit"] = {{"value", band.eirp_limit->value},
                             {"unit", band.eirp_limit->unit},
                             {"authority", band.eirp_limit->authority},
                             {"as_printed", band.eirp_limit->as_printed}};
    } else {
      entry["eirp_limit"] = nullptr;
    }
    arr.push_back(std::move(entry));
  }
  return arr;
}

}  // namespace

std::string dump_band_catalog_json() { return band_catalog_json().dump(2) + "\n"; }

std::string dump_datasets_json() {
  ordered_json doc;
  doc["body_region_parameters"] = fitted_rows_json(body_region_parameters());
  doc["body_side_parameters"] = fitted_rows_json(body_side_parameters());
  ordered_json meas = ordered_json::array();
  for (const auto& m : cadaver_measurements()) {
    meas.push_back({{"label", m.label},
                    {"depth_mm", m.depth_mm},
                    {"pl_db", m.pl_db}});
  }
  doc["cadaver_measurements"] = meas;
  ordered_json ang = ordered_json::array();
  for (const auto& row : angular_frequency_stats()) {
    ang.push_back({{"freq_ghz", row.freq_ghz},
                   {"average_db", row.average_db},
                   {"max_difference_db", row.max_difference_db},
                   {"peak_to_average_ratio", row.peak_to_average_ratio}});
  }
  doc["angular_frequency_stats"] = ang;
  doc["band_catalog"] = band_catalog_json();
  return doc.dump(2) + "\n";
}

}  // namespace vivochan
