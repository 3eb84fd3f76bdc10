#pragma once

#include <string>
#include <vector>

namespace vivochan {

// Angular path-loss statistics at the three survey frequencies.
struct AngularFrequencyStats {
  double freq_ghz = 0.0;
  double average_db = 0.0;
  double max_difference_db = 0.0;
  double peak_to_average_ratio = 0.0;
};

const std::vector<AngularFrequencyStats>& angular_frequency_stats();

// Stable JSON renderings of the embedded datasets (fitted parameter tables,
// cadaver measurements, angular statistics, band catalog). Field order and
// number formatting are fixed so the dumps are byte-reproducible and can be
// pinned by golden files.
std::string dump_band_catalog_json();
std::string dump_datasets_json();

}  // namespace vivochan
