#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vivochan/layered.hpp"

namespace vivochan {

struct SarQuery {
  double conductivity = 0.0;   // S/m
  double e_field_rms = 0.0;    // V/m
  double mass_density = 0.0;   // kg/m^3

  void validate() const;
};

struct ExposureLimit {
  double limit_w_per_kg = 0.0;
  double averaging_mass_g = 0.0;  // metadata only; point SAR is checked
  std::string authority;
};

// FCC recommendation: 1.6 W/kg over 1 g of tissue.
ExposureLimit fcc_limit();

struct ComplianceVerdict {
  bool compliant = false;
  // 10*log10(limit/sar), positive = headroom; unset for sar == 0 (unbounded).
  std::optional<double> margin_db;
};

// sigma * |E_rms|^2 / rho in W/kg.
double compute_sar(const SarQuery& query);

// Boundary-inclusive check against a point-SAR limit.
ComplianceVerdict check_exposure(double sar_w_per_kg, const ExposureLimit& limit);

struct SarSample {
  double z_m = 0.0;
  double sar_w_per_kg = 0.0;
  std::size_t layer_index = 0;
};

// Pointwise SAR along the solved field profile, scaled so the incident plane
// wave carries incident_power_density (W/m^2, time-averaged). Every layer
// needs a mass density; a missing one raises ConfigError naming the tissue.
std::vector<SarSample> sar_profile(const PlaneWaveSolution& solution,
                                   double incident_power_density);

}  // namespace vivochan
