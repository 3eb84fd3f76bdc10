#include "vivochan/exposure.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "vivochan/errors.hpp"

namespace vivochan {

void SarQuery::validate() const {
  if (conductivity < 0.0)
    throw std::invalid_argument("SarQuery: conductivity must be non-negative");
  if (e_field_rms < 0.0)
    throw std::invalid_argument("SarQuery: e_field_rms must be non-negative");
  if (mass_density <= 0.0)
    throw std::invalid_argument("SarQuery: mass_density must be positive");
}

ExposureLimit fcc_limit() { return ExposureLimit{1.6, 1.0, "FCC"}; }

double compute_sar(const SarQuery& query) {
  query.validate();
  return query.conductivity * query.e_field_rms * query.e_field_rms /
         query.mass_density;
}

ComplianceVerdict check_exposure(double sar_w_per_kg, const ExposureLimit& limit) {
  if (sar_w_per_kg < 0.0)
    throw std::invalid_argument("check_exposure: SAR must be non-negative");
  if (limit.limit_w_per_kg <= 0.0 || limit.averaging_mass_g <= 0.0)
    throw std::invalid_argument("check_exposure: limit fields must be positive");
  ComplianceVerdict verdict;
  verdict.compliant = sar_w_per_kg <= limit.limit_w_per_kg;
  if (sar_w_per_kg > 0.0)
    verdict.margin_db = 10.0 * std::log10(limit.limit_w_per_kg / sar_w_per_kg);
  return verdict;
}

std::vector<SarSample> sar_profile(const PlaneWaveSolution& solution,
                                   double incident_power_density) {
  if (incident_power_density < 0.0)
    throw std::invalid_argument("sar_profile: incident power density must be >= 0");
  if (solution.field_profile.empty())
    throw std::invalid_argument("sar_profile: solution carries no field profile");

  for (const auto& wv : solution.waves) {
    if (wv.sigma_eff > 0.0 && wv.mass_density <= 0.0) {
      std::ostringstream msg;
      msg << "sar_profile: no mass density for tissue '" << wv.name << "'";
      throw ConfigError(msg.str());
    }
  }

  // Peak incident field amplitude carrying the requested flux in layer 0:
  // S = 1/2 |E|^2 Re(1/conj(eta)).
  const double eta_term = (1.0 / std::conj(solution.waves.front().eta)).real();
  const double e0_sq = 2.0 * incident_power_density / eta_term;

  std::vector<SarSample> out;
  out.reserve(solution.field_profile.size());
  for (std::size_t layer = 0; layer < solution.waves.size(); ++layer) {
    const auto& wv = solution.waves[layer];
    const auto [begin, end] = solution.layer_sample_range[layer];
    for (std::size_t s = begin; s < end; ++s) {
      const auto& fs = solution.field_profile[s];
      const double e_peak_sq = fs.magnitude * fs.magnitude * e0_sq;
      // Eq SAR = sigma |E_rms|^2 / rho with |E_rms|^2 = |E_peak|^2 / 2.
      const double sar = wv.sigma_eff > 0.0
                             ? wv.sigma_eff * e_peak_sq / (2.0 * wv.mass_density)
                             : 0.0;
      out.push_back(SarSample{fs.z_m, sar, layer});
    }
  }
  return out;
}

}  // namespace vivochan
