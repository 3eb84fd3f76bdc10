#pragma once

#include <array>
#include <complex>
#include <string>

namespace vivochan {

struct ColeColePole {
  double delta_eps = 0.0;  // dispersion magnitude, dimensionless
  double tau_s = 0.0;      // relaxation time, seconds
  double alpha = 0.0;      // broadening exponent, in [0, 1)
};

// Four-pole Cole-Cole parameter set for one tissue. Immutable after
// construction; parameter values ship in the tissue database file, the
// library never embeds tissue numbers.
struct TissueDielectricSpec {
  std::string tissue_name;
  double eps_inf = 1.0;
  std::array<ColeColePole, 4> poles{};
  double sigma_ionic = 0.0;          // S/m
  double valid_min_hz = 10.0;        // measured range of the source data
  double valid_max_hz = 20.0e9;
  double mass_density = 0.0;         // kg/m^3; 0 means not provided

  bool has_mass_density() const { return mass_density > 0.0; }

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

// Complex relative permittivity and the scalars derived from it at one
// frequency. Sign convention is e^{+jwt}: Im(eps) <= 0 for passive media.
struct DielectricSample {
  double frequency_hz = 0.0;
  std::complex<double> eps_complex;
  double eps_real = 0.0;
  double conductivity_effective = 0.0;  // S/m, -w*eps0*Im(eps)
  double loss_tangent = 0.0;
  double penetration_depth_m = 0.0;     // 1/alpha, +inf for lossless media
  double wavelength_m = 0.0;            // 2*pi/Re(k)
  double attenuation_np_per_m = 0.0;    // field attenuation constant alpha
};

// Evaluates the four-pole Cole-Cole model
//   eps(w) = eps_inf + sum_m delta_m / (1 + (j w tau_m)^(1-a_m)) + sigma/(j w eps0)
// and derives conductivity, loss tangent, penetration depth and in-tissue
// wavelength from the complex propagation constant k = (w/c) sqrt(eps).
// (j w tau)^(1-a) uses the principal branch; j w tau lies on the positive
// imaginary axis so the branch is unambiguous.
// Throws std::domain_error for frequency <= 0 and std::out_of_range when the
// frequency falls outside the spec's valid range (message names the tissue
// and the violated bound).
DielectricSample evaluate_permittivity(const TissueDielectricSpec& spec,
                                       double frequency_hz);

// Same evaluation for a bare parameter set without range checking; used by
// callers that own synthetic parameters. frequency must still be positive.
std::complex<double> cole_cole_eps(double eps_inf,
                                   const std::array<ColeColePole, 4>& poles,
                                   double sigma_ionic, double frequency_hz);

// Builds the derived scalars for an externally obtained permittivity value.
DielectricSample sample_from_eps(std::complex<double> eps, double frequency_hz);

// Lossless in-tissue wavelength c / (sqrt(eps_real) * f). This is the
// comparison-table approximation; the exact lossy wavelength lives in
// DielectricSample::wavelength_m. Throws std::domain_error on non-positive
// inputs.
double wavelength_in_tissue(double eps_real, double frequency_hz);

}  // namespace vivochan
