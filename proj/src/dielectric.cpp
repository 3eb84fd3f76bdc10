#include "vivochan/dielectric.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "vivochan/constants.hpp"

namespace vivochan {

namespace {

void require(bool ok, const std::string& tissue, const char* field, double value) {
  if (!ok) {
    std::ostringstream msg;
    msg << "tissue '" << tissue << "': invalid " << field << " = " << value;
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

void TissueDielectricSpec::validate() const {
  require(eps_inf >= 1.0, tissue_name, "eps_inf", eps_inf);
  for (const auto& pole : poles) {
    require(pole.delta_eps >= 0.0, tissue_name, "delta_eps", pole.delta_eps);
    require(pole.tau_s > 0.0, tissue_name, "tau", pole.tau_s);
    require(pole.alpha >= 0.0 && pole.alpha < 1.0, tissue_name, "alpha", pole.alpha);
  }
  require(sigma_ionic >= 0.0, tissue_name, "sigma", sigma_ionic);
  require(valid_min_hz >= 10.0, tissue_name, "fmin", valid_min_hz);
  require(valid_max_hz <= 20.0e9, tissue_name, "fmax", valid_max_hz);
  require(valid_min_hz < valid_max_hz, tissue_name, "fmin/fmax ordering", valid_min_hz);
  require(mass_density >= 0.0, tissue_name, "rho", mass_density);
}

std::complex<double> cole_cole_eps(double eps_inf,
                                   const std::array<ColeColePole, 4>& poles,
                                   double sigma_ionic, double frequency_hz) {
  if (frequency_hz <= 0.0)
    throw std::domain_error("cole_cole_eps: frequency must be positive");
  const double w = 2.0 * kPi * frequency_hz;
  std::complex<double> eps(eps_inf, 0.0);
  for (const auto& pole : poles) {
    if (pole.delta_eps == 0.0) continue;
    // jwt on the positive imaginary axis; std::pow takes the principal branch.
    const std::complex<double> jwt(0.0, w * pole.tau_s);
    eps += pole.delta_eps / (1.0 + std::pow(jwt, 1.0 - pole.alpha));
  }
  if (sigma_ionic != 0.0)
    eps += sigma_ionic / std::complex<double>(0.0, w * kEps0);
  return eps;
}

DielectricSample sample_from_eps(std::complex<double> eps, double frequency_hz) {
  if (frequency_hz <= 0.0)
    throw std::domain_error("sample_from_eps: frequency must be positive");
  const double w = 2.0 * kPi * frequency_hz;

  DielectricSample s;
  s.frequency_hz = frequency_hz;
  s.eps_complex = eps;
  s.eps_real = eps.real();
  s.conductivity_effective = -w * kEps0 * eps.imag();
  s.loss_tangent = eps.real() != 0.0 ? -eps.imag() / eps.real() : 0.0;

  // k = (w/c) sqrt(eps); the principal sqrt of a fourth-quadrant eps has
  // Re >= 0 and Im <= 0, so alpha = -Im(k) is the decay rate of e^{-jkz}.
  const std::complex<double> k = (w / kSpeedOfLight) * std::sqrt(eps);
  s.attenuation_np_per_m = -k.imag();
  s.penetration_depth_m = s.attenuation_np_per_m > 0.0
                              ? 1.0 / s.attenuation_np_per_m
                              : std::numeric_limits<double>::infinity();
  s.wavelength_m = 2.0 * kPi / k.real();
  return s;
}

DielectricSample evaluate_permittivity(const TissueDielectricSpec& spec,
                                       double frequency_hz) {
  if (frequency_hz <= 0.0)
    throw std::domain_error("evaluate_permittivity: frequency must be positive");
  if (frequency_hz < spec.valid_min_hz || frequency_hz > spec.valid_max_hz) {
    std::ostringstream msg;
    msg << "tissue '" << spec.tissue_name << "': frequency " << frequency_hz
        << " Hz outside valid range [" << spec.valid_min_hz << ", "
        << spec.valid_max_hz << "] Hz";
    throw std::out_of_range(msg.str());
  }
  return sample_from_eps(
      cole_cole_eps(spec.eps_inf, spec.poles, spec.sigma_ionic, frequency_hz),
      frequency_hz);
}

double wavelength_in_tissue(double eps_real, double frequency_hz) {
  if (eps_real <= 0.0)
    throw std::domain_error("wavelength_in_tissue: eps_real must be positive");
  if (frequency_hz <= 0.0)
    throw std::domain_error("wavelength_in_tissue: frequency must be positive");
  return kSpeedOfLight / (std::sqrt(eps_real) * frequency_hz);
}

}  // namespace vivochan
