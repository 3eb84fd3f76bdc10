#pragma once

namespace vivochan {

// Free-space constants. eps0 is derived from mu0 and c so that
// k = (w/c)*sqrt(eps_r) and eta = eta0/sqrt(eps_r) stay mutually consistent.
inline constexpr double kSpeedOfLight = 299792458.0;             // m/s
inline constexpr double kMu0 = 1.25663706143591729539e-6;        // 4*pi*1e-7 H/m
inline constexpr double kEps0 = 8.85418781762038985054e-12;      // 1/(mu0*c^2) F/m
inline constexpr double kEta0 = 376.730313461770655468;          // mu0*c Ohm
inline constexpr double kPi = 3.14159265358979323846;

// 20*log10(e): converts a field attenuation constant in Np to dB.
inline constexpr double kNeperToDb = 8.68588963806503943204;

}  // namespace vivochan
