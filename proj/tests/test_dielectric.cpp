#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "vivochan/constants.hpp"
#include "vivochan/dielectric.hpp"
#include "vivochan/tissue_db.hpp"

using namespace vivochan;

namespace {

double rel_err(std::complex<double> got, std::complex<double> want) {
  return std::abs(got - want) / std::abs(want);
}

double rel_err(double got, double want) {
  return std::abs(got - want) / std::abs(want);
}

// Four-term Debye evaluator, independent of the Cole-Cole code path (no
// complex pow). Oracle for the a_m = 0 reduction.
std::complex<double> debye_eps(double eps_inf,
                               const std::array<ColeColePole, 4>& poles,
                               double sigma, double f) {
  const double w = 2.0 * kPi * f;
  std::complex<double> eps(eps_inf, 0.0);
  for (const auto& p : poles) {
    const double wt = w * p.tau_s;
    const double denom = 1.0 + wt * wt;
    eps += std::complex<double>(p.delta_eps / denom, -p.delta_eps * wt / denom);
  }
  if (sigma != 0.0) eps += std::complex<double>(0.0, -sigma / (w * kEps0));
  return eps;
}

TissueDatabase shipped_db() {
  return TissueDatabase::load_file(VIVOCHAN_SOURCE_DIR
                                   "/data/tissue_properties.csv");
}

}  // namespace

TEST_CASE("dispersion-free spec returns eps_inf") {
  TissueDielectricSpec spec;
  spec.tissue_name = "vacuumish";
  spec.eps_inf = 5.0;
  for (auto& p : spec.poles) p.tau_s = 1e-12;
  const auto s = evaluate_permittivity(spec, 1e9);
  CHECK(s.eps_complex.real() == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(s.eps_complex.imag() == 0.0);
  CHECK(s.conductivity_effective == 0.0);
  CHECK(s.loss_tangent == 0.0);
  CHECK(std::isinf(s.penetration_depth_m));
}

TEST_CASE("single Debye pole at w*tau = 1 contributes delta/2 real part") {
  TissueDielectricSpec spec;
  spec.tissue_name = "debye";
  spec.eps_inf = 5.0;
  for (auto& p : spec.poles) p.tau_s = 1e-12;
  spec.poles[0] = ColeColePole{10.0, 1e-9, 0.0};
  const double f = 1.0 / (2.0 * kPi * spec.poles[0].tau_s);
  const auto s = evaluate_permittivity(spec, f);
  // 10/(1+j) = 5 - 5j
  CHECK(s.eps_complex.real() == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(s.eps_complex.imag() == doctest::Approx(-5.0).epsilon(1e-12));
}

TEST_CASE("shipped muscle parameters at 915 MHz match the scripted reference") {
  // Frozen from tests/oracles/cole_cole_reference.py (mpmath, 50 digits).
  const auto db = shipped_db();
  const auto s = evaluate_permittivity(db.find("muscle"), 915e6);
  CHECK(rel_err(s.eps_complex, {54.997347864070573187, -18.624087443250581084}) <
        1e-10);
  CHECK(rel_err(s.conductivity_effective, 0.94803570614887144825) < 1e-10);
  CHECK(rel_err(s.loss_tangent, 0.33863610094947109422) < 1e-10);
  CHECK(rel_err(s.penetration_depth_m, 0.042103585179838450198) < 1e-10);
  CHECK(rel_err(s.wavelength_m, 0.043576792924213215877) < 1e-10);
  CHECK(rel_err(s.attenuation_np_per_m, 23.750946522218157592) < 1e-10);
}

TEST_CASE("Cole-Cole with all alpha = 0 reduces to the Debye model") {
  std::mt19937_64 gen(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::array<ColeColePole, 4> poles;
    for (auto& p : poles) {
      p.delta_eps = 80.0 * u(gen);
      p.tau_s = std::pow(10.0, -12.0 + 9.0 * u(gen));
      p.alpha = 0.0;
    }
    const double eps_inf = 1.0 + 9.0 * u(gen);
    const double sigma = 2.0 * u(gen);
    const double f = std::pow(10.0, 2.0 + 8.0 * u(gen));
    const auto got = cole_cole_eps(eps_inf, poles, sigma, f);
    const auto want = debye_eps(eps_inf, poles, sigma, f);
    CHECK(rel_err(got, want) < 1e-12);
  }
}

TEST_CASE("high-frequency limit approaches eps_inf monotonically") {
  std::array<ColeColePole, 4> poles{{{60.0, 8e-12, 0.0},
                                     {500.0, 100e-9, 0.0},
                                     {1e5, 100e-6, 0.0},
                                     {1e7, 10e-3, 0.0}}};
  double prev = std::numeric_limits<double>::infinity();
  for (double f = 1e9; f <= 1e17; f *= 10.0) {
    const auto eps = cole_cole_eps(4.0, poles, 0.5, f);
    CHECK(eps.real() < prev);
    CHECK(eps.real() > 4.0);
    prev = eps.real();
  }
  CHECK(cole_cole_eps(4.0, poles, 0.5, 1e18).real() ==
        doctest::Approx(4.0).epsilon(1e-6));
}

TEST_CASE("Im(eps) stays non-positive for passive parameters") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::array<ColeColePole, 4> poles;
    for (auto& p : poles) {
      p.delta_eps = 1e4 * u(gen);
      p.tau_s = std::pow(10.0, -12.0 + 10.0 * u(gen));
      p.alpha = 0.999 * u(gen);
    }
    const double f = std::pow(10.0, 1.0 + 9.0 * u(gen));
    const auto eps = cole_cole_eps(1.0 + 80.0 * u(gen), poles, 2.0 * u(gen), f);
    CHECK(eps.imag() <= 0.0);
  }
}

TEST_CASE("penetration depth shrinks as ionic conductivity grows") {
  TissueDielectricSpec spec;
  spec.tissue_name = "grid";
  spec.eps_inf = 40.0;
  for (auto& p : spec.poles) p.tau_s = 1e-12;
  for (double f : {100e6, 915e6, 5e9}) {
    double prev = std::numeric_limits<double>::infinity();
    for (double sigma = 0.1; sigma <= 3.0; sigma += 0.1) {
      spec.sigma_ionic = sigma;
      const auto s = evaluate_permittivity(spec, f);
      CHECK(s.penetration_depth_m < prev);
      prev = s.penetration_depth_m;
    }
  }
}

TEST_CASE("lossless wavelength formula") {
  SUBCASE("free space at 300 MHz") {
    CHECK(wavelength_in_tissue(1.0, 300e6) ==
          doctest::Approx(0.99930819333).epsilon(1e-9));
  }
  SUBCASE("lambda * f = c identity") {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(1e6, 2e10);
    for (int i = 0; i < 50; ++i) {
      const double f = u(gen);
      CHECK(rel_err(wavelength_in_tissue(1.0, f) * f, kSpeedOfLight) < 1e-12);
    }
  }
  SUBCASE("eps 35 at 2.4 GHz is about six times shorter than free space") {
    const double lam = wavelength_in_tissue(35.0, 2.4e9);
    CHECK(lam == doctest::Approx(0.0211142392845183).epsilon(1e-10));
    const double ratio = wavelength_in_tissue(1.0, 2.4e9) / lam;
    CHECK(std::abs(ratio - 5.916) < 1e-3);
  }
  SUBCASE("eps 4 halves the free-space wavelength") {
    CHECK(wavelength_in_tissue(4.0, 1e9) ==
          doctest::Approx(0.5 * wavelength_in_tissue(1.0, 1e9)).epsilon(1e-15));
  }
  SUBCASE("non-positive inputs rejected") {
    CHECK_THROWS_AS(wavelength_in_tissue(0.0, 1e9), std::domain_error);
    CHECK_THROWS_AS(wavelength_in_tissue(-1.0, 1e9), std::domain_error);
    CHECK_THROWS_AS(wavelength_in_tissue(35.0, 0.0), std::domain_error);
  }
}

TEST_CASE("frequency range enforcement names the tissue and bound") {
  const auto db = shipped_db();
  const auto& muscle = db.find("muscle");
  CHECK_THROWS_AS(evaluate_permittivity(muscle, 25e9), std::out_of_range);
  CHECK_THROWS_AS(evaluate_permittivity(muscle, 1.0), std::out_of_range);
  CHECK_THROWS_AS(evaluate_permittivity(muscle, -5.0), std::domain_error);
  try {
    evaluate_permittivity(muscle, 25e9);
  } catch (const std::out_of_range& e) {
    const std::string msg = e.what();
    CHECK(msg.find("muscle") != std::string::npos);
    CHECK(msg.find("2e+10") != std::string::npos);
  }
}

TEST_CASE("derived scalars stay physical across the shipped database") {
  const auto db = shipped_db();
  for (const auto& spec : db.specs()) {
    for (double f = 1e6; f <= 10e9; f *= 4.0) {
      const auto s = evaluate_permittivity(spec, f);
      CHECK(s.eps_real > 0.0);
      CHECK(s.conductivity_effective >= 0.0);
      CHECK(s.penetration_depth_m > 0.0);
      CHECK(s.loss_tangent >= 0.0);
      CHECK(s.wavelength_m > 0.0);
    }
  }
}
