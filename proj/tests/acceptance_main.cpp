// Acceptance suite: runs the contract criteria end to end and prints one
// PASS/FAIL line per criterion. Exits non-zero if any criterion fails.
//
// Usage: vivochan_acceptance [path-to-cli]

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "vivochan/channel.hpp"
#include "vivochan/constants.hpp"
#include "vivochan/datasets.hpp"
#include "vivochan/dielectric.hpp"
#include "vivochan/exposure.hpp"
#include "vivochan/layered.hpp"
#include "vivochan/pathloss.hpp"
#include "vivochan/regulatory.hpp"
#include "vivochan/rng.hpp"
#include "vivochan/tissue_db.hpp"

using namespace vivochan;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool condition, const std::string& what) {
    if (!condition && ok) {
      ok = false;
      detail = what;
    }
  }
};

int g_failures = 0;

void run(int id, const std::string& name, const std::function<void(Check&)>& fn) {
  Check check;
  try {
    fn(check);
  } catch (const std::exception& e) {
    check.ok = false;
    check.detail = std::string("exception: ") + e.what();
  }
  if (check.ok) {
    std::printf("PASS %2d  %s\n", id, name.c_str());
  } else {
    std::printf("FAIL %2d  %s  (%s)\n", id, name.c_str(), check.detail.c_str());
    ++g_failures;
  }
}

std::string source_dir() { return VIVOCHAN_SOURCE_DIR; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string g_cli;

std::string run_cli(const std::string& args, int* exit_code = nullptr) {
  const std::string out_path = "acceptance_cli_out.tmp";
  const std::string cmd =
      "\"" + g_cli + "\" " + args + " > " + out_path + " 2>/dev/null";
  const int rc = std::system(cmd.c_str());
  if (exit_code) *exit_code = WEXITSTATUS(rc);
  return read_file(out_path);
}

LayerStack random_lossless_stack(std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> nlayers(2, 6);
  LayerStack stack;
  stack.frequency_hz = 100e6 + 4.9e9 * u(gen);
  const int n = nlayers(gen);
  for (int i = 0; i < n; ++i) {
    const double eps = 1.0 + 79.0 * u(gen);
    std::optional<double> d;
    if (i + 1 < n) d = 1e-3 + 99e-3 * u(gen);
    stack.layers.push_back(Layer::fixed({eps, 0.0}, d));
  }
  return stack;
}

void criterion_fitted_model(Check& c) {
  const StatisticalA torso{23.56, 2.28, 10.0, 3.38};
  c.require(std::abs(mean_path_loss_db(torso, 10.0) - 25.84) < 1e-9,
            "torso mean at 10 mm");
  c.require(std::abs(mean_path_loss_db(torso, 100.0) - 46.36) < 1e-9,
            "torso mean at 100 mm");

  const std::array<std::array<double, 3>, 5> regions = {{{24.75, 2.30, 3.73},
                                                         {22.70, 1.96, 2.38},
                                                         {22.56, 2.55, 1.79},
                                                         {24.23, 2.31, 3.47},
                                                         {23.56, 2.28, 3.38}}};
  const char* region_labels[5] = {"Above heart", "Heart", "Stomach-kidneys",
                                  "Intestine", "Overall torso area"};
  for (int i = 0; i < 5; ++i) {
    const auto row =
        builtin_parameters(PresetCatalog::BodyRegion, region_labels[i]);
    c.require(row.pl0_db == regions[i][0] && row.slope == regions[i][1] &&
                  row.sigma_db == regions[i][2],
              std::string("region row ") + region_labels[i]);
    c.require(row.label == region_labels[i],
              std::string("region label ") + region_labels[i]);
  }
  const std::array<std::array<double, 3>, 5> sides = {{{23.83, 2.46, 3.51},
                                                       {23.76, 2.21, 1.92},
                                                       {23.34, 2.28, 3.67},
                                                       {23.22, 2.27, 3.51},
                                                       {23.56, 2.28, 3.38}}};
  const char* side_labels[5] = {"Anterior", "Posterior", "Left lateral",
                                "Right lateral", "Overall torso area"};
  for (int i = 0; i < 5; ++i) {
    const auto row = builtin_parameters(PresetCatalog::BodySide, side_labels[i]);
    c.require(row.pl0_db == sides[i][0] && row.slope == sides[i][1] &&
                  row.sigma_db == sides[i][2],
              std::string("side row ") + side_labels[i]);
    c.require(row.label == side_labels[i],
              std::string("side label ") + side_labels[i]);
  }
}

void criterion_measurement_validation(Check& c) {
  const PathLossModel torso = StatisticalA{23.56, 2.28, 10.0, 3.38};
  const auto report = validate_against_measurements(torso, cadaver_measurements());
  double above_intestine = 0.0, above_heart = 0.0;
  for (const auto& row : report.rows) {
    if (row.label == "Above intestine") above_intestine = row.residual_db;
    if (row.label == "Above heart") above_heart = row.residual_db;
  }
  c.require(std::abs(above_intestine - 1.83) < 0.01, "above-intestine residual");
  c.require(above_heart > 10.0, "above-heart residual flag");
}

void criterion_frequency_trend(Check& c) {
  std::vector<FrequencyPoint> points;
  for (const auto& row : angular_frequency_stats())
    points.push_back({row.freq_ghz, row.average_db});
  const auto trend = fit_frequency_trend(points);
  c.require(std::abs(trend.slope_db_per_ghz - 31.28) < 0.01, "slope");
  c.require(trend.r_squared > 0.999, "r^2");
}

void criterion_band_catalog(Check& c) {
  const std::string dump = dump_band_catalog_json();
  const std::string golden =
      read_file(source_dir() + "/tests/data/band_catalog.golden.json");
  c.require(!golden.empty(), "golden file readable");
  c.require(dump == golden, "golden-file equality");
  c.require(dump.find("499000000") != std::string::npos, "499 MHz UWB bandwidth");
  c.require(dump.find("-41.3") != std::string::npos,
            "-41.3 dBm/MHz density limit");
  c.require(band_catalog().size() == 11, "row count (11 as printed)");

  const std::string cli_out = run_cli("dump-datasets");
  if (cli_out.empty()) {
    c.require(false, "cli dump-datasets produced no output");
    return;
  }
  const auto doc = nlohmann::json::parse(cli_out);
  c.require(doc.at("band_catalog") == nlohmann::json::parse(golden),
            "cli catalog matches golden");
}

void criterion_wavelength(Check& c) {
  const double lam_tissue = wavelength_in_tissue(35.0, 2.4e9);
  const double lam_free = wavelength_in_tissue(1.0, 2.4e9);
  c.require(std::abs(lam_free / lam_tissue - 5.916) < 1e-3, "shortening ratio");
}

void criterion_dielectric_engine(Check& c) {
  std::mt19937_64 gen(2026);
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
    const double w = 2.0 * kPi * f;
    std::complex<double> want(eps_inf, 0.0);
    for (const auto& p : poles) {
      const double wt = w * p.tau_s;
      want += std::complex<double>(p.delta_eps / (1.0 + wt * wt),
                                   -p.delta_eps * wt / (1.0 + wt * wt));
    }
    want += std::complex<double>(0.0, -sigma / (w * kEps0));
    const auto got = cole_cole_eps(eps_inf, poles, sigma, f);
    c.require(std::abs(got - want) / std::abs(want) < 1e-12, "Debye reduction");
  }

  std::array<ColeColePole, 4> poles{{{60.0, 8e-12, 0.1},
                                     {500.0, 100e-9, 0.1},
                                     {1e5, 100e-6, 0.1},
                                     {1e7, 10e-3, 0.0}}};
  const auto eps_hi = cole_cole_eps(4.0, poles, 0.5, 1e18);
  c.require(std::abs(eps_hi.real() - 4.0) < 1e-4, "high-frequency limit");

  for (int trial = 0; trial < 100; ++trial) {
    std::array<ColeColePole, 4> ps;
    for (auto& p : ps) {
      p.delta_eps = 1e4 * u(gen);
      p.tau_s = std::pow(10.0, -12.0 + 10.0 * u(gen));
      p.alpha = 0.99 * u(gen);
    }
    const auto eps = cole_cole_eps(1.0 + 80.0 * u(gen), ps, 2.0 * u(gen),
                                   std::pow(10.0, 1.0 + 9.0 * u(gen)));
    c.require(eps.imag() <= 0.0, "Im eps <= 0");
  }

  const auto db =
      TissueDatabase::load_file(source_dir() + "/data/tissue_properties.csv");
  const auto sample = evaluate_permittivity(db.find("muscle"), 915e6);
  const double loss = absorption_loss_db(sample, sample.penetration_depth_m);
  c.require(std::abs(loss - 8.6858896380650) < 1e-6, "one-depth absorption dB");
}

void criterion_layered_conservation(Check& c) {
  std::mt19937_64 gen(424242);
  for (int i = 0; i < 200; ++i) {
    const auto sol = solve_stack(random_lossless_stack(gen));
    const double closure =
        std::norm(sol.input_reflection) + sol.budget.transmitted - 1.0;
    c.require(std::abs(closure) < 1e-9, "lossless |G|^2 + T = 1");
  }

  LayerStack fresnel{{Layer::fixed({1.0, 0.0}, 10e-3),
                      Layer::fixed({4.0, 0.0}, {})},
                     1e9};
  const auto sol = solve_stack(fresnel);
  c.require(std::abs(sol.input_reflection.real() + 1.0 / 3.0) < 1e-15 &&
                std::abs(sol.input_reflection.imag()) < 1e-15,
            "Fresnel 1|4 gives -1/3");

  std::mt19937_64 gen2(777);
  for (int i = 0; i < 100; ++i) {
    const LayerStack fwd = random_lossless_stack(gen2);
    LayerStack rev;
    rev.frequency_hz = fwd.frequency_hz;
    const std::size_t n = fwd.layers.size();
    rev.layers.push_back(Layer{fwd.layers[n - 1].material, 10e-3});
    for (std::size_t j = n - 2; j >= 1; --j) rev.layers.push_back(fwd.layers[j]);
    rev.layers.push_back(Layer{fwd.layers[0].material, std::nullopt});
    c.require(std::abs(std::abs(solve_stack(fwd).input_reflection) -
                       std::abs(solve_stack(rev).input_reflection)) < 1e-9,
              "reciprocity");
  }
}

void criterion_shadowing_sampler(Check& c) {
  const StatisticalA torso{23.56, 2.28, 10.0, 3.38};
  const double mean_expected = mean_path_loss_db(torso, 50.0);
  SeededRng rng(20250809);
  const int n = 100000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double s = sample_path_loss_db(torso, 50.0, rng);
    sum += s;
    sum_sq += s * s;
  }
  const double mean = sum / n;
  const double stddev = std::sqrt(sum_sq / n - mean * mean);
  c.require(std::abs(mean - mean_expected) < 0.1, "sample mean");
  c.require(std::abs(stddev - 3.38) / 3.38 < 0.02, "sample std");

  SeededRng ks_rng(97);
  const int m = 10000;
  std::vector<double> z(m);
  for (auto& v : z)
    v = (sample_path_loss_db(torso, 50.0, ks_rng) - mean_expected) /
        torso.sigma_db;
  std::sort(z.begin(), z.end());
  double d_stat = 0.0;
  for (int i = 0; i < m; ++i) {
    const double cdf = 0.5 * std::erfc(-z[i] / std::sqrt(2.0));
    d_stat = std::max(d_stat, std::abs(cdf - (i + 1.0) / m));
    d_stat = std::max(d_stat, std::abs(cdf - static_cast<double>(i) / m));
  }
  c.require(d_stat < 1.62762 / std::sqrt(static_cast<double>(m)),
            "KS test at alpha = 0.01");
}

void criterion_channel_realization(Check& c) {
  RealizeOptions no_jitter;
  no_jitter.tap_jitter_db = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto real = realize_channel(46.36, 3.38, PdpShape{}, seed, no_jitter);
    const double target = std::pow(10.0, -real.total_path_loss_db / 10.0);
    c.require(std::abs(real.total_linear_gain() - target) / target < 1e-10,
              "tap power normalization");
  }
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const auto real = realize_channel(46.36, 3.38, PdpShape{}, seed);
    for (const auto& tap : real.taps)
      c.require(tap.delay_ns <= 10.0, "tap within 10 ns");
    for (std::size_t i = 2; i < real.taps.size(); ++i) {
      const double dd = real.taps[i].template_db -
                        2.0 * real.taps[i - 1].template_db +
                        real.taps[i - 2].template_db;
      c.require(dd > 0.0, "template convexity");
    }
  }
}

void criterion_sar(Check& c) {
  c.require(compute_sar({0.5, 10.0, 1000.0}) == 0.05, "point SAR exact");
  c.require(check_exposure(1.6, fcc_limit()).compliant, "boundary inclusive");
  c.require(!check_exposure(1.6000001, fcc_limit()).compliant, "just above limit");

  LayerStack lossless{{Layer::fixed({1.0, 0.0}, 10e-3, "a", 1000.0),
                       Layer::fixed({4.0, 0.0}, {}, "b", 1000.0)},
                      915e6};
  const auto profile = sar_profile(solve_stack(lossless), 10.0);
  for (const auto& s : profile)
    c.require(s.sar_w_per_kg == 0.0, "lossless SAR profile zero");
}

void criterion_model_nesting(Check& c) {
  std::mt19937_64 gen(55);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double lam = 0.01 + u(gen);
    const double r = 0.01 + 10.0 * u(gen);
    const double gt = 0.1 + 5.0 * u(gen);
    const double gr = 0.1 + 5.0 * u(gen);
    const double pt = 0.001 + u(gen);
    const double base = received_power(Fspl{{gt, 0.0}, {gr, 0.0}, lam}, pt, r);
    const double degenerate =
        received_power(FsplRlAbsorption{{gt, 0.0}, {gr, 0.0}, lam, 0.0}, pt, r);
    c.require(base == degenerate, "FsplRlAbsorption degenerates to Fspl");
  }
  const double lambda = kSpeedOfLight / 915e6;
  const double pr =
      received_power(Fspl{{1.0, 0.0}, {1.0, 0.0}, lambda}, 1.0, 1.0);
  c.require(std::abs(-10.0 * std::log10(pr) - 31.68) < 0.01,
            "Friis loss at 915 MHz / 1 m");
}

void criterion_cli_determinism(Check& c) {
  const std::string db_flag =
      " --tissue-db \"" + source_dir() + "/data/tissue_properties.csv\"";
  const std::vector<std::string> runs = {
      "--seed 7 channel --mean-pl 46.36 --sigma 3.38",
      "--seed 7 --format json channel --mean-pl 46.36 --sigma 3.38",
      "--seed 11 pathloss --model statA --preset region:overall --depth "
      "10:100:10 --samples 50",
      "--seed 3 --format json pathloss --model statB --pl-d0 40 --exponent 1.8 "
      "--sigma 2 --depth 20:80:4 --samples 25",
  };
  for (const auto& args : runs) {
    int rc1 = 0, rc2 = 0;
    const std::string a = run_cli(args + db_flag, &rc1);
    const std::string b = run_cli(args + db_flag, &rc2);
    c.require(rc1 == 0 && rc2 == 0, "cli exit status for: " + args);
    c.require(!a.empty() && a == b, "byte-identical reruns for: " + args);
  }
}

}  // namespace

int main(int argc, char** argv) {
  g_cli = argc > 1 ? argv[1] : "./vivochan";

  run(1, "fitted-model reproduction (depth model + parameter tables)",
      criterion_fitted_model);
  run(2, "measurement validation residuals", criterion_measurement_validation);
  run(3, "linear frequency trend of the survey averages",
      criterion_frequency_trend);
  run(4, "band catalog golden file", criterion_band_catalog);
  run(5, "in-tissue wavelength shortening", criterion_wavelength);
  run(6, "dielectric engine properties", criterion_dielectric_engine);
  run(7, "layered-media conservation and reciprocity",
      criterion_layered_conservation);
  run(8, "shadowing sampler statistics", criterion_shadowing_sampler);
  run(9, "channel realization contracts", criterion_channel_realization);
  run(10, "SAR formula and compliance boundary", criterion_sar);
  run(11, "model-family nesting and Friis anchor", criterion_model_nesting);
  run(12, "CLI determinism under fixed seeds", criterion_cli_determinism);

  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
