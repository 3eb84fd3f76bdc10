#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "vivochan/rng.hpp"

namespace vivochan {

struct AntennaPort {
  double gain_linear = 1.0;    // G_t or G_r
  double reflection_mag = 0.0; // |S11| or |S22|, in [0, 1]
};

// --- Analytical model family ----------------------------------------------
// Far-field Friis transmission: P_r = P_t G_t G_r (lambda / 4 pi R)^2.
struct Fspl {
  AntennaPort tx, rx;  // reflection_mag ignored
  double wavelength_m = 0.0;
};

// Friis including the (1 - |S|^2) return-loss efficiency of both ports.
struct FsplWithRl {
  AntennaPort tx, rx;
  double wavelength_m = 0.0;
};

// Friis with return loss and two-way tissue absorption (e^{-aR})^2.
struct FsplRlAbsorption {
  AntennaPort tx, rx;
  double wavelength_m = 0.0;
  double attenuation_np_per_m = 0.0;  // field attenuation constant a
};

// Near-field absorption-based model: P_rn = 16 delta (P_t - P_NF) A_e / (pi L^2).
// Distance-independent.
struct PmbaNearField {
  double delta = 1.0;                 // A_e / A
  double p_nf_w = 0.0;                // near-field loss
  double largest_dim_m = 0.0;         // L
  double effective_aperture_m2 = 0.0; // A_e
};

// Far-field companion: P_rf = (P_t - P_NF - P_FF) lambda^2 G_t G_r / (4 pi R^2),
// implemented exactly as published. No automatic near/far crossover; the
// caller picks the variant.
struct PmbaFarField {
  double p_nf_w = 0.0;
  double p_ff_w = 0.0;
  double wavelength_m = 0.0;
  double tx_gain = 1.0;
  double rx_gain = 1.0;
};

// --- Fitted statistical family ---------------------------------------------
// Depth-linear model PL(d) = PL0 + slope * (d/d0) + S, d and d0 in mm,
// S ~ Normal(0, sigma_db^2) in dB (log-normal in linear power).
struct StatisticalA {
  double pl0_db = 0.0;
  double slope_db = 0.0;   // dB per unit depth ratio
  double d0_mm = 10.0;
  double sigma_db = 0.0;
};

// Log-distance model PL(d) = PL(d0) + 10 n log10(d/d0) + S.
struct StatisticalB {
  double pl_d0_db = 0.0;
  double exponent = 0.0;   // n
  double d0_mm = 10.0;
  double sigma_db = 0.0;
};

using PathLossModel = std::variant<Fspl, FsplWithRl, FsplRlAbsorption,
                                   PmbaNearField, PmbaFarField,
                                   StatisticalA, StatisticalB>;

// Received power in watts. `range` is metres for the far-field analytical
// variants (must be > 0), unused by PmbaNearField, and depth in millimetres
// for the statistical variants (which contribute their deterministic mean).
// Throws std::domain_error on bad geometry or a near-field power deficit,
// std::invalid_argument on parameter invariant violations.
double received_power(const PathLossModel& model, double tx_power_w, double range);

// Deterministic part of the fitted models (shadowing excluded). Depth below
// the reference depth d0 is a domain error, not an extrapolation.
double mean_path_loss_db(const StatisticalA& model, double depth_mm);
double mean_path_loss_db(const StatisticalB& model, double depth_mm);
double mean_path_loss_db(const PathLossModel& model, double depth_mm);

// Mean plus one shadowing draw. The caller owns the generator; the library
// keeps no hidden RNG state.
double sample_path_loss_db(const StatisticalA& model, double depth_mm, SeededRng& rng);
double sample_path_loss_db(const StatisticalB& model, double depth_mm, SeededRng& rng);
double sample_path_loss_db(const PathLossModel& model, double depth_mm, SeededRng& rng);

// --- Published parameter sets ----------------------------------------------
struct FittedParameterSet {
  std::string label;
  double pl0_db = 0.0;
  double slope = 0.0;     // decay rate m (equivalently n of the depth model)
  double sigma_db = 0.0;  // shadowing standard deviation in dB
};

enum class PresetCatalog { BodyRegion, BodySide };

const std::vector<FittedParameterSet>& body_region_parameters();
const std::vector<FittedParameterSet>& body_side_parameters();

// Case- and punctuation-insensitive label lookup ("Stomach-kidneys",
// "stomach kidneys" and "stomach-kidneys" all match). "overall" and
// "overall-torso" alias the "Overall torso area" row. Unknown labels raise
// LookupError listing the valid ones.
FittedParameterSet builtin_parameters(PresetCatalog catalog, std::string_view label);

// Depth-linear model for a fitted row (reference depth 10 mm).
StatisticalA to_statistical_a(const FittedParameterSet& params);

// --- Measurement validation --------------------------------------------------
struct PathLossMeasurement {
  std::string label;
  double depth_mm = 0.0;
  double pl_db = 0.0;
};

// Cadaver measurement set embedded for validation.
const std::vector<PathLossMeasurement>& cadaver_measurements();

struct ResidualRow {
  std::string label;
  double depth_mm = 0.0;
  double measured_db = 0.0;
  double predicted_db = 0.0;     // valid only when error is empty
  double residual_db = 0.0;      // measured - predicted
  std::string error;             // non-empty = row excluded from the summary
};

struct ResidualReport {
  std::vector<ResidualRow> rows;
  double mean_abs_residual_db = 0.0;
  double max_abs_residual_db = 0.0;
  std::size_t valid_rows = 0;
};

ResidualReport validate_against_measurements(
    const PathLossModel& model, const std::vector<PathLossMeasurement>& measurements);

}  // namespace vivochan
