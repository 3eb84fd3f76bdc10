#pragma once

#include <cstdint>
#include <vector>

#include "vivochan/rng.hpp"

namespace vivochan {

// Tap-gain template, exponential decay towards a floor on the dB scale:
//   gain_db(tau) = first_tap_gain_db - decay_depth_db * (1 - e^{-tau/gamma}).
// Convex in dB, unlike the linear decay of classical indoor/outdoor profiles.
// Defaults keep all significant energy inside the 10 ns excess-delay bound;
// they are engineering choices, not fitted values.
struct PdpShape {
  double first_tap_gain_db = 0.0;    // P0, relative anchor before normalization
  double decay_depth_db = 30.0;      // D, total drop to the floor
  double time_constant_ns = 3.0;     //gamma
  double max_excess_delay_ns = 10.0;
  double tap_spacing_ns = 1.0;

  void validate() const;
};

struct ChannelTap {
  double delay_ns = 0.0;
  double gain_db = 0.0;      // after jitter and normalization
  double template_db = 0.0;  // noiseless template, same normalization shift
};

struct ChannelRealization {
  std::vector<ChannelTap> taps;
  double shadowing_db = 0.0;
  std::uint64_t seed = 0;
  double total_path_loss_db = 0.0;  // mean_pl_db + shadowing_db

  // Summed linear tap power relative to unit transmit power.
  double total_linear_gain() const;
};

struct RealizeOptions {
  double tap_jitter_db = 1.0;
  // Rescale jittered taps back to the shadowed budget so link budgets stay
  // consistent; disable to study jitter-induced total-power variation.
  bool renormalize = true;
};

// Draws shadowing, lays the dB-exponential template over the tap grid,
// jitters each tap and normalizes the summed linear power to
// 10^{-(mean_pl_db + shadowing)/10}. Reproducible per seed. Jittered taps
// never exceed the first tap (clamped; relevant only for jitter comparable
// to the initial template drop).
ChannelRealization realize_channel(double mean_pl_db, double sigma_db,
                                   const PdpShape& shape, std::uint64_t seed,
                                   const RealizeOptions& options = {});

struct FrequencyPoint {
  double freq_ghz = 0.0;
  double pl_db = 0.0;
};

struct FrequencyTrend {
  double slope_db_per_ghz = 0.0;
  double intercept_db = 0.0;
  double r_squared = 0.0;
};

// Ordinary least squares in (GHz, dB) space. Needs at least two distinct
// frequencies; identical frequencies are a degenerate fit.
FrequencyTrend fit_frequency_trend(const std::vector<FrequencyPoint>& points);

struct AngularSample {
  double angle_deg = 0.0;  // in [0, 360)
  double pl_db = 0.0;
};

struct AngularSummary {
  double average_db = 0.0;
  double max_difference_db = 0.0;     // max - min
  double peak_to_average_ratio = 0.0; // max/average, both in dB
};

AngularSummary angular_summary(const std::vector<AngularSample>& samples);

}  // namespace vivochan
