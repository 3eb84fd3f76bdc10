#include "vivochan/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vivochan {

void PdpShape::validate() const {
  if (decay_depth_db <= 0.0)
    throw std::invalid_argument("decay_depth_db must be positive");
  if (time_constant_ns <= 0.0)
    throw std::invalid_argument("time_constant_ns must be positive");
  if (max_excess_delay_ns <= 0.0)
    throw std::invalid_argument("max_excess_delay_ns must be positive");
  if (tap_spacing_ns <= 0.0 || tap_spacing_ns > max_excess_delay_ns)
    throw std::invalid_argument("tap_spacing_ns must lie in (0, max_excess_delay_ns]");
}

double ChannelRealization::total_linear_gain() const {
  double sum = 0.0;
  for (const auto& tap : taps) sum += std::pow(10.0, tap.gain_db / 10.0);
  return sum;
}

ChannelRealization realize_channel(double mean_pl_db, double sigma_db,
                                   const PdpShape& shape, std::uint64_t seed,
                                   const RealizeOptions& options) {
  shape.validate();
  if (sigma_db < 0.0) throw std::invalid_argument("sigma_db must be >= 0");
  if (options.tap_jitter_db < 0.0)
    throw std::invalid_argument("tap_jitter_db must be >= 0");

  SeededRng rng(seed);
  ChannelRealization real;
  real.seed = seed;
  real.shadowing_db = sigma_db * rng.gaussian();
  real.total_path_loss_db = mean_pl_db + real.shadowing_db;

  // Tap grid and dB-exponential template.
  for (double delay = 0.0; delay <= shape.max_excess_delay_ns + 1e-12;
       delay += shape.tap_spacing_ns) {
    ChannelTap tap;
    tap.delay_ns = delay;
    tap.template_db = shape.first_tap_gain_db -
                      shape.decay_depth_db *
                          (1.0 - std::exp(-delay / shape.time_constant_ns));
    real.taps.push_back(tap);
  }

  // Shift the template so the summed linear tap power meets the shadowed
  // budget.
  const double target_db = -real.total_path_loss_db;
  auto normalize = [&](auto get, auto set) {
    double sum = 0.0;
    for (auto& tap : real.taps) sum += std::pow(10.0, get(tap) / 10.0);
    const double shift = target_db - 10.0 * std::log10(sum);
    for (auto& tap : real.taps) set(tap, get(tap) + shift);
  };
  normalize([](const ChannelTap& t) { return t.template_db; },
            [](ChannelTap& t, double v) { t.template_db = v; });

  for (auto& tap : real.taps)
    tap.gain_db = tap.template_db + options.tap_jitter_db * rng.gaussian();
  // keep the first tap dominant even under extreme jitter settings
  for (std::size_t i = 1; i < real.taps.size(); ++i)
    real.taps[i].gain_db = std::min(real.taps[i].gain_db, real.taps[0].gain_db);

  if (options.renormalize)
    normalize([](const ChannelTap& t) { return t.gain_db; },
              [](ChannelTap& t, double v) { t.gain_db = v; });
  return real;
}

FrequencyTrend fit_frequency_trend(const std::vector<FrequencyPoint>& points) {
  if (points.size() < 2)
    throw std::invalid_argument("frequency trend fit needs at least 2 points");
  const double n = static_cast<double>(points.size());
  double mean_x = 0.0, mean_y = 0.0;
  for (const auto& p : points) {
    mean_x += p.freq_ghz;
    mean_y += p.pl_db;
  }
  mean_x /= n;
  mean_y /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& p : points) {
    const double dx = p.freq_ghz - mean_x;
    const double dy = p.pl_db - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0)
    throw std::invalid_argument("degenerate fit: all frequencies identical");

  FrequencyTrend trend;
  trend.slope_db_per_ghz = sxy / sxx;
  trend.intercept_db = mean_y - trend.slope_db_per_ghz * mean_x;
  if (syy == 0.0) {
    trend.r_squared = 1.0;  // constant data, zero residuals
  } else {
    double ss_res = 0.0;
    for (const auto& p : points) {
      const double r = p.pl_db - (trend.intercept_db +
                                  trend.slope_db_per_ghz * p.freq_ghz);
      ss_res += r * r;
    }
    trend.r_squared = 1.0 - ss_res / syy;
  }
  return trend;
}

AngularSummary angular_summary(const std::vector<AngularSample>& samples) {
  if (samples.empty())
    throw std::invalid_argument("angular summary needs at least one sample");
  double sum = 0.0;
  double lo = samples.front().pl_db;
  double hi = samples.front().pl_db;
  for (const auto& s : samples) {
    if (s.angle_deg < 0.0 || s.angle_deg >= 360.0)
      throw std::invalid_argument("angles must lie in [0, 360)");
    sum += s.pl_db;
    lo = std::min(lo, s.pl_db);
    hi = std::max(hi, s.pl_db);
  }
  AngularSummary summary;
  summary.average_db = sum / static_cast<double>(samples.size());
  summary.max_difference_db = hi - lo;
  if (summary.average_db == 0.0)
    throw std::domain_error("peak-to-average undefined for zero average");
  summary.peak_to_average_ratio = hi / summary.average_db;
  return summary;
}

}  // namespace vivochan
