#include "vivochan/layered.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "vivochan/constants.hpp"
#include "vivochan/errors.hpp"

namespace vivochan {

namespace {

struct EvaluatedLayer {
  std::string name;
  std::complex<double> eps;
  std::complex<double> k;    // (w/c) sqrt(eps), Im <= 0
  std::complex<double> eta;  // eta0 / sqrt(eps)
  double sigma_eff = 0.0;
  double mass_density = 0.0;
  std::optional<double> thickness_m;
};

EvaluatedLayer evaluate_layer(const Layer& layer, double frequency_hz) {
  EvaluatedLayer out;
  std::complex<double> eps;
  if (const auto* spec = std::get_if<TissueDielectricSpec>(&layer.material)) {
    const DielectricSample s = evaluate_permittivity(*spec, frequency_hz);
    out.name = spec->tissue_name;
    eps = s.eps_complex;
    out.sigma_eff = s.conductivity_effective;
    out.mass_density = spec->mass_density;
  } else {
    const auto& fixed = std::get<FixedDielectric>(layer.material);
    out.name = fixed.name;
    eps = fixed.eps;
    out.sigma_eff = -2.0 * kPi * frequency_hz * kEps0 * eps.imag();
    out.mass_density = fixed.mass_density;
  }
  if (eps.real() <= 0.0)
    throw std::invalid_argument("layer '" + out.name + "': Re(eps) must be positive");
  const std::complex<double> root = std::sqrt(eps);
  const double w = 2.0 * kPi * frequency_hz;
  out.eps = eps;
  out.k = (w / kSpeedOfLight) * root;
  out.eta = kEta0 / root;
  out.thickness_m = layer.thickness_m;
  return out;
}

// Input impedance of a line section of intrinsic impedance eta, propagation
// constant k and length d, terminated in z_load. An opaque section
// (attenuation beyond ~350 dB) collapses to eta to avoid cosh/sinh overflow.
std::complex<double> transform_impedance(std::complex<double> z_load,
                                         std::complex<double> eta,
                                         std::complex<double> k, double d) {
  const std::complex<double> gd(-k.imag() * d, k.real() * d);  // (jk) d
  if (gd.real() > 40.0) return eta;
  const std::complex<double> ch = std::cosh(gd);
  const std::complex<double> sh = std::sinh(gd);
  return eta * (z_load * ch + eta * sh) / (eta * ch + z_load * sh);
}

// Time-averaged Poynting flux from the complex field amplitudes at a point.
double net_flux(std::complex<double> e, std::complex<double> h) {
  return 0.5 * (e * std::conj(h)).real();
}

double forward_flux(std::complex<double> f, std::complex<double> eta) {
  return 0.5 * std::norm(f) * (1.0 / std::conj(eta)).real();
}

}  // namespace

std::complex<double> PlaneWaveSolution::field_at(std::size_t layer,
                                                 double zeta_m) const {
  const auto& w = waves.at(layer);
  const std::complex<double> jk(-w.k.imag(), w.k.real());
  return w.forward_left * std::exp(-jk * zeta_m) +
         w.backward_right * std::exp(-jk * (w.extent_m - zeta_m));
}

PlaneWaveSolution solve_stack(const LayerStack& stack, int samples_per_layer) {
  const std::size_t n = stack.layers.size();
  if (n < 2) throw std::invalid_argument("stack needs at least 2 layers");
  if (samples_per_layer < 2)
    throw std::invalid_argument("samples_per_layer must be at least 2");
  if (stack.frequency_hz <= 0.0)
    throw std::invalid_argument("stack frequency must be positive");

  std::vector<EvaluatedLayer> layers;
  layers.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& layer = stack.layers[i];
    if (!layer.thickness_m && i + 1 != n)
      throw std::invalid_argument("only the last layer may be semi-infinite");
    if (layer.thickness_m && *layer.thickness_m <= 0.0)
      throw std::invalid_argument("layer thickness must be positive");
    layers.push_back(evaluate_layer(layer, stack.frequency_hz));
  }

  // Overall reflection coefficient looking right at every interface,
  // built by impedance recursion from the termination.
  std::vector<std::complex<double>> z_right(n - 1);
  z_right[n - 2] = layers[n - 1].eta;
  for (std::size_t i = n - 2; i-- > 0;) {
    const auto& m = layers[i + 1];
    z_right[i] = transform_impedance(z_right[i + 1], m.eta, m.k, *m.thickness_m);
  }

  PlaneWaveSolution sol;
  sol.frequency_hz = stack.frequency_hz;
  sol.input_reflection =
      (z_right[0] - layers[0].eta) / (z_right[0] + layers[0].eta);

  std::vector<std::complex<double>> gammas(n - 1);
  for (std::size_t i = 0; i < n - 1; ++i)
    gammas[i] = (z_right[i] - layers[i].eta) / (z_right[i] + layers[i].eta);

  // Left-to-right amplitude propagation. Forward amplitudes are referenced
  // at the left edge and backward amplitudes at the right edge so only
  // decaying exponentials are ever formed.
  sol.waves.resize(n);
  double z_cursor = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    auto& wv = sol.waves[i];
    const auto& ly = layers[i];
    wv.name = ly.name;
    wv.k = ly.k;
    wv.eta = ly.eta;
    wv.sigma_eff = ly.sigma_eff;
    wv.mass_density = ly.mass_density;
    wv.z_left_m = z_cursor;
    wv.semi_infinite = !ly.thickness_m.has_value();
    wv.extent_m = ly.thickness_m ? *ly.thickness_m
                                 : 2.0 * kPi / std::max(ly.k.real(),
                                                        std::numeric_limits<double>::min());
    z_cursor += wv.extent_m;

    if (i == 0) {
      wv.forward_left = 1.0;
    } else {
      const auto& prev = sol.waves[i - 1];
      const std::complex<double> e_b = prev.forward_left *
              std::exp(std::complex<double>(prev.k.imag(), -prev.k.real()) *
                       prev.extent_m) + prev.backward_right;
      const std::complex<double> h_b =
          (prev.forward_left *
               std::exp(std::complex<double>(prev.k.imag(), -prev.k.real()) *
                        prev.extent_m) -
           prev.backward_right) / prev.eta;
      wv.forward_left = 0.5 * (e_b + ly.eta * h_b);
    }
    if (i + 1 < n) {
      const std::complex<double> f_right = wv.forward_left *
          std::exp(std::complex<double>(wv.k.imag(), -wv.k.real()) * wv.extent_m);
      wv.backward_right = gammas[i] * f_right;
    } else {
      wv.backward_right = 0.0;  // reflection-free termination
    }
  }

  // Per-interface records. P_tau = 1 - |Gamma|^2, the fraction of incident
  // power not reflected at the plane; identical to the net/forward Poynting
  // flux ratio for lossless media. (The literal flux ratio picks up E-H
  // cross terms in lossy standing-wave regions and can leave [0, 1].)
  sol.per_interface.resize(n - 1);
  for (std::size_t i = 0; i < n - 1; ++i) {
    double ptau = 1.0 - std::norm(gammas[i]);
    if (ptau < 0.0 && ptau > -1e-9) ptau = 0.0;
    sol.per_interface[i] = InterfaceRecord{gammas[i], ptau};
  }

  // Power budget and per-layer absorption, from each layer's own amplitudes;
  // the telescoped closure then checks flux continuity across interfaces.
  auto layer_flux = [&](std::size_t i, double zeta) {
    const auto& wv = sol.waves[i];
    const std::complex<double> fwd = wv.forward_left *
        std::exp(std::complex<double>(wv.k.imag(), -wv.k.real()) * zeta);
    const std::complex<double> bwd = wv.backward_right *
        std::exp(std::complex<double>(wv.k.imag(), -wv.k.real()) *
                 (wv.extent_m - zeta));
    return net_flux(fwd + bwd, (fwd - bwd) / wv.eta);
  };

  const double incident = forward_flux(sol.waves[0].forward_left, sol.waves[0].eta);
  sol.budget.incident = 1.0;
  const double s_source = layer_flux(0, 0.0);
  sol.budget.reflected = (incident - s_source) / incident;
  sol.budget.transmitted = layer_flux(n - 1, 0.0) / incident;

  sol.layer_attenuation_db.assign(n, 0.0);
  double absorbed = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double s_in = layer_flux(i, 0.0);
    const double s_out = layer_flux(i, sol.waves[i].extent_m);
    absorbed += (s_in - s_out) / incident;
    if (s_in > 0.0 && s_out > 0.0) {
      double att = 10.0 * std::log10(s_in / s_out);
      if (att < 0.0 && att > -1e-9) att = 0.0;
      sol.layer_attenuation_db[i] = att;
    }
  }
  sol.budget.absorbed = absorbed;

  // |E| profile, both endpoints of every layer included.
  sol.field_profile.reserve(n * static_cast<std::size_t>(samples_per_layer));
  sol.layer_sample_range.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& wv = sol.waves[i];
    const std::size_t begin = sol.field_profile.size();
    for (int s = 0; s < samples_per_layer; ++s) {
      const double zeta = wv.extent_m * s / (samples_per_layer - 1);
      sol.field_profile.push_back(
          FieldSample{wv.z_left_m + zeta, std::abs(sol.field_at(i, zeta))});
    }
    sol.layer_sample_range[i] = {begin, sol.field_profile.size()};
  }
  return sol;
}

double standing_wave_ratio(const PlaneWaveSolution& solution,
                           std::size_t layer_index) {
  if (layer_index >= solution.waves.size())
    throw std::out_of_range("standing_wave_ratio: no such layer");
  const auto& wv = solution.waves[layer_index];
  const double f_mag = std::abs(wv.forward_left);
  const double b_mag = std::abs(wv.backward_right);
  if (b_mag <= 1e-12 * f_mag) return 1.0;  // no reflected wave

  const bool lossless = std::abs(wv.k.imag()) <= 1e-15 * std::abs(wv.k.real());
  if (lossless) {
    // analytic envelope; extrema are reached once the layer spans half a
    // guided wavelength
    if (b_mag >= f_mag * (1.0 - 1e-15))
      return std::numeric_limits<double>::infinity();
    return (f_mag + b_mag) / (f_mag - b_mag);
  }
  const auto [begin, end] = solution.layer_sample_range.at(layer_index);
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (std::size_t s = begin; s < end; ++s) {
    lo = std::min(lo, solution.field_profile[s].magnitude);
    hi = std::max(hi, solution.field_profile[s].magnitude);
  }
  return lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
}

double absorption_loss_db(const DielectricSample& sample, double distance_m) {
  if (distance_m < 0.0)
    throw std::domain_error("absorption_loss_db: distance must be non-negative");
  return kNeperToDb * sample.attenuation_np_per_m * distance_m;
}

double absorption_loss_db(const TissueDielectricSpec& spec, double frequency_hz,
                          double distance_m) {
  return absorption_loss_db(evaluate_permittivity(spec, frequency_hz), distance_m);
}

LayerStack load_stack_json(std::istream& in, const TissueDatabase& db) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("stack description: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("frequency_hz") || !doc.contains("layers"))
    throw ParseError("stack description: expected {frequency_hz, layers:[...]}");
  LayerStack stack;
  stack.frequency_hz = doc.at("frequency_hz").get<double>();
  const auto& arr = doc.at("layers");
  if (!arr.is_array() || arr.empty())
    throw ParseError("stack description: layers must be a non-empty array");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& item = arr[i];
    if (!item.is_object() || !item.contains("tissue")) {
      std::ostringstream msg;
      msg << "stack description layer " << i << ": expected {tissue, thickness_mm}";
      throw ParseError(msg.str());
    }
    std::optional<double> thickness;
    if (item.contains("thickness_mm") && !item.at("thickness_mm").is_null()) {
      thickness = item.at("thickness_mm").get<double>() * 1e-3;
    } else if (i + 1 != arr.size()) {
      std::ostringstream msg;
      msg << "stack description layer " << i
          << ": null thickness allowed only on the last layer";
      throw ParseError(msg.str());
    }
    stack.layers.push_back(
        Layer::tissue(db.find(item.at("tissue").get<std::string>()), thickness));
  }
  return stack;
}

}  // namespace vivochan
