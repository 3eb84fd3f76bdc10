#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "vivochan/dielectric.hpp"
#include "vivochan/tissue_db.hpp"

namespace vivochan {

// Material with a fixed complex permittivity, for synthetic stacks that are
// not tied to a tissue database entry.
struct FixedDielectric {
  std::string name = "fixed";
  std::complex<double> eps{1.0, 0.0};
  double mass_density = 0.0;  // kg/m^3, 0 = not provided
};

struct Layer {
  std::variant<TissueDielectricSpec, FixedDielectric> material;
  // Metres; nullopt marks the terminal semi-infinite layer (last layer only).
  std::optional<double> thickness_m;

  static Layer fixed(std::complex<double> eps, std::optional<double> thickness_m,
                     std::string name = "fixed", double mass_density = 0.0) {
    return Layer{FixedDielectric{std::move(name), eps, mass_density}, thickness_m};
  }
  static Layer tissue(TissueDielectricSpec spec, std::optional<double> thickness_m) {
    return Layer{std::move(spec), thickness_m};
  }
};

// Ordered planar layers, first = source side, last = termination. A finite
// terminal thickness only bounds the sampled field extent; the termination
// is always reflection-free into the last medium.
struct LayerStack {
  std::vector<Layer> layers;
  double frequency_hz = 0.0;
};

struct InterfaceRecord {
  std::complex<double> gamma;         // overall reflection looking right
  double power_transmission_factor;   // net flux past / forward flux before
};

struct FieldSample {
  double z_m;        // absolute position, z = 0 at the source plane
  double magnitude;  // |E| relative to unit incident amplitude
};

// Normalised to unit incident forward flux at the source plane.
struct PowerBudget {
  double incident = 1.0;
  double reflected = 0.0;    // incident minus net flux entering the stack
  double transmitted = 0.0;  // net flux entering the terminal layer
  double absorbed = 0.0;     // dissipated in all finite layers
};

struct PlaneWaveSolution {
  std::complex<double> input_reflection;  // overall Gamma at the first interface
  std::vector<InterfaceRecord> per_interface;
  std::vector<double> layer_attenuation_db;  // power lost to absorption per
                                             // finite layer; terminal entry 0
  std::vector<FieldSample> field_profile;    // interface positions duplicated
  // Half-open sample index range of each layer within field_profile.
  std::vector<std::pair<std::size_t, std::size_t>> layer_sample_range;
  PowerBudget budget;
  double frequency_hz = 0.0;

  // Per-layer wave state kept for SWR and SAR post-processing. Amplitudes
  // are stored at the decaying reference edges (forward at the left edge,
  // backward at the right edge) so thick lossy layers never form growing
  // exponentials.
  struct LayerWave {
    std::string name;
    std::complex<double> forward_left;    // F at the layer's left edge
    std::complex<double> backward_right;  // B at the layer's right edge
    std::complex<double> k;               // complex propagation constant
    std::complex<double> eta;             // complex wave impedance
    double z_left_m = 0.0;
    double extent_m = 0.0;             // sampled extent (thickness, or one
                                       // guided wavelength when semi-infinite)
    bool semi_infinite = false;
    double sigma_eff = 0.0;            // S/m at the stack frequency
    double mass_density = 0.0;         // kg/m^3, 0 = unknown
  };
  std::vector<LayerWave> waves;

  std::complex<double> field_at(std::size_t layer, double zeta_m) const;
};

// Normal-incidence transfer-matrix (wave-impedance recursion) solution of the
// stack. samples_per_layer controls the |E| profile resolution, endpoints
// included. Throws std::invalid_argument for malformed stacks; dielectric
// range errors propagate from evaluate_permittivity.
PlaneWaveSolution solve_stack(const LayerStack& stack, int samples_per_layer = 64);

// max|E|/min|E| inside one layer. Exactly 1 when the layer carries no
// backward wave. Lossless layers use the analytic envelope ratio
// (|F|+|B|)/(|F|-|B|), attained once the layer spans half a guided
// wavelength; lossy layers fall back to the sampled profile extrema.
double standing_wave_ratio(const PlaneWaveSolution& solution, std::size_t layer_index);

// One-way material absorption 20*log10(e) * alpha * distance in dB.
// Throws std::domain_error for negative distance.
double absorption_loss_db(const DielectricSample& sample, double distance_m);
double absorption_loss_db(const TissueDielectricSpec& spec, double frequency_hz,
                          double distance_m);

// Stack description file: {"frequency_hz": f, "layers": [{"tissue": name,
// "thickness_mm": x | null}, ...]}, null thickness only on the last element.
LayerStack load_stack_json(std::istream& in, const TissueDatabase& db);

}  // namespace vivochan
