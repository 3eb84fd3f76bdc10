// Python bindings for the vivochan core: dielectric evaluation, layered
// stacks, SAR, path-loss models, channel realizations and the regulatory
// catalog.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vivochan/channel.hpp"
#include "vivochan/constants.hpp"
#include "vivochan/datasets.hpp"
#include "vivochan/dielectric.hpp"
#include "vivochan/errors.hpp"
#include "vivochan/exposure.hpp"
#include "vivochan/layered.hpp"
#include "vivochan/pathloss.hpp"
#include "vivochan/regulatory.hpp"
#include "vivochan/rng.hpp"
#include "vivochan/tissue_db.hpp"

namespace py = pybind11;
using namespace vivochan;

namespace {

PresetCatalog catalog_from_string(const std::string& name) {
  if (name == "region") return PresetCatalog::BodyRegion;
  if (name == "side") return PresetCatalog::BodySide;
  throw py::value_error("catalog must be 'region' or 'side'");
}

}  // namespace

PYBIND11_MODULE(vivochan, m) {
  m.doc() = "in-vivo wireless channel modeling toolkit";
  m.attr("__version__") = "0.1.0";
  m.attr("SPEED_OF_LIGHT") = kSpeedOfLight;
  m.attr("EPS0") = kEps0;
  m.attr("ETA0") = kEta0;

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<LookupError>(m, "CatalogLookupError", PyExc_KeyError);

  // --- dielectrics ---------------------------------------------------------
  py::class_<ColeColePole>(m, "ColeColePole")
      .def(py::init<double, double, double>(), py::arg("delta_eps"),
           py::arg("tau_s"), py::arg("alpha") = 0.0)
      .def_readwrite("delta_eps", &ColeColePole::delta_eps)
      .def_readwrite("tau_s", &ColeColePole::tau_s)
      .def_readwrite("alpha", &ColeColePole::alpha);

  py::class_<TissueDielectricSpec>(m, "TissueDielectricSpec")
      .def(py::init<>())
      .def_readwrite("tissue_name", &TissueDielectricSpec::tissue_name)
      .def_readwrite("eps_inf", &TissueDielectricSpec::eps_inf)
      .def_readwrite("poles", &TissueDielectricSpec::poles)
      .def_readwrite("sigma_ionic", &TissueDielectricSpec::sigma_ionic)
      .def_readwrite("valid_min_hz", &TissueDielectricSpec::valid_min_hz)
      .def_readwrite("valid_max_hz", &TissueDielectricSpec::valid_max_hz)
      .def_readwrite("mass_density", &TissueDielectricSpec::mass_density)
      .def("validate", &TissueDielectricSpec::validate);

  py::class_<DielectricSample>(m, "DielectricSample")
      .def_readonly("frequency_hz", &DielectricSample::frequency_hz)
      .def_readonly("eps_complex", &DielectricSample::eps_complex)
      .def_readonly("eps_real", &DielectricSample::eps_real)
      .def_readonly("conductivity_effective",
                    &DielectricSample::conductivity_effective)
      .def_readonly("loss_tangent", &DielectricSample::loss_tangent)
      .def_readonly("penetration_depth_m", &DielectricSample::penetration_depth_m)
      .def_readonly("wavelength_m", &DielectricSample::wavelength_m)
      .def_readonly("attenuation_np_per_m",
                    &DielectricSample::attenuation_np_per_m);

  py::class_<TissueDatabase>(m, "TissueDatabase")
      .def_static("load_file", &TissueDatabase::load_file, py::arg("path"))
      .def("find", &TissueDatabase::find, py::arg("tissue_name"),
           py::return_value_policy::copy)
      .def("contains", &TissueDatabase::contains)
      .def("names", &TissueDatabase::names)
      .def("__len__", &TissueDatabase::size);

  m.def("evaluate_permittivity", &evaluate_permittivity, py::arg("spec"),
        py::arg("frequency_hz"));
  m.def("wavelength_in_tissue", &wavelength_in_tissue, py::arg("eps_real"),
        py::arg("frequency_hz"));

  // --- layered stacks ------------------------------------------------------
  py::class_<Layer>(m, "Layer")
      .def_static(
          "fixed",
          [](std::complex<double> eps, std::optional<double> thickness_m,
             const std::string& name, double rho) {
            return Layer::fixed(eps, thickness_m, name, rho);
          },
          py::arg("eps"), py::arg("thickness_m") = std::nullopt,
          py::arg("name") = "fixed", py::arg("mass_density") = 0.0)
      .def_static(
          "tissue",
          [](const TissueDielectricSpec& spec, std::optional<double> thickness_m) {
            return Layer::tissue(spec, thickness_m);
          },
          py::arg("spec"), py::arg("thickness_m") = std::nullopt);

  py::class_<LayerStack>(m, "LayerStack")
      .def(py::init([](std::vector<Layer> layers, double frequency_hz) {
             return LayerStack{std::move(layers), frequency_hz};
           }),
           py::arg("layers"), py::arg("frequency_hz"))
      .def_readwrite("frequency_hz", &LayerStack::frequency_hz);

  py::class_<InterfaceRecord>(m, "InterfaceRecord")
      .def_readonly("gamma", &InterfaceRecord::gamma)
      .def_readonly("power_transmission_factor",
                    &InterfaceRecord::power_transmission_factor);

  py::class_<FieldSample>(m, "FieldSample")
      .def_readonly("z_m", &FieldSample::z_m)
      .def_readonly("magnitude", &FieldSample::magnitude);

  py::class_<PowerBudget>(m, "PowerBudget")
      .def_readonly("incident", &PowerBudget::incident)
      .def_readonly("reflected", &PowerBudget::reflected)
      .def_readonly("transmitted", &PowerBudget::transmitted)
      .def_readonly("absorbed", &PowerBudget::absorbed);

  py::class_<PlaneWaveSolution>(m, "PlaneWaveSolution")
      .def_readonly("input_reflection", &PlaneWaveSolution::input_reflection)
      .def_readonly("per_interface", &PlaneWaveSolution::per_interface)
      .def_readonly("layer_attenuation_db",
                    &PlaneWaveSolution::layer_attenuation_db)
      .def_readonly("field_profile", &PlaneWaveSolution::field_profile)
      .def_readonly("budget", &PlaneWaveSolution::budget)
      .def_readonly("frequency_hz", &PlaneWaveSolution::frequency_hz);

  m.def("solve_stack", &solve_stack, py::arg("stack"),
        py::arg("samples_per_layer") = 64);
  m.def("standing_wave_ratio", &standing_wave_ratio, py::arg("solution"),
        py::arg("layer_index"));
  m.def(
      "absorption_loss_db",
      [](const DielectricSample& s, double d) { return absorption_loss_db(s, d); },
      py::arg("sample"), py::arg("distance_m"));
  m.def(
      "absorption_loss_db",
      [](const TissueDielectricSpec& s, double f, double d) {
        return absorption_loss_db(s, f, d);
      },
      py::arg("spec"), py::arg("frequency_hz"), py::arg("distance_m"));

  // --- exposure ------------------------------------------------------------
  py::class_<ExposureLimit>(m, "ExposureLimit")
      .def(py::init([](double limit, double mass_g, const std::string& authority) {
             return ExposureLimit{limit, mass_g, authority};
           }),
           py::arg("limit_w_per_kg"), py::arg("averaging_mass_g") = 1.0,
           py::arg("authority") = "user")
      .def_readonly("limit_w_per_kg", &ExposureLimit::limit_w_per_kg)
      .def_readonly("averaging_mass_g", &ExposureLimit::averaging_mass_g)
      .def_readonly("authority", &ExposureLimit::authority);

  py::class_<ComplianceVerdict>(m, "ComplianceVerdict")
      .def_readonly("compliant", &ComplianceVerdict::compliant)
      .def_readonly("margin_db", &ComplianceVerdict::margin_db);

  py::class_<SarSample>(m, "SarSample")
      .def_readonly("z_m", &SarSample::z_m)
      .def_readonly("sar_w_per_kg", &SarSample::sar_w_per_kg)
      .def_readonly("layer_index", &SarSample::layer_index);

  m.def("fcc_limit", &fcc_limit);
  m.def(
      "compute_sar",
      [](double conductivity, double e_field_rms, double mass_density) {
        return compute_sar({conductivity, e_field_rms, mass_density});
      },
      py::arg("conductivity"), py::arg("e_field_rms"), py::arg("mass_density"));
  m.def(
      "check_exposure",
      [](double sar, std::optional<ExposureLimit> limit) {
        return check_exposure(sar, limit.value_or(fcc_limit()));
      },
      py::arg("sar_w_per_kg"), py::arg("limit") = std::nullopt);
  m.def("sar_profile", &sar_profile, py::arg("solution"),
        py::arg("incident_power_density"));

  // --- path loss -----------------------------------------------------------
  py::class_<AntennaPort>(m, "AntennaPort")
      .def(py::init<double, double>(), py::arg("gain_linear") = 1.0,
           py::arg("reflection_mag") = 0.0)
      .def_readwrite("gain_linear", &AntennaPort::gain_linear)
      .def_readwrite("reflection_mag", &AntennaPort::reflection_mag);

  py::class_<Fspl>(m, "Fspl")
      .def(py::init([](AntennaPort tx, AntennaPort rx, double wavelength_m) {
             return Fspl{tx, rx, wavelength_m};
           }),
           py::arg("tx") = AntennaPort{}, py::arg("rx") = AntennaPort{},
           py::arg("wavelength_m") = 0.0);

  py::class_<FsplWithRl>(m, "FsplWithRl")
      .def(py::init([](AntennaPort tx, AntennaPort rx, double wavelength_m) {
             return FsplWithRl{tx, rx, wavelength_m};
           }),
           py::arg("tx") = AntennaPort{}, py::arg("rx") = AntennaPort{},
           py::arg("wavelength_m") = 0.0);

  py::class_<FsplRlAbsorption>(m, "FsplRlAbsorption")
      .def(py::init([](AntennaPort tx, AntennaPort rx, double wavelength_m,
                       double attenuation_np_per_m) {
             return FsplRlAbsorption{tx, rx, wavelength_m, attenuation_np_per_m};
           }),
           py::arg("tx") = AntennaPort{}, py::arg("rx") = AntennaPort{},
           py::arg("wavelength_m") = 0.0, py::arg("attenuation_np_per_m") = 0.0);

  py::class_<PmbaNearField>(m, "PmbaNearField")
      .def(py::init([](double delta, double p_nf_w, double largest_dim_m,
                       double effective_aperture_m2) {
             return PmbaNearField{delta, p_nf_w, largest_dim_m,
                                  effective_aperture_m2};
           }),
           py::arg("delta"), py::arg("p_nf_w"), py::arg("largest_dim_m"),
           py::arg("effective_aperture_m2"));

  py::class_<PmbaFarField>(m, "PmbaFarField")
      .def(py::init([](double p_nf_w, double p_ff_w, double wavelength_m,
                       double tx_gain, double rx_gain) {
             return PmbaFarField{p_nf_w, p_ff_w, wavelength_m, tx_gain, rx_gain};
           }),
           py::arg("p_nf_w"), py::arg("p_ff_w"), py::arg("wavelength_m"),
           py::arg("tx_gain") = 1.0, py::arg("rx_gain") = 1.0);

  py::class_<StatisticalA>(m, "StatisticalA")
      .def(py::init([](double pl0_db, double slope_db, double d0_mm,
                       double sigma_db) {
             return StatisticalA{pl0_db, slope_db, d0_mm, sigma_db};
           }),
           py::arg("pl0_db"), py::arg("slope_db"), py::arg("d0_mm") = 10.0,
           py::arg("sigma_db") = 0.0)
      .def_readwrite("pl0_db", &StatisticalA::pl0_db)
      .def_readwrite("slope_db", &StatisticalA::slope_db)
      .def_readwrite("d0_mm", &StatisticalA::d0_mm)
      .def_readwrite("sigma_db", &StatisticalA::sigma_db);

  py::class_<StatisticalB>(m, "StatisticalB")
      .def(py::init([](double pl_d0_db, double exponent, double d0_mm,
                       double sigma_db) {
             return StatisticalB{pl_d0_db, exponent, d0_mm, sigma_db};
           }),
           py::arg("pl_d0_db"), py::arg("exponent"), py::arg("d0_mm") = 10.0,
           py::arg("sigma_db") = 0.0);

  py::class_<SeededRng>(m, "SeededRng")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def("uniform", &SeededRng::uniform)
      .def("gaussian", &SeededRng::gaussian);

  m.def("received_power", &received_power, py::arg("model"),
        py::arg("tx_power_w"), py::arg("range"));
  m.def("mean_path_loss_db",
        py::overload_cast<const PathLossModel&, double>(&mean_path_loss_db),
        py::arg("model"), py::arg("depth_mm"));
  m.def("sample_path_loss_db",
        py::overload_cast<const PathLossModel&, double, SeededRng&>(
            &sample_path_loss_db),
        py::arg("model"), py::arg("depth_mm"), py::arg("rng"));

  py::class_<FittedParameterSet>(m, "FittedParameterSet")
      .def_readonly("label", &FittedParameterSet::label)
      .def_readonly("pl0_db", &FittedParameterSet::pl0_db)
      .def_readonly("slope", &FittedParameterSet::slope)
      .def_readonly("sigma_db", &FittedParameterSet::sigma_db);

  m.def("body_region_parameters", &body_region_parameters,
        py::return_value_policy::copy);
  m.def("body_side_parameters", &body_side_parameters,
        py::return_value_policy::copy);
  m.def(
      "builtin_parameters",
      [](const std::string& catalog, const std::string& label) {
        return builtin_parameters(catalog_from_string(catalog), label);
      },
      py::arg("catalog"), py::arg("label"));
  m.def("to_statistical_a", &to_statistical_a, py::arg("params"));

  py::class_<PathLossMeasurement>(m, "PathLossMeasurement")
      .def(py::init([](const std::string& label, double depth_mm, double pl_db) {
             return PathLossMeasurement{label, depth_mm, pl_db};
           }),
           py::arg("label"), py::arg("depth_mm"), py::arg("pl_db"))
      .def_readonly("label", &PathLossMeasurement::label)
      .def_readonly("depth_mm", &PathLossMeasurement::depth_mm)
      .def_readonly("pl_db", &PathLossMeasurement::pl_db);

  py::class_<ResidualRow>(m, "ResidualRow")
      .def_readonly("label", &ResidualRow::label)
      .def_readonly("depth_mm", &ResidualRow::depth_mm)
      .def_readonly("measured_db", &ResidualRow::measured_db)
      .def_readonly("predicted_db", &ResidualRow::predicted_db)
      .def_readonly("residual_db", &ResidualRow::residual_db)
      .def_readonly("error", &ResidualRow::error);

  py::class_<ResidualReport>(m, "ResidualReport")
      .def_readonly("rows", &ResidualReport::rows)
      .def_readonly("mean_abs_residual_db", &ResidualReport::mean_abs_residual_db)
      .def_readonly("max_abs_residual_db", &ResidualReport::max_abs_residual_db)
      .def_readonly("valid_rows", &ResidualReport::valid_rows);

  m.def("cadaver_measurements", &cadaver_measurements,
        py::return_value_policy::copy);
  m.def("validate_against_measurements", &validate_against_measurements,
        py::arg("model"), py::arg("measurements"));

  // --- channel -------------------------------------------------------------
  py::class_<PdpShape>(m, "PdpShape")
      .def(py::init([](double p0, double decay, double gamma, double max_delay,
                       double spacing) {
             return PdpShape{p0, decay, gamma, max_delay, spacing};
           }),
           py::arg("first_tap_gain_db") = 0.0, py::arg("decay_depth_db") = 30.0,
           py::arg("time_constant_ns") = 3.0,
           py::arg("max_excess_delay_ns") = 10.0, py::arg("tap_spacing_ns") = 1.0)
      .def_readwrite("first_tap_gain_db", &PdpShape::first_tap_gain_db)
      .def_readwrite("decay_depth_db", &PdpShape::decay_depth_db)
      .def_readwrite("time_constant_ns", &PdpShape::time_constant_ns)
      .def_readwrite("max_excess_delay_ns", &PdpShape::max_excess_delay_ns)
      .def_readwrite("tap_spacing_ns", &PdpShape::tap_spacing_ns);

  py::class_<ChannelTap>(m, "ChannelTap")
      .def_readonly("delay_ns", &ChannelTap::delay_ns)
      .def_readonly("gain_db", &ChannelTap::gain_db)
      .def_readonly("template_db", &ChannelTap::template_db);

  py::class_<ChannelRealization>(m, "ChannelRealization")
      .def_readonly("taps", &ChannelRealization::taps)
      .def_readonly("shadowing_db", &ChannelRealization::shadowing_db)
      .def_readonly("seed", &ChannelRealization::seed)
      .def_readonly("total_path_loss_db", &ChannelRealization::total_path_loss_db)
      .def("total_linear_gain", &ChannelRealization::total_linear_gain);

  m.def(
      "realize_channel",
      [](double mean_pl_db, double sigma_db, const PdpShape& shape,
         std::uint64_t seed, double tap_jitter_db, bool renormalize) {
        RealizeOptions opt;
        opt.tap_jitter_db = tap_jitter_db;
        opt.renormalize = renormalize;
        return realize_channel(mean_pl_db, sigma_db, shape, seed, opt);
      },
      py::arg("mean_pl_db"), py::arg("sigma_db"), py::arg("shape") = PdpShape{},
      py::arg("seed") = 0, py::arg("tap_jitter_db") = 1.0,
      py::arg("renormalize") = true);

  py::class_<FrequencyTrend>(m, "FrequencyTrend")
      .def_readonly("slope_db_per_ghz", &FrequencyTrend::slope_db_per_ghz)
      .def_readonly("intercept_db", &FrequencyTrend::intercept_db)
      .def_readonly("r_squared", &FrequencyTrend::r_squared);

  m.def(
      "fit_frequency_trend",
      [](const std::vector<std::pair<double, double>>& points) {
        std::vector<FrequencyPoint> fp;
        fp.reserve(points.size());
        for (const auto& [f, pl] : points) fp.push_back({f, pl});
        return fit_frequency_trend(fp);
      },
      py::arg("points"));

  py::class_<AngularSummary>(m, "AngularSummary")
      .def_readonly("average_db", &AngularSummary::average_db)
      .def_readonly("max_difference_db", &AngularSummary::max_difference_db)
      .def_readonly("peak_to_average_ratio",
                    &AngularSummary::peak_to_average_ratio);

  m.def(
      "angular_summary",
      [](const std::vector<std::pair<double, double>>& samples) {
        std::vector<AngularSample> as;
        as.reserve(samples.size());
        for (const auto& [deg, pl] : samples) as.push_back({deg, pl});
        return angular_summary(as);
      },
      py::arg("samples"));

  // --- regulatory ----------------------------------------------------------
  py::enum_<BandMethod>(m, "BandMethod")
      .value("NARROW_BAND", BandMethod::NarrowBand)
      .value("UWB", BandMethod::Uwb)
      .value("HBC", BandMethod::Hbc);

  py::class_<EirpLimit>(m, "EirpLimit")
      .def_readonly("value", &EirpLimit::value)
      .def_readonly("unit", &EirpLimit::unit)
      .def_readonly("authority", &EirpLimit::authority)
      .def_readonly("as_printed", &EirpLimit::as_printed);

  py::class_<BandSpec>(m, "BandSpec")
      .def_readonly("id", &BandSpec::id)
      .def_readonly("method", &BandSpec::method)
      .def_readonly("f_low_hz", &BandSpec::f_low_hz)
      .def_readonly("f_high_hz", &BandSpec::f_high_hz)
      .def_readonly("channel_bw_hz", &BandSpec::channel_bw_hz)
      .def_readonly("eirp_limit", &BandSpec::eirp_limit);

  py::enum_<EirpStatus>(m, "EirpStatus")
      .value("COMPLIANT", EirpStatus::Compliant)
      .value("EXCEEDS", EirpStatus::Exceeds)
      .value("NOT_REGULATED", EirpStatus::NotRegulated);

  py::class_<EirpVerdict>(m, "EirpVerdict")
      .def_readonly("status", &EirpVerdict::status)
      .def_readonly("margin_db", &EirpVerdict::margin_db)
      .def_readonly("warning", &EirpVerdict::warning);

  m.def("band_catalog", &band_catalog, py::return_value_policy::copy);
  m.def("find_band", &find_band, py::arg("id"), py::return_value_policy::copy);
  m.def("classify_frequency", &classify_frequency, py::arg("f_hz"));
  m.def(
      "check_eirp",
      [](double eirp_dbm, const std::string& band_id,
         std::optional<double> bandwidth_hz) {
        return check_eirp(eirp_dbm, find_band(band_id), bandwidth_hz);
      },
      py::arg("eirp_dbm"), py::arg("band_id"),
      py::arg("bandwidth_hz") = std::nullopt);

  m.def("dbm_to_watt", &dbm_to_watt);
  m.def("watt_to_dbm", &watt_to_dbm);

  py::class_<LinkBudgetReport>(m, "LinkBudgetReport")
      .def_readonly("tx_power_dbm", &LinkBudgetReport::tx_power_dbm)
      .def_readonly("eirp_dbm", &LinkBudgetReport::eirp_dbm)
      .def_readonly("path_loss_db", &LinkBudgetReport::path_loss_db)
      .def_readonly("rx_power_dbm", &LinkBudgetReport::rx_power_dbm)
      .def_readonly("sensitivity_dbm", &LinkBudgetReport::sensitivity_dbm)
      .def_readonly("link_margin_db", &LinkBudgetReport::link_margin_db)
      .def_readonly("gains_model_internal",
                    &LinkBudgetReport::gains_model_internal)
      .def_readonly("feasible", &LinkBudgetReport::feasible)
      .def_readonly("band_id", &LinkBudgetReport::band_id)
      .def_readonly("band_compliance", &LinkBudgetReport::band_compliance)
      .def_readonly("sar_compliance", &LinkBudgetReport::sar_compliance);

  m.def(
      "link_budget",
      [](double tx_power_dbm, const PathLossModel& model,
         double distance_or_depth, double sensitivity_dbm,
         std::optional<std::string> band_id, std::optional<double> bandwidth_hz,
         double tx_gain_db, double rx_gain_db, std::optional<double> sar) {
        LinkBudgetOptions opt;
        opt.band_id = std::move(band_id);
        opt.bandwidth_hz = bandwidth_hz;
        opt.tx_gain_db = tx_gain_db;
        opt.rx_gain_db = rx_gain_db;
        opt.sar_w_per_kg = sar;
        return link_budget(tx_power_dbm, model, distance_or_depth,
                           sensitivity_dbm, opt);
      },
      py::arg("tx_power_dbm"), py::arg("model"), py::arg("distance_or_depth"),
      py::arg("sensitivity_dbm"), py::arg("band_id") = std::nullopt,
      py::arg("bandwidth_hz") = std::nullopt, py::arg("tx_gain_db") = 0.0,
      py::arg("rx_gain_db") = 0.0, py::arg("sar_w_per_kg") = std::nullopt);

  // --- datasets ------------------------------------------------------------
  py::class_<AngularFrequencyStats>(m, "AngularFrequencyStats")
      .def_readonly("freq_ghz", &AngularFrequencyStats::freq_ghz)
      .def_readonly("average_db", &AngularFrequencyStats::average_db)
      .def_readonly("max_difference_db", &AngularFrequencyStats::max_difference_db)
      .def_readonly("peak_to_average_ratio",
                    &AngularFrequencyStats::peak_to_average_ratio);

  m.def("angular_frequency_stats", &angular_frequency_stats,
        py::return_value_policy::copy);
  m.def("dump_band_catalog_json", &dump_band_catalog_json);
  m.def("dump_datasets_json", &dump_datasets_json);
}
