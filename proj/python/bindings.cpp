#include "sfwm/config.hpp"
#include "sfwm/csv.hpp"
#include "sfwm/estimation.hpp"
#include "sfwm/montecarlo.hpp"
#include "sfwm/noise.hpp"
#include "sfwm/pairgen.hpp"
#include "sfwm/quantities.hpp"
#include "sfwm/resonator.hpp"
#include "sfwm/rng.hpp"
#include "sfwm/version.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <optional>

namespace py = pybind11;
using namespace pybind11::literals;

namespace
{

sfwm::XYSeries make_series(const std::vector<double> &x, const std::vector<double> &y,
                           const std::optional<std::vector<double>> &y_uncertainty)
{
    if (x.size() != y.size() || (y_uncertainty && y_uncertainty->size() != x.size()))
    {
        throw sfwm::ValidationError("x, y (and uncertainties) must have equal length");
    }
    sfwm::XYSeries series;
    series.points.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        if (y_uncertainty)
        {
            series.add(x[i], y[i], (*y_uncertainty)[i]);
        }
        else
        {
            series.add(x[i], y[i]);
        }
    }
    return series;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Microring SFWM photon-pair source model, Monte Carlo simulator and estimators";
    m.attr("__version__") = sfwm::kVersion;
    m.attr("rng_algorithm") = std::string(sfwm::kRngAlgorithm);

    py::register_exception<sfwm::ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<sfwm::DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<sfwm::FitError>(m, "FitError", PyExc_RuntimeError);
    py::register_exception<sfwm::IoError>(m, "IoError", PyExc_OSError);

    // quantities
    m.def(
        "db_loss_to_transmittance",
        [](double db) { return sfwm::db_loss_to_transmittance(sfwm::DbLoss(db)).value(); },
        "loss_db"_a);
    m.def(
        "transmittance_to_db_loss",
        [](double t) { return sfwm::transmittance_to_db_loss(sfwm::Transmittance(t)).db(); },
        "transmittance"_a);
    m.def(
        "wavelength_to_angular_frequency",
        [](double wavelength_m)
        { return sfwm::wavelength_to_angular_frequency(wavelength_m).rad_per_s(); },
        "wavelength_m"_a);

    // resonator
    py::enum_<sfwm::CouplingBranch>(m, "CouplingBranch")
        .value("under_coupled", sfwm::CouplingBranch::under_coupled)
        .value("critical", sfwm::CouplingBranch::critical)
        .value("over_coupled", sfwm::CouplingBranch::over_coupled);

    py::class_<sfwm::RingGeometry>(m, "RingGeometry")
        .def(py::init<>())
        .def_readwrite("radius_m", &sfwm::RingGeometry::radius_m)
        .def_readwrite("group_index", &sfwm::RingGeometry::group_index)
        .def_readwrite("effective_area_m2", &sfwm::RingGeometry::effective_area_m2)
        .def("circumference_m", &sfwm::RingGeometry::circumference_m)
        .def("group_velocity_m_per_s", &sfwm::RingGeometry::group_velocity_m_per_s);

    m.def("loaded_q", &sfwm::loaded_q, "q_intrinsic"_a, "q_coupling"_a);
    m.def(
        "transmission_dip",
        [](double detuning_hz, double nu0_hz, double q_loaded, double t_min)
        {
            const sfwm::ResonatorParams params = sfwm::make_resonator_params(
                nu0_hz, 2.0 * q_loaded, 2.0 * q_loaded, sfwm::Transmittance(t_min));
            return sfwm::transmission_dip(detuning_hz, params).value();
        },
        "detuning_hz"_a, "nu0_hz"_a, "q_loaded"_a, "t_min"_a);
    m.def("intrinsic_loss_db_per_cm", &sfwm::intrinsic_loss_db_per_cm, "q_intrinsic"_a,
          "wavelength_m"_a, "group_index"_a);
    m.def("linewidth_hz", &sfwm::linewidth_hz, "q_loaded"_a, "wavelength_m"_a);
    m.def("photon_lifetime_s", &sfwm::photon_lifetime_s, "q_loaded"_a, "wavelength_m"_a);
    m.def("field_buildup", &sfwm::field_buildup, "q_loaded"_a, "wavelength_m"_a, "geometry"_a);
    m.def("intrinsic_q_from_fit", &sfwm::intrinsic_q_from_fit, "q_loaded"_a, "t_min"_a,
          "branch"_a = sfwm::CouplingBranch::critical);

    // device config
    py::class_<sfwm::NoiseParams>(m, "NoiseParams")
        .def(py::init<>())
        .def_readwrite("raman_coefficient_per_w", &sfwm::NoiseParams::raman_coefficient_per_w)
        .def_readwrite("raman_detuning_hz", &sfwm::NoiseParams::raman_detuning_hz)
        .def_readwrite("temperature_k", &sfwm::NoiseParams::temperature_k)
        .def_readwrite("dark_counts_signal_per_s", &sfwm::NoiseParams::dark_counts_signal_per_s)
        .def_readwrite("dark_counts_idler_per_s", &sfwm::NoiseParams::dark_counts_idler_per_s);

    py::class_<sfwm::DetectionChain>(m, "DetectionChain")
        .def(py::init<>())
        .def_property(
            "eta_s_db",
            [](const sfwm::DetectionChain &c) { return c.collection_loss_signal.db(); },
            [](sfwm::DetectionChain &c, double db) { c.collection_loss_signal = sfwm::DbLoss(db); })
        .def_property(
            "eta_i_db",
            [](const sfwm::DetectionChain &c) { return c.collection_loss_idler.db(); },
            [](sfwm::DetectionChain &c, double db) { c.collection_loss_idler = sfwm::DbLoss(db); })
        .def_readwrite("coincidence_window_s", &sfwm::DetectionChain::coincidence_window_s)
        .def_readwrite("detector_jitter_fwhm_s", &sfwm::DetectionChain::detector_jitter_fwhm_s)
        .def_readwrite("detector_qe", &sfwm::DetectionChain::detector_qe)
        .def_readwrite("dead_time_s", &sfwm::DetectionChain::dead_time_s);

    py::class_<sfwm::ResonatorParams>(m, "ResonatorParams")
        .def(py::init<>())
        .def_readwrite("resonance_frequency_hz", &sfwm::ResonatorParams::resonance_frequency_hz)
        .def_readwrite("q_intrinsic", &sfwm::ResonatorParams::q_intrinsic)
        .def_readwrite("q_coupling", &sfwm::ResonatorParams::q_coupling)
        .def_readwrite("q_loaded", &sfwm::ResonatorParams::q_loaded)
        .def_property(
            "extinction", [](const sfwm::ResonatorParams &p) { return p.extinction.value(); },
            [](sfwm::ResonatorParams &p, double value)
            { p.extinction = sfwm::Transmittance(value); });

    py::class_<sfwm::DeviceConfig>(m, "DeviceConfig")
        .def(py::init<>())
        .def_readwrite("description", &sfwm::DeviceConfig::description)
        .def_readwrite("geometry", &sfwm::DeviceConfig::geometry)
        .def_readwrite("resonator", &sfwm::DeviceConfig::resonator)
        .def_readwrite("pump_wavelength_m", &sfwm::DeviceConfig::pump_wavelength_m)
        .def_readwrite("signal_wavelength_m", &sfwm::DeviceConfig::signal_wavelength_m)
        .def_readwrite("idler_wavelength_m", &sfwm::DeviceConfig::idler_wavelength_m)
        .def_readwrite("nonlinear_index_m2_per_w", &sfwm::DeviceConfig::nonlinear_index_m2_per_w)
        .def_readwrite("noise", &sfwm::DeviceConfig::noise)
        .def_readwrite("chain", &sfwm::DeviceConfig::chain)
        .def("gamma_per_w_m", &sfwm::DeviceConfig::gamma_per_w_m)
        .def("validate", &sfwm::DeviceConfig::validate)
        .def("validation_warnings", &sfwm::DeviceConfig::validation_warnings)
        .def("to_json", &sfwm::device_config_to_json);

    m.def("load_device_config", &sfwm::load_device_config, "path"_a);
    m.def("save_device_config", &sfwm::save_device_config, "path"_a, "config"_a);
    m.def("device_config_from_json_text", &sfwm::device_config_from_json_text, "json_text"_a);

    // pairgen
    m.def("nonlinear_parameter", &sfwm::nonlinear_parameter, "nonlinear_index_m2_per_w"_a,
          "pump_wavelength_m"_a, "effective_area_m2"_a);
    m.def("sfwm_power_w", &sfwm::sfwm_power_w, "device"_a, "pump_power_w"_a);
    m.def("pair_generation_rate", &sfwm::pair_generation_rate, "device"_a, "pump_power_w"_a);
    m.def(
        "infer_generation_rate",
        [](double cc_rate, double eta_s_db, double eta_i_db)
        {
            return sfwm::infer_generation_rate(cc_rate, sfwm::DbLoss(eta_s_db),
                                               sfwm::DbLoss(eta_i_db));
        },
        "cc_rate_per_s"_a, "eta_s_db"_a, "eta_i_db"_a);

    // noise model
    m.def("thermal_occupancy", &sfwm::thermal_occupancy, "detuning_hz"_a, "temperature_k"_a);
    m.def(
        "raman_noise_rates",
        [](double k, double p, double detuning_hz, double temperature_k)
        {
            const sfwm::RamanRates rates = sfwm::raman_noise_rates(k, p, detuning_hz,
                                                                   temperature_k);
            return py::make_tuple(rates.signal_per_s, rates.idler_per_s);
        },
        "raman_coefficient_per_w"_a, "pump_power_w"_a, "detuning_hz"_a, "temperature_k"_a);
    m.def(
        "singles_rates",
        [](const sfwm::DeviceConfig &device, double pair_rate_per_s, double pump_power_w)
        {
            const sfwm::SinglesRates singles =
                sfwm::singles_rates(pair_rate_per_s, device.noise, device.chain, pump_power_w);
            return py::make_tuple(singles.signal_per_s, singles.idler_per_s);
        },
        "device"_a, "pair_rate_per_s"_a, "pump_power_w"_a);
    m.def("car", &sfwm::car, "cc_per_s"_a, "ac_per_s"_a);

    py::class_<sfwm::CarPoint>(m, "CarPoint")
        .def_readonly("pump_power_w", &sfwm::CarPoint::pump_power_w)
        .def_readonly("singles_signal_per_s", &sfwm::CarPoint::singles_signal_per_s)
        .def_readonly("singles_idler_per_s", &sfwm::CarPoint::singles_idler_per_s)
        .def_readonly("cc_per_s", &sfwm::CarPoint::cc_per_s)
        .def_readonly("ac_per_s", &sfwm::CarPoint::ac_per_s)
        .def_readonly("car", &sfwm::CarPoint::car);

    m.def(
        "car_curve",
        [](const sfwm::DeviceConfig &device, const std::vector<double> &powers_w)
        { return sfwm::car_curve(device, powers_w); },
        "device"_a, "pump_powers_w"_a);

    // monte carlo
    py::enum_<sfwm::Channel>(m, "Channel")
        .value("signal", sfwm::Channel::signal)
        .value("idler", sfwm::Channel::idler);

    py::class_<sfwm::TimeTag>(m, "TimeTag")
        .def_readonly("channel", &sfwm::TimeTag::channel)
        .def_readonly("time_ps", &sfwm::TimeTag::time_ps);

    py::class_<sfwm::TagStreams>(m, "TagStreams")
        .def(py::init<>())
        .def_readwrite("signal_ps", &sfwm::TagStreams::signal_ps)
        .def_readwrite("idler_ps", &sfwm::TagStreams::idler_ps);

    m.def("merge_tags", &sfwm::merge_tags, "streams"_a);

    py::class_<sfwm::HistogramBin>(m, "HistogramBin")
        .def_readonly("tau_ps", &sfwm::HistogramBin::tau_ps)
        .def_readonly("count", &sfwm::HistogramBin::count);

    py::class_<sfwm::CoincidenceResult>(m, "CoincidenceResult")
        .def_readonly("cc_count", &sfwm::CoincidenceResult::cc_count)
        .def_readonly("ac_count", &sfwm::CoincidenceResult::ac_count)
        .def_readonly("car_estimate", &sfwm::CoincidenceResult::car_estimate)
        .def_readonly("car_stderr", &sfwm::CoincidenceResult::car_stderr)
        .def_readonly("histogram", &sfwm::CoincidenceResult::histogram)
        .def_readonly("duration_s", &sfwm::CoincidenceResult::duration_s)
        .def_readonly("window_ps", &sfwm::CoincidenceResult::window_ps)
        .def_readonly("accidental_offset_ps", &sfwm::CoincidenceResult::accidental_offset_ps)
        .def_readonly("bin_width_ps", &sfwm::CoincidenceResult::bin_width_ps)
        .def("to_json", &sfwm::coincidence_result_to_json);

    py::class_<sfwm::CarEstimate>(m, "CarEstimate")
        .def_readonly("mean", &sfwm::CarEstimate::mean)
        .def_readonly("std_error", &sfwm::CarEstimate::std_error)
        .def_readonly("replicates", &sfwm::CarEstimate::replicates);

    m.def("simulate_timetags", &sfwm::simulate_timetags, "device"_a, "pump_power_w"_a,
          "duration_s"_a, "seed"_a);
    m.def(
        "count_coincidences",
        [](const std::vector<std::uint64_t> &signal_ps, const std::vector<std::uint64_t> &idler_ps,
           std::int64_t window_ps, std::int64_t accidental_offset_ps, std::int64_t bin_width_ps)
        {
            return sfwm::count_coincidences(signal_ps, idler_ps, window_ps, accidental_offset_ps,
                                            bin_width_ps);
        },
        "signal_ps"_a, "idler_ps"_a, "window_ps"_a, "accidental_offset_ps"_a, "bin_width_ps"_a);
    m.def("estimate_car_mc", &sfwm::estimate_car_mc, "device"_a, "pump_power_w"_a, "duration_s"_a,
          "seed"_a, "replicates"_a);
    m.def("write_timetag_csv", &sfwm::write_timetag_csv, "path"_a, "streams"_a);
    m.def("read_timetag_csv", &sfwm::read_timetag_csv, "path"_a);

    // estimation
    py::class_<sfwm::FitParameter>(m, "FitParameter")
        .def_readonly("name", &sfwm::FitParameter::name)
        .def_readonly("value", &sfwm::FitParameter::value)
        .def_readonly("uncertainty", &sfwm::FitParameter::uncertainty);

    py::class_<sfwm::FitReport>(m, "FitReport")
        .def_readonly("parameters", &sfwm::FitReport::parameters)
        .def_readonly("reduced_chi_square", &sfwm::FitReport::reduced_chi_square)
        .def_readonly("residuals", &sfwm::FitReport::residuals)
        .def_readonly("converged", &sfwm::FitReport::converged)
        .def_readonly("iterations", &sfwm::FitReport::iterations)
        .def("value", &sfwm::FitReport::value, "name"_a)
        .def("uncertainty", &sfwm::FitReport::uncertainty, "name"_a);

    py::class_<sfwm::LorentzianDipFit>(m, "LorentzianDipFit")
        .def_readonly("report", &sfwm::LorentzianDipFit::report)
        .def_readonly("resonance_frequency_hz", &sfwm::LorentzianDipFit::resonance_frequency_hz)
        .def_readonly("q_loaded", &sfwm::LorentzianDipFit::q_loaded)
        .def_readonly("t_min", &sfwm::LorentzianDipFit::t_min)
        .def_readonly("baseline", &sfwm::LorentzianDipFit::baseline)
        .def("linewidth_fwhm_hz", &sfwm::LorentzianDipFit::linewidth_fwhm_hz)
        .def("q_intrinsic", &sfwm::LorentzianDipFit::q_intrinsic,
             "branch"_a = sfwm::CouplingBranch::critical);

    m.def(
        "fit_lorentzian_dip",
        [](const std::vector<double> &frequency_hz, const std::vector<double> &transmission)
        { return sfwm::fit_lorentzian_dip(make_series(frequency_hz, transmission, std::nullopt)); },
        "frequency_hz"_a, "transmission"_a);
    m.def(
        "fit_linear",
        [](const std::vector<double> &x, const std::vector<double> &y,
           const std::optional<std::vector<double>> &y_uncertainty)
        { return sfwm::fit_linear(make_series(x, y, y_uncertainty)); },
        "x"_a, "y"_a, "y_uncertainty"_a = std::nullopt);
    m.def(
        "fit_power_law",
        [](const std::vector<double> &x, const std::vector<double> &y)
        { return sfwm::fit_power_law(make_series(x, y, std::nullopt)); },
        "x"_a, "y"_a);
}
