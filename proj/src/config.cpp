#include "sfwm/config.hpp"

#include "sfwm/csv.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace sfwm
{

namespace
{

using nlohmann::json;

constexpr double kEnergyConservationHardLimit = 1e-4; // rejects above this
constexpr double kEnergyConservationWarnBand = 1e-6;  // warns above this

const json &require_object(const json &doc, const std::string &key)
{
    if (!doc.contains(key) || !doc[key].is_object())
    {
        throw ValidationError("config: missing section '" + key + "'");
    }
    return doc[key];
}

double require_number(const json &section, const std::string &section_name,
                      const std::string &key)
{
    if (!section.contains(key) || !section[key].is_number())
    {
        throw ValidationError("config: missing numeric field " + section_name + "." + key);
    }
    return section[key].get<double>();
}

double optional_number(const json &section, const std::string &key, double fallback)
{
    if (!section.contains(key))
    {
        return fallback;
    }
    if (!section[key].is_number())
    {
        throw ValidationError("config: field " + key + " must be numeric");
    }
    return section[key].get<double>();
}

double energy_conservation_error(const DeviceConfig &config)
{
    const double lhs = 2.0 / config.pump_wavelength_m;
    const double rhs = 1.0 / config.signal_wavelength_m + 1.0 / config.idler_wavelength_m;
    return std::abs(lhs - rhs) / lhs;
}

} // namespace

double DeviceConfig::gamma_per_w_m() const
{
    return nonlinear_parameter(nonlinear_index_m2_per_w, pump_wavelength_m,
                               geometry.effective_area_m2);
}

AngularFrequency DeviceConfig::pump_angular_frequency() const
{
    return wavelength_to_angular_frequency(pump_wavelength_m);
}

NonlinearParams DeviceConfig::nonlinear() const
{
    NonlinearParams params;
    params.nonlinear_index_m2_per_w = nonlinear_index_m2_per_w;
    params.pump_wavelength_m = pump_wavelength_m;
    params.gamma_per_w_m = gamma_per_w_m();
    return params;
}

void DeviceConfig::validate() const
{
    geometry.validate("geometry.");
    resonator.validate("resonator.");
    noise.validate("noise.");
    chain.validate("detection.");

    if (!std::isfinite(pump_wavelength_m) || pump_wavelength_m <= 0.0)
    {
        throw ValidationError("pump.wavelength_nm: must be > 0");
    }
    if (!std::isfinite(signal_wavelength_m) || signal_wavelength_m <= 0.0)
    {
        throw ValidationError("pump.signal_wavelength_nm: must be > 0");
    }
    if (!std::isfinite(idler_wavelength_m) || idler_wavelength_m <= 0.0)
    {
        throw ValidationError("pump.idler_wavelength_nm: must be > 0");
    }
    if (!std::isfinite(nonlinear_index_m2_per_w) || nonlinear_index_m2_per_w <= 0.0)
    {
        throw ValidationError("pump.nonlinear_index_m2_per_w: must be > 0");
    }
    if (signal_wavelength_m > pump_wavelength_m || idler_wavelength_m < pump_wavelength_m)
    {
        throw ValidationError(
            "pump.signal_wavelength_nm/idler_wavelength_nm: signal must be blue of the pump "
            "and idler red of the pump");
    }
    const double energy_error = energy_conservation_error(*this);
    if (energy_error > kEnergyConservationHardLimit)
    {
        std::ostringstream msg;
        msg << "pump wavelengths: energy conservation 2/lambda_p = 1/lambda_s + 1/lambda_i "
               "violated (relative error "
            << energy_error << " > " << kEnergyConservationHardLimit << ")";
        throw ValidationError(msg.str());
    }
}

std::vector<std::string> DeviceConfig::validation_warnings() const
{
    std::vector<std::string> warnings;
    const double energy_error = energy_conservation_error(*this);
    if (energy_error > kEnergyConservationWarnBand)
    {
        std::ostringstream msg;
        msg << "energy conservation holds only to relative error " << energy_error
            << " (above the " << kEnergyConservationWarnBand
            << " band; acceptable for nm-rounded wavelengths)";
        warnings.push_back(msg.str());
    }
    return warnings;
}

DeviceConfig device_config_from_json_text(const std::string &json_text)
{
    json doc;
    try
    {
        doc = json::parse(json_text);
    }
    catch (const json::parse_error &e)
    {
        throw ValidationError(std::string("config: invalid JSON: ") + e.what());
    }

    DeviceConfig config;
    config.description = doc.value("description", "");

    const json &geometry = require_object(doc, "geometry");
    config.geometry.radius_m = require_number(geometry, "geometry", "radius_um") * 1e-6;
    config.geometry.group_index = require_number(geometry, "geometry", "group_index");
    config.geometry.effective_area_m2 =
        require_number(geometry, "geometry", "effective_area_um2") * 1e-12;

    const json &pump = require_object(doc, "pump");
    config.pump_wavelength_m = require_number(pump, "pump", "wavelength_nm") * 1e-9;
    config.signal_wavelength_m = require_number(pump, "pump", "signal_wavelength_nm") * 1e-9;
    config.idler_wavelength_m = require_number(pump, "pump", "idler_wavelength_nm") * 1e-9;
    config.nonlinear_index_m2_per_w = require_number(pump, "pump", "nonlinear_index_m2_per_w");

    const json &resonator = require_object(doc, "resonator");
    const double q_intrinsic = require_number(resonator, "resonator", "q_intrinsic");
    const double q_coupling = require_number(resonator, "resonator", "q_coupling");
    const double extinction_db = require_number(resonator, "resonator", "extinction_db");
    if (!(q_intrinsic > 0.0))
    {
        throw ValidationError("resonator.q_intrinsic: must be > 0");
    }
    if (!(q_coupling > 0.0))
    {
        throw ValidationError("resonator.q_coupling: must be > 0");
    }
    if (!std::isfinite(extinction_db) || extinction_db < 0.0)
    {
        throw ValidationError("resonator.extinction_db: must be >= 0");
    }
    config.resonator.resonance_frequency_hz =
        constants::speed_of_light_m_per_s / config.pump_wavelength_m;
    config.resonator.q_intrinsic = q_intrinsic;
    config.resonator.q_coupling = q_coupling;
    config.resonator.q_loaded = loaded_q(q_intrinsic, q_coupling);
    config.resonator.extinction = db_loss_to_transmittance(DbLoss(extinction_db));

    const json &noise = require_object(doc, "noise");
    config.noise.raman_coefficient_per_w =
        require_number(noise, "noise", "raman_coefficient_per_s_per_w");
    config.noise.temperature_k = require_number(noise, "noise", "temperature_k");
    config.noise.dark_counts_signal_per_s =
        require_number(noise, "noise", "dark_counts_signal_per_s");
    config.noise.dark_counts_idler_per_s =
        require_number(noise, "noise", "dark_counts_idler_per_s");
    // Raman shift from the configured wavelengths: half the signal-idler
    // spacing converted to frequency at the pump.
    const double delta_lambda = (config.idler_wavelength_m - config.signal_wavelength_m) / 2.0;
    config.noise.raman_detuning_hz = constants::speed_of_light_m_per_s * delta_lambda /
                                     (config.pump_wavelength_m * config.pump_wavelength_m);

    const json &detection = require_object(doc, "detection");
    const double eta_s_db = require_number(detection, "detection", "eta_s_db");
    const double eta_i_db = require_number(detection, "detection", "eta_i_db");
    if (!std::isfinite(eta_s_db) || eta_s_db < 0.0)
    {
        throw ValidationError("detection.eta_s_db: must be >= 0");
    }
    if (!std::isfinite(eta_i_db) || eta_i_db < 0.0)
    {
        throw ValidationError("detection.eta_i_db: must be >= 0");
    }
    config.chain.collection_loss_signal = DbLoss(eta_s_db);
    config.chain.collection_loss_idler = DbLoss(eta_i_db);
    config.chain.coincidence_window_s = require_number(detection, "detection", "window_ps") * 1e-12;
    config.chain.detector_jitter_fwhm_s =
        require_number(detection, "detection", "jitter_fwhm_ps") * 1e-12;
    config.chain.detector_qe = require_number(detection, "detection", "detector_qe");
    config.chain.dead_time_s = optional_number(detection, "dead_time_ps", 0.0) * 1e-12;

    config.validate();
    return config;
}

DeviceConfig load_device_config(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
    {
        throw ValidationError("cannot open config file: " + path.string());
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    try
    {
        return device_config_from_json_text(buffer.str());
    }
    catch (const ValidationError &e)
    {
        throw ValidationError(path.string() + ": " + e.what());
    }
}

std::string device_config_to_json(const DeviceConfig &config)
{
    // Dividing by the loader's scale factor (instead of multiplying by its
    // inverse) keeps typical values bit-exact across a save/load cycle.
    json doc;
    doc["description"] = config.description;
    doc["geometry"] = {{"radius_um", config.geometry.radius_m / 1e-6},
                       {"group_index", config.geometry.group_index},
                       {"effective_area_um2", config.geometry.effective_area_m2 / 1e-12}};
    doc["pump"] = {{"wavelength_nm", config.pump_wavelength_m / 1e-9},
                   {"signal_wavelength_nm", config.signal_wavelength_m / 1e-9},
                   {"idler_wavelength_nm", config.idler_wavelength_m / 1e-9},
                   {"nonlinear_index_m2_per_w", config.nonlinear_index_m2_per_w}};
    doc["resonator"] = {
        {"q_intrinsic", config.resonator.q_intrinsic},
        {"q_coupling", config.resonator.q_coupling},
        {"extinction_db", transmittance_to_db_loss(config.resonator.extinction).db()}};
    doc["noise"] = {{"raman_coefficient_per_s_per_w", config.noise.raman_coefficient_per_w},
                    {"temperature_k", config.noise.temperature_k},
                    {"dark_counts_signal_per_s", config.noise.dark_counts_signal_per_s},
                    {"dark_counts_idler_per_s", config.noise.dark_counts_idler_per_s}};
    doc["detection"] = {{"eta_s_db", config.chain.collection_loss_signal.db()},
                        {"eta_i_db", config.chain.collection_loss_idler.db()},
                        {"window_ps", config.chain.coincidence_window_s / 1e-12},
                        {"jitter_fwhm_ps", config.chain.detector_jitter_fwhm_s / 1e-12},
                        {"detector_qe", config.chain.detector_qe},
                        {"dead_time_ps", config.chain.dead_time_s / 1e-12}};
    return doc.dump(2) + "\n";
}

void save_device_config(const std::filesystem::path &path, const DeviceConfig &config)
{
    config.validate();
    write_text_file(path, device_config_to_json(config));
}

std::string file_content_hash(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
    {
        throw ValidationError("cannot open file for hashing: " + path.string());
    }
    // FNV-1a, 64-bit.
    std::uint64_t hash = 0xCBF29CE484222325ULL;
    char byte = 0;
    while (in.get(byte))
    {
        hash ^= static_cast<unsigned char>(byte);
        hash *= 0x100000001B3ULL;
    }
    char buffer[20];
    std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(hash));
    return std::string("fnv1a64:") + buffer;
}

} // namespace sfwm
