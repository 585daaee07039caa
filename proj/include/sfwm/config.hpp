#pragma once

#include "sfwm/noise.hpp"
#include "sfwm/pairgen.hpp"
#include "sfwm/quantities.hpp"
#include "sfwm/resonator.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace sfwm
{

// Complete physical description of a device run: ring, pump, nonlinearity,
// noise sources and detection chain. Everything downstream of the config
// works in SI units; dB and ps appear only in the JSON schema.
struct DeviceConfig
{
    std::string description;
    RingGeometry geometry;
    ResonatorParams resonator;
    double pump_wavelength_m = 0.0;
    double signal_wavelength_m = 0.0;
    double idler_wavelength_m = 0.0;
    double nonlinear_index_m2_per_w = 0.0;
    NoiseParams noise;
    DetectionChain chain;

    double gamma_per_w_m() const;
    AngularFrequency pump_angular_frequency() const;
    NonlinearParams nonlinear() const;

    // Throws ValidationError naming the offending field and invariant.
    void validate() const;

    // Non-fatal findings, e.g. energy conservation satisfied only to
    // within the measurement-precision band.
    std::vector<std::string> validation_warnings() const;
};

// Loads and validates a device config from the documented JSON schema.
DeviceConfig load_device_config(const std::filesystem::path &path);

void save_device_config(const std::filesystem::path &path, const DeviceConfig &config);

std::string device_config_to_json(const DeviceConfig &config);
DeviceConfig device_config_from_json_text(const std::string &json_text);

// FNV-1a over the file bytes, for run manifests.
std::string file_content_hash(const std::filesystem::path &path);

} // namespace sfwm
