#pragma once

#include "sfwm/quantities.hpp"

#include <span>
#include <string>
#include <vector>

namespace sfwm
{

struct DeviceConfig;

struct NoiseParams
{
    // Spontaneous Raman emission per channel: photons/s per W of on-chip
    // pump power, before the thermal phonon weighting splits the channels.
    double raman_coefficient_per_w = 0.0;
    double raman_detuning_hz = 0.0; // pump-to-channel Raman shift
    double temperature_k = 295.0;
    double dark_counts_signal_per_s = 0.0;
    double dark_counts_idler_per_s = 0.0;

    void validate(const std::string &prefix = "noise.") const;
};

struct DetectionChain
{
    DbLoss collection_loss_signal;       // eta_s, total incl. detector efficiency
    DbLoss collection_loss_idler;        // eta_i
    double coincidence_window_s = 0.0;   // delta t
    double detector_jitter_fwhm_s = 0.0; // per detector
    double detector_qe = 1.0;            // stored for reporting; already folded into eta
    double dead_time_s = 0.0;            // non-paralyzable, 0 = off

    void validate(const std::string &prefix = "detection.") const;
};

// Linear noise photon rates at the ring, per channel.
struct RamanRates
{
    double signal_per_s = 0.0; // anti-Stokes, weighted by n_th
    double idler_per_s = 0.0;  // Stokes, weighted by n_th + 1
};

struct SinglesRates
{
    double signal_per_s = 0.0;
    double idler_per_s = 0.0;
};

struct CoincidenceRates
{
    double cc_per_s = 0.0;
    double ac_per_s = 0.0;
};

struct CarPoint
{
    double pump_power_w = 0.0;
    double singles_signal_per_s = 0.0;
    double singles_idler_per_s = 0.0;
    double cc_per_s = 0.0;
    double ac_per_s = 0.0;
    double car = 0.0;
};

// Bose-Einstein occupancy 1 / (exp(h nu / kB T) - 1).
double thermal_occupancy(double detuning_hz, double temperature_k);

// Splits k_R * P_p into anti-Stokes (n_th) and Stokes (n_th + 1) channels.
RamanRates raman_noise_rates(double raman_coefficient_per_w,
                             double pump_power_w,
                             double detuning_hz,
                             double temperature_k);

// R = (n + G) * T(eta) + dc per channel, with explicit linear noise rates.
SinglesRates singles_rates(double pair_rate_per_s,
                           const RamanRates &linear_noise,
                           double dark_counts_signal_per_s,
                           double dark_counts_idler_per_s,
                           DbLoss eta_s,
                           DbLoss eta_i);

// Convenience overload deriving the linear noise from NoiseParams at P_p.
SinglesRates singles_rates(double pair_rate_per_s,
                           const NoiseParams &noise,
                           const DetectionChain &chain,
                           double pump_power_w);

// CC = G T(eta_s) T(eta_i); AC = R_s R_i delta_t.
CoincidenceRates coincidence_rates(double pair_rate_per_s,
                                   const SinglesRates &singles,
                                   const DetectionChain &chain);

// CC / AC. Sentinels instead of failures: +infinity when AC = 0 with
// CC > 0, NaN when both are 0.
double car(double cc_per_s, double ac_per_s);

// Full analytic chain per pump power: generation -> Raman noise ->
// singles -> coincidences -> CAR. Powers must be non-negative and sorted.
std::vector<CarPoint> car_curve(const DeviceConfig &device, std::span<const double> pump_powers_w);

} // namespace sfwm
