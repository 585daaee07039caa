#include "sfwm/noise.hpp"

#include "sfwm/config.hpp"
#include "sfwm/pairgen.hpp"

#include <cmath>
#include <limits>

namespace sfwm
{

void NoiseParams::validate(const std::string &prefix) const
{
    if (!std::isfinite(raman_coefficient_per_w) || raman_coefficient_per_w < 0.0)
    {
        throw ValidationError(prefix + "raman_coefficient_per_s_per_w: must be >= 0");
    }
    if (raman_coefficient_per_w > 0.0 &&
        (!std::isfinite(raman_detuning_hz) || raman_detuning_hz <= 0.0))
    {
        throw ValidationError(prefix + "raman_detuning: must be > 0 when Raman noise is enabled");
    }
    if (!std::isfinite(temperature_k) || temperature_k <= 0.0)
    {
        throw ValidationError(prefix + "temperature_k: must be > 0");
    }
    if (!std::isfinite(dark_counts_signal_per_s) || dark_counts_signal_per_s < 0.0)
    {
        throw ValidationError(prefix + "dark_counts_signal_per_s: must be >= 0");
    }
    if (!std::isfinite(dark_counts_idler_per_s) || dark_counts_idler_per_s < 0.0)
    {
        throw ValidationError(prefix + "dark_counts_idler_per_s: must be >= 0");
    }
}

void DetectionChain::validate(const std::string &prefix) const
{
    if (!std::isfinite(coincidence_window_s) || coincidence_window_s <= 0.0)
    {
        throw ValidationError(prefix + "window_ps: must be > 0");
    }
    if (!std::isfinite(detector_jitter_fwhm_s) || detector_jitter_fwhm_s < 0.0)
    {
        throw ValidationError(prefix + "jitter_fwhm_ps: must be >= 0");
    }
    if (!std::isfinite(detector_qe) || detector_qe <= 0.0 || detector_qe > 1.0)
    {
        throw ValidationError(prefix + "detector_qe: must be in (0, 1]");
    }
    if (!std::isfinite(dead_time_s) || dead_time_s < 0.0)
    {
        throw ValidationError(prefix + "dead_time_ps: must be >= 0");
    }
}

double thermal_occupancy(double detuning_hz, double temperature_k)
{
    if (!(detuning_hz > 0.0))
    {
        throw DomainError("thermal_occupancy: detuning must be > 0");
    }
    if (!(temperature_k > 0.0))
    {
        throw DomainError("thermal_occupancy: temperature must be > 0");
    }
    const double x =
        constants::planck_j_s * detuning_hz / (constants::boltzmann_j_per_k * temperature_k);
    return 1.0 / std::expm1(x);
}

RamanRates raman_noise_rates(double raman_coefficient_per_w,
                             double pump_power_w,
                             double detuning_hz,
                             double temperature_k)
{
    if (!std::isfinite(raman_coefficient_per_w) || raman_coefficient_per_w < 0.0)
    {
        throw DomainError("raman_noise_rates: coefficient must be >= 0");
    }
    if (!std::isfinite(pump_power_w) || pump_power_w < 0.0)
    {
        throw DomainError("raman_noise_rates: pump power must be >= 0");
    }
    RamanRates rates;
    if (raman_coefficient_per_w == 0.0 || pump_power_w == 0.0)
    {
        return rates;
    }
    const double occupancy = thermal_occupancy(detuning_hz, temperature_k);
    const double scale = raman_coefficient_per_w * pump_power_w;
    rates.signal_per_s = scale * occupancy;        // anti-Stokes, blue of the pump
    rates.idler_per_s = scale * (occupancy + 1.0); // Stokes, red of the pump
    return rates;
}

SinglesRates singles_rates(double pair_rate_per_s,
                           const RamanRates &linear_noise,
                           double dark_counts_signal_per_s,
                           double dark_counts_idler_per_s,
                           DbLoss eta_s,
                           DbLoss eta_i)
{
    if (!std::isfinite(pair_rate_per_s) || pair_rate_per_s < 0.0)
    {
        throw ValidationError("singles_rates: pair rate must be >= 0");
    }
    if (linear_noise.signal_per_s < 0.0 || linear_noise.idler_per_s < 0.0 ||
        dark_counts_signal_per_s < 0.0 || dark_counts_idler_per_s < 0.0)
    {
        throw ValidationError("singles_rates: rates must be >= 0");
    }
    SinglesRates singles;
    singles.signal_per_s =
        (linear_noise.signal_per_s + pair_rate_per_s) * db_loss_to_transmittance(eta_s).value() +
        dark_counts_signal_per_s;
    singles.idler_per_s =
        (linear_noise.idler_per_s + pair_rate_per_s) * db_loss_to_transmittance(eta_i).value() +
        dark_counts_idler_per_s;
    return singles;
}

SinglesRates singles_rates(double pair_rate_per_s,
                           const NoiseParams &noise,
                           const DetectionChain &chain,
                           double pump_power_w)
{
    const RamanRates linear = raman_noise_rates(noise.raman_coefficient_per_w, pump_power_w,
                                                noise.raman_detuning_hz, noise.temperature_k);
    return singles_rates(pair_rate_per_s, linear, noise.dark_counts_signal_per_s,
                         noise.dark_counts_idler_per_s, chain.collection_loss_signal,
                         chain.collection_loss_idler);
}

CoincidenceRates coincidence_rates(double pair_rate_per_s,
                                   const SinglesRates &singles,
                                   const DetectionChain &chain)
{
    if (!std::isfinite(pair_rate_per_s) || pair_rate_per_s < 0.0)
    {
        throw ValidationError("coincidence_rates: pair rate must be >= 0");
    }
    if (singles.signal_per_s < 0.0 || singles.idler_per_s < 0.0)
    {
        throw ValidationError("coincidence_rates: singles rates must be >= 0");
    }
    CoincidenceRates rates;
    rates.cc_per_s = pair_rate_per_s *
                     db_loss_to_transmittance(chain.collection_loss_signal).value() *
                     db_loss_to_transmittance(chain.collection_loss_idler).value();
    rates.ac_per_s = singles.signal_per_s * singles.idler_per_s * chain.coincidence_window_s;
    return rates;
}

double car(double cc_per_s, double ac_per_s)
{
    if (ac_per_s > 0.0)
    {
        return cc_per_s / ac_per_s;
    }
    if (cc_per_s > 0.0)
    {
        return std::numeric_limits<double>::infinity();
    }
    return std::numeric_limits<double>::quiet_NaN();
}

std::vector<CarPoint> car_curve(const DeviceConfig &device, std::span<const double> pump_powers_w)
{
    device.validate();
    for (std::size_t i = 0; i < pump_powers_w.size(); ++i)
    {
        if (!std::isfinite(pump_powers_w[i]) || pump_powers_w[i] < 0.0)
        {
            throw ValidationError("car_curve: powers must be >= 0");
        }
        if (i > 0 && pump_powers_w[i] < pump_powers_w[i - 1])
        {
            throw ValidationError("car_curve: powers must be sorted ascending");
        }
    }

    std::vector<CarPoint> curve;
    curve.reserve(pump_powers_w.size());
    for (const double power : pump_powers_w)
    {
        const double generation = pair_generation_rate(device, power);
        const SinglesRates singles = singles_rates(generation, device.noise, device.chain, power);
        const CoincidenceRates rates = coincidence_rates(generation, singles, device.chain);
        CarPoint point;
        point.pump_power_w = power;
        point.singles_signal_per_s = singles.signal_per_s;
        point.singles_idler_per_s = singles.idler_per_s;
        point.cc_per_s = rates.cc_per_s;
        point.ac_per_s = rates.ac_per_s;
        point.car = car(rates.cc_per_s, rates.ac_per_s);
        curve.push_back(point);
    }
    return curve;
}

} // namespace sfwm
