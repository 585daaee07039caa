#pragma once

#include "sfwm/config.hpp"
#include "sfwm/estimation.hpp"
#include "sfwm/montecarlo.hpp"
#include "sfwm/pairgen.hpp"
#include "sfwm/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <span>
#include <vector>

namespace sfwm::testing
{

// The documented reference device: critically coupled 19 um ring, 785 nm
// pump, collection losses 16.4 / 24.1 dB, 1152 ps window. Mirrors
// configs/paper_device.json so tests can run without file access.
inline DeviceConfig reference_device()
{
    DeviceConfig config;
    config.description = "reference device";
    config.geometry.radius_m = 19.0e-6;
    config.geometry.group_index = 2.0;
    config.geometry.effective_area_m2 = 0.35e-12;
    config.pump_wavelength_m = 785.0e-9;
    config.signal_wavelength_m = 777.5e-9;
    config.idler_wavelength_m = 792.5e-9;
    config.nonlinear_index_m2_per_w = 2.4e-19;
    config.resonator.resonance_frequency_hz =
        constants::speed_of_light_m_per_s / config.pump_wavelength_m;
    config.resonator.q_intrinsic = 320000.0;
    config.resonator.q_coupling = 320000.0;
    config.resonator.q_loaded = 160000.0;
    config.resonator.extinction = db_loss_to_transmittance(DbLoss(23.0));
    config.noise.raman_coefficient_per_w = 2.5e9;
    config.noise.raman_detuning_hz = constants::speed_of_light_m_per_s * 7.5e-9 /
                                     (config.pump_wavelength_m * config.pump_wavelength_m);
    config.noise.temperature_k = 295.0;
    config.noise.dark_counts_signal_per_s = 100.0;
    config.noise.dark_counts_idler_per_s = 200.0;
    config.chain.collection_loss_signal = DbLoss(16.4);
    config.chain.collection_loss_idler = DbLoss(24.1);
    config.chain.coincidence_window_s = 1152e-12;
    config.chain.detector_jitter_fwhm_s = 350e-12;
    config.chain.detector_qe = 0.65;
    config.chain.dead_time_s = 0.0;
    return config;
}

// Same device with all noise sources and detection imperfections removed:
// lossless collection, no Raman, no dark counts, no jitter.
inline DeviceConfig noiseless_lossless_device()
{
    DeviceConfig config = reference_device();
    config.noise.raman_coefficient_per_w = 0.0;
    config.noise.dark_counts_signal_per_s = 0.0;
    config.noise.dark_counts_idler_per_s = 0.0;
    config.chain.collection_loss_signal = DbLoss(0.0);
    config.chain.collection_loss_idler = DbLoss(0.0);
    config.chain.detector_jitter_fwhm_s = 0.0;
    return config;
}

// Pump power at which the device generates `pairs_per_s` (quadratic law).
inline double pump_for_rate(const DeviceConfig &device, double pairs_per_s)
{
    const double rate_at_1w = pair_generation_rate(device, 1.0);
    return std::sqrt(pairs_per_s / rate_at_1w);
}

// O(n^2) coincidence-counting oracle: scans every (signal, idler) pair.
// Deliberately free of the two-pointer logic it checks.
struct BruteForceCounts
{
    std::uint64_t cc = 0;
    std::uint64_t ac = 0;
    std::vector<std::uint64_t> histogram;
};

inline BruteForceCounts brute_force_coincidences(std::span<const std::uint64_t> signal,
                                                 std::span<const std::uint64_t> idler,
                                                 std::int64_t window_ps,
                                                 std::int64_t offset_ps,
                                                 std::int64_t bin_width_ps)
{
    BruteForceCounts counts;
    const auto n_bins =
        static_cast<std::size_t>((2 * window_ps + bin_width_ps - 1) / bin_width_ps);
    counts.histogram.assign(n_bins, 0);
    for (const std::uint64_t s : signal)
    {
        for (const std::uint64_t i : idler)
        {
            const std::int64_t tau =
                static_cast<std::int64_t>(i) - static_cast<std::int64_t>(s);
            if (2 * std::llabs(tau) <= window_ps)
            {
                ++counts.cc;
            }
            if (2 * std::llabs(tau + offset_ps) <= window_ps)
            {
                ++counts.ac;
            }
            if (tau >= -window_ps && tau <= window_ps)
            {
                auto bin = static_cast<std::size_t>((tau + window_ps) / bin_width_ps);
                if (bin >= n_bins)
                {
                    bin = n_bins - 1;
                }
                ++counts.histogram[bin];
            }
        }
    }
    return counts;
}

// Sorted random stream of `count` tags uniform over [0, span_ps).
inline std::vector<std::uint64_t> random_sorted_stream(Rng &rng, std::size_t count,
                                                       std::uint64_t span_ps)
{
    std::vector<std::uint64_t> times;
    times.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
    {
        times.push_back(rng.next_u64() % span_ps);
    }
    std::sort(times.begin(), times.end());
    return times;
}

// Noiseless Lorentzian dip sampled on a uniform grid spanning
// +-half_span_linewidths around the resonance.
inline XYSeries synthetic_dip(double nu0_hz, double q_loaded, double t_min, double baseline,
                              std::size_t samples, double half_span_linewidths)
{
    const double fwhm = nu0_hz / q_loaded;
    XYSeries series;
    series.points.reserve(samples);
    for (std::size_t i = 0; i < samples; ++i)
    {
        const double fraction =
            static_cast<double>(i) / static_cast<double>(samples - 1) * 2.0 - 1.0;
        const double detuning = fraction * half_span_linewidths * fwhm;
        const double u = 2.0 * detuning / fwhm;
        const double y = baseline * (1.0 - (1.0 - t_min) / (1.0 + u * u));
        series.add(nu0_hz + detuning, y);
    }
    return series;
}

} // namespace sfwm::testing
