#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace sfwm
{

struct DeviceConfig;

enum class Channel : std::uint8_t
{
    signal = 0,
    idler = 1
};

struct TimeTag
{
    Channel channel = Channel::signal;
    std::uint64_t time_ps = 0;
};

// Per-channel detection times in integer picoseconds, sorted ascending.
struct TagStreams
{
    std::vector<std::uint64_t> signal_ps;
    std::vector<std::uint64_t> idler_ps;
};

// Time-ordered merged view of both channels.
std::vector<TimeTag> merge_tags(const TagStreams &streams);

struct HistogramBin
{
    std::int64_t tau_ps = 0; // bin center, tau = t_idler - t_signal
    std::uint64_t count = 0;
};

struct CoincidenceResult
{
    std::uint64_t cc_count = 0;
    std::uint64_t ac_count = 0;
    double car_estimate = 0.0;
    double car_stderr = 0.0; // Poisson counting error on cc/ac
    std::vector<HistogramBin> histogram;
    double duration_s = 0.0;
    std::int64_t window_ps = 0;
    std::int64_t accidental_offset_ps = 0;
    std::int64_t bin_width_ps = 0;
};

struct CarEstimate
{
    double mean = 0.0;
    double std_error = 0.0;
    int replicates = 0;
};

// Synthesizes detector time tags for the configured device at one pump
// power. Pair events arrive as a Poisson process at the model generation
// rate; each photon of a pair gets an independent exponential cavity-decay
// delay and survives its channel's collection transmittance. Uncorrelated
// Raman photons and dark counts are added as independent Poisson streams,
// every detection is smeared by Gaussian detector jitter, and times are
// quantized to 1 ps. Bit-identical output for a fixed (config, power,
// duration, seed).
TagStreams simulate_timetags(const DeviceConfig &device,
                             double pump_power_w,
                             double duration_s,
                             std::uint64_t seed);

// Counts coincidences between two sorted streams with a two-pointer merge:
// CC counts (signal, idler) pairs with |tau| <= window/2, AC repeats the
// count with the idler stream shifted by accidental_offset, and the
// histogram covers tau in [-window, +window] in bin_width steps.
CoincidenceResult count_coincidences(std::span<const std::uint64_t> signal_ps,
                                     std::span<const std::uint64_t> idler_ps,
                                     std::int64_t window_ps,
                                     std::int64_t accidental_offset_ps,
                                     std::int64_t bin_width_ps);

// Replicated simulate -> count runs over derived seeds; returns the sample
// mean and standard error of the per-replicate CAR.
CarEstimate estimate_car_mc(const DeviceConfig &device,
                            double pump_power_w,
                            double duration_s,
                            std::uint64_t seed,
                            int replicates);

// JSON document matching the documented result schema:
// {cc, ac, car, car_stderr, window_ps, duration_s, histogram:[{tau_ps,count}]}.
std::string coincidence_result_to_json(const CoincidenceResult &result);

} // namespace sfwm
