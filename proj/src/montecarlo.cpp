#include "sfwm/montecarlo.hpp"

#include "sfwm/config.hpp"
#include "sfwm/noise.hpp"
#include "sfwm/pairgen.hpp"
#include "sfwm/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

namespace sfwm
{

namespace
{

constexpr double kPsPerSecond = 1e12;

// FWHM -> sigma for a Gaussian.
constexpr double kFwhmToSigma = 0.42466090014400953; // 1 / (2 sqrt(2 ln 2))

// Sub-stream indices inside one simulation run.
enum : std::uint64_t
{
    kPairStream = 0,
    kNoiseSignalStream = 1,
    kNoiseIdlerStream = 2,
    kDarkSignalStream = 3,
    kDarkIdlerStream = 4
};

// Jitters, quantizes to 1 ps and drops events outside [0, duration).
void emit(std::vector<std::uint64_t> &out, double time_s, double jitter_sigma_s,
          double duration_s, Rng &rng)
{
    double t = time_s;
    if (jitter_sigma_s > 0.0)
    {
        t = rng.normal(t, jitter_sigma_s);
    }
    if (t < 0.0 || t >= duration_s)
    {
        return;
    }
    const auto ps = static_cast<std::uint64_t>(std::llround(t * kPsPerSecond));
    out.push_back(ps);
}

// Homogeneous Poisson stream via exponential gaps.
void poisson_stream(std::vector<std::uint64_t> &out, double rate_per_s, double duration_s,
                    double jitter_sigma_s, Rng &rng)
{
    if (rate_per_s <= 0.0)
    {
        return;
    }
    out.reserve(out.size() + static_cast<std::size_t>(rate_per_s * duration_s * 1.05) + 16);
    const double mean_gap = 1.0 / rate_per_s;
    double t = rng.exponential(mean_gap);
    while (t < duration_s)
    {
        emit(out, t, jitter_sigma_s, duration_s, rng);
        t += rng.exponential(mean_gap);
    }
}

void apply_dead_time(std::vector<std::uint64_t> &times, std::uint64_t dead_ps)
{
    if (dead_ps == 0 || times.empty())
    {
        return;
    }
    std::vector<std::uint64_t> kept;
    kept.reserve(times.size());
    kept.push_back(times.front());
    for (std::size_t i = 1; i < times.size(); ++i)
    {
        if (times[i] - kept.back() >= dead_ps)
        {
            kept.push_back(times[i]);
        }
    }
    times = std::move(kept);
}

void require_sorted(std::span<const std::uint64_t> times, const char *name)
{
    if (!std::is_sorted(times.begin(), times.end()))
    {
        throw ValidationError(std::string("count_coincidences: ") + name +
                              " stream is not time-sorted");
    }
}

// Pairs of sorted streams with b shifted by `shift`: counts matches with
// 2 |tau| <= window and optionally histograms tau over [-window, +window].
std::uint64_t correlate(std::span<const std::uint64_t> signal,
                        std::span<const std::uint64_t> idler,
                        std::int64_t window_ps,
                        std::int64_t shift_ps,
                        std::int64_t bin_width_ps,
                        std::vector<std::uint64_t> *histogram)
{
    std::uint64_t matches = 0;
    std::size_t lo = 0;
    std::size_t hi = 0;
    for (const std::uint64_t s_raw : signal)
    {
        const auto t_s = static_cast<std::int64_t>(s_raw);
        while (lo < idler.size() &&
               static_cast<std::int64_t>(idler[lo]) + shift_ps < t_s - window_ps)
        {
            ++lo;
        }
        while (hi < idler.size() &&
               static_cast<std::int64_t>(idler[hi]) + shift_ps <= t_s + window_ps)
        {
            ++hi;
        }
        for (std::size_t k = lo; k < hi; ++k)
        {
            const std::int64_t tau = static_cast<std::int64_t>(idler[k]) + shift_ps - t_s;
            if (2 * std::llabs(tau) <= window_ps)
            {
                ++matches;
            }
            if (histogram != nullptr)
            {
                auto bin = static_cast<std::size_t>((tau + window_ps) / bin_width_ps);
                if (bin >= histogram->size())
                {
                    bin = histogram->size() - 1; // tau == +window lands on the edge
                }
                ++(*histogram)[bin];
            }
        }
    }
    return matches;
}

} // namespace

std::vector<TimeTag> merge_tags(const TagStreams &streams)
{
    std::vector<TimeTag> merged;
    merged.reserve(streams.signal_ps.size() + streams.idler_ps.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < streams.signal_ps.size() || j < streams.idler_ps.size())
    {
        const bool take_signal =
            j >= streams.idler_ps.size() ||
            (i < streams.signal_ps.size() && streams.signal_ps[i] <= streams.idler_ps[j]);
        if (take_signal)
        {
            merged.push_back({Channel::signal, streams.signal_ps[i++]});
        }
        else
        {
            merged.push_back({Channel::idler, streams.idler_ps[j++]});
        }
    }
    return merged;
}

TagStreams simulate_timetags(const DeviceConfig &device,
                             double pump_power_w,
                             double duration_s,
                             std::uint64_t seed)
{
    device.validate();
    if (!std::isfinite(duration_s) || duration_s <= 0.0)
    {
        throw ValidationError("simulate_timetags: duration must be > 0");
    }
    if (!std::isfinite(pump_power_w) || pump_power_w < 0.0)
    {
        throw ValidationError("simulate_timetags: pump power must be >= 0");
    }

    const double t_signal = db_loss_to_transmittance(device.chain.collection_loss_signal).value();
    const double t_idler = db_loss_to_transmittance(device.chain.collection_loss_idler).value();
    const double generation = pair_generation_rate(device, pump_power_w);
    const RamanRates linear_noise =
        raman_noise_rates(device.noise.raman_coefficient_per_w, pump_power_w,
                          device.noise.raman_detuning_hz, device.noise.temperature_k);
    const double lifetime_s =
        photon_lifetime_s(device.resonator.q_loaded, device.pump_wavelength_m);
    const double jitter_sigma_s = device.chain.detector_jitter_fwhm_s * kFwhmToSigma;

    TagStreams streams;

    // Correlated pairs: shared emission time, independent cavity-decay
    // delays, independent channel thinning.
    if (generation > 0.0)
    {
        Rng rng(derive_stream_seed(seed, kPairStream));
        const std::size_t expect = static_cast<std::size_t>(generation * duration_s * 1.05) + 16;
        streams.signal_ps.reserve(static_cast<std::size_t>(expect * t_signal) + 16);
        streams.idler_ps.reserve(static_cast<std::size_t>(expect * t_idler) + 16);
        const double mean_gap = 1.0 / generation;
        double t = rng.exponential(mean_gap);
        while (t < duration_s)
        {
            const bool detect_signal = rng.bernoulli(t_signal);
            const bool detect_idler = rng.bernoulli(t_idler);
            if (detect_signal)
            {
                emit(streams.signal_ps, t + rng.exponential(lifetime_s), jitter_sigma_s,
                     duration_s, rng);
            }
            if (detect_idler)
            {
                emit(streams.idler_ps, t + rng.exponential(lifetime_s), jitter_sigma_s,
                     duration_s, rng);
            }
            t += rng.exponential(mean_gap);
        }
    }

    // Uncorrelated Raman photons, generated directly at the detected rates.
    {
        Rng rng(derive_stream_seed(seed, kNoiseSignalStream));
        poisson_stream(streams.signal_ps, linear_noise.signal_per_s * t_signal, duration_s,
                       jitter_sigma_s, rng);
    }
    {
        Rng rng(derive_stream_seed(seed, kNoiseIdlerStream));
        poisson_stream(streams.idler_ps, linear_noise.idler_per_s * t_idler, duration_s,
                       jitter_sigma_s, rng);
    }

    // Dark counts, untouched by the collection losses.
    {
        Rng rng(derive_stream_seed(seed, kDarkSignalStream));
        poisson_stream(streams.signal_ps, device.noise.dark_counts_signal_per_s, duration_s,
                       jitter_sigma_s, rng);
    }
    {
        Rng rng(derive_stream_seed(seed, kDarkIdlerStream));
        poisson_stream(streams.idler_ps, device.noise.dark_counts_idler_per_s, duration_s,
                       jitter_sigma_s, rng);
    }

    std::sort(streams.signal_ps.begin(), streams.signal_ps.end());
    std::sort(streams.idler_ps.begin(), streams.idler_ps.end());

    const auto dead_ps =
        static_cast<std::uint64_t>(std::llround(device.chain.dead_time_s * kPsPerSecond));
    apply_dead_time(streams.signal_ps, dead_ps);
    apply_dead_time(streams.idler_ps, dead_ps);

    return streams;
}

CoincidenceResult count_coincidences(std::span<const std::uint64_t> signal_ps,
                                     std::span<const std::uint64_t> idler_ps,
                                     std::int64_t window_ps,
                                     std::int64_t accidental_offset_ps,
                                     std::int64_t bin_width_ps)
{
    if (window_ps <= 0)
    {
        throw ValidationError("count_coincidences: window must be > 0");
    }
    if (accidental_offset_ps <= window_ps)
    {
        throw ValidationError("count_coincidences: accidental offset must exceed the window");
    }
    if (bin_width_ps <= 0 || bin_width_ps > 2 * window_ps)
    {
        throw ValidationError("count_coincidences: bin width must be in (0, 2*window]");
    }
    require_sorted(signal_ps, "signal");
    require_sorted(idler_ps, "idler");

    CoincidenceResult result;
    result.window_ps = window_ps;
    result.accidental_offset_ps = accidental_offset_ps;
    result.bin_width_ps = bin_width_ps;

    const auto n_bins =
        static_cast<std::size_t>((2 * window_ps + bin_width_ps - 1) / bin_width_ps);
    std::vector<std::uint64_t> bins(n_bins, 0);

    result.cc_count = correlate(signal_ps, idler_ps, window_ps, 0, bin_width_ps, &bins);
    result.ac_count =
        correlate(signal_ps, idler_ps, window_ps, accidental_offset_ps, bin_width_ps, nullptr);

    result.histogram.reserve(n_bins);
    for (std::size_t i = 0; i < n_bins; ++i)
    {
        HistogramBin bin;
        bin.tau_ps = -window_ps + static_cast<std::int64_t>(i) * bin_width_ps + bin_width_ps / 2;
        bin.count = bins[i];
        result.histogram.push_back(bin);
    }

    std::uint64_t last_ps = 0;
    if (!signal_ps.empty())
    {
        last_ps = signal_ps.back();
    }
    if (!idler_ps.empty())
    {
        last_ps = std::max(last_ps, idler_ps.back());
    }
    result.duration_s = static_cast<double>(last_ps) / kPsPerSecond;

    const auto cc = static_cast<double>(result.cc_count);
    const auto ac = static_cast<double>(result.ac_count);
    result.car_estimate = car(cc, ac);
    if (result.cc_count > 0 && result.ac_count > 0)
    {
        result.car_stderr = result.car_estimate * std::sqrt(1.0 / cc + 1.0 / ac);
    }
    else
    {
        result.car_stderr = std::numeric_limits<double>::quiet_NaN();
    }
    return result;
}

CarEstimate estimate_car_mc(const DeviceConfig &device,
                            double pump_power_w,
                            double duration_s,
                            std::uint64_t seed,
                            int replicates)
{
    if (replicates < 2)
    {
        throw ValidationError("estimate_car_mc: replicates must be >= 2");
    }
    const auto window_ps =
        static_cast<std::int64_t>(std::llround(device.chain.coincidence_window_s * kPsPerSecond));
    const std::int64_t offset_ps = 8 * window_ps;
    const std::int64_t bin_ps = std::max<std::int64_t>(window_ps / 16, 1);

    std::vector<double> cars;
    cars.reserve(static_cast<std::size_t>(replicates));
    for (int r = 0; r < replicates; ++r)
    {
        const std::uint64_t replicate_seed =
            derive_stream_seed(seed, 0x7265706CULL + static_cast<std::uint64_t>(r));
        const TagStreams streams =
            simulate_timetags(device, pump_power_w, duration_s, replicate_seed);
        const CoincidenceResult counts =
            count_coincidences(streams.signal_ps, streams.idler_ps, window_ps, offset_ps, bin_ps);
        cars.push_back(counts.car_estimate);
    }

    CarEstimate estimate;
    estimate.replicates = replicates;
    double sum = 0.0;
    for (const double value : cars)
    {
        sum += value;
    }
    estimate.mean = sum / static_cast<double>(replicates);
    double ss = 0.0;
    for (const double value : cars)
    {
        const double d = value - estimate.mean;
        ss += d * d;
    }
    estimate.std_error =
        std::sqrt(ss / static_cast<double>(replicates - 1)) / std::sqrt(replicates);
    return estimate;
}

std::string coincidence_result_to_json(const CoincidenceResult &result)
{
    nlohmann::json doc;
    doc["cc"] = result.cc_count;
    doc["ac"] = result.ac_count;
    doc["car"] = result.car_estimate;
    doc["car_stderr"] = result.car_stderr;
    doc["window_ps"] = result.window_ps;
    doc["accidental_offset_ps"] = result.accidental_offset_ps;
    doc["bin_width_ps"] = result.bin_width_ps;
    doc["duration_s"] = result.duration_s;
    doc["histogram"] = nlohmann::json::array();
    for (const HistogramBin &bin : result.histogram)
    {
        doc["histogram"].push_back({{"tau_ps", bin.tau_ps}, {"count", bin.count}});
    }
    return doc.dump(2) + "\n";
}

} // namespace sfwm
