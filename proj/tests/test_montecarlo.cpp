#include "sfwm/montecarlo.hpp"

#include "helpers.hpp"
#include "sfwm/config.hpp"
#include "sfwm/csv.hpp"
#include "sfwm/estimation.hpp"
#include "sfwm/noise.hpp"
#include "sfwm/pairgen.hpp"
#include "sfwm/rng.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <vector>

using namespace sfwm;
using namespace sfwm::testing;

TEST_CASE("all rates zero gives empty streams")
{
    DeviceConfig device = reference_device();
    device.noise.raman_coefficient_per_w = 0.0;
    device.noise.dark_counts_signal_per_s = 0.0;
    device.noise.dark_counts_idler_per_s = 0.0;
    const TagStreams streams = simulate_timetags(device, 0.0, 1.0, 99);
    CHECK(streams.signal_ps.empty());
    CHECK(streams.idler_ps.empty());
}

TEST_CASE("lossless jitterless pair counts are equal and Poisson-consistent")
{
    DeviceConfig device = noiseless_lossless_device();
    const double pump = pump_for_rate(device, 1e4);
    const TagStreams streams = simulate_timetags(device, pump, 10.0, 12345);

    CHECK(streams.signal_ps.size() == streams.idler_ps.size());
    const double n = static_cast<double>(streams.signal_ps.size());
    CHECK(std::abs(n - 1e5) <= 4.0 * std::sqrt(1e5));
    CHECK(std::is_sorted(streams.signal_ps.begin(), streams.signal_ps.end()));
    CHECK(std::is_sorted(streams.idler_ps.begin(), streams.idler_ps.end()));
}

TEST_CASE("simulation is deterministic in the seed")
{
    const DeviceConfig device = reference_device();
    const TagStreams a = simulate_timetags(device, 1e-3, 0.2, 42);
    const TagStreams b = simulate_timetags(device, 1e-3, 0.2, 42);
    CHECK(a.signal_ps == b.signal_ps);
    CHECK(a.idler_ps == b.idler_ps);

    const TagStreams c = simulate_timetags(device, 1e-3, 0.2, 43);
    CHECK(a.signal_ps != c.signal_ps);
}

TEST_CASE("count_coincidences basics")
{
    const std::vector<std::uint64_t> signal{1000};
    SUBCASE("pair inside the window")
    {
        const std::vector<std::uint64_t> idler{1200};
        const CoincidenceResult result = count_coincidences(signal, idler, 1152, 9216, 96);
        CHECK(result.cc_count == 1);
        CHECK(result.ac_count == 0);
    }
    SUBCASE("pair outside the window")
    {
        const std::vector<std::uint64_t> idler{5000};
        const CoincidenceResult result = count_coincidences(signal, idler, 1152, 9216, 96);
        CHECK(result.cc_count == 0);
    }
    SUBCASE("boundary is inclusive at |tau| = window/2")
    {
        const std::vector<std::uint64_t> idler{1000 + 576};
        const CoincidenceResult result = count_coincidences(signal, idler, 1152, 9216, 96);
        CHECK(result.cc_count == 1);
        const CoincidenceResult outside =
            count_coincidences(signal, std::vector<std::uint64_t>{1000 + 577}, 1152, 9216, 96);
        CHECK(outside.cc_count == 0);
    }
}

TEST_CASE("count_coincidences on empty streams")
{
    const std::vector<std::uint64_t> empty;
    const CoincidenceResult result = count_coincidences(empty, empty, 1152, 9216, 96);
    CHECK(result.cc_count == 0);
    CHECK(result.ac_count == 0);
    CHECK(result.duration_s == 0.0);
    CHECK(std::isnan(result.car_estimate));
}

TEST_CASE("count_coincidences input validation")
{
    const std::vector<std::uint64_t> sorted{100, 200, 300};
    const std::vector<std::uint64_t> unsorted{300, 100, 200};
    CHECK_THROWS_AS(count_coincidences(unsorted, sorted, 1152, 9216, 96), ValidationError);
    CHECK_THROWS_AS(count_coincidences(sorted, unsorted, 1152, 9216, 96), ValidationError);
    CHECK_THROWS_AS(count_coincidences(sorted, sorted, 0, 9216, 96), ValidationError);
    CHECK_THROWS_AS(count_coincidences(sorted, sorted, 1152, 1000, 96), ValidationError);
    CHECK_THROWS_AS(count_coincidences(sorted, sorted, 1152, 9216, 0), ValidationError);
}

TEST_CASE("merge counter matches the brute-force oracle")
{
    Rng rng(777);
    for (int round = 0; round < 25; ++round)
    {
        const std::size_t n_signal = 200 + rng.next_u64() % 1800;
        const std::size_t n_idler = 200 + rng.next_u64() % 1800;
        const std::uint64_t span = 2'000'000 + rng.next_u64() % 20'000'000;
        const auto signal = random_sorted_stream(rng, n_signal, span);
        const auto idler = random_sorted_stream(rng, n_idler, span);
        const std::int64_t window = 500 + static_cast<std::int64_t>(rng.next_u64() % 2000);
        const std::int64_t offset = window * (2 + static_cast<std::int64_t>(rng.next_u64() % 6));
        const std::int64_t bin = 1 + static_cast<std::int64_t>(rng.next_u64() % 199);

        const CoincidenceResult merged = count_coincidences(signal, idler, window, offset, bin);
        const BruteForceCounts brute =
            brute_force_coincidences(signal, idler, window, offset, bin);
        CHECK(merged.cc_count == brute.cc);
        CHECK(merged.ac_count == brute.ac);
        REQUIRE(merged.histogram.size() == brute.histogram.size());
        for (std::size_t i = 0; i < brute.histogram.size(); ++i)
        {
            CHECK(merged.histogram[i].count == brute.histogram[i]);
        }
    }
}

TEST_CASE("simulated singles rates match the analytic model")
{
    const DeviceConfig device = reference_device();
    const double pump = 1e-3;
    const double duration = 5.0;
    const TagStreams streams = simulate_timetags(device, pump, duration, 2024);

    const double generation = pair_generation_rate(device, pump);
    const SinglesRates expected = singles_rates(generation, device.noise, device.chain, pump);

    const double n_s = static_cast<double>(streams.signal_ps.size());
    const double n_i = static_cast<double>(streams.idler_ps.size());
    CHECK(std::abs(n_s / duration - expected.signal_per_s) / expected.signal_per_s <=
          3.0 / std::sqrt(n_s));
    CHECK(std::abs(n_i / duration - expected.idler_per_s) / expected.idler_per_s <=
          3.0 / std::sqrt(n_i));
}

TEST_CASE("simulated CAR matches the analytic model at the reference power")
{
    const DeviceConfig device = reference_device();
    const double pump = 1.5e-3;
    const double duration = 8.0;
    const TagStreams streams = simulate_timetags(device, pump, duration, 31337);
    const CoincidenceResult counts =
        count_coincidences(streams.signal_ps, streams.idler_ps, 1152, 9216, 96);

    const double generation = pair_generation_rate(device, pump);
    const SinglesRates singles = singles_rates(generation, device.noise, device.chain, pump);
    const CoincidenceRates analytic = coincidence_rates(generation, singles, device.chain);
    const double analytic_car = car(analytic.cc_per_s, analytic.ac_per_s);

    // The raw coincidence estimate carries the accidental background under
    // the peak and the finite-window pair loss; both stay inside the
    // counting error at this sample size.
    CHECK(std::abs(counts.car_estimate - analytic_car) <= 3.0 * counts.car_stderr);

    const double cc_rate = static_cast<double>(counts.cc_count) / duration;
    CHECK(std::abs(cc_rate - analytic.cc_per_s) <=
          4.0 * std::sqrt(static_cast<double>(counts.cc_count)) / duration +
              0.04 * analytic.cc_per_s);
}

TEST_CASE("accidental estimate is unbiased for independent streams")
{
    // Noise-only device: two independent Poisson streams.
    DeviceConfig device = reference_device();
    device.chain.detector_jitter_fwhm_s = 0.0;
    const double duration = 5.0;
    const TagStreams streams = simulate_timetags(device, 0.0, duration, 555);

    const SinglesRates singles = singles_rates(0.0, device.noise, device.chain, 0.0);
    const double expected_ac =
        singles.signal_per_s * singles.idler_per_s * 1152e-12 * duration;
    const CoincidenceResult counts =
        count_coincidences(streams.signal_ps, streams.idler_ps, 1152, 9216, 96);
    CHECK(std::abs(static_cast<double>(counts.ac_count) - expected_ac) <=
          3.0 * std::sqrt(expected_ac) + 3.0);
    CHECK(std::abs(static_cast<double>(counts.cc_count) - expected_ac) <=
          3.0 * std::sqrt(expected_ac) + 3.0);
}

TEST_CASE("jitterless tau histogram decays at the photon lifetime")
{
    DeviceConfig device = noiseless_lossless_device();
    const double pump = pump_for_rate(device, 2e5);
    const TagStreams streams = simulate_timetags(device, pump, 1.0, 4242);

    const CoincidenceResult counts =
        count_coincidences(streams.signal_ps, streams.idler_ps, 1200, 9600, 10);

    // Fit ln(count) on the positive-tau flank.
    XYSeries flank;
    for (const HistogramBin &bin : counts.histogram)
    {
        if (bin.tau_ps >= 20 && bin.tau_ps <= 350 && bin.count >= 30)
        {
            flank.add(static_cast<double>(bin.tau_ps), std::log(static_cast<double>(bin.count)));
        }
    }
    REQUIRE(flank.size() >= 10);
    const FitReport fit = fit_linear(flank);
    const double decay_ps = -1.0 / fit.value("slope");
    const double lifetime_ps =
        photon_lifetime_s(device.resonator.q_loaded, device.pump_wavelength_m) * 1e12;
    CHECK(std::abs(decay_ps - lifetime_ps) / lifetime_ps <= 0.15);
}

TEST_CASE("jittered histogram width is jitter-dominated")
{
    DeviceConfig device = noiseless_lossless_device();
    device.chain.detector_jitter_fwhm_s = 350e-12;
    const double pump = pump_for_rate(device, 2e5);
    const TagStreams streams = simulate_timetags(device, pump, 1.0, 911);
    const CoincidenceResult counts =
        count_coincidences(streams.signal_ps, streams.idler_ps, 2400, 19200, 10);

    const auto peak = std::max_element(counts.histogram.begin(), counts.histogram.end(),
                                       [](const HistogramBin &a, const HistogramBin &b)
                                       { return a.count < b.count; });
    const double half = static_cast<double>(peak->count) / 2.0;
    double left = 0.0;
    double right = 0.0;
    for (const HistogramBin &bin : counts.histogram)
    {
        if (bin.count >= half)
        {
            left = static_cast<double>(bin.tau_ps);
            break;
        }
    }
    for (auto it = counts.histogram.rbegin(); it != counts.histogram.rend(); ++it)
    {
        if (it->count >= half)
        {
            right = static_cast<double>(it->tau_ps);
            break;
        }
    }
    const double fwhm_ps = right - left;
    // Two detectors at 350 ps each combine to ~495 ps, against a 92 ps
    // lifetime-only width.
    CHECK(fwhm_ps > 350.0);
    CHECK(fwhm_ps < 700.0);
}

TEST_CASE("estimate_car_mc on a noiseless unity-collection device")
{
    DeviceConfig device = noiseless_lossless_device();
    // G dt = 1e-3 with the 1152 ps window.
    const double generation = 1e-3 / device.chain.coincidence_window_s;
    const double pump = pump_for_rate(device, generation);
    const CarEstimate estimate = estimate_car_mc(device, pump, 1.0, 2718, 4);
    CHECK(estimate.replicates == 4);
    CHECK(std::abs(estimate.mean - 1000.0) <= 3.0 * estimate.std_error + 2.0);

    CHECK_THROWS_AS(estimate_car_mc(device, pump, 1.0, 2718, 1), ValidationError);
}

TEST_CASE("replicated estimates are deterministic")
{
    const DeviceConfig device = reference_device();
    const CarEstimate a = estimate_car_mc(device, 2e-3, 1.0, 7, 2);
    const CarEstimate b = estimate_car_mc(device, 2e-3, 1.0, 7, 2);
    CHECK(std::isfinite(a.mean));
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
}

TEST_CASE("non-paralyzable dead time enforces a minimum spacing")
{
    DeviceConfig device = reference_device();
    device.chain.dead_time_s = 50e-9;
    const TagStreams gated = simulate_timetags(device, 1e-3, 0.2, 5);

    device.chain.dead_time_s = 0.0;
    const TagStreams free_running = simulate_timetags(device, 1e-3, 0.2, 5);

    CHECK(gated.signal_ps.size() < free_running.signal_ps.size());
    for (std::size_t i = 1; i < gated.signal_ps.size(); ++i)
    {
        CHECK(gated.signal_ps[i] - gated.signal_ps[i - 1] >= 50000);
    }
}

TEST_CASE("merged tag view is time-ordered and complete")
{
    TagStreams streams;
    streams.signal_ps = {100, 300, 300, 900};
    streams.idler_ps = {200, 300, 1000};
    const std::vector<TimeTag> merged = merge_tags(streams);
    REQUIRE(merged.size() == 7);
    for (std::size_t i = 1; i < merged.size(); ++i)
    {
        CHECK(merged[i].time_ps >= merged[i - 1].time_ps);
    }
    std::size_t signal_count = 0;
    for (const TimeTag &tag : merged)
    {
        signal_count += tag.channel == Channel::signal ? 1 : 0;
    }
    CHECK(signal_count == 4);
}

TEST_CASE("time-tag CSV round trip")
{
    const DeviceConfig device = reference_device();
    const TagStreams streams = simulate_timetags(device, 0.5e-3, 0.2, 88);
    const std::filesystem::path path =
        std::filesystem::temp_directory_path() / "sfwm_tags_roundtrip.csv";
    write_timetag_csv(path, streams);
    const TagStreams loaded = read_timetag_csv(path);
    CHECK(loaded.signal_ps == streams.signal_ps);
    CHECK(loaded.idler_ps == streams.idler_ps);
    std::filesystem::remove(path);
}

TEST_CASE("result JSON carries the documented fields")
{
    const std::vector<std::uint64_t> signal{1000, 2000};
    const std::vector<std::uint64_t> idler{1100};
    const CoincidenceResult result = count_coincidences(signal, idler, 1152, 9216, 96);
    const std::string json = coincidence_result_to_json(result);
    for (const char *key : {"\"cc\"", "\"ac\"", "\"car\"", "\"car_stderr\"", "\"window_ps\"",
                            "\"duration_s\"", "\"histogram\"", "\"tau_ps\""})
    {
        CHECK(json.find(key) != std::string::npos);
    }
}
