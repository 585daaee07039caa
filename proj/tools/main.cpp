#include "sfwm/config.hpp"
#include "sfwm/csv.hpp"
#include "sfwm/estimation.hpp"
#include "sfwm/montecarlo.hpp"
#include "sfwm/noise.hpp"
#include "sfwm/pairgen.hpp"
#include "sfwm/resonator.hpp"
#include "sfwm/rng.hpp"
#include "sfwm/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace
{

using nlohmann::json;

// Exit codes: 0 success, 2 usage/validation, 3 model/fit failure, 4 I/O.
enum ExitCode : int
{
    kOk = 0,
    kUsage = 2,
    kModel = 3,
    kIo = 4
};

struct ManifestInfo
{
    std::string command;
    std::optional<std::string> config_path;
    std::optional<std::uint64_t> seed;
    json args = json::object();
    std::vector<std::string> outputs;
};

// Every command records what produced its outputs so a run can be
// reproduced from the manifest alone.
void write_manifest(const std::filesystem::path &primary_output, const ManifestInfo &info)
{
    json doc;
    doc["tool"] = "ringsfwm";
    doc["version"] = sfwm::kVersion;
    doc["command"] = info.command;
    doc["rng"] = std::string(sfwm::kRngAlgorithm);
    if (info.config_path)
    {
        doc["config_path"] = *info.config_path;
        doc["config_hash"] = sfwm::file_content_hash(*info.config_path);
    }
    if (info.seed)
    {
        doc["seed"] = *info.seed;
    }
    doc["args"] = info.args;
    doc["outputs"] = info.outputs;
    const std::filesystem::path path = primary_output.string() + ".manifest.json";
    sfwm::write_text_file(path, doc.dump(2) + "\n");
}

void print_warnings(const sfwm::DeviceConfig &config)
{
    for (const std::string &warning : config.validation_warnings())
    {
        std::cerr << "warning: " << warning << "\n";
    }
}

int run_fit_transmission(const std::string &input, const std::string &out,
                         const std::string &branch_name, double group_index)
{
    const sfwm::XYSeries spectrum = sfwm::read_xy_csv(input);
    const sfwm::LorentzianDipFit fit = sfwm::fit_lorentzian_dip(spectrum);

    sfwm::CouplingBranch branch = sfwm::CouplingBranch::critical;
    if (branch_name == "under")
    {
        branch = sfwm::CouplingBranch::under_coupled;
    }
    else if (branch_name == "over")
    {
        branch = sfwm::CouplingBranch::over_coupled;
    }

    json doc;
    doc["converged"] = fit.report.converged;
    doc["iterations"] = fit.report.iterations;
    doc["reduced_chi_square"] = fit.report.reduced_chi_square;
    doc["nu0_hz"] = fit.resonance_frequency_hz;
    doc["q_loaded"] = fit.q_loaded;
    doc["t_min"] = fit.t_min;
    doc["extinction_db"] =
        sfwm::transmittance_to_db_loss(sfwm::Transmittance(std::max(fit.t_min, 1e-300))).db();
    doc["baseline"] = fit.baseline;
    doc["linewidth_fwhm_hz"] = fit.linewidth_fwhm_hz();
    doc["branch"] = branch_name;
    doc["q_intrinsic"] = fit.q_intrinsic(branch);
    for (const sfwm::FitParameter &p : fit.report.parameters)
    {
        doc["uncertainties"][p.name] = p.uncertainty;
    }
    const double wavelength_m =
        sfwm::constants::speed_of_light_m_per_s / fit.resonance_frequency_hz;
    doc["photon_lifetime_s"] = sfwm::photon_lifetime_s(fit.q_loaded, wavelength_m);
    if (group_index > 0.0)
    {
        doc["group_index"] = group_index;
        doc["intrinsic_loss_db_per_cm"] =
            sfwm::intrinsic_loss_db_per_cm(fit.q_intrinsic(branch), wavelength_m, group_index);
    }
    sfwm::write_text_file(out, doc.dump(2) + "\n");

    ManifestInfo manifest;
    manifest.command = "fit-transmission";
    manifest.args = {{"input", input}, {"branch", branch_name}, {"group_index", group_index}};
    manifest.outputs = {out};
    write_manifest(out, manifest);

    std::cout << "q_loaded " << fit.q_loaded << ", q_intrinsic (" << branch_name << ") "
              << fit.q_intrinsic(branch) << ", linewidth " << fit.linewidth_fwhm_hz() << " Hz\n";
    return kOk;
}

int run_predict(const std::string &config_path, double power_mw_min, double power_mw_max,
                int steps, const std::string &out)
{
    if (!(power_mw_min >= 0.0) || !(power_mw_max > 0.0) || power_mw_max < power_mw_min)
    {
        throw sfwm::ValidationError("predict: power range must satisfy 0 <= min <= max, max > 0");
    }
    if (steps < 1)
    {
        throw sfwm::ValidationError("predict: steps must be >= 1");
    }
    const sfwm::DeviceConfig device = sfwm::load_device_config(config_path);
    print_warnings(device);

    std::vector<double> powers_w;
    powers_w.reserve(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i)
    {
        const double fraction =
            steps == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(steps - 1);
        powers_w.push_back((power_mw_min + fraction * (power_mw_max - power_mw_min)) * 1e-3);
    }

    const std::vector<sfwm::CarPoint> curve = sfwm::car_curve(device, powers_w);
    const std::vector<std::string> header = {"power_mw", "g_pairs_per_s", "p_sfwm_w",
                                             "r_s",      "r_i",           "cc",
                                             "ac",       "car"};
    std::vector<std::vector<double>> rows;
    rows.reserve(curve.size());
    for (const sfwm::CarPoint &point : curve)
    {
        const sfwm::PairRate rate = sfwm::pair_rate(device, point.pump_power_w);
        rows.push_back({point.pump_power_w * 1e3, rate.pairs_per_s, rate.power_w,
                        point.singles_signal_per_s, point.singles_idler_per_s, point.cc_per_s,
                        point.ac_per_s, point.car});
    }
    sfwm::write_table_csv(out, header, rows);

    ManifestInfo manifest;
    manifest.command = "predict";
    manifest.config_path = config_path;
    manifest.args = {{"power_mw_min", power_mw_min},
                     {"power_mw_max", power_mw_max},
                     {"steps", steps}};
    manifest.outputs = {out};
    write_manifest(out, manifest);

    std::cout << "wrote " << rows.size() << " rows to " << out << "\n";
    return kOk;
}

int run_simulate(const std::string &config_path, double power_mw, double duration_s,
                 std::uint64_t seed, const std::string &out)
{
    if (!(duration_s > 0.0))
    {
        throw sfwm::ValidationError("simulate: duration must be > 0");
    }
    if (!(power_mw >= 0.0))
    {
        throw sfwm::ValidationError("simulate: power must be >= 0");
    }
    const sfwm::DeviceConfig device = sfwm::load_device_config(config_path);
    print_warnings(device);

    const sfwm::TagStreams streams =
        sfwm::simulate_timetags(device, power_mw * 1e-3, duration_s, seed);
    sfwm::write_timetag_csv(out, streams);

    ManifestInfo manifest;
    manifest.command = "simulate";
    manifest.config_path = config_path;
    manifest.seed = seed;
    manifest.args = {{"power_mw", power_mw}, {"duration_s", duration_s}};
    manifest.outputs = {out};
    write_manifest(out, manifest);

    std::cout << "wrote " << streams.signal_ps.size() << " signal and "
              << streams.idler_ps.size() << " idler tags to " << out << "\n";
    return kOk;
}

int run_analyze(const std::string &input, std::int64_t window_ps, std::int64_t offset_ps,
                std::int64_t bin_ps, const std::string &out)
{
    const sfwm::TagStreams streams = sfwm::read_timetag_csv(input);
    const sfwm::CoincidenceResult result =
        sfwm::count_coincidences(streams.signal_ps, streams.idler_ps, window_ps, offset_ps,
                                 bin_ps);
    sfwm::write_text_file(out, sfwm::coincidence_result_to_json(result));

    ManifestInfo manifest;
    manifest.command = "analyze";
    manifest.args = {{"input", input},
                     {"window_ps", window_ps},
                     {"offset_ps", offset_ps},
                     {"bin_ps", bin_ps}};
    manifest.outputs = {out};
    write_manifest(out, manifest);

    std::cout << "cc " << result.cc_count << ", ac " << result.ac_count << ", car "
              << result.car_estimate << "\n";
    return kOk;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Microring photon-pair source model, simulator and estimators"};
    app.set_version_flag("--version", std::string("ringsfwm ") + sfwm::kVersion);
    app.require_subcommand(1);

    // fit-transmission
    auto *fit_cmd = app.add_subcommand(
        "fit-transmission", "Fit a Lorentzian dip to a transmission spectrum CSV");
    std::string fit_input;
    std::string fit_out;
    std::string branch = "critical";
    double group_index = 0.0;
    fit_cmd->add_option("--input", fit_input, "CSV with header, columns frequency_hz,transmission")
        ->required();
    fit_cmd->add_option("--out", fit_out, "Output JSON fit report")->required();
    fit_cmd->add_option("--branch", branch, "Coupling branch for Q_i recovery")
        ->check(CLI::IsMember({"under", "over", "critical"}));
    fit_cmd->add_option("--group-index", group_index,
                        "Group index; adds propagation loss extraction to the report");

    // predict
    auto *predict_cmd =
        app.add_subcommand("predict", "Analytic rate/singles/CAR curves over a power sweep");
    std::string predict_config;
    std::string predict_out;
    double power_mw_min = 0.05;
    double power_mw_max = 2.0;
    int steps = 40;
    predict_cmd->add_option("--config", predict_config, "Device config JSON")->required();
    predict_cmd->add_option("--power-mw-min", power_mw_min, "Lowest pump power, mW");
    predict_cmd->add_option("--power-mw-max", power_mw_max, "Highest pump power, mW");
    predict_cmd->add_option("--steps", steps, "Number of sweep points");
    predict_cmd->add_option("--out", predict_out, "Output CSV")->required();

    // simulate
    auto *simulate_cmd =
        app.add_subcommand("simulate", "Monte Carlo time-tag streams for one pump power");
    std::string simulate_config;
    std::string simulate_out;
    double power_mw = 1.0;
    double duration_s = 1.0;
    std::uint64_t seed = 0;
    simulate_cmd->add_option("--config", simulate_config, "Device config JSON")->required();
    simulate_cmd->add_option("--power-mw", power_mw, "Pump power, mW")->required();
    simulate_cmd->add_option("--duration-s", duration_s, "Simulated duration, s")->required();
    simulate_cmd->add_option("--seed", seed, "RNG seed; required, no silent default")->required();
    simulate_cmd->add_option("--out", simulate_out, "Output time-tag CSV")->required();

    // analyze
    auto *analyze_cmd =
        app.add_subcommand("analyze", "Coincidence counting and CAR from a time-tag CSV");
    std::string analyze_input;
    std::string analyze_out;
    std::int64_t window_ps = 1152;
    std::int64_t offset_ps = 0;
    std::int64_t bin_ps = 96;
    analyze_cmd->add_option("--input", analyze_input, "Time-tag CSV")->required();
    analyze_cmd->add_option("--window-ps", window_ps, "Coincidence window, ps");
    analyze_cmd->add_option("--offset-ps", offset_ps,
                            "Accidental-estimation shift, ps (default 8x window)");
    analyze_cmd->add_option("--bin-ps", bin_ps, "Histogram bin width, ps");
    analyze_cmd->add_option("--out", analyze_out, "Output JSON")->required();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::CallForVersion &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return kUsage;
    }

    try
    {
        if (fit_cmd->parsed())
        {
            return run_fit_transmission(fit_input, fit_out, branch, group_index);
        }
        if (predict_cmd->parsed())
        {
            return run_predict(predict_config, power_mw_min, power_mw_max, steps, predict_out);
        }
        if (simulate_cmd->parsed())
        {
            return run_simulate(simulate_config, power_mw, duration_s, seed, simulate_out);
        }
        if (analyze_cmd->parsed())
        {
            if (offset_ps == 0)
            {
                offset_ps = 8 * window_ps;
            }
            return run_analyze(analyze_input, window_ps, offset_ps, bin_ps, analyze_out);
        }
    }
    catch (const sfwm::ValidationError &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    catch (const sfwm::DomainError &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    catch (const sfwm::FitError &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kModel;
    }
    catch (const sfwm::IoError &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return kModel;
    }
    return kUsage;
}
