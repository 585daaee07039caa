#include "sfwm/pairgen.hpp"

#include "sfwm/config.hpp"

#include <cmath>
#include <numbers>

namespace sfwm
{

void NonlinearParams::validate(double effective_area_m2, const std::string &prefix) const
{
    if (!std::isfinite(nonlinear_index_m2_per_w) || nonlinear_index_m2_per_w <= 0.0)
    {
        throw ValidationError(prefix + "nonlinear_index_m2_per_w: must be > 0");
    }
    if (!std::isfinite(pump_wavelength_m) || pump_wavelength_m <= 0.0)
    {
        throw ValidationError(prefix + "pump_wavelength: must be > 0");
    }
    const double expected =
        nonlinear_parameter(nonlinear_index_m2_per_w, pump_wavelength_m, effective_area_m2);
    if (!(gamma_per_w_m > 0.0) || std::abs(gamma_per_w_m - expected) > 1e-9 * expected)
    {
        throw ValidationError(prefix + "gamma: inconsistent with 2 pi n_nl / (lambda_p A_eff)");
    }
}

double nonlinear_parameter(double nonlinear_index_m2_per_w,
                           double pump_wavelength_m,
                           double effective_area_m2)
{
    if (!(nonlinear_index_m2_per_w > 0.0) || !(pump_wavelength_m > 0.0) ||
        !(effective_area_m2 > 0.0))
    {
        throw DomainError("nonlinear_parameter: all inputs must be > 0");
    }
    return 2.0 * std::numbers::pi * nonlinear_index_m2_per_w /
           (pump_wavelength_m * effective_area_m2);
}

double sfwm_power_w(const DeviceConfig &device, double pump_power_w)
{
    if (!std::isfinite(pump_power_w) || pump_power_w < 0.0)
    {
        throw DomainError("sfwm_power_w: pump power must be >= 0");
    }
    const double gamma = device.gamma_per_w_m();
    const double circumference = device.geometry.circumference_m();
    const double v_p = device.geometry.group_velocity_m_per_s();
    const double omega_p = device.pump_angular_frequency().rad_per_s();
    const double q_l = device.resonator.q_loaded;

    const double gain = gamma * circumference;
    const double buildup = q_l * v_p / (omega_p * circumference / 2.0);
    const double vacuum_scale = constants::hbar_j_s * omega_p * v_p / (2.0 * circumference);
    return gain * gain * buildup * buildup * buildup * vacuum_scale * pump_power_w * pump_power_w;
}

double pair_generation_rate(const DeviceConfig &device, double pump_power_w)
{
    const double power = sfwm_power_w(device, pump_power_w);
    return power / (2.0 * constants::hbar_j_s * device.pump_angular_frequency().rad_per_s());
}

PairRate pair_rate(const DeviceConfig &device, double pump_power_w)
{
    PairRate rate;
    rate.power_w = sfwm_power_w(device, pump_power_w);
    rate.pairs_per_s =
        rate.power_w / (2.0 * constants::hbar_j_s * device.pump_angular_frequency().rad_per_s());
    return rate;
}

double infer_generation_rate(double cc_rate_per_s, DbLoss eta_s, DbLoss eta_i)
{
    if (!std::isfinite(cc_rate_per_s) || cc_rate_per_s < 0.0)
    {
        throw ValidationError("infer_generation_rate: coincidence rate must be >= 0");
    }
    return cc_rate_per_s / db_loss_to_transmittance(eta_s + eta_i).value();
}

} // namespace sfwm
