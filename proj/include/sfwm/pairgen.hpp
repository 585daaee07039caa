#pragma once

#include "sfwm/quantities.hpp"

#include <string>

namespace sfwm
{

struct DeviceConfig;

struct NonlinearParams
{
    double nonlinear_index_m2_per_w = 0.0; // n_nl
    double gamma_per_w_m = 0.0;            // derived from n_nl, lambda_p, A_eff
    double pump_wavelength_m = 0.0;

    void validate(double effective_area_m2, const std::string &prefix = "nonlinear.") const;
};

// Generated pair flux and the corresponding optical power; the two are
// related by rate = power / (2 hbar omega_p).
struct PairRate
{
    double pairs_per_s = 0.0;
    double power_w = 0.0;
};

// gamma = 2 pi n_nl / (lambda_p A_eff).
double nonlinear_parameter(double nonlinear_index_m2_per_w,
                           double pump_wavelength_m,
                           double effective_area_m2);

// Spontaneously generated power at the ring-bus coupling point:
//   P = (gamma L)^2 (Q_l v_p / (omega_p L / 2))^3 (hbar omega_p v_p / 2L) P_p^2
// with P_p the pump power in the bus waveguide at the coupling point.
double sfwm_power_w(const DeviceConfig &device, double pump_power_w);

// sfwm_power_w / (2 hbar omega_p), in pairs/s.
double pair_generation_rate(const DeviceConfig &device, double pump_power_w);

PairRate pair_rate(const DeviceConfig &device, double pump_power_w);

// Inverts a measured coincidence rate through the collection losses:
// cc / 10^(-(eta_s + eta_i)/10).
double infer_generation_rate(double cc_rate_per_s, DbLoss eta_s, DbLoss eta_i);

} // namespace sfwm
