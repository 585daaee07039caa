#pragma once

#include "sfwm/quantities.hpp"

#include <string>

namespace sfwm
{

// Which side of critical coupling a fitted resonance sits on. A power
// transmission spectrum alone cannot distinguish the branches, so the
// caller has to assert one; critical treats the residual dip depth as
// coupling-ideal and returns Q_i = 2 Q_l.
enum class CouplingBranch
{
    under_coupled,
    critical,
    over_coupled
};

struct RingGeometry
{
    double radius_m = 0.0;
    double group_index = 0.0;
    double effective_area_m2 = 0.0;

    double circumference_m() const;
    double group_velocity_m_per_s() const;

    // Throws ValidationError naming "<prefix><field>" on the first violation.
    void validate(const std::string &prefix = "geometry.") const;
};

struct ResonatorParams
{
    double resonance_frequency_hz = 0.0;
    double q_intrinsic = 0.0;
    double q_coupling = 0.0; // may be +infinity (no bus coupling)
    double q_loaded = 0.0;
    Transmittance extinction{1.0}; // residual on-resonance transmittance

    void validate(const std::string &prefix = "resonator.") const;
};

// Builds a consistent parameter record, deriving Q_l from Q_i and Q_c.
ResonatorParams make_resonator_params(double resonance_frequency_hz,
                                      double q_intrinsic,
                                      double q_coupling,
                                      Transmittance extinction);

// 1 / (1/Q_i + 1/Q_c). Exactly Q/2 at critical coupling; passing
// +infinity for either input returns the other unchanged.
double loaded_q(double q_intrinsic, double q_coupling);

// Lorentzian dip T(d) = 1 - (1 - T_min) / (1 + (2 d / FWHM)^2) with
// FWHM = nu0 / Q_l and T_min the on-resonance extinction.
Transmittance transmission_dip(double detuning_hz, const ResonatorParams &params);

// Propagation loss implied by the intrinsic Q: alpha = 2 pi n_g / (lambda Q_i)
// as a power attenuation coefficient, reported in dB/cm.
double intrinsic_loss_db_per_cm(double q_intrinsic, double wavelength_m, double group_index);

// Loaded linewidth (c / lambda) / Q_l.
double linewidth_hz(double q_loaded, double wavelength_m);

// Cavity photon lifetime Q_l / omega0.
double photon_lifetime_s(double q_loaded, double wavelength_m);

// Intracavity build-up factor Q_l v_p / (omega_p L / 2); equals finesse/pi.
double field_buildup(double q_loaded, double wavelength_m, const RingGeometry &geometry);

// Recovers Q_i from a fitted (Q_l, T_min) on the stated coupling branch.
double intrinsic_q_from_fit(double q_loaded,
                            double t_min,
                            CouplingBranch branch = CouplingBranch::critical);

} // namespace sfwm
