#include "sfwm/resonator.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace sfwm
{

namespace
{

void require_positive(double value, const std::string &what)
{
    if (!std::isfinite(value) || value <= 0.0)
    {
        throw DomainError(what + " must be > 0");
    }
}

} // namespace

double RingGeometry::circumference_m() const
{
    return 2.0 * std::numbers::pi * radius_m;
}

double RingGeometry::group_velocity_m_per_s() const
{
    return constants::speed_of_light_m_per_s / group_index;
}

void RingGeometry::validate(const std::string &prefix) const
{
    if (!std::isfinite(radius_m) || radius_m <= 0.0)
    {
        throw ValidationError(prefix + "radius_um: must be > 0");
    }
    if (!std::isfinite(group_index) || group_index <= 1.0)
    {
        throw ValidationError(prefix + "group_index: must be > 1");
    }
    if (!std::isfinite(effective_area_m2) || effective_area_m2 <= 0.0)
    {
        throw ValidationError(prefix + "effective_area_um2: must be > 0");
    }
}

void ResonatorParams::validate(const std::string &prefix) const
{
    if (!std::isfinite(resonance_frequency_hz) || resonance_frequency_hz <= 0.0)
    {
        throw ValidationError(prefix + "resonance_frequency: must be > 0");
    }
    if (!(q_intrinsic > 0.0))
    {
        throw ValidationError(prefix + "q_intrinsic: must be > 0");
    }
    if (!(q_coupling > 0.0))
    {
        throw ValidationError(prefix + "q_coupling: must be > 0");
    }
    if (!std::isfinite(q_loaded) || q_loaded <= 0.0)
    {
        throw ValidationError(prefix + "q_loaded: must be > 0");
    }
    const double expected = loaded_q(q_intrinsic, q_coupling);
    if (std::abs(q_loaded - expected) > 1e-9 * expected)
    {
        throw ValidationError(prefix + "q_loaded: inconsistent with 1/Q_l = 1/Q_i + 1/Q_c");
    }
    if (q_loaded >= q_intrinsic || q_loaded >= q_coupling)
    {
        throw ValidationError(prefix + "q_loaded: must be below both Q_i and Q_c");
    }
}

ResonatorParams make_resonator_params(double resonance_frequency_hz,
                                      double q_intrinsic,
                                      double q_coupling,
                                      Transmittance extinction)
{
    ResonatorParams params;
    params.resonance_frequency_hz = resonance_frequency_hz;
    params.q_intrinsic = q_intrinsic;
    params.q_coupling = q_coupling;
    params.q_loaded = loaded_q(q_intrinsic, q_coupling);
    params.extinction = extinction;
    params.validate();
    return params;
}

double loaded_q(double q_intrinsic, double q_coupling)
{
    if (!(q_intrinsic > 0.0) || !(q_coupling > 0.0))
    {
        throw DomainError("loaded_q: both Q factors must be > 0");
    }
    // Keep the symmetric and uncoupled points exact instead of going
    // through a double reciprocal rounding.
    if (q_intrinsic == q_coupling)
    {
        return q_intrinsic / 2.0;
    }
    if (std::isinf(q_coupling))
    {
        return q_intrinsic;
    }
    if (std::isinf(q_intrinsic))
    {
        return q_coupling;
    }
    return 1.0 / (1.0 / q_intrinsic + 1.0 / q_coupling);
}

Transmittance transmission_dip(double detuning_hz, const ResonatorParams &params)
{
    params.validate();
    if (!std::isfinite(detuning_hz))
    {
        return Transmittance(1.0);
    }
    const double fwhm_hz = params.resonance_frequency_hz / params.q_loaded;
    const double u = 2.0 * detuning_hz / fwhm_hz;
    const double t_min = params.extinction.value();
    return Transmittance(1.0 - (1.0 - t_min) / (1.0 + u * u));
}

double intrinsic_loss_db_per_cm(double q_intrinsic, double wavelength_m, double group_index)
{
    require_positive(q_intrinsic, "intrinsic_loss_db_per_cm: q_intrinsic");
    require_positive(wavelength_m, "intrinsic_loss_db_per_cm: wavelength");
    require_positive(group_index, "intrinsic_loss_db_per_cm: group_index");
    const double alpha_per_m = 2.0 * std::numbers::pi * group_index / (wavelength_m * q_intrinsic);
    const double db_per_m = alpha_per_m * 10.0 * std::log10(std::numbers::e);
    return db_per_m / 100.0;
}

double linewidth_hz(double q_loaded, double wavelength_m)
{
    require_positive(q_loaded, "linewidth_hz: q_loaded");
    require_positive(wavelength_m, "linewidth_hz: wavelength");
    return (constants::speed_of_light_m_per_s / wavelength_m) / q_loaded;
}

double photon_lifetime_s(double q_loaded, double wavelength_m)
{
    require_positive(q_loaded, "photon_lifetime_s: q_loaded");
    require_positive(wavelength_m, "photon_lifetime_s: wavelength");
    return q_loaded * wavelength_m / (2.0 * std::numbers::pi * constants::speed_of_light_m_per_s);
}

double field_buildup(double q_loaded, double wavelength_m, const RingGeometry &geometry)
{
    require_positive(q_loaded, "field_buildup: q_loaded");
    require_positive(wavelength_m, "field_buildup: wavelength");
    geometry.validate();
    const double omega = wavelength_to_angular_frequency(wavelength_m).rad_per_s();
    return q_loaded * geometry.group_velocity_m_per_s() /
           (omega * geometry.circumference_m() / 2.0);
}

double intrinsic_q_from_fit(double q_loaded, double t_min, CouplingBranch branch)
{
    require_positive(q_loaded, "intrinsic_q_from_fit: q_loaded");
    if (!std::isfinite(t_min) || t_min < 0.0 || t_min >= 1.0)
    {
        throw DomainError("intrinsic_q_from_fit: t_min must be in [0, 1)");
    }
    switch (branch)
    {
    case CouplingBranch::critical:
        return 2.0 * q_loaded;
    case CouplingBranch::under_coupled:
        return 2.0 * q_loaded / (1.0 + std::sqrt(t_min));
    case CouplingBranch::over_coupled:
        return 2.0 * q_loaded / (1.0 - std::sqrt(t_min));
    }
    throw DomainError("intrinsic_q_from_fit: unknown branch");
}

} // namespace sfwm
