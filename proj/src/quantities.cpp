#include "sfwm/quantities.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace sfwm
{

DbLoss::DbLoss(double db) : db_(db)
{
    if (!std::isfinite(db))
    {
        throw ValidationError("DbLoss: value must be finite");
    }
    if (db < 0.0)
    {
        throw ValidationError("DbLoss: value must be >= 0 (got " + std::to_string(db) + " dB)");
    }
}

Transmittance::Transmittance(double value) : value_(value)
{
    if (!std::isfinite(value) || value < 0.0 || value > 1.0)
    {
        throw ValidationError("Transmittance: value must be in [0, 1] (got " +
                              std::to_string(value) + ")");
    }
}

AngularFrequency::AngularFrequency(double rad_per_s) : rad_per_s_(rad_per_s)
{
    if (!std::isfinite(rad_per_s) || rad_per_s <= 0.0)
    {
        throw ValidationError("AngularFrequency: value must be > 0");
    }
}

double AngularFrequency::hz() const
{
    return rad_per_s_ / (2.0 * std::numbers::pi);
}

Transmittance db_loss_to_transmittance(DbLoss loss)
{
    return Transmittance(std::pow(10.0, -loss.db() / 10.0));
}

DbLoss transmittance_to_db_loss(Transmittance t)
{
    if (t.value() <= 0.0)
    {
        throw DomainError("transmittance_to_db_loss: transmittance must be > 0");
    }
    // -10 log10(1) is -0.0; normalize so the round trip lands on +0.0.
    const double db = -10.0 * std::log10(t.value());
    return DbLoss(db == 0.0 ? 0.0 : db);
}

AngularFrequency wavelength_to_angular_frequency(double wavelength_m)
{
    if (!std::isfinite(wavelength_m) || wavelength_m <= 0.0)
    {
        throw DomainError("wavelength_to_angular_frequency: wavelength must be > 0");
    }
    return AngularFrequency(2.0 * std::numbers::pi * constants::speed_of_light_m_per_s /
                            wavelength_m);
}

} // namespace sfwm
