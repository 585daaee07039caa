#pragma once

#include "sfwm/errors.hpp"

namespace sfwm
{

namespace constants
{
// Exact SI values (CODATA 2018 fixed constants).
inline constexpr double speed_of_light_m_per_s = 299'792'458.0;
inline constexpr double hbar_j_s = 1.054571817e-34;
inline constexpr double planck_j_s = 6.62607015e-34;
inline constexpr double boltzmann_j_per_k = 1.380649e-23;
} // namespace constants

// Decibels of power attenuation; positive values mean loss.
class DbLoss
{
public:
    DbLoss() = default;
    explicit DbLoss(double db);

    double db() const { return db_; }

    friend DbLoss operator+(DbLoss a, DbLoss b) { return DbLoss(a.db_ + b.db_); }

private:
    double db_ = 0.0;
};

// Dimensionless power fraction in [0, 1].
class Transmittance
{
public:
    Transmittance() = default;
    explicit Transmittance(double value);

    double value() const { return value_; }

private:
    double value_ = 1.0;
};

// Angular frequency in rad/s, strictly positive.
class AngularFrequency
{
public:
    AngularFrequency() = default;
    explicit AngularFrequency(double rad_per_s);

    double rad_per_s() const { return rad_per_s_; }
    double hz() const;

private:
    double rad_per_s_ = 0.0;
};

// 10^(-loss/10). Inverse of transmittance_to_db_loss.
Transmittance db_loss_to_transmittance(DbLoss loss);

// -10 log10(t); throws DomainError for t = 0.
DbLoss transmittance_to_db_loss(Transmittance t);

// 2*pi*c / wavelength; throws DomainError unless wavelength > 0.
AngularFrequency wavelength_to_angular_frequency(double wavelength_m);

} // namespace sfwm
