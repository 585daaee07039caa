#include "sfwm/quantities.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

using namespace sfwm;

TEST_CASE("dB loss to transmittance")
{
    CHECK(db_loss_to_transmittance(DbLoss(0.0)).value() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(db_loss_to_transmittance(DbLoss(10.0)).value() == doctest::Approx(0.1).epsilon(1e-15));
    // Combined collection losses 16.4 + 24.1 dB.
    CHECK(db_loss_to_transmittance(DbLoss(16.4) + DbLoss(24.1)).value() ==
          doctest::Approx(8.912509381337459e-05).epsilon(1e-12));
}

TEST_CASE("transmittance to dB loss")
{
    CHECK(transmittance_to_db_loss(Transmittance(1.0)).db() == 0.0);
    CHECK(transmittance_to_db_loss(Transmittance(0.01)).db() ==
          doctest::Approx(20.0).epsilon(1e-15));
    // 23 dB on-resonance pump extinction.
    CHECK(transmittance_to_db_loss(Transmittance(0.005012)).db() ==
          doctest::Approx(22.999889376778878).epsilon(1e-12));
}

TEST_CASE("quantity validation")
{
    CHECK_THROWS_AS(DbLoss(-1.0), ValidationError);
    CHECK_THROWS_AS(DbLoss(std::numeric_limits<double>::quiet_NaN()), ValidationError);
    CHECK_THROWS_AS(DbLoss(std::numeric_limits<double>::infinity()), ValidationError);
    CHECK_THROWS_AS(Transmittance(-0.1), ValidationError);
    CHECK_THROWS_AS(Transmittance(1.2), ValidationError);
    CHECK_THROWS_AS(transmittance_to_db_loss(Transmittance(0.0)), DomainError);
    CHECK_THROWS_AS(AngularFrequency(0.0), ValidationError);
    CHECK_THROWS_AS(AngularFrequency(-1.0), ValidationError);
}

TEST_CASE("wavelength to angular frequency")
{
    CHECK(wavelength_to_angular_frequency(785e-9).rad_per_s() ==
          doctest::Approx(2.399556136699176e15).epsilon(1e-12));
    CHECK(wavelength_to_angular_frequency(777.5e-9).rad_per_s() ==
          doctest::Approx(2.4227029804615475e15).epsilon(1e-12));
    // Definition check: lambda = 2 pi c meters gives 1 rad/s.
    CHECK(wavelength_to_angular_frequency(2.0 * std::numbers::pi *
                                          constants::speed_of_light_m_per_s)
              .rad_per_s() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(wavelength_to_angular_frequency(0.0), DomainError);
    CHECK_THROWS_AS(wavelength_to_angular_frequency(-5e-9), DomainError);
}

TEST_CASE("dB round trip over [0, 100]")
{
    for (double db = 0.0; db <= 100.0; db += 0.37)
    {
        const double back = transmittance_to_db_loss(db_loss_to_transmittance(DbLoss(db))).db();
        CHECK(std::abs(back - db) <= 1e-10);
    }
}

TEST_CASE("dB composition multiplies transmittances")
{
    const double cases[][2] = {{16.4, 24.1}, {0.0, 13.0}, {3.3, 3.3}, {55.0, 20.5}};
    for (const auto &c : cases)
    {
        const double combined = db_loss_to_transmittance(DbLoss(c[0] + c[1])).value();
        const double product = db_loss_to_transmittance(DbLoss(c[0])).value() *
                               db_loss_to_transmittance(DbLoss(c[1])).value();
        CHECK(std::abs(combined - product) <= 1e-12 * combined);
    }
}

TEST_CASE("transmittance strictly decreasing in dB loss")
{
    double previous = db_loss_to_transmittance(DbLoss(0.0)).value();
    for (double db = 0.5; db <= 80.0; db += 0.5)
    {
        const double current = db_loss_to_transmittance(DbLoss(db)).value();
        CHECK(current < previous);
        previous = current;
    }
}
