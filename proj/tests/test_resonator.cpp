#include "sfwm/resonator.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

using namespace sfwm;

TEST_CASE("loaded Q")
{
    CHECK(loaded_q(320000.0, 320000.0) == 160000.0);
    CHECK(loaded_q(320000.0, std::numeric_limits<double>::infinity()) == 320000.0);
    CHECK(loaded_q(300000.0, 600000.0) == doctest::Approx(200000.0).epsilon(1e-9));
    CHECK_THROWS_AS(loaded_q(0.0, 1e5), DomainError);
    CHECK_THROWS_AS(loaded_q(1e5, -1.0), DomainError);

    // Critical coupling halves Q exactly, whatever the value.
    for (double q : {3.0, 12345.6789, 3.2e5, 1.7e9})
    {
        CHECK(loaded_q(q, q) == q / 2.0);
    }
}

TEST_CASE("transmission dip shape")
{
    const ResonatorParams params = make_resonator_params(
        3.8190e14, 320000.0, 320000.0, Transmittance(0.005012));

    CHECK(transmission_dip(0.0, params).value() == doctest::Approx(0.005012).epsilon(1e-15));
    CHECK(transmission_dip(1e18, params).value() == doctest::Approx(1.0).epsilon(1e-9));

    // Half width at half depth, by construction of the FWHM.
    const double fwhm = params.resonance_frequency_hz / params.q_loaded;
    const ResonatorParams no_extinction =
        make_resonator_params(3.8190e14, 320000.0, 320000.0, Transmittance(0.0));
    CHECK(transmission_dip(fwhm / 2.0, no_extinction).value() ==
          doctest::Approx(0.5).epsilon(1e-12));

    // Symmetric in detuning, and self-consistent FWHM with extinction.
    for (double detuning : {1e6, 3.7e8, 1.2e9, 5e10})
    {
        CHECK(transmission_dip(detuning, params).value() ==
              transmission_dip(-detuning, params).value());
    }
    const double t_min = params.extinction.value();
    const double at_half = transmission_dip(fwhm / 2.0, params).value();
    CHECK(std::abs((at_half - t_min) - (1.0 - t_min) / 2.0) <= 1e-12);
}

TEST_CASE("intrinsic loss extraction")
{
    CHECK(intrinsic_loss_db_per_cm(320000.0, 785e-9, 2.0) ==
          doctest::Approx(2.1725738118500657).epsilon(1e-12));
    CHECK(intrinsic_loss_db_per_cm(160000.0, 785e-9, 2.0) ==
          doctest::Approx(4.345147623700131).epsilon(1e-12));
    CHECK_THROWS_AS(intrinsic_loss_db_per_cm(-1.0, 785e-9, 2.0), DomainError);

    // loss * Q_i is constant at fixed wavelength and group index.
    const double reference = intrinsic_loss_db_per_cm(1e5, 785e-9, 2.0) * 1e5;
    for (double q : {2e5, 3.2e5, 7.7e5, 4.4e6})
    {
        CHECK(intrinsic_loss_db_per_cm(q, 785e-9, 2.0) * q ==
              doctest::Approx(reference).epsilon(1e-12));
    }
}

TEST_CASE("linewidth")
{
    CHECK(linewidth_hz(160000.0, 785e-9) == doctest::Approx(2.386882627388535e9).epsilon(1e-12));
    CHECK(linewidth_hz(320000.0, 785e-9) == doctest::Approx(1.1934413136942675e9).epsilon(1e-12));
    // Q_l numerically equal to nu0 gives a 1 Hz linewidth.
    const double nu0 = constants::speed_of_light_m_per_s / 785e-9;
    CHECK(linewidth_hz(nu0, 785e-9) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(linewidth_hz(0.0, 785e-9), DomainError);
}

TEST_CASE("photon lifetime")
{
    CHECK(photon_lifetime_s(160000.0, 785e-9) ==
          doctest::Approx(6.667899848348438e-11).epsilon(1e-12));
    CHECK(photon_lifetime_s(320000.0, 785e-9) ==
          doctest::Approx(1.3335799696696876e-10).epsilon(1e-12));
    CHECK(photon_lifetime_s(320000.0, 785e-9) ==
          doctest::Approx(2.0 * photon_lifetime_s(160000.0, 785e-9)).epsilon(1e-15));
    CHECK_THROWS_AS(photon_lifetime_s(1e5, -1.0), DomainError);
}

TEST_CASE("field build-up factor")
{
    RingGeometry geometry;
    geometry.radius_m = 19e-6;
    geometry.group_index = 2.0;
    geometry.effective_area_m2 = 0.35e-12;

    CHECK(field_buildup(160000.0, 785e-9, geometry) ==
          doctest::Approx(167.44658770365294).epsilon(1e-12));
    CHECK(field_buildup(320000.0, 785e-9, geometry) ==
          doctest::Approx(2.0 * 167.44658770365294).epsilon(1e-12));

    RingGeometry doubled = geometry;
    doubled.radius_m = 2.0 * geometry.radius_m;
    CHECK(field_buildup(160000.0, 785e-9, doubled) ==
          doctest::Approx(83.72329385182647).epsilon(1e-12));

    // Equivalent formulation: finesse / pi with finesse = FSR / linewidth.
    const double fsr = geometry.group_velocity_m_per_s() / geometry.circumference_m();
    const double finesse = fsr / linewidth_hz(160000.0, 785e-9);
    CHECK(field_buildup(160000.0, 785e-9, geometry) ==
          doctest::Approx(finesse / std::numbers::pi).epsilon(0.01));
}

TEST_CASE("intrinsic Q from fitted dip")
{
    CHECK(intrinsic_q_from_fit(160000.0, 0.005, CouplingBranch::critical) == 320000.0);

    // An under-coupled ring with Q_i = 3e5, Q_c = 6e5 dips to
    // T_min = ((1/Q_i - 1/Q_c) / (1/Q_i + 1/Q_c))^2 = 1/9.
    const double q_loaded = loaded_q(3e5, 6e5);
    const double t_min = 1.0 / 9.0;
    CHECK(intrinsic_q_from_fit(q_loaded, t_min, CouplingBranch::under_coupled) ==
          doctest::Approx(3e5).epsilon(1e-9));
    // The over-coupled branch with the same dip recovers the mirrored split.
    CHECK(intrinsic_q_from_fit(q_loaded, t_min, CouplingBranch::over_coupled) ==
          doctest::Approx(6e5).epsilon(1e-9));

    CHECK_THROWS_AS(intrinsic_q_from_fit(-1.0, 0.1, CouplingBranch::critical), DomainError);
    CHECK_THROWS_AS(intrinsic_q_from_fit(1e5, 1.5, CouplingBranch::critical), DomainError);
}

TEST_CASE("geometry and resonator validation")
{
    RingGeometry geometry;
    geometry.radius_m = -1.0;
    geometry.group_index = 2.0;
    geometry.effective_area_m2 = 1e-13;
    CHECK_THROWS_WITH_AS(geometry.validate(), "geometry.radius_um: must be > 0",
                         ValidationError);
    geometry.radius_m = 19e-6;
    geometry.group_index = 0.9;
    CHECK_THROWS_WITH_AS(geometry.validate(), "geometry.group_index: must be > 1",
                         ValidationError);

    ResonatorParams params = make_resonator_params(3.8e14, 3.2e5, 3.2e5, Transmittance(0.005));
    params.q_loaded = 1.7e5; // breaks 1/Q_l = 1/Q_i + 1/Q_c
    CHECK_THROWS_AS(params.validate(), ValidationError);
}
