#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "chamcas/constants.hpp"
#include "chamcas/units.hpp"

using namespace chamcas;
using Catch::Approx;

namespace {

// Independent high-precision evaluation of the conversion chain from the raw
// defining constants, in long double, used as the oracle for the factors the
// library derives in double.
struct IndependentFactors {
    long double hbar_c_gev_m;
    long double gev4_to_pa;
    long double kg_per_m3_to_gev4;
};

IndependentFactors independent_factors() {
    const long double h = 6.62607015e-34L;
    const long double c = 299792458.0L;
    const long double e = 1.602176634e-19L;
    const long double pi = 3.14159265358979323846L;
    const long double hbar = h / (2.0L * pi);
    const long double gev = 1.0e9L * e;
    const long double hbarc = hbar * c / gev; // GeV m
    IndependentFactors f;
    f.hbar_c_gev_m = hbarc;
    f.gev4_to_pa = gev / (hbarc * hbarc * hbarc);
    f.kg_per_m3_to_gev4 = c * c / f.gev4_to_pa;
    return f;
}

} // namespace

TEST_CASE("hbar*c consistent with hbar and c to 10 significant digits") {
    // CODATA: hbar*c = 197.3269804... MeV fm (exact to more digits below)
    CHECK(constants::hbar_c_gev_m == Approx(1.9732698045930e-16).epsilon(1e-10));
    CHECK(constants::hbar_c_gev_m ==
          Approx(constants::hbar_j_s * constants::speed_of_light_m_s /
                 constants::gev_to_joule)
              .epsilon(1e-15));
}

TEST_CASE("model defaults") {
    CHECK(constants::lambda_de_gev == 2.4e-12);
    CHECK(constants::m_pl_reduced_gev == 2.0e18);
}

TEST_CASE("length_from_inverse_energy") {
    SECTION("dark-energy scale maps to 82 um") {
        const double lm = units::length_from_inverse_energy(constants::lambda_de_gev);
        CHECK(lm == Approx(82e-6).epsilon(0.01));
    }
    SECTION("1 GeV maps to hbar*c") {
        CHECK(units::length_from_inverse_energy(1.0) == Approx(1.9733e-16).epsilon(1e-4));
    }
    SECTION("involution with energy_from_inverse_length") {
        for (double d : {1e-9, 30e-6, 1.0, 3e7}) {
            const double back =
                units::length_from_inverse_energy(units::energy_from_inverse_length(d));
            CHECK(back == Approx(d).epsilon(1e-12));
        }
    }
    SECTION("rejects non-positive input") {
        CHECK_THROWS_AS(units::length_from_inverse_energy(0.0), std::domain_error);
        CHECK_THROWS_AS(units::length_from_inverse_energy(-1.0), std::domain_error);
    }
}

TEST_CASE("mass_density_to_natural") {
    const auto f = independent_factors();
    SECTION("1 kg/m^3 against the independent constant evaluation") {
        const double expected = static_cast<double>(f.kg_per_m3_to_gev4);
        CHECK(units::mass_density_to_natural(1.0) == Approx(expected).epsilon(1e-13));
        CHECK(units::mass_density_to_natural(1.0) == Approx(4.31e-21).epsilon(0.005));
    }
    SECTION("zero maps to zero") { CHECK(units::mass_density_to_natural(0.0) == 0.0); }
    SECTION("linear in the density") {
        CHECK(units::mass_density_to_natural(5.462) ==
              Approx(5.462 * units::mass_density_to_natural(1.0)).epsilon(1e-15));
    }
    SECTION("rejects negative density") {
        CHECK_THROWS_AS(units::mass_density_to_natural(-1.0), std::domain_error);
    }
    SECTION("round trip") {
        const double rho = 5.462;
        CHECK(units::mass_density_from_natural(units::mass_density_to_natural(rho)) ==
              Approx(rho).epsilon(1e-12));
    }
}

TEST_CASE("pressure_natural_to_lab") {
    const auto f = independent_factors();
    SECTION("1 GeV^4 against the independent constant evaluation") {
        const double expected = static_cast<double>(f.gev4_to_pa * 1.0e8L);
        CHECK(units::pressure_natural_to_lab(1.0) == Approx(expected).epsilon(1e-13));
        // note the magnitude: ~2.085e45 pN/cm^2 per GeV^4
        CHECK(units::pressure_natural_to_lab(1.0) == Approx(2.0852e45).epsilon(0.005));
    }
    SECTION("zero maps to zero") { CHECK(units::pressure_natural_to_lab(0.0) == 0.0); }
    SECTION("1 Pa equals 1e8 pN/cm^2") {
        CHECK(units::pressure_pa_to_lab(1.0) == Approx(1.0e8).epsilon(1e-15));
    }
    SECTION("round trip") {
        CHECK(units::pressure_lab_to_natural(units::pressure_natural_to_lab(3.7e-47)) ==
              Approx(3.7e-47).epsilon(1e-12));
    }
    SECTION("dimensional check: Lambda^4 in laboratory units") {
        const double lam4 = std::pow(constants::lambda_de_gev, 4);
        const long double l4 = 2.4e-12L * 2.4e-12L * 2.4e-12L * 2.4e-12L;
        const double expected = static_cast<double>(f.gev4_to_pa * 1.0e8L * l4);
        CHECK(units::pressure_natural_to_lab(lam4) == Approx(expected).epsilon(0.01));
        CHECK(units::pressure_natural_to_lab(lam4) == Approx(6.92e-2).epsilon(0.01));
    }
}

TEST_CASE("conversion factors share one derivation") {
    // kg/m^3 -> GeV^4 -> Pa must reproduce rho*c^2 exactly
    CHECK(constants::kg_per_m3_to_gev4 * constants::gev4_to_pa ==
          Approx(constants::speed_of_light_m_s * constants::speed_of_light_m_s)
              .epsilon(1e-15));
}

TEST_CASE("Quantity arithmetic checks dimensions") {
    using units::Dimension;
    using units::Quantity;
    using units::UnitSystem;
    const Quantity length{2.0, Dimension{.metre = 1}, UnitSystem::si};
    const Quantity time{3.0, Dimension{.second = 1}, UnitSystem::si};
    const Quantity natural{1.5, Dimension{.energy = 2}, UnitSystem::natural};

    SECTION("mismatched dimensions never silently cast") {
        CHECK_THROWS_AS(length + time, dimension_error);
        CHECK_THROWS_AS(length - time, dimension_error);
    }
    SECTION("mixing unit systems is an error") {
        CHECK_THROWS_AS(length + natural, dimension_error);
        CHECK_THROWS_AS(length * natural, dimension_error);
    }
    SECTION("multiplication adds exponents") {
        const auto speed = length / time;
        CHECK(speed.dimension() == Dimension{.metre = 1, .second = -1});
        CHECK(speed.value() == Approx(2.0 / 3.0));
    }
    SECTION("to_si then to_natural is involutive to 1e-12") {
        for (int k : {-3, -1, 0, 1, 2, 4}) {
            const Quantity q{1.2345e-7, Dimension{.energy = k}, UnitSystem::natural};
            const auto back = units::to_natural(units::to_si(q));
            CHECK(back.value() == Approx(q.value()).epsilon(1e-12));
            CHECK(back.dimension() == q.dimension());
        }
    }
    SECTION("SI -> natural uses hbar=c=1") {
        // 1 m as an inverse energy
        const Quantity metre{1.0, Dimension{.metre = 1}, UnitSystem::si};
        const auto nat = units::to_natural(metre);
        CHECK(nat.dimension() == Dimension{.energy = -1});
        CHECK(nat.value() == Approx(1.0 / constants::hbar_c_gev_m).epsilon(1e-14));
        // mass density kg/m^3 agrees with the direct conversion
        const Quantity rho{5.0, Dimension{.kilogram = 1, .metre = -3}, UnitSystem::si};
        const auto rho_nat = units::to_natural(rho);
        CHECK(rho_nat.dimension() == Dimension{.energy = 4});
        CHECK(rho_nat.value() ==
              Approx(units::mass_density_to_natural(5.0)).epsilon(1e-12));
        // electromagnetic dimensions are rejected, not converted
        const Quantity current{1.0, Dimension{.ampere = 1}, UnitSystem::si};
        CHECK_THROWS_AS(units::to_natural(current), dimension_error);
    }
}
