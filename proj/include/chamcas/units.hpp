#pragma once

// Natural-unit (GeV powers) <-> SI conversions and a runtime-checked
// Quantity type. Dimension mismatches throw; they are never silently cast.

#include <cmath>
#include <string>

#include "chamcas/constants.hpp"
#include "chamcas/errors.hpp"

namespace chamcas::units {

// ---------------------------------------------------------------------------
// direct conversions used by the physics modules
// ---------------------------------------------------------------------------

/// Length corresponding to an inverse energy: hbar*c / E. E in GeV, result in m.
inline double length_from_inverse_energy(double energy_gev) {
    if (!(energy_gev > 0.0))
        throw std::domain_error("length_from_inverse_energy: energy must be > 0");
    return constants::hbar_c_gev_m / energy_gev;
}

/// Energy corresponding to an inverse length: hbar*c / d. d in m, result in GeV.
inline double energy_from_inverse_length(double length_m) {
    if (!(length_m > 0.0))
        throw std::domain_error("energy_from_inverse_length: length must be > 0");
    return constants::hbar_c_gev_m / length_m;
}

/// Length in m -> length in GeV^-1.
inline double length_to_natural(double length_m) {
    if (!(length_m > 0.0))
        throw std::domain_error("length_to_natural: length must be > 0");
    return length_m / constants::hbar_c_gev_m;
}

/// Length in GeV^-1 -> length in m.
inline double length_from_natural(double length_inv_gev) {
    if (!(length_inv_gev > 0.0))
        throw std::domain_error("length_from_natural: length must be > 0");
    return length_inv_gev * constants::hbar_c_gev_m;
}

/// Mass density in kg/m^3 (== g/l) -> energy density rho*c^2 in GeV^4.
inline double mass_density_to_natural(double rho_kg_per_m3) {
    if (rho_kg_per_m3 < 0.0)
        throw std::domain_error("mass_density_to_natural: density must be >= 0");
    return rho_kg_per_m3 * constants::kg_per_m3_to_gev4;
}

/// Inverse of mass_density_to_natural.
inline double mass_density_from_natural(double rho_gev4) {
    return rho_gev4 / constants::kg_per_m3_to_gev4;
}

/// Energy density in GeV^4 -> laboratory pressure in pN/cm^2.
inline double pressure_natural_to_lab(double f_gev4) {
    return f_gev4 * constants::gev4_to_pa * constants::pa_to_pn_per_cm2;
}

/// Laboratory pressure in pN/cm^2 -> energy density in GeV^4.
inline double pressure_lab_to_natural(double f_pn_per_cm2) {
    return f_pn_per_cm2 / (constants::gev4_to_pa * constants::pa_to_pn_per_cm2);
}

/// Pressure in Pa -> pN/cm^2.
inline double pressure_pa_to_lab(double f_pa) {
    return f_pa * constants::pa_to_pn_per_cm2;
}

// ---------------------------------------------------------------------------
// runtime-checked quantities
// ---------------------------------------------------------------------------

/// Signed integer exponents over the base dimensions. Natural-side values use
/// only `energy`; SI-side values use the kg/m/s/A/K block.
struct Dimension {
    int energy = 0;
    int kilogram = 0;
    int metre = 0;
    int second = 0;
    int ampere = 0;
    int kelvin = 0;

    friend bool operator==(const Dimension&, const Dimension&) = default;
};

enum class UnitSystem { natural, si };

inline std::string to_string(const Dimension& d) {
    auto part = [](const char* sym, int e) {
        return e == 0 ? std::string{}
                      : std::string(" ") + sym + "^" + std::to_string(e);
    };
    std::string s = part("GeV", d.energy) + part("kg", d.kilogram) + part("m", d.metre) +
                    part("s", d.second) + part("A", d.ampere) + part("K", d.kelvin);
    return s.empty() ? std::string(" dimensionless") : s;
}

class Quantity {
  public:
    Quantity(double value, Dimension dim, UnitSystem system)
        : value_(value), dim_(dim), system_(system) {}

    double value() const { return value_; }
    const Dimension& dimension() const { return dim_; }
    UnitSystem system() const { return system_; }

    friend Quantity operator+(const Quantity& a, const Quantity& b) {
        a.require_compatible(b, "+");
        return {a.value_ + b.value_, a.dim_, a.system_};
    }
    friend Quantity operator-(const Quantity& a, const Quantity& b) {
        a.require_compatible(b, "-");
        return {a.value_ - b.value_, a.dim_, a.system_};
    }
    friend Quantity operator*(const Quantity& a, const Quantity& b) {
        a.require_same_system(b, "*");
        return {a.value_ * b.value_,
                Dimension{a.dim_.energy + b.dim_.energy, a.dim_.kilogram + b.dim_.kilogram,
                          a.dim_.metre + b.dim_.metre, a.dim_.second + b.dim_.second,
                          a.dim_.ampere + b.dim_.ampere, a.dim_.kelvin + b.dim_.kelvin},
                a.system_};
    }
    friend Quantity operator/(const Quantity& a, const Quantity& b) {
        a.require_same_system(b, "/");
        return {a.value_ / b.value_,
                Dimension{a.dim_.energy - b.dim_.energy, a.dim_.kilogram - b.dim_.kilogram,
                          a.dim_.metre - b.dim_.metre, a.dim_.second - b.dim_.second,
                          a.dim_.ampere - b.dim_.ampere, a.dim_.kelvin - b.dim_.kelvin},
                a.system_};
    }

  private:
    void require_compatible(const Quantity& other, const char* op) const {
        if (system_ != other.system_)
            throw dimension_error(std::string("operator") + op +
                                  ": mixing natural and SI quantities");
        if (!(dim_ == other.dim_))
            throw dimension_error(std::string("operator") + op + ": dimension mismatch:" +
                                  to_string(dim_) + " vs" + to_string(other.dim_));
    }
    void require_same_system(const Quantity& other, const char* op) const {
        if (system_ != other.system_)
            throw dimension_error(std::string("operator") + op +
                                  ": mixing natural and SI quantities");
    }

    double value_;
    Dimension dim_;
    UnitSystem system_;
};

/// SI quantity over (kg, m, s) -> natural quantity (GeV power a-b-c).
/// Ampere or kelvin exponents are rejected: the electromagnetic and thermal
/// sectors stay in SI by design.
inline Quantity to_natural(const Quantity& q) {
    if (q.system() == UnitSystem::natural) return q;
    const Dimension& d = q.dimension();
    if (d.ampere != 0 || d.kelvin != 0 || d.energy != 0)
        throw dimension_error("to_natural: unsupported dimension for natural units:" +
                              to_string(d));
    const double factor = std::pow(constants::kg_to_gev, d.kilogram) *
                          std::pow(constants::hbar_c_gev_m, -d.metre) *
                          std::pow(constants::hbar_gev_s, -d.second);
    return {q.value() * factor,
            Dimension{.energy = d.kilogram - d.metre - d.second},
            UnitSystem::natural};
}

/// Natural quantity (GeV^k) -> canonical SI form J^k = (kg m^2 s^-2)^k.
inline Quantity to_si(const Quantity& q) {
    if (q.system() == UnitSystem::si) return q;
    const int k = q.dimension().energy;
    return {q.value() * std::pow(constants::gev_to_joule, k),
            Dimension{0, k, 2 * k, -2 * k, 0, 0}, UnitSystem::si};
}

} // namespace chamcas::units
