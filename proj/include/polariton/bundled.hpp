// bundled.hpp - lowest-lying excitation of the four hBN flakes shipped under data/systems.

#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "polariton/core.hpp"

namespace polariton {

struct BundledSystem {
    std::string_view name;
    double energy;  // eV
    double dipole;  // e*Angstrom, along `axis`
    Axis axis;
};

inline constexpr std::array<BundledSystem, 4> kBundledSystems{{
    {"pristine", 4.25, 0.16, Axis::x},
    {"CHB", 4.00, 0.027, Axis::x},
    {"CBCB", 1.06, 0.015, Axis::x},
    {"CBVN", 1.92, 0.16, Axis::y},
}};

inline std::optional<BundledSystem> find_bundled(std::string_view name) {
    for (const auto& s : kBundledSystems)
        if (s.name == name) return s;
    return std::nullopt;
}

inline Excitation lowest_excitation(const BundledSystem& s) {
    Excitation e;
    e.index = 0;
    e.energy = s.energy;
    e.dipole[static_cast<int>(s.axis)] = s.dipole;
    e.label = std::string(s.name);
    return e;
}

/// Single lossless mode resonant with the system's lowest excitation.
inline CavitySpec resonant_cavity(const BundledSystem& s, double strength) {
    CavitySpec c;
    c.center_energy = s.energy;
    c.strength = strength;
    c.polarization = unit_vector(s.axis);
    return c;
}

}  // namespace polariton
