// synthetic.hpp - seeded quasi-continuum of electronic transitions.
//
// Excitations sit on a uniform energy grid [onset, cutoff]. Each dipole has
// Gaussian-distributed Cartesian components modulated by a Gaussian spectral
// envelope, then all dipoles are rescaled together so that
// sum_i |d_i|^2 = dipole_scale^2 * count.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "polariton/core.hpp"

namespace polariton {

struct ContinuumProfile {
    std::uint64_t seed = 2021;
    double onset = 4.25;           // eV
    double cutoff = 9.0;           // eV
    std::size_t count = 500;
    double dipole_scale = 0.3;     // e*Angstrom, rms |d|
    double envelope_center = 6.2;  // eV
    double envelope_width = 0.8;   // eV, Gaussian sigma of the dipole-strength envelope
};

inline std::vector<Excitation> synthetic_continuum_lines(const ContinuumProfile& p) {
    if (p.count < 1) throw std::invalid_argument("continuum count must be at least 1");
    if (!(p.dipole_scale > 0.0)) throw std::invalid_argument("dipole scale must be positive");
    if (!(p.onset > 0.0) || !(p.onset < p.cutoff)) throw std::invalid_argument("need 0 < onset < cutoff");
    if (!(p.envelope_width > 0.0)) throw std::invalid_argument("envelope width must be positive");

    std::mt19937_64 rng(p.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<Excitation> lines(p.count);
    const double step = p.count > 1 ? (p.cutoff - p.onset) / static_cast<double>(p.count - 1) : 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < p.count; ++i) {
        auto& e = lines[i];
        e.index = i;
        e.energy = p.onset + static_cast<double>(i) * step;
        const double z = (e.energy - p.envelope_center) / p.envelope_width;
        const double amplitude = std::exp(-0.25 * z * z);  // strength ~ exp(-z^2/2)
        for (int c = 0; c < 3; ++c) e.dipole[c] = amplitude * normal(rng);
        total += e.dipole.squaredNorm();
        e.label = "continuum";
    }
    const double target = p.dipole_scale * p.dipole_scale * static_cast<double>(p.count);
    const double scale = total > 0.0 ? std::sqrt(target / total) : 0.0;
    for (auto& e : lines) e.dipole *= scale;
    return lines;
}

/// Continuum plus optional discrete defect lines (listed first, indices renumbered).
inline ExcitationSet generate_synthetic_continuum(const ContinuumProfile& profile,
                                                  std::span<const Excitation> defect_lines = {}) {
    std::vector<Excitation> all(defect_lines.begin(), defect_lines.end());
    auto continuum = synthetic_continuum_lines(profile);
    all.insert(all.end(), continuum.begin(), continuum.end());
    for (std::size_t i = 0; i < all.size(); ++i) all[i].index = i;
    return ExcitationSet::create(std::move(all), "synthetic seed=" + std::to_string(profile.seed));
}

}  // namespace polariton
