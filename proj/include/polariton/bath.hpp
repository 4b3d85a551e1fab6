// bath.hpp - lossy cavity as a discretized Lorentzian photon-mode bath.
//
//   |lambda_k|^2 = |lambda_c|^2 * dw * (1/2pi) * kappa / ((w_k - w_c)^2 + (kappa/2)^2)
//
// on a centered arithmetic grid w_k = w_c + j*dw, |w_k - w_c| <= window.

#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "polariton/core.hpp"

namespace polariton {

enum class BathWeighting {
    point_sampled,   // Lorentzian density evaluated at the mode energy, times dw
    bin_integrated,  // exact Lorentzian mass of the bin [w_k - dw/2, w_k + dw/2]
};

struct BathDiscretization {
    std::vector<PhotonMode> modes;
    double coverage = 0.0;  // sum_k lambda_k^2 / lambda_c^2
    double spacing = 0.0;
    double window = 0.0;
    std::size_t dropped = 0;  // grid points at energy <= 0
    std::vector<std::string> warnings;
};

/// Fraction of the Lorentzian weight assigned to a mode at offset `detuning` from the center.
inline double lorentzian_weight(double detuning, double spacing, double kappa, BathWeighting weighting) {
    if (weighting == BathWeighting::bin_integrated) {
        const double hi = std::atan(2.0 * (detuning + 0.5 * spacing) / kappa);
        const double lo = std::atan(2.0 * (detuning - 0.5 * spacing) / kappa);
        return (hi - lo) / std::numbers::pi;
    }
    return spacing * (1.0 / (2.0 * std::numbers::pi)) * kappa /
           (detuning * detuning + 0.25 * kappa * kappa);
}

/// Lorentzian mass inside |w - w_c| <= window (continuum limit of the coverage).
inline double lorentzian_mass(double window, double kappa) {
    return (2.0 / std::numbers::pi) * std::atan(2.0 * window / kappa);
}

inline BathDiscretization discretize_bath(const CavitySpec& cavity,
                                          BathWeighting weighting = BathWeighting::point_sampled) {
    ValidationReport report;
    check_cavity(cavity, report);
    if (!(cavity.loss_rate > 0.0)) report.add("loss_rate_eV", std::nullopt, "bath requires loss_rate > 0");
    if (!report.ok()) throw ValidationError(std::move(report));

    BathDiscretization bath;
    bath.spacing = cavity.mode_spacing;
    bath.window = cavity.effective_window();
    const double kappa = cavity.loss_rate;
    const auto half = static_cast<long long>(std::floor(bath.window / bath.spacing + 1e-9));
    const double lambda_sq = cavity.strength * cavity.strength;

    double total = 0.0;
    bath.modes.reserve(static_cast<std::size_t>(2 * half + 1));
    for (long long j = -half; j <= half; ++j) {
        const double detuning = static_cast<double>(j) * bath.spacing;
        const double energy = cavity.center_energy + detuning;
        if (energy <= 0.0) {
            ++bath.dropped;
            continue;
        }
        const double w = lorentzian_weight(detuning, bath.spacing, kappa, weighting);
        total += w;
        bath.modes.push_back({energy, cavity.polarization, std::sqrt(lambda_sq * w)});
    }
    bath.coverage = total;
    if (bath.dropped > 0)
        bath.warnings.push_back(std::to_string(bath.dropped) + " bath modes at nonpositive energy dropped");
    if (bath.coverage < 0.5)
        throw ValidationError("bath window too small: coverage " + std::to_string(bath.coverage) +
                              " < 0.5; increase window_halfwidth");
    if (bath.coverage > 1.0 + 1e-12)
        throw ValidationError("mode_spacing too coarse for loss_rate: point-sampled coverage " +
                              std::to_string(bath.coverage) +
                              " exceeds 1; reduce mode_spacing or use bin-integrated weights");
    return bath;
}

/// Photon modes representing a cavity: one mode when lossless, the bath otherwise.
inline std::vector<PhotonMode> cavity_modes(const CavitySpec& cavity,
                                            BathWeighting weighting = BathWeighting::point_sampled) {
    if (cavity.loss_rate > 0.0) return discretize_bath(cavity, weighting).modes;
    ValidationReport report;
    check_cavity(cavity, report);
    if (!report.ok()) throw ValidationError(std::move(report));
    return {cavity.lossless_mode()};
}

}  // namespace polariton
