// spectrum.hpp - observables: absorption sticks, Lorentzian broadening, photonic
// weights, lower-polariton metrics, coupling sweeps and truncation convergence.
//
// Absorption of j-polarized light (frequency-independent prefactor dropped):
//   A_j(w) = sum_l delta(w - w_l) * w_l * |sum_i C^el_{il} d_{i,j}|^2      [eV * Angstrom^2]
// with the delta function replaced on a grid of spacing dw by
//   Gamma * dw / (2 pi [(w - w_l)^2 + (Gamma/2)^2]).

#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "polariton/bath.hpp"
#include "polariton/core.hpp"
#include "polariton/solution.hpp"
#include "polariton/solver_quadratic.hpp"
#include "polariton/solver_rwa.hpp"

namespace polariton {

/// Photonic weight above which a state counts as cavity-coupled.
inline constexpr double kPhotonicThreshold = 1e-6;
inline constexpr double kConvergenceTolerance = 0.01;

struct Stick {
    double energy = 0.0;           // eV
    double strength = 0.0;         // eV * Angstrom^2
    double photonic_weight = 0.0;  // dimensionless
};

struct SpectrumGrid {
    std::vector<double> axis;    // eV, uniform
    std::vector<double> values;  // eV * Angstrom^2
    double broadening = 0.0;     // hbar Gamma
    double step = 0.0;           // Delta(hbar w)
    Axis polarization_axis = Axis::x;
    std::vector<std::string> warnings;
};

struct PolaritonMetrics {
    std::size_t lower_index = 0;
    double lower_energy = 0.0;
    double lower_peak_absorption = 0.0;  // unbroadened stick strength
    double lower_photonic_weight = 0.0;
    double effective_dipole = 0.0;  // |sum_i C^el_{i,lower} d_{i,j}|
};

struct SweepPoint {
    double strength = 0.0;
    PolaritonMetrics metrics;
};

inline PolaritonSolution solve(ModelTag model, const ExcitationSet& set, std::span<const PhotonMode> modes,
                               const SolverOptions& opts = {}) {
    return model == ModelTag::rwa ? solve_rwa(set, modes, opts) : solve_quadratic(set, modes, opts);
}

/// w_l^ph = sum_k |C^ph_{kl}|^2, clamped to [0, 1] against rounding.
inline std::vector<double> photonic_weights(const PolaritonSolution& sol) {
    std::vector<double> w(sol.state_count());
    for (std::size_t l = 0; l < w.size(); ++l)
        w[l] = std::clamp(sol.ph_proj.col(static_cast<Eigen::Index>(l)).squaredNorm(), 0.0, 1.0);
    return w;
}

/// Transition dipoles of every polariton along `axis`: sum_i C^el_{il} d_{i,j}.
inline Eigen::VectorXd polariton_dipoles(const PolaritonSolution& sol, const ExcitationSet& set, Axis axis) {
    if (sol.electronic_count() != set.size())
        throw std::invalid_argument("solution has " + std::to_string(sol.electronic_count()) +
                                    " electronic states but the excitation set has " + std::to_string(set.size()));
    return sol.el_proj.transpose() * set.dipoles(axis);
}

inline std::vector<Stick> stick_spectrum(const PolaritonSolution& sol, const ExcitationSet& set, Axis axis) {
    const Eigen::VectorXd mu = polariton_dipoles(sol, set, axis);
    const auto weights = photonic_weights(sol);
    std::vector<Stick> sticks(sol.state_count());
    for (std::size_t l = 0; l < sticks.size(); ++l) {
        const auto li = static_cast<Eigen::Index>(l);
        sticks[l] = {sol.energies[li], sol.energies[li] * mu[li] * mu[li], weights[l]};
    }
    return sticks;
}

/// Bare-electron absorption sticks (no cavity).
inline std::vector<Stick> electronic_sticks(const ExcitationSet& set, Axis axis) {
    std::vector<Stick> sticks;
    sticks.reserve(set.size());
    for (const auto& e : set) {
        const double d = e.dipole[static_cast<int>(axis)];
        sticks.push_back({e.energy, e.energy * d * d, 0.0});
    }
    return sticks;
}

inline double lorentzian_line(double detuning, double gamma, double step) {
    return gamma * step / (2.0 * std::numbers::pi * (detuning * detuning + 0.25 * gamma * gamma));
}

/// Grid points lo, lo+step, ... up to hi (inclusive within rounding).
inline std::vector<double> energy_axis(double lo, double hi, double step) {
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> axis(count);
    for (std::size_t j = 0; j < count; ++j) axis[j] = lo + static_cast<double>(j) * step;
    return axis;
}

inline SpectrumGrid broaden(std::span<const Stick> sticks, double gamma, double step, double lo, double hi,
                            Axis axis = Axis::x) {
    if (!(gamma > 0.0)) throw std::invalid_argument("broadening must be positive");
    if (!(step > 0.0)) throw std::invalid_argument("energy spacing must be positive");
    if (!(hi >= lo)) throw std::invalid_argument("energy range is empty");
    SpectrumGrid grid;
    grid.broadening = gamma;
    grid.step = step;
    grid.polarization_axis = axis;
    grid.axis = energy_axis(lo, hi, step);
    grid.values.assign(grid.axis.size(), 0.0);
    const bool any_inside = std::any_of(sticks.begin(), sticks.end(),
                                        [&](const Stick& s) { return s.energy >= lo && s.energy <= hi; });
    if (!any_inside) grid.warnings.push_back("no absorption lines inside the requested range");
    for (const auto& s : sticks) {
        if (s.strength == 0.0) continue;
        for (std::size_t j = 0; j < grid.axis.size(); ++j)
            grid.values[j] += s.strength * lorentzian_line(grid.axis[j] - s.energy, gamma, step);
    }
    return grid;
}

inline PolaritonMetrics lower_polariton_metrics(const PolaritonSolution& sol, const ExcitationSet& set, Axis axis) {
    if (sol.state_count() < 2) throw std::invalid_argument("lower-polariton metrics need at least two states");
    const auto weights = photonic_weights(sol);
    const Eigen::VectorXd mu = polariton_dipoles(sol, set, axis);
    for (std::size_t l = 0; l < weights.size(); ++l) {
        if (weights[l] <= kPhotonicThreshold) continue;
        const auto li = static_cast<Eigen::Index>(l);
        PolaritonMetrics m;
        m.lower_index = l;
        m.lower_energy = sol.energies[li];
        m.lower_peak_absorption = sol.energies[li] * mu[li] * mu[li];
        m.lower_photonic_weight = weights[l];
        m.effective_dipole = std::abs(mu[li]);
        return m;
    }
    throw SolverError("cavity decoupled: no state has photonic weight above threshold");
}

inline std::vector<SweepPoint> sweep_coupling(const ExcitationSet& set, const CavitySpec& cavity_template,
                                              std::span<const double> strengths, ModelTag model, Axis axis,
                                              const SolverOptions& opts = {},
                                              BathWeighting weighting = BathWeighting::point_sampled) {
    for (std::size_t s = 0; s < strengths.size(); ++s) {
        if (!(strengths[s] > 0.0)) throw std::invalid_argument("coupling strengths must be positive");
        if (s > 0 && !(strengths[s] > strengths[s - 1]))
            throw std::invalid_argument("coupling strengths must be strictly ascending");
    }
    std::vector<SweepPoint> out;
    out.reserve(strengths.size());
    for (const double lambda : strengths) {
        CavitySpec cavity = cavity_template;
        cavity.strength = lambda;
        try {
            const auto modes = cavity_modes(cavity, weighting);
            const auto sol = solve(model, set, modes, opts);
            out.push_back({lambda, lower_polariton_metrics(sol, set, axis)});
        } catch (const SolverError& e) {
            throw SolverError("at lambda=" + std::to_string(lambda) + ": " + e.what());
        }
    }
    return out;
}

/// Energy-weighted absorption summed over sticks with energy in [lo, hi].
inline double integrated_absorption(std::span<const Stick> sticks, double lo, double hi) {
    double sum = 0.0;
    for (const auto& s : sticks)
        if (s.energy >= lo && s.energy <= hi) sum += s.strength;
    return sum;
}

struct ConvergenceRow {
    std::size_t excitations = 0;
    double max_excitation_energy = 0.0;  // highest retained bare energy, eV
    double integrated = 0.0;             // eV * Angstrom^2
    double relative_change = 0.0;        // |A_n - A_final| / |A_final|
    bool converged = false;
};

struct ConvergenceReport {
    std::vector<ConvergenceRow> rows;
    std::optional<std::size_t> first_converged;  // row index
    double tolerance = kConvergenceTolerance;
    double window_lo = 0.0;
    double window_hi = 9.0;
};

/// Integrated absorption of the cavity-coupled system for each truncation of the
/// excitation list (lowest `count` excitations kept), relative to the last entry.
inline ConvergenceReport convergence_report(const ExcitationSet& set, const CavitySpec& cavity,
                                            std::span<const std::size_t> schedule, ModelTag model, Axis axis,
                                            const SolverOptions& opts = {}, double window_lo = 0.0,
                                            double window_hi = 9.0) {
    if (schedule.empty()) throw std::invalid_argument("empty truncation schedule");
    for (std::size_t s = 0; s < schedule.size(); ++s) {
        if (schedule[s] == 0) throw std::invalid_argument("truncation counts must be positive");
        if (schedule[s] > set.size())
            throw std::invalid_argument("schedule entry " + std::to_string(schedule[s]) + " exceeds the " +
                                        std::to_string(set.size()) + " available excitations");
        if (s > 0 && schedule[s] <= schedule[s - 1])
            throw std::invalid_argument("truncation schedule must be strictly ascending");
    }
    const auto modes = cavity_modes(cavity);
    ConvergenceReport report;
    report.window_lo = window_lo;
    report.window_hi = window_hi;
    for (const std::size_t count : schedule) {
        const ExcitationSet part = set.head(count);
        const auto sol = solve(model, part, modes, opts);
        const auto sticks = stick_spectrum(sol, part, axis);
        ConvergenceRow row;
        row.excitations = count;
        row.max_excitation_energy = part[count - 1].energy;
        row.integrated = integrated_absorption(sticks, window_lo, window_hi);
        report.rows.push_back(row);
    }
    const double final_value = report.rows.back().integrated;
    for (std::size_t r = 0; r < report.rows.size(); ++r) {
        auto& row = report.rows[r];
        row.relative_change = final_value != 0.0 ? std::abs(row.integrated - final_value) / std::abs(final_value)
                                                 : std::abs(row.integrated);
        row.converged = row.relative_change <= report.tolerance;
        if (row.converged && !report.first_converged) report.first_converged = r;
    }
    return report;
}

}  // namespace polariton
