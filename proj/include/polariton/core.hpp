// core.hpp - domain types, unit conventions, validation and the coupling-rate kernel.
//
// Unit convention (fixed, hbar = 1 internally):
//   energies            eV
//   transition dipoles  e*Angstrom
//   cavity strengths    eV^{1/2}/nm
//   field amplitudes    V/nm
// A strength times a dipole carries Angstrom/nm, hence the 0.1 factor below.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace polariton {

using Vec3 = Eigen::Vector3d;

namespace units {
inline constexpr double kAngstromPerNm = 0.1;
inline constexpr double kUnitNormTolerance = 1e-12;
}  // namespace units

enum class Axis { x = 0, y = 1, z = 2 };

inline const char* to_string(Axis a) {
    switch (a) {
        case Axis::x: return "x";
        case Axis::y: return "y";
        case Axis::z: return "z";
    }
    return "?";
}

inline std::optional<Axis> parse_axis(std::string_view s) {
    if (s == "x") return Axis::x;
    if (s == "y") return Axis::y;
    if (s == "z") return Axis::z;
    return std::nullopt;
}

inline Vec3 unit_vector(Axis a) {
    Vec3 v = Vec3::Zero();
    v[static_cast<int>(a)] = 1.0;
    return v;
}

// ---------------------------------------------------------------- errors

struct Violation {
    std::string field;
    std::optional<std::size_t> index;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const noexcept { return violations.empty(); }

    void add(std::string field, std::optional<std::size_t> index, std::string message) {
        violations.push_back({std::move(field), index, std::move(message)});
    }

    std::string summary() const {
        std::string out;
        for (const auto& v : violations) {
            if (!out.empty()) out += "; ";
            out += v.message;
        }
        return out;
    }
};

class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(ValidationReport report)
        : std::runtime_error("validation failed: " + report.summary()), report_(std::move(report)) {}
    explicit ValidationError(const std::string& message)
        : std::runtime_error(message) {
        report_.add("", std::nullopt, message);
    }
    const ValidationReport& report() const noexcept { return report_; }

private:
    ValidationReport report_;
};

class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------- types

/// One electronic transition from the ground state: energy (eV) and
/// transition dipole <g|R|e_i> (e*Angstrom).
struct Excitation {
    std::size_t index = 0;
    double energy = 0.0;
    Vec3 dipole = Vec3::Zero();
    std::string label;
};

/// One quantized cavity mode. `strength` is the scalar lambda_k along `polarization`.
struct PhotonMode {
    double energy = 0.0;
    Vec3 polarization = Vec3::UnitX();
    double strength = 0.0;
};

/// A physical cavity. With loss_rate == 0 it is exactly one lossless mode;
/// with loss_rate > 0 it is expanded into a Lorentzian mode bath.
struct CavitySpec {
    double center_energy = 0.0;
    double strength = 0.0;
    Vec3 polarization = Vec3::UnitX();
    double loss_rate = 0.0;
    double mode_spacing = 0.0;
    std::optional<double> window_halfwidth;

    static constexpr double kDefaultWindowFactor = 10.0;
    static constexpr double kMinWindowFactor = 5.0;

    double effective_window() const {
        return window_halfwidth.value_or(kDefaultWindowFactor * loss_rate);
    }

    PhotonMode lossless_mode() const { return {center_energy, polarization, strength}; }
};

// ---------------------------------------------------------------- validation

inline bool finite(const Vec3& v) { return v.allFinite(); }

inline void check_excitations(std::span<const Excitation> excitations, ValidationReport& report) {
    std::vector<char> seen(excitations.size(), 0);
    for (std::size_t row = 0; row < excitations.size(); ++row) {
        const auto& e = excitations[row];
        if (!std::isfinite(e.energy) || e.energy <= 0.0)
            report.add("energy_eV", row, "nonpositive energy at index " + std::to_string(e.index));
        if (!finite(e.dipole))
            report.add("dipole", row, "non-finite dipole at index " + std::to_string(e.index));
        if (e.index >= excitations.size())
            report.add("index", row,
                       "index " + std::to_string(e.index) + " out of range (indices must be contiguous from 0)");
        else if (seen[e.index]++)
            report.add("index", row, "duplicate index " + std::to_string(e.index));
    }
}

inline void check_mode(const PhotonMode& m, std::optional<std::size_t> at, ValidationReport& report) {
    if (!std::isfinite(m.energy) || m.energy <= 0.0) report.add("energy", at, "nonpositive mode energy");
    if (!std::isfinite(m.strength) || m.strength < 0.0) report.add("strength", at, "negative cavity strength");
    if (!finite(m.polarization) || std::abs(m.polarization.norm() - 1.0) > units::kUnitNormTolerance)
        report.add("polarization", at, "polarization must be a unit vector");
}

inline void check_cavity(const CavitySpec& c, ValidationReport& report) {
    if (!std::isfinite(c.center_energy) || c.center_energy <= 0.0)
        report.add("center_energy_eV", std::nullopt, "nonpositive cavity center energy");
    if (!std::isfinite(c.strength) || c.strength < 0.0)
        report.add("strength_ev05_per_nm", std::nullopt, "negative cavity strength");
    if (!finite(c.polarization) || std::abs(c.polarization.norm() - 1.0) > units::kUnitNormTolerance)
        report.add("polarization", std::nullopt, "polarization must be a unit vector");
    if (!std::isfinite(c.loss_rate) || c.loss_rate < 0.0)
        report.add("loss_rate_eV", std::nullopt, "negative loss rate");
    if (c.loss_rate > 0.0) {
        if (!(c.mode_spacing > 0.0))
            report.add("mode_spacing_eV", std::nullopt, "mode_spacing required when loss_rate > 0");
        if (!(c.effective_window() >= CavitySpec::kMinWindowFactor * c.loss_rate))
            report.add("window_halfwidth_eV", std::nullopt, "window_halfwidth must be at least 5 * loss_rate");
    }
}

/// Collects every invariant violation; never throws.
inline ValidationReport validate_inputs(std::span<const Excitation> excitations, const CavitySpec& cavity) {
    ValidationReport report;
    check_excitations(excitations, report);
    check_cavity(cavity, report);
    return report;
}

/// Ordered, validated set of excitations. Sorted ascending by energy (stable).
class ExcitationSet {
public:
    ExcitationSet() = default;

    static ExcitationSet create(std::vector<Excitation> excitations, std::string source = {}) {
        ValidationReport report;
        if (excitations.empty()) report.add("excitations", std::nullopt, "excitation set is empty");
        check_excitations(excitations, report);
        if (!report.ok()) throw ValidationError(std::move(report));
        std::stable_sort(excitations.begin(), excitations.end(),
                         [](const Excitation& a, const Excitation& b) { return a.energy < b.energy; });
        ExcitationSet set;
        set.items_ = std::move(excitations);
        set.source_ = std::move(source);
        return set;
    }

    std::size_t size() const noexcept { return items_.size(); }
    bool empty() const noexcept { return items_.empty(); }
    const Excitation& operator[](std::size_t i) const { return items_[i]; }
    auto begin() const noexcept { return items_.begin(); }
    auto end() const noexcept { return items_.end(); }
    std::span<const Excitation> items() const noexcept { return items_; }
    const std::string& source() const noexcept { return source_; }

    Eigen::VectorXd energies() const {
        Eigen::VectorXd e(size());
        for (std::size_t i = 0; i < size(); ++i) e[i] = items_[i].energy;
        return e;
    }

    /// Dipole components along `direction` (not necessarily a unit vector).
    Eigen::VectorXd projected_dipoles(const Vec3& direction) const {
        Eigen::VectorXd d(size());
        for (std::size_t i = 0; i < size(); ++i) d[i] = direction.dot(items_[i].dipole);
        return d;
    }

    Eigen::VectorXd dipoles(Axis axis) const { return projected_dipoles(unit_vector(axis)); }

    /// The `count` lowest excitations, renumbered 0..count-1 in energy order.
    ExcitationSet head(std::size_t count) const {
        if (count == 0 || count > size())
            throw std::out_of_range("truncation to " + std::to_string(count) + " of " +
                                    std::to_string(size()) + " excitations");
        std::vector<Excitation> kept(items_.begin(), items_.begin() + static_cast<std::ptrdiff_t>(count));
        for (std::size_t i = 0; i < count; ++i) kept[i].index = i;
        return create(std::move(kept), source_ + " [first " + std::to_string(count) + "]");
    }

    /// Copy with the dipole of excitation `i` (position in energy order) replaced.
    ExcitationSet with_dipole(std::size_t i, const Vec3& dipole) const {
        ExcitationSet copy = *this;
        copy.items_.at(i).dipole = dipole;
        return copy;
    }

private:
    std::vector<Excitation> items_;
    std::string source_;
};

inline ValidationReport validate_inputs(const ExcitationSet& set, const CavitySpec& cavity) {
    return validate_inputs(set.items(), cavity);
}

// ---------------------------------------------------------------- coupling

/// Signed coupling energy hbar*g_{i,k} = -sqrt(w_k/2) * lambda_k * (e_k . d_i), in eV.
inline double coupling_rate(const Excitation& exc, const PhotonMode& mode) {
    return -std::sqrt(mode.energy / 2.0) * mode.strength * mode.polarization.dot(exc.dipole) *
           units::kAngstromPerNm;
}

/// Field amplitude E_k (V/nm) for a cavity strength lambda_k at mode energy w_k:
/// lambda = sqrt(2 / w) * E  with e*E in eV/nm.
inline double field_amplitude(double strength, double mode_energy) {
    return strength * std::sqrt(mode_energy / 2.0);
}

inline double strength_from_field(double field, double mode_energy) {
    return field * std::sqrt(2.0 / mode_energy);
}

/// Largest |hbar g_{i,k}| over all pairs.
inline double max_coupling(const ExcitationSet& set, std::span<const PhotonMode> modes) {
    double g = 0.0;
    for (const auto& m : modes)
        for (const auto& e : set) g = std::max(g, std::abs(coupling_rate(e, m)));
    return g;
}

}  // namespace polariton
