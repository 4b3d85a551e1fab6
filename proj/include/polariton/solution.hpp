// solution.hpp - result type shared by both polariton solvers.

#pragma once

#include <cstddef>
#include <cstdlib>
#include <optional>
#include <span>
#include <string>

#include <Eigen/Dense>

#include "polariton/core.hpp"

namespace polariton {

enum class ModelTag { rwa, quadratic };

inline const char* to_string(ModelTag m) { return m == ModelTag::rwa ? "rwa" : "quadratic"; }

inline std::optional<ModelTag> parse_model(std::string_view s) {
    if (s == "rwa") return ModelTag::rwa;
    if (s == "quadratic") return ModelTag::quadratic;
    return std::nullopt;
}

struct SolverOptions {
    static constexpr std::size_t kDefaultMaxDimension = 20000;
    std::size_t max_dimension = kDefaultMaxDimension;

    /// Defaults, with max_dimension overridden by POLARITON_MAX_DIM when set.
    static SolverOptions from_environment() {
        SolverOptions opts;
        if (const char* env = std::getenv("POLARITON_MAX_DIM"); env && *env) {
            char* end = nullptr;
            const unsigned long long v = std::strtoull(env, &end, 10);
            if (end && *end == '\0' && v > 0) opts.max_dimension = static_cast<std::size_t>(v);
        }
        return opts;
    }
};

/// Polariton energies (ascending) and projections of each polariton l onto
/// the bare electronic states (el_proj, M x (M+N)) and photon states (ph_proj, N x (M+N)).
struct PolaritonSolution {
    Eigen::VectorXd energies;
    Eigen::MatrixXd el_proj;
    Eigen::MatrixXd ph_proj;
    ModelTag model = ModelTag::rwa;

    std::size_t electronic_count() const { return static_cast<std::size_t>(el_proj.rows()); }
    std::size_t photon_count() const { return static_cast<std::size_t>(ph_proj.rows()); }
    std::size_t state_count() const { return static_cast<std::size_t>(energies.size()); }
};

inline void check_problem_size(const ExcitationSet& set, std::span<const PhotonMode> modes,
                               const SolverOptions& opts) {
    if (set.empty()) throw ValidationError("at least one electronic excitation is required");
    if (modes.empty()) throw ValidationError("at least one photon mode is required");
    const std::size_t dim = set.size() + modes.size();
    if (dim > opts.max_dimension)
        throw SolverError("problem dimension " + std::to_string(dim) + " exceeds configured maximum " +
                          std::to_string(opts.max_dimension) + " (set POLARITON_MAX_DIM to raise it)");
    ValidationReport report;
    for (std::size_t k = 0; k < modes.size(); ++k) check_mode(modes[k], k, report);
    if (!report.ok()) throw ValidationError(std::move(report));
}

}  // namespace polariton
