// solver_rwa.hpp - cavity-QED model in the single-excitation subspace under the
// rotating-wave approximation.
//
//   H = [ diag(w_el)   G       ]      G_{ik} = hbar g_{i,k}
//       [ G^T          diag(w) ]
//
// Stationary states of the linear amplitude equations are the eigenvectors of H.

#pragma once

#include <span>

#include <Eigen/Dense>

#include "polariton/core.hpp"
#include "polariton/linalg.hpp"
#include "polariton/solution.hpp"

namespace polariton {

/// Coupling block G (M x N) in eV.
inline Eigen::MatrixXd coupling_matrix(const ExcitationSet& set, std::span<const PhotonMode> modes) {
    Eigen::MatrixXd g(set.size(), modes.size());
    for (std::size_t k = 0; k < modes.size(); ++k)
        for (std::size_t i = 0; i < set.size(); ++i) g(i, k) = coupling_rate(set[i], modes[k]);
    return g;
}

inline Eigen::MatrixXd build_rwa_matrix(const ExcitationSet& set, std::span<const PhotonMode> modes,
                                        const SolverOptions& opts = {}) {
    check_problem_size(set, modes, opts);
    const auto m = static_cast<Eigen::Index>(set.size());
    const auto n = static_cast<Eigen::Index>(modes.size());
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m + n, m + n);
    for (Eigen::Index i = 0; i < m; ++i) h(i, i) = set[i].energy;
    for (Eigen::Index k = 0; k < n; ++k) h(m + k, m + k) = modes[k].energy;
    const Eigen::MatrixXd g = coupling_matrix(set, modes);
    h.topRightCorner(m, n) = g;
    h.bottomLeftCorner(n, m) = g.transpose();
    return h;
}

inline PolaritonSolution solve_rwa(const ExcitationSet& set, std::span<const PhotonMode> modes,
                                   const SolverOptions& opts = {}) {
    const Eigen::MatrixXd h = build_rwa_matrix(set, modes, opts);
    auto eig = symmetric_eigen(h);
    const auto m = static_cast<Eigen::Index>(set.size());
    const auto n = static_cast<Eigen::Index>(modes.size());
    PolaritonSolution sol;
    sol.model = ModelTag::rwa;
    sol.energies = std::move(eig.values);
    sol.el_proj = eig.vectors.topRows(m);
    sol.ph_proj = eig.vectors.bottomRows(n);
    return sol;
}

}  // namespace polariton
