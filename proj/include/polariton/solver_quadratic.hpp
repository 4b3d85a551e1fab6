// solver_quadratic.hpp - beyond-RWA polaritons from the harmonic (Hopfield-type)
// form of the length-gauge light-matter Hamiltonian, including counter-rotating
// terms and the dipole self-energy.
//
// Each excitation i is a harmonic coordinate x_i with frequency w_i, and the
// electronic position operator is R = sum_i d_i sqrt(2 w_i) x_i, so that
// <0|R|1_i> = d_i. Expanding
//     1/2 w_k^2 (q_k - lambda_k . R / w_k)^2
// gives the force-constant matrix K (H = 1/2 p^2 + 1/2 x^T K x):
//     K_el[i][j]   = w_i^2 delta_ij + sum_k 2 sqrt(w_i w_j) (lambda_k.d_i)(lambda_k.d_j)
//     K_ph[k][k']  = w_k^2 delta_kk'
//     K_x[i][k]    = -w_k sqrt(2 w_i) (lambda_k.d_i)
// whose eigenvalues are the squared polariton energies.

#pragma once

#include <cmath>
#include <sstream>
#include <span>

#include <Eigen/Dense>

#include "polariton/core.hpp"
#include "polariton/linalg.hpp"
#include "polariton/solution.hpp"

namespace polariton {

/// Symmetric (M+N) x (M+N) force-constant matrix in eV^2.
struct QuadraticForm {
    Eigen::MatrixXd matrix;
    std::size_t electronic_count = 0;
};

enum class SelfEnergy { include, omit };

inline constexpr double kNegativeEigenvalueTolerance = 1e-10;  // eV^2

/// (lambda_k . d_i) with the Angstrom/nm factor, M x N.
inline Eigen::MatrixXd projected_strengths(const ExcitationSet& set, std::span<const PhotonMode> modes) {
    Eigen::MatrixXd a(set.size(), modes.size());
    for (std::size_t k = 0; k < modes.size(); ++k)
        for (std::size_t i = 0; i < set.size(); ++i)
            a(i, k) = modes[k].strength * modes[k].polarization.dot(set[i].dipole) * units::kAngstromPerNm;
    return a;
}

inline QuadraticForm build_quadratic_matrix(const ExcitationSet& set, std::span<const PhotonMode> modes,
                                            const SolverOptions& opts = {},
                                            SelfEnergy self_energy = SelfEnergy::include) {
    check_problem_size(set, modes, opts);
    const auto m = static_cast<Eigen::Index>(set.size());
    const auto n = static_cast<Eigen::Index>(modes.size());
    const Eigen::VectorXd w_el = set.energies();
    Eigen::VectorXd w_ph(n);
    for (Eigen::Index k = 0; k < n; ++k) w_ph[k] = modes[k].energy;

    const Eigen::MatrixXd a = projected_strengths(set, modes);
    Eigen::MatrixXd k_mat = Eigen::MatrixXd::Zero(m + n, m + n);
    k_mat.diagonal().head(m) = w_el.array().square().matrix();
    k_mat.diagonal().tail(n) = w_ph.array().square().matrix();

    if (self_energy == SelfEnergy::include) {
        // u_{ik} = sqrt(w_i) (lambda_k . d_i); self-energy block = 2 U U^T
        const Eigen::MatrixXd u = w_el.array().sqrt().matrix().asDiagonal() * a;
        k_mat.topLeftCorner(m, m).noalias() += 2.0 * u * u.transpose();
    }
    const Eigen::VectorXd root2w = (2.0 * w_el.array()).sqrt();
    const Eigen::MatrixXd cross = -(root2w.asDiagonal() * a * w_ph.asDiagonal());
    k_mat.topRightCorner(m, n) = cross;
    k_mat.bottomLeftCorner(n, m) = cross.transpose();
    return {std::move(k_mat), set.size()};
}

/// Raw eigen-decomposition of K: eigenvalues in eV^2 and orthonormal vectors.
inline SymmetricEigen diagonalize(const QuadraticForm& form) { return symmetric_eigen(form.matrix); }

inline PolaritonSolution solve_quadratic(const ExcitationSet& set, std::span<const PhotonMode> modes,
                                         const SolverOptions& opts = {},
                                         SelfEnergy self_energy = SelfEnergy::include) {
    const QuadraticForm form = build_quadratic_matrix(set, modes, opts, self_energy);
    const SymmetricEigen eig = diagonalize(form);
    const auto m = static_cast<Eigen::Index>(set.size());
    const auto n = static_cast<Eigen::Index>(modes.size());
    const Eigen::Index dim = m + n;

    Eigen::VectorXd bare(dim);
    bare.head(m) = set.energies();
    for (Eigen::Index k = 0; k < n; ++k) bare[m + k] = modes[k].energy;

    PolaritonSolution sol;
    sol.model = ModelTag::quadratic;
    sol.energies.resize(dim);
    for (Eigen::Index l = 0; l < dim; ++l) {
        double ev = eig.values[l];
        if (ev < -kNegativeEigenvalueTolerance) {
            std::ostringstream os;
            os << "ultrastrong instability: force-constant eigenvalue " << ev
               << " eV^2 is negative (state " << l << ")";
            throw SolverError(os.str());
        }
        if (ev <= 0.0) {
            std::ostringstream os;
            os << "zero-frequency polariton (eigenvalue " << ev << " eV^2, state " << l << ") is not supported";
            throw SolverError(os.str());
        }
        sol.energies[l] = std::sqrt(ev);
    }

    // C_{sl} = sqrt(w_s / w_l) v_{sl}, then each column rescaled to unit norm.
    Eigen::MatrixXd c = bare.array().sqrt().matrix().asDiagonal() * eig.vectors;
    c = c * sol.energies.array().rsqrt().matrix().asDiagonal();
    for (Eigen::Index l = 0; l < dim; ++l) c.col(l).normalize();
    sol.el_proj = c.topRows(m);
    sol.ph_proj = c.bottomRows(n);
    return sol;
}

}  // namespace polariton
