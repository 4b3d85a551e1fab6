// linalg.hpp - dense real symmetric eigendecomposition (LAPACK dsyevd) with a
// reproducible eigenvector sign convention.
//
// Every LAPACK result is probed with a random vector (O(n^2), Eigen-native
// products); a decomposition that fails the probe is recomputed with Eigen's
// own solver. Some optimized BLAS kernels return wrong vectors on some CPUs
// (OpenBLAS 0.3.20 "Cooperlake" is one), and this is cheap insurance.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <sstream>
#include <string>

#ifndef lapack_complex_float
#define lapack_complex_float std::complex<float>
#endif
#ifndef lapack_complex_double
#define lapack_complex_double std::complex<double>
#endif
#include <lapacke.h>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "polariton/core.hpp"

namespace polariton {

struct SymmetricEigen {
    Eigen::VectorXd values;   // ascending
    Eigen::MatrixXd vectors;  // column l belongs to values[l]
};

/// Flip each column so that its largest-magnitude component is positive.
/// Near-ties (within 1e-12 relative) resolve to the lowest row index.
inline void fix_eigenvector_signs(Eigen::MatrixXd& vectors) {
    for (Eigen::Index l = 0; l < vectors.cols(); ++l) {
        auto col = vectors.col(l);
        const double peak = col.cwiseAbs().maxCoeff();
        Eigen::Index pivot = 0;
        for (Eigen::Index r = 0; r < col.size(); ++r) {
            if (std::abs(col[r]) >= peak * (1.0 - 1e-12)) {
                pivot = r;
                break;
            }
        }
        if (col[pivot] < 0.0) col = -col;
    }
}

inline std::string matrix_diagnostics(const Eigen::MatrixXd& a) {
    std::ostringstream os;
    const auto diag = a.diagonal().cwiseAbs();
    os << "n=" << a.rows() << " frobenius=" << a.norm();
    if (a.rows() > 0)
        os << " max|diag|=" << diag.maxCoeff() << " min|diag|=" << diag.minCoeff()
           << " finite=" << (a.allFinite() ? "yes" : "no");
    return os.str();
}

inline constexpr double kDecompositionCheckTolerance = 1e-9;

/// Relative residual of A V = V diag(w) and of V^T V = I along a fixed pseudo-random probe.
inline double decomposition_error(const Eigen::MatrixXd& a, const Eigen::VectorXd& values,
                                  const Eigen::MatrixXd& vectors) {
    const Eigen::Index n = a.rows();
    Eigen::VectorXd x(n);
    std::uint64_t state = 0x9E3779B97F4A7C15ull;
    for (Eigen::Index i = 0; i < n; ++i) {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        x[i] = static_cast<double>(state >> 11) * 0x1.0p-53 - 0.5;
    }
    const Eigen::VectorXd y = vectors * x;
    const Eigen::VectorXd ay = a.selfadjointView<Eigen::Lower>() * y;
    const Eigen::VectorXd vwx = vectors * values.cwiseProduct(x);
    const double peak = Eigen::MatrixXd(a.triangularView<Eigen::Lower>()).cwiseAbs().maxCoeff();
    const double scale = std::max(peak, 1e-300) * x.norm() * std::sqrt(static_cast<double>(n));
    const double residual = (ay - vwx).norm() / scale;
    const double orthogonality = (vectors.transpose() * y - x).norm() / x.norm();
    return std::max(residual, orthogonality);
}

/// Eigenvalues (ascending) and orthonormal eigenvectors of a symmetric matrix.
/// Only the lower triangle is read. Throws SolverError on non-convergence.
inline SymmetricEigen symmetric_eigen(const Eigen::MatrixXd& a) {
    const auto n = static_cast<lapack_int>(a.rows());
    if (a.rows() != a.cols()) throw SolverError("symmetric_eigen: matrix is not square");
    SymmetricEigen out;
    out.values.resize(n);
    if (n == 0) return out;
    if (!a.allFinite()) throw SolverError("symmetric_eigen: non-finite matrix entries (" + matrix_diagnostics(a) + ")");
    Eigen::MatrixXd work = a;
    lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, work.data(), n, out.values.data());
    if (info != 0) {
        std::ostringstream os;
        os << "eigensolver failed to converge (dsyevd info=" << info << ", " << matrix_diagnostics(a) << ")";
        throw SolverError(os.str());
    }
    if (decomposition_error(a, out.values, work) <= kDecompositionCheckTolerance) {
        out.vectors = std::move(work);
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> fallback(a, Eigen::ComputeEigenvectors);
        if (fallback.info() != Eigen::Success)
            throw SolverError("eigensolver failed to converge (LAPACK result rejected, Eigen fallback failed, " +
                              matrix_diagnostics(a) + ")");
        out.values = fallback.eigenvalues();
        out.vectors = fallback.eigenvectors();
    }
    fix_eigenvector_signs(out.vectors);
    return out;
}

}  // namespace polariton
