#include <gtest/gtest.h>

#include <random>

#include "polariton/linalg.hpp"

using namespace polariton;

namespace {

Eigen::MatrixXd random_symmetric(int n, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = g(rng);
    return a;
}

}  // namespace

TEST(SymmetricEigen, LargeMatricesDecomposeAccurately) {
    for (const int n : {5, 150, 400}) {
        const auto a = random_symmetric(n, 300u + static_cast<unsigned>(n));
        const auto eig = symmetric_eigen(a);
        EXPECT_LT((a * eig.vectors - eig.vectors * eig.values.asDiagonal()).cwiseAbs().maxCoeff(), 1e-10) << n;
        EXPECT_TRUE((eig.vectors.transpose() * eig.vectors).isIdentity(1e-10)) << n;
        EXPECT_TRUE(std::is_sorted(eig.values.begin(), eig.values.end()));
    }
}

TEST(SymmetricEigen, ProbeRejectsCorruptedVectors) {
    const auto a = random_symmetric(60, 7);
    const auto eig = symmetric_eigen(a);
    EXPECT_LT(decomposition_error(a, eig.values, eig.vectors), kDecompositionCheckTolerance);
    Eigen::MatrixXd bad = eig.vectors;
    bad.col(3).swap(bad.col(4));
    EXPECT_GT(decomposition_error(a, eig.values, bad), 1e-3);
}

TEST(SymmetricEigen, ReadsLowerTriangleOnly) {
    Eigen::MatrixXd a = random_symmetric(8, 9);
    Eigen::MatrixXd lower_only = a;
    lower_only.triangularView<Eigen::StrictlyUpper>().setConstant(1e6);
    const auto ref = symmetric_eigen(a);
    const auto got = symmetric_eigen(lower_only);
    EXPECT_TRUE(got.values.isApprox(ref.values, 1e-12));
}

TEST(SymmetricEigen, NonFiniteInputIsSolverError) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(3, 3);
    a(1, 0) = std::nan("");
    EXPECT_THROW(symmetric_eigen(a), SolverError);
}

TEST(SymmetricEigen, SignConventionPrefersLowestIndexOnTies) {
    Eigen::MatrixXd v(2, 1);
    v << -M_SQRT1_2, M_SQRT1_2;
    fix_eigenvector_signs(v);
    EXPECT_GT(v(0, 0), 0.0);
}
