// charpoly.hpp - test-only eigenvalue oracle for small real symmetric matrices.
//
// Characteristic polynomial by Faddeev-LeVerrier in long double, then root
// isolation: the roots of p' (found recursively) separate the roots of a
// real-rooted p, and each bracket is refined by bisection. Shares no code with
// the LAPACK path it checks.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace polariton::oracle {

using Real = long double;
using Poly = std::vector<Real>;  // coefficients, lowest degree first

inline Poly characteristic_polynomial(const Eigen::MatrixXd& a) {
    const auto n = static_cast<std::size_t>(a.rows());
    using Mat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
    const Mat A = a.cast<Real>();
    Poly c(n + 1, 0.0L);
    c[n] = 1.0L;
    Mat m = Mat::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    const Mat eye = Mat::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t k = 1; k <= n; ++k) {
        m = A * m + c[n - k + 1] * eye;
        c[n - k] = -(A * m).trace() / static_cast<Real>(k);
    }
    return c;
}

inline Real evaluate(const Poly& p, Real x) {
    Real v = 0.0L;
    for (std::size_t i = p.size(); i-- > 0;) v = v * x + p[i];
    return v;
}

inline Poly derivative(const Poly& p) {
    Poly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<Real>(i));
    return d;
}

inline Real root_bound(const Poly& p) {
    Real m = 0.0L;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) m = std::max(m, std::abs(p[i] / p.back()));
    return 1.0L + m;
}

inline Real bisect(const Poly& p, Real lo, Real hi) {
    Real flo = evaluate(p, lo);
    const Real fhi = evaluate(p, hi);
    if (flo == 0.0L) return lo;
    if (fhi == 0.0L) return hi;
    if ((flo > 0) == (fhi > 0)) return std::abs(flo) < std::abs(fhi) ? lo : hi;  // touching (double) root
    for (int it = 0; it < 200 && hi - lo > 0; ++it) {
        const Real mid = 0.5L * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const Real fm = evaluate(p, mid);
        if (fm == 0.0L) return mid;
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5L * (lo + hi);
}

/// All roots of a real-rooted polynomial, ascending.
inline std::vector<Real> real_roots(const Poly& p) {
    const std::size_t deg = p.size() - 1;
    if (deg == 0) return {};
    if (deg == 1) return {-p[0] / p[1]};
    const auto critical = real_roots(derivative(p));
    const Real bound = root_bound(p);
    std::vector<Real> edges{-bound};
    edges.insert(edges.end(), critical.begin(), critical.end());
    edges.push_back(bound);
    std::vector<Real> roots;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) roots.push_back(bisect(p, edges[i], edges[i + 1]));
    std::sort(roots.begin(), roots.end());
    return roots;
}

inline Eigen::VectorXd eigenvalues(const Eigen::MatrixXd& a) {
    const auto roots = real_roots(characteristic_polynomial(a));
    Eigen::VectorXd out(static_cast<Eigen::Index>(roots.size()));
    for (std::size_t i = 0; i < roots.size(); ++i) out[static_cast<Eigen::Index>(i)] = static_cast<double>(roots[i]);
    return out;
}

}  // namespace polariton::oracle
