#pragma once

// Reference computations for the tests. Nothing here calls into the library's
// own eigensolver or pipeline; they are the independent side of each check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Eigenvalues of a Hermitian matrix by Householder tridiagonalization + QR.
inline std::vector<double> eigenvalues(const Matrix& a) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(a);
    std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(v.begin(), v.end());
    return v;
}

inline double trace_norm(const Matrix& a) {
    double s = 0.0;
    for (double l : eigenvalues(a)) s += std::abs(l);
    return s;
}

struct Jordan {
    Matrix plus, minus;
};

/// T± from the oracle eigensolver, summed in ascending-eigenvalue order.
inline Jordan jordan(const Matrix& a) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(a);
    const auto n = a.rows();
    Jordan j{Matrix::Zero(n, n), Matrix::Zero(n, n)};
    for (Eigen::Index k = 0; k < n; ++k) {
        const double l = es.eigenvalues()[k];
        const Eigen::VectorXcd v = es.eigenvectors().col(k);
        if (l > 0)
            j.plus += l * v * v.adjoint();
        else
            j.minus += -l * v * v.adjoint();
    }
    return j;
}

/// Midpoint rule for ∫_a^b e^{i(n−m)θ} dθ / 2π.
inline cplx arc_moment_quadrature(int m, int n, double a, double b, int points) {
    cplx s = 0.0;
    const double h = (b - a) / points;
    for (int i = 0; i < points; ++i) {
        const double t = a + (i + 0.5) * h;
        s += std::polar(1.0, (n - m) * t);
    }
    return s * h / (2.0 * std::numbers::pi);
}

/// Max over entries of |a − b|.
inline double max_diff(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

/// Multisets compared after sorting.
inline double multiset_distance(std::vector<double> a, std::vector<double> b) {
    if (a.size() != b.size()) return INFINITY;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

}  // namespace oracle
