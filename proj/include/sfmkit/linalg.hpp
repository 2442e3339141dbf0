#pragma once

// Dense complex kernel: trace norms, a cyclic Jacobi Hermitian solver, the
// max-modulus deflation diagonalizer, signed frames and Jordan splitting.

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace sfmkit {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Relative cutoff below which an eigenvalue counts as zero.
inline constexpr double kDefaultRankCutoff = 1e-12;
/// Relative tolerance used for Hermiticity and verification checks.
inline constexpr double kDefaultTol = 1e-9;

/// Throws DimensionError unless A is square, ValidationError on NaN/Inf.
void require_square(const Matrix& A, const char* what = "matrix");

/// ‖A‖₁. Sum of |eigenvalues| when `hermitian`, sum of singular values otherwise.
double trace_norm(const Matrix& A, bool hermitian);

/// Σ|A_mn|, an upper bound for trace_norm.
double entrywise_l1(const Matrix& A);

/// max(1, ‖A‖₁), the scale all relative tolerances refer to.
double tolerance_scale(const Matrix& A);

/// Entrywise max |A − A*|.
double hermitian_defect(const Matrix& A);

bool is_hermitian(const Matrix& A, double tol = kDefaultTol);

/// Throws SymmetryError when ‖A − A*‖_max > tol·max(1,‖A‖₁).
void require_hermitian(const Matrix& A, double tol = kDefaultTol, const char* what = "matrix");

/// Rotates v so that its first component with modulus > cutoff is real positive.
Vector canonical_phase(Vector v, double cutoff = kDefaultRankCutoff);

/// Lexicographic order on (re, im) componentwise.
bool lexicographic_less(const Vector& a, const Vector& b);

/// Complete eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Eigenvalues ascending, eigenvectors in matching columns.
struct JacobiResult {
    Eigen::VectorXd values;
    Matrix vectors;
    int sweeps = 0;
};

JacobiResult jacobi_eigen(const Matrix& A, int max_sweeps = 100);

struct EigenPair {
    double value = 0.0;
    Vector vector;
};

/// Eigenvalue of largest modulus with a canonical unit eigenvector.
///
/// Ties in modulus (within rank_cutoff·scale) go to the positive eigenvalue;
/// equal eigenvalues are ordered by the lexicographic order of their canonical
/// eigenvectors. The zero matrix yields (0, e₀).
EigenPair max_modulus_eigenpair(const Matrix& A, double tol = kDefaultTol,
                                double rank_cutoff = kDefaultRankCutoff);

/// λ₁…λ_r with |λ| nonincreasing and orthonormal φ₁…φ_r.
struct EigenSystem {
    std::size_t dim = 0;
    std::vector<double> values;
    std::vector<Vector> vectors;

    std::size_t rank() const { return values.size(); }
    Matrix reconstruct() const;
    double absolute_sum() const;
};

/// Peels off max-modulus eigenpairs, T_k = T_{k−1} − λ_k|φ_k⟩⟨φ_k|, until the
/// remaining max modulus drops to rank_cutoff·max(1,‖A‖₁).
EigenSystem deflate_diagonalize(const Matrix& A, double rank_cutoff = kDefaultRankCutoff,
                                double tol = kDefaultTol);

/// g_k for k ∈ ℤ∖{0}: `positive[i]` is g_{i+1}, `negative[i]` is g_{−(i+1)}.
struct SignedFrame {
    std::size_t dim = 0;
    std::vector<Vector> positive;
    std::vector<Vector> negative;

    /// Σ sgn(k)|g_k⟩⟨g_k|.
    Matrix reconstruct() const;
    /// Σ‖g_k‖².
    double squared_norm_sum() const;
};

/// g = |λ|^{1/2}φ, split by sign; |λ| ≤ rank_cutoff·max(1,Σ|λ|) is dropped.
SignedFrame signed_frame(const EigenSystem& eig, double rank_cutoff = kDefaultRankCutoff);

struct JordanParts {
    Matrix plus;
    Matrix minus;
};

/// T± = Σ_{k∈ℤ±}|g_k⟩⟨g_k|.
JordanParts jordan_split(const SignedFrame& frame);

/// Σ v v* over a list of vectors, dim×dim.
Matrix gram_sum(const std::vector<Vector>& vectors, std::size_t dim);

/// Smallest eigenvalue of a Hermitian matrix (0×0 → 0).
double min_eigenvalue(const Matrix& A);

}  // namespace sfmkit
