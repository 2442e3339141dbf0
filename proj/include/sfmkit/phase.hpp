#pragma once

// Phase-shift covariant measures on a partition of the circle into arcs,
// generated from a Hermitian coefficient matrix with unit diagonal, and
// truncated coherent states to probe them with.

#include <cstddef>
#include <string>
#include <vector>

#include "sfmkit/sfm.hpp"

namespace sfmkit::phase {

/// Half-open arcs [θ_j, θ_{j+1}) with θ_M = θ₀ + 2π.
class ArcPartition {
public:
    explicit ArcPartition(std::vector<double> breakpoints);

    /// M equal arcs starting at theta0.
    static ArcPartition uniform(std::size_t arcs, double theta0 = 0.0);

    std::size_t size() const noexcept { return bp_.size() - 1; }
    double begin(std::size_t j) const { return bp_.at(j); }
    double end(std::size_t j) const { return bp_.at(j + 1); }
    const std::vector<double>& breakpoints() const noexcept { return bp_; }

    /// Splits every arc into `factor` equal pieces.
    ArcPartition refine(std::size_t factor) const;

private:
    std::vector<double> bp_;
};

/// ∫_{[a,b)} w^{n−m} dμ(w) for normalized Haar measure μ.
cplx arc_moment(std::size_t m, std::size_t n, double a, double b);

/// Hermitian coefficients c_mn with unit diagonal; need not be positive.
class CMatrix {
public:
    explicit CMatrix(Matrix c, double tol = kDefaultTol);

    static CMatrix identity(std::size_t dim);
    static CMatrix all_ones(std::size_t dim);
    /// c_mn = r^{|m−n|}; positive semidefinite for |r| < 1, not for r = 2.
    static CMatrix toeplitz(std::size_t dim, double r);
    /// "identity", "all-ones", "toeplitz(r)".
    static CMatrix preset(const std::string& name, std::size_t dim);

    const Matrix& matrix() const noexcept { return c_; }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(c_.rows()); }

    /// Smallest eigenvalue of the leading block×block submatrix.
    double block_min_eigenvalue(std::size_t block) const;

private:
    Matrix c_;
};

/// One atom per arc: form_mn = c_mn · arc_moment(m, n, arc). Labels "arc<j>".
AtomicSFM phase_sfm(const CMatrix& c, const ArcPartition& part);

/// Coherent state truncated at n = N−1 and renormalized. z = 0 gives e₀.
Vector coherent_vector(cplx z, std::size_t dim);

struct ProbabilityReport {
    std::vector<std::string> labels;
    std::vector<cplx> values;
    cplx sum{0.0, 0.0};
    double max_imag = 0.0;
    double min_real = 0.0;
    std::size_t negative_count = 0;
};

/// ⟨φ|E({ω_j})φ⟩ per atom with realness and negativity diagnostics.
ProbabilityReport probabilities(const AtomicSFM& E, const Vector& phi, double tol = kDefaultTol);

struct NegativityWitness {
    double value = 0.0;  // most negative Re⟨φ|E(ω_j)φ⟩ found
    std::size_t atom = 0;
    Vector state;
};

/// Grid search over two-level superpositions cos t·e_m + e^{iθ} sin t·e_n.
NegativityWitness negativity_search(const AtomicSFM& E, std::size_t angle_steps = 24, std::size_t phase_steps = 24);

}  // namespace sfmkit::phase
