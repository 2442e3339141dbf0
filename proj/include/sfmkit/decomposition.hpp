#pragma once

// Splitting symmetric measures into positive and negative parts, and the
// four-part decomposition E = Σ_k i^k E^(k) into positive measures.

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "sfmkit/sfm.hpp"

namespace sfmkit {

/// Per-atom frame vectors d_k(ω_j) = D⁻¹ g_k(ω_j) with √μ_j folded in, so that
/// E(ω_j) = Σ_{k>0} |d_k⟩⟨d_k| − Σ_{k<0} |d_k⟩⟨d_k|.
struct DkFamily {
    std::size_t dim = 0;
    std::vector<std::string> labels;
    std::vector<std::vector<Vector>> positive;
    std::vector<std::vector<Vector>> negative;
    std::vector<double> scaling;

    std::size_t size() const { return labels.size(); }
    /// Σ sgn(k)|d_k⟩⟨d_k| at atom j.
    Matrix reconstruct(std::size_t j) const;
};

DkFamily dk_vectors(const DensityFamily& T, const std::vector<double>& mu, const DiagonalScaling& D,
                    double rank_cutoff = kDefaultRankCutoff);

/// What the trace-class pipeline used for one symmetric measure.
struct Provenance {
    std::vector<double> weights;
    std::vector<double> mu;
    double delta = 0.0;
};

struct SymmetricSplit {
    AtomicSFM plus;
    AtomicSFM minus;
    DkFamily frames;
    Provenance provenance;
};

/// E = E⁺ − E⁻ for a symmetric E, through the scaling from `alpha`.
SymmetricSplit split_symmetric_sfm(const AtomicSFM& E, const AlphaSequence& alpha = geometric_alpha(),
                                   double tol = kDefaultTol);
/// Same with an explicit scaling D.
SymmetricSplit split_symmetric_sfm(const AtomicSFM& E, const DiagonalScaling& D, double tol = kDefaultTol);

/// Four positive measures with E = E⁽⁰⁾ + iE⁽¹⁾ − E⁽²⁾ − iE⁽³⁾.
struct PositiveDecomposition {
    std::array<AtomicSFM, 4> parts;
    /// Pipeline records for the real (A) and imaginary (B) symmetric parts.
    std::optional<Provenance> real_provenance;
    std::optional<Provenance> imag_provenance;
    /// Frame vectors realizing each part, when produced by `decompose`.
    std::optional<std::array<DkFamily, 4>> frames;

    std::size_t dim() const { return parts[0].dim(); }
    std::size_t size() const { return parts[0].size(); }
    /// Σ_k i^k E⁽ᵏ⁾.
    AtomicSFM reconstruct() const;
};

PositiveDecomposition decompose(const AtomicSFM& E, const AlphaSequence& alpha = geometric_alpha(),
                                double tol = kDefaultTol);

struct DecompositionReport {
    /// min_eigenvalue[k][j] of part k at atom j.
    std::array<std::vector<double>, 4> min_eigenvalue;
    bool positive = true;
    /// max |E_mn(ω_j) − Σ_k i^k E⁽ᵏ⁾_mn(ω_j)|, absolute and relative to 1 + scale.
    double residual = 0.0;
    double relative_residual = 0.0;
    bool reconstructs = true;
    /// min_m Σ_k E⁽ᵏ⁾_Ω(e_m, e_m).
    double injectivity = 0.0;
    double scale = 0.0;

    bool passed() const { return positive && reconstructs; }
};

/// PSD check per part and atom, reconstruction residual and the injectivity
/// indicator. Tolerances are relative to 1 + the largest entry involved.
DecompositionReport verify_decomposition(const AtomicSFM& E, const PositiveDecomposition& dec,
                                         double tol = kDefaultTol);

/// Uniform normalized positive measure: (1/M)·I on every atom of `like`.
AtomicSFM uniform_semispectral(const AtomicSFM& like);

/// Decomposes E + εE₀ and adds εE₀ to the negative real part, so that
/// Σ_k E⁽ᵏ⁾_Ω(φ, φ) ≥ ε‖φ‖². E₀ must be positive with E₀(Ω) = I.
PositiveDecomposition strictify(const AtomicSFM& E, double eps, const AtomicSFM& E0,
                                const AlphaSequence& alpha = geometric_alpha(), double tol = kDefaultTol);
PositiveDecomposition strictify(const AtomicSFM& E, double eps);

}  // namespace sfmkit
