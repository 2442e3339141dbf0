#pragma once

// Sesquilinear forms and sesquilinear form measures on a finite atomic space,
// plus the compression E ↦ (D, F, μ, T) onto trace-class densities.

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sfmkit/linalg.hpp"

namespace sfmkit {

/// Φ(φ, ψ) = φ*·M·ψ in the truncated basis e₀…e_{N−1}; antilinear in φ.
class SesquiForm {
public:
    SesquiForm() = default;
    explicit SesquiForm(Matrix m);

    static SesquiForm zero(std::size_t dim);

    const Matrix& matrix() const noexcept { return m_; }
    std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }

    cplx operator()(const Vector& phi, const Vector& psi) const;
    /// Φ*(φ, ψ) = conj Φ(ψ, φ).
    SesquiForm adjoint() const { return SesquiForm(m_.adjoint()); }

    bool is_symmetric(double tol = kDefaultTol) const { return is_hermitian(m_, tol); }
    bool is_positive(double tol = kDefaultTol) const;

private:
    Matrix m_;
};

SesquiForm operator+(const SesquiForm& a, const SesquiForm& b);
SesquiForm operator-(const SesquiForm& a, const SesquiForm& b);
SesquiForm operator*(cplx s, const SesquiForm& a);

struct Atom {
    std::string label;
    SesquiForm form;
};

/// A set of atoms given by index; order irrelevant, duplicates ignored.
using AtomSet = std::vector<std::size_t>;

/// E(X) = Σ_{atoms in X} form, over M ≥ 1 uniquely labelled atoms.
class AtomicSFM {
public:
    AtomicSFM(std::size_t dim, std::vector<Atom> atoms);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return atoms_.size(); }
    const std::vector<Atom>& atoms() const noexcept { return atoms_; }
    const Atom& atom(std::size_t j) const { return atoms_.at(j); }
    std::vector<std::string> labels() const;

    /// Throws LookupError for an unknown label.
    std::size_t index_of(const std::string& label) const;
    AtomSet resolve(std::span<const std::string> labels) const;
    AtomSet all() const;

    /// Entrywise sum of the forms of the atoms in X.
    Matrix value(const AtomSet& X) const;
    Matrix total() const { return value(all()); }

    bool is_symmetric(double tol = kDefaultTol) const;
    bool is_positive(double tol = kDefaultTol) const;

    /// Same labels, forms transformed atomwise.
    AtomicSFM map(const std::function<Matrix(const Matrix&)>& f) const;

private:
    std::size_t dim_;
    std::vector<Atom> atoms_;
};

/// E_X(φ, ψ).
cplx evaluate(const AtomicSFM& E, const AtomSet& X, const Vector& phi, const Vector& psi);
cplx evaluate(const AtomicSFM& E, std::span<const std::string> labels, const Vector& phi,
              const Vector& psi);

struct SymmetricParts {
    SesquiForm real;  // (Φ + Φ*)/2
    SesquiForm imag;  // (iΦ* − iΦ)/2
};

/// Φ = A + iB with A, B symmetric.
SymmetricParts symmetric_split(const SesquiForm& phi);

/// Atomwise symmetric_split of a whole measure.
std::pair<AtomicSFM, AtomicSFM> symmetric_split(const AtomicSFM& E);

/// |E_mn|(Ω) = Σ_j |E_mn(ω_j)|.
double entry_total_variation(const AtomicSFM& E, std::size_t m, std::size_t n);

/// Positive diagonal weights d₀…d_{N−1}.
class DiagonalScaling {
public:
    explicit DiagonalScaling(std::vector<double> weights);

    static DiagonalScaling identity(std::size_t dim) { return DiagonalScaling(std::vector<double>(dim, 1.0)); }

    const std::vector<double>& weights() const noexcept { return w_; }
    std::size_t dim() const noexcept { return w_.size(); }
    double operator[](std::size_t m) const { return w_.at(m); }

    /// D·v and D⁻¹·v.
    Vector apply(const Vector& v) const;
    Vector apply_inverse(const Vector& v) const;
    /// D M D and D⁻¹ M D⁻¹.
    Matrix congruence(const Matrix& m) const;
    Matrix inverse_congruence(const Matrix& m) const;

private:
    std::vector<double> w_;
};

/// α_m; must be positive and summable.
using AlphaSequence = std::function<double(std::size_t)>;

/// α_m = ratio^{m+1}; the default ratio ½ gives 2^{−(m+1)}.
AlphaSequence geometric_alpha(double ratio = 0.5);

struct ScalingResult {
    DiagonalScaling scaling;
    double delta = 0.0;  // Σ d_m d_n |E_mn|(Ω)
};

/// d_m = α_m / max{1, √|E_kl|(Ω) : 0 ≤ k, l ≤ m}.
ScalingResult scaling_weights(const AtomicSFM& E, const AlphaSequence& alpha = geometric_alpha());

/// δ = Σ d_m d_n |E_mn|(Ω) for an arbitrary scaling.
double variation_bound(const AtomicSFM& E, const DiagonalScaling& D);

/// F(ω_j) = D E(ω_j) D together with μ_j = ‖F(ω_j)‖₁.
struct TraceMeasure {
    std::size_t dim = 0;
    std::vector<std::string> labels;
    std::vector<Matrix> atoms;
    std::vector<double> mu;

    double total_variation() const;
    Matrix value(const AtomSet& X) const;
};

TraceMeasure compress(const AtomicSFM& E, const DiagonalScaling& D);

/// T(ω_j) = F(ω_j)/μ_j, or 0 on null atoms.
struct DensityFamily {
    std::vector<std::string> labels;
    std::vector<Matrix> atoms;
};

DensityFamily density(const TraceMeasure& F);

/// C_ω(φ, ψ) = ⟨D⁻¹φ|T(ω)D⁻¹ψ⟩ at atom j.
SesquiForm form_density(const DensityFamily& T, const DiagonalScaling& D, std::size_t j);

/// Ẽ(ω_j) = D F(ω_j) D⁻¹, the operator on H_D.
Matrix hd_extension(const TraceMeasure& F, const DiagonalScaling& D, std::size_t j);

}  // namespace sfmkit
