#pragma once

// Spectral W-dilations (K, F, W, J) in direct-integral form.
//
// K is the direct sum over atoms j and parts k ∈ {0,1,2,3} of blocks ℂ^{n_k(ω_j)}.
// F({ω_j}) projects onto the blocks of atom j, W multiplies block (j, k) by i^k,
// and J maps φ to the coordinates jmap[j][k]·φ. The √μ weights live inside the
// jmap rows, so K carries the plain Euclidean inner product.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sfmkit/decomposition.hpp"

namespace sfmkit {

struct Dilation {
    std::size_t dim = 0;
    std::vector<std::string> labels;
    std::vector<double> mu;
    /// blocks[j][k] is n_k(ω_j) × dim; rows are ⟨d_i^{(k)}(ω_j)|·⟩.
    std::vector<std::array<Matrix, 4>> blocks;

    std::size_t size() const { return labels.size(); }
    std::size_t block_dim(std::size_t j, std::size_t k) const {
        return static_cast<std::size_t>(blocks.at(j)[k].rows());
    }
    /// dim K.
    std::size_t space_dim() const;
    /// Offset of block (j, k) inside a K-vector.
    std::size_t offset(std::size_t j, std::size_t k) const;
    std::size_t index_of(const std::string& label) const;

    /// Throws ValidationError on inconsistent shapes.
    void validate() const;
};

/// Builds the dilation whose associated decomposition is `dec`, using the
/// frames `dec` carries or, when absent, eigenframes of each part's atoms.
Dilation build_dilation(const PositiveDecomposition& dec);
/// Explicit frames: frames[k] must realize dec.parts[k]; mu is recorded per atom.
Dilation build_dilation(const PositiveDecomposition& dec, const std::array<DkFamily, 4>& frames,
                        const std::vector<double>& mu);

Vector apply_J(const Dilation& d, const Vector& phi);
/// F(X)v: zero every block whose atom is outside X.
Vector apply_F(const Dilation& d, const AtomSet& X, const Vector& v);
/// W^power v; any integer power, reduced mod 4.
Vector apply_W(const Dilation& d, const Vector& v, int power = 1);

/// ⟨Jφ|F(X)WJψ⟩.
cplx dilation_form(const Dilation& d, const AtomSet& X, const Vector& phi, const Vector& psi);

struct DilationReport {
    /// Condition (1): max over basis pairs and atoms (singletons and Ω) of
    /// |⟨Je_m|F(X)WJe_n⟩ − E_X(e_m, e_n)|.
    double identity_residual = 0.0;
    double relative_residual = 0.0;
    bool identity_ok = true;
    /// Condition (2) holds structurally for block-diagonal W and F.
    bool commutation_ok = true;
    /// Condition (3): each block has full row rank.
    bool density_ok = true;
    std::vector<std::string> rank_deficient_blocks;

    bool passed() const { return identity_ok && commutation_ok && density_ok; }
};

DilationReport verify_dilation(const Dilation& d, const AtomicSFM& E, double tol = kDefaultTol);

/// E⁽ᵏ⁾(ω_j) = jmap[j][k]* jmap[j][k].
PositiveDecomposition associated_decomposition(const Dilation& d);

/// U restricted to block (j, k): an n' × n matrix.
struct BlockUnitary {
    std::vector<std::array<Matrix, 4>> blocks;
    double unitarity_residual = 0.0;
    double intertwining_residual = 0.0;
};

struct EquivalenceResult {
    bool equivalent = false;
    bool decompositions_agree = false;
    double decomposition_residual = 0.0;
    std::optional<BlockUnitary> U;
};

/// Equivalent iff the associated decompositions agree within tol; U is then
/// recovered blockwise by least squares on jmap₂ = U·jmap₁ and checked for
/// unitarity.
EquivalenceResult equivalent(const Dilation& d1, const Dilation& d2, double tol = kDefaultTol);

/// Applies a unitary per block: jmap[j][k] ← U[j][k]·jmap[j][k].
Dilation rotate_blocks(const Dilation& d, const std::vector<std::array<Matrix, 4>>& unitaries);

}  // namespace sfmkit
