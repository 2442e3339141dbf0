#include "sfmkit/dilation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sfmkit/error.hpp"

namespace sfmkit {

namespace {

const std::array<cplx, 4> kUnitPowers{cplx(1.0, 0.0), cplx(0.0, 1.0), cplx(-1.0, 0.0), cplx(0.0, -1.0)};

Matrix rows_from(const std::vector<Vector>& vectors, std::size_t dim) {
    Matrix out(static_cast<Eigen::Index>(vectors.size()), static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (static_cast<std::size_t>(vectors[i].size()) != dim)
            throw ValidationError("frame vector length does not match the dimension");
        out.row(static_cast<Eigen::Index>(i)) = vectors[i].adjoint();
    }
    return out;
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

std::size_t Dilation::space_dim() const {
    std::size_t s = 0;
    for (const auto& b : blocks)
        for (const auto& m : b) s += static_cast<std::size_t>(m.rows());
    return s;
}

std::size_t Dilation::offset(std::size_t j, std::size_t k) const {
    std::size_t s = 0;
    for (std::size_t jj = 0; jj < blocks.size(); ++jj)
        for (std::size_t kk = 0; kk < 4; ++kk) {
            if (jj == j && kk == k) return s;
            s += static_cast<std::size_t>(blocks[jj][kk].rows());
        }
    throw DimensionError("dilation block index out of range");
}

std::size_t Dilation::index_of(const std::string& label) const {
    for (std::size_t j = 0; j < labels.size(); ++j)
        if (labels[j] == label) return j;
    throw LookupError("unknown atom label '" + label + "'");
}

void Dilation::validate() const {
    if (dim == 0) throw ValidationError("dilation dimension must be positive");
    if (labels.empty()) throw ValidationError("dilation needs at least one atom");
    if (mu.size() != labels.size() || blocks.size() != labels.size())
        throw ValidationError("dilation labels, mu and blocks have different lengths");
    for (std::size_t j = 0; j < blocks.size(); ++j) {
        if (!(mu[j] >= 0.0) || !std::isfinite(mu[j])) throw ValidationError("dilation mu must be finite and >= 0");
        for (const auto& m : blocks[j]) {
            if (m.rows() > 0 && static_cast<std::size_t>(m.cols()) != dim)
                throw ValidationError("dilation block of atom '" + labels[j] + "' has wrong column count");
            if (!m.allFinite()) throw ValidationError("dilation block has non-finite entries");
        }
    }
}

Dilation build_dilation(const PositiveDecomposition& dec, const std::array<DkFamily, 4>& frames,
                        const std::vector<double>& mu) {
    if (mu.size() != dec.size()) throw ValidationError("build_dilation: mu length does not match atoms");
    Dilation d;
    d.dim = dec.dim();
    d.labels = dec.parts[0].labels();
    d.mu = mu;
    for (std::size_t j = 0; j < dec.size(); ++j) {
        std::array<Matrix, 4> blk;
        for (std::size_t k = 0; k < 4; ++k) {
            const DkFamily& fam = frames[k];
            if (fam.size() != dec.size() || fam.dim != dec.dim())
                throw ValidationError("build_dilation: frame family shape does not match decomposition");
            if (!fam.negative.empty() && !fam.negative[j].empty())
                throw ValidationError("build_dilation: positive part frames carry negative vectors");
            blk[k] = rows_from(fam.positive[j], d.dim);
        }
        d.blocks.push_back(std::move(blk));
    }
    d.validate();
    return d;
}

Dilation build_dilation(const PositiveDecomposition& dec) {
    std::vector<double> mu(dec.size(), 0.0);
    for (std::size_t k = 0; k < 4; ++k)
        for (std::size_t j = 0; j < dec.size(); ++j) mu[j] += dec.parts[k].atom(j).form.matrix().trace().real();

    if (dec.frames) return build_dilation(dec, *dec.frames, mu);

    std::array<DkFamily, 4> frames;
    for (std::size_t k = 0; k < 4; ++k) {
        DkFamily& fam = frames[k];
        fam.dim = dec.dim();
        fam.labels = dec.parts[k].labels();
        fam.scaling.assign(dec.dim(), 1.0);
        for (const auto& a : dec.parts[k].atoms()) {
            const Matrix& m = a.form.matrix();
            SignedFrame f = signed_frame(deflate_diagonalize(0.5 * (m + m.adjoint())));
            fam.positive.push_back(std::move(f.positive));
            fam.negative.emplace_back();
        }
    }
    return build_dilation(dec, frames, mu);
}

Vector apply_J(const Dilation& d, const Vector& phi) {
    if (static_cast<std::size_t>(phi.size()) != d.dim) throw DimensionError("apply_J: vector length mismatch");
    Vector out(static_cast<Eigen::Index>(d.space_dim()));
    Eigen::Index pos = 0;
    for (const auto& b : d.blocks)
        for (const auto& m : b) {
            if (m.rows() == 0) continue;
            out.segment(pos, m.rows()) = m * phi;
            pos += m.rows();
        }
    return out;
}

Vector apply_F(const Dilation& d, const AtomSet& X, const Vector& v) {
    if (static_cast<std::size_t>(v.size()) != d.space_dim()) throw DimensionError("apply_F: vector length mismatch");
    std::vector<bool> keep(d.size(), false);
    for (std::size_t j : X) {
        if (j >= d.size()) throw LookupError("apply_F: atom index out of range");
        keep[j] = true;
    }
    Vector out = v;
    for (std::size_t j = 0; j < d.size(); ++j) {
        if (keep[j]) continue;
        for (std::size_t k = 0; k < 4; ++k) {
            const auto n = static_cast<Eigen::Index>(d.block_dim(j, k));
            if (n > 0) out.segment(static_cast<Eigen::Index>(d.offset(j, k)), n).setZero();
        }
    }
    return out;
}

Vector apply_W(const Dilation& d, const Vector& v, int power) {
    if (static_cast<std::size_t>(v.size()) != d.space_dim()) throw DimensionError("apply_W: vector length mismatch");
    const int p = ((power % 4) + 4) % 4;
    Vector out = v;
    for (std::size_t j = 0; j < d.size(); ++j)
        for (std::size_t k = 0; k < 4; ++k) {
            const auto n = static_cast<Eigen::Index>(d.block_dim(j, k));
            if (n == 0) continue;
            const auto e = static_cast<std::size_t>((static_cast<int>(k) * p) % 4);
            out.segment(static_cast<Eigen::Index>(d.offset(j, k)), n) *= kUnitPowers[e];
        }
    return out;
}

cplx dilation_form(const Dilation& d, const AtomSet& X, const Vector& phi, const Vector& psi) {
    return apply_J(d, phi).dot(apply_F(d, X, apply_W(d, apply_J(d, psi), 1)));
}

DilationReport verify_dilation(const Dilation& d, const AtomicSFM& E, double tol) {
    d.validate();
    if (d.dim != E.dim() || d.size() != E.size()) throw DimensionError("verify_dilation: shape mismatch");
    for (std::size_t j = 0; j < E.size(); ++j)
        if (d.labels[j] != E.atom(j).label) throw DimensionError("verify_dilation: atom labels differ");

    DilationReport rep;
    const auto n = static_cast<Eigen::Index>(d.dim);
    double scale = 0.0;
    for (const auto& a : E.atoms()) scale = std::max(scale, max_abs(a.form.matrix()));

    std::vector<Vector> J(static_cast<std::size_t>(n)), WJ(static_cast<std::size_t>(n));
    for (Eigen::Index m = 0; m < n; ++m) {
        J[static_cast<std::size_t>(m)] = apply_J(d, Vector::Unit(n, m));
        WJ[static_cast<std::size_t>(m)] = apply_W(d, J[static_cast<std::size_t>(m)], 1);
    }

    std::vector<AtomSet> sets;
    for (std::size_t j = 0; j < d.size(); ++j) sets.push_back({j});
    sets.push_back(E.all());
    for (const auto& X : sets) {
        const Matrix target = E.value(X);
        for (Eigen::Index m = 0; m < n; ++m)
            for (Eigen::Index k = 0; k < n; ++k) {
                const cplx got = J[static_cast<std::size_t>(m)].dot(apply_F(d, X, WJ[static_cast<std::size_t>(k)]));
                rep.identity_residual = std::max(rep.identity_residual, std::abs(got - target(m, k)));
            }
    }
    rep.relative_residual = rep.identity_residual / (1.0 + scale);
    rep.identity_ok = rep.identity_residual <= tol * (1.0 + scale);

    // W and every F(X) are block-diagonal on the same blocks.
    rep.commutation_ok = true;

    for (std::size_t j = 0; j < d.size(); ++j)
        for (std::size_t k = 0; k < 4; ++k) {
            const Matrix& m = d.blocks[j][k];
            if (m.rows() == 0) continue;
            bool full = m.rows() <= m.cols();
            if (full) {
                Eigen::JacobiSVD<Matrix> svd(m);
                const auto& sv = svd.singularValues();
                const double cut = 100.0 * static_cast<double>(std::max(m.rows(), m.cols())) *
                                   std::numeric_limits<double>::epsilon() * sv[0];
                full = sv[sv.size() - 1] > cut;
            }
            if (!full) {
                rep.density_ok = false;
                rep.rank_deficient_blocks.push_back(d.labels[j] + "/" + std::to_string(k));
            }
        }
    return rep;
}

PositiveDecomposition associated_decomposition(const Dilation& d) {
    d.validate();
    const auto n = static_cast<Eigen::Index>(d.dim);
    std::array<std::vector<Atom>, 4> atoms;
    std::array<DkFamily, 4> frames;
    for (std::size_t k = 0; k < 4; ++k) {
        frames[k].dim = d.dim;
        frames[k].labels = d.labels;
        frames[k].scaling.assign(d.dim, 1.0);
    }
    for (std::size_t j = 0; j < d.size(); ++j)
        for (std::size_t k = 0; k < 4; ++k) {
            const Matrix& m = d.blocks[j][k];
            Matrix g = m.rows() == 0 ? Matrix::Zero(n, n) : Matrix(m.adjoint() * m);
            atoms[k].push_back({d.labels[j], SesquiForm(std::move(g))});
            std::vector<Vector> rows;
            for (Eigen::Index r = 0; r < m.rows(); ++r) rows.push_back(m.row(r).adjoint());
            frames[k].positive.push_back(std::move(rows));
            frames[k].negative.emplace_back();
        }
    PositiveDecomposition dec{{AtomicSFM(d.dim, std::move(atoms[0])), AtomicSFM(d.dim, std::move(atoms[1])),
                               AtomicSFM(d.dim, std::move(atoms[2])), AtomicSFM(d.dim, std::move(atoms[3]))},
                              std::nullopt,
                              std::nullopt,
                              std::move(frames)};
    return dec;
}

EquivalenceResult equivalent(const Dilation& d1, const Dilation& d2, double tol) {
    d1.validate();
    d2.validate();
    if (d1.dim != d2.dim || d1.labels != d2.labels) throw DimensionError("equivalent: incompatible dilations");

    EquivalenceResult res;
    const PositiveDecomposition a = associated_decomposition(d1);
    const PositiveDecomposition b = associated_decomposition(d2);
    double scale = 0.0;
    for (std::size_t k = 0; k < 4; ++k)
        for (std::size_t j = 0; j < d1.size(); ++j) {
            const Matrix& x = a.parts[k].atom(j).form.matrix();
            const Matrix& y = b.parts[k].atom(j).form.matrix();
            scale = std::max({scale, max_abs(x), max_abs(y)});
            res.decomposition_residual = std::max(res.decomposition_residual, max_abs(x - y));
        }
    res.decompositions_agree = res.decomposition_residual <= tol * (1.0 + scale);
    if (!res.decompositions_agree) return res;

    BlockUnitary U;
    for (std::size_t j = 0; j < d1.size(); ++j) {
        std::array<Matrix, 4> blk;
        for (std::size_t k = 0; k < 4; ++k) {
            const Matrix& j1 = d1.blocks[j][k];
            const Matrix& j2 = d2.blocks[j][k];
            if (j1.rows() != j2.rows()) {
                U.unitarity_residual = std::numeric_limits<double>::infinity();
                blk[k] = Matrix::Zero(j2.rows(), j1.rows());
                continue;
            }
            if (j1.rows() == 0) {
                blk[k] = Matrix(0, 0);
                continue;
            }
            // U·J1 = J2  ⇔  J1ᵀ·Uᵀ = J2ᵀ.
            Eigen::JacobiSVD<Matrix> svd(j1.transpose(), Eigen::ComputeThinU | Eigen::ComputeThinV);
            Matrix u = svd.solve(j2.transpose()).transpose();
            const Matrix id = Matrix::Identity(u.rows(), u.cols());
            U.unitarity_residual =
                std::max({U.unitarity_residual, max_abs(u.adjoint() * u - id), max_abs(u * u.adjoint() - id)});
            U.intertwining_residual = std::max(U.intertwining_residual, max_abs(u * j1 - j2));
            blk[k] = std::move(u);
        }
        U.blocks.push_back(std::move(blk));
    }
    double jscale = 0.0;
    for (const auto& b : d1.blocks)
        for (const auto& m : b) jscale = std::max(jscale, max_abs(m));
    res.equivalent = U.unitarity_residual <= tol && U.intertwining_residual <= tol * (1.0 + jscale);
    res.U = std::move(U);
    return res;
}

Dilation rotate_blocks(const Dilation& d, const std::vector<std::array<Matrix, 4>>& unitaries) {
    if (unitaries.size() != d.size()) throw DimensionError("rotate_blocks: one unitary set per atom required");
    Dilation out = d;
    for (std::size_t j = 0; j < d.size(); ++j)
        for (std::size_t k = 0; k < 4; ++k) {
            const Matrix& u = unitaries[j][k];
            if (u.rows() != d.blocks[j][k].rows() || u.cols() != d.blocks[j][k].rows())
                throw DimensionError("rotate_blocks: unitary size does not match block");
            if (u.rows() > 0) out.blocks[j][k] = u * d.blocks[j][k];
        }
    return out;
}

}  // namespace sfmkit
