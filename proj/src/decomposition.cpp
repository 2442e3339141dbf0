#include "sfmkit/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sfmkit/error.hpp"

namespace sfmkit {

Matrix DkFamily::reconstruct(std::size_t j) const {
    return gram_sum(positive.at(j), dim) - gram_sum(negative.at(j), dim);
}

DkFamily dk_vectors(const DensityFamily& T, const std::vector<double>& mu, const DiagonalScaling& D,
                    double rank_cutoff) {
    if (T.atoms.size() != mu.size()) throw DimensionError("dk_vectors: density and mu lengths differ");
    DkFamily out;
    out.dim = D.dim();
    out.labels = T.labels;
    out.scaling = D.weights();
    for (std::size_t j = 0; j < T.atoms.size(); ++j) {
        const Matrix& t = T.atoms[j];
        if (static_cast<std::size_t>(t.rows()) != D.dim()) throw DimensionError("dk_vectors: dimension mismatch");
        require_hermitian(t, kDefaultTol, "density atom");

        const SignedFrame frame = signed_frame(deflate_diagonalize(t, rank_cutoff), rank_cutoff);
        const double root_mu = std::sqrt(mu[j]);
        std::vector<Vector> pos, neg;
        for (const auto& g : frame.positive) pos.push_back(D.apply_inverse(root_mu * g));
        for (const auto& g : frame.negative) neg.push_back(D.apply_inverse(root_mu * g));
        out.positive.push_back(std::move(pos));
        out.negative.push_back(std::move(neg));
    }
    return out;
}

namespace {

void require_symmetric(const AtomicSFM& E, double tol) {
    for (const auto& a : E.atoms())
        require_hermitian(a.form.matrix(), tol, ("atom '" + a.label + "'").c_str());
}

AtomicSFM gram_measure(const DkFamily& fam, const std::vector<std::vector<Vector>>& lists) {
    std::vector<Atom> atoms;
    for (std::size_t j = 0; j < fam.size(); ++j)
        atoms.push_back({fam.labels[j], SesquiForm(gram_sum(lists[j], fam.dim))});
    return AtomicSFM(fam.dim, std::move(atoms));
}

/// A family holding `lists` as its positive vectors only.
DkFamily positive_family(const DkFamily& src, std::vector<std::vector<Vector>> lists) {
    DkFamily out;
    out.dim = src.dim;
    out.labels = src.labels;
    out.scaling = src.scaling;
    out.positive = std::move(lists);
    out.negative.assign(out.labels.size(), {});
    return out;
}

}  // namespace

SymmetricSplit split_symmetric_sfm(const AtomicSFM& E, const DiagonalScaling& D, double tol) {
    require_symmetric(E, tol);
    const TraceMeasure F = compress(E, D);
    DkFamily frames = dk_vectors(density(F), F.mu, D);
    AtomicSFM plus = gram_measure(frames, frames.positive);
    AtomicSFM minus = gram_measure(frames, frames.negative);
    Provenance prov{D.weights(), F.mu, variation_bound(E, D)};
    return {std::move(plus), std::move(minus), std::move(frames), std::move(prov)};
}

SymmetricSplit split_symmetric_sfm(const AtomicSFM& E, const AlphaSequence& alpha, double tol) {
    require_symmetric(E, tol);
    return split_symmetric_sfm(E, scaling_weights(E, alpha).scaling, tol);
}

AtomicSFM PositiveDecomposition::reconstruct() const {
    const cplx i(0.0, 1.0);
    const std::array<cplx, 4> unit{cplx(1.0), i, cplx(-1.0), -i};
    std::vector<Atom> atoms;
    for (std::size_t j = 0; j < size(); ++j) {
        Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dim()), static_cast<Eigen::Index>(dim()));
        for (std::size_t k = 0; k < 4; ++k) m += unit[k] * parts[k].atom(j).form.matrix();
        atoms.push_back({parts[0].atom(j).label, SesquiForm(std::move(m))});
    }
    return AtomicSFM(dim(), std::move(atoms));
}

PositiveDecomposition decompose(const AtomicSFM& E, const AlphaSequence& alpha, double tol) {
    auto [real, imag] = symmetric_split(E);
    SymmetricSplit a = split_symmetric_sfm(real, alpha, tol);
    SymmetricSplit b = split_symmetric_sfm(imag, alpha, tol);

    std::array<DkFamily, 4> frames{
        positive_family(a.frames, a.frames.positive), positive_family(b.frames, b.frames.positive),
        positive_family(a.frames, a.frames.negative), positive_family(b.frames, b.frames.negative)};

    PositiveDecomposition dec{{std::move(a.plus), std::move(b.plus), std::move(a.minus), std::move(b.minus)},
                              std::move(a.provenance),
                              std::move(b.provenance),
                              std::move(frames)};
    return dec;
}

namespace {

void require_same_shape(const AtomicSFM& E, const AtomicSFM& other, const char* what) {
    if (E.dim() != other.dim() || E.size() != other.size())
        throw DimensionError(std::string(what) + ": shape does not match the measure");
    for (std::size_t j = 0; j < E.size(); ++j)
        if (E.atom(j).label != other.atom(j).label)
            throw DimensionError(std::string(what) + ": atom labels do not match the measure");
}

double max_entry(const AtomicSFM& E) {
    double s = 0.0;
    for (const auto& a : E.atoms())
        if (a.form.matrix().size() > 0) s = std::max(s, a.form.matrix().cwiseAbs().maxCoeff());
    return s;
}

}  // namespace

DecompositionReport verify_decomposition(const AtomicSFM& E, const PositiveDecomposition& dec, double tol) {
    for (const auto& p : dec.parts) require_same_shape(E, p, "verify_decomposition");

    DecompositionReport rep;
    rep.scale = max_entry(E);
    for (const auto& p : dec.parts) rep.scale = std::max(rep.scale, max_entry(p));
    const double bound = tol * (1.0 + rep.scale);

    for (std::size_t k = 0; k < 4; ++k) {
        for (const auto& a : dec.parts[k].atoms()) {
            const Matrix& m = a.form.matrix();
            const double lo = min_eigenvalue(0.5 * (m + m.adjoint()));
            rep.min_eigenvalue[k].push_back(lo);
            if (lo < -bound || hermitian_defect(m) > bound) rep.positive = false;
        }
    }

    const AtomicSFM sum = dec.reconstruct();
    for (std::size_t j = 0; j < E.size(); ++j) {
        const double r = (E.atom(j).form.matrix() - sum.atom(j).form.matrix()).cwiseAbs().maxCoeff();
        rep.residual = std::max(rep.residual, r);
    }
    rep.relative_residual = rep.residual / (1.0 + rep.scale);
    rep.reconstructs = rep.residual <= bound;

    Matrix total = Matrix::Zero(static_cast<Eigen::Index>(E.dim()), static_cast<Eigen::Index>(E.dim()));
    for (const auto& p : dec.parts) total += p.total();
    rep.injectivity = total.diagonal().real().minCoeff();
    return rep;
}

AtomicSFM uniform_semispectral(const AtomicSFM& like) {
    const auto n = static_cast<Eigen::Index>(like.dim());
    const double w = 1.0 / static_cast<double>(like.size());
    std::vector<Atom> atoms;
    for (const auto& a : like.atoms()) atoms.push_back({a.label, SesquiForm(w * Matrix::Identity(n, n))});
    return AtomicSFM(like.dim(), std::move(atoms));
}

PositiveDecomposition strictify(const AtomicSFM& E, double eps, const AtomicSFM& E0, const AlphaSequence& alpha,
                                double tol) {
    if (!(eps > 0.0) || !std::isfinite(eps)) throw ValidationError("strictify: eps must be positive");
    require_same_shape(E, E0, "strictify");
    if (!E0.is_positive(tol)) throw ValidationError("strictify: E0 is not positive");
    const auto n = static_cast<Eigen::Index>(E.dim());
    if ((E0.total() - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() > tol)
        throw ValidationError("strictify: E0 is not normalized, E0(Omega) != I");

    std::vector<Atom> shifted;
    for (std::size_t j = 0; j < E.size(); ++j)
        shifted.push_back({E.atom(j).label,
                           SesquiForm(E.atom(j).form.matrix() + eps * E0.atom(j).form.matrix())});
    PositiveDecomposition dec = decompose(AtomicSFM(E.dim(), std::move(shifted)), alpha, tol);

    std::vector<Atom> negative_real;
    for (std::size_t j = 0; j < E.size(); ++j)
        negative_real.push_back({E.atom(j).label, SesquiForm(dec.parts[2].atom(j).form.matrix() +
                                                             eps * E0.atom(j).form.matrix())});
    dec.parts[2] = AtomicSFM(E.dim(), std::move(negative_real));

    if (dec.frames) {
        // Re-frame the shifted part from its own spectrum.
        DkFamily& fam = (*dec.frames)[2];
        for (std::size_t j = 0; j < E.size(); ++j) {
            const Matrix& m = dec.parts[2].atom(j).form.matrix();
            fam.positive[j] = signed_frame(deflate_diagonalize(0.5 * (m + m.adjoint()))).positive;
        }
    }
    return dec;
}

PositiveDecomposition strictify(const AtomicSFM& E, double eps) {
    return strictify(E, eps, uniform_semispectral(E));
}

}  // namespace sfmkit
