#include "sfmkit/random.hpp"

#include <cmath>

#include "sfmkit/error.hpp"

namespace sfmkit {

Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            const double re = normal(rng);
            const double im = normal(rng);
            m(r, c) = cplx(re, im);
        }
    return m;
}

Matrix random_hermitian(Rng& rng, std::size_t dim) {
    const Matrix g = random_matrix(rng, dim, dim);
    Matrix h = 0.5 * (g + g.adjoint());
    for (Eigen::Index m = 0; m < h.rows(); ++m) h(m, m) = h(m, m).real();
    return h;
}

Matrix random_psd(Rng& rng, std::size_t dim, std::size_t rank) {
    const Matrix g = random_matrix(rng, dim, rank);
    const Matrix p = g * g.adjoint();
    return 0.5 * (p + p.adjoint());
}

Matrix random_unitary(Rng& rng, std::size_t dim) {
    const Matrix g = random_matrix(rng, dim, dim);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < q.cols(); ++k) {
        const cplx d = r(k, k);
        if (std::abs(d) > 0.0) q.col(k) *= d / std::abs(d);
    }
    return q;
}

Vector random_unit_vector(Rng& rng, std::size_t dim) {
    Vector v = random_matrix(rng, dim, 1).col(0);
    return v / v.norm();
}

MeasureKind parse_measure_kind(const std::string& name) {
    if (name == "general") return MeasureKind::General;
    if (name == "symmetric") return MeasureKind::Symmetric;
    if (name == "positive") return MeasureKind::Positive;
    throw ValidationError("unknown measure kind '" + name + "' (general, symmetric, positive)");
}

AtomicSFM random_sfm(Rng& rng, std::size_t dim, std::size_t atoms, MeasureKind kind) {
    std::vector<Atom> out;
    for (std::size_t j = 0; j < atoms; ++j) {
        Matrix m;
        switch (kind) {
            case MeasureKind::General: m = random_matrix(rng, dim, dim); break;
            case MeasureKind::Symmetric: m = random_hermitian(rng, dim); break;
            case MeasureKind::Positive: m = random_psd(rng, dim, dim); break;
        }
        out.push_back({"w" + std::to_string(j), SesquiForm(std::move(m))});
    }
    return AtomicSFM(dim, std::move(out));
}

}  // namespace sfmkit
