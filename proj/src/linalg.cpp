#include "sfmkit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sfmkit/error.hpp"

namespace sfmkit {

void require_square(const Matrix& A, const char* what) {
    if (A.rows() != A.cols()) {
        throw DimensionError(std::string(what) + " is not square (" + std::to_string(A.rows()) +
                             "x" + std::to_string(A.cols()) + ")");
    }
    if (!A.allFinite()) {
        throw ValidationError(std::string(what) + " has non-finite entries");
    }
}

double entrywise_l1(const Matrix& A) {
    require_square(A);
    return A.cwiseAbs().sum();
}

namespace {

double singular_value_sum(const Matrix& A) {
    if (A.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(A);
    return svd.singularValues().sum();
}

Matrix hermitian_part(const Matrix& A) { return 0.5 * (A + A.adjoint()); }

}  // namespace

double hermitian_defect(const Matrix& A) {
    if (A.size() == 0) return 0.0;
    return (A - A.adjoint()).cwiseAbs().maxCoeff();
}

double tolerance_scale(const Matrix& A) { return std::max(1.0, singular_value_sum(A)); }

bool is_hermitian(const Matrix& A, double tol) {
    require_square(A);
    return hermitian_defect(A) <= tol * tolerance_scale(A);
}

void require_hermitian(const Matrix& A, double tol, const char* what) {
    require_square(A, what);
    const double defect = hermitian_defect(A);
    const double bound = tol * tolerance_scale(A);
    if (defect > bound) {
        throw SymmetryError(std::string(what) + " is not Hermitian: defect " +
                            std::to_string(defect) + " exceeds " + std::to_string(bound));
    }
}

double trace_norm(const Matrix& A, bool hermitian) {
    require_square(A);
    if (!hermitian) return singular_value_sum(A);
    require_hermitian(A);
    if (A.size() == 0) return 0.0;
    return jacobi_eigen(hermitian_part(A)).values.cwiseAbs().sum();
}

Vector canonical_phase(Vector v, double cutoff) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double r = std::abs(v[i]);
        if (r > cutoff) {
            v *= std::conj(v[i]) / r;
            v[i] = cplx(std::abs(v[i]), 0.0);
            break;
        }
    }
    return v;
}

bool lexicographic_less(const Vector& a, const Vector& b) {
    const Eigen::Index n = std::min(a.size(), b.size());
    for (Eigen::Index i = 0; i < n; ++i) {
        if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
        if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
    }
    return a.size() < b.size();
}

JacobiResult jacobi_eigen(const Matrix& input, int max_sweeps) {
    require_square(input);
    const Eigen::Index n = input.rows();
    Matrix a = hermitian_part(input);
    Matrix v = Matrix::Identity(n, n);
    JacobiResult out;

    const double total = a.norm();
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (Eigen::Index p = 0; p < n; ++p)
            for (Eigen::Index q = p + 1; q < n; ++q) off += std::norm(a(p, q));
        if (off == 0.0 || std::sqrt(off) <= 1e-15 * total) break;
        out.sweeps = sweep + 1;

        for (Eigen::Index p = 0; p < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double r = std::abs(a(p, q));
                if (r == 0.0) continue;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const cplx phase = a(p, q) / r;
                const double tau = (aqq - app) / (2.0 * r);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // G = diag(1, e^{-iθ}) · [[c, s], [-s, c]] on the (p, q) plane.
                const cplx gpp = c, gpq = s;
                const cplx gqp = -s * std::conj(phase), gqq = c * std::conj(phase);

                for (Eigen::Index k = 0; k < n; ++k) {
                    const cplx akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * gpp + akq * gqp;
                    a(k, q) = akp * gpq + akq * gqq;
                    const cplx vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * gpp + vkq * gqp;
                    v(k, q) = vkp * gpq + vkq * gqq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const cplx apk = a(p, k), aqk = a(q, k);
                    a(p, k) = std::conj(gpp) * apk + std::conj(gqp) * aqk;
                    a(q, k) = std::conj(gpq) * apk + std::conj(gqq) * aqk;
                }
                a(p, q) = a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
        return a(i, i).real() < a(j, j).real();
    });
    out.values.resize(n);
    out.vectors.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        out.values[i] = a(order[i], order[i]).real();
        out.vectors.col(i) = v.col(order[i]);
    }
    return out;
}

EigenPair max_modulus_eigenpair(const Matrix& A, double tol, double rank_cutoff) {
    require_hermitian(A, tol);
    const Eigen::Index n = A.rows();
    if (n == 0) throw DimensionError("max_modulus_eigenpair: empty matrix");
    if (A.isZero(0.0)) return {0.0, Vector::Unit(n, 0)};

    const double scale = tolerance_scale(A);
    const JacobiResult js = jacobi_eigen(A);
    const double tie = rank_cutoff * scale;

    double top = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) top = std::max(top, std::abs(js.values[i]));

    std::vector<Eigen::Index> cands;
    bool any_positive = false;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (std::abs(js.values[i]) >= top - tie) {
            cands.push_back(i);
            any_positive = any_positive || js.values[i] > 0.0;
        }
    }
    if (any_positive) {
        std::erase_if(cands, [&](Eigen::Index i) { return js.values[i] <= 0.0; });
    }

    EigenPair best;
    bool have = false;
    for (Eigen::Index i : cands) {
        Vector vec = canonical_phase(js.vectors.col(i).normalized(), rank_cutoff);
        if (!have || lexicographic_less(vec, best.vector)) {
            best = {js.values[i], std::move(vec)};
            have = true;
        }
    }

    const double residual = (A * best.vector - best.value * best.vector).norm();
    if (residual > tol * scale) {
        throw Error("max_modulus_eigenpair: eigen residual " + std::to_string(residual) +
                    " exceeds tolerance");
    }
    return best;
}

Matrix EigenSystem::reconstruct() const {
    const auto n = static_cast<Eigen::Index>(dim);
    Matrix out = Matrix::Zero(n, n);
    for (std::size_t k = 0; k < values.size(); ++k)
        out += values[k] * vectors[k] * vectors[k].adjoint();
    return out;
}

double EigenSystem::absolute_sum() const {
    double s = 0.0;
    for (double v : values) s += std::abs(v);
    return s;
}

EigenSystem deflate_diagonalize(const Matrix& A, double rank_cutoff, double tol) {
    require_hermitian(A, tol);
    EigenSystem out;
    out.dim = static_cast<std::size_t>(A.rows());
    const double stop = rank_cutoff * tolerance_scale(A);

    Matrix residual = hermitian_part(A);
    for (Eigen::Index k = 0; k < A.rows(); ++k) {
        EigenPair p = max_modulus_eigenpair(residual, tol, rank_cutoff);
        if (std::abs(p.value) <= stop) break;
        residual -= p.value * p.vector * p.vector.adjoint();
        out.values.push_back(p.value);
        out.vectors.push_back(std::move(p.vector));
    }
    return out;
}

Matrix gram_sum(const std::vector<Vector>& vectors, std::size_t dim) {
    const auto n = static_cast<Eigen::Index>(dim);
    Matrix out = Matrix::Zero(n, n);
    for (const auto& v : vectors) {
        if (v.size() != n) throw DimensionError("gram_sum: vector length mismatch");
        out += v * v.adjoint();
    }
    return out;
}

Matrix SignedFrame::reconstruct() const { return gram_sum(positive, dim) - gram_sum(negative, dim); }

double SignedFrame::squared_norm_sum() const {
    double s = 0.0;
    for (const auto& g : positive) s += g.squaredNorm();
    for (const auto& g : negative) s += g.squaredNorm();
    return s;
}

SignedFrame signed_frame(const EigenSystem& eig, double rank_cutoff) {
    SignedFrame frame;
    frame.dim = eig.dim;
    const double cutoff = rank_cutoff * std::max(1.0, eig.absolute_sum());
    for (std::size_t k = 0; k < eig.values.size(); ++k) {
        const double lambda = eig.values[k];
        if (lambda > cutoff)
            frame.positive.push_back(std::sqrt(lambda) * eig.vectors[k]);
        else if (lambda < -cutoff)
            frame.negative.push_back(std::sqrt(-lambda) * eig.vectors[k]);
    }
    return frame;
}

JordanParts jordan_split(const SignedFrame& frame) {
    return {gram_sum(frame.positive, frame.dim), gram_sum(frame.negative, frame.dim)};
}

double min_eigenvalue(const Matrix& A) {
    if (A.size() == 0) return 0.0;
    return jacobi_eigen(A).values[0];
}

}  // namespace sfmkit
