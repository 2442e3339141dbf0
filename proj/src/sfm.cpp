#include "sfmkit/sfm.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>

#include "sfmkit/error.hpp"

namespace sfmkit {

SesquiForm::SesquiForm(Matrix m) : m_(std::move(m)) { require_square(m_, "sesquilinear form"); }

SesquiForm SesquiForm::zero(std::size_t dim) {
    const auto n = static_cast<Eigen::Index>(dim);
    return SesquiForm(Matrix::Zero(n, n));
}

cplx SesquiForm::operator()(const Vector& phi, const Vector& psi) const {
    if (phi.size() != m_.rows() || psi.size() != m_.rows())
        throw DimensionError("sesquilinear form: vector length mismatch");
    return phi.dot(m_ * psi);  // Eigen's dot conjugates the left operand
}

bool SesquiForm::is_positive(double tol) const {
    if (!is_symmetric(tol)) return false;
    return min_eigenvalue(m_) >= -tol * tolerance_scale(m_);
}

SesquiForm operator+(const SesquiForm& a, const SesquiForm& b) {
    if (a.dim() != b.dim()) throw DimensionError("form sum: dimension mismatch");
    return SesquiForm(a.matrix() + b.matrix());
}

SesquiForm operator-(const SesquiForm& a, const SesquiForm& b) {
    if (a.dim() != b.dim()) throw DimensionError("form difference: dimension mismatch");
    return SesquiForm(a.matrix() - b.matrix());
}

SesquiForm operator*(cplx s, const SesquiForm& a) { return SesquiForm(s * a.matrix()); }

AtomicSFM::AtomicSFM(std::size_t dim, std::vector<Atom> atoms) : dim_(dim), atoms_(std::move(atoms)) {
    if (dim_ == 0) throw DimensionError("measure dimension must be positive");
    if (atoms_.empty()) throw ValidationError("measure needs at least one atom");
    std::unordered_set<std::string> seen;
    for (const auto& a : atoms_) {
        if (!seen.insert(a.label).second) throw ValidationError("duplicate atom label '" + a.label + "'");
        if (a.form.dim() != dim_)
            throw DimensionError("atom '" + a.label + "' has dimension " + std::to_string(a.form.dim()) +
                                 ", expected " + std::to_string(dim_));
    }
}

std::vector<std::string> AtomicSFM::labels() const {
    std::vector<std::string> out;
    out.reserve(atoms_.size());
    for (const auto& a : atoms_) out.push_back(a.label);
    return out;
}

std::size_t AtomicSFM::index_of(const std::string& label) const {
    for (std::size_t j = 0; j < atoms_.size(); ++j)
        if (atoms_[j].label == label) return j;
    throw LookupError("unknown atom label '" + label + "'");
}

AtomSet AtomicSFM::resolve(std::span<const std::string> labels) const {
    AtomSet out;
    out.reserve(labels.size());
    for (const auto& l : labels) out.push_back(index_of(l));
    return out;
}

AtomSet AtomicSFM::all() const {
    AtomSet out(atoms_.size());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = j;
    return out;
}

Matrix AtomicSFM::value(const AtomSet& X) const {
    const auto n = static_cast<Eigen::Index>(dim_);
    Matrix out = Matrix::Zero(n, n);
    std::vector<bool> used(atoms_.size(), false);
    for (std::size_t j : X) {
        if (j >= atoms_.size()) throw LookupError("atom index " + std::to_string(j) + " out of range");
        if (used[j]) continue;
        used[j] = true;
        out += atoms_[j].form.matrix();
    }
    return out;
}

bool AtomicSFM::is_symmetric(double tol) const {
    return std::all_of(atoms_.begin(), atoms_.end(), [&](const Atom& a) { return a.form.is_symmetric(tol); });
}

bool AtomicSFM::is_positive(double tol) const {
    return std::all_of(atoms_.begin(), atoms_.end(), [&](const Atom& a) { return a.form.is_positive(tol); });
}

AtomicSFM AtomicSFM::map(const std::function<Matrix(const Matrix&)>& f) const {
    std::vector<Atom> out;
    out.reserve(atoms_.size());
    for (const auto& a : atoms_) out.push_back({a.label, SesquiForm(f(a.form.matrix()))});
    return AtomicSFM(dim_, std::move(out));
}

cplx evaluate(const AtomicSFM& E, const AtomSet& X, const Vector& phi, const Vector& psi) {
    return SesquiForm(E.value(X))(phi, psi);
}

cplx evaluate(const AtomicSFM& E, std::span<const std::string> labels, const Vector& phi,
              const Vector& psi) {
    return evaluate(E, E.resolve(labels), phi, psi);
}

SymmetricParts symmetric_split(const SesquiForm& phi) {
    const Matrix& m = phi.matrix();
    const cplx i(0.0, 1.0);
    return {SesquiForm(0.5 * (m + m.adjoint())), SesquiForm(0.5 * (i * m.adjoint() - i * m))};
}

std::pair<AtomicSFM, AtomicSFM> symmetric_split(const AtomicSFM& E) {
    return {E.map([](const Matrix& m) { return symmetric_split(SesquiForm(m)).real.matrix(); }),
            E.map([](const Matrix& m) { return symmetric_split(SesquiForm(m)).imag.matrix(); })};
}

double entry_total_variation(const AtomicSFM& E, std::size_t m, std::size_t n) {
    if (m >= E.dim() || n >= E.dim()) throw DimensionError("entry index out of range");
    const auto mi = static_cast<Eigen::Index>(m), ni = static_cast<Eigen::Index>(n);
    double s = 0.0;
    for (const auto& a : E.atoms()) s += std::abs(a.form.matrix()(mi, ni));
    return s;
}

DiagonalScaling::DiagonalScaling(std::vector<double> weights) : w_(std::move(weights)) {
    if (w_.empty()) throw DimensionError("scaling needs at least one weight");
    for (double d : w_)
        if (!(d > 0.0) || !std::isfinite(d)) throw ValidationError("scaling weights must be finite and positive");
}

Vector DiagonalScaling::apply(const Vector& v) const {
    if (static_cast<std::size_t>(v.size()) != w_.size()) throw DimensionError("scaling: length mismatch");
    Vector out = v;
    for (Eigen::Index m = 0; m < v.size(); ++m) out[m] *= w_[static_cast<std::size_t>(m)];
    return out;
}

Vector DiagonalScaling::apply_inverse(const Vector& v) const {
    if (static_cast<std::size_t>(v.size()) != w_.size()) throw DimensionError("scaling: length mismatch");
    Vector out = v;
    for (Eigen::Index m = 0; m < v.size(); ++m) out[m] /= w_[static_cast<std::size_t>(m)];
    return out;
}

Matrix DiagonalScaling::congruence(const Matrix& a) const {
    if (static_cast<std::size_t>(a.rows()) != w_.size()) throw DimensionError("scaling: dimension mismatch");
    Matrix out = a;
    for (Eigen::Index m = 0; m < a.rows(); ++m)
        for (Eigen::Index n = 0; n < a.cols(); ++n)
            out(m, n) *= w_[static_cast<std::size_t>(m)] * w_[static_cast<std::size_t>(n)];
    return out;
}

Matrix DiagonalScaling::inverse_congruence(const Matrix& a) const {
    if (static_cast<std::size_t>(a.rows()) != w_.size()) throw DimensionError("scaling: dimension mismatch");
    Matrix out = a;
    for (Eigen::Index m = 0; m < a.rows(); ++m)
        for (Eigen::Index n = 0; n < a.cols(); ++n)
            out(m, n) /= w_[static_cast<std::size_t>(m)] * w_[static_cast<std::size_t>(n)];
    return out;
}

AlphaSequence geometric_alpha(double ratio) {
    if (!(ratio > 0.0 && ratio < 1.0)) throw ValidationError("alpha ratio must lie in (0, 1)");
    return [ratio](std::size_t m) { return std::pow(ratio, static_cast<double>(m + 1)); };
}

ScalingResult scaling_weights(const AtomicSFM& E, const AlphaSequence& alpha) {
    const std::size_t n = E.dim();
    std::vector<double> d(n);
    double running = 1.0;
    for (std::size_t m = 0; m < n; ++m) {
        // Extend the max over the k, l ≤ m square by its new row and column.
        for (std::size_t k = 0; k <= m; ++k) {
            running = std::max(running, std::sqrt(entry_total_variation(E, k, m)));
            running = std::max(running, std::sqrt(entry_total_variation(E, m, k)));
        }
        const double a = alpha(m);
        if (!(a > 0.0) || !std::isfinite(a)) throw ValidationError("alpha sequence must be positive");
        d[m] = a / running;
    }
    DiagonalScaling D(std::move(d));
    const double delta = variation_bound(E, D);
    return {std::move(D), delta};
}

double variation_bound(const AtomicSFM& E, const DiagonalScaling& D) {
    if (D.dim() != E.dim()) throw DimensionError("scaling dimension does not match measure");
    double delta = 0.0;
    for (std::size_t m = 0; m < E.dim(); ++m)
        for (std::size_t n = 0; n < E.dim(); ++n) delta += D[m] * D[n] * entry_total_variation(E, m, n);
    return delta;
}

double TraceMeasure::total_variation() const {
    double s = 0.0;
    for (double v : mu) s += v;
    return s;
}

Matrix TraceMeasure::value(const AtomSet& X) const {
    const auto n = static_cast<Eigen::Index>(dim);
    Matrix out = Matrix::Zero(n, n);
    std::vector<bool> used(atoms.size(), false);
    for (std::size_t j : X) {
        if (j >= atoms.size()) throw LookupError("atom index out of range");
        if (!used[j]) out += atoms[j];
        used[j] = true;
    }
    return out;
}

TraceMeasure compress(const AtomicSFM& E, const DiagonalScaling& D) {
    if (D.dim() != E.dim()) throw DimensionError("scaling dimension does not match measure");
    TraceMeasure F;
    F.dim = E.dim();
    F.labels = E.labels();
    for (const auto& a : E.atoms()) {
        Matrix f = D.congruence(a.form.matrix());
        F.mu.push_back(trace_norm(f, is_hermitian(f)));
        F.atoms.push_back(std::move(f));
    }
    return F;
}

DensityFamily density(const TraceMeasure& F) {
    DensityFamily T;
    T.labels = F.labels;
    const auto n = static_cast<Eigen::Index>(F.dim);
    for (std::size_t j = 0; j < F.atoms.size(); ++j) {
        if (F.mu[j] > 0.0)
            T.atoms.push_back(F.atoms[j] / F.mu[j]);
        else
            T.atoms.push_back(Matrix::Zero(n, n));
    }
    return T;
}

SesquiForm form_density(const DensityFamily& T, const DiagonalScaling& D, std::size_t j) {
    if (j >= T.atoms.size()) throw LookupError("atom index out of range");
    return SesquiForm(D.inverse_congruence(T.atoms[j]));
}

Matrix hd_extension(const TraceMeasure& F, const DiagonalScaling& D, std::size_t j) {
    if (j >= F.atoms.size()) throw LookupError("atom index out of range");
    if (D.dim() != F.dim) throw DimensionError("scaling dimension does not match measure");
    Matrix out = F.atoms[j];
    for (Eigen::Index m = 0; m < out.rows(); ++m)
        for (Eigen::Index n = 0; n < out.cols(); ++n)
            out(m, n) *= D[static_cast<std::size_t>(m)] / D[static_cast<std::size_t>(n)];
    return out;
}

}  // namespace sfmkit
