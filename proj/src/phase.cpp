#include "sfmkit/phase.hpp"

#include <cmath>
#include <algorithm>
#include <limits>
#include <numbers>
#include <regex>

#include "sfmkit/error.hpp"

namespace sfmkit::phase {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

ArcPartition::ArcPartition(std::vector<double> breakpoints) : bp_(std::move(breakpoints)) {
    if (bp_.size() < 2) throw ValidationError("arc partition needs at least one arc");
    for (double t : bp_)
        if (!std::isfinite(t)) throw ValidationError("arc breakpoints must be finite");
    for (std::size_t j = 0; j + 1 < bp_.size(); ++j)
        if (!(bp_[j + 1] > bp_[j])) throw ValidationError("arc breakpoints must be strictly increasing");
    if (std::abs(bp_.back() - bp_.front() - kTwoPi) > 1e-12 * (1.0 + std::abs(bp_.front())))
        throw ValidationError("arc partition must cover the circle exactly once");
}

ArcPartition ArcPartition::uniform(std::size_t arcs, double theta0) {
    if (arcs == 0) throw ValidationError("arc partition needs at least one arc");
    std::vector<double> bp(arcs + 1);
    for (std::size_t j = 0; j <= arcs; ++j)
        bp[j] = theta0 + kTwoPi * static_cast<double>(j) / static_cast<double>(arcs);
    bp[arcs] = theta0 + kTwoPi;
    return ArcPartition(std::move(bp));
}

ArcPartition ArcPartition::refine(std::size_t factor) const {
    if (factor == 0) throw ValidationError("refinement factor must be positive");
    std::vector<double> bp;
    for (std::size_t j = 0; j < size(); ++j) {
        const double a = bp_[j], b = bp_[j + 1];
        for (std::size_t s = 0; s < factor; ++s)
            bp.push_back(a + (b - a) * static_cast<double>(s) / static_cast<double>(factor));
    }
    bp.push_back(bp_.back());
    return ArcPartition(std::move(bp));
}

cplx arc_moment(std::size_t m, std::size_t n, double a, double b) {
    if (!(b > a) || b - a > kTwoPi * (1.0 + 1e-12)) throw ValidationError("invalid arc");
    if (m == n) return (b - a) / kTwoPi;
    const double k = static_cast<double>(n) - static_cast<double>(m);
    const cplx num = std::polar(1.0, k * b) - std::polar(1.0, k * a);
    return num / cplx(0.0, kTwoPi * k);
}

CMatrix::CMatrix(Matrix c, double tol) : c_(std::move(c)) {
    require_square(c_, "coefficient matrix");
    if (c_.rows() == 0) throw DimensionError("coefficient matrix is empty");
    if (hermitian_defect(c_) > tol) throw SymmetryError("coefficient matrix is not Hermitian");
    for (Eigen::Index m = 0; m < c_.rows(); ++m)
        if (std::abs(c_(m, m) - 1.0) > tol) throw ValidationError("coefficient matrix must have unit diagonal");
}

CMatrix CMatrix::identity(std::size_t dim) {
    const auto n = static_cast<Eigen::Index>(dim);
    return CMatrix(Matrix::Identity(n, n));
}

CMatrix CMatrix::all_ones(std::size_t dim) {
    const auto n = static_cast<Eigen::Index>(dim);
    return CMatrix(Matrix::Ones(n, n));
}

CMatrix CMatrix::toeplitz(std::size_t dim, double r) {
    const auto n = static_cast<Eigen::Index>(dim);
    Matrix c(n, n);
    for (Eigen::Index m = 0; m < n; ++m)
        for (Eigen::Index k = 0; k < n; ++k) c(m, k) = std::pow(r, static_cast<double>(std::abs(m - k)));
    return CMatrix(std::move(c));
}

CMatrix CMatrix::preset(const std::string& name, std::size_t dim) {
    if (dim == 0) throw ValidationError("preset dimension must be positive");
    if (name == "identity") return identity(dim);
    if (name == "all-ones") return all_ones(dim);
    static const std::regex toep(R"(toeplitz\(\s*([-+0-9.eE]+)\s*\))");
    std::smatch match;
    if (std::regex_match(name, match, toep)) {
        std::size_t used = 0;
        const std::string num = match[1];
        double r = 0.0;
        try {
            r = std::stod(num, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == num.size() && std::isfinite(r)) return toeplitz(dim, r);
    }
    throw ValidationError("unknown coefficient preset '" + name + "'");
}

double CMatrix::block_min_eigenvalue(std::size_t block) const {
    const auto b = static_cast<Eigen::Index>(std::min(block, dim()));
    return min_eigenvalue(c_.topLeftCorner(b, b));
}

AtomicSFM phase_sfm(const CMatrix& c, const ArcPartition& part) {
    const std::size_t n = c.dim();
    const auto ni = static_cast<Eigen::Index>(n);
    std::vector<Atom> atoms;
    for (std::size_t j = 0; j < part.size(); ++j) {
        Matrix f(ni, ni);
        for (std::size_t m = 0; m < n; ++m)
            for (std::size_t k = 0; k < n; ++k)
                f(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(k)) =
                    c.matrix()(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(k)) *
                    arc_moment(m, k, part.begin(j), part.end(j));
        atoms.push_back({"arc" + std::to_string(j), SesquiForm(std::move(f))});
    }
    return AtomicSFM(n, std::move(atoms));
}

Vector coherent_vector(cplx z, std::size_t dim) {
    if (dim == 0) throw DimensionError("coherent_vector: dimension must be positive");
    const auto n = static_cast<Eigen::Index>(dim);
    Vector v(n);
    v[0] = 1.0;
    for (Eigen::Index k = 1; k < n; ++k) v[k] = v[k - 1] * z / std::sqrt(static_cast<double>(k));
    return v / v.norm();
}

ProbabilityReport probabilities(const AtomicSFM& E, const Vector& phi, double tol) {
    if (static_cast<std::size_t>(phi.size()) != E.dim()) throw DimensionError("probabilities: vector length mismatch");
    ProbabilityReport rep;
    rep.labels = E.labels();
    rep.min_real = std::numeric_limits<double>::infinity();
    for (const auto& a : E.atoms()) {
        const cplx p = a.form(phi, phi);
        rep.values.push_back(p);
        rep.sum += p;
        rep.max_imag = std::max(rep.max_imag, std::abs(p.imag()));
        rep.min_real = std::min(rep.min_real, p.real());
        if (p.real() < -tol) ++rep.negative_count;
    }
    return rep;
}

NegativityWitness negativity_search(const AtomicSFM& E, std::size_t angle_steps, std::size_t phase_steps) {
    const auto n = static_cast<Eigen::Index>(E.dim());
    NegativityWitness best;
    best.value = std::numeric_limits<double>::infinity();
    auto probe = [&](const Vector& phi) {
        for (std::size_t j = 0; j < E.size(); ++j) {
            const double p = E.atom(j).form(phi, phi).real();
            if (p < best.value) best = {p, j, phi};
        }
    };
    for (Eigen::Index m = 0; m < n; ++m) probe(Vector::Unit(n, m));
    for (Eigen::Index m = 0; m < n; ++m)
        for (Eigen::Index k = m + 1; k < n; ++k)
            for (std::size_t s = 1; s < angle_steps; ++s) {
                const double t = 0.5 * std::numbers::pi * static_cast<double>(s) / static_cast<double>(angle_steps);
                for (std::size_t q = 0; q < phase_steps; ++q) {
                    const double theta = kTwoPi * static_cast<double>(q) / static_cast<double>(phase_steps);
                    Vector phi = Vector::Zero(n);
                    phi[m] = std::cos(t);
                    phi[k] = std::polar(std::sin(t), theta);
                    probe(phi);
                }
            }
    return best;
}

}  // namespace sfmkit::phase
