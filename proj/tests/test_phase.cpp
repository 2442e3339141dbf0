#include "doctest.h"

#include <numbers>

#include "oracle.hpp"
#include "sfmkit/error.hpp"
#include "sfmkit/phase.hpp"
#include "sfmkit/random.hpp"

using namespace sfmkit;
using namespace sfmkit::phase;

namespace {

constexpr double kPi = std::numbers::pi;
const cplx I(0.0, 1.0);

}  // namespace

TEST_CASE("arc_moment examples") {
    CHECK(arc_moment(0, 0, 0.0, 2 * kPi) == cplx(1.0));
    CHECK(arc_moment(3, 3, 0.0, kPi / 2) == cplx(0.25));
    CHECK(std::abs(arc_moment(0, 1, 0.0, 2 * kPi)) < 1e-16);
    CHECK(std::abs(arc_moment(2, 5, 0.3, 0.3 + 2 * kPi)) < 1e-15);
    // i/π, frozen from the quadrature oracle
    const cplx half = arc_moment(0, 1, 0.0, kPi);
    CHECK(std::abs(half - cplx(0.0, 0.3183098861837907)) < 1e-15);
    CHECK(std::abs(arc_moment(1, 0, 0.0, kPi) - std::conj(half)) < 1e-16);
    CHECK_THROWS_AS(arc_moment(0, 1, 1.0, 1.0), ValidationError);
    CHECK_THROWS_AS(arc_moment(0, 1, 0.0, 7.0), ValidationError);
}

TEST_CASE("arc_moment against quadrature") {
    Rng rng(1);
    std::uniform_real_distribution<double> angle(-kPi, kPi), length(0.01, 2 * kPi);
    for (int t = 0; t < 50; ++t) {
        const int m = t % 7, n = (3 * t) % 8;
        const double a = angle(rng), b = a + length(rng);
        const cplx exact = arc_moment(std::size_t(m), std::size_t(n), a, b);
        CHECK(std::abs(exact - oracle::arc_moment_quadrature(m, n, a, b, 20000)) < 1e-8);
    }
}

TEST_CASE("ArcPartition validation and refinement") {
    CHECK_THROWS_AS(ArcPartition({0.0}), ValidationError);
    CHECK_THROWS_AS(ArcPartition({0.0, 1.0, 1.0, 2 * kPi}), ValidationError);
    CHECK_THROWS_AS(ArcPartition({0.0, 3.0}), ValidationError);
    CHECK_THROWS_AS(ArcPartition::uniform(0), ValidationError);
    const ArcPartition p = ArcPartition::uniform(4, 1.0);
    CHECK(p.size() == 4);
    CHECK(p.begin(0) == 1.0);
    CHECK(p.end(3) == 1.0 + 2 * kPi);
    const ArcPartition r = p.refine(3);
    CHECK(r.size() == 12);
    CHECK(r.begin(3) == p.begin(1));
}

TEST_CASE("CMatrix presets and validation") {
    CHECK(CMatrix::preset("identity", 3).matrix() == Matrix::Identity(3, 3));
    CHECK(CMatrix::preset("all-ones", 3).matrix() == Matrix::Ones(3, 3));
    const CMatrix t = CMatrix::preset("toeplitz(0.5)", 3);
    CHECK(t.matrix()(0, 2) == cplx(0.25));
    CHECK(t.block_min_eigenvalue(3) > 0.0);
    CHECK(CMatrix::preset("toeplitz(2)", 3).block_min_eigenvalue(3) < 0.0);
    CHECK_THROWS_AS(CMatrix::preset("nope", 3), ValidationError);
    CHECK_THROWS_AS(CMatrix::preset("toeplitz(x)", 3), ValidationError);
    CHECK_THROWS_AS(CMatrix::preset("identity", 0), ValidationError);
    Matrix bad = Matrix::Identity(2, 2);
    bad(0, 0) = 2.0;
    CHECK_THROWS_AS(CMatrix{bad}, ValidationError);
    Matrix skew = Matrix::Identity(2, 2);
    skew(0, 1) = 1.0;
    CHECK_THROWS_AS(CMatrix{skew}, SymmetryError);
}

TEST_CASE("phase_sfm examples") {
    SUBCASE("identity coefficients: diagonal arc lengths") {
        const AtomicSFM E = phase_sfm(CMatrix::identity(3), ArcPartition::uniform(4));
        CHECK(E.size() == 4);
        CHECK(E.atom(2).label == "arc2");
        for (const auto& a : E.atoms()) CHECK(oracle::max_diff(a.form.matrix(), 0.25 * Matrix::Identity(3, 3)) < 1e-16);
    }
    SUBCASE("all-ones on halves") {
        const AtomicSFM E = phase_sfm(CMatrix::all_ones(2), ArcPartition::uniform(2));
        Matrix upper(2, 2);
        upper << 0.5, I / kPi, -I / kPi, 0.5;
        CHECK(oracle::max_diff(E.atom(0).form.matrix(), upper) < 1e-15);
        CHECK(oracle::max_diff(E.atom(1).form.matrix(), upper.conjugate()) < 1e-15);
        CHECK(oracle::max_diff(E.atom(0).form.matrix() + E.atom(1).form.matrix(), Matrix::Identity(2, 2)) < 1e-15);
    }
    SUBCASE("total is the identity for any coefficients") {
        for (const char* name : {"identity", "all-ones", "toeplitz(0.5)", "toeplitz(2)"}) {
            const AtomicSFM E = phase_sfm(CMatrix::preset(name, 8), ArcPartition::uniform(16));
            CHECK(oracle::max_diff(E.total(), Matrix::Identity(8, 8)) < 1e-14);
        }
    }
    SUBCASE("atoms are symmetric") {
        const AtomicSFM E = phase_sfm(CMatrix::toeplitz(5, 0.3), ArcPartition::uniform(7, 0.2));
        CHECK(E.is_symmetric(1e-15));
    }
}

TEST_CASE("refinement is consistent") {
    const CMatrix c = CMatrix::toeplitz(5, 0.7);
    const ArcPartition coarse = ArcPartition::uniform(6, 0.4);
    const AtomicSFM E = phase_sfm(c, coarse), R = phase_sfm(c, coarse.refine(4));
    for (std::size_t j = 0; j < 6; ++j) {
        Matrix sum = Matrix::Zero(5, 5);
        for (std::size_t s = 0; s < 4; ++s) sum += R.atom(4 * j + s).form.matrix();
        CHECK(oracle::max_diff(sum, E.atom(j).form.matrix()) < 1e-14);
    }
}

TEST_CASE("rotating the partition conjugates by the phase shift") {
    const CMatrix c = CMatrix::all_ones(4);
    const double theta = 0.37;
    const AtomicSFM E0 = phase_sfm(c, ArcPartition::uniform(5));
    const AtomicSFM Et = phase_sfm(c, ArcPartition::uniform(5, theta));
    Matrix V = Matrix::Zero(4, 4);
    for (Eigen::Index n = 0; n < 4; ++n) V(n, n) = std::polar(1.0, double(n) * theta);
    for (std::size_t j = 0; j < 5; ++j)
        CHECK(oracle::max_diff(Et.atom(j).form.matrix(), V.adjoint() * E0.atom(j).form.matrix() * V) < 1e-14);
}

TEST_CASE("coherent_vector") {
    CHECK(coherent_vector(0.0, 4) == Vector::Unit(4, 0));
    const Vector v = coherent_vector(1.0, 4);
    Vector want(4);
    want << 0.6123724356957945, 0.6123724356957945, 0.4330127018922193, 0.25;
    CHECK(oracle::max_diff(v, want) < 1e-15);
    CHECK(coherent_vector(cplx(3.0, -2.0), 9).norm() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(coherent_vector(1.0, 0), DimensionError);
}

TEST_CASE("probabilities") {
    const ArcPartition part = ArcPartition::uniform(16);
    SUBCASE("normalized and real for every preset and z") {
        for (const char* name : {"identity", "all-ones", "toeplitz(0.5)", "toeplitz(2)"}) {
            const AtomicSFM E = phase_sfm(CMatrix::preset(name, 8), part);
            for (double z : {0.5, 1.0, 2.0}) {
                const ProbabilityReport rep = probabilities(E, coherent_vector(z, 8));
                CHECK(std::abs(rep.sum - 1.0) < 1e-10);
                CHECK(rep.max_imag < 1e-12);
            }
        }
    }
    SUBCASE("identity coefficients give the uniform distribution") {
        const ProbabilityReport rep = probabilities(phase_sfm(CMatrix::identity(8), part), coherent_vector(2.0, 8));
        for (const auto& p : rep.values) CHECK(std::abs(p - 1.0 / 16) < 1e-15);
    }
    SUBCASE("all-ones is a genuine distribution peaked at angle 0 for real z") {
        const ProbabilityReport rep = probabilities(phase_sfm(CMatrix::all_ones(8), part), coherent_vector(2.0, 8));
        CHECK(rep.negative_count == 0);
        CHECK(rep.min_real >= 0.0);
        std::size_t best = 0;
        for (std::size_t j = 0; j < 16; ++j)
            if (rep.values[j].real() > rep.values[best].real()) best = j;
        // arc 0 is [0, 2π/16): it holds angle 0, but the peak is symmetric about 0,
        // so the last arc ties up to rounding.
        CHECK((best == 0 || best == 15));
        CHECK(std::abs(rep.values[0].real() - rep.values[15].real()) < 1e-12);
    }
    SUBCASE("dimension mismatch") {
        CHECK_THROWS_AS(probabilities(phase_sfm(CMatrix::identity(3), part), coherent_vector(1.0, 4)), DimensionError);
    }
}

TEST_CASE("negativity") {
    const ArcPartition part = ArcPartition::uniform(16);
    const NegativityWitness bad = negativity_search(phase_sfm(CMatrix::toeplitz(8, 2.0), part));
    CHECK(bad.value < -1e-3);
    CHECK(bad.state.norm() == doctest::Approx(1.0));
    const AtomicSFM E = phase_sfm(CMatrix::toeplitz(8, 2.0), part);
    CHECK(E.atom(bad.atom).form(bad.state, bad.state).real() == doctest::Approx(bad.value));
    CHECK(negativity_search(phase_sfm(CMatrix::all_ones(8), part)).value >= -1e-15);
    CHECK(negativity_search(phase_sfm(CMatrix::identity(8), part)).value >= 0.0);
}
