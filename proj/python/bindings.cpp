#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sfmkit/decomposition.hpp"
#include "sfmkit/dilation.hpp"
#include "sfmkit/error.hpp"
#include "sfmkit/io.hpp"
#include "sfmkit/phase.hpp"
#include "sfmkit/random.hpp"

namespace py = pybind11;
using namespace sfmkit;

namespace {

using AtomList = std::vector<std::pair<std::string, Matrix>>;

AtomicSFM make_measure(const AtomList& atoms) {
    if (atoms.empty()) throw ValidationError("a measure needs at least one atom");
    std::vector<Atom> out;
    for (const auto& [label, m] : atoms) out.push_back({label, SesquiForm(m)});
    return AtomicSFM(static_cast<std::size_t>(atoms.front().second.rows()), std::move(out));
}

AtomList atom_list(const AtomicSFM& E) {
    AtomList out;
    for (const auto& a : E.atoms()) out.emplace_back(a.label, a.form.matrix());
    return out;
}

AtomSet resolve(const AtomicSFM& E, const std::optional<std::vector<std::string>>& labels) {
    return labels ? E.resolve(*labels) : E.all();
}

py::dict decomposition_report(const DecompositionReport& r) {
    py::dict d;
    d["passed"] = r.passed();
    d["positive"] = r.positive;
    d["reconstructs"] = r.reconstructs;
    d["residual"] = r.residual;
    d["relative_residual"] = r.relative_residual;
    d["injectivity"] = r.injectivity;
    d["min_eigenvalue"] = r.min_eigenvalue;
    return d;
}

py::dict dilation_report(const DilationReport& r) {
    py::dict d;
    d["passed"] = r.passed();
    d["identity_ok"] = r.identity_ok;
    d["commutation_ok"] = r.commutation_ok;
    d["density_ok"] = r.density_ok;
    d["identity_residual"] = r.identity_residual;
    d["relative_residual"] = r.relative_residual;
    d["rank_deficient_blocks"] = r.rank_deficient_blocks;
    return d;
}

}  // namespace

PYBIND11_MODULE(_sfmkit, m) {
    m.doc() = "Sesquilinear form measures: positive decompositions and spectral W-dilations.";

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const LookupError& e) {
            PyErr_SetString(PyExc_KeyError, e.what());
        } catch (const SymmetryError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const DimensionError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const ValidationError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        } catch (const ParseError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });

    m.attr("DEFAULT_TOL") = kDefaultTol;

    py::class_<AtomicSFM>(m, "Measure")
        .def(py::init(&make_measure), py::arg("atoms"),
             "Measure from a list of (label, N x N complex matrix) pairs.")
        .def_property_readonly("dim", &AtomicSFM::dim)
        .def_property_readonly("labels", &AtomicSFM::labels)
        .def("atoms", &atom_list)
        .def("__len__", &AtomicSFM::size)
        .def(
            "value", [](const AtomicSFM& E, std::optional<std::vector<std::string>> X) { return E.value(resolve(E, X)); },
            py::arg("labels") = py::none())
        .def(
            "evaluate",
            [](const AtomicSFM& E, const std::optional<std::vector<std::string>>& X, const Vector& phi,
               const Vector& psi) { return evaluate(E, resolve(E, X), phi, psi); },
            py::arg("labels"), py::arg("phi"), py::arg("psi"))
        .def("is_symmetric", &AtomicSFM::is_symmetric, py::arg("tol") = kDefaultTol)
        .def("is_positive", &AtomicSFM::is_positive, py::arg("tol") = kDefaultTol)
        .def("to_json", [](const AtomicSFM& E) { return io::dump(io::measure_to_json(E)); })
        .def_static("from_json", [](const std::string& s) { return io::measure_from_json(io::parse_json(s)); });

    py::class_<PositiveDecomposition>(m, "Decomposition")
        .def("parts", [](const PositiveDecomposition& d) {
            std::vector<AtomList> out;
            for (const auto& p : d.parts) out.push_back(atom_list(p));
            return out;
        })
        .def("part", [](const PositiveDecomposition& d, std::size_t k) { return d.parts.at(k); }, py::arg("k"))
        .def("reconstruct", &PositiveDecomposition::reconstruct)
        .def("to_json", [](const PositiveDecomposition& d) { return io::dump(io::decomposition_to_json(d)); })
        .def_static("from_json",
                    [](const std::string& s) { return io::decomposition_from_json(io::parse_json(s)); });

    py::class_<Dilation>(m, "Dilation")
        .def_property_readonly("dim", [](const Dilation& d) { return d.dim; })
        .def_property_readonly("labels", [](const Dilation& d) { return d.labels; })
        .def_property_readonly("space_dim", &Dilation::space_dim)
        .def("block", [](const Dilation& d, std::size_t j, std::size_t k) { return d.blocks.at(j).at(k); },
             py::arg("atom"), py::arg("k"))
        .def("J", [](const Dilation& d, const Vector& phi) { return apply_J(d, phi); }, py::arg("phi"))
        .def(
            "F",
            [](const Dilation& d, const std::vector<std::string>& labels, const Vector& v) {
                AtomSet X;
                for (const auto& l : labels) X.push_back(d.index_of(l));
                return apply_F(d, X, v);
            },
            py::arg("labels"), py::arg("v"))
        .def("W", [](const Dilation& d, const Vector& v, int power) { return apply_W(d, v, power); }, py::arg("v"),
             py::arg("power") = 1)
        .def("to_json", [](const Dilation& d) { return io::dump(io::dilation_to_json(d)); })
        .def_static("from_json", [](const std::string& s) { return io::dilation_from_json(io::parse_json(s)); });

    m.def(
        "decompose",
        [](const AtomicSFM& E, double alpha, double tol) { return decompose(E, geometric_alpha(alpha), tol); },
        py::arg("measure"), py::arg("alpha") = 0.5, py::arg("tol") = kDefaultTol,
        "Four positive measures with E = E0 + iE1 - E2 - iE3.");
    m.def(
        "verify_decomposition",
        [](const AtomicSFM& E, const PositiveDecomposition& d, double tol) {
            return decomposition_report(verify_decomposition(E, d, tol));
        },
        py::arg("measure"), py::arg("decomposition"), py::arg("tol") = kDefaultTol);
    m.def("strictify", py::overload_cast<const AtomicSFM&, double>(&strictify), py::arg("measure"), py::arg("eps"));
    m.def("build_dilation", py::overload_cast<const PositiveDecomposition&>(&build_dilation),
          py::arg("decomposition"));
    m.def(
        "verify_dilation",
        [](const Dilation& d, const AtomicSFM& E, double tol) { return dilation_report(verify_dilation(d, E, tol)); },
        py::arg("dilation"), py::arg("measure"), py::arg("tol") = kDefaultTol);
    m.def("associated_decomposition", &associated_decomposition, py::arg("dilation"));
    m.def(
        "equivalent",
        [](const Dilation& a, const Dilation& b, double tol) {
            const EquivalenceResult r = equivalent(a, b, tol);
            py::dict d;
            d["equivalent"] = r.equivalent;
            d["decompositions_agree"] = r.decompositions_agree;
            d["decomposition_residual"] = r.decomposition_residual;
            if (r.U) {
                d["unitarity_residual"] = r.U->unitarity_residual;
                d["intertwining_residual"] = r.U->intertwining_residual;
            }
            return d;
        },
        py::arg("first"), py::arg("second"), py::arg("tol") = kDefaultTol);

    m.def("trace_norm", [](const Matrix& A) { return trace_norm(A, is_hermitian(A)); }, py::arg("a"));
    m.def(
        "deflate_diagonalize",
        [](const Matrix& A, double rank_cutoff) {
            const EigenSystem e = deflate_diagonalize(A, rank_cutoff);
            Matrix vecs(A.rows(), static_cast<Eigen::Index>(e.rank()));
            for (std::size_t i = 0; i < e.rank(); ++i) vecs.col(static_cast<Eigen::Index>(i)) = e.vectors[i];
            return std::make_pair(e.values, vecs);
        },
        py::arg("a"), py::arg("rank_cutoff") = kDefaultRankCutoff,
        "Nonzero eigenvalues by decreasing modulus and eigenvectors as columns.");

    m.def(
        "random_measure",
        [](std::size_t dim, std::size_t atoms, const std::string& kind, std::uint64_t seed) {
            Rng rng(seed);
            return random_sfm(rng, dim, atoms, parse_measure_kind(kind));
        },
        py::arg("dim"), py::arg("atoms"), py::arg("kind") = "general", py::arg("seed") = 20240601);

    m.def(
        "phase_measure",
        [](py::object c, std::size_t dim, std::size_t arcs, double theta0) {
            const phase::CMatrix cm = py::isinstance<py::str>(c) ? phase::CMatrix::preset(c.cast<std::string>(), dim)
                                                                : phase::CMatrix(c.cast<Matrix>());
            return phase::phase_sfm(cm, phase::ArcPartition::uniform(arcs, theta0));
        },
        py::arg("c") = "all-ones", py::arg("dim") = 8, py::arg("arcs") = 16, py::arg("theta0") = 0.0,
        "Phase-shift covariant measure from a preset name or a Hermitian unit-diagonal matrix.");
    m.def("arc_moment", &phase::arc_moment, py::arg("m"), py::arg("n"), py::arg("a"), py::arg("b"));
    m.def("coherent_vector", &phase::coherent_vector, py::arg("z"), py::arg("dim"));
    m.def(
        "probabilities",
        [](const AtomicSFM& E, const Vector& phi) { return phase::probabilities(E, phi).values; },
        py::arg("measure"), py::arg("phi"));
}
