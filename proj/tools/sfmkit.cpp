// sfmkit: decompose sesquilinear form measures into positive parts, build and
// check spectral W-dilations, and run the coherent-state phase example.
//
// Exit codes: 0 success, 1 semantic failure (verification, equivalence),
// 2 input error, 3 numerical error.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "sfmkit/decomposition.hpp"
#include "sfmkit/dilation.hpp"
#include "sfmkit/error.hpp"
#include "sfmkit/io.hpp"
#include "sfmkit/phase.hpp"
#include "sfmkit/random.hpp"

namespace {

using namespace sfmkit;

enum Exit : int { kOk = 0, kSemantic = 1, kInput = 2, kNumeric = 3 };

struct Options {
    std::string input;
    std::string output;
    std::string report;
    double tol = kDefaultTol;
    double alpha = 0.5;
    std::uint64_t seed = 20240601;
};

double default_tolerance() {
    if (const char* env = std::getenv("SFMKIT_TOL")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end != env && *end == '\0' && v > 0.0) return v;
        std::cerr << "warning: ignoring invalid SFMKIT_TOL='" << env << "'\n";
    }
    return kDefaultTol;
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-")
        std::cout << text;
    else
        io::write_text_file(path, text);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6e", v);
    return buf;
}

std::string join(const std::vector<double>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? " " : "") + fmt(xs[i]);
    return s;
}

void describe_provenance(std::ostream& os, const char* name, const std::optional<Provenance>& p) {
    if (!p) return;
    os << name << ": delta = " << fmt(p->delta) << "\n";
    os << "  weights: " << join(p->weights) << "\n";
    os << "  mu:      " << join(p->mu) << "\n";
}

std::string decomposition_report(const AtomicSFM& E, const PositiveDecomposition& dec,
                                 const DecompositionReport& rep) {
    std::ostringstream os;
    os << "dim " << E.dim() << ", atoms " << E.size() << "\n";
    describe_provenance(os, "real part", dec.real_provenance);
    describe_provenance(os, "imaginary part", dec.imag_provenance);
    const auto [real, imag] = symmetric_split(E);
    for (std::size_t j = 0; j < E.size(); ++j) {
        const JacobiResult a = jacobi_eigen(real.atom(j).form.matrix());
        const JacobiResult b = jacobi_eigen(imag.atom(j).form.matrix());
        os << "atom " << E.atom(j).label << ": eig(real) = "
           << join(std::vector<double>(a.values.data(), a.values.data() + a.values.size()))
           << " | eig(imag) = " << join(std::vector<double>(b.values.data(), b.values.data() + b.values.size()))
           << "\n";
    }
    for (std::size_t k = 0; k < 4; ++k) os << "part " << k << " min eigenvalues: " << join(rep.min_eigenvalue[k]) << "\n";
    os << "reconstruction residual: " << fmt(rep.residual) << " (relative " << fmt(rep.relative_residual) << ")\n";
    os << "injectivity indicator: " << fmt(rep.injectivity) << "\n";
    os << "verification: " << (rep.passed() ? "PASS" : "FAIL") << "\n";
    return os.str();
}

PositiveDecomposition load_decomposition(const io::json& doc, const Options& opt, double strict_eps) {
    if (io::is_decomposition_document(doc)) {
        if (strict_eps > 0.0) throw ValidationError("--strictify needs a measure document, not a decomposition");
        return io::decomposition_from_json(doc);
    }
    const AtomicSFM E = io::measure_from_json(doc);
    if (strict_eps > 0.0)
        return strictify(E, strict_eps, uniform_semispectral(E), geometric_alpha(opt.alpha), opt.tol);
    return decompose(E, geometric_alpha(opt.alpha), opt.tol);
}

int cmd_decompose(const Options& opt) {
    const AtomicSFM E = io::measure_from_json(io::read_json_file(opt.input));
    const PositiveDecomposition dec = decompose(E, geometric_alpha(opt.alpha), opt.tol);
    const DecompositionReport rep = verify_decomposition(E, dec, opt.tol);
    emit(opt.output, io::dump(io::decomposition_to_json(dec)));
    const std::string text = decomposition_report(E, dec, rep);
    if (opt.report.empty())
        std::cerr << text;
    else
        emit(opt.report, text);
    return rep.passed() ? kOk : kNumeric;
}

int cmd_dilate(const Options& opt, double strict_eps, bool rotate) {
    const PositiveDecomposition dec = load_decomposition(io::read_json_file(opt.input), opt, strict_eps);
    Dilation d = build_dilation(dec);
    if (rotate) {
        Rng rng(opt.seed);
        std::vector<std::array<Matrix, 4>> us;
        for (std::size_t j = 0; j < d.size(); ++j) {
            std::array<Matrix, 4> u;
            for (std::size_t k = 0; k < 4; ++k) u[k] = random_unitary(rng, d.block_dim(j, k));
            us.push_back(std::move(u));
        }
        d = rotate_blocks(d, us);
    }
    emit(opt.output, io::dump(io::dilation_to_json(d)));
    return kOk;
}

int cmd_verify(const Options& opt, const std::string& measure_path) {
    const Dilation d = io::dilation_from_json(io::read_json_file(opt.input));
    const AtomicSFM E = io::measure_from_json(io::read_json_file(measure_path));
    const DilationReport rep = verify_dilation(d, E, opt.tol);
    std::ostringstream os;
    os << "dim K = " << d.space_dim() << "\n";
    os << "(1) dilation identity residual: " << fmt(rep.identity_residual) << " (relative "
       << fmt(rep.relative_residual) << ") " << (rep.identity_ok ? "PASS" : "FAIL") << "\n";
    os << "(2) W commutes with F: " << (rep.commutation_ok ? "PASS (structural)" : "FAIL") << "\n";
    os << "(3) density (full row rank blocks): " << (rep.density_ok ? "PASS" : "FAIL");
    for (const auto& b : rep.rank_deficient_blocks) os << " " << b;
    os << "\nverification: " << (rep.passed() ? "PASS" : "FAIL") << "\n";
    emit(opt.output, os.str());
    return rep.passed() ? kOk : kSemantic;
}

int cmd_equiv(const Options& opt, const std::string& first, const std::string& second) {
    const Dilation d1 = io::dilation_from_json(io::read_json_file(first));
    const Dilation d2 = io::dilation_from_json(io::read_json_file(second));
    const EquivalenceResult res = equivalent(d1, d2, opt.tol);
    emit(opt.output, io::dump(io::equivalence_to_json(d1, res)));
    std::cerr << (res.equivalent ? "equivalent" : "not equivalent") << " (decomposition residual "
              << fmt(res.decomposition_residual);
    if (res.U) std::cerr << ", unitarity residual " << fmt(res.U->unitarity_residual);
    std::cerr << ")\n";
    return res.equivalent ? kOk : kSemantic;
}

cplx parse_z(const std::string& s) {
    std::istringstream in(s);
    double re = 0.0, im = 0.0;
    char comma = 0;
    if (!(in >> re)) throw ValidationError("invalid z value '" + s + "', expected re or re,im");
    if (in >> comma) {
        if (comma != ',' || !(in >> im)) throw ValidationError("invalid z value '" + s + "', expected re or re,im");
    }
    std::string rest;
    if (in >> rest) throw ValidationError("invalid z value '" + s + "'");
    return {re, im};
}

struct PhaseOptions {
    std::size_t dim = 8;
    std::size_t arcs = 16;
    std::string preset = "all-ones";
    std::string c_file;
    std::vector<std::string> z{"0.5", "1", "2"};
    std::string csv_prefix;
};

int cmd_phase_demo(const Options& opt, const PhaseOptions& po) {
    if (po.dim == 0 || po.arcs == 0) throw ValidationError("--dim and --arcs must be at least 1");
    const phase::CMatrix c = po.c_file.empty()
                                 ? phase::CMatrix::preset(po.preset, po.dim)
                                 : phase::CMatrix(io::matrix_from_json(io::read_json_file(po.c_file),
                                                                       static_cast<Eigen::Index>(po.dim),
                                                                       static_cast<Eigen::Index>(po.dim)));
    const AtomicSFM E = phase::phase_sfm(c, phase::ArcPartition::uniform(po.arcs));
    emit(opt.output, io::dump(io::measure_to_json(E)));

    std::cerr << "coefficient matrix min eigenvalue: " << fmt(c.block_min_eigenvalue(c.dim())) << "\n";
    for (std::size_t i = 0; i < po.z.size(); ++i) {
        const cplx z = parse_z(po.z[i]);
        if (z == cplx(0.0, 0.0)) std::cerr << "warning: z = 0 is not a coherent state; using e0\n";
        const phase::ProbabilityReport rep = phase::probabilities(E, phase::coherent_vector(z, po.dim), opt.tol);
        std::cerr << "z = " << po.z[i] << ": sum = " << fmt(rep.sum.real()) << ", min = " << fmt(rep.min_real)
                  << ", max |imag| = " << fmt(rep.max_imag) << ", negative atoms = " << rep.negative_count << "\n";
        if (!po.csv_prefix.empty())
            io::write_text_file(po.csv_prefix + "_z" + std::to_string(i) + ".csv", io::probabilities_csv(rep));
    }
    const phase::NegativityWitness w = phase::negativity_search(E);
    if (w.value < -opt.tol)
        std::cerr << "negative value " << fmt(w.value) << " at atom " << E.atom(w.atom).label
                  << " for a two-level probe state: the measure is not positive\n";
    else
        std::cerr << "no negative value found by grid search (min " << fmt(w.value) << ")\n";
    return kOk;
}

int cmd_random(const Options& opt, std::size_t dim, std::size_t atoms, const std::string& kind) {
    if (dim == 0 || atoms == 0) throw ValidationError("--dim and --atoms must be at least 1");
    Rng rng(opt.seed);
    emit(opt.output, io::dump(io::measure_to_json(random_sfm(rng, dim, atoms, parse_measure_kind(kind)))));
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sfmkit: sesquilinear form measures, positive decompositions and W-dilations"};
    app.require_subcommand(1);
    Options opt;
    opt.tol = default_tolerance();

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--tol", opt.tol, "verification tolerance (env SFMKIT_TOL)")->check(CLI::PositiveNumber);
        sub->add_option("-o,--output", opt.output, "output path, '-' for stdout");
    };

    auto* dec = app.add_subcommand("decompose", "split a measure into four positive parts");
    dec->add_option("-i,--input", opt.input, "measure document")->required();
    dec->add_option("--alpha", opt.alpha, "ratio r of the scaling sequence alpha_m = r^(m+1)")
        ->check(CLI::Range(0.0, 1.0));
    dec->add_option("--report", opt.report, "text report path (default stderr)");
    add_common(dec);

    double strict_eps = 0.0;
    bool rotate = false;
    auto* dil = app.add_subcommand("dilate", "build a spectral W-dilation");
    dil->add_option("-i,--input", opt.input, "measure or decomposition document")->required();
    dil->add_option("--alpha", opt.alpha, "ratio of the scaling sequence")->check(CLI::Range(0.0, 1.0));
    dil->add_option("--strictify", strict_eps, "add eps*E0 so that J is injective")->check(CLI::PositiveNumber);
    dil->add_flag("--rotate", rotate, "apply a seeded random unitary inside every block");
    dil->add_option("--seed", opt.seed, "random seed");
    add_common(dil);

    std::string measure_path;
    auto* ver = app.add_subcommand("verify", "check the dilation axioms against a measure");
    ver->add_option("-i,--input,--dilation", opt.input, "dilation document")->required();
    ver->add_option("-m,--measure", measure_path, "measure document")->required();
    add_common(ver);

    std::string first, second;
    auto* eqv = app.add_subcommand("equiv", "test unitary equivalence of two dilations");
    eqv->add_option("first", first, "first dilation document")->required();
    eqv->add_option("second", second, "second dilation document")->required();
    add_common(eqv);

    PhaseOptions po;
    auto* ph = app.add_subcommand("phase-demo", "phase-shift covariant measure from coefficients");
    ph->add_option("-N,--dim", po.dim, "truncation dimension");
    ph->add_option("-M,--arcs", po.arcs, "number of arcs");
    ph->add_option("--preset", po.preset, "identity | all-ones | toeplitz(r)");
    ph->add_option("--c-file", po.c_file, "JSON N x N matrix of [re, im] coefficients");
    ph->add_option("-z", po.z, "coherent amplitude, re or re,im (repeatable)")->delimiter('\0');
    ph->add_option("--csv-prefix", po.csv_prefix, "write <prefix>_z<i>.csv per amplitude");
    add_common(ph);

    std::size_t rdim = 4, ratoms = 3;
    std::string kind = "general";
    auto* rnd = app.add_subcommand("random", "generate a seeded random measure document");
    rnd->add_option("-N,--dim", rdim, "dimension");
    rnd->add_option("-M,--atoms", ratoms, "number of atoms");
    rnd->add_option("--kind", kind, "general | symmetric | positive");
    rnd->add_option("--seed", opt.seed, "random seed");
    add_common(rnd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInput;
    }

    try {
        if (*dec) return cmd_decompose(opt);
        if (*dil) return cmd_dilate(opt, strict_eps, rotate);
        if (*ver) return cmd_verify(opt, measure_path);
        if (*eqv) return cmd_equiv(opt, first, second);
        if (*ph) return cmd_phase_demo(opt, po);
        if (*rnd) return cmd_random(opt, rdim, ratoms, kind);
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInput;
    } catch (const ValidationError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInput;
    } catch (const DimensionError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInput;
    } catch (const LookupError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInput;
    } catch (const SymmetryError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInput;
    } catch (const std::exception& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kNumeric;
    }
    return kInput;
}
