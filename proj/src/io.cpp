#include "sfmkit/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sfmkit/error.hpp"

namespace sfmkit::io {

namespace {

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

const json& field(const json& doc, const char* key) {
    if (!doc.is_object() || !doc.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    return doc.at(key);
}

std::size_t positive_size(const json& j, const char* what) {
    if (!j.is_number_unsigned() || j.get<std::size_t>() == 0)
        throw ParseError(std::string(what) + " must be a positive integer");
    return j.get<std::size_t>();
}

double finite_number(const json& j, const char* what) {
    if (!j.is_number()) throw ParseError(std::string(what) + " must be a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ParseError(std::string(what) + " must be finite");
    return v;
}

void check_schema(const json& doc) {
    const json& v = field(doc, "schema_version");
    if (!v.is_string() || v.get<std::string>() != kSchemaVersion)
        throw ParseError("unsupported schema_version, expected \"1\"");
}

json atoms_to_json(const AtomicSFM& E) {
    json atoms = json::array();
    for (const auto& a : E.atoms()) atoms.push_back({{"label", a.label}, {"matrix", matrix_to_json(a.form.matrix())}});
    return atoms;
}

AtomicSFM atoms_from_json(const json& atoms, std::size_t dim) {
    if (!atoms.is_array() || atoms.empty()) throw ParseError("'atoms' must be a non-empty array");
    const auto n = static_cast<Eigen::Index>(dim);
    std::vector<Atom> out;
    for (const auto& a : atoms) {
        const json& label = field(a, "label");
        if (!label.is_string()) throw ParseError("atom label must be a string");
        out.push_back({label.get<std::string>(), SesquiForm(matrix_from_json(field(a, "matrix"), n, n))});
    }
    try {
        return AtomicSFM(dim, std::move(out));
    } catch (const ValidationError& e) {
        throw ParseError(e.what());
    }
}

json provenance_to_json(const std::optional<Provenance>& p) {
    if (!p) return nullptr;
    return {{"weights", p->weights}, {"mu", p->mu}, {"delta", p->delta}};
}

std::optional<Provenance> provenance_from_json(const json& j) {
    if (j.is_null()) return std::nullopt;
    Provenance p;
    for (const auto& w : field(j, "weights")) p.weights.push_back(finite_number(w, "weight"));
    for (const auto& m : field(j, "mu")) p.mu.push_back(finite_number(m, "mu"));
    p.delta = finite_number(field(j, "delta"), "delta");
    return p;
}

}  // namespace

json parse_json(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
        const auto [line, col] = line_column(text, byte);
        throw ParseError("malformed JSON at line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                             e.what(),
                         line, col);
    }
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_json(ss.str());
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << text;
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw ParseError("complex number must be a [re, im] pair");
    return {finite_number(j[0], "real part"), finite_number(j[1], "imaginary part")};
}

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json& j, Eigen::Index rows, Eigen::Index cols) {
    if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows)
        throw ParseError("matrix must have " + std::to_string(rows) + " rows");
    if (rows == 0) return Matrix(0, cols < 0 ? 0 : cols);
    const Eigen::Index width = cols < 0 ? static_cast<Eigen::Index>(j[0].is_array() ? j[0].size() : 0) : cols;
    Matrix m(rows, width);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != width)
            throw ParseError("matrix row " + std::to_string(r) + " must have " + std::to_string(width) + " entries");
        for (Eigen::Index c = 0; c < width; ++c) m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
    }
    return m;
}

json measure_to_json(const AtomicSFM& E) {
    return {{"schema_version", kSchemaVersion}, {"dim", E.dim()}, {"atoms", atoms_to_json(E)}};
}

AtomicSFM measure_from_json(const json& doc) {
    check_schema(doc);
    return atoms_from_json(field(doc, "atoms"), positive_size(field(doc, "dim"), "dim"));
}

bool is_decomposition_document(const json& doc) {
    return doc.is_object() && doc.contains("kind") && doc["kind"] == "decomposition";
}

json decomposition_to_json(const PositiveDecomposition& dec) {
    json parts = json::array();
    for (std::size_t k = 0; k < 4; ++k) parts.push_back({{"k", k}, {"atoms", atoms_to_json(dec.parts[k])}});
    return {{"schema_version", kSchemaVersion},
            {"kind", "decomposition"},
            {"dim", dec.dim()},
            {"parts", std::move(parts)},
            {"provenance",
             {{"real", provenance_to_json(dec.real_provenance)}, {"imag", provenance_to_json(dec.imag_provenance)}}}};
}

PositiveDecomposition decomposition_from_json(const json& doc) {
    check_schema(doc);
    if (!is_decomposition_document(doc)) throw ParseError("not a decomposition document");
    const std::size_t dim = positive_size(field(doc, "dim"), "dim");
    const json& parts = field(doc, "parts");
    if (!parts.is_array() || parts.size() != 4) throw ParseError("'parts' must hold exactly four entries");
    std::array<std::optional<AtomicSFM>, 4> read;
    for (const auto& p : parts) {
        const json& k = field(p, "k");
        if (!k.is_number_unsigned() || k.get<std::size_t>() > 3) throw ParseError("part index k must be 0..3");
        read[k.get<std::size_t>()] = atoms_from_json(field(p, "atoms"), dim);
    }
    for (const auto& r : read)
        if (!r) throw ParseError("decomposition parts must cover k = 0..3");
    std::optional<Provenance> real, imag;
    if (doc.contains("provenance")) {
        real = provenance_from_json(field(doc["provenance"], "real"));
        imag = provenance_from_json(field(doc["provenance"], "imag"));
    }
    PositiveDecomposition dec{{*read[0], *read[1], *read[2], *read[3]}, real, imag, std::nullopt};
    for (std::size_t k = 1; k < 4; ++k)
        if (dec.parts[k].labels() != dec.parts[0].labels()) throw ParseError("decomposition parts disagree on labels");
    return dec;
}

json dilation_to_json(const Dilation& d) {
    json atoms = json::array();
    for (std::size_t j = 0; j < d.size(); ++j) {
        json blocks = json::array();
        for (std::size_t k = 0; k < 4; ++k) blocks.push_back({{"k", k}, {"rows", matrix_to_json(d.blocks[j][k])}});
        atoms.push_back({{"label", d.labels[j]}, {"mu", d.mu[j]}, {"blocks", std::move(blocks)}});
    }
    return {{"dim", d.dim}, {"atoms", std::move(atoms)}};
}

Dilation dilation_from_json(const json& doc) {
    Dilation d;
    d.dim = positive_size(field(doc, "dim"), "dim");
    const json& atoms = field(doc, "atoms");
    if (!atoms.is_array() || atoms.empty()) throw ParseError("'atoms' must be a non-empty array");
    for (const auto& a : atoms) {
        const json& label = field(a, "label");
        if (!label.is_string()) throw ParseError("atom label must be a string");
        d.labels.push_back(label.get<std::string>());
        d.mu.push_back(finite_number(field(a, "mu"), "mu"));
        std::array<Matrix, 4> blk;
        std::array<bool, 4> seen{};
        for (const auto& b : field(a, "blocks")) {
            const json& k = field(b, "k");
            if (!k.is_number_unsigned() || k.get<std::size_t>() > 3) throw ParseError("block index k must be 0..3");
            const json& rows = field(b, "rows");
            if (!rows.is_array()) throw ParseError("block rows must be an array");
            const auto idx = k.get<std::size_t>();
            blk[idx] = matrix_from_json(rows, static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(d.dim));
            seen[idx] = true;
        }
        for (std::size_t k = 0; k < 4; ++k)
            if (!seen[k]) blk[k] = Matrix(0, static_cast<Eigen::Index>(d.dim));
        d.blocks.push_back(std::move(blk));
    }
    try {
        d.validate();
    } catch (const ValidationError& e) {
        throw ParseError(e.what());
    }
    return d;
}

json equivalence_to_json(const Dilation& d1, const EquivalenceResult& res) {
    json out = {{"equivalent", res.equivalent},
                {"decompositions_agree", res.decompositions_agree},
                {"decomposition_residual", res.decomposition_residual}};
    if (!res.U) {
        out["U"] = nullptr;
        return out;
    }
    out["unitarity_residual"] = res.U->unitarity_residual;
    out["intertwining_residual"] = res.U->intertwining_residual;
    json atoms = json::array();
    for (std::size_t j = 0; j < res.U->blocks.size(); ++j) {
        json blocks = json::array();
        for (std::size_t k = 0; k < 4; ++k)
            blocks.push_back({{"k", k}, {"matrix", matrix_to_json(res.U->blocks[j][k])}});
        atoms.push_back({{"label", d1.labels[j]}, {"blocks", std::move(blocks)}});
    }
    out["U"] = std::move(atoms);
    return out;
}

std::string probabilities_csv(const phase::ProbabilityReport& rep) {
    std::string out = "atom_label,re,im\n";
    char buf[64];
    for (std::size_t j = 0; j < rep.values.size(); ++j) {
        out += rep.labels[j];
        std::snprintf(buf, sizeof buf, ",%.17g", rep.values[j].real());
        out += buf;
        std::snprintf(buf, sizeof buf, ",%.17g\n", rep.values[j].imag());
        out += buf;
    }
    return out;
}

}  // namespace sfmkit::io
