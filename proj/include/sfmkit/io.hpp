#pragma once

// JSON documents for measures, decompositions, dilations and equivalence
// verdicts, plus the probability CSV. Complex numbers are [re, im] pairs and
// doubles are written in shortest round-trip form, so parse∘serialize is the
// identity on documents.

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"

#include "sfmkit/dilation.hpp"
#include "sfmkit/phase.hpp"

namespace sfmkit::io {

using json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "1";

/// Parses text; malformed JSON raises ParseError carrying line and column.
json parse_json(std::string_view text);
json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);
/// Pretty-printed with a trailing newline.
std::string dump(const json& doc);

json complex_to_json(cplx z);
cplx complex_from_json(const json& j);
json matrix_to_json(const Matrix& m);
/// rows × cols expected; pass cols = -1 to accept any consistent width.
Matrix matrix_from_json(const json& j, Eigen::Index rows, Eigen::Index cols);

/// {"schema_version":"1","dim":N,"atoms":[{"label":…,"matrix":[[[re,im],…],…]}]}
json measure_to_json(const AtomicSFM& E);
AtomicSFM measure_from_json(const json& doc);

/// {"schema_version":"1","kind":"decomposition","dim":N,
///  "parts":[{"k":0..3,"atoms":[…]}],"provenance":{"real":…,"imag":…}}
json decomposition_to_json(const PositiveDecomposition& dec);
PositiveDecomposition decomposition_from_json(const json& doc);
bool is_decomposition_document(const json& doc);

/// {"dim":N,"atoms":[{"label":…,"mu":…,"blocks":[{"k":…,"rows":[[[re,im],…],…]}]}]}
json dilation_to_json(const Dilation& d);
Dilation dilation_from_json(const json& doc);

json equivalence_to_json(const Dilation& d1, const EquivalenceResult& res);

/// Header "atom_label,re,im", one row per atom.
std::string probabilities_csv(const phase::ProbabilityReport& rep);

}  // namespace sfmkit::io
