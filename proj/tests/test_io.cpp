#include "doctest.h"

#include "oracle.hpp"
#include "sfmkit/error.hpp"
#include "sfmkit/io.hpp"
#include "sfmkit/random.hpp"

using namespace sfmkit;
using sfmkit::io::json;

namespace {

bool same(const AtomicSFM& a, const AtomicSFM& b) {
    if (a.dim() != b.dim() || a.labels() != b.labels()) return false;
    for (std::size_t j = 0; j < a.size(); ++j)
        if (a.atom(j).form.matrix() != b.atom(j).form.matrix()) return false;
    return true;
}

json reparse(const json& doc) { return io::parse_json(io::dump(doc)); }

}  // namespace

TEST_CASE("measure documents round-trip bit for bit") {
    Rng rng(1);
    for (int t = 0; t < 20; ++t) {
        const AtomicSFM E = random_sfm(rng, 1 + std::size_t(t % 5), 1 + std::size_t(t % 3));
        const json doc = io::measure_to_json(E);
        CHECK(doc["schema_version"] == "1");
        const AtomicSFM back = io::measure_from_json(reparse(doc));
        CHECK(same(E, back));
        CHECK(io::dump(io::measure_to_json(back)) == io::dump(doc));
    }
}

TEST_CASE("decomposition documents round-trip") {
    Rng rng(2);
    const AtomicSFM E = random_sfm(rng, 3, 2);
    const PositiveDecomposition dec = decompose(E);
    const PositiveDecomposition back = io::decomposition_from_json(reparse(io::decomposition_to_json(dec)));
    for (std::size_t k = 0; k < 4; ++k) CHECK(same(dec.parts[k], back.parts[k]));
    REQUIRE(back.real_provenance);
    CHECK(back.real_provenance->weights == dec.real_provenance->weights);
    CHECK(back.imag_provenance->mu == dec.imag_provenance->mu);
    CHECK(back.real_provenance->delta == dec.real_provenance->delta);
    CHECK_FALSE(back.frames);
    CHECK(io::is_decomposition_document(io::decomposition_to_json(dec)));
    CHECK_FALSE(io::is_decomposition_document(io::measure_to_json(E)));
}

TEST_CASE("dilation documents round-trip") {
    Rng rng(3);
    const AtomicSFM E = random_sfm(rng, 4, 3);
    const Dilation d = build_dilation(decompose(E));
    const json doc = io::dilation_to_json(d);
    CHECK(doc.contains("dim"));
    CHECK(doc["atoms"][0]["blocks"].size() == 4);
    const Dilation back = io::dilation_from_json(reparse(doc));
    CHECK(back.labels == d.labels);
    CHECK(back.mu == d.mu);
    for (std::size_t j = 0; j < d.size(); ++j)
        for (std::size_t k = 0; k < 4; ++k) CHECK(back.blocks[j][k] == d.blocks[j][k]);
    CHECK(verify_dilation(back, E).passed());
}

TEST_CASE("zero-row blocks survive a round trip") {
    const AtomicSFM E(2, {{"a", SesquiForm(Matrix::Identity(2, 2))}});
    const Dilation d = build_dilation(decompose(E));
    const Dilation back = io::dilation_from_json(reparse(io::dilation_to_json(d)));
    CHECK(back.block_dim(0, 1) == 0);
    CHECK(back.space_dim() == d.space_dim());
}

TEST_CASE("equivalence document") {
    Rng rng(4);
    const Dilation d = build_dilation(decompose(random_sfm(rng, 3, 2)));
    const json yes = io::equivalence_to_json(d, equivalent(d, d));
    CHECK(yes["equivalent"] == true);
    CHECK(yes["U"].is_array());
    CHECK(yes.contains("unitarity_residual"));
    const Dilation s = build_dilation(strictify(random_sfm(rng, 3, 2), 0.1));
    const json no = io::equivalence_to_json(d, equivalent(d, s));
    CHECK(no["equivalent"] == false);
    CHECK(no["U"].is_null());
}

TEST_CASE("malformed JSON reports line and column") {
    const std::string text = "{\n  \"dim\": 2,\n  oops\n}";
    try {
        io::parse_json(text);
        FAIL("no exception");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(e.column() == 3);
    }
    CHECK_THROWS_AS(io::parse_json(""), ParseError);
}

TEST_CASE("schema validation") {
    const json good = io::measure_to_json(AtomicSFM(1, {{"a", SesquiForm(Matrix::Identity(1, 1))}}));
    CHECK_NOTHROW(io::measure_from_json(good));

    auto rejects = [](json doc) { CHECK_THROWS_AS(io::measure_from_json(doc), ParseError); };
    json d = good;
    d.erase("schema_version");
    rejects(d);
    d = good;
    d["schema_version"] = "2";
    rejects(d);
    d = good;
    d["schema_version"] = 1;
    rejects(d);
    d = good;
    d["dim"] = 0;
    rejects(d);
    d = good;
    d["dim"] = -1;
    rejects(d);
    d = good;
    d["dim"] = 2;
    rejects(d);
    d = good;
    d["atoms"] = json::array();
    rejects(d);
    d = good;
    d["atoms"].push_back(d["atoms"][0]);
    rejects(d);
    d = good;
    d["atoms"][0]["matrix"][0][0] = json::array({1.0});
    rejects(d);
    d = good;
    d["atoms"][0]["matrix"][0][0] = json::array({"1", 0.0});
    rejects(d);
    d = good;
    d["atoms"][0]["label"] = 3;
    rejects(d);
    rejects(json::array());

    const json dec = io::decomposition_to_json(decompose(io::measure_from_json(good)));
    json bad = dec;
    bad["parts"].erase(3);
    CHECK_THROWS_AS(io::decomposition_from_json(bad), ParseError);
    bad = dec;
    bad["parts"][3]["k"] = 2;
    CHECK_THROWS_AS(io::decomposition_from_json(bad), ParseError);

    json dil = io::dilation_to_json(build_dilation(decompose(io::measure_from_json(good))));
    dil["atoms"][0]["mu"] = -1.0;
    CHECK_THROWS_AS(io::dilation_from_json(dil), ParseError);
    dil = io::dilation_to_json(build_dilation(decompose(io::measure_from_json(good))));
    dil["atoms"][0]["blocks"][0]["k"] = 4;
    CHECK_THROWS_AS(io::dilation_from_json(dil), ParseError);
}

TEST_CASE("probability CSV") {
    phase::ProbabilityReport rep;
    rep.labels = {"arc0", "arc1"};
    rep.values = {cplx(0.1, 0.0), cplx(0.9, -1e-17)};
    const std::string csv = io::probabilities_csv(rep);
    CHECK(csv == "atom_label,re,im\narc0,0.10000000000000001,0\narc1,0.90000000000000002,-1.0000000000000001e-17\n");
}
