#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "kmwb/workbench.hpp"

using namespace kmwb;

TEST_CASE("rational parsing and canonical rendering") {
    CHECK(parse_rational("3/6") == make_rat(Int(1), Int(2)));
    CHECK(rational_str(parse_rational("3/6")) == "1/2");
    CHECK(rational_str(parse_rational("-4/2")) == "-2");
}

TEST_CASE("negative denominators normalize") {
    Rat r(-3, -6);
    r.canonicalize();
    CHECK(rational_str(r) == "1/2");
    CHECK_THROWS_AS(parse_rational("abc"), Error);
    CHECK_THROWS_AS(parse_rational(""), Error);
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
}

TEST_CASE("structure files round-trip") {
    KMStructure s({{make_rat(Int(1), Int(2)), {3, -1}}, {Rat(-2), {0, 4}}});
    Json j = structure_to_json(s, 2);
    CHECK(structure_from_json(j) == s);
    // canonical order: terms sorted by class
    CHECK(j["terms"][0]["K"] == Json::array({"0", "4"}));

    Json bad = j;
    bad["terms"][0]["K"] = Json::array({"0"});
    CHECK_THROWS_AS(structure_from_json(bad), Error);
    Json missing = j;
    missing.erase("rank");
    CHECK_THROWS_AS(structure_from_json(missing), Error);
}

TEST_CASE("series files round-trip and reject malformed parts") {
    IntersectionLattice diag(2, {1, 0, 0, -1});
    auto q = expand_structure(KMStructure({{Rat(1), {1, 0}}, {Rat(1), {-1, 0}}}), diag, 4);
    Json j = series_to_json(q);
    CHECK(series_from_json(j) == q);

    Json bad = j;
    bad["parts"][0]["monomials"][0]["c"] = "0";
    CHECK_THROWS_AS(series_from_json(bad), Error);

    Json mis = j;
    mis["parts"][0]["d"] = 99;
    CHECK_THROWS_AS(series_from_json(mis), Error);
}

TEST_CASE("json text parse errors map to the parse family") {
    try {
        parse_json_text("{ not json");
        FAIL("expected ParseError");
    } catch (const Error& e) {
        CHECK(e.exit_code() == 3);
    }
}

TEST_CASE("error families map to the frozen exit codes") {
    CHECK(verification_error("X", "x").exit_code() == 2);
    CHECK(parse_error("x").exit_code() == 3);
    CHECK(dimension_mismatch("x").exit_code() == 4);
    CHECK(unbounded_error("x").exit_code() == 5);
    CHECK(recovery_error("X", "x").exit_code() == 6);
}

TEST_CASE("candidate lists round-trip") {
    std::vector<LatticeClass> ks{{-2, 0}, {0, 0}, {2, 0}};
    CHECK(candidates_from_json(candidates_to_json(ks)) == ks);
}

TEST_CASE("raw families round-trip through json") {
    Json j;
    j["rank"] = 2;
    j["entries"] = Json::array();
    Json e;
    e["k"] = 2;
    e["j"] = 0;
    Json poly;
    poly["d"] = 2;
    poly["monomials"] = Json::array({Json{{"e", {2, 0}}, {"c", "4"}}});
    e["poly"] = poly;
    j["entries"].push_back(e);
    auto fam = raw_family_from_json(j);
    CHECK(fam.entries.size() == 1);
    CHECK(fam.entries.at({2, 0}).monomials.at(Exponents{2, 0}) == 4);

    j["entries"].push_back(e);  // duplicate (k, j)
    CHECK_THROWS_AS(raw_family_from_json(j), Error);
}

TEST_CASE("descriptor parsing validates all blocks") {
    Json j;
    j["rank"] = 2;
    j["Q"] = {1, 0, 0, -1};
    j["b_plus"] = 3;
    j["w2"] = {1, 1};
    j["KX"] = {3, 1};
    j["cone"] = Json{{"generators", Json::array({Json::array({"1", "1"}),
                                                 Json::array({"1", "-1"})})}};
    auto d = descriptor_from_json(j);
    CHECK(d.lattice.rank() == 2);
    REQUIRE(d.cone);
    CHECK(d.cone->generators().size() == 2);

    Json even = j;
    even["b_plus"] = 4;
    CHECK_THROWS_AS(descriptor_from_json(even), Error);

    Json parity = j;
    parity["KX"] = {2, 1};
    CHECK_THROWS_AS(descriptor_from_json(parity), Error);

    Json degen = j;
    degen["KX"] = {1, 1};
    degen["ns_basis"] = Json::array({Json::array({"1", "1"})});  // Q|span = (0)
    CHECK_THROWS_AS(descriptor_from_json(degen), Error);
}

TEST_CASE("serialization is canonical and byte-stable") {
    IntersectionLattice diag(2, {1, 0, 0, -1});
    auto q = expand_structure(KMStructure({{Rat(1), {1, 0}}, {Rat(1), {-1, 0}}}), diag, 6);
    CHECK(dump_json(series_to_json(q)) == dump_json(series_to_json(series_from_json(series_to_json(q)))));
}
