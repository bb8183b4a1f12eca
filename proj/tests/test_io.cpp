#include <doctest.h>

#include "ppmsync/error.hpp"
#include "ppmsync/io.hpp"
#include "ppmsync/tables.hpp"

using namespace ppmsync;

TEST_CASE("Dss and OOC JSON round trip")
{
    const auto d = construct_index2(26);
    const auto j = to_json(d);
    CHECK(j.dump() == R"({"n":26,"d0":[0,6,11,16,21],"d1":[1,2,3,4,5]})");
    CHECK(dss_from_json(j) == d);
    CHECK_THROWS_AS(dss_from_json(Json{{"n", 8}}), InvalidArgument);
    CHECK_THROWS_AS(dss_from_json(Json{{"n", "x"}, {"d0", {1}}, {"d1", {2}}}), InvalidArgument);

    const OpticalOrthogonalCode code(16, 3, 1, {{0, 1, 3}, {0, 4, 9}});
    const auto oj = to_json(code);
    CHECK(oj.dump() == R"({"v":16,"k":3,"lambda":1,"codewords":[[0,1,3],[0,4,9]]})");
    CHECK(ooc_from_json(oj).codewords() == code.codewords());
}

TEST_CASE("report JSON carries every field")
{
    const auto j = to_json(verify(construct_index2(26)));
    for (const auto* key : {"index", "perfect", "regular", "redundancy", "redundancy_rate", "levenshtein_floor",
                            "meets_levenshtein", "meets_levenshtein_floor"}) {
        CHECK(j.contains(key));
    }
    CHECK(j["redundancy_rate"]["num"] == 5);
    CHECK(j["redundancy_rate"]["den"] == 13);
}

TEST_CASE("payload descriptions")
{
    CHECK(payload_from_json(Json{{"scheme", "ppm"}, {"q", 4}}).size() == 4);
    CHECK(payload_from_json(Json{{"scheme", "MPPM"}, {"q", 16}, {"k", 2}}).size() == 120);
    CHECK(payload_from_json(Json{{"catalog", "MPPM-32-7-3"}}).size() == 32);
    CHECK(payload_from_json(Json{{"catalog", "GEPPM-16-16-4"}, {"m", 3}}).size() == 3);
    CHECK(payload_from_json(Json{{"ooc", to_json(OpticalOrthogonalCode(8, 3, 1, {{0, 1, 3}}))}}).size() == 8);
    CHECK(payload_from_json(Json{{"length", 5}, {"words", {{0, 1}, {2, 3}}}}).weight() == 2);
    CHECK_THROWS_AS(payload_from_json(Json{{"catalog", "AEPPM-16-11-5"}}), InvalidArgument);
    CHECK_THROWS_AS(payload_from_json(Json{{"scheme", "EPPM"}, {"q", 11}}), InvalidArgument);
    CHECK_THROWS_AS(payload_from_json(Json{{"nothing", 1}}), InvalidArgument);
    CHECK_THROWS_AS(payload_from_json(Json{{"catalog", "zzz"}}), NotFound);
}

TEST_CASE("codebook export")
{
    const auto text = export_codebook(expand_orbits(OpticalOrthogonalCode(8, 3, 1, {{0, 1, 3}})));
    CHECK(text.rfind("8 3 8 4\n11010000\n01101000\n", 0) == 0);
}

TEST_CASE("self-synchronizing code JSON")
{
    auto code = combine(construct_index1(8), ppm_codebook(4));
    code.certify();
    const auto j = to_json(code);
    CHECK(j["free_positions"] == Json::array({0, 4, 6, 7}));
    CHECK(j["words"][0] == "11100000");
    CHECK(j["certificate"]["certified"] == true);
    CHECK(j["certificate"]["restricted_index"].get<int>() >= 1);
}

TEST_CASE("tables regenerate to the published values")
{
    CHECK(compare_tables(table1_csv(regenerate_table1()), golden_table1_csv()).empty());
    CHECK(compare_tables(table3_csv(regenerate_table3()), golden_table3_csv()).empty());

    auto broken = golden_table1_csv();
    broken.replace(broken.find("257,64"), 3, "263");
    const auto problems = compare_tables(table1_csv(regenerate_table1()), broken);
    REQUIRE(problems.size() == 1);
    CHECK(problems.front().rfind("row 2:", 0) == 0);
    CHECK_FALSE(compare_tables("a\n", "b\n").empty());
    CHECK(compare_tables("h\n1\n", "h\n1\n2\n").size() == 1);
}
