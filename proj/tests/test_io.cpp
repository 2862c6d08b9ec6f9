#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mss/io.hpp"

using namespace mss;

TEST_CASE("decorated simplex round trip") {
    MSS m = decorate_named(share(standard_simplex(2, 3)), {"01"}, {"012"});
    json j = mss_to_json(m);
    CHECK(j["marked"] == json::array({"01"}));
    CHECK(j["faces"]["012"][2]["target"] == "01");
    MSS back = mss_from_json(json::parse(j.dump()));
    CHECK(iso_check_decorated(back, m));
    CHECK(mss_to_json(back) == j);
}

TEST_CASE("ids are disambiguated by dimension") {
    FinSSet X(2);
    X.add(0, "x", {});
    X.add(1, "x", {nondeg(0, 0), nondeg(0, 0)});
    auto j = sset_to_json(X);
    CHECK(j["simplices"]["0"] == json::array({"x@0"}));
    CHECK(j["simplices"]["1"] == json::array({"x@1"}));
    auto back = sset_from_json(j);
    CHECK(back.names[1][0] == "x");
    CHECK(back.faces[1][0][0] == nondeg(0, 0));
}

TEST_CASE("degenerate faces and map images") {
    // pinching an edge of a triangle
    auto D2 = share(standard_simplex(2, 3));
    auto D1 = share(standard_simplex(1, 3));
    auto f = *map_from_vertices(D2, D1, {0, 0, 1});
    json im = map_images_json(f);
    CHECK(im["01"]["word"] == json::array({0}));
    CHECK(im["01"]["target"] == "0");
    CHECK(im["012"]["word"] == json::array({0}));
    auto g = map_from_json(json{{"images", im}}, D2, D1);
    CHECK(maps_equal(f, g));
}

TEST_CASE("validation errors name the offending field") {
    json j = sset_to_json(standard_simplex(2, 3));
    json a = j;
    a["faces"].erase("012");
    CHECK_THROWS_WITH_AS(sset_from_json(a), doctest::Contains("$.faces.012"), validation_error);
    json b = j;
    b["faces"]["012"][0]["target"] = "nope";
    CHECK_THROWS_WITH_AS(sset_from_json(b), doctest::Contains("$.faces.012[0].target"), validation_error);
    json c = j;
    c["faces"]["012"][0] = j["faces"]["012"][1];
    CHECK_THROWS_AS(sset_from_json(c), validation_error);
    json d = j;
    d.erase("maxDim");
    CHECK_THROWS_WITH_AS(sset_from_json(d), doctest::Contains("$.maxDim"), validation_error);
    json e = mss_to_json(flat_mss(share(standard_simplex(2, 3))));
    e["thin"] = json::array({"01"});
    CHECK_THROWS_WITH_AS(mss_from_json(e), doctest::Contains("$.thin[0]"), validation_error);
    auto D1 = share(standard_simplex(1, 3));
    json m = json{{"images", json{{"0", json{{"target", "1"}}}, {"1", json{{"target", "0"}}}, {"01", json{{"target", "01"}}}}}};
    CHECK_THROWS_AS(map_from_json(m, D1, D1), validation_error);
}

TEST_CASE("lean triangles survive the round trip") {
    MSS m = decorate_named(share(standard_simplex(3, 3)), {}, {"012"}, std::vector<std::string>{"012", "123"});
    MSS back = mss_from_json(mss_to_json(m));
    REQUIRE(back.lean);
    CHECK(back.is_lean(nondeg(2, id_of(*back.base, 2, "123"))));
    CHECK(back.is_lean(nondeg(2, id_of(*back.base, 2, "012"))));
    CHECK_FALSE(back.is_lean(nondeg(2, id_of(*back.base, 2, "013"))));
}
