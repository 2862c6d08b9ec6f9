#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mss/anodyne.hpp"

using namespace mss;

namespace {

DecoratedMap generator_map(const std::string& name, int maxDim = 4) { return generator(name, maxDim).incl; }

std::size_t steps_of(const std::optional<Certificate>& c) { return c ? c->steps.size() : 0; }

void check_steps_are_pushouts(const Certificate& c) {
    MSS cur = c.start;
    for (const auto& st : c.steps) {
        Generator g = generator(st.generator, c.maxDim);
        SSetMap a = st.attach;
        a.dom = g.source().base;
        a.cod = cur.base;
        CHECK_FALSE(check_decorated_map(DecoratedMap{g.source(), cur, a}));
        cur = decorated_pushout(g, a, cur).P;
        CHECK_FALSE(check_mss(cur));
    }
}

MSS simplex_with(int n, const std::vector<std::string>& marked, const std::vector<std::string>& thin, int maxDim = 4) {
    return decorate_named(share(standard_simplex(n, maxDim)), marked, thin);
}

}  // namespace

TEST_CASE("generator catalog") {
    for (const auto& n : catalog_names("MS+S+MB+MSI+C+OP", 4)) {
        auto g = generator(n, 4);
        CHECK_MESSAGE(validate_decorated_map(g.incl), n);
        CHECK(is_injective_map(g.incl.map));
    }
    auto m2 = generator("M2");
    CHECK(m2.source().thin_ids().size() == 5);
    CHECK(m2.target().thin_ids().size() == 7);
    auto m1 = generator("M1(2,1)");
    CHECK(m1.source().base->count(2) == 0);
    CHECK(m1.target().thin_ids() == std::vector<int>{0});
    auto msi = generator("MSI(1)");
    CHECK(msi.source().thin_ids().size() == 3);
    CHECK_FALSE(msi.source().thin[id_of(*msi.source().base, 2, "023")]);
    CHECK(catalog_names("M1", 3) == std::vector<std::string>{"M1(2,1)", "M1(3,1)", "M1(3,2)"});
    CHECK_THROWS_AS(generator("M1(2,2)"), param_error);
    CHECK_THROWS_AS(generator("M1(1,0)"), param_error);
    CHECK_THROWS_AS(generator("MSI(3)"), param_error);
    CHECK_THROWS_AS(generator("Q7"), param_error);
    CHECK_THROWS_AS(generator("M2", 3), param_error);
    // the walking isomorphism has two nondegenerate simplices in each dimension
    auto J = detail::walking_iso(3);
    CHECK(J.counts() == std::vector<int>{2, 2, 2, 2});
}

TEST_CASE("decorated pushouts") {
    for (const auto& n : {"M1(3,1)", "M2", "MS1", "S3(3)", "OP3"}) {
        auto g = generator(n);
        auto dp = decorated_pushout(g, identity_map(g.source().base), g.source());
        CHECK(iso_check_decorated(dp.P, g.target()));
    }
    // filling a horn in a square whose lower triangle is missing
    auto sq = share(product(standard_simplex(1, 3), standard_simplex(1, 3), 3));
    int lower = -1;
    for (int t = 0; t < sq->count(2); ++t)
        if (sq->vertices(nondeg(2, t))[1] == id_of(*sq, 0, "(1,0)")) lower = t;
    REQUIRE(lower >= 0);
    auto sub = subcomplex_with_map(sq, [&](int d, int i) { return !(d == 2 && i == lower); });
    auto X = share(sub.X);
    auto h = horn(2, 1, 3);
    auto a = map_from_vertices(h.sub, X, sq->vertices(nondeg(2, lower)));
    REQUIRE(a);
    Generator g = generator("M1(2,1)", 3);
    g.incl.cod = flat_mss(g.target().base);
    auto dp = decorated_pushout(g, *a, flat_mss(X));
    // the horn omits the long edge, so the pushout glues in a second diagonal
    CHECK(dp.P.base->count(2) == X->count(2) + 1);
    CHECK(dp.P.base->count(1) == X->count(1) + 1);
    CHECK(dp.P.base->count(0) == X->count(0));
}

TEST_CASE("MSI(i) is a single M2 pushout") {
    CHECK(msi_pushout_witnesses(1) == std::vector<Mono>{{0, 1, 1, 2, 3}});
    CHECK(msi_pushout_witnesses(2) == std::vector<Mono>{{0, 1, 2, 2, 3}});
    for (int i = 1; i <= 2; ++i) {
        auto c = find_certificate(generator_map("MSI(" + std::to_string(i) + ")"), catalog("M2", 4), 4);
        REQUIRE(c);
        CHECK(c->steps.size() == 1);
        CHECK(c->steps[0].generator == "M2");
    }
}

TEST_CASE("certificate search on generator instances") {
    auto c1 = find_certificate(generator_map("M1(2,1)"), catalog("M1", 4), 4);
    CHECK(steps_of(c1) == 1);
    auto c2 = find_certificate(generator_map("M1(3,1)"), catalog("M1", 4), 4);
    REQUIRE(steps_of(c2) == 1);
    CHECK(c2->steps[0].generator == "M1(3,1)");
    // a flat horn has no M1 filler and no certificate
    auto flatHorn = horn(2, 1, 3);
    DecoratedMap f{flat_mss(flatHorn.sub), flat_mss(flatHorn.incl.cod), flatHorn.incl};
    CHECK_FALSE(find_certificate(f, catalog("MS", 3), 3, {4, 10000}));
    // the spine of the 3-simplex needs three triangle fillers and one 3-dimensional one
    auto D3 = share(standard_simplex(3, 4));
    auto spine = subcomplex_with_map(D3, [&](int d, int i) {
        const auto& n = D3->name(d, i);
        return d == 0 || n == "01" || n == "12" || n == "23";
    });
    auto f2 = DecoratedMap{flat_mss(share(spine.X)), simplex_with(3, {}, {"012", "123", "013"}), spine.incl};
    f2.dom.base = f2.map.dom;
    auto c3 = find_certificate(f2, catalog("M1", 4), 4);
    REQUIRE(c3);
    CHECK(c3->steps.size() == 4);
    CHECK(c3->steps.back().generator == "M1(3,1)");
    check_steps_are_pushouts(*c3);
}

TEST_CASE("certificates round-trip through JSON") {
    auto c = find_certificate(generator_map("MSI(2)"), catalog("MS", 4), 4);
    REQUIRE(c);
    json j = certificate_to_json(*c);
    auto back = certificate_from_json(json::parse(j.dump()));
    CHECK(certificate_to_json(back) == j);
    CHECK(iso_check_decorated(replay(back).result(), generator("MSI(2)").target()));
    json bad = j;
    bad["steps"][0]["generator"] = "M1(9,1)";
    CHECK_THROWS(certificate_from_json(bad));
    bad = j;
    bad["steps"][0]["attach"]["images"].erase("0");
    CHECK_THROWS_WITH_AS(certificate_from_json(bad), doctest::Contains("$.steps[0].attach.images.0"), validation_error);
}

TEST_CASE("forward-generated certificates are re-derived by search") {
    auto gens = catalog("MS", 4);
    int found = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        auto fw = random_forward(seed, gens, 3, 4);
        CHECK(exact_identification(replay(fw.cert).result(), identity_map(fw.incl.cod.base), fw.incl.cod));
        auto c = find_certificate(fw.incl, gens, 4, {static_cast<int>(fw.cert.steps.size()), 200000});
        found += c.has_value();
        CHECK_MESSAGE(c.has_value(), "seed " << seed);
        if (c) CHECK(c->steps.size() <= fw.cert.steps.size());
    }
    CHECK(found == 100);
}

TEST_CASE("inner pivot filtration") {
    MSS D2 = simplex_with(2, {}, {"012"});
    auto z1 = induced_subobject(D2, {{0, 1}, {1, 2}});
    auto r1 = pivot_filtration_inner(z1, 1, {0}, {2});
    REQUIRE(r1.cert.steps.size() == 1);
    CHECK(r1.cert.steps[0].generator == "M1(2,1)");

    MSS D3 = simplex_with(3, {}, {"023", "123"});
    auto z2 = induced_subobject(D3, {{1, 2, 3}, {0, 1, 2}});
    auto r2 = pivot_filtration_inner(z2, 2, {0}, {3});
    CHECK(r2.layers == std::vector<std::string>{"023", "0123"});
    CHECK(r2.cert.steps.size() == 2);
    check_steps_are_pushouts(r2.cert);
    CHECK(iso_check_decorated(replay(r2.cert).result(), D3));

    MSS bad = simplex_with(3, {}, {"123"});
    try {
        pivot_filtration_inner(induced_subobject(bad, {{1, 2, 3}, {0, 1, 2}}), 2, {0}, {3});
        FAIL("expected a refusal");
    } catch (const pivot_refusal& e) {
        CHECK(e.clause == 3);
    }
    try {
        pivot_filtration_inner(induced_subobject(D3, {{0, 1, 2}}), 2, {0}, {3});
        FAIL("expected a refusal");
    } catch (const pivot_refusal& e) {
        CHECK(e.clause == 2);
    }
    // marked uv with unmarked legs
    MSS m4 = simplex_with(2, {"02"}, {"012"});
    try {
        pivot_filtration_inner(induced_subobject(m4, {{0, 1}, {1, 2}}), 1, {0}, {2});
        FAIL("expected a refusal");
    } catch (const pivot_refusal& e) {
        CHECK(e.clause == 4);
    }
}

TEST_CASE("outer pivot filtration") {
    MSS D2 = with_flags(share(standard_simplex(2, 4)), Flag::sharp, Flag::sharp);
    auto z = induced_subobject(D2, {{0, 2}, {1, 2}});
    auto r = pivot_filtration_outer(z, {1});
    REQUIRE(r.cert.steps.size() == 1);
    CHECK(r.cert.steps[0].generator == "OP2");
    CHECK(certificate_to_json(pivot_filtration_outer(z, {1}).cert).dump() == certificate_to_json(r.cert).dump());

    MSS D3 = simplex_with(3, {"13", "23"}, {"013", "023"});
    auto r3 = pivot_filtration_outer(induced_subobject(D3, {{1, 2, 3}, {0, 2, 3}}), {1});
    check_steps_are_pushouts(r3.cert);
    CHECK(iso_check_decorated(replay(r3.cert).result(), D3));

    MSS bad = simplex_with(2, {"01", "02"}, {"012"});
    try {
        pivot_filtration_outer(induced_subobject(bad, {{0, 2}, {1, 2}}), {1});
        FAIL("expected a refusal");
    } catch (const pivot_refusal& e) {
        CHECK(e.clause == 4);
    }
}
