#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mss/decor.hpp"

using namespace mss;

namespace {

std::vector<MSS> square_variants() {
    auto S = share(product(standard_simplex(1), standard_simplex(1)));
    std::vector<MSS> out;
    for (int em = 0; em < (1 << S->count(1)); em += 5)
        for (int tm = 0; tm < (1 << S->count(2)); ++tm) {
            MSS m = flat_mss(S);
            for (int e = 0; e < S->count(1); ++e) m.marked[e] = em >> e & 1;
            for (int t = 0; t < S->count(2); ++t) m.thin[t] = tm >> t & 1;
            out.push_back(m);
        }
    return out;
}

}  // namespace

TEST_CASE("decorate validates ids") {
    auto D2 = share(standard_simplex(2));
    auto m = decorate(D2, {}, {0});
    CHECK(m.thin[0]);
    CHECK_THROWS_AS(decorate(D2, {7}, {}), validation_error);
    auto mb = decorate(D2, {}, {}, std::vector<int>{0});
    CHECK(mb.lean.has_value());
    CHECK(mb.is_lean(nondeg(2, 0)));
    CHECK_FALSE(mb.is_thin(nondeg(2, 0)));
    CHECK_THROWS_AS(decorate(D2, {}, {0}, std::vector<int>{}), validation_error);
}

TEST_CASE("standard shapes") {
    CHECK(std_shape(1, Flag::sharp, Flag::sharp).marked_ids().size() == 1);
    CHECK(std_shape(3, Flag::flat, Flag::sharp).thin_ids().size() == 4);
    CHECK(std_shape(2, Flag::flat, Flag::flat).thin_ids().empty());
}

TEST_CASE("core and L_sharp") {
    auto c1 = core_leq1(std_shape(2, Flag::flat, Flag::sharp));
    CHECK(c1.base->counts() == std::vector<int>{3, 3, 1});
    auto c2 = core_leq1(std_shape(2, Flag::flat, Flag::flat));
    CHECK(c2.base->counts() == std::vector<int>{3, 3});
    auto c3 = core_leq1(std_shape(1, Flag::sharp, Flag::sharp));
    CHECK(c3.marked == std::vector<char>{1});
    auto back = core_leq1(l_sharp(c2));
    CHECK(*back.base == *c2.base);
    CHECK(back.marked == c2.marked);
    auto ls = l_sharp(MarkedSSet{share(standard_simplex(2)), {0, 0, 0}});
    CHECK(ls.thin_ids().size() == 1);
}

TEST_CASE("core adjunction by enumeration") {
    std::vector<MarkedSSet> Ks;
    for (int n = 0; n <= 2; ++n)
        for (Flag f : {Flag::flat, Flag::sharp}) {
            auto m = std_shape(n, f, Flag::flat);
            Ks.push_back(MarkedSSet{m.base, m.marked});
        }
    std::vector<MSS> Xs = square_variants();
    for (Flag a : {Flag::flat, Flag::sharp})
        for (Flag b : {Flag::flat, Flag::sharp}) Xs.push_back(std_shape(2, a, b));
    for (const auto& K : Ks)
        for (const auto& X : Xs) {
            auto core = core_leq1(X);
            long lhs = count_maps(as_mss_flat_scaling(K), l_sharp(core));
            long rhs = count_maps(l_sharp(K), X);
            CHECK(lhs == rhs);
        }
}

TEST_CASE("overline") {
    auto D2 = share(standard_simplex(2));
    CHECK(overline(std_shape(2, Flag::flat, Flag::sharp)).thin_ids().empty());
    auto a = decorate_named(D2, {"01"}, {"012"});
    CHECK(overline(a).thin_ids() == std::vector<int>{0});
    auto b = decorate_named(D2, {"02"}, {"012"});
    CHECK(overline(b).thin_ids().empty());
    for (const auto& X : square_variants()) CHECK(overline(overline(X)) == overline(X));
}

TEST_CASE("idle maps") {
    CHECK(is_idle({0, 0, 1, 2}));
    CHECK_FALSE(is_idle({0, 2}));
    CHECK(is_idle({1, 2}));
    CHECK_THROWS_AS(is_idle({1, 0}), param_error);
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; b <= 3; ++b)
            for (int c = 0; c <= 3; ++c)
                for (const auto& f : monotone_maps(a, b))
                    for (const auto& g : monotone_maps(b, c))
                        if (is_idle(f) && is_idle(g)) CHECK(is_idle(compose(g, f)));
}

TEST_CASE("decorated map validation") {
    auto s = std_shape(1, Flag::sharp, Flag::sharp);
    auto fl = std_shape(1, Flag::flat, Flag::sharp);
    fl.base = s.base;
    CHECK(validate_decorated_map(decorated_identity(s)));
    CHECK_FALSE(validate_decorated_map(DecoratedMap{s, fl, identity_map(s.base)}));
    auto t = std_shape(2, Flag::flat, Flag::flat);
    auto u = std_shape(2, Flag::flat, Flag::sharp);
    u.base = t.base;
    CHECK(validate_decorated_map(DecoratedMap{t, u, identity_map(t.base)}));
    CHECK_FALSE(validate_decorated_map(DecoratedMap{u, t, identity_map(t.base)}));
}

TEST_CASE("hom enumeration against vertex brute force") {
    // maps of nerves of finite orders are the monotone vertex maps
    for (int n = 0; n <= 3; ++n)
        for (int k = 0; k <= 3; ++k) {
            auto A = std_shape(n, Flag::flat, Flag::flat);
            auto B = std_shape(k, Flag::flat, Flag::flat);
            CHECK(count_maps(A, B) == static_cast<long>(monotone_maps(n, k).size()));
        }
    // sharp-marked source edges must go to degenerate edges of a flat target
    CHECK(count_maps(std_shape(1, Flag::sharp, Flag::flat), std_shape(2, Flag::flat, Flag::flat)) == 3);
    // thin source triangle into flat Delta^2: only degenerate images
    CHECK(count_maps(std_shape(2, Flag::flat, Flag::sharp), std_shape(2, Flag::flat, Flag::flat)) == 9);
}
