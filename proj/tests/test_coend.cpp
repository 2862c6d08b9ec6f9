#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mss/coend.hpp"

using namespace mss;

namespace {

// Monotone maps [a] x [b] -> [c], counted by brute force over all functions.
int grid_maps(int a, int b, int c) {
    int cells = (a + 1) * (b + 1), total = 1, count = 0;
    for (int i = 0; i < cells; ++i) total *= c + 1;
    for (int code = 0; code < total; ++code) {
        std::vector<int> v(cells);
        for (int i = 0, x = code; i < cells; ++i, x /= c + 1) v[i] = x % (c + 1);
        bool ok = true;
        for (int i = 0; i <= a; ++i)
            for (int j = 0; j <= b; ++j) {
                if (i < a && v[i * (b + 1) + j] > v[(i + 1) * (b + 1) + j]) ok = false;
                if (j < b && v[i * (b + 1) + j] > v[i * (b + 1) + j + 1]) ok = false;
            }
        count += ok;
    }
    return count;
}

FinSSet spine(int n, int maxDim) {
    FinSSet X(maxDim);
    for (int i = 0; i <= n; ++i) X.add(0, std::to_string(i), {});
    for (int i = 0; i < n; ++i) X.add(1, std::to_string(i) + std::to_string(i + 1), {nondeg(0, i + 1), nondeg(0, i)});
    return X;
}

FinSSet boundary2(int maxDim) { return *boundary(2, maxDim).sub; }

}  // namespace

TEST_CASE("big X over a point is a point") {
    for (Variant v : {Variant::tensor, Variant::odot}) {
        BigX X = big_x(std_shape(0, Flag::flat, Flag::flat, 0), v, 2, 2);
        CHECK(iso_check_decorated(X.value, std_shape(0, Flag::flat, Flag::flat, 2)));
    }
}

TEST_CASE("big X low dimensions agree with brute-force counts") {
    BigX X = big_x(std_shape(1, Flag::flat, Flag::flat, 1), Variant::tensor, 2, 2);
    CHECK(X.value.base->count(0) == grid_maps(0, 0, 1));
    // every 1-cell Δ¹ ⊗ Δ¹ -> Δ¹ is a monotone grid map; two of them are degenerate
    CHECK(X.value.base->count(1) == grid_maps(1, 1, 1) - X.value.base->count(0));
    CHECK_FALSE(check_mss(X.value));
}

TEST_CASE("pi after s is the identity") {
    std::vector<MSS> Cs{std_shape(1, Flag::flat, Flag::flat, 1), std_shape(2, Flag::flat, Flag::sharp, 2),
                        std_shape(1, Flag::sharp, Flag::flat, 1)};
    for (const auto& C : Cs)
        for (Variant v : {Variant::tensor, Variant::odot}) {
            BigX X = big_x(C, v, 2, 2);
            CHECK_FALSE(check_mss(X.value));
            CHECK(validate_decorated_map(X.s));
            CHECK(validate_decorated_map(X.pi));
            CHECK(is_injective_map(X.s.map));
            CHECK(maps_equal(compose_maps(X.s.map, X.pi.map), identity_map(X.base.base)));
        }
}

TEST_CASE("big X stabilizes in max-idx") {
    MSS C = std_shape(1, Flag::flat, Flag::flat, 1);
    for (Variant v : {Variant::tensor, Variant::odot}) {
        BigX a = big_x(C, v, 3, 3), b = big_x(C, v, 4, 3);
        CHECK(iso_check_decorated(a.value, b.value));
    }
    // below max-dim the explicit relation still yields a simplicial set with a section
    BigX lo = big_x(C, Variant::tensor, 1, 2);
    CHECK_FALSE(check_mss(lo.value));
    CHECK(maps_equal(compose_maps(lo.s.map, lo.pi.map), identity_map(lo.base.base)));
    CHECK_THROWS_AS(big_x(std_shape(2, Flag::flat, Flag::flat, 2), Variant::tensor, 1, 2), param_error);
}

TEST_CASE("truncated simplicial objects") {
    auto R = representable(2, 3);
    CHECK_FALSE(check_simplicial(R));
    // Hom([m],[2]) has C(m+3, m+1) elements
    CHECK(R.levels[0].base->count(0) == 3);
    CHECK(R.levels[3].base->count(0) == 15);
    CHECK_FALSE(check_simplicial(constant_object(MarkedSSet{share(standard_simplex(1, 3)), {1}}, 3)));
    auto bad = R;
    bad.set(coface(1, 0), 1, identity_map(R.levels[1].base));
    CHECK(check_simplicial(bad));

    auto dir = std::filesystem::temp_directory_path() / "mss_trunc_test";
    std::filesystem::remove_all(dir);
    write_truncated(R, dir.string());
    auto back = read_truncated(dir.string());
    CHECK(back.L == 3);
    CHECK_FALSE(check_simplicial(back));
    for (auto& [t, n] : monotone_maps_upto(3)) CHECK(maps_equal(back.act(t, n), R.act(t, n)));
    std::filesystem::remove_all(dir);
}

TEST_CASE("co-Yoneda") {
    for (int n = 0; n <= 3; ++n) {
        auto R = representable(n, 3);
        for (CoendSide side : {CoendSide::gl, CoendSide::gr}) {
            CHECK(iso_check_decorated(coend(R, Flag::flat, side, 3), std_shape(n, Flag::flat, Flag::flat, 3)));
            CHECK(iso_check_decorated(coend(R, Flag::sharp, side, 3), std_shape(n, Flag::flat, Flag::sharp, 3)));
        }
    }
    CHECK_THROWS_AS(coend(representable(1, 2), Flag::flat, CoendSide::gl, 3), param_error);
}

TEST_CASE("coend of a discrete object") {
    std::vector<FinSSet> Ss{standard_simplex(3, 3), spine(3, 3), boundary2(3)};
    for (const auto& S : Ss) {
        auto F = discrete_object(S, 3);
        MSS expect = with_flags(share(S), Flag::flat, Flag::sharp);
        CHECK(iso_check_decorated(coend(F, Flag::sharp, CoendSide::gl, 3), expect));
        CHECK(iso_check_decorated(coend(F, Flag::flat, CoendSide::gr, 3), with_flags(share(S), Flag::flat, Flag::flat)));
    }
    auto K = constant_object(MarkedSSet{share(standard_simplex(1, 3)), {1}}, 3);
    CHECK(iso_check_decorated(coend(K, Flag::sharp, CoendSide::gl, 3), std_shape(1, Flag::sharp, Flag::sharp, 3)));
}

TEST_CASE("levelwise functors") {
    MSS C2 = std_shape(2, Flag::flat, Flag::sharp, 2);
    CHECK(levelwise(C2, LevelFunctor::SqE, 2, 2).base->count(0) == grid_maps(2, 0, 2));
    MSS C1 = std_shape(1, Flag::flat, Flag::flat, 1);
    CHECK(levelwise(C1, LevelFunctor::Gl, 1, 2).base->count(0) == grid_maps(1, 0, 1));
    auto g0 = levelwise(C1, LevelFunctor::GlE, 0, 2);
    CHECK(g0.base->count(0) == 2);
    CHECK(g0.base->count(1) == 0);
    auto g1 = levelwise(std_shape(1, Flag::sharp, Flag::flat, 1), LevelFunctor::GlE, 0, 2);
    CHECK(g1.base->count(1) == 1);
    for (char m : g1.marked) CHECK(m);
    CHECK_THROWS_AS(parse_level_functor("Sqq"), param_error);
}

TEST_CASE("levelwise objects satisfy the simplicial identities") {
    MSS C = std_shape(1, Flag::sharp, Flag::flat, 1);
    for (auto fn : {LevelFunctor::Sq, LevelFunctor::SqE, LevelFunctor::Gl, LevelFunctor::GlE}) {
        auto F = levelwise_object(C, fn, 3, 2);
        CHECK_FALSE(check_simplicial(F));
    }
}
