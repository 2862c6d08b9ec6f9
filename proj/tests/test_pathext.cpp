#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mss/pathext.hpp"

using namespace mss;

namespace {

// Paths as words over {h, v}; at the first difference the path taking h is the bigger one.
std::vector<std::string> oracle_words(int n, int k) {
    std::vector<std::string> out;
    for (unsigned m = 0; m < (1u << (n + k)); ++m)
        if (__builtin_popcount(m) == k) {
            std::string w;
            for (int t = 0; t < n + k; ++t) w += (m >> t & 1) ? 'v' : 'h';
            out.push_back(w);
        }
    std::sort(out.begin(), out.end(), [](const std::string& a, const std::string& b) { return a > b; });
    return out;
}

std::string word_of_path(const Path& p) {
    std::string w;
    for (int i = 1; i <= p.length(); ++i) w += p[i].first > p[i - 1].first ? 'h' : 'v';
    return w;
}

}  // namespace

TEST_CASE("path enumeration matches the word oracle") {
    for (int n = 0; n <= 4; ++n)
        for (int k = 0; k <= 4; ++k) {
            auto P = enumerate_paths(n, k);
            std::vector<std::string> got;
            for (const auto& p : P) {
                CHECK(is_path(n, k, p.pts));
                got.push_back(word_of_path(p));
            }
            CHECK(got == oracle_words(n, k));
        }
    auto P11 = enumerate_paths(1, 1);
    REQUIRE(P11.size() == 2);
    CHECK(P11[0].str() == "(0,0)(0,1)(1,1)");
    CHECK(P11[1].str() == "(0,0)(1,0)(1,1)");
    CHECK(enumerate_paths(3, 0).size() == 1);
    auto P21 = enumerate_paths(2, 1);
    CHECK(P21.size() == 3);
    CHECK(P21.back().str() == "(0,0)(1,0)(2,0)(2,1)");
}

TEST_CASE("path order is total") {
    for (int n = 0; n <= 4; ++n)
        for (int k = 0; k <= 4; ++k) {
            auto P = enumerate_paths(n, k);
            for (const auto& p : P)
                for (const auto& q : P) {
                    if (p == q) continue;
                    std::size_t s = 0;
                    while (p[s] == q[s]) ++s;
                    CHECK(p[s].first != q[s].first);
                    CHECK(path_less(p, q) != path_less(q, p));
                }
        }
}

TEST_CASE("extension map formula") {
    Path g{1, 1, {{0, 0}, {1, 0}, {1, 1}}};
    for (int j = 0; j <= 1; ++j) {
        CHECK(extend(g, 0, j) == Pt{0, j});
        CHECK(extend(g, 1, j) == Pt{1, j});
        CHECK(extend(g, 2, j) == Pt{1, 1});
    }
    auto e = extension_map(g);
    CHECK(validate_decorated_map(e.odot));
    CHECK(validate_decorated_map(e.tensor));
    // k = 0: the identity
    auto id = extension_map(enumerate_paths(2, 0)[0]);
    CHECK(maps_equal(id.odot.map, identity_map(id.odot.dom.base)));
}

TEST_CASE("extension maps are decorated for both products") {
    for (int n = 0; n <= 3; ++n)
        for (int k = 0; k <= 3; ++k)
            for (const auto& g : enumerate_paths(n, k)) {
                auto e = extension_map(g, 2);
                CHECK(validate_decorated_map(e.odot));
                CHECK(validate_decorated_map(e.tensor));
            }
}

TEST_CASE("stability square at the simplicial level") {
    // compose the actual simplicial maps and compare with E_gamma' after s (x) id
    for (auto [n, k] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}}) {
        for (const auto& g : enumerate_paths(n, k))
            for (const auto& phi : enumerate_paths(n + k, k)) {
                auto Eg = extension_map(g, 3);
                auto Ep = extension_map(phi, 3);
                auto lhs = compose_decorated(Ep.odot, Eg.odot);
                CHECK(validate_decorated_map(lhs));
                std::vector<Pt> theta;
                for (int i = 0; i <= n + 2 * k; ++i) theta.push_back(extend(g, phi[i].first, phi[i].second));
                auto [s, mono] = epi_mono([&] {
                    Mono code;
                    for (auto [a, b] : theta) code.push_back(a * 100 + b);
                    return code;
                }());
                std::vector<Pt> img;
                for (int c : mono) img.push_back({c / 100, c % 100});
                REQUIRE(is_path(n, k, img));
                Path gp{n, k, img};
                CHECK_FALSE(path_less(g, gp));
                std::vector<int> vm;
                for (int i = 0; i <= n + 2 * k; ++i)
                    for (int j = 0; j <= k; ++j) vm.push_back(s[i] * (k + 1) + j);
                auto sid = map_from_vertices(Ep.odot.dom.base, Eg.odot.dom.base, vm);
                REQUIRE(sid.has_value());
                auto rhs = compose_maps(*sid, extension_map(gp, 3).odot.map);
                CHECK(maps_equal(lhs.map, rhs));
            }
    }
}

TEST_CASE("lemma verifiers on small grids") {
    auto s11 = verify_extension_stability(1, 1);
    CHECK(s11.instances == 6);
    CHECK(s11.ok());
    auto s22 = verify_extension_stability(2, 2, 2);
    CHECK(s22.instances == 90);
    CHECK(s22.ok());
    auto s0 = verify_extension_stability(0, 2);
    CHECK(s0.instances == 6);
    CHECK(s0.ok());

    auto p11 = verify_postextension(1, 1);
    CHECK(p11.ok());
    CHECK(p11.instances == 2 * (3 + 3 + 1 + 1));
    auto p30 = verify_postextension(3, 0);
    CHECK(p30.ok());

    auto f11 = verify_faces_of_extensions(1, 1);
    CHECK(f11.ok());
    CHECK(f11.instances > 0);
    auto f21 = verify_faces_of_extensions(2, 1, 3);
    CHECK(f21.ok());

    for (auto [n, k] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}}) {
        auto b = verify_noboundaries(n, k);
        CHECK(b.ok());
        CHECK(b.instances > 0);
        CHECK(b.skipped > 0);
    }
    auto vac = verify_noboundaries(2, 0);
    CHECK(vac.instances == 0);
    CHECK(vac.ok());
}

TEST_CASE("verifier reports are independent of the worker count") {
    auto a = verify_faces_of_extensions(2, 2, 1).to_json().dump();
    auto b = verify_faces_of_extensions(2, 2, 4).to_json().dump();
    CHECK(a == b);
    CHECK_THROWS_AS(verify_extension_stability(4, 4), param_error);
}
