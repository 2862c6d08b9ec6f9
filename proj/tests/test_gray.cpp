#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mss/gray.hpp"

using namespace mss;

namespace {

MSS flat(int n) { return std_shape(n, Flag::flat, Flag::flat); }

int find_named(const FinSSet& X, int d, const std::string& nm) { return id_of(X, d, nm); }

// Oracle for flat [1]x[1]: evaluates the defining clauses on vertex coordinates.
std::vector<std::string> oracle_thin_square() {
    std::vector<std::string> out;
    std::vector<std::pair<int, int>> pts{{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    for (auto p : pts)
        for (auto q : pts)
            for (auto r : pts) {
                bool chain = p != q && q != r && p.first <= q.first && q.first <= r.first && p.second <= q.second &&
                             q.second <= r.second;
                if (!chain) continue;
                bool thinA = !(p.first != q.first && q.first != r.first);
                bool thinB = !(p.second != q.second && q.second != r.second);
                bool b01 = p.second == q.second;
                bool a12 = q.first == r.first;
                if (thinA && thinB && (b01 || a12)) {
                    auto s = [](std::pair<int, int> v) { return "(" + std::to_string(v.first) + "," + std::to_string(v.second) + ")"; };
                    out.push_back(s(p) + s(q) + s(r));
                }
            }
    return out;
}

}  // namespace

TEST_CASE("Gray tensor of flat intervals") {
    MSS T = tensor(flat(1), flat(1), Variant::tensor);
    std::vector<std::string> thin;
    for (int t : T.thin_ids()) thin.push_back(T.base->name(2, t));
    CHECK(thin == oracle_thin_square());
    CHECK(thin == std::vector<std::string>{"(0,0)(1,0)(1,1)"});
    CHECK(T.marked_ids().empty());
}

TEST_CASE("globular product marking") {
    MSS T = tensor(flat(1), std_shape(1, Flag::flat, Flag::sharp), Variant::odot);
    std::vector<std::string> marked;
    for (int e : T.marked_ids()) marked.push_back(T.base->name(1, e));
    CHECK(marked == std::vector<std::string>{"(0,0)(0,1)", "(1,0)(1,1)"});
}

TEST_CASE("boxed tensor differs on the pushout example") {
    auto D2 = share(standard_simplex(2));
    MSS A = decorate_named(D2, {"12"}, {"012"});
    MSS B = std_shape(1, Flag::flat, Flag::sharp);
    MSS G = tensor(A, B, Variant::tensor);
    MSS H = tensor(A, B, Variant::boxtensor);
    int t = find_named(*G.base, 2, "(0,0)(1,1)(2,1)");
    CHECK(G.thin[t]);
    CHECK_FALSE(H.thin[t]);
    CHECK(G.marked == H.marked);
    for (int i = 0; i < G.base->count(2); ++i)
        if (H.thin[i]) CHECK(G.thin[i]);
}

TEST_CASE("tensor unit") {
    for (int n = 0; n <= 2; ++n)
        for (Flag m : {Flag::flat, Flag::sharp})
            for (Flag s : {Flag::flat, Flag::sharp}) {
                MSS A = std_shape(n, m, s);
                for (Variant v : {Variant::tensor, Variant::odot}) {
                    MSS L = tensor(std_shape(0, Flag::flat, Flag::flat), A, v);
                    MSS R = tensor(A, std_shape(0, Flag::flat, Flag::flat), v);
                    CHECK(iso_check_decorated(A, R).has_value());
                    if (v == Variant::tensor) CHECK(iso_check_decorated(A, L).has_value());
                }
            }
}

TEST_CASE("pushout products") {
    FinSSet e(4);
    MSS empty = flat_mss(share(e));
    MSS pt = flat(0);
    DecoratedMap f0{empty, pt, SSetMap{empty.base, pt.base, std::vector<std::vector<Simplex>>(5)}};
    auto bd = boundary(1);
    MSS d1 = flat(1);
    d1.base = bd.incl.cod;
    DecoratedMap g{flat_mss(bd.sub), d1, bd.incl};
    auto pp = pushout_product(f0, g, Variant::tensor);
    CHECK(validate_decorated_map(pp));
    CHECK(pp.dom.base->counts() == std::vector<int>{2});
    CHECK(pp.cod.base->counts() == std::vector<int>{2, 1});

    auto sq = pushout_product(g, g, Variant::tensor);
    CHECK(sq.dom.base->counts() == std::vector<int>{4, 4});
    CHECK(sq.cod.base->counts() == std::vector<int>{4, 5, 2});
    CHECK(validate_decorated_map(sq));

    MSS p0 = std_shape(0, Flag::sharp, Flag::sharp);
    MSS p1 = std_shape(1, Flag::sharp, Flag::sharp);
    auto m4 = *map_from_vertices(p0.base, p1.base, {0});
    auto pp4 = pushout_product(g, DecoratedMap{p0, p1, m4}, Variant::tensor);
    CHECK(pp4.dom.base->counts() == std::vector<int>{4, 3});
    CHECK(validate_decorated_map(pp4));
}

TEST_CASE("mapping objects") {
    MSS X = std_shape(2, Flag::flat, Flag::sharp);
    for (HomKind k : {HomKind::gr, HomKind::opgr, HomKind::gl}) {
        auto F = mapping_object(k, flat(0), X, 3);
        CHECK(iso_check_decorated(F.value, X).has_value());
    }
    // in the point (*) A every edge is marked, so only marked edges of X survive
    auto F = mapping_object(HomKind::opgl, flat(0), X, 3);
    CHECK(F.value.base->counts() == std::vector<int>{3});
    MSS Xs = std_shape(2, Flag::sharp, Flag::sharp);
    CHECK(iso_check_decorated(mapping_object(HomKind::opgl, flat(0), Xs, 3).value, Xs).has_value());
    auto G = mapping_object(HomKind::opgr, flat(1), std_shape(1, Flag::sharp, Flag::sharp), 2);
    CHECK(G.value.base->count(0) == 3);
}

TEST_CASE("mapping object adjunction on a sample") {
    std::vector<MSS> shapes{flat(1), std_shape(1, Flag::sharp, Flag::sharp), std_shape(2, Flag::flat, Flag::sharp),
                            decorate_named(share(standard_simplex(2)), {"12"}, {"012"})};
    for (HomKind k : {HomKind::gr, HomKind::opgr, HomKind::gl, HomKind::opgl})
        for (const auto& X : shapes)
            for (const auto& D : shapes) {
                auto F = mapping_object(k, X, D, 3);
                for (const auto& A : shapes) {
                    Variant v = hom_variant(k, false);
                    MSS AX = probe_on_left(k) ? tensor(A, X, v, 5) : tensor(X, A, v, 5);
                    CHECK(count_maps(AX, D) == count_maps(A, F.value));
                }
            }
}

TEST_CASE("universal subcategory conditions") {
    MSS C = flat(1);
    ProductResult pr = product_with_components(*C.base, *C.base, 4);
    auto P = share(pr.P);
    auto proj = *map_from_vertices(P, C.base, {0, 0, 1, 1});
    CHECK(universal_subcategory_filter(C, C, C, proj));
    // identify the square with Delta^2 so that the composite triangle lands on 012
    MSS D2 = flat(2);
    auto bad = *map_from_vertices(P, D2.base, {0, 0, 1, 2});
    CHECK_FALSE(universal_subcategory_filter(C, C, D2, bad));
    MSS T = tensor(C, C, Variant::tensor);
    auto fold = *map_from_vertices(P, D2.base, {0, 1, 1, 2});
    MSS D2s = std_shape(2, Flag::flat, Flag::sharp);
    CHECK(validate_decorated_map(DecoratedMap{T, D2s, fold}));
    CHECK(universal_subcategory_filter(C, C, D2s, fold));
}
