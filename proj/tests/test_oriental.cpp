#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mss/oriental.hpp"

using namespace mss;

namespace {

struct Tuple {
    std::vector<int> x;
    std::vector<std::vector<unsigned>> S;
};

unsigned between(int a, int b) {
    unsigned m = 0;
    for (int t = a; t <= b; ++t) m |= 1u << t;
    return m;
}

bool endpoints(unsigned S, int a, int b) {
    if (!(S >> a & 1) || !(S >> b & 1)) return false;
    return (S & ~between(a, b)) == 0;
}

// Every tuple (x, S) in O^n of degree m satisfying the cocycle inequality, by exhaustive search.
std::vector<Tuple> oracle_simplices(int n, int m) {
    std::vector<Tuple> out;
    std::vector<int> x(m + 1);
    std::function<void(int)> rx = [&](int i) {
        if (i == m + 1) {
            std::vector<std::pair<int, int>> prs;
            for (int a = 0; a <= m; ++a)
                for (int b = a + 1; b <= m; ++b) prs.push_back({a, b});
            std::vector<std::vector<unsigned>> S(m + 1, std::vector<unsigned>(m + 1, 0));
            std::function<void(std::size_t)> rs = [&](std::size_t p) {
                if (p == prs.size()) {
                    for (int a = 0; a <= m; ++a)
                        for (int b = a + 1; b <= m; ++b)
                            for (int c = b + 1; c <= m; ++c)
                                if (S[a][c] & ~(S[a][b] | S[b][c])) return;
                    out.push_back({x, S});
                    return;
                }
                auto [a, b] = prs[p];
                for (unsigned T = 1; T < (1u << (n + 1)); ++T)
                    if (endpoints(T, x[a], x[b])) {
                        S[a][b] = T;
                        rs(p + 1);
                    }
            };
            rs(0);
            return;
        }
        for (int v = i ? x[i - 1] : 0; v <= n; ++v) {
            x[i] = v;
            rx(i + 1);
        }
    };
    rx(0);
    return out;
}

bool oracle_degenerate(const Tuple& t) {
    int m = static_cast<int>(t.x.size()) - 1;
    for (int s = 0; s < m; ++s) {
        if (t.x[s] != t.x[s + 1] || t.S[s][s + 1] != (1u << t.x[s])) continue;
        bool same = true;
        for (int a = 0; a < s; ++a) same = same && t.S[a][s] == t.S[a][s + 1];
        for (int b = s + 2; b <= m; ++b) same = same && t.S[s][b] == t.S[s + 1][b];
        if (same) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("oriental simplex counts match exhaustive enumeration") {
    for (int n = 0; n <= 3; ++n) {
        Oriental O = oriental(n, 3);
        for (int m = 0; m <= 3; ++m) {
            int nd = 0;
            for (const auto& t : oracle_simplices(n, m)) nd += !oracle_degenerate(t);
            CHECK(O.value().base->count(m) == nd);
        }
        CHECK_FALSE(check_mss(O.value()));
    }
    auto C = oriental_category(3);
    CHECK(C->sets[0][3].size() == 4);
    for (int i = 0; i <= 3; ++i)
        for (int j = i + 1; j <= 3; ++j) CHECK(C->sets[i][j].size() == (1u << (j - i - 1)));
}

TEST_CASE("oriental cocycle condition is closed under faces") {
    for (int n = 0; n <= 3; ++n)
        for (int m = 1; m <= 3; ++m)
            for (const auto& t : oracle_simplices(n, m))
                for (int f = 0; f <= m; ++f) {
                    Tuple d;
                    for (int a = 0; a <= m; ++a)
                        if (a != f) d.x.push_back(t.x[a]);
                    d.S.assign(m, std::vector<unsigned>(m, 0));
                    for (int a = 0, a2 = 0; a <= m; ++a) {
                        if (a == f) continue;
                        for (int b = a + 1, b2 = a2 + 1; b <= m; ++b) {
                            if (b == f) continue;
                            d.S[a2][b2++] = t.S[a][b];
                        }
                        ++a2;
                    }
                    bool ok = true;
                    for (int a = 0; a < m; ++a)
                        for (int b = a + 1; b < m; ++b)
                            for (int c = b + 1; c < m; ++c) ok = ok && !(d.S[a][c] & ~(d.S[a][b] | d.S[b][c]));
                    CHECK(ok);
                }
}

TEST_CASE("oriental decorations") {
    Oriental O = oriental(2, 3);
    const MSS& X = O.value();
    auto thin = O.locate({0, 1, 2}, {{0, 0b011, 0b111}, {0, 0, 0b110}, {0, 0, 0}});
    auto lax = O.locate({0, 1, 2}, {{0, 0b011, 0b101}, {0, 0, 0b110}, {0, 0, 0}});
    REQUIRE(thin.nondegenerate());
    REQUIRE(lax.nondegenerate());
    CHECK(X.is_thin(thin));
    CHECK_FALSE(X.is_thin(lax));
    CHECK(X.base->name(2, lax.index) == "012:{01}/{02}/{12}");
    // a 2-cell with a repeated vertex is a genuine triangle
    auto cell = O.locate({0, 0, 2}, {{0, 0b001, 0b101}, {0, 0, 0b111}, {0, 0, 0}});
    CHECK(cell.nondegenerate());
    CHECK_FALSE(X.is_thin(cell));
    for (int e = 0; e < X.base->count(1); ++e) CHECK_FALSE(X.marked[e]);

    Oriental O1 = oriental(1, 3);
    CHECK(iso_check_decorated(O1.value(), std_shape(1, Flag::flat, Flag::flat, 3)));
}

TEST_CASE("the poset model D^n") {
    CHECK(dn_elements(2).size() == 12);
    for (int n = 0; n <= 4; ++n) CHECK(dn_elements(n).size() == static_cast<std::size_t>((n + 1) << n));
    Dn D = dn(2, 3);
    CHECK_FALSE(check_mss(D.value));
    auto e = D.value.base->find("(0;01)(0;012)");
    REQUIRE(e.has_value());
    CHECK(D.value.marked[e->second]);
    // every chain satisfies the S_0 condition and nothing else is missing
    long chains = 0;
    auto E = dn_elements(2);
    for (std::size_t a = 0; a < E.size(); ++a)
        for (std::size_t b = 0; b < E.size(); ++b) {
            if (a == b || E[a].i > E[b].i || (E[a].S & ~E[b].S)) continue;
            chains += E[a].S >> E[b].i & 1;
        }
    CHECK(D.value.base->count(1) == chains);

    CHECK(inclusion_idle(0b101, 0b101));
    CHECK(inclusion_idle(0b011, 0b111));
    CHECK_FALSE(inclusion_idle(0b101, 0b111));
    CHECK(inclusion_idle(0b010, 0b111));
}

TEST_CASE("alpha is a decorated map and its thin triangles are characterized") {
    for (int n = 0; n <= 3; ++n) {
        auto a = alpha(n, 3);
        CHECK(validate_decorated_map(a));
        auto ap = alpha(n, 3, true);
        CHECK(validate_decorated_map(ap));

        Dn D = dn(n, 3);
        Dn Dp = dn_plus(n, 3);
        const FinSSet& X = *D.value.base;
        for (int t = 0; t < X.count(2); ++t) {
            auto c = D.chain(nondeg(2, t));
            unsigned S = c[0].S, T = c[1].S;
            int i = c[0].i, j = c[1].i, l = c[2].i;
            bool predicted = (S & between(j, l)) == (T & between(j, l));
            CHECK(Dp.value.thin[t] == predicted);
            if (D.value.thin[t]) {
                CHECK(Dp.value.thin[t]);
                CHECK((S & between(i, l)) == ((S & between(i, j)) | (T & between(j, l))));
            }
        }
        for (int e = 0; e < X.count(1); ++e) CHECK(D.value.marked[e] == Dp.value.marked[e]);
    }
    // in [2] the only non-idle inclusion is {0,2} -> {0,1,2}, which never passes the test; [3] has witnesses
    auto extra = [](int n) {
        Dn D = dn(n, 3), Dp = dn_plus(n, 3);
        std::vector<std::string> w;
        for (int t = 0; t < D.value.base->count(2); ++t)
            if (Dp.value.thin[t] && !D.value.thin[t]) w.push_back(D.value.base->name(2, t));
        return w;
    };
    CHECK(extra(2).empty());
    auto w3 = extra(3);
    CHECK_FALSE(w3.empty());
    CHECK(std::find(w3.begin(), w3.end(), "(0;013)(0;0123)(1;0123)") != w3.end());

    auto a = alpha(2, 3);
    auto e = a.dom.base->find("(0;01)(1;012)");
    REQUIRE(e.has_value());
    auto img = a.map.images[1][e->second];
    CHECK(a.cod.base->name(1, img.index) == "01:{01}");
}

TEST_CASE("alpha is natural") {
    auto r = verify_alpha_natural(3, 3, 2);
    CHECK(r.ok());
    CHECK(r.instances == 121);
}

TEST_CASE("rigidified hom posets retract onto the oriental homs") {
    auto R = rigid_hom(2, 0, 2);
    REQUIRE(R.objects.size() == 3);
    std::vector<std::string> names;
    for (auto& x : R.objects) names.push_back(x.str());
    CHECK(names == std::vector<std::string>{"{02}({02})", "{02}({012})", "{012}({01},{12})"});
    CHECK(R.le[1][2]);
    CHECK(R.marked[1][2]);
    CHECK_FALSE(R.le[2][0]);
    CHECK(R.le[0][1]);
    CHECK_FALSE(R.marked[0][1]);
    CHECK(rigid_hom(3, 1, 1).objects.size() == 1);
    CHECK(rigid_hom(3, 2, 1).objects.empty());
    auto R3 = rigid_hom(3, 0, 3);
    CHECK(R3.targets.size() == 4);
    std::set<int> hit(R3.xi.begin(), R3.xi.end());
    CHECK(hit.size() == 4);

    auto rep = verify_rigid_retraction(3);
    CHECK(rep.ok());
    CHECK(rep.instances == 1 + 3 + 6 + 10);
}
