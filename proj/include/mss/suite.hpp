#pragma once

#include <chrono>

#include "mss/anodyne.hpp"
#include "mss/coend.hpp"
#include "mss/oriental.hpp"
#include "mss/pathext.hpp"

namespace mss {

struct SuiteOptions {
    int jobs = 1;
    std::uint64_t seed = 0;
};

struct Shape {
    std::string name;
    MSS value;
};

inline std::string flag_name(Flag f) { return f == Flag::flat ? "flat" : "sharp"; }

// (Δⁿ, m, t) for n ≤ 2 and m, t ∈ {♭, ♯}, plus (Δ², {12}, ♯).
inline std::vector<Shape> shape_grid(int maxDim = 4) {
    std::vector<Shape> g;
    for (int n = 0; n <= 2; ++n)
        for (Flag m : {Flag::flat, Flag::sharp})
            for (Flag t : {Flag::flat, Flag::sharp})
                g.push_back({"D" + std::to_string(n) + "[" + flag_name(m) + "," + flag_name(t) + "]", std_shape(n, m, t, maxDim)});
    auto D2 = share(standard_simplex(2, maxDim));
    g.push_back({"D2[{12},sharp]", with_flags(D2, Flag::flat, Flag::sharp)});
    g.back().value.marked[id_of(*D2, 1, "12")] = 1;
    return g;
}

namespace detail {

inline Report merge_parts(const std::string& name, const std::vector<Report>& parts) {
    Report r;
    r.suite = name;
    for (const auto& p : parts) {
        r.merge(p);
        if (p.instances == 0) r.fail(json{{"suite", p.suite}, {"reason", "no instances"}});
    }
    return r;
}

inline std::vector<int> flag_ids(const std::vector<char>& v) {
    std::vector<int> r;
    for (int i = 0; i < static_cast<int>(v.size()); ++i)
        if (v[i]) r.push_back(i);
    return r;
}

inline bool subset_flags(const std::vector<char>& a, const std::vector<char>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] && !b[i]) return false;
    return true;
}

}  // namespace detail

// Δ¹_♭ ⊗ Δ¹_♭ against a coordinate-level evaluation of the tensor conditions on both shuffles.
inline Report suite_gray_oracle() {
    Report r;
    r.suite = "gray-oracle";
    MSS I = std_shape(1, Flag::flat, Flag::flat, 2);
    TensorResult T = tensor_full(I, I, Variant::tensor, 2);
    const FinSSet& P = *T.value.base;
    using Pt = std::pair<int, int>;
    auto coord = [&](int v) {
        auto [a, b] = T.prod->comps[0][v];
        return Pt{a.index, b.index};
    };
    // oracle: a chain p < q < r of grid points is thin iff each projection is thin (degenerate, as both factors are flat)
    // and either the A-projection is degenerate on {1,2} or the B-projection is degenerate on {0,1}
    std::set<std::vector<Pt>> oracleThin, oracleAll;
    std::vector<Pt> pts{{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    for (Pt p : pts)
        for (Pt q : pts)
            for (Pt s : pts) {
                if (p == q || q == s || p.first > q.first || q.first > s.first || p.second > q.second || q.second > s.second) continue;
                oracleAll.insert({p, q, s});
                bool degA = p.first == q.first || q.first == s.first;
                bool degB = p.second == q.second || q.second == s.second;
                if (degA && degB && (q.first == s.first || p.second == q.second)) oracleThin.insert({p, q, s});
            }
    r.check(static_cast<int>(oracleAll.size()) == P.count(2), [&] { return json{{"reason", "triangle count"}, {"expected", oracleAll.size()}}; });
    for (int t = 0; t < P.count(2); ++t) {
        std::vector<Pt> c;
        for (int v : P.vertices(nondeg(2, t))) c.push_back(coord(v));
        bool expect = oracleThin.count(c) > 0;
        r.check(expect == static_cast<bool>(T.value.thin[t]), [&] { return json{{"triangle", P.name(2, t)}, {"oracle", expect}}; });
    }
    r.check(T.value.thin_ids().size() == 1 && oracleThin.size() == 1 &&
                *oracleThin.begin() == std::vector<Pt>{{0, 0}, {1, 0}, {1, 1}},
            [&] { return json{{"reason", "expected exactly the thin triangle (0,0)(1,0)(1,1)"}}; });
    for (int e = 0; e < P.count(1); ++e)
        r.check(!T.value.marked[e], [&] { return json{{"edge", P.name(1, e)}, {"reason", "marked"}}; });
    return r;
}

inline Report suite_variant_coherence(const SuiteOptions& o) {
    auto grid = shape_grid(2);
    int N = static_cast<int>(grid.size());
    Report r = parallel_report("variant-coherence", N * N, o.jobs, [&](int idx) {
        Report p;
        const Shape& A = grid[idx / N];
        const Shape& B = grid[idx % N];
        MSS g = tensor(A.value, B.value, Variant::tensor, 2);
        MSS bx = tensor(A.value, B.value, Variant::boxtensor, 2);
        MSS od = tensor(A.value, B.value, Variant::odot, 2);
        std::string bad;
        if (*g.base != *bx.base || *g.base != *od.base) bad = "underlying simplicial sets differ";
        else if (g.marked != bx.marked) bad = "marking of boxtensor differs from tensor";
        else if (!detail::subset_flags(bx.thin, g.thin)) bad = "boxtensor scaling not contained in tensor scaling";
        else if (od.thin != g.thin) bad = "odot scaling differs from tensor";
        else if (!detail::subset_flags(g.marked, od.marked)) bad = "tensor marking not contained in odot marking";
        p.check(bad.empty(), [&] { return json{{"A", A.name}, {"B", B.name}, {"reason", bad}}; });
        return p;
    });
    const Shape& A = grid.back();
    MSS B = std_shape(1, Flag::flat, Flag::sharp, 2);
    MSS g = tensor(A.value, B, Variant::tensor, 2), bx = tensor(A.value, B, Variant::boxtensor, 2);
    r.check(g.thin != bx.thin, [] { return json{{"reason", "no strictness witness on D2[{12},sharp] x D1[flat,sharp]"}}; });
    return r;
}

// (A ⊛ B) ⊛ C ≅ A ⊛ (B ⊛ C) through the rebracketing of vertex triples, decorations included.
inline Report suite_associativity(const SuiteOptions& o) {
    const int D = 3;
    auto grid = shape_grid(D);
    int N = static_cast<int>(grid.size());
    std::vector<Report> parts;
    for (Variant v : {Variant::tensor, Variant::odot}) {
        std::vector<TensorResult> pair(N * N);
        parallel_for(N * N, o.jobs, [&](int i) { pair[i] = tensor_full(grid[i / N].value, grid[i % N].value, v, D); });
        parts.push_back(parallel_report("associativity-" + variant_name(v), N * N * N, o.jobs, [&](int idx) {
            Report p;
            int a = idx / (N * N), b = idx / N % N, c = idx % N;
            const TensorResult& AB = pair[a * N + b];
            const TensorResult& BC = pair[b * N + c];
            TensorResult L = tensor_full(AB.value, grid[c].value, v, D);
            TensorResult R = tensor_full(grid[a].value, BC.value, v, D);
            std::vector<int> vmap;
            for (int w = 0; w < L.value.base->count(0); ++w) {
                auto [x, z] = L.prod->comps[0][w];
                auto [xa, xb] = AB.prod->comps[0][x.index];
                Simplex y = BC.prod->locate(xb, z);
                vmap.push_back(R.prod->locate(xa, y).index);
            }
            auto f = map_from_vertices(L.value.base, R.value.base, vmap);
            std::string bad;
            if (!f) bad = "rebracketing is not simplicial";
            else if (L.value.base->counts() != R.value.base->counts()) bad = "simplex counts differ";
            else {
                for (int d = 0; d < static_cast<int>(f->images.size()) && bad.empty(); ++d) {
                    std::set<int> seen;
                    for (const auto& s : f->images[d])
                        if (!s.nondegenerate() || !seen.insert(s.index).second) bad = "rebracketing is not bijective";
                }
                for (int e = 0; e < L.value.base->count(1) && bad.empty(); ++e)
                    if (L.value.marked[e] != R.value.marked[f->images[1][e].index]) bad = "marking differs at " + L.value.base->name(1, e);
                for (int t = 0; t < L.value.base->count(2) && bad.empty(); ++t)
                    if (L.value.thin[t] != R.value.thin[f->images[2][t].index]) bad = "scaling differs at " + L.value.base->name(2, t);
            }
            p.check(bad.empty(), [&] {
                return json{{"variant", variant_name(v)}, {"A", grid[a].name}, {"B", grid[b].name}, {"C", grid[c].name}, {"reason", bad}};
            });
            return p;
        }));
    }
    return detail::merge_parts("associativity", parts);
}

// |Hom(A ⊛ X, D)| = |Hom(A, Fun(X, D))| with Fun truncated at dimension 3, all four variances.
inline Report suite_adjunction(const SuiteOptions& o) {
    auto grid = shape_grid(4);
    int N = static_cast<int>(grid.size());
    const std::vector<HomKind> kinds{HomKind::gr, HomKind::opgr, HomKind::gl, HomKind::opgl};
    return parallel_report("adjunction", static_cast<int>(kinds.size()) * N * N, o.jobs, [&](int idx) {
        Report p;
        HomKind k = kinds[idx / (N * N)];
        const Shape& X = grid[idx / N % N];
        const Shape& Dt = grid[idx % N];
        FunResult F = mapping_object(k, X.value, Dt.value, 3);
        Variant v = hom_variant(k, false);
        for (const auto& A : grid) {
            MSS AX = probe_on_left(k) ? tensor(A.value, X.value, v, 5) : tensor(X.value, A.value, v, 5);
            long lhs = count_maps(AX, Dt.value), rhs = count_maps(A.value, F.value);
            p.check(lhs == rhs, [&] {
                return json{{"kind", hom_kind_name(k)}, {"A", A.name}, {"X", X.name}, {"D", Dt.name}, {"lhs", lhs}, {"rhs", rhs}};
            });
        }
        return p;
    });
}

inline Report suite_lemmas(const SuiteOptions& o) {
    std::vector<Report> parts;
    auto named = [](Report r, const std::string& nm) {
        r.suite = nm;
        return r;
    };
    auto tag = [](int n, int k) { return "(" + std::to_string(n) + "," + std::to_string(k) + ")"; };
    for (auto [n, k] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {1, 2}, {2, 2}, {3, 1}})
        parts.push_back(named(verify_extension_stability(n, k, o.jobs), "extension-stability" + tag(n, k)));
    for (int n = 1; n <= 3; ++n)
        for (int k = 1; k <= 3; ++k) {
            parts.push_back(named(verify_postextension(n, k, o.jobs), "postextension" + tag(n, k)));
            parts.push_back(named(verify_faces_of_extensions(n, k, o.jobs), "faces" + tag(n, k)));
        }
    for (auto [n, k] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {1, 2}, {2, 2}})
        parts.push_back(named(verify_noboundaries(n, k, o.jobs), "noboundaries" + tag(n, k)));
    return detail::merge_parts("lemmas", parts);
}

inline Report suite_alpha(const SuiteOptions& o) {
    std::vector<Report> parts;
    parts.push_back(verify_alpha_natural(4, 3, o.jobs));
    Report dec;
    dec.suite = "alpha-decorated";
    for (int n = 0; n <= 4; ++n)
        for (bool plus : {false, true}) {
            auto e = check_decorated_map(alpha(n, 3, plus));
            dec.check(!e, [&] { return json{{"n", n}, {"plus", plus}, {"reason", *e}}; });
        }
    parts.push_back(dec);
    Report th;
    th.suite = "alpha-thin-characterization";
    auto between = [](int a, int b) { return interval_mask(a, b); };
    for (int n = 0; n <= 3; ++n) {
        Dn Dm = dn(n, 3), Dp = dn_plus(n, 3);
        for (int t = 0; t < Dm.value.base->count(2); ++t) {
            auto c = Dm.chain(nondeg(2, t));
            int j = c[1].i, l = c[2].i;
            bool predicted = (c[0].S & between(j, l)) == (c[1].S & between(j, l));
            th.check(static_cast<bool>(Dp.value.thin[t]) == predicted,
                     [&] { return json{{"n", n}, {"triangle", Dm.value.base->name(2, t)}, {"predicted", predicted}}; });
        }
    }
    parts.push_back(th);
    Report cnt;
    cnt.suite = "alpha-counts";
    cnt.check(dn_elements(2).size() == 12, [] { return json{{"reason", "|D^2| != 12"}}; });
    cnt.check(oriental_category(3)->sets[0][3].size() == 4, [] { return json{{"reason", "|O^3(0,3)| != 4"}}; });
    parts.push_back(cnt);
    return detail::merge_parts("alpha", parts);
}

inline Report suite_rigid(const SuiteOptions& o) {
    Report r = verify_rigid_retraction(3, o.jobs);
    r.suite = "rigid";
    r.check(rigid_hom(2, 0, 2).objects.size() == 3, [] { return json{{"reason", "(2,0,2) hom poset does not have 3 objects"}}; });
    return r;
}

inline FinSSet spine_sset(int n, int maxDim) {
    FinSSet X(maxDim);
    for (int i = 0; i <= n; ++i) X.add(0, std::to_string(i), {});
    for (int i = 0; i < n; ++i) X.add(1, std::to_string(i) + std::to_string(i + 1), {nondeg(0, i + 1), nondeg(0, i)});
    return X;
}

inline Report suite_coend(const SuiteOptions& o) {
    struct Item {
        std::string name;
        std::function<std::optional<std::string>()> run;
    };
    std::vector<Item> items;
    auto iso = [](const MSS& a, const MSS& b) -> std::optional<std::string> {
        if (iso_check_decorated(a, b)) return std::nullopt;
        return std::string("not isomorphic");
    };
    for (int n = 0; n <= 3; ++n)
        for (CoendSide side : {CoendSide::gl, CoendSide::gr})
            items.push_back({"co-yoneda n=" + std::to_string(n) + (side == CoendSide::gl ? " gl" : " gr"), [=] {
                                 return iso(coend(representable(n, 3), Flag::flat, side, 3), std_shape(n, Flag::flat, Flag::flat, 3));
                             }});
    std::vector<std::pair<std::string, FinSSet>> discrete{
        {"D3", standard_simplex(3, 3)}, {"Sp3", spine_sset(3, 3)}, {"boundary D2", *boundary(2, 3).sub}};
    for (const auto& [nm, S] : discrete)
        items.push_back({"discrete " + nm, [S = S, iso] {
                             return iso(coend(discrete_object(S, 3), Flag::sharp, CoendSide::gl, 3), with_flags(share(S), Flag::flat, Flag::sharp));
                         }});
    for (Variant v : {Variant::tensor, Variant::odot}) {
        items.push_back({"bigx point " + variant_name(v), [=] {
                             return iso(big_x(std_shape(0, Flag::flat, Flag::flat, 0), v, 3, 3).value, std_shape(0, Flag::flat, Flag::flat, 3));
                         }});
        for (auto [cn, C] : std::vector<std::pair<std::string, MSS>>{{"D1[flat,flat]", std_shape(1, Flag::flat, Flag::flat, 1)},
                                                                     {"D2[flat,sharp]", std_shape(2, Flag::flat, Flag::sharp, 2)}}) {
            items.push_back({"bigx section " + cn + " " + variant_name(v), [=]() -> std::optional<std::string> {
                                 BigX X = big_x(C, v, 3, 3);
                                 if (auto e = check_mss(X.value)) return *e;
                                 if (auto e = check_decorated_map(X.s)) return "s: " + *e;
                                 if (auto e = check_decorated_map(X.pi)) return "pi: " + *e;
                                 if (!is_injective_map(X.s.map)) return std::string("s is not injective");
                                 if (!maps_equal(compose_maps(X.s.map, X.pi.map), identity_map(X.base.base))) return std::string("pi o s != id");
                                 return std::nullopt;
                             }});
            items.push_back({"bigx stabilization " + cn + " " + variant_name(v),
                             [=] { return iso(big_x(C, v, 3, 3).value, big_x(C, v, 4, 3).value); }});
        }
    }
    return parallel_report("coend", static_cast<int>(items.size()), o.jobs, [&](int i) {
        Report p;
        std::optional<std::string> bad;
        try {
            bad = items[i].run();
        } catch (const std::exception& e) {
            bad = std::string("error: ") + e.what();
        }
        p.check(!bad, [&] { return json{{"case", items[i].name}, {"reason", *bad}}; });
        return p;
    });
}

namespace detail {

// Replays a certificate, checking each attaching map is a decorated map out of its generator's source.
inline std::optional<std::string> validate_steps(const Certificate& c) {
    MSS cur = c.start;
    for (std::size_t i = 0; i < c.steps.size(); ++i) {
        const auto& st = c.steps[i];
        Generator g = generator(st.generator, c.maxDim);
        SSetMap a = st.attach;
        a.dom = g.source().base;
        a.cod = cur.base;
        if (auto e = check_decorated_map(DecoratedMap{g.source(), cur, a})) return "step " + std::to_string(i) + ": " + *e;
        cur = decorated_pushout(g, a, cur).P;
        if (auto e = check_mss(cur)) return "step " + std::to_string(i) + ": " + *e;
    }
    return std::nullopt;
}

}  // namespace detail

inline Report suite_anodyne(const SuiteOptions& o) {
    std::vector<Report> parts;
    Report msi;
    msi.suite = "msi";
    const std::vector<Mono> expect[2] = {{{0, 1, 1, 2, 3}}, {{0, 1, 2, 2, 3}}};
    for (int i = 1; i <= 2; ++i) {
        std::string nm = "MSI(" + std::to_string(i) + ")";
        msi.check(msi_pushout_witnesses(i) == expect[i - 1], [&] { return json{{"case", nm}, {"reason", "M2 attaching map"}}; });
        auto c = find_certificate(generator(nm, 4).incl, catalog("M2", 4), 4);
        msi.check(c && c->steps.size() == 1 && c->steps[0].generator == "M2",
                  [&] { return json{{"case", nm}, {"reason", "not a single M2 pushout"}}; });
    }
    parts.push_back(msi);

    auto gens = catalog("MS", 4);
    std::mt19937_64 rng(o.seed);
    std::vector<std::uint64_t> seeds(100);
    for (auto& s : seeds) s = rng();
    parts.push_back(parallel_report("forward-certificates", 100, o.jobs, [&](int i) {
        Report p;
        auto fw = random_forward(seeds[i], gens, 3, 4);
        std::string bad;
        if (!exact_identification(replay(fw.cert).result(), identity_map(fw.incl.cod.base), fw.incl.cod)) bad = "forward replay is not exact";
        else if (!find_certificate(fw.incl, gens, 4, {static_cast<int>(fw.cert.steps.size()), 200000})) bad = "search found no certificate";
        p.check(bad.empty(), [&] { return json{{"sample", i}, {"seed", std::to_string(seeds[i])}, {"reason", bad}}; });
        return p;
    }));

    Report piv;
    piv.suite = "pivot";
    auto simplex_with = [](int n, const std::vector<std::string>& m, const std::vector<std::string>& t) {
        return decorate_named(share(standard_simplex(n, 4)), m, t);
    };
    auto check_pivot = [&](const std::string& nm, const MSS& target, const std::function<PivotResult()>& run) {
        std::optional<std::string> bad;
        try {
            PivotResult r = run();
            if (r.cert.steps.empty()) bad = "empty certificate";
            else if (auto e = detail::validate_steps(r.cert)) bad = *e;
            else if (!iso_check_decorated(replay(r.cert).result(), target)) bad = "replay does not reproduce the simplex";
        } catch (const std::exception& e) {
            bad = e.what();
        }
        piv.check(!bad, [&] { return json{{"case", nm}, {"reason", *bad}}; });
    };
    MSS D3i = simplex_with(3, {}, {"023", "123"});
    check_pivot("inner D3 s=2", D3i, [&] { return pivot_filtration_inner(induced_subobject(D3i, {{1, 2, 3}, {0, 1, 2}}), 2, {0}, {3}); });
    MSS D2o = with_flags(share(standard_simplex(2, 4)), Flag::sharp, Flag::sharp);
    check_pivot("outer D2", D2o, [&] { return pivot_filtration_outer(induced_subobject(D2o, {{0, 2}, {1, 2}}), {1}); });
    MSS D3o = simplex_with(3, {"13", "23"}, {"013", "023"});
    check_pivot("outer D3", D3o, [&] { return pivot_filtration_outer(induced_subobject(D3o, {{1, 2, 3}, {0, 2, 3}}), {1}); });
    parts.push_back(piv);
    return detail::merge_parts("anodyne", parts);
}

inline Report suite_levelwise(const SuiteOptions& o) {
    struct Item {
        std::string name;
        std::function<std::optional<std::string>()> run;
    };
    std::vector<Item> items;
    MSS C2 = std_shape(2, Flag::flat, Flag::sharp, 2);
    MSS C1 = std_shape(1, Flag::flat, Flag::flat, 1);
    items.push_back({"SqE(D2[flat,sharp])_2 vertices", [=]() -> std::optional<std::string> {
                         int v = levelwise(C2, LevelFunctor::SqE, 2, 2).base->count(0);
                         if (v != 10) return std::to_string(v) + " vertices";
                         return std::nullopt;
                     }});
    items.push_back({"Gl(D1[flat,flat])_1 vertices", [=]() -> std::optional<std::string> {
                         int v = levelwise(C1, LevelFunctor::Gl, 1, 2).base->count(0);
                         if (v != 3) return std::to_string(v) + " vertices";
                         return std::nullopt;
                     }});
    for (auto fn : {LevelFunctor::Sq, LevelFunctor::SqE, LevelFunctor::Gl, LevelFunctor::GlE})
        for (auto [cn, C] : std::vector<std::pair<std::string, MSS>>{{"D1[sharp,flat]", std_shape(1, Flag::sharp, Flag::flat, 1)},
                                                                     {"D2[flat,sharp]", C2}}) {
            static const char* names[] = {"Sq", "SqE", "Gl", "GlE"};
            items.push_back({std::string(names[static_cast<int>(fn)]) + "(" + cn + ") L=3",
                             [=] { return check_simplicial(levelwise_object(C, fn, 3, 2)); }});
        }
    return parallel_report("levelwise", static_cast<int>(items.size()), o.jobs, [&](int i) {
        Report p;
        std::optional<std::string> bad;
        try {
            bad = items[i].run();
        } catch (const std::exception& e) {
            bad = std::string("error: ") + e.what();
        }
        p.check(!bad, [&] { return json{{"case", items[i].name}, {"reason", *bad}}; });
        return p;
    });
}

struct SuiteEntry {
    std::string name;
    std::string selector;
    std::function<Report(const SuiteOptions&)> run;
};

inline const std::vector<SuiteEntry>& suite_registry() {
    static const std::vector<SuiteEntry> reg{
        {"gray-oracle", "gray", [](const SuiteOptions&) { return suite_gray_oracle(); }},
        {"variant-coherence", "gray", suite_variant_coherence},
        {"associativity", "gray", suite_associativity},
        {"adjunction", "adjunction", suite_adjunction},
        {"lemmas", "lemmas", suite_lemmas},
        {"alpha", "oriental", suite_alpha},
        {"rigid", "oriental", suite_rigid},
        {"coend", "coend", suite_coend},
        {"anodyne", "anodyne", suite_anodyne},
        {"levelwise", "levelwise", suite_levelwise},
    };
    return reg;
}

// A '+'-separated list of selectors or suite names; "all" selects everything.
inline std::vector<const SuiteEntry*> select_suites(const std::string& sel) {
    std::vector<const SuiteEntry*> out;
    std::set<std::string> want;
    std::stringstream ss(sel);
    for (std::string t; std::getline(ss, t, '+');) want.insert(t);
    for (const auto& w : want) {
        bool known = w == "all";
        for (const auto& e : suite_registry()) known = known || e.name == w || e.selector == w;
        if (!known) throw param_error("unknown suite selector " + w);
    }
    for (const auto& e : suite_registry())
        if (want.count("all") || want.count(e.name) || want.count(e.selector)) out.push_back(&e);
    return out;
}

inline json run_suites(const std::string& sel, const SuiteOptions& o) {
    Report total;
    total.suite = sel;
    json parts = json::array();
    for (const auto* e : select_suites(sel)) {
        Report r = e->run(o);
        r.suite = e->name;
        total.merge(r);
        parts.push_back(r.to_json());
    }
    json j = total.to_json();
    j["seed"] = o.seed;
    j["suites"] = parts;
    return j;
}

}  // namespace mss
