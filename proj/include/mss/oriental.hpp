#pragma once

#include "mss/decor.hpp"
#include "mss/report.hpp"

namespace mss {

// A strict 2-category whose hom-categories are posets.
struct Poset2Cat {
    int objects = 0;
    std::vector<std::string> names;
    std::vector<std::vector<std::vector<std::string>>> hom;          // labels of the 1-morphisms x -> y
    std::function<bool(int, int, int, int)> leq;                    // (x, y, a, b): a => b in hom(x, y)
    std::function<int(int, int, int, int, int)> comp;               // (x, y, z, f, g): g o f
    std::vector<int> id;

    int homsize(int x, int y) const { return static_cast<int>(hom[x][y].size()); }

    bool invertible(int x, int y, int f) const {
        for (int g = 0; g < homsize(y, x); ++g)
            if (comp(x, y, x, f, g) == id[x] && comp(y, x, y, g, f) == id[y]) return true;
        return false;
    }
};

// Simplex data of the nerve: objects x_0..x_m followed by f_ij for i < j in lexicographic order.
using NerveKey = std::vector<int>;

inline int pair_slot(int m, int i, int j) {
    // position of (i, j), i < j, among the pairs of [m] in lexicographic order
    int before = 0;
    for (int a = 0; a < i; ++a) before += m - a;
    return before + (j - i - 1);
}

struct NerveResult {
    MSS value;
    std::vector<std::unordered_map<NerveKey, int, VecHash>> index;  // per degree: key -> abstract id
    std::vector<std::vector<NerveKey>> keys;
    std::vector<std::vector<Simplex>> ez;

    Simplex locate(const NerveKey& k) const {
        int m = -1;
        // a key of degree m has (m+1) + m(m+1)/2 entries
        for (int t = 0; t < static_cast<int>(index.size()); ++t)
            if (static_cast<int>(k.size()) == (t + 1) + t * (t + 1) / 2) m = t;
        if (m < 0) throw param_error("nerve key of unexpected size");
        auto it = index[m].find(k);
        if (it == index[m].end()) throw validation_error("not a simplex of the nerve");
        return ez[m][it->second];
    }
};

inline NerveKey nerve_face(const NerveKey& k, int m, int t) {
    NerveKey r;
    for (int i = 0; i <= m; ++i)
        if (i != t) r.push_back(k[i]);
    for (int i = 0; i <= m; ++i)
        for (int j = i + 1; j <= m; ++j)
            if (i != t && j != t) r.push_back(k[m + 1 + pair_slot(m, i, j)]);
    return r;
}

inline NerveKey nerve_degeneracy(const Poset2Cat& C, const NerveKey& k, int m, int t) {
    Mono s = codegeneracy(m, t);
    NerveKey r;
    for (int i = 0; i <= m + 1; ++i) r.push_back(k[s[i]]);
    for (int i = 0; i <= m + 1; ++i)
        for (int j = i + 1; j <= m + 1; ++j) r.push_back(s[i] == s[j] ? C.id[k[s[i]]] : k[m + 1 + pair_slot(m, s[i], s[j])]);
    return r;
}

// Scaled nerve: an m-simplex is objects x_i with f_ij : x_i -> x_j such that f_ik => f_jk o f_ij.
// Edges are marked when invertible, triangles thin when the 2-cell is an identity.
inline NerveResult scaled_nerve(const Poset2Cat& C, int maxDim) {
    NerveResult R;
    int D = maxDim;
    R.index.resize(D + 1);
    R.keys.resize(D + 1);
    for (int m = 0; m <= D; ++m) {
        NerveKey xs(m + 1), fs(m * (m + 1) / 2);
        std::vector<std::pair<int, int>> pairs;
        for (int j = 1; j <= m; ++j)
            for (int i = j - 1; i >= 0; --i) pairs.push_back({i, j});
        std::function<void(std::size_t)> recf = [&](std::size_t p) {
            if (p == pairs.size()) {
                NerveKey k = xs;
                k.insert(k.end(), fs.begin(), fs.end());
                R.index[m][k] = static_cast<int>(R.keys[m].size());
                R.keys[m].push_back(k);
                return;
            }
            auto [i, j] = pairs[p];
            for (int f = 0; f < C.homsize(xs[i], xs[j]); ++f) {
                fs[pair_slot(m, i, j)] = f;
                // every (i, y) and (y, j) with i < y < j precedes (i, j) in this order
                bool ok = true;
                for (int y = i + 1; y < j && ok; ++y) {
                    int a = fs[pair_slot(m, i, y)], b = fs[pair_slot(m, y, j)];
                    ok = C.leq(xs[i], xs[j], f, C.comp(xs[i], xs[y], xs[j], a, b));
                }
                if (ok) recf(p + 1);
            }
        };
        std::function<void(int)> recx = [&](int i) {
            if (i == m + 1) {
                recf(0);
                return;
            }
            for (int x = 0; x < C.objects; ++x) {
                bool ok = true;
                for (int a = 0; a < i && ok; ++a) ok = C.homsize(xs[a], x) > 0;
                if (!ok) continue;
                xs[i] = x;
                recx(i + 1);
            }
        };
        recx(0);
    }
    AbstractSSet abs;
    abs.D = D;
    abs.count.resize(D + 1);
    abs.face.resize(D + 1);
    abs.degen.resize(D + 1);
    abs.label.resize(D + 1);
    for (int m = 0; m <= D; ++m) {
        abs.count[m] = static_cast<int>(R.keys[m].size());
        for (const auto& k : R.keys[m]) {
            std::string nm;
            for (int i = 0; i <= m; ++i) nm += C.names[k[i]];
            if (m > 0) {
                nm += ":";
                int p = 0;
                for (int i = 0; i <= m; ++i)
                    for (int j = i + 1; j <= m; ++j, ++p) nm += (p ? "/" : "") + C.hom[k[i]][k[j]][k[m + 1 + p]];
            }
            abs.label[m].push_back(nm);
            if (m > 0) {
                std::vector<int> fcs;
                for (int t = 0; t <= m; ++t) fcs.push_back(R.index[m - 1].at(nerve_face(k, m, t)));
                abs.face[m].push_back(fcs);
            }
            if (m < D) {
                std::vector<int> dg;
                for (int t = 0; t <= m; ++t) dg.push_back(R.index[m + 1].at(nerve_degeneracy(C, k, m, t)));
                abs.degen[m].push_back(dg);
            }
        }
    }
    Built b = build_normal_form(abs, D);
    R.ez = b.ez;
    R.value = flat_mss(share(std::move(b.X)));
    for (int m = 1; m <= std::min(D, 2); ++m)
        for (int s = 0; s < abs.count[m]; ++s) {
            const Simplex& e = R.ez[m][s];
            if (!e.nondegenerate()) continue;
            const NerveKey& k = R.keys[m][s];
            if (m == 1) R.value.marked[e.index] = C.invertible(k[0], k[1], k[2]);
            if (m == 2) R.value.thin[e.index] = k[3 + 1] == C.comp(k[0], k[1], k[2], k[3], k[5]);
        }
    return R;
}

inline std::string subset_label(unsigned S) {
    std::string s;
    for (int t = 0; S >> t; ++t)
        if (S >> t & 1) s += std::to_string(t);
    return s;
}

inline unsigned interval_mask(int a, int b) {
    unsigned m = 0;
    for (int t = a; t <= b; ++t) m |= 1u << t;
    return m;
}

inline int low_bit(unsigned S) { return __builtin_ctz(S); }
inline int high_bit(unsigned S) { return 31 - __builtin_clz(S); }

// The 2-category with objects [n] and hom-posets of endpoint-fixing subsets; composition is union.
struct OrientalCat {
    int n = 0;
    Poset2Cat cat;
    std::vector<std::vector<std::vector<unsigned>>> sets;  // sets[i][j][f]
    std::vector<std::vector<std::unordered_map<unsigned, int>>> ids;

    int element(int i, int j, unsigned S) const { return ids[i][j].at(S); }
};

inline std::shared_ptr<const OrientalCat> oriental_category(int n) {
    if (n < 0) throw param_error("negative oriental");
    auto O = std::make_shared<OrientalCat>();
    O->n = n;
    O->sets.assign(n + 1, std::vector<std::vector<unsigned>>(n + 1));
    O->ids.assign(n + 1, std::vector<std::unordered_map<unsigned, int>>(n + 1));
    Poset2Cat& C = O->cat;
    C.objects = n + 1;
    C.hom.assign(n + 1, std::vector<std::vector<std::string>>(n + 1));
    for (int i = 0; i <= n; ++i) {
        C.names.push_back(std::to_string(i));
        for (int j = i; j <= n; ++j)
            for (unsigned S = 1; S < (1u << (n + 1)); ++S)
                if (low_bit(S) == i && high_bit(S) == j) {
                    O->ids[i][j][S] = static_cast<int>(O->sets[i][j].size());
                    O->sets[i][j].push_back(S);
                    C.hom[i][j].push_back("{" + subset_label(S) + "}");
                }
    }
    const OrientalCat* raw = O.get();
    C.leq = [raw](int x, int y, int a, int b) {
        unsigned A = raw->sets[x][y][a], B = raw->sets[x][y][b];
        return (A & ~B) == 0;
    };
    C.comp = [raw](int x, int y, int z, int f, int g) { return raw->ids[x][z].at(raw->sets[x][y][f] | raw->sets[y][z][g]); };
    for (int i = 0; i <= n; ++i) C.id.push_back(0);
    return O;
}

struct Oriental {
    std::shared_ptr<const OrientalCat> cat;
    NerveResult nerve;
    const MSS& value() const { return nerve.value; }

    // Locates the simplex with vertices xs and arrows S[i][j] (bitmasks, i < j).
    Simplex locate(const std::vector<int>& xs, const std::vector<std::vector<unsigned>>& S) const {
        int m = static_cast<int>(xs.size()) - 1;
        NerveKey k = xs;
        for (int i = 0; i <= m; ++i)
            for (int j = i + 1; j <= m; ++j) k.push_back(cat->element(xs[i], xs[j], S[i][j]));
        return nerve.locate(k);
    }
};

inline Oriental oriental(int n, int maxDim = 3) {
    auto C = oriental_category(n);
    return Oriental{C, scaled_nerve(C->cat, maxDim)};
}

// Elements (i, S) of the poset D^n, i in S.
struct DnElement {
    int i;
    unsigned S;
    auto operator<=>(const DnElement&) const = default;
};

inline std::vector<DnElement> dn_elements(int n) {
    std::vector<DnElement> out;
    for (unsigned S = 1; S < (1u << (n + 1)); ++S)
        for (int i = 0; i <= n; ++i)
            if (S >> i & 1) out.push_back({i, S});
    std::sort(out.begin(), out.end());
    return out;
}

// Inclusion S -> T of finite linear orders is idle iff S is an interval of T.
inline bool inclusion_idle(unsigned S, unsigned T) {
    if (S & ~T) throw param_error("not an inclusion");
    unsigned gap = T & ~S & interval_mask(low_bit(S), high_bit(S));
    return gap == 0;
}

struct Dn {
    int n = 0;
    std::vector<DnElement> elems;
    MSS value;

    std::vector<DnElement> chain(const Simplex& s) const {
        std::vector<DnElement> c;
        for (int v : value.base->vertices(s)) c.push_back(elems[v]);
        return c;
    }
};

// D^n: chains (i_0,S_0) < ... with every i_j in S_0; marked when i = j, thin when S -> T is idle or j = l.
inline Dn dn(int n, int maxDim = 3) {
    Dn r;
    r.n = n;
    r.elems = dn_elements(n);
    int N = static_cast<int>(r.elems.size());
    std::vector<std::string> labels;
    std::vector<std::vector<bool>> le(N, std::vector<bool>(N));
    for (int a = 0; a < N; ++a) {
        labels.push_back("(" + std::to_string(r.elems[a].i) + ";" + subset_label(r.elems[a].S) + ")");
        for (int b = 0; b < N; ++b)
            le[a][b] = r.elems[a].i <= r.elems[b].i && (r.elems[a].S & ~r.elems[b].S) == 0;
    }
    auto keep = [&](const std::vector<int>& c) {
        for (int v : c)
            if (!(r.elems[c[0]].S >> r.elems[v].i & 1)) return false;
        return true;
    };
    r.value = flat_mss(share(nerve_of_order(labels, le, maxDim, keep)));
    const FinSSet& X = *r.value.base;
    for (int e = 0; e < X.count(1); ++e) {
        auto c = r.chain(nondeg(1, e));
        r.value.marked[e] = c[0].i == c[1].i;
    }
    for (int t = 0; t < X.count(2); ++t) {
        auto c = r.chain(nondeg(2, t));
        r.value.thin[t] = inclusion_idle(c[0].S, c[1].S) || c[1].i == c[2].i;
    }
    return r;
}

// Arrow data of alpha_n on a chain: S_u restricted to [i_u, i_v].
inline std::vector<std::vector<unsigned>> alpha_arrows(const std::vector<DnElement>& c) {
    int m = static_cast<int>(c.size()) - 1;
    std::vector<std::vector<unsigned>> S(m + 1, std::vector<unsigned>(m + 1, 0));
    for (int u = 0; u <= m; ++u)
        for (int v = u + 1; v <= m; ++v) S[u][v] = c[u].S & interval_mask(c[u].i, c[v].i);
    return S;
}

inline SSetMap alpha_map(const Dn& D, const Oriental& O) {
    SSetMap f{D.value.base, O.value().base, {}};
    f.images.resize(D.value.base->names.size());
    for (int d = 0; d < static_cast<int>(D.value.base->names.size()); ++d)
        for (int s = 0; s < D.value.base->count(d); ++s) {
            auto c = D.chain(nondeg(d, s));
            std::vector<int> xs;
            for (auto& e : c) xs.push_back(e.i);
            f.images[d].push_back(O.locate(xs, alpha_arrows(c)));
        }
    return f;
}

// D^n with decorations pulled back from the oriental along alpha_n.
inline Dn dn_plus(int n, int maxDim = 3) {
    Dn D = dn(n, maxDim);
    Oriental O = oriental(n, maxDim);
    D.value = pullback_decorations(D.value.base, alpha_map(D, O), O.value());
    return D;
}

inline DecoratedMap alpha(int n, int maxDim = 3, bool plus = false) {
    Dn D = plus ? dn_plus(n, maxDim) : dn(n, maxDim);
    Oriental O = oriental(n, maxDim);
    return DecoratedMap{D.value, O.value(), alpha_map(D, O)};
}

inline unsigned image_set(const Mono& theta, unsigned S) {
    unsigned r = 0;
    for (int t = 0; S >> t; ++t)
        if (S >> t & 1) r |= 1u << theta[t];
    return r;
}

// alpha_n o D^theta = O^theta o alpha_m on all simplices of D^m up to maxDim, for all monotone theta.
inline Report verify_alpha_natural(int maxN, int maxDim = 3, int jobs = 1) {
    if (maxN > 4) throw param_error("alpha naturality is limited to n <= 4");
    std::vector<std::pair<int, Mono>> thetas;
    for (int m = 0; m <= maxN; ++m)
        for (int n = 0; n <= maxN; ++n)
            for (auto& th : monotone_maps(m, n)) thetas.push_back({n, th});
    std::vector<Dn> Ds;
    for (int m = 0; m <= maxN; ++m) Ds.push_back(dn(m, maxDim));
    return parallel_report("alpha-natural", static_cast<int>(thetas.size()), jobs, [&](int t) {
        Report r;
        auto& [n, th] = thetas[t];
        const Dn& D = Ds[static_cast<int>(th.size()) - 1];
        std::string bad;
        for (int d = 0; d <= maxDim && bad.empty(); ++d)
            for (int s = 0; s < D.value.base->count(d) && bad.empty(); ++s) {
                auto c = D.chain(nondeg(d, s));
                std::vector<DnElement> pushed;
                for (auto& e : c) pushed.push_back({th[e.i], image_set(th, e.S)});
                auto lhs = alpha_arrows(pushed);
                auto a = alpha_arrows(c);
                for (int u = 0; u <= d; ++u)
                    for (int v = u + 1; v <= d; ++v)
                        if (lhs[u][v] != image_set(th, a[u][v])) bad = D.value.base->name(d, s);
            }
        r.check(bad.empty(), [&] { return json{{"n", n}, {"theta", th}, {"simplex", bad}}; });
        return r;
    });
}

// Objects (S, U) of the hom-poset of the rigidified oriental between i and j.
struct RigidObject {
    unsigned S = 0;
    std::vector<unsigned> U;
    bool operator==(const RigidObject&) const = default;

    std::string str() const {
        std::string s = "{" + subset_label(S) + "}(";
        for (std::size_t g = 0; g < U.size(); ++g) s += (g ? "," : "") + std::string("{") + subset_label(U[g]) + "}";
        return s + ")";
    }
};

struct RigidHom {
    int n = 0, i = 0, j = 0;
    std::vector<RigidObject> objects;
    std::vector<std::vector<bool>> le, marked;
    std::vector<unsigned> targets;  // objects of O^n(i, j)
    std::vector<int> xi;            // objects -> targets
    std::vector<int> r;             // targets -> objects
};

inline std::vector<int> bits_of(unsigned S) {
    std::vector<int> b;
    for (int t = 0; S >> t; ++t)
        if (S >> t & 1) b.push_back(t);
    return b;
}

// The union of the V_e over the segments of T lying in [a, b).
inline unsigned covering_union(const RigidObject& y, int a, int b) {
    auto xs = bits_of(y.S);
    unsigned u = 0;
    for (std::size_t e = 0; e + 1 < xs.size(); ++e)
        if (a <= xs[e] && xs[e] < b) u |= y.U[e];
    return u;
}

inline RigidHom rigid_hom(int n, int i, int j) {
    RigidHom R;
    R.n = n;
    R.i = i;
    R.j = j;
    if (i > j || i < 0 || j > n) return R;
    for (unsigned S = 1; S < (1u << (n + 1)); ++S)
        if (low_bit(S) == i && high_bit(S) == j) R.targets.push_back(S);
    for (unsigned S : R.targets) {
        auto xs = bits_of(S);
        int k = static_cast<int>(xs.size()) - 1;
        std::vector<std::vector<unsigned>> choices(k);
        for (int g = 0; g < k; ++g)
            for (unsigned U = 1; U < (1u << (n + 1)); ++U)
                if (low_bit(U) == xs[g] && high_bit(U) == xs[g + 1]) choices[g].push_back(U);
        RigidObject cur{S, std::vector<unsigned>(k)};
        std::function<void(int)> rec = [&](int g) {
            if (g == k) {
                R.objects.push_back(cur);
                return;
            }
            for (unsigned U : choices[g]) {
                cur.U[g] = U;
                rec(g + 1);
            }
        };
        rec(0);
    }
    int N = static_cast<int>(R.objects.size());
    R.le.assign(N, std::vector<bool>(N, false));
    R.marked.assign(N, std::vector<bool>(N, false));
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b) {
            const auto& x = R.objects[a];
            const auto& y = R.objects[b];
            if (x.S & ~y.S) continue;
            auto xs = bits_of(x.S);
            bool le = true, eq = true;
            for (std::size_t g = 0; g + 1 < xs.size(); ++g) {
                unsigned cover = covering_union(y, xs[g], xs[g + 1]);
                le = le && (x.U[g] & ~cover) == 0;
                eq = eq && x.U[g] == cover;
            }
            R.le[a][b] = le;
            R.marked[a][b] = le && eq;
        }
    auto target_of = [&](const RigidObject& x) {
        unsigned u = x.S;
        for (unsigned U : x.U) u |= U;
        return static_cast<int>(std::find(R.targets.begin(), R.targets.end(), u) - R.targets.begin());
    };
    for (const auto& x : R.objects) R.xi.push_back(target_of(x));
    for (unsigned W : R.targets) {
        RigidObject x{(1u << i) | (1u << j), {}};
        if (i < j) x.U.push_back(W);
        R.r.push_back(static_cast<int>(std::find(R.objects.begin(), R.objects.end(), x) - R.objects.begin()));
    }
    return R;
}

// xi o r = id, r o xi <= id through marked relations, and both maps are monotone.
inline Report verify_rigid_retraction(int maxN, int jobs = 1) {
    std::vector<std::tuple<int, int, int>> cases;
    for (int n = 0; n <= maxN; ++n)
        for (int i = 0; i <= n; ++i)
            for (int j = i; j <= n; ++j) cases.push_back({n, i, j});
    return parallel_report("rigid-retraction", static_cast<int>(cases.size()), jobs, [&](int c) {
        Report rep;
        auto [n, i, j] = cases[c];
        RigidHom R = rigid_hom(n, i, j);
        auto wit = [&](const std::string& why) { return json{{"n", n}, {"i", i}, {"j", j}, {"reason", why}}; };
        std::string bad;
        int N = static_cast<int>(R.objects.size());
        for (int a = 0; a < N && bad.empty(); ++a) {
            if (!R.le[a][a]) bad = "order not reflexive";
            for (int b = 0; b < N && bad.empty(); ++b) {
                if (a != b && R.le[a][b] && R.le[b][a]) bad = "order not antisymmetric";
                for (int c2 = 0; c2 < N && bad.empty(); ++c2)
                    if (R.le[a][b] && R.le[b][c2] && !R.le[a][c2]) bad = "order not transitive";
                if (R.le[a][b] && (R.targets[R.xi[a]] & ~R.targets[R.xi[b]])) bad = "xi not monotone";
            }
        }
        for (std::size_t w = 0; w < R.targets.size() && bad.empty(); ++w) {
            if (R.r[w] >= N) bad = "section misses an object";
            else if (R.xi[R.r[w]] != static_cast<int>(w)) bad = "xi o r is not the identity";
            for (std::size_t w2 = 0; w2 < R.targets.size() && bad.empty(); ++w2)
                if ((R.targets[w] & ~R.targets[w2]) == 0 && !R.le[R.r[w]][R.r[w2]]) bad = "r not monotone";
        }
        for (int a = 0; a < N && bad.empty(); ++a) {
            int b = R.r[R.xi[a]];
            if (!R.le[b][a] || !R.marked[b][a]) bad = "no marked comparison at " + R.objects[a].str();
        }
        rep.check(bad.empty(), [&] { return wit(bad); });
        return rep;
    });
}

}  // namespace mss
