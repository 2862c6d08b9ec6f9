#pragma once

#include <numeric>

#include "mss/gray.hpp"
#include "mss/io.hpp"

namespace mss {

namespace detail {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n = 0) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    // the smaller id becomes the root, so representatives do not depend on the union order
    void unite(int a, int b) {
        a = find(a), b = find(b);
        if (a == b) return;
        if (a > b) std::swap(a, b);
        parent[b] = a;
    }
};

// The simplex of a standard simplex with the given vertex sequence.
inline Simplex mono_simplex(const FinSSet& D, const Mono& u) {
    auto [eta, delta] = epi_mono(u);
    for (int i = 0; i < D.count(static_cast<int>(delta.size()) - 1); ++i)
        if (D.vertices(static_cast<int>(delta.size()) - 1, i) == delta) return Simplex{static_cast<int>(delta.size()) - 1, i, eta};
    throw param_error("vertex sequence outside the standard simplex");
}

inline Mono compose_mono(const Mono& outer, const Mono& inner) {
    Mono r;
    for (int x : inner) r.push_back(outer[x]);
    return r;
}

// Cofaces and codegeneracies between [0..L], each with its codomain.
inline std::vector<std::pair<Mono, int>> elementary_operators(int L) {
    std::vector<std::pair<Mono, int>> ops;
    for (int n = 1; n <= L; ++n)
        for (int i = 0; i <= n; ++i) ops.push_back({coface(n, i), n});
    for (int n = 0; n < L; ++n)
        for (int j = 0; j <= n; ++j) ops.push_back({codegeneracy(n, j), n});
    return ops;
}

inline int mono_target(const Mono& t) { return t.empty() ? 0 : *std::max_element(t.begin(), t.end()); }

}  // namespace detail

// The colimit of the cells Δⁿ_♭ ⊛ (Δᵏ,♭,♯) → C (or C̄ for the globular variant), with its section and projection.
struct BigX {
    MSS value;
    MSS base;  // C, or C̄ for the globular variant
    DecoratedMap s, pi;
};

namespace detail {

struct CellFamily {
    int n = 0, k = 0;
    TensorResult probe;
    std::vector<std::vector<std::vector<int>>> cells;
    std::unordered_map<std::vector<int>, int, VecHash> index;
};

}  // namespace detail

inline BigX big_x(const MSS& C, Variant v, int maxIdx, int maxDim) {
    if (v != Variant::tensor && v != Variant::odot) throw param_error("big_x supports the tensor and odot variants");
    if (maxIdx < 0 || maxDim < 0) throw param_error("negative bound");
    if (C.base->top() > maxIdx) throw param_error("C has simplices above max-idx");
    MSS Ct = v == Variant::odot ? overline(C) : C;
    int depth = 2 * maxIdx;
    Table TD(*Ct.base, std::max(depth, maxDim));
    std::vector<SSetPtr> D(maxIdx + 2);
    for (int n = 0; n <= maxIdx + 1; ++n) D[n] = share(standard_simplex(n, std::max(n, maxDim)));

    std::map<std::pair<int, int>, detail::CellFamily> fam;
    auto family = [&](int n, int k) -> detail::CellFamily& {
        auto it = fam.find({n, k});
        if (it != fam.end()) return it->second;
        detail::CellFamily F;
        F.n = n, F.k = k;
        F.probe = tensor_full(std_shape(n, Flag::flat, Flag::flat, n), std_shape(k, Flag::flat, Flag::sharp, k), v, n + k);
        HomSearch h(F.probe.value, Ct, n + k);
        h.run([&](const std::vector<std::vector<int>>& imgs) {
            F.index[flatten(imgs)] = static_cast<int>(F.cells.size());
            F.cells.push_back(imgs);
            return true;
        });
        return fam.emplace(std::pair{n, k}, std::move(F)).first->second;
    };
    // the cell g ∘ (a × b) for monotone a : [n] -> [s], b : [k] -> [l]
    auto precompose = [&](const detail::CellFamily& G, int gi, int n, int k, const Mono& a, const Mono& b) {
        detail::CellFamily& F = family(n, k);
        auto am = *map_from_vertices(D[n], D[G.n], a);
        auto bm = *map_from_vertices(D[k], D[G.k], b);
        const auto& P = *F.probe.prod;
        const auto& Q = *G.probe.prod;
        std::vector<std::vector<int>> out(P.P.names.size());
        for (int d = 0; d < static_cast<int>(P.P.names.size()); ++d)
            for (int i = 0; i < P.P.count(d); ++i) {
                auto [x, y] = P.comps[d][i];
                Simplex w = Q.locate(am(x), bm(y));
                int base = G.cells[gi][w.dim][w.index];
                out[d].push_back(w.nondegenerate() ? base : TD.act(w.dim, base, w.sur));
            }
        return F.index.at(flatten(out));
    };
    // image under a cell of the simplex (u, w) of its product
    auto image = [&](const detail::CellFamily& F, int fi, const Mono& u, const Mono& w) {
        const auto& P = *F.probe.prod;
        Simplex p = P.locate(detail::mono_simplex(*D[F.n], u), detail::mono_simplex(*D[F.k], w));
        int base = F.cells[fi][p.dim][p.index];
        return p.nondegenerate() ? base : TD.act(p.dim, base, p.sur);
    };

    // Dimensions up to max-idx: every element (f, u, w) is equivalent to the diagonal of f ∘ (u × w).
    // Above max-idx the relation is computed explicitly over elementary operators.
    struct Elem {
        int n, k, f;
        Mono u, w;
    };
    AbstractSSet A;
    A.D = maxDim;
    A.count.assign(maxDim + 1, 0);
    A.face.resize(maxDim + 1);
    A.degen.resize(maxDim + 1);
    A.label.resize(maxDim + 1);
    std::vector<std::vector<int>> piIdx(maxDim + 1);
    std::vector<std::vector<Elem>> elems(maxDim + 1);
    std::vector<std::map<std::tuple<int, int, int, Mono, Mono>, int>> elemId(maxDim + 1);
    std::vector<std::vector<int>> classOf(maxDim + 1);

    for (int d = 0; d <= maxDim; ++d) {
        if (d <= maxIdx) {
            auto& F = family(d, d);
            A.count[d] = static_cast<int>(F.cells.size());
            for (int c = 0; c < A.count[d]; ++c) piIdx[d].push_back(image(F, c, identity_mono(d), identity_mono(d)));
            continue;
        }
        for (int n = 0; n <= maxIdx; ++n)
            for (int k = 0; k <= maxIdx; ++k) {
                auto& F = family(n, k);
                auto us = monotone_maps(d, n), ws = monotone_maps(d, k);
                for (int c = 0; c < static_cast<int>(F.cells.size()); ++c)
                    for (const auto& u : us)
                        for (const auto& w : ws) {
                            elemId[d][{n, k, c, u, w}] = static_cast<int>(elems[d].size());
                            elems[d].push_back({n, k, c, u, w});
                        }
            }
        detail::UnionFind uf(static_cast<int>(elems[d].size()));
        auto ops = detail::elementary_operators(maxIdx);
        for (int s = 0; s <= maxIdx; ++s)
            for (int l = 0; l <= maxIdx; ++l) {
                auto& G = family(s, l);
                for (const auto& [op, c] : ops)
                    for (int side = 0; side < 2; ++side) {
                        if (c != (side == 0 ? s : l)) continue;
                        int src = static_cast<int>(op.size()) - 1;
                        int n = side == 0 ? src : s, k = side == 0 ? l : src;
                        Mono a = side == 0 ? op : identity_mono(s), b = side == 0 ? identity_mono(l) : op;
                        for (int g = 0; g < static_cast<int>(G.cells.size()); ++g) {
                            int f = precompose(G, g, n, k, a, b);
                            for (const auto& u : monotone_maps(d, n))
                                for (const auto& w : monotone_maps(d, k))
                                    uf.unite(elemId[d].at({n, k, f, u, w}),
                                             elemId[d].at({s, l, g, detail::compose_mono(a, u), detail::compose_mono(b, w)}));
                        }
                    }
            }
        std::map<int, int> rootClass;
        classOf[d].resize(elems[d].size());
        for (int e = 0; e < static_cast<int>(elems[d].size()); ++e) {
            int r = uf.find(e);
            auto it = rootClass.find(r);
            if (it == rootClass.end()) {
                it = rootClass.emplace(r, A.count[d]++).first;
                const Elem& E = elems[d][r];
                piIdx[d].push_back(image(family(E.n, E.k), E.f, E.u, E.w));
            }
            classOf[d][e] = it->second;
        }
    }
    // class of the element (f, u, w) in dimension d
    auto classify = [&](const detail::CellFamily& F, int fi, const Mono& u, const Mono& w) {
        int d = static_cast<int>(u.size()) - 1;
        if (d <= maxIdx) return precompose(F, fi, d, d, u, w);
        return classOf[d][elemId[d].at({F.n, F.k, fi, u, w})];
    };
    for (int d = 0; d <= maxDim; ++d) {
        auto repr = [&](int c, auto&& fn) {
            if (d <= maxIdx) return fn(family(d, d), c, identity_mono(d), identity_mono(d));
            for (int e = 0; e < static_cast<int>(elems[d].size()); ++e)
                if (classOf[d][e] == c) {
                    const Elem& E = elems[d][e];
                    return fn(family(E.n, E.k), E.f, E.u, E.w);
                }
            throw std::logic_error("empty class");
        };
        if (d > 0) {
            A.face[d].resize(A.count[d]);
            for (int c = 0; c < A.count[d]; ++c)
                for (int i = 0; i <= d; ++i)
                    A.face[d][c].push_back(repr(c, [&](const detail::CellFamily& F, int fi, const Mono& u, const Mono& w) {
                        auto di = coface(d, i);
                        return classify(F, fi, detail::compose_mono(u, di), detail::compose_mono(w, di));
                    }));
        }
        if (d < maxDim) {
            A.degen[d].resize(A.count[d]);
            for (int c = 0; c < A.count[d]; ++c)
                for (int j = 0; j <= d; ++j)
                    A.degen[d][c].push_back(repr(c, [&](const detail::CellFamily& F, int fi, const Mono& u, const Mono& w) {
                        auto sj = codegeneracy(d, j);
                        return classify(F, fi, detail::compose_mono(u, sj), detail::compose_mono(w, sj));
                    }));
        }
        for (int c = 0; c < A.count[d]; ++c) {
            const Simplex& p = TD.simp[d][piIdx[d][c]];
            A.label[d].push_back(Ct.base->name(p.dim, p.index));
        }
    }
    Built b = build_normal_form(A, maxDim);
    uniquify_names(b.X);
    auto X = share(std::move(b.X));
    BigX R;
    R.base = Ct;
    R.value = flat_mss(X);
    SSetMap pi{X, Ct.base, {}};
    pi.images.resize(X->names.size());
    for (int d = 0; d <= maxDim; ++d)
        for (int c = 0; c < A.count[d]; ++c) {
            const Simplex& e = b.ez[d][c];
            if (!e.nondegenerate()) continue;
            if (static_cast<int>(pi.images[d].size()) != e.index) throw std::logic_error("normal form out of order");
            pi.images[d].push_back(TD.simp[d][piIdx[d][c]]);
        }
    R.value = pullback_decorations(X, pi, Ct);
    R.pi = DecoratedMap{R.value, Ct, pi};
    // s sends a simplex σ to the cell σ ∘ pr₁ on Δᵈ ⊛ Δᵈ
    SSetMap s{Ct.base, X, {}};
    s.images.resize(Ct.base->names.size());
    for (int d = 0; d < static_cast<int>(Ct.base->names.size()); ++d)
        for (int i = 0; i < Ct.base->count(d); ++i) {
            if (d > maxDim) throw param_error("C has simplices above max-dim");
            auto& F = family(d, d);
            const auto& P = *F.probe.prod;
            std::vector<std::vector<int>> imgs(P.P.names.size());
            for (int e = 0; e < static_cast<int>(P.P.names.size()); ++e)
                for (int q = 0; q < P.P.count(e); ++q) {
                    const Simplex& a = P.comps[e][q].first;
                    auto vs = D[d]->vertices(a);
                    imgs[e].push_back(TD.at(Ct.base->apply(nondeg(d, i), vs)));
                }
            s.images[d].push_back(b.ez[d][F.index.at(flatten(imgs))]);
        }
    R.s = DecoratedMap{Ct, R.value, s};
    return R;
}

// A simplicial object in marked simplicial sets truncated at level L.
struct TruncatedSimplicialObject {
    int L = 0;
    std::vector<MarkedSSet> levels;
    std::map<Mono, SSetMap> action;  // θ : [m] -> [n] acts F_n -> F_m; θ's length is m + 1, its codomain recorded separately
    std::map<Mono, int> codomain;

    const SSetMap& act(const Mono& theta, int n) const {
        auto it = action.find(key(theta, n));
        if (it == action.end()) throw param_error("missing action of a monotone map");
        return it->second;
    }
    // monotone maps into [n] are keyed by appending n
    static Mono key(const Mono& theta, int n) {
        Mono k = theta;
        k.push_back(-1 - n);
        return k;
    }
    void set(const Mono& theta, int n, SSetMap f) {
        action[key(theta, n)] = std::move(f);
        codomain[key(theta, n)] = n;
    }
};

inline std::vector<std::pair<Mono, int>> monotone_maps_upto(int L) {
    std::vector<std::pair<Mono, int>> out;
    for (int m = 0; m <= L; ++m)
        for (int n = 0; n <= L; ++n)
            for (auto& t : monotone_maps(m, n)) out.push_back({t, n});
    return out;
}

// Validity, decoration preservation and functoriality of every composable pair.
inline std::optional<std::string> check_simplicial(const TruncatedSimplicialObject& F) {
    if (static_cast<int>(F.levels.size()) != F.L + 1) return "expected " + std::to_string(F.L + 1) + " levels";
    auto all = monotone_maps_upto(F.L);
    auto nameOf = [](const Mono& t, int n) {
        std::string s = "[";
        for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
        return s + "]->[" + std::to_string(n) + "]";
    };
    for (auto& [t, n] : all) {
        int m = static_cast<int>(t.size()) - 1;
        auto it = F.action.find(TruncatedSimplicialObject::key(t, n));
        if (it == F.action.end()) return "missing action of " + nameOf(t, n);
        const SSetMap& f = it->second;
        if ((f.dom != F.levels[n].base && *f.dom != *F.levels[n].base) || (f.cod != F.levels[m].base && *f.cod != *F.levels[m].base)) return "action of " + nameOf(t, n) + " has the wrong endpoints";
        if (auto e = check_map(f)) return nameOf(t, n) + ": " + *e;
        for (int e = 0; e < f.dom->count(1); ++e) {
            const Simplex& y = f.images[1][e];
            if (F.levels[n].marked[e] && y.nondegenerate() && !F.levels[m].marked[y.index])
                return nameOf(t, n) + " does not preserve the marking";
        }
        if (t == identity_mono(n) && !maps_equal(f, identity_map(f.dom))) return "identity does not act trivially";
    }
    for (auto& [t, n] : all) {
        int m = static_cast<int>(t.size()) - 1;
        for (auto& [p, m2] : all) {
            if (m2 != m) continue;
            // (t ∘ p)^* = p^* ∘ t^*
            Mono tp = detail::compose_mono(t, p);
            auto lhs = F.act(tp, n);
            auto rhs = compose_maps(F.act(t, n), F.act(p, m));
            if (!maps_equal(lhs, rhs)) return "functoriality fails for " + nameOf(p, m) + " then " + nameOf(t, n);
        }
    }
    return std::nullopt;
}

inline MarkedSSet discrete_marked(const std::vector<std::string>& points, int maxDim) {
    FinSSet X(maxDim);
    for (const auto& p : points) X.add(0, p, {});
    return MarkedSSet{share(std::move(X)), {}};
}

inline std::string mono_name(const Mono& t) {
    std::string s;
    for (int x : t) s += std::to_string(x);
    return s;
}

// Levelwise discrete object of a simplicial set: F_m is the set S_m.
inline TruncatedSimplicialObject discrete_object(const FinSSet& S, int L) {
    TruncatedSimplicialObject F;
    F.L = L;
    Table T(S, L);
    auto label = [&](int m, int s) {
        const Simplex& x = T.simp[m][s];
        std::string nm = S.name(x.dim, x.index);
        if (!x.nondegenerate()) nm += "." + mono_name(x.sur);
        return nm;
    };
    for (int m = 0; m <= L; ++m) {
        std::vector<std::string> pts;
        for (int s = 0; s < T.size(m); ++s) pts.push_back(label(m, s));
        F.levels.push_back(discrete_marked(pts, L));
    }
    for (auto& [t, n] : monotone_maps_upto(L)) {
        int m = static_cast<int>(t.size()) - 1;
        SSetMap f{F.levels[n].base, F.levels[m].base, {}};
        f.images.resize(F.levels[n].base->names.size());
        for (int s = 0; s < T.size(n); ++s) f.images[0].push_back(nondeg(0, T.act(n, s, t)));
        F.set(t, n, std::move(f));
    }
    return F;
}

// The representable functor Hom(-, [n]) as a levelwise discrete object.
inline TruncatedSimplicialObject representable(int n, int L) { return discrete_object(standard_simplex(n, L), L); }

// The constant simplicial object at K.
inline TruncatedSimplicialObject constant_object(const MarkedSSet& K, int L) {
    TruncatedSimplicialObject F;
    F.L = L;
    for (int m = 0; m <= L; ++m) F.levels.push_back(K);
    for (auto& [t, n] : monotone_maps_upto(L)) F.set(t, n, identity_map(K.base));
    return F;
}

enum class CoendSide { gl, gr };

// ∫^{m ≤ L} (Δᵐ,♭,probe) ⊛ L♯(F_m), with ⊛ = ⊙ for gl and ⊗ for gr, the simplex factor on the left.
inline MSS coend(const TruncatedSimplicialObject& F, Flag probe, CoendSide side, int maxDim) {
    if (F.L < maxDim) throw param_error("truncation level " + std::to_string(F.L) + " is below max-dim " + std::to_string(maxDim));
    if (auto e = check_simplicial(F)) throw validation_error("not a simplicial object: " + *e);
    int L = F.L;
    Variant v = side == CoendSide::gl ? Variant::odot : Variant::tensor;
    std::vector<SSetPtr> D;
    std::vector<MSS> P, LF;
    std::vector<Table> TF;
    TF.reserve(L + 1);
    for (int m = 0; m <= L; ++m) {
        D.push_back(share(standard_simplex(m, std::max(m, maxDim))));
        P.push_back(with_flags(D[m], Flag::flat, probe));
        LF.push_back(l_sharp(F.levels[m]));
        TF.emplace_back(*F.levels[m].base, maxDim);
    }
    // elements of dimension d: (m, u : [d] -> [m], y ∈ (F_m)_d)
    std::vector<std::vector<std::vector<Mono>>> us(maxDim + 1, std::vector<std::vector<Mono>>(L + 1));
    std::vector<std::vector<std::map<Mono, int>>> uIdx(maxDim + 1, std::vector<std::map<Mono, int>>(L + 1));
    std::vector<std::vector<int>> off(maxDim + 1, std::vector<int>(L + 2, 0));
    for (int d = 0; d <= maxDim; ++d)
        for (int m = 0; m <= L; ++m) {
            us[d][m] = monotone_maps(d, m);
            for (int i = 0; i < static_cast<int>(us[d][m].size()); ++i) uIdx[d][m][us[d][m][i]] = i;
            off[d][m + 1] = off[d][m] + static_cast<int>(us[d][m].size()) * TF[m].size(d);
        }
    auto eid = [&](int d, int m, const Mono& u, int y) { return off[d][m] + uIdx[d][m].at(u) * TF[m].size(d) + y; };
    auto ops = detail::elementary_operators(L);
    std::vector<detail::UnionFind> uf;
    for (int d = 0; d <= maxDim; ++d) {
        uf.emplace_back(off[d][L + 1]);
        for (const auto& [th, n] : ops) {
            int m = static_cast<int>(th.size()) - 1;
            const SSetMap& f = F.act(th, n);
            for (const auto& u : us[d][m])
                for (int y = 0; y < TF[n].size(d); ++y) {
                    Simplex pulled = f(TF[n].simp[d][y]);
                    uf[d].unite(eid(d, n, detail::compose_mono(th, u), y), eid(d, m, u, TF[m].at(pulled)));
                }
        }
    }
    AbstractSSet A;
    A.D = maxDim;
    A.count.assign(maxDim + 1, 0);
    A.face.resize(maxDim + 1);
    A.degen.resize(maxDim + 1);
    A.label.resize(maxDim + 1);
    std::vector<std::vector<int>> cls(maxDim + 1), rep(maxDim + 1);
    auto locate = [&](int d, int e) {
        int m = 0;
        while (off[d][m + 1] <= e) ++m;
        int r = e - off[d][m];
        return std::tuple{m, us[d][m][r / TF[m].size(d)], r % TF[m].size(d)};
    };
    for (int d = 0; d <= maxDim; ++d) {
        cls[d].assign(off[d][L + 1], -1);
        for (int e = 0; e < off[d][L + 1]; ++e) {
            int r = uf[d].find(e);
            if (cls[d][r] < 0) {
                cls[d][r] = A.count[d]++;
                rep[d].push_back(r);
                auto [m, u, y] = locate(d, r);
                const Simplex& ys = TF[m].simp[d][y];
                std::string nm = F.levels[m].base->name(ys.dim, ys.index);
                if (!ys.nondegenerate()) nm += "." + mono_name(ys.sur);
                A.label[d].push_back(m == 0 ? nm : mono_name(u) + "|" + nm);
            }
            cls[d][e] = cls[d][r];
        }
    }
    for (int d = 0; d <= maxDim; ++d) {
        if (d > 0) A.face[d].resize(A.count[d]);
        if (d < maxDim) A.degen[d].resize(A.count[d]);
        for (int c = 0; c < A.count[d]; ++c) {
            auto [m, u, y] = locate(d, rep[d][c]);
            const Table& T = TF[m];
            if (d > 0)
                for (int i = 0; i <= d; ++i) {
                    auto di = coface(d, i);
                    A.face[d][c].push_back(cls[d - 1][eid(d - 1, m, detail::compose_mono(u, di), T.face[d][y][i])]);
                }
            if (d < maxDim)
                for (int j = 0; j <= d; ++j) {
                    auto sj = codegeneracy(d, j);
                    A.degen[d][c].push_back(cls[d + 1][eid(d + 1, m, detail::compose_mono(u, sj), T.act(d, y, sj))]);
                }
        }
    }
    Built b = build_normal_form(A, maxDim);
    uniquify_names(b.X);
    auto X = share(std::move(b.X));
    MSS out = flat_mss(X);
    // a simplex is decorated when some representative is decorated in its component
    for (int d = 1; d <= std::min(2, maxDim); ++d)
        for (int e = 0; e < off[d][L + 1]; ++e) {
            const Simplex& s = b.ez[d][cls[d][e]];
            if (!s.nondegenerate()) continue;
            auto [m, u, y] = locate(d, e);
            Simplex a = detail::mono_simplex(*D[m], u);
            const Simplex& ys = TF[m].simp[d][y];
            if (d == 1 && pair_marked(v, P[m], LF[m], a, ys)) out.marked[s.index] = 1;
            if (d == 2 && pair_thin(v, P[m], LF[m], a, ys)) out.thin[s.index] = 1;
        }
    return out;
}

enum class LevelFunctor { Sq, SqE, Gl, GlE };

inline LevelFunctor parse_level_functor(const std::string& s) {
    if (s == "Sq") return LevelFunctor::Sq;
    if (s == "SqE") return LevelFunctor::SqE;
    if (s == "Gl") return LevelFunctor::Gl;
    if (s == "GlE") return LevelFunctor::GlE;
    throw param_error("unknown functor " + s + " (expected Sq, SqE, Gl or GlE)");
}

inline HomKind level_kind(LevelFunctor f) { return f == LevelFunctor::Sq || f == LevelFunctor::SqE ? HomKind::opgr : HomKind::opgl; }
inline Flag level_probe_scaling(LevelFunctor f) { return f == LevelFunctor::Sq || f == LevelFunctor::Gl ? Flag::sharp : Flag::flat; }

struct LevelResult {
    FunResult fun;
    MarkedSSet core;
    SSetMap incl;  // core -> fun.value
};

inline LevelResult level_full(const MSS& C, LevelFunctor fn, int n, int maxDim) {
    MSS arg = std_shape(n, Flag::flat, level_probe_scaling(fn), n);
    LevelResult r;
    r.fun = mapping_object(level_kind(fn), arg, C, maxDim);
    r.core = core_leq1(r.fun.value, &r.incl);
    return r;
}

// Fun^{opgr/opgl}((Δⁿ,♭,♭ or ♯), C)^{≤1}.
inline MarkedSSet levelwise(const MSS& C, LevelFunctor fn, int n, int maxDim) { return level_full(C, fn, n, maxDim).core; }

// The levels 0..L assembled with the action of monotone maps by precomposition.
inline TruncatedSimplicialObject levelwise_object(const MSS& C, LevelFunctor fn, int L, int maxDim) {
    std::vector<LevelResult> lv;
    for (int n = 0; n <= L; ++n) lv.push_back(level_full(C, fn, n, maxDim));
    TruncatedSimplicialObject F;
    F.L = L;
    for (auto& r : lv) F.levels.push_back(r.core);
    int depth = maxDim + L;
    Table TD(*C.base, depth);
    bool left = probe_on_left(level_kind(fn));
    for (auto& [t, n] : monotone_maps_upto(L)) {
        int m = static_cast<int>(t.size()) - 1;
        const LevelResult& src = lv[n];
        const LevelResult& dst = lv[m];
        auto Dm = share(standard_simplex(m, m));
        auto Dn = share(standard_simplex(n, n));
        auto th = *map_from_vertices(Dm, Dn, t);
        std::vector<std::unordered_map<std::vector<int>, int, VecHash>> dstIndex(maxDim + 1);
        for (int k = 0; k <= maxDim; ++k)
            for (int s = 0; s < static_cast<int>(dst.fun.levels[k].maps.size()); ++s) dstIndex[k][flatten(dst.fun.levels[k].maps[s])] = s;
        // inverse of the core inclusions on nondegenerate simplices
        auto coreIndex = [](const LevelResult& r) {
            std::vector<std::map<int, int>> inv(r.incl.images.size());
            for (std::size_t d = 0; d < r.incl.images.size(); ++d)
                for (std::size_t i = 0; i < r.incl.images[d].size(); ++i) inv[d][r.incl.images[d][i].index] = static_cast<int>(i);
            return inv;
        };
        auto dstCore = coreIndex(dst);
        // a level element of the source for each nondegenerate simplex
        std::vector<std::map<int, int>> srcElem(maxDim + 1);
        for (int k = 0; k <= maxDim; ++k)
            for (int s = 0; s < static_cast<int>(src.fun.ez[k].size()); ++s)
                if (src.fun.ez[k][s].nondegenerate()) srcElem[k].emplace(src.fun.ez[k][s].index, s);
        SSetMap f{F.levels[n].base, F.levels[m].base, {}};
        f.images.resize(F.levels[n].base->names.size());
        for (int k = 0; k < static_cast<int>(src.incl.images.size()); ++k)
            for (const auto& y : src.incl.images[k]) {
                int s = srcElem[k].at(y.index);
                const auto& Pm = *dst.fun.levels[k].probe.prod;
                const auto& Pn = *src.fun.levels[k].probe.prod;
                const auto& imgs = src.fun.levels[k].maps[s];
                std::vector<std::vector<int>> out(Pm.P.names.size());
                for (int d = 0; d < static_cast<int>(Pm.P.names.size()); ++d)
                    for (int i = 0; i < Pm.P.count(d); ++i) {
                        auto [a, b] = Pm.comps[d][i];
                        // the argument Δ is the non-probe factor
                        Simplex w = left ? Pn.locate(a, th(b)) : Pn.locate(th(a), b);
                        int base = imgs[w.dim][w.index];
                        out[d].push_back(w.nondegenerate() ? base : TD.act(w.dim, base, w.sur));
                    }
                const Simplex& z = dst.fun.ez[k][dstIndex[k].at(flatten(out))];
                f.images[k].push_back(Simplex{z.dim, dstCore[z.dim].at(z.index), z.sur});
            }
        F.set(t, n, std::move(f));
    }
    return F;
}

inline json marked_to_json(const MarkedSSet& k) {
    json j = sset_to_json(*k.base);
    auto ids = simplex_ids(*k.base);
    json mk = json::array();
    for (int e = 0; e < k.base->count(1); ++e)
        if (k.marked[e]) mk.push_back(ids[1][e]);
    j["marked"] = mk;
    return j;
}

inline MarkedSSet marked_from_json(const json& j, const std::string& path = "$") {
    MSS m = mss_from_json(j, path);
    if (!m.thin_ids().empty()) throw validation_error(path + ".thin: a level of a simplicial object carries no scaling");
    return MarkedSSet{m.base, m.marked};
}

// On disk: level_<m>.json for each level and action.json listing the map file of each monotone map.
inline void write_truncated(const TruncatedSimplicialObject& F, const std::string& dir) {
    std::filesystem::create_directories(dir);
    for (int m = 0; m <= F.L; ++m) write_json_file(dir + "/level_" + std::to_string(m) + ".json", marked_to_json(F.levels[m]));
    json maps = json::array();
    for (auto& [t, n] : monotone_maps_upto(F.L)) {
        int m = static_cast<int>(t.size()) - 1;
        std::string file = "map_" + std::to_string(n) + "_" + mono_name(t) + ".json";
        json tj = json::array();
        for (int x : t) tj.push_back(x);
        maps.push_back(json{{"theta", tj}, {"target", n}, {"file", file}});
        write_json_file(dir + "/" + file,
                        map_to_json(F.act(t, n), "level_" + std::to_string(n) + ".json", "level_" + std::to_string(m) + ".json"));
    }
    write_json_file(dir + "/action.json", json{{"L", F.L}, {"maps", maps}});
}

inline TruncatedSimplicialObject read_truncated(const std::string& dir) {
    json act = read_json_file(dir + "/action.json");
    TruncatedSimplicialObject F;
    const json& L = detail::field(act, "L", dir + "/action.json");
    if (!L.is_number_integer() || L.get<int>() < 0) throw validation_error(dir + "/action.json.L: expected a nonnegative integer");
    F.L = L.get<int>();
    for (int m = 0; m <= F.L; ++m) {
        std::string file = dir + "/level_" + std::to_string(m) + ".json";
        F.levels.push_back(marked_from_json(read_json_file(file), file));
    }
    const json& maps = detail::field(act, "maps", dir + "/action.json");
    if (!maps.is_array()) throw validation_error(dir + "/action.json.maps: expected an array");
    for (std::size_t i = 0; i < maps.size(); ++i) {
        std::string p = dir + "/action.json.maps[" + std::to_string(i) + "]";
        Mono t = detail::field(maps[i], "theta", p).get<Mono>();
        int n = detail::field(maps[i], "target", p).get<int>();
        int m = static_cast<int>(t.size()) - 1;
        if (m < 0 || m > F.L || n < 0 || n > F.L || !is_monotone(t) || detail::mono_target(t) > n)
            throw validation_error(p + ".theta: not a monotone map within the truncation");
        std::string file = dir + "/" + detail::field(maps[i], "file", p).get<std::string>();
        F.set(t, n, map_from_json(read_json_file(file), F.levels[n].base, F.levels[m].base, file));
    }
    return F;
}

}  // namespace mss
