#pragma once

#include "mss/decor.hpp"

namespace mss {

enum class Variant { tensor, boxtensor, odot, boxodot };

inline std::string variant_name(Variant v) {
    switch (v) {
        case Variant::tensor: return "tensor";
        case Variant::boxtensor: return "boxtensor";
        case Variant::odot: return "odot";
        case Variant::boxodot: return "boxodot";
    }
    return "";
}

inline Variant parse_variant(const std::string& s) {
    if (s == "tensor") return Variant::tensor;
    if (s == "boxtensor") return Variant::boxtensor;
    if (s == "odot") return Variant::odot;
    if (s == "boxodot") return Variant::boxodot;
    throw param_error("unknown tensor variant " + s);
}

inline bool globular(Variant v) { return v == Variant::odot || v == Variant::boxodot; }
inline bool boxed(Variant v) { return v == Variant::boxtensor || v == Variant::boxodot; }

inline bool tensor_edge_marked(Variant v, bool markedA, bool markedB) { return globular(v) ? markedA : markedA && markedB; }

// a12/b01: the 1->2 edge of the left component, the 0->1 edge of the right component.
inline bool tensor_triangle_thin(Variant v, bool thinA, bool thinB, bool a12, bool b01, bool degA, bool degB) {
    if (!thinA || !thinB) return false;
    if (!boxed(v)) return a12 || b01;
    return (a12 && degA) || (b01 && degB);
}

struct TensorResult {
    MSS value;
    std::shared_ptr<const ProductResult> prod;
};

// Decoration rule evaluated on a pair of simplices of the factors.
inline bool pair_marked(Variant v, const MSS& A, const MSS& B, const Simplex& a, const Simplex& b) {
    return tensor_edge_marked(v, A.is_marked(a), B.is_marked(b));
}

inline bool pair_thin(Variant v, const MSS& A, const MSS& B, const Simplex& a, const Simplex& b) {
    return tensor_triangle_thin(v, A.is_thin(a), B.is_thin(b), A.is_marked(A.base->face(a, 0)), B.is_marked(B.base->face(b, 2)),
                                a.dim < 2, b.dim < 2);
}

inline TensorResult tensor_full(const MSS& A, const MSS& B, Variant v, int maxDim = 4) {
    auto pr = std::make_shared<ProductResult>(product_with_components(*A.base, *B.base, maxDim));
    TensorResult r{flat_mss(share(pr->P)), pr};
    for (int e = 0; e < pr->P.count(1); ++e) {
        auto& [a, b] = pr->comps[1][e];
        r.value.marked[e] = pair_marked(v, A, B, a, b);
    }
    for (int t = 0; t < pr->P.count(2); ++t) {
        auto& [a, b] = pr->comps[2][t];
        r.value.thin[t] = pair_thin(v, A, B, a, b);
    }
    return r;
}

inline MSS tensor(const MSS& A, const MSS& B, Variant v, int maxDim = 4) { return tensor_full(A, B, v, maxDim).value; }

// Inverse of an injective map on nondegenerate simplices (-1 where not hit).
inline std::vector<std::vector<int>> preimages(const SSetMap& f) {
    std::vector<std::vector<int>> inv(f.cod->names.size());
    for (std::size_t d = 0; d < inv.size(); ++d) inv[d].assign(f.cod->count(static_cast<int>(d)), -1);
    for (std::size_t d = 0; d < f.images.size(); ++d)
        for (std::size_t i = 0; i < f.images[d].size(); ++i) {
            const Simplex& y = f.images[d][i];
            if (!y.nondegenerate()) throw param_error("pushout-product needs injective maps");
            if (inv[y.dim][y.index] >= 0) throw param_error("pushout-product needs injective maps");
            inv[y.dim][y.index] = static_cast<int>(i);
        }
    return inv;
}

// f : X -> Y and g : A -> B; returns X(*)B union_{X(*)A} Y(*)A -> Y(*)B.
inline DecoratedMap pushout_product(const DecoratedMap& f, const DecoratedMap& g, Variant v, int maxDim = 4) {
    auto invf = preimages(f.map);
    auto invg = preimages(g.map);
    const MSS& X = f.dom;
    const MSS& Y = f.cod;
    const MSS& A = g.dom;
    const MSS& B = g.cod;
    TensorResult T = tensor_full(Y, B, v, maxDim);
    const ProductResult& pr = *T.prod;
    auto pull = [](const std::vector<std::vector<int>>& inv, const Simplex& s) -> std::optional<Simplex> {
        int i = inv[s.dim][s.index];
        if (i < 0) return std::nullopt;
        return Simplex{s.dim, i, s.sur};
    };
    auto sub = subcomplex_with_map(T.value.base, [&](int d, int i) {
        auto& [y, b] = pr.comps[d][i];
        return pull(invf, y).has_value() || pull(invg, b).has_value();
    });
    MSS dom = flat_mss(sub.incl.dom);
    for (int e = 0; e < dom.base->count(1); ++e) {
        auto& [y, b] = pr.comps[1][sub.incl.images[1][e].index];
        bool m = false;
        if (auto x = pull(invf, y)) m = m || pair_marked(v, X, B, *x, b);
        if (auto a = pull(invg, b)) m = m || pair_marked(v, Y, A, y, *a);
        dom.marked[e] = m;
    }
    for (int t = 0; t < dom.base->count(2); ++t) {
        auto& [y, b] = pr.comps[2][sub.incl.images[2][t].index];
        bool th = false;
        if (auto x = pull(invf, y)) th = th || pair_thin(v, X, B, *x, b);
        if (auto a = pull(invg, b)) th = th || pair_thin(v, Y, A, y, *a);
        dom.thin[t] = th;
    }
    return DecoratedMap{dom, T.value, sub.incl};
}

enum class HomKind { gr, opgr, gl, opgl };

inline std::string hom_kind_name(HomKind k) {
    switch (k) {
        case HomKind::gr: return "gr";
        case HomKind::opgr: return "opgr";
        case HomKind::gl: return "gl";
        case HomKind::opgl: return "opgl";
    }
    return "";
}

inline HomKind parse_hom_kind(const std::string& s) {
    if (s == "gr") return HomKind::gr;
    if (s == "opgr") return HomKind::opgr;
    if (s == "gl") return HomKind::gl;
    if (s == "opgl") return HomKind::opgl;
    throw param_error("unknown mapping-object variance " + s);
}

inline bool probe_on_left(HomKind k) { return k == HomKind::gr || k == HomKind::gl; }

// Tensor variant whose maps out of are represented by the given mapping object.
inline Variant hom_variant(HomKind k, bool box) {
    bool glob = k == HomKind::gl || k == HomKind::opgl;
    if (glob) return box ? Variant::boxodot : Variant::odot;
    return box ? Variant::boxtensor : Variant::tensor;
}

inline MSS probe_tensor(HomKind k, bool box, const MSS& probe, const MSS& X, TensorResult* out = nullptr) {
    Variant v = hom_variant(k, box);
    int dim = probe.base->top() + std::max(X.base->top(), 0);
    TensorResult r = probe_on_left(k) ? tensor_full(probe, X, v, std::max(dim, 0)) : tensor_full(X, probe, v, std::max(dim, 0));
    if (out) *out = r;
    return r.value;
}

inline bool respects(const MSS& dom, const std::vector<std::vector<int>>& imgs, const Table& TD, const MSS& D) {
    for (int e = 0; e < dom.base->count(1); ++e)
        if (dom.marked[e] && !D.is_marked(TD.simp[1][imgs[1][e]])) return false;
    for (int t = 0; t < dom.base->count(2); ++t)
        if (dom.thin[t] && !D.is_thin(TD.simp[2][imgs[2][t]])) return false;
    return true;
}

struct FunLevel {
    TensorResult probe;                          // (Delta^n, flat, flat) tensored with X
    std::vector<std::vector<std::vector<int>>> maps;  // each map as table indices per nondegenerate simplex
};

struct FunResult {
    MSS value;
    HomKind kind;
    bool box = false;
    std::vector<FunLevel> levels;
    std::vector<std::vector<Simplex>> ez;  // normal form of each level element
};

inline std::vector<int> flatten(const std::vector<std::vector<int>>& imgs) {
    std::vector<int> k;
    for (std::size_t d = 0; d < imgs.size(); ++d) {
        k.push_back(-1 - static_cast<int>(d));
        k.insert(k.end(), imgs[d].begin(), imgs[d].end());
    }
    return k;
}

// Precomposes a map out of level n along theta : [m] -> [n].
inline std::vector<std::vector<int>> precompose_level(const FunResult& F, int m, int n, const Mono& theta,
                                                      const std::vector<std::vector<int>>& imgs, const Table& TD) {
    const auto& Pm = *F.levels[m].probe.prod;
    const auto& Pn = *F.levels[n].probe.prod;
    auto Dm = share(standard_simplex(m, m));
    auto Dn = share(standard_simplex(n, n));
    auto th = *map_from_vertices(Dm, Dn, theta);
    bool left = probe_on_left(F.kind);
    std::vector<std::vector<int>> out(Pm.P.names.size());
    for (int d = 0; d < static_cast<int>(Pm.P.names.size()); ++d)
        for (int i = 0; i < Pm.P.count(d); ++i) {
            auto [a, b] = Pm.comps[d][i];
            Simplex w = left ? Pn.locate(th(a), b) : Pn.locate(a, th(b));
            int base = imgs[w.dim][w.index];
            out[d].push_back(w.nondegenerate() ? base : TD.act(w.dim, base, w.sur));
        }
    return out;
}

// Fun^{gr/opgr/gl/opgl}(X, D) truncated at dimension L. Simplices are maps out of the flat probe;
// an edge is marked iff it extends over the marked probe, a triangle thin iff it extends over the scaled probe.
inline FunResult mapping_object(HomKind kind, const MSS& X, const MSS& D, int L, bool box = false) {
    FunResult F{MSS{}, kind, box, {}, {}};
    int depth = L + std::max(X.base->top(), 0);
    Table TD(*D.base, depth);
    AbstractSSet abs;
    abs.D = L;
    abs.count.resize(L + 1);
    abs.face.resize(L + 1);
    abs.degen.resize(L + 1);
    abs.label.resize(L + 1);
    std::vector<std::unordered_map<std::vector<int>, int, VecHash>> index(L + 1);
    for (int n = 0; n <= L; ++n) {
        FunLevel lev;
        MSS probe = std_shape(n, Flag::flat, Flag::flat, n);
        MSS P = probe_tensor(kind, box, probe, X, &lev.probe);
        if (P.base->top() < 0) {
            lev.maps.push_back(std::vector<std::vector<int>>(P.base->names.size()));
        } else {
            HomSearch h(P, D, depth);
            h.run([&](const std::vector<std::vector<int>>& imgs) {
                lev.maps.push_back(imgs);
                return true;
            });
        }
        for (std::size_t s = 0; s < lev.maps.size(); ++s) index[n][flatten(lev.maps[s])] = static_cast<int>(s);
        abs.count[n] = static_cast<int>(lev.maps.size());
        for (const auto& imgs : lev.maps) {
            std::string nm;
            for (std::size_t v = 0; v < imgs[0].size(); ++v) nm += (v ? "," : "") + D.base->name(0, TD.simp[0][imgs[0][v]].index);
            abs.label[n].push_back("[" + nm + "]");
        }
        F.levels.push_back(std::move(lev));
    }
    for (int n = 0; n <= L; ++n) {
        if (n > 0) {
            abs.face[n].resize(abs.count[n]);
            for (int s = 0; s < abs.count[n]; ++s)
                for (int i = 0; i <= n; ++i) {
                    auto img = precompose_level(F, n - 1, n, coface(n, i), F.levels[n].maps[s], TD);
                    abs.face[n][s].push_back(index[n - 1].at(flatten(img)));
                }
        }
        if (n < L) {
            abs.degen[n].resize(abs.count[n]);
            for (int s = 0; s < abs.count[n]; ++s)
                for (int j = 0; j <= n; ++j) {
                    auto img = precompose_level(F, n + 1, n, codegeneracy(n, j), F.levels[n].maps[s], TD);
                    abs.degen[n][s].push_back(index[n + 1].at(flatten(img)));
                }
        }
    }
    Built b = build_normal_form(abs, L);
    uniquify_names(b.X);
    F.ez = b.ez;
    F.value = flat_mss(share(b.X));
    auto decorate_level = [&](int n, Flag mark, Flag scale, std::vector<char>& flags) {
        if (n > L) return;
        MSS probe = std_shape(n, mark, scale, n);
        MSS P = probe_tensor(kind, box, probe, X);
        for (int s = 0; s < abs.count[n]; ++s) {
            const Simplex& e = b.ez[n][s];
            if (!e.nondegenerate()) continue;
            flags[e.index] = respects(P, F.levels[n].maps[s], TD, D);
        }
    };
    decorate_level(1, Flag::sharp, Flag::sharp, F.value.marked);
    decorate_level(2, Flag::flat, Flag::sharp, F.value.thin);
    return F;
}

// The two conditions characterising maps out of the Gray tensor product among maps out of C x D.
inline bool universal_subcategory_filter(const MSS& C, const MSS& D, const MSS& A, const SSetMap& F) {
    ProductResult pr = product_with_components(*C.base, *D.base, std::max(2, C.base->maxDim));
    auto thin_image = [&](const Simplex& a, const Simplex& b) { return A.is_thin(F(pr.locate(a, b))); };
    for (int x = 0; x < C.base->count(0); ++x)
        for (int t = 0; t < D.base->count(2); ++t)
            if (D.thin[t] && !thin_image(Simplex{0, x, {0, 0, 0}}, nondeg(2, t))) return false;
    for (int y = 0; y < D.base->count(0); ++y)
        for (int t = 0; t < C.base->count(2); ++t)
            if (C.thin[t] && !thin_image(nondeg(2, t), Simplex{0, y, {0, 0, 0}})) return false;
    for (int f = 0; f < C.base->count(1); ++f)
        for (int g = 0; g < D.base->count(1); ++g)
            if (!thin_image(Simplex{1, f, {0, 1, 1}}, Simplex{1, g, {0, 0, 1}})) return false;
    return true;
}

}  // namespace mss
