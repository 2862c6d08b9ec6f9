#pragma once

#include <set>

#include "mss/sset.hpp"

namespace mss {

enum class Flag { flat, sharp };

// Marked-scaled simplicial set; flags are indexed by nondegenerate edges and triangles.
struct MSS {
    SSetPtr base;
    std::vector<char> marked;
    std::vector<char> thin;
    std::optional<std::vector<char>> lean;

    const FinSSet& X() const { return *base; }

    bool is_marked(const Simplex& e) const { return e.dim < 1 || marked[e.index]; }
    bool is_thin(const Simplex& t) const { return t.dim < 2 || thin[t.index]; }
    bool is_lean(const Simplex& t) const {
        if (t.dim < 2) return true;
        return lean ? (*lean)[t.index] || thin[t.index] : thin[t.index];
    }
    bool marked_nd(int i) const { return marked[i]; }
    bool thin_nd(int i) const { return thin[i]; }

    std::vector<int> marked_ids() const {
        std::vector<int> r;
        for (int i = 0; i < static_cast<int>(marked.size()); ++i)
            if (marked[i]) r.push_back(i);
        return r;
    }
    std::vector<int> thin_ids() const {
        std::vector<int> r;
        for (int i = 0; i < static_cast<int>(thin.size()); ++i)
            if (thin[i]) r.push_back(i);
        return r;
    }
    bool operator==(const MSS& o) const {
        return *base == *o.base && marked == o.marked && thin == o.thin && lean == o.lean;
    }
};

struct MarkedSSet {
    SSetPtr base;
    std::vector<char> marked;
    bool is_marked(const Simplex& e) const { return e.dim < 1 || marked[e.index]; }
};

inline MSS flat_mss(SSetPtr X) {
    MSS m{X, std::vector<char>(X->count(1), 0), std::vector<char>(X->count(2), 0), std::nullopt};
    return m;
}

inline MSS decorate(SSetPtr X, const std::vector<int>& marked, const std::vector<int>& thin,
                    const std::optional<std::vector<int>>& lean = std::nullopt) {
    MSS m = flat_mss(X);
    for (int e : marked) {
        if (e < 0 || e >= X->count(1)) throw validation_error("marked id is not an edge: " + std::to_string(e));
        m.marked[e] = 1;
    }
    for (int t : thin) {
        if (t < 0 || t >= X->count(2)) throw validation_error("thin id is not a triangle: " + std::to_string(t));
        m.thin[t] = 1;
    }
    if (lean) {
        m.lean = std::vector<char>(X->count(2), 0);
        for (int t : *lean) {
            if (t < 0 || t >= X->count(2)) throw validation_error("lean id is not a triangle: " + std::to_string(t));
            (*m.lean)[t] = 1;
        }
        for (int t : thin)
            if (!(*m.lean)[t]) throw validation_error("thin triangle missing from lean set: " + X->name(2, t));
    }
    return m;
}

inline int id_of(const FinSSet& X, int d, const std::string& nm) {
    for (int i = 0; i < X.count(d); ++i)
        if (X.name(d, i) == nm) return i;
    throw validation_error("unknown " + std::to_string(d) + "-simplex " + nm);
}

inline MSS decorate_named(SSetPtr X, const std::vector<std::string>& marked, const std::vector<std::string>& thin,
                          const std::optional<std::vector<std::string>>& lean = std::nullopt) {
    std::vector<int> m, t;
    for (auto& s : marked) m.push_back(id_of(*X, 1, s));
    for (auto& s : thin) t.push_back(id_of(*X, 2, s));
    std::optional<std::vector<int>> l;
    if (lean) {
        l.emplace();
        for (auto& s : *lean) l->push_back(id_of(*X, 2, s));
    }
    return decorate(X, m, t, l);
}

inline MSS with_flags(SSetPtr X, Flag mark, Flag scale) {
    MSS m = flat_mss(X);
    if (mark == Flag::sharp) std::fill(m.marked.begin(), m.marked.end(), 1);
    if (scale == Flag::sharp) std::fill(m.thin.begin(), m.thin.end(), 1);
    return m;
}

inline MSS std_shape(int n, Flag mark, Flag scale, int maxDim = 4) {
    return with_flags(share(standard_simplex(n, maxDim)), mark, scale);
}

inline std::optional<std::string> check_mss(const MSS& m) {
    if (auto e = check_sset(*m.base)) return e;
    if (static_cast<int>(m.marked.size()) != m.base->count(1)) return "marking size mismatch";
    if (static_cast<int>(m.thin.size()) != m.base->count(2)) return "scaling size mismatch";
    if (m.lean) {
        if (static_cast<int>(m.lean->size()) != m.base->count(2)) return "lean size mismatch";
        for (int t = 0; t < m.base->count(2); ++t)
            if (m.thin[t] && !(*m.lean)[t]) return "thin triangle not lean: " + m.base->name(2, t);
    }
    return std::nullopt;
}

struct DecoratedMap {
    MSS dom, cod;
    SSetMap map;
};

inline std::optional<std::string> check_decorated_map(const DecoratedMap& f) {
    if (auto e = check_map(f.map)) return e;
    const FinSSet& X = *f.dom.base;
    for (int i = 0; i < X.count(1); ++i)
        if (f.dom.marked[i] && !f.cod.is_marked(f.map.images[1][i])) return "marked edge not preserved: " + X.name(1, i);
    for (int i = 0; i < X.count(2); ++i) {
        if (f.dom.thin[i] && !f.cod.is_thin(f.map.images[2][i])) return "thin triangle not preserved: " + X.name(2, i);
        if (f.dom.is_lean(nondeg(2, i)) && !f.cod.is_lean(f.map.images[2][i]))
            return "lean triangle not preserved: " + X.name(2, i);
    }
    return std::nullopt;
}

inline bool validate_decorated_map(const DecoratedMap& f) { return !check_decorated_map(f).has_value(); }

inline DecoratedMap decorated_identity(const MSS& m) { return {m, m, identity_map(m.base)}; }

inline DecoratedMap compose_decorated(const DecoratedMap& f, const DecoratedMap& g) {
    return {f.dom, g.cod, compose_maps(f.map, g.map)};
}

// Every 2-dimensional face of x, degenerate ones included.
inline std::vector<Simplex> triangles_of(const FinSSet& X, const Simplex& x) {
    std::vector<Simplex> r;
    int d = x.degree();
    for (int a = 0; a <= d; ++a)
        for (int b = a + 1; b <= d; ++b)
            for (int c = b + 1; c <= d; ++c) r.push_back(X.apply(x, Mono{a, b, c}));
    return r;
}

// (-)^{<=1}: the largest subcomplex all of whose triangles are thin, with inherited marking.
inline MarkedSSet core_leq1(const MSS& m, SSetMap* inclusion = nullptr) {
    auto sub = subcomplex_with_map(m.base, [&](int d, int i) {
        for (const auto& t : triangles_of(*m.base, nondeg(d, i)))
            if (!m.is_thin(t)) return false;
        return true;
    });
    MarkedSSet k{sub.incl.dom, {}};
    for (int i = 0; i < k.base->count(1); ++i) k.marked.push_back(m.marked[sub.incl.images[1][i].index]);
    if (inclusion) *inclusion = sub.incl;
    return k;
}

inline MSS l_sharp(const MarkedSSet& k) {
    MSS m{k.base, k.marked, std::vector<char>(k.base->count(2), 1), std::nullopt};
    return m;
}

inline MSS as_mss_flat_scaling(const MarkedSSet& k) {
    return MSS{k.base, k.marked, std::vector<char>(k.base->count(2), 0), std::nullopt};
}

// Thin triangles whose 0->1 or 1->2 edge is marked.
inline MSS overline(const MSS& c) {
    MSS r = c;
    for (int t = 0; t < c.base->count(2); ++t) {
        if (!c.thin[t]) continue;
        Simplex s = nondeg(2, t);
        bool keep = c.is_marked(c.base->face(s, 2)) || c.is_marked(c.base->face(s, 0));
        r.thin[t] = keep ? 1 : 0;
    }
    if (r.lean)
        for (int t = 0; t < c.base->count(2); ++t) (*r.lean)[t] = (*r.lean)[t] || r.thin[t];
    return r;
}

inline bool is_idle(const Mono& f) {
    if (!is_monotone(f)) throw param_error("map is not monotone");
    for (std::size_t i = 1; i < f.size(); ++i)
        if (f[i] - f[i - 1] > 1) return false;
    return true;
}

// Enumeration of decoration-preserving maps A -> B.
class HomSearch {
public:
    HomSearch(const MSS& A, const MSS& B, int depth = -1)
        : A_(A), B_(B), D_(depth < 0 ? std::max(A.base->top(), 0) : depth), T_(*B.base, std::max(D_, 0)) {
        const FinSSet& X = *A.base;
        for (int d = 0; d <= std::min(D_, static_cast<int>(X.names.size()) - 1); ++d)
            for (int i = 0; i < X.count(d); ++i) {
                int mx = 0;
                for (int v : X.vertices(d, i)) mx = std::max(mx, v);
                order_.push_back({mx, d, i});
            }
        std::sort(order_.begin(), order_.end());
        byFaces_.resize(D_ + 1);
        for (int m = 1; m <= D_; ++m)
            for (int s = 0; s < T_.size(m); ++s) byFaces_[m][T_.face[m][s]].push_back(s);
        cur_.resize(X.names.size());
        for (int d = 0; d < static_cast<int>(X.names.size()); ++d) cur_[d].assign(X.count(d), -1);
    }

    // Calls visit for each map; stops early if visit returns false.
    void run(const std::function<bool(const std::vector<std::vector<int>>&)>& visit) {
        visit_ = &visit;
        stop_ = false;
        rec(0);
    }

    long count() {
        long n = 0;
        std::function<bool(const std::vector<std::vector<int>>&)> v = [&](const auto&) {
            ++n;
            return true;
        };
        run(v);
        return n;
    }

    SSetMap to_map(const std::vector<std::vector<int>>& imgs, SSetPtr dom) const {
        SSetMap f{dom, B_.base, {}};
        f.images.resize(dom->names.size());
        for (std::size_t d = 0; d < imgs.size(); ++d)
            for (int s : imgs[d]) f.images[d].push_back(T_.simp[d][s]);
        return f;
    }

    const Table& table() const { return T_; }

private:
    struct Key {
        int mx, d, i;
        bool operator<(const Key& o) const { return std::tie(mx, d, i) < std::tie(o.mx, o.d, o.i); }
    };

    bool admissible(int d, int i, int s) const {
        const Simplex& y = T_.simp[d][s];
        if (d == 1 && A_.marked[i] && !B_.is_marked(y)) return false;
        if (d == 2) {
            if (A_.thin[i] && !B_.is_thin(y)) return false;
            if (A_.lean && A_.is_lean(nondeg(2, i)) && !B_.is_lean(y)) return false;
        }
        return true;
    }

    int image_of(const Simplex& f) const {
        int s = cur_[f.dim][f.index];
        if (f.nondegenerate()) return s;
        return T_.act(f.dim, s, f.sur);
    }

    void rec(std::size_t pos) {
        if (stop_) return;
        if (pos == order_.size()) {
            if (!(*visit_)(cur_)) stop_ = true;
            return;
        }
        auto [mx, d, i] = order_[pos];
        (void)mx;
        if (d == 0) {
            for (int s = 0; s < T_.size(0) && !stop_; ++s) {
                cur_[0][i] = s;
                rec(pos + 1);
            }
            cur_[0][i] = -1;
            return;
        }
        std::vector<int> key;
        for (const auto& f : A_.base->faces[d][i]) key.push_back(image_of(f));
        auto it = byFaces_[d].find(key);
        if (it == byFaces_[d].end()) return;
        for (int s : it->second) {
            if (stop_) break;
            if (!admissible(d, i, s)) continue;
            cur_[d][i] = s;
            rec(pos + 1);
        }
        cur_[d][i] = -1;
    }

    const MSS& A_;
    const MSS& B_;
    int D_;
    Table T_;
    std::vector<Key> order_;
    std::vector<std::unordered_map<std::vector<int>, std::vector<int>, VecHash>> byFaces_;
    std::vector<std::vector<int>> cur_;
    const std::function<bool(const std::vector<std::vector<int>>&)>* visit_ = nullptr;
    bool stop_ = false;
};

inline long count_maps(const MSS& A, const MSS& B) {
    if (A.base->top() < 0) return 1;
    return HomSearch(A, B).count();
}

inline std::vector<SSetMap> all_maps(const MSS& A, const MSS& B) {
    std::vector<SSetMap> out;
    if (A.base->top() < 0) {
        out.push_back(SSetMap{A.base, B.base, std::vector<std::vector<Simplex>>(A.base->names.size())});
        return out;
    }
    HomSearch h(A, B);
    h.run([&](const std::vector<std::vector<int>>& imgs) {
        out.push_back(h.to_map(imgs, A.base));
        return true;
    });
    return out;
}

inline bool decorations_equal(const MSS& a, const MSS& b) { return a.marked == b.marked && a.thin == b.thin; }

// Decoration-exact isomorphism.
inline std::optional<SSetMap> iso_check_decorated(const MSS& a, const MSS& b) {
    if (a.lean.has_value() != b.lean.has_value()) return std::nullopt;
    return iso_check(a.base, b.base, [&](int d, int x, int y) {
        if (d == 1) return a.marked[x] == b.marked[y];
        if (d == 2) {
            if (a.thin[x] != b.thin[y]) return false;
            if (a.lean && (*a.lean)[x] != (*b.lean)[y]) return false;
        }
        return true;
    });
}

// Transports decorations along an isomorphism or pulls them back along a map.
inline MSS pullback_decorations(SSetPtr X, const SSetMap& f, const MSS& target) {
    MSS m = flat_mss(X);
    for (int i = 0; i < X->count(1); ++i) m.marked[i] = target.is_marked(f.images[1][i]);
    for (int i = 0; i < X->count(2); ++i) m.thin[i] = target.is_thin(f.images[2][i]);
    if (target.lean) {
        m.lean = std::vector<char>(X->count(2), 0);
        for (int i = 0; i < X->count(2); ++i) (*m.lean)[i] = target.is_lean(f.images[2][i]);
    }
    return m;
}

}  // namespace mss
