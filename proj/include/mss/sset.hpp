#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace mss {

struct param_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A monotone map [m] -> [n] stored as its list of values.
using Mono = std::vector<int>;

struct VecHash {
    std::size_t operator()(const std::vector<int>& v) const noexcept {
        std::size_t h = v.size();
        for (int x : v) h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

inline Mono identity_mono(int n) {
    Mono r(n + 1);
    std::iota(r.begin(), r.end(), 0);
    return r;
}

// (s o t)(i) = s(t(i))
inline Mono compose(const Mono& s, const Mono& t) {
    Mono r(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) r[i] = s[t[i]];
    return r;
}

// coface d_i : [m-1] -> [m]
inline Mono coface(int m, int i) {
    Mono r;
    for (int t = 0; t <= m; ++t)
        if (t != i) r.push_back(t);
    return r;
}

// codegeneracy s_j : [m+1] -> [m]
inline Mono codegeneracy(int m, int j) {
    Mono r;
    for (int t = 0; t <= m + 1; ++t) r.push_back(t <= j ? t : t - 1);
    return r;
}

inline bool is_monotone(const Mono& f) {
    for (std::size_t i = 1; i < f.size(); ++i)
        if (f[i] < f[i - 1]) return false;
    return true;
}

inline bool is_injective_mono(const Mono& f) {
    for (std::size_t i = 1; i < f.size(); ++i)
        if (f[i] <= f[i - 1]) return false;
    return true;
}

inline bool is_surjective_onto(const Mono& f, int n) {
    if (f.empty() || f.front() != 0 || f.back() != n) return false;
    for (std::size_t i = 1; i < f.size(); ++i)
        if (f[i] - f[i - 1] > 1 || f[i] < f[i - 1]) return false;
    return true;
}

// f = mono o epi
inline std::pair<Mono, Mono> epi_mono(const Mono& f) {
    Mono epi, mono;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (i == 0 || f[i] != f[i - 1]) mono.push_back(f[i]);
        epi.push_back(static_cast<int>(mono.size()) - 1);
    }
    return {epi, mono};
}

inline std::vector<Mono> monotone_maps(int m, int n) {
    std::vector<Mono> out;
    Mono cur;
    std::function<void(int)> rec = [&](int lo) {
        if (static_cast<int>(cur.size()) == m + 1) {
            out.push_back(cur);
            return;
        }
        for (int v = lo; v <= n; ++v) {
            cur.push_back(v);
            rec(v);
            cur.pop_back();
        }
    };
    if (m >= 0 && n >= 0) rec(0);
    return out;
}

inline std::vector<Mono> surjections(int m, int d) {
    std::vector<Mono> out;
    for (auto& f : monotone_maps(m, d))
        if (is_surjective_onto(f, d)) out.push_back(f);
    return out;
}

// Degeneracy word of a surjection: the indices j with f(j) = f(j+1), listed decreasingly.
inline std::vector<int> word_of(const Mono& sur) {
    std::vector<int> w;
    for (int j = static_cast<int>(sur.size()) - 2; j >= 0; --j)
        if (sur[j] == sur[j + 1]) w.push_back(j);
    return w;
}

inline Mono surjection_of_word(const std::vector<int>& word, int targetDim) {
    int m = targetDim + static_cast<int>(word.size());
    for (std::size_t p = 0; p < word.size(); ++p) {
        if (word[p] < 0 || word[p] >= m) throw validation_error("degeneracy index out of range");
        if (p > 0 && word[p] >= word[p - 1]) throw validation_error("degeneracy word not strictly decreasing");
    }
    Mono f(m + 1, 0);
    for (int t = 0; t < m; ++t) {
        bool rep = std::find(word.begin(), word.end(), t) != word.end();
        f[t + 1] = f[t] + (rep ? 0 : 1);
    }
    return f;
}

// A simplex x . sur with x the nondegenerate simplex (dim, index).
struct Simplex {
    int dim = 0;
    int index = 0;
    Mono sur;

    int degree() const { return static_cast<int>(sur.size()) - 1; }
    bool nondegenerate() const { return degree() == dim; }
    auto operator<=>(const Simplex&) const = default;
    bool operator==(const Simplex&) const = default;
};

inline Simplex nondeg(int dim, int index) { return Simplex{dim, index, identity_mono(dim)}; }

struct SimplexHash {
    std::size_t operator()(const Simplex& s) const noexcept {
        std::vector<int> v{s.dim, s.index};
        v.insert(v.end(), s.sur.begin(), s.sur.end());
        return VecHash{}(v);
    }
};

// Finite simplicial set in Eilenberg-Zilber normal form, truncated at maxDim.
struct FinSSet {
    int maxDim = 4;
    std::vector<std::vector<std::string>> names;
    std::vector<std::vector<std::vector<Simplex>>> faces;

    FinSSet() = default;
    explicit FinSSet(int md) : maxDim(md), names(md + 1), faces(md + 1) {}

    int count(int d) const { return d >= 0 && d < static_cast<int>(names.size()) ? static_cast<int>(names[d].size()) : 0; }

    int top() const {
        for (int d = static_cast<int>(names.size()) - 1; d >= 0; --d)
            if (!names[d].empty()) return d;
        return -1;
    }

    std::vector<int> counts() const {
        std::vector<int> c;
        for (int d = 0; d <= maxDim; ++d) c.push_back(count(d));
        while (!c.empty() && c.back() == 0) c.pop_back();
        return c;
    }

    int total() const {
        int t = 0;
        for (int d = 0; d <= maxDim; ++d) t += count(d);
        return t;
    }

    int add(int d, std::string name, std::vector<Simplex> fs) {
        if (d > maxDim) throw param_error("simplex above truncation");
        names[d].push_back(std::move(name));
        faces[d].push_back(std::move(fs));
        return count(d) - 1;
    }

    const std::string& name(int d, int i) const { return names[d][i]; }

    bool operator==(const FinSSet&) const = default;

    // x . theta for a monotone theta : [p] -> [deg x]
    Simplex apply(const Simplex& x, const Mono& theta) const {
        auto [eta, delta] = epi_mono(compose(x.sur, theta));
        Simplex y = restrict_injective(x.dim, x.index, delta);
        return Simplex{y.dim, y.index, compose(y.sur, eta)};
    }

    Simplex face(const Simplex& x, int i) const { return apply(x, coface(x.degree(), i)); }
    Simplex degeneracy(const Simplex& x, int j) const { return apply(x, codegeneracy(x.degree(), j)); }

    int vertex(const Simplex& x, int t) const { return apply(x, Mono{t}).index; }

    std::vector<int> vertices(const Simplex& x) const {
        std::vector<int> v;
        for (int t = 0; t <= x.degree(); ++t) v.push_back(vertex(x, t));
        return v;
    }
    std::vector<int> vertices(int d, int i) const { return vertices(nondeg(d, i)); }

    std::optional<std::pair<int, int>> find(const std::string& nm) const {
        for (int d = 0; d < static_cast<int>(names.size()); ++d)
            for (int i = 0; i < count(d); ++i)
                if (names[d][i] == nm) return std::pair{d, i};
        return std::nullopt;
    }

private:
    Simplex restrict_injective(int d, int idx, const Mono& delta) const {
        int e = static_cast<int>(delta.size()) - 1;
        if (e == d) return nondeg(d, idx);
        int miss = 0;
        while (miss < e + 1 && delta[miss] == miss) ++miss;
        const Simplex& f = faces[d][idx][miss];
        Mono rest(delta.size());
        for (std::size_t t = 0; t < delta.size(); ++t) rest[t] = delta[t] > miss ? delta[t] - 1 : delta[t];
        return apply(f, rest);
    }
};

using SSetPtr = std::shared_ptr<const FinSSet>;

template <class T>
SSetPtr share(T&& x) {
    return std::make_shared<const FinSSet>(std::forward<T>(x));
}

// Checks the stored data: face dimensions, normal forms and simplicial identities.
inline std::optional<std::string> check_sset(const FinSSet& X) {
    for (int d = 1; d < static_cast<int>(X.faces.size()); ++d) {
        for (int i = 0; i < X.count(d); ++i) {
            const auto& fs = X.faces[d][i];
            if (static_cast<int>(fs.size()) != d + 1) return "wrong face count at " + X.name(d, i);
            for (const auto& f : fs) {
                if (f.degree() != d - 1 || f.dim > d - 1 || f.dim < 0 || f.index < 0 || f.index >= X.count(f.dim) ||
                    !is_surjective_onto(f.sur, f.dim))
                    return "bad face of " + X.name(d, i);
            }
        }
    }
    for (int d = 2; d < static_cast<int>(X.faces.size()); ++d) {
        for (int k = 0; k < X.count(d); ++k) {
            Simplex x = nondeg(d, k);
            for (int j = 0; j <= d; ++j)
                for (int i = 0; i < j; ++i)
                    if (X.face(X.face(x, j), i) != X.face(X.face(x, i), j - 1))
                        return "simplicial identity fails at " + X.name(d, k);
        }
    }
    return std::nullopt;
}

inline bool is_valid(const FinSSet& X) { return !check_sset(X).has_value(); }

struct SSetMap {
    SSetPtr dom, cod;
    std::vector<std::vector<Simplex>> images;

    Simplex operator()(const Simplex& x) const { return cod->apply(images[x.dim][x.index], x.sur); }
    Simplex at(int d, int i) const { return images[d][i]; }
};

inline SSetMap identity_map(SSetPtr X) {
    SSetMap f{X, X, {}};
    f.images.resize(X->names.size());
    for (int d = 0; d < static_cast<int>(X->names.size()); ++d)
        for (int i = 0; i < X->count(d); ++i) f.images[d].push_back(nondeg(d, i));
    return f;
}

inline std::optional<std::string> check_map(const SSetMap& f) {
    const FinSSet& X = *f.dom;
    const FinSSet& Y = *f.cod;
    if (f.images.size() < X.names.size()) return "image table too short";
    for (int d = 0; d < static_cast<int>(X.names.size()); ++d) {
        if (static_cast<int>(f.images[d].size()) != X.count(d)) return "missing images in dimension " + std::to_string(d);
        for (int i = 0; i < X.count(d); ++i) {
            const Simplex& y = f.images[d][i];
            if (y.degree() != d || y.dim < 0 || y.index < 0 || y.index >= Y.count(y.dim) || !is_surjective_onto(y.sur, y.dim))
                return "dimension mismatch at " + X.name(d, i);
        }
    }
    for (int d = 1; d < static_cast<int>(X.names.size()); ++d)
        for (int i = 0; i < X.count(d); ++i)
            for (int j = 0; j <= d; ++j)
                if (f(X.faces[d][i][j]) != Y.face(f.images[d][i], j)) return "face " + std::to_string(j) + " fails at " + X.name(d, i);
    return std::nullopt;
}

inline bool validate_map(const SSetMap& f) { return !check_map(f).has_value(); }

// g o f, applying f first.
inline SSetMap compose_maps(const SSetMap& f, const SSetMap& g) {
    SSetMap h{f.dom, g.cod, {}};
    h.images.resize(f.images.size());
    for (std::size_t d = 0; d < f.images.size(); ++d)
        for (const auto& y : f.images[d]) h.images[d].push_back(g(y));
    return h;
}

inline bool maps_equal(const SSetMap& f, const SSetMap& g) { return f.images == g.images; }

inline bool is_injective_map(const SSetMap& f) {
    for (std::size_t d = 0; d < f.images.size(); ++d) {
        std::vector<Simplex> seen;
        for (const auto& y : f.images[d]) {
            if (!y.nondegenerate()) return false;
            seen.push_back(y);
        }
        std::sort(seen.begin(), seen.end());
        if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return false;
    }
    return true;
}

// All simplices (degenerate included) up to dimension D, with face lookup.
struct Table {
    const FinSSet* X = nullptr;
    int D = 0;
    std::vector<std::vector<Simplex>> simp;
    std::vector<std::unordered_map<Simplex, int, SimplexHash>> index;
    std::vector<std::vector<std::vector<int>>> face;
    std::vector<std::vector<int>> ndIndex;

    Table() = default;
    Table(const FinSSet& S, int depth) : X(&S), D(depth) {
        simp.resize(D + 1);
        index.resize(D + 1);
        face.resize(D + 1);
        ndIndex.resize(S.names.size());
        for (int m = 0; m <= D; ++m) {
            for (int d = std::min(m, static_cast<int>(S.names.size()) - 1); d >= 0; --d) {
                auto surs = surjections(m, d);
                for (int i = 0; i < S.count(d); ++i)
                    for (const auto& s : surs) {
                        index[m].emplace(Simplex{d, i, s}, static_cast<int>(simp[m].size()));
                        if (d == m) ndIndex[d].push_back(static_cast<int>(simp[m].size()));
                        simp[m].push_back(Simplex{d, i, s});
                    }
            }
            if (m > 0) {
                face[m].resize(simp[m].size());
                for (std::size_t s = 0; s < simp[m].size(); ++s)
                    for (int i = 0; i <= m; ++i) face[m][s].push_back(at(S.face(simp[m][s], i)));
            }
        }
    }

    int size(int m) const { return static_cast<int>(simp[m].size()); }
    int at(const Simplex& s) const { return index[s.degree()].at(s); }
    int act(int m, int s, const Mono& theta) const { return at(X->apply(simp[m][s], theta)); }
    bool degenerate(int m, int s) const { return !simp[m][s].nondegenerate(); }
};

// Abstract truncated simplicial data given by explicit face and degeneracy tables.
struct AbstractSSet {
    int D = 0;
    std::vector<int> count;
    std::vector<std::vector<std::vector<int>>> face;   // face[m][s][i]
    std::vector<std::vector<std::vector<int>>> degen;  // degen[m][s][j], m < D
    std::vector<std::vector<std::string>> label;       // optional
};

struct Built {
    FinSSet X;
    std::vector<std::vector<Simplex>> ez;  // normal form of every abstract simplex
};

inline Built build_normal_form(const AbstractSSet& A, int maxDim) {
    Built b{FinSSet(maxDim), {}};
    b.ez.resize(A.D + 1);
    for (int m = 0; m <= A.D; ++m) {
        b.ez[m].assign(A.count[m], Simplex{-1, -1, {}});
        if (m > 0)
            for (int s = 0; s < A.count[m - 1]; ++s)
                for (int j = 0; j < m; ++j) {
                    int t = A.degen[m - 1][s][j];
                    if (b.ez[m][t].dim < 0) {
                        const Simplex& base = b.ez[m - 1][s];
                        b.ez[m][t] = Simplex{base.dim, base.index, compose(base.sur, codegeneracy(m - 1, j))};
                    }
                }
        for (int s = 0; s < A.count[m]; ++s) {
            if (b.ez[m][s].dim >= 0) continue;
            if (m > maxDim) continue;
            std::vector<Simplex> fs;
            if (m > 0)
                for (int i = 0; i <= m; ++i) fs.push_back(b.ez[m - 1][A.face[m][s][i]]);
            std::string nm = (m < static_cast<int>(A.label.size()) && s < static_cast<int>(A.label[m].size()))
                                 ? A.label[m][s]
                                 : std::to_string(m) + "_" + std::to_string(b.X.count(m));
            int idx = b.X.add(m, nm, std::move(fs));
            b.ez[m][s] = nondeg(m, idx);
        }
    }
    return b;
}

// Makes names unique within each dimension by suffixing repeats.
inline void uniquify_names(FinSSet& X) {
    for (auto& dim : X.names) {
        std::map<std::string, int> seen;
        for (auto& n : dim) {
            int c = seen[n]++;
            if (c > 0) n += "#" + std::to_string(c);
        }
    }
}

inline std::string join_vertex_names(const FinSSet& X, const std::vector<int>& vs, const FinSSet& V) {
    (void)X;
    std::string s;
    for (int v : vs) s += V.name(0, v);
    return s;
}

struct Poset {
    std::vector<std::string> elements;
    std::vector<std::pair<int, int>> leq;
};

inline std::vector<std::vector<bool>> order_matrix(const Poset& P) {
    int n = static_cast<int>(P.elements.size());
    std::vector<std::vector<bool>> le(n, std::vector<bool>(n, false));
    for (auto [a, b] : P.leq) {
        if (a < 0 || b < 0 || a >= n || b >= n) throw validation_error("relation references unknown element");
        le[a][b] = true;
    }
    for (int a = 0; a < n; ++a)
        if (!le[a][a]) throw validation_error("relation not reflexive at " + P.elements[a]);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (a != b && le[a][b] && le[b][a]) throw validation_error("relation not antisymmetric");
            for (int c = 0; c < n; ++c)
                if (le[a][b] && le[b][c] && !le[a][c]) throw validation_error("relation not transitive");
        }
    return le;
}

// Nerve of a finite poset given by its order matrix; simplices are strict chains in lexicographic order.
inline FinSSet nerve_of_order(const std::vector<std::string>& elems, const std::vector<std::vector<bool>>& le, int maxDim = 4,
                              const std::function<bool(const std::vector<int>&)>& keep = nullptr) {
    int n = static_cast<int>(elems.size());
    FinSSet X(maxDim);
    std::vector<std::map<std::vector<int>, int>> idx(maxDim + 1);
    std::vector<std::vector<std::vector<int>>> chains(maxDim + 1);
    std::vector<int> cur;
    std::function<void()> rec = [&]() {
        int d = static_cast<int>(cur.size()) - 1;
        if (d >= 0) {
            if (keep && !keep(cur)) return;
            chains[d].push_back(cur);
        }
        if (d == maxDim) return;
        for (int v = 0; v < n; ++v)
            if (cur.empty() || (v != cur.back() && le[cur.back()][v])) {
                cur.push_back(v);
                rec();
                cur.pop_back();
            }
    };
    rec();
    for (int d = 0; d <= maxDim; ++d) {
        std::sort(chains[d].begin(), chains[d].end());
        for (const auto& c : chains[d]) {
            std::vector<Simplex> fs;
            if (d > 0)
                for (int i = 0; i <= d; ++i) {
                    auto f = c;
                    f.erase(f.begin() + i);
                    auto it = idx[d - 1].find(f);
                    if (it == idx[d - 1].end()) throw validation_error("chain filter not closed under faces");
                    fs.push_back(nondeg(d - 1, it->second));
                }
            std::string nm;
            for (int v : c) nm += elems[v];
            idx[d][c] = X.add(d, nm, std::move(fs));
        }
    }
    return X;
}

inline FinSSet nerve(const Poset& P, int maxDim = 4) { return nerve_of_order(P.elements, order_matrix(P), maxDim); }

inline Poset chain_poset(int n) {
    Poset P;
    for (int i = 0; i <= n; ++i) P.elements.push_back(std::to_string(i));
    for (int i = 0; i <= n; ++i)
        for (int j = i; j <= n; ++j) P.leq.push_back({i, j});
    return P;
}

inline FinSSet standard_simplex(int n, int maxDim = 4) {
    if (n < 0) throw param_error("negative dimension");
    return nerve(chain_poset(n), std::max(maxDim, 0));
}

// Simplices of the nerve of [n] given by a vertex subset; all constructions below are subcomplexes of it.
struct SubResult {
    FinSSet X;
    SSetMap incl;
};

// Subcomplex of X spanned by nondegenerate simplices satisfying keep (must be closed under faces).
inline SubResult subcomplex_with_map(SSetPtr X, const std::function<bool(int, int)>& keep) {
    FinSSet S(X->maxDim);
    std::vector<std::vector<int>> newIdx(X->names.size());
    std::vector<std::vector<Simplex>> imgs(X->names.size());
    for (int d = 0; d < static_cast<int>(X->names.size()); ++d) {
        newIdx[d].assign(X->count(d), -1);
        for (int i = 0; i < X->count(d); ++i) {
            if (!keep(d, i)) continue;
            std::vector<Simplex> fs;
            for (const auto& f : X->faces[d][i]) {
                int ni = newIdx[f.dim][f.index];
                if (ni < 0) throw validation_error("subcomplex not closed under faces at " + X->name(d, i));
                fs.push_back(Simplex{f.dim, ni, f.sur});
            }
            newIdx[d][i] = S.add(d, X->name(d, i), std::move(fs));
            imgs[d].push_back(nondeg(d, i));
        }
    }
    SubResult r{std::move(S), {}};
    r.incl = SSetMap{share(r.X), X, std::move(imgs)};
    return r;
}

// Vertex set of a nondegenerate simplex of a nerve-like set, as a bitmask of vertex indices.
inline unsigned vertex_mask(const FinSSet& X, int d, int i) {
    unsigned m = 0;
    for (int v : X.vertices(d, i)) m |= 1u << v;
    return m;
}

struct Inclusion {
    SSetPtr sub;
    SSetMap incl;
};

inline Inclusion boundary(int n, int maxDim = 4) {
    if (n < 1) throw param_error("boundary needs n >= 1");
    auto D = share(standard_simplex(n, maxDim));
    auto r = subcomplex_with_map(D, [&](int d, int) { return d < n; });
    return {r.incl.dom, r.incl};
}

inline Inclusion horn(int n, int i, int maxDim = 4) {
    if (n < 1 || i < 0 || i > n) throw param_error("horn index out of range");
    auto D = share(standard_simplex(n, maxDim));
    unsigned full = (1u << (n + 1)) - 1;
    unsigned facet = full & ~(1u << i);
    auto r = subcomplex_with_map(D, [&](int d, int k) {
        unsigned m = vertex_mask(*D, d, k);
        return m != full && m != facet;
    });
    return {r.incl.dom, r.incl};
}

// Cartesian product, nondegenerate simplices ordered by their vertex sequences.
struct ProductResult {
    FinSSet P;
    std::vector<std::vector<std::pair<Simplex, Simplex>>> comps;  // components of each nondegenerate simplex
    std::vector<std::map<std::pair<Simplex, Simplex>, int>> lookup;

    // The simplex of P with components (a, b), in normal form.
    Simplex locate(const Simplex& a, const Simplex& b) const {
        int m = a.degree();
        Mono collapse;
        int lvl = 0;
        for (int j = 0; j < m; ++j) {
            collapse.push_back(lvl);
            if (!(a.sur[j] == a.sur[j + 1] && b.sur[j] == b.sur[j + 1])) ++lvl;
        }
        collapse.push_back(lvl);
        Mono sec;
        for (int t = 0; t <= m; ++t)
            if (t == 0 || collapse[t] != collapse[t - 1]) sec.push_back(t);
        Simplex na{a.dim, a.index, compose(a.sur, sec)};
        Simplex nb{b.dim, b.index, compose(b.sur, sec)};
        return Simplex{lvl, lookup[lvl].at({na, nb}), collapse};
    }
};

inline ProductResult product_with_components(const FinSSet& X, const FinSSet& Y, int maxDim = 4) {
    struct Cand {
        std::vector<std::pair<int, int>> verts;
        Simplex a, b;
        bool operator<(const Cand& o) const { return std::tie(verts, a, b) < std::tie(o.verts, o.a, o.b); }
    };
    ProductResult R{FinSSet(maxDim), {}, {}};
    R.comps.resize(maxDim + 1);
    R.lookup.resize(maxDim + 1);
    for (int m = 0; m <= maxDim; ++m) {
        std::vector<Cand> cands;
        for (int p = 0; p <= std::min(m, static_cast<int>(X.names.size()) - 1); ++p)
            for (int q = 0; q <= std::min(m, static_cast<int>(Y.names.size()) - 1); ++q) {
                if (p + q < m) continue;
                auto sp = surjections(m, p);
                auto sq = surjections(m, q);
                for (int x = 0; x < X.count(p); ++x)
                    for (int y = 0; y < Y.count(q); ++y)
                        for (const auto& s : sp)
                            for (const auto& t : sq) {
                                bool ok = true;
                                for (int j = 0; j < m && ok; ++j)
                                    if (s[j] == s[j + 1] && t[j] == t[j + 1]) ok = false;
                                if (!ok) continue;
                                Cand c{{}, Simplex{p, x, s}, Simplex{q, y, t}};
                                for (int v = 0; v <= m; ++v) c.verts.push_back({X.vertex(c.a, v), Y.vertex(c.b, v)});
                                cands.push_back(std::move(c));
                            }
            }
        std::sort(cands.begin(), cands.end());
        for (auto& c : cands) {
            std::vector<Simplex> fs;
            if (m > 0)
                for (int i = 0; i <= m; ++i) fs.push_back(R.locate(X.face(c.a, i), Y.face(c.b, i)));
            std::string nm;
            for (auto [vx, vy] : c.verts) nm += "(" + X.name(0, vx) + "," + Y.name(0, vy) + ")";
            int k = R.P.add(m, nm, std::move(fs));
            R.lookup[m][{c.a, c.b}] = k;
            R.comps[m].push_back({c.a, c.b});
        }
    }
    uniquify_names(R.P);
    return R;
}

inline FinSSet product(const FinSSet& X, const FinSSet& Y, int maxDim = 4) { return product_with_components(X, Y, maxDim).P; }

struct PushoutResult {
    FinSSet P;
    SSetMap fromX, fromB;
};

// Pushout of X <- A -> B along f : A -> X and g : A -> B.
inline PushoutResult pushout(const SSetMap& f, const SSetMap& g, int maxDim = 4) {
    const FinSSet& A = *f.dom;
    const FinSSet& X = *f.cod;
    const FinSSet& B = *g.cod;
    int D = maxDim;
    Table TA(A, D), TX(X, D), TB(B, D);
    AbstractSSet abs;
    abs.D = D;
    abs.count.resize(D + 1);
    abs.face.resize(D + 1);
    abs.degen.resize(D + 1);
    abs.label.resize(D + 1);
    std::vector<std::vector<int>> clsX(D + 1), clsB(D + 1);
    for (int m = 0; m <= D; ++m) {
        int nx = TX.size(m), nb = TB.size(m);
        std::vector<int> par(nx + nb);
        std::iota(par.begin(), par.end(), 0);
        std::function<int(int)> findp = [&](int a) { return par[a] == a ? a : par[a] = findp(par[a]); };
        for (int a = 0; a < TA.size(m); ++a) {
            const Simplex& s = TA.simp[m][a];
            int u = TX.at(f(s));
            int v = nx + TB.at(g(s));
            int ru = findp(u), rv = findp(v);
            if (ru != rv) par[std::max(ru, rv)] = std::min(ru, rv);
        }
        // classes numbered by least member: X before B, nondegenerate before degenerate
        std::vector<int> cls(nx + nb, -1);
        std::vector<int> rep;
        std::map<int, int> rootCls;
        for (int e = 0; e < nx + nb; ++e) {
            int r = findp(e);
            auto it = rootCls.find(r);
            if (it == rootCls.end()) {
                it = rootCls.emplace(r, static_cast<int>(rep.size())).first;
                rep.push_back(e);
            }
            cls[e] = it->second;
        }
        abs.count[m] = static_cast<int>(rep.size());
        clsX[m].assign(cls.begin(), cls.begin() + nx);
        clsB[m].assign(cls.begin() + nx, cls.end());
        for (int c = 0; c < abs.count[m]; ++c) {
            int e = rep[c];
            if (e < nx) {
                const Simplex& s = TX.simp[m][e];
                abs.label[m].push_back(s.nondegenerate() ? X.name(s.dim, s.index) : "");
            } else {
                const Simplex& s = TB.simp[m][e - nx];
                abs.label[m].push_back(s.nondegenerate() ? B.name(s.dim, s.index) : "");
            }
        }
        if (m > 0) {
            abs.face[m].resize(abs.count[m]);
            for (int c = 0; c < abs.count[m]; ++c) {
                int e = rep[c];
                for (int i = 0; i <= m; ++i)
                    abs.face[m][c].push_back(e < nx ? clsX[m - 1][TX.face[m][e][i]] : clsB[m - 1][TB.face[m][e - nx][i]]);
            }
        }
    }
    for (int m = 0; m < D; ++m) {
        abs.degen[m].resize(abs.count[m]);
        // representatives are recomputed from the tables
        for (int e = 0; e < TX.size(m); ++e) {
            int c = clsX[m][e];
            if (!abs.degen[m][c].empty()) continue;
            for (int j = 0; j <= m; ++j) abs.degen[m][c].push_back(clsX[m + 1][TX.act(m, e, codegeneracy(m, j))]);
        }
        for (int e = 0; e < TB.size(m); ++e) {
            int c = clsB[m][e];
            if (!abs.degen[m][c].empty()) continue;
            for (int j = 0; j <= m; ++j) abs.degen[m][c].push_back(clsB[m + 1][TB.act(m, e, codegeneracy(m, j))]);
        }
    }
    Built b = build_normal_form(abs, maxDim);
    uniquify_names(b.X);
    PushoutResult R{std::move(b.X), {}, {}};
    auto P = share(R.P);
    R.fromX = SSetMap{f.cod, P, {}};
    R.fromB = SSetMap{g.cod, P, {}};
    R.fromX.images.resize(X.names.size());
    R.fromB.images.resize(B.names.size());
    for (int d = 0; d < static_cast<int>(X.names.size()) && d <= D; ++d)
        for (int i = 0; i < X.count(d); ++i) R.fromX.images[d].push_back(b.ez[d][clsX[d][TX.ndIndex[d][i]]]);
    for (int d = 0; d < static_cast<int>(B.names.size()) && d <= D; ++d)
        for (int i = 0; i < B.count(d); ++i) R.fromB.images[d].push_back(b.ez[d][clsB[d][TB.ndIndex[d][i]]]);
    return R;
}

// Induced map out of a pushout, if (u, v) is a cocone.
inline std::optional<SSetMap> cocone_factor(const SSetMap& f, const SSetMap& g, const PushoutResult& po, const SSetMap& u,
                                            const SSetMap& v) {
    if (!maps_equal(compose_maps(f, u), compose_maps(g, v))) return std::nullopt;
    SSetPtr P = po.fromX.cod;
    SSetMap h{P, u.cod, {}};
    h.images.resize(P->names.size());
    for (int d = 0; d < static_cast<int>(P->names.size()); ++d) {
        h.images[d].assign(P->count(d), Simplex{-1, -1, {}});
    }
    auto fill = [&](const SSetMap& into, const SSetMap& along) {
        for (std::size_t d = 0; d < into.images.size(); ++d)
            for (std::size_t i = 0; i < into.images[d].size(); ++i) {
                const Simplex& p = into.images[d][i];
                if (p.nondegenerate() && h.images[p.dim][p.index].dim < 0) h.images[p.dim][p.index] = along.images[d][i];
            }
    };
    fill(po.fromX, u);
    fill(po.fromB, v);
    for (auto& dim : h.images)
        for (auto& s : dim)
            if (s.dim < 0) return std::nullopt;
    if (!maps_equal(compose_maps(po.fromX, h), u) || !maps_equal(compose_maps(po.fromB, h), v)) return std::nullopt;
    return h;
}

// Isomorphism search: backtracking dimension by dimension with degree pruning.
// compat(d, x, y) may veto pairing nondegenerate x of X with y of Y.
inline std::optional<SSetMap> iso_check(SSetPtr X, SSetPtr Y, const std::function<bool(int, int, int)>& compat = nullptr) {
    int DX = X->top(), DY = Y->top();
    if (DX != DY) return std::nullopt;
    for (int d = 0; d <= DX; ++d)
        if (X->count(d) != Y->count(d)) return std::nullopt;
    auto degrees = [](const FinSSet& S) {
        std::vector<std::vector<int>> deg(S.names.size());
        for (int d = 0; d < static_cast<int>(S.names.size()); ++d) deg[d].assign(S.count(d), 0);
        for (int d = 1; d < static_cast<int>(S.names.size()); ++d)
            for (int i = 0; i < S.count(d); ++i)
                for (const auto& f : S.faces[d][i]) deg[f.dim][f.index] += 1;
        return deg;
    };
    auto dx = degrees(*X), dy = degrees(*Y);
    std::vector<std::vector<int>> fwd(DX + 1), used(DX + 1);
    for (int d = 0; d <= DX; ++d) {
        fwd[d].assign(X->count(d), -1);
        used[d].assign(Y->count(d), 0);
    }
    std::vector<std::pair<int, int>> order;
    for (int d = 0; d <= DX; ++d)
        for (int i = 0; i < X->count(d); ++i) order.push_back({d, i});
    std::function<bool(std::size_t)> rec = [&](std::size_t pos) -> bool {
        if (pos == order.size()) return true;
        auto [d, i] = order[pos];
        for (int y = 0; y < Y->count(d); ++y) {
            if (used[d][y] || dx[d][i] != dy[d][y]) continue;
            if (compat && !compat(d, i, y)) continue;
            bool ok = true;
            for (int j = 0; j <= d && ok && d > 0; ++j) {
                const Simplex& fx = X->faces[d][i][j];
                const Simplex& fy = Y->faces[d][y][j];
                if (fx.dim != fy.dim || fx.sur != fy.sur || fwd[fx.dim][fx.index] != fy.index) ok = false;
            }
            if (!ok) continue;
            fwd[d][i] = y;
            used[d][y] = 1;
            if (rec(pos + 1)) return true;
            fwd[d][i] = -1;
            used[d][y] = 0;
        }
        return false;
    };
    if (!rec(0)) return std::nullopt;
    SSetMap m{X, Y, {}};
    m.images.resize(X->names.size());
    for (int d = 0; d <= DX; ++d)
        for (int i = 0; i < X->count(d); ++i) m.images[d].push_back(nondeg(d, fwd[d][i]));
    return m;
}

// Relabels nondegenerate simplices by per-dimension permutations (perm[d][old] = new).
inline std::pair<FinSSet, SSetMap> relabel(SSetPtr X, const std::vector<std::vector<int>>& perm) {
    FinSSet Y(X->maxDim);
    for (int d = 0; d < static_cast<int>(X->names.size()); ++d) {
        std::vector<int> inv(X->count(d));
        for (int i = 0; i < X->count(d); ++i) inv[perm[d][i]] = i;
        for (int k = 0; k < X->count(d); ++k) {
            int i = inv[k];
            std::vector<Simplex> fs;
            for (const auto& f : X->faces[d][i]) fs.push_back(Simplex{f.dim, perm[f.dim][f.index], f.sur});
            Y.add(d, X->name(d, i), std::move(fs));
        }
    }
    auto Yp = share(Y);
    SSetMap m{X, Yp, {}};
    m.images.resize(X->names.size());
    for (int d = 0; d < static_cast<int>(X->names.size()); ++d)
        for (int i = 0; i < X->count(d); ++i) m.images[d].push_back(nondeg(d, perm[d][i]));
    return {Y, m};
}

// Map between vertex-determined sets specified on vertices.
inline std::optional<SSetMap> map_from_vertices(SSetPtr X, SSetPtr Y, const std::vector<int>& vmap) {
    std::vector<std::map<std::vector<int>, int>> yidx(Y->names.size());
    for (int d = 0; d < static_cast<int>(Y->names.size()); ++d)
        for (int i = 0; i < Y->count(d); ++i) yidx[d][Y->vertices(d, i)] = i;
    SSetMap m{X, Y, {}};
    m.images.resize(X->names.size());
    for (int d = 0; d < static_cast<int>(X->names.size()); ++d)
        for (int i = 0; i < X->count(d); ++i) {
            std::vector<int> img;
            for (int v : X->vertices(d, i)) img.push_back(vmap[v]);
            Mono sur(img.size());
            std::vector<int> distinct;
            for (std::size_t t = 0; t < img.size(); ++t) {
                if (t == 0 || img[t] != img[t - 1]) distinct.push_back(img[t]);
                sur[t] = static_cast<int>(distinct.size()) - 1;
            }
            int e = static_cast<int>(distinct.size()) - 1;
            if (e >= static_cast<int>(yidx.size())) return std::nullopt;
            auto it = yidx[e].find(distinct);
            if (it == yidx[e].end()) return std::nullopt;
            m.images[d].push_back(Simplex{e, it->second, sur});
        }
    if (!validate_map(m)) return std::nullopt;
    return m;
}

}  // namespace mss
