#pragma once

#include <deque>
#include <random>
#include <numeric>
#include <regex>
#include <unordered_set>

#include "mss/io.hpp"

namespace mss {

struct Generator {
    std::string name;
    std::string family;
    DecoratedMap incl;
    const MSS& source() const { return incl.dom; }
    const MSS& target() const { return incl.cod; }
};

namespace detail {

inline std::vector<int> lookup_ids(const FinSSet& X, int d, const std::vector<std::string>& names) {
    std::vector<int> out;
    for (const auto& n : names) out.push_back(id_of(X, d, n));
    return out;
}

inline MSS deco(SSetPtr X, const std::vector<std::string>& marked, const std::vector<std::string>& thin,
                const std::optional<std::vector<std::string>>& lean = std::nullopt) {
    return decorate_named(X, marked, thin, lean);
}

inline std::vector<std::string> all_names(const FinSSet& X, int d) { return X.names[d]; }

inline std::string tri(int a, int b, int c) { return std::to_string(a) + std::to_string(b) + std::to_string(c); }
inline std::string edge(int a, int b) { return std::to_string(a) + std::to_string(b); }

// Nerve of the walking isomorphism: simplices are words in {0,1}, nondegenerate when no letter repeats.
inline FinSSet walking_iso(int maxDim) {
    AbstractSSet A;
    A.D = maxDim;
    A.count.resize(maxDim + 1);
    A.face.resize(maxDim + 1);
    A.degen.resize(maxDim + 1);
    A.label.resize(maxDim + 1);
    auto code = [](const std::vector<int>& w) {
        int c = 0;
        for (int x : w) c = 2 * c + x;
        return c;
    };
    for (int m = 0; m <= maxDim; ++m) {
        A.count[m] = 1 << (m + 1);
        for (int c = 0; c < A.count[m]; ++c) {
            std::vector<int> w(m + 1);
            for (int t = 0; t <= m; ++t) w[t] = c >> (m - t) & 1;
            std::string nm;
            for (int x : w) nm += std::to_string(x);
            A.label[m].push_back(nm);
            if (m > 0) {
                std::vector<int> fs;
                for (int t = 0; t <= m; ++t) {
                    auto v = w;
                    v.erase(v.begin() + t);
                    fs.push_back(code(v));
                }
                A.face[m].push_back(fs);
            }
            if (m < maxDim) {
                std::vector<int> dg;
                for (int t = 0; t <= m; ++t) {
                    auto v = w;
                    v.insert(v.begin() + t, w[t]);
                    dg.push_back(code(v));
                }
                A.degen[m].push_back(dg);
            }
        }
    }
    return build_normal_form(A, maxDim).X;
}

// Collapses the edge 01 of a subcomplex of the n-simplex to a point.
struct Collapsed {
    SSetPtr S, T;
    SSetMap incl;
};

inline Collapsed collapse_01(int n, int maxDim) {
    auto D = share(standard_simplex(n, maxDim));
    auto H = horn(n, 0, maxDim);
    auto E = share(standard_simplex(1, maxDim));
    auto P = share(standard_simplex(0, maxDim));
    auto edgeIn = [&](SSetPtr X) { return *map_from_vertices(E, X, {0, 1}); };
    SSetMap toPt = *map_from_vertices(E, P, {0, 0});
    // the horn keeps the vertex numbering of the simplex
    auto eH = edgeIn(H.sub);
    auto eD = edgeIn(D);
    auto poS = pushout(eH, toPt, maxDim);
    auto poT = pushout(eD, toPt, maxDim);
    auto PT = share(poT.P);
    SSetMap hornToT = compose_maps(H.incl, poT.fromX);
    auto f = cocone_factor(eH, toPt, poS, hornToT, poT.fromB);
    if (!f) throw std::logic_error("collapsed horn does not factor");
    auto PS = share(poS.P);
    f->dom = PS;
    f->cod = PT;
    return {PS, PT, *f};
}

}  // namespace detail

inline std::vector<std::string> generator_families() { return {"S", "MS", "MB", "MSI", "C", "OP"}; }

// Builds a named generator; shapes are truncated at maxDim (relevant for the nerve of the walking isomorphism).
inline Generator generator(const std::string& gname, int maxDim = 4) {
    static const std::regex re(R"(^([A-Z]+[0-9]*)(\(([^)]*)\))?$)");
    std::smatch mt;
    if (!std::regex_match(gname, mt, re)) throw param_error("malformed generator name: " + gname);
    std::string head = mt[1];
    std::vector<std::string> args;
    {
        std::string a = mt[3];
        std::stringstream ss(a);
        std::string tok;
        while (std::getline(ss, tok, ','))
            if (!tok.empty()) args.push_back(tok);
    }
    auto intArg = [&](std::size_t k) {
        if (k >= args.size()) throw param_error(gname + ": missing parameter");
        try {
            return std::stoi(args[k]);
        } catch (...) {
            throw param_error(gname + ": parameter is not an integer");
        }
    };
    auto arity = [&](std::size_t k) {
        if (args.size() != k) throw param_error(gname + ": expected " + std::to_string(k) + " parameters");
    };
    using detail::deco;
    using detail::edge;
    using detail::tri;
    auto simplexIncl = [&](int n) {
        auto D = share(standard_simplex(n, maxDim));
        return std::pair{D, identity_map(D)};
    };
    auto make = [&](const std::string& fam, SSetMap inc, MSS S, MSS T) {
        S.base = inc.dom;
        T.base = inc.cod;
        return Generator{gname, fam, DecoratedMap{std::move(S), std::move(T), std::move(inc)}};
    };
    auto needDim = [&](int n) {
        if (n > maxDim) throw param_error(gname + ": dimension exceeds max-dim " + std::to_string(maxDim));
    };
    const std::vector<std::string> T2{"024", "123", "013", "134", "012"};
    std::vector<std::string> T2full = T2;
    T2full.push_back("034");
    T2full.push_back("014");

    bool lean = head[0] == 'A' || head == "B1" || head == "B2" || head == "E";
    std::string fam = head == "MSI"                                          ? "MSI"
                      : head.rfind("OP", 0) == 0                               ? "OP"
                      : head[0] == 'C'                                         ? "C"
                      : lean                                                   ? "MB"
                      : (head == "S1" || head == "S2" || head == "S3")         ? "S"
                                                                               : "MS";
    std::optional<std::vector<std::string>> noLean;

    if (head == "M1" || head == "S1" || head == "A1") {
        arity(2);
        int n = intArg(0), i = intArg(1);
        if (n < 2 || i <= 0 || i >= n) throw param_error(gname + ": needs n >= 2 and 0 < i < n");
        needDim(n);
        auto H = horn(n, i, maxDim);
        std::string t = tri(i - 1, i, i + 1);
        std::vector<std::string> ts{t};
        std::vector<std::string> hs = n >= 3 ? ts : std::vector<std::string>{};
        if (lean) return make(fam, H.incl, deco(H.sub, {}, {}, hs), deco(H.incl.cod, {}, {}, ts));
        return make(fam, H.incl, deco(H.sub, {}, hs), deco(H.incl.cod, {}, ts));
    }
    if (head == "M2" || head == "S2" || head == "A2") {
        arity(0);
        needDim(4);
        auto [D, id] = simplexIncl(4);
        if (lean) return make(fam, id, deco(D, {}, {}, T2), deco(D, {}, {}, T2full));
        return make(fam, id, deco(D, {}, T2), deco(D, {}, T2full));
    }
    if (head == "M3" || head == "A3") {
        arity(1);
        int n = intArg(0);
        if (n < 2) throw param_error(gname + ": needs n >= 2");
        needDim(n);
        auto H = horn(n, 0, maxDim);
        std::vector<std::string> t{tri(0, 1, n)};
        std::vector<std::string> ht = n >= 3 ? t : std::vector<std::string>{};
        if (lean) return make(fam, H.incl, deco(H.sub, {"01"}, ht, ht), deco(H.incl.cod, {"01"}, t, t));
        return make(fam, H.incl, deco(H.sub, {"01"}, ht), deco(H.incl.cod, {"01"}, t));
    }
    if (head == "S3") {
        arity(1);
        int n = intArg(0);
        if (n < 3) throw param_error(gname + ": needs n >= 3");
        needDim(n);
        auto C = detail::collapse_01(n, maxDim);
        std::vector<std::string> t{tri(0, 1, n)};
        return make(fam, C.incl, deco(C.S, {}, t), deco(C.T, {}, t));
    }
    if (head == "M4" || head == "A4") {
        arity(0);
        auto D0 = share(standard_simplex(0, maxDim));
        auto D1 = share(standard_simplex(1, maxDim));
        auto inc = *map_from_vertices(D0, D1, {0});
        MSS S = with_flags(D0, Flag::sharp, Flag::sharp), T = with_flags(D1, Flag::sharp, Flag::sharp);
        if (lean) T.lean = std::vector<char>(T.thin.size(), 1), S.lean = std::vector<char>(S.thin.size(), 1);
        return make(fam, inc, S, T);
    }
    if (head == "MS1" || head == "B1") {
        arity(0);
        auto [D, id] = simplexIncl(2);
        auto all = detail::all_names(*D, 2);
        if (lean) return make(fam, id, deco(D, {"01", "12"}, all, all), deco(D, detail::all_names(*D, 1), all, all));
        return make(fam, id, deco(D, {"01", "12"}, all), deco(D, detail::all_names(*D, 1), all));
    }
    if (head == "B2") {
        arity(0);
        auto [D, id] = simplexIncl(2);
        auto all = detail::all_names(*D, 2);
        return make(fam, id, deco(D, {}, {}, all), deco(D, {}, all, all));
    }
    if (head == "ME" || head == "E") {
        arity(1);
        SSetPtr K;
        if (args[0] == "pt") K = share(standard_simplex(0, maxDim));
        else if (args[0] == "J") K = share(detail::walking_iso(maxDim));
        else throw param_error(gname + ": Kan complex must be pt or J");
        auto id = identity_map(K);
        MSS S = with_flags(K, Flag::flat, Flag::sharp), T = with_flags(K, Flag::sharp, Flag::sharp);
        if (lean) S.lean = std::vector<char>(S.thin.size(), 1), T.lean = std::vector<char>(T.thin.size(), 1);
        return make(fam, id, S, T);
    }
    if (head == "MSI") {
        arity(1);
        int i = intArg(0);
        if (i < 1 || i > 2) throw param_error(gname + ": needs 0 < i < 3");
        needDim(3);
        auto [D, id] = simplexIncl(3);
        std::vector<std::string> U;
        for (const auto& t : D->names[2])
            if (t.find(std::to_string(i)) != std::string::npos) U.push_back(t);
        return make(fam, id, deco(D, {}, U), deco(D, {}, detail::all_names(*D, 2)));
    }
    if (head == "C1") {
        arity(1);
        int n = intArg(0);
        if (n < 0) throw param_error(gname + ": needs n >= 0");
        needDim(n);
        if (n == 0) {
            FinSSet empty(maxDim);
            auto E = share(std::move(empty));
            auto D0 = share(standard_simplex(0, maxDim));
            SSetMap inc{E, D0, std::vector<std::vector<Simplex>>(E->names.size())};
            return make(fam, inc, flat_mss(E), flat_mss(D0));
        }
        auto B = boundary(n, maxDim);
        return make(fam, B.incl, flat_mss(B.sub), flat_mss(B.incl.cod));
    }
    if (head == "C2") {
        arity(0);
        auto [D, id] = simplexIncl(1);
        return make(fam, id, with_flags(D, Flag::flat, Flag::sharp), with_flags(D, Flag::sharp, Flag::sharp));
    }
    if (head == "C3") {
        arity(0);
        auto [D, id] = simplexIncl(2);
        return make(fam, id, flat_mss(D), with_flags(D, Flag::flat, Flag::sharp));
    }
    if (head == "OP1") {
        arity(1);
        int n = intArg(0);
        if (n < 2) throw param_error(gname + ": needs n >= 2");
        needDim(n);
        auto H = horn(n, n, maxDim);
        std::vector<std::string> e{edge(n - 1, n)}, t{tri(0, n - 1, n)};
        std::vector<std::string> ht = n >= 3 ? t : std::vector<std::string>{};
        return make(fam, H.incl, deco(H.sub, e, ht), deco(H.incl.cod, e, t));
    }
    if (head == "OP2") {
        arity(0);
        auto H = horn(2, 2, maxDim);
        return make(fam, H.incl, with_flags(H.sub, Flag::sharp, Flag::sharp), with_flags(H.incl.cod, Flag::sharp, Flag::sharp));
    }
    if (head == "OP3") {
        arity(0);
        needDim(3);
        auto [D, id] = simplexIncl(3);
        std::vector<std::string> U;
        for (const auto& t : D->names[2])
            if (t != "012") U.push_back(t);
        return make(fam, id, deco(D, {"23"}, U), deco(D, {"23"}, detail::all_names(*D, 2)));
    }
    throw param_error("unknown generator: " + gname);
}

// Generator names of a catalog, or of a '+'-separated union of catalogs / explicit names.
inline std::vector<std::string> catalog_names(const std::string& sel, int maxDim) {
    std::vector<std::string> out;
    std::stringstream ss(sel);
    std::string part;
    auto horns = [&](const std::string& h) {
        for (int n = 2; n <= maxDim; ++n)
            for (int i = 1; i < n; ++i) out.push_back(h + "(" + std::to_string(n) + "," + std::to_string(i) + ")");
    };
    while (std::getline(ss, part, '+')) {
        if (part == "S") {
            horns("S1");
            if (maxDim >= 4) out.push_back("S2");
            for (int n = 3; n <= maxDim; ++n) out.push_back("S3(" + std::to_string(n) + ")");
        } else if (part == "MS") {
            horns("M1");
            if (maxDim >= 4) out.push_back("M2");
            for (int n = 2; n <= maxDim; ++n) out.push_back("M3(" + std::to_string(n) + ")");
            out.push_back("M4");
            out.push_back("MS1");
            out.push_back("ME(pt)");
            out.push_back("ME(J)");
        } else if (part == "MB") {
            horns("A1");
            if (maxDim >= 4) out.push_back("A2");
            for (int n = 2; n <= maxDim; ++n) out.push_back("A3(" + std::to_string(n) + ")");
            out.push_back("A4");
            out.push_back("B1");
            out.push_back("B2");
            out.push_back("E(pt)");
            out.push_back("E(J)");
        } else if (part == "MSI") {
            if (maxDim >= 3) out.push_back("MSI(1)"), out.push_back("MSI(2)");
        } else if (part == "C") {
            for (int n = 0; n <= maxDim; ++n) out.push_back("C1(" + std::to_string(n) + ")");
            out.push_back("C2");
            out.push_back("C3");
        } else if (part == "OP") {
            for (int n = 2; n <= maxDim; ++n) out.push_back("OP1(" + std::to_string(n) + ")");
            out.push_back("OP2");
            if (maxDim >= 3) out.push_back("OP3");
        } else if (part == "M1" || part == "S1" || part == "A1") {
            horns(part);
        } else if (part == "M3" || part == "A3" || part == "S3" || part == "OP1" || part == "C1") {
            int lo = part == "C1" ? 0 : part == "S3" ? 3 : 2;
            for (int n = lo; n <= maxDim; ++n) out.push_back(part + "(" + std::to_string(n) + ")");
        } else if (!part.empty()) {
            out.push_back(part);
        }
    }
    return out;
}

inline std::vector<Generator> catalog(const std::string& sel, int maxDim) {
    std::vector<Generator> g;
    for (const auto& n : catalog_names(sel, maxDim)) g.push_back(generator(n, maxDim));
    return g;
}

struct DecoratedPushout {
    MSS P;
    PushoutResult po;
};

// Pushout of X <- source -> target along attach, with the union of both decorations.
inline DecoratedPushout decorated_pushout(const Generator& g, const SSetMap& attach, const MSS& X) {
    if (auto e = check_decorated_map(DecoratedMap{g.source(), X, attach}))
        throw validation_error("attaching map for " + g.name + " is invalid: " + *e);
    int D = std::max(X.base->maxDim, g.target().base->maxDim);
    auto po = pushout(attach, g.incl.map, D);
    auto P = share(po.P);
    po.fromX.cod = P;
    po.fromB.cod = P;
    MSS out = flat_mss(P);
    bool lean = X.lean || g.target().lean;
    if (lean) out.lean = std::vector<char>(P->count(2), 0);
    auto transport = [&](const MSS& src, const SSetMap& along) {
        for (int e = 0; e < src.base->count(1); ++e) {
            const Simplex& y = along.images[1][e];
            if (src.marked[e] && y.nondegenerate()) out.marked[y.index] = 1;
        }
        for (int t = 0; t < src.base->count(2); ++t) {
            const Simplex& y = along.images[2][t];
            if (!y.nondegenerate()) continue;
            if (src.thin[t]) out.thin[y.index] = 1;
            if (lean && src.is_lean(nondeg(2, t))) (*out.lean)[y.index] = 1;
        }
    };
    transport(X, po.fromX);
    transport(g.target(), po.fromB);
    return {std::move(out), std::move(po)};
}

// Sub-objects of a fixed ambient B, as flags over its nondegenerate simplices and decorations.
struct Ambient {
    MSS B;
    std::vector<int> simpOff;
    int markOff = 0, thinOff = 0, leanOff = 0, size = 0;

    explicit Ambient(MSS b) : B(std::move(b)) {
        const FinSSet& X = *B.base;
        for (int d = 0; d < static_cast<int>(X.names.size()); ++d) {
            simpOff.push_back(size);
            size += X.count(d);
        }
        markOff = size;
        size += X.count(1);
        thinOff = size;
        size += X.count(2);
        leanOff = size;
        if (B.lean) size += X.count(2);
    }

    int simp(const Simplex& s) const { return simpOff[s.dim] + s.index; }

    std::string full() const {
        std::string st(size, 0);
        const FinSSet& X = *B.base;
        for (int d = 0; d < static_cast<int>(X.names.size()); ++d)
            for (int i = 0; i < X.count(d); ++i) st[simpOff[d] + i] = 1;
        for (int e = 0; e < X.count(1); ++e) st[markOff + e] = B.marked[e];
        for (int t = 0; t < X.count(2); ++t) {
            st[thinOff + t] = B.thin[t];
            if (B.lean) st[leanOff + t] = B.is_lean(nondeg(2, t));
        }
        return st;
    }

    // Image of an inclusion A -> B as a state.
    std::string image(const DecoratedMap& f) const {
        std::string st(size, 0);
        const FinSSet& A = *f.dom.base;
        for (int d = 0; d < static_cast<int>(f.map.images.size()); ++d)
            for (int i = 0; i < A.count(d); ++i) {
                const Simplex& y = f.map.images[d][i];
                if (!y.nondegenerate()) throw validation_error("not an inclusion: " + A.name(d, i) + " maps to a degenerate simplex");
                if (st[simp(y)]) throw validation_error("not an inclusion: two simplices share the image " + B.base->name(y.dim, y.index));
                st[simp(y)] = 1;
            }
        for (int e = 0; e < A.count(1); ++e)
            if (f.dom.marked[e]) st[markOff + f.map.images[1][e].index] = 1;
        for (int t = 0; t < A.count(2); ++t) {
            if (f.dom.thin[t]) st[thinOff + f.map.images[2][t].index] = 1;
            if (B.lean && f.dom.is_lean(nondeg(2, t))) st[leanOff + f.map.images[2][t].index] = 1;
        }
        return st;
    }
};

// A generator attached along b : target -> B; the part of the target outside the source is new.
struct Move {
    int gen = 0;
    SSetMap b;
    std::vector<int> need, addSimp, addDeco;

    bool valid(const std::string& st) const {
        for (int x : need)
            if (!st[x]) return false;
        for (int x : addSimp)
            if (st[x]) return false;
        if (!addSimp.empty()) return true;
        for (int x : addDeco)
            if (!st[x]) return true;
        return false;
    }
    void apply(std::string& st) const {
        for (int x : addSimp) st[x] = 1;
        for (int x : addDeco) st[x] = 1;
    }
};

inline std::optional<Move> make_move(const Generator& g, int gi, const SSetMap& b, const Ambient& A) {
    const FinSSet& T = *g.target().base;
    const FinSSet& S = *g.source().base;
    const MSS& SM = g.source();
    const MSS& TM = g.target();
    Move mv{gi, b, {}, {}, {}};
    std::vector<std::vector<int>> fromS(T.names.size());
    for (int d = 0; d < static_cast<int>(T.names.size()); ++d) fromS[d].assign(T.count(d), -1);
    for (int d = 0; d < static_cast<int>(g.incl.map.images.size()); ++d)
        for (int i = 0; i < S.count(d); ++i) {
            const Simplex& y = g.incl.map.images[d][i];
            fromS[y.dim][y.index] = i;
        }
    std::set<int> need, add;
    for (int d = 0; d < static_cast<int>(T.names.size()); ++d)
        for (int i = 0; i < T.count(d); ++i) {
            const Simplex& y = b.images[d][i];
            if (fromS[d][i] >= 0) {
                need.insert(A.simp(y));
            } else {
                if (!y.nondegenerate() || !add.insert(A.simp(y)).second) return std::nullopt;
            }
        }
    for (int x : add)
        if (need.count(x)) return std::nullopt;
    std::set<int> needD, addD;
    for (int e = 0; e < T.count(1); ++e) {
        const Simplex& y = b.images[1][e];
        if (!y.nondegenerate()) continue;
        int src = fromS[1][e];
        if (src >= 0 && SM.marked[src]) needD.insert(A.markOff + y.index);
        else if (TM.marked[e]) addD.insert(A.markOff + y.index);
    }
    for (int t = 0; t < T.count(2); ++t) {
        const Simplex& y = b.images[2][t];
        if (!y.nondegenerate()) continue;
        int src = fromS[2][t];
        if (src >= 0 && SM.thin[src]) needD.insert(A.thinOff + y.index);
        else if (TM.thin[t]) addD.insert(A.thinOff + y.index);
        if (A.B.lean) {
            if (src >= 0 && SM.is_lean(nondeg(2, src))) needD.insert(A.leanOff + y.index);
            else if (TM.is_lean(nondeg(2, t))) addD.insert(A.leanOff + y.index);
        }
    }
    mv.need.assign(need.begin(), need.end());
    mv.need.insert(mv.need.end(), needD.begin(), needD.end());
    mv.addSimp.assign(add.begin(), add.end());
    mv.addDeco.assign(addD.begin(), addD.end());
    if (mv.addSimp.empty() && mv.addDeco.empty()) return std::nullopt;
    return mv;
}

inline bool simplex_less(const Simplex& a, const Simplex& b) {
    return std::tie(a.dim, a.index, a.sur) < std::tie(b.dim, b.index, b.sur);
}

inline bool images_less(const SSetMap& a, const SSetMap& b) {
    return std::lexicographical_compare(a.images.begin(), a.images.end(), b.images.begin(), b.images.end(),
                                        [](const auto& x, const auto& y) {
                                            return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(), simplex_less);
                                        });
}

// All moves of the given generators into the ambient, ordered by (generator, attaching-map images).
inline std::vector<Move> all_moves(const std::vector<Generator>& gens, const Ambient& A) {
    std::vector<Move> out;
    for (int gi = 0; gi < static_cast<int>(gens.size()); ++gi) {
        const Generator& g = gens[gi];
        if (g.target().base->top() < 0) continue;
        std::vector<Move> mine;
        HomSearch h(g.target(), A.B, g.target().base->top());
        h.run([&](const std::vector<std::vector<int>>& imgs) {
            auto mv = make_move(g, gi, h.to_map(imgs, g.target().base), A);
            if (mv) mine.push_back(std::move(*mv));
            return true;
        });
        std::sort(mine.begin(), mine.end(), [](const Move& a, const Move& b) { return images_less(a.b, b.b); });
        for (auto& m : mine) out.push_back(std::move(m));
    }
    return out;
}

struct CertStep {
    std::string generator;
    SSetMap attach;  // generator source -> current object
};

struct Certificate {
    int maxDim = 4;
    MSS start;
    std::vector<CertStep> steps;
};

struct Replay {
    std::vector<MSS> stages;  // start, then the object after each step
    const MSS& result() const { return stages.back(); }
};

inline Replay replay(const Certificate& c) {
    Replay r;
    r.stages.push_back(c.start);
    for (const auto& st : c.steps) {
        Generator g = generator(st.generator, c.maxDim);
        SSetMap a = st.attach;
        a.dom = g.source().base;
        a.cod = r.stages.back().base;
        r.stages.push_back(decorated_pushout(g, a, r.stages.back()).P);
    }
    return r;
}

// Turns moves into the ambient into a replayable certificate, tracking the comparison map into B.
inline std::pair<Certificate, SSetMap> emit_certificate(const DecoratedMap& f, const std::vector<Generator>& gens,
                                                        const std::vector<const Move*>& path, int maxDim) {
    Certificate c;
    c.maxDim = maxDim;
    c.start = f.dom;
    MSS cur = f.dom;
    SSetMap phi = f.map;
    for (const Move* mv : path) {
        const Generator& g = gens[mv->gen];
        std::map<std::pair<int, int>, int> back;
        for (int d = 0; d < static_cast<int>(phi.images.size()); ++d)
            for (int i = 0; i < static_cast<int>(phi.images[d].size()); ++i) back[{phi.images[d][i].dim, phi.images[d][i].index}] = i;
        SSetMap attach{g.source().base, cur.base, {}};
        SSetMap viaB = compose_maps(g.incl.map, mv->b);
        attach.images.resize(viaB.images.size());
        for (int d = 0; d < static_cast<int>(viaB.images.size()); ++d)
            for (const auto& y : viaB.images[d]) attach.images[d].push_back(Simplex{y.dim, back.at({y.dim, y.index}), y.sur});
        auto dp = decorated_pushout(g, attach, cur);
        auto next = cocone_factor(attach, g.incl.map, dp.po, phi, mv->b);
        if (!next) throw std::logic_error("certificate step does not map to the ambient");
        c.steps.push_back({g.name, attach});
        cur = dp.P;
        phi = *next;
        phi.dom = cur.base;
    }
    return {c, phi};
}

// True when phi : C -> B is a decoration-exact isomorphism.
inline bool exact_identification(const MSS& C, const SSetMap& phi, const MSS& B) {
    for (int d = 0; d <= std::max(C.base->maxDim, B.base->maxDim); ++d)
        if (C.base->count(d) != B.base->count(d)) return false;
    for (int d = 0; d < static_cast<int>(phi.images.size()); ++d) {
        std::set<int> hit;
        for (const auto& y : phi.images[d]) {
            if (!y.nondegenerate()) return false;
            hit.insert(y.index);
        }
        if (static_cast<int>(hit.size()) != C.base->count(d)) return false;
    }
    for (int e = 0; e < C.base->count(1); ++e)
        if (C.marked[e] != B.marked[phi.images[1][e].index]) return false;
    for (int t = 0; t < C.base->count(2); ++t) {
        if (C.thin[t] != B.thin[phi.images[2][t].index]) return false;
        if (B.lean && C.is_lean(nondeg(2, t)) != B.is_lean(phi.images[2][t])) return false;
    }
    return true;
}

struct SearchLimits {
    int maxSteps = 64;
    long maxStates = 200000;
};

// Breadth-first search over pushouts of generator instances inside B; the first certificate found is the
// lexicographically least among the shortest ones.
inline std::optional<Certificate> find_certificate(const DecoratedMap& f, const std::vector<Generator>& gens, int maxDim,
                                                   SearchLimits lim = {}) {
    Ambient A(f.cod);
    std::string start = A.image(f), goal = A.full();
    auto moves = all_moves(gens, A);
    struct Node {
        std::string st;
        int parent, move;
    };
    std::vector<Node> nodes{{start, -1, -1}};
    std::unordered_set<std::string> seen{start};
    std::size_t head = 0;
    std::vector<int> depth{0};
    int found = start == goal ? 0 : -1;
    while (found < 0 && head < nodes.size()) {
        int cur = static_cast<int>(head++);
        if (depth[cur] >= lim.maxSteps) continue;
        for (int m = 0; m < static_cast<int>(moves.size()) && found < 0; ++m) {
            if (!moves[m].valid(nodes[cur].st)) continue;
            std::string nx = nodes[cur].st;
            moves[m].apply(nx);
            if (!seen.insert(nx).second) continue;
            nodes.push_back({nx, cur, m});
            depth.push_back(depth[cur] + 1);
            if (nx == goal) found = static_cast<int>(nodes.size()) - 1;
            if (static_cast<long>(nodes.size()) > lim.maxStates) return std::nullopt;
        }
    }
    if (found < 0) return std::nullopt;
    std::vector<const Move*> path;
    for (int n = found; nodes[n].parent >= 0; n = nodes[n].parent) path.push_back(&moves[nodes[n].move]);
    std::reverse(path.begin(), path.end());
    auto [cert, phi] = emit_certificate(f, gens, path, maxDim);
    if (!exact_identification(replay(cert).result(), phi, f.cod)) throw std::logic_error("certificate does not reproduce the codomain");
    return cert;
}

inline json certificate_to_json(const Certificate& c, const json& startRef) {
    json steps = json::array();
    for (const auto& s : c.steps) steps.push_back(json{{"generator", s.generator}, {"attach", json{{"images", map_images_json(s.attach)}}}});
    return json{{"maxDim", c.maxDim}, {"start", startRef}, {"steps", steps}};
}

inline json certificate_to_json(const Certificate& c) { return certificate_to_json(c, mss_to_json(c.start)); }

// The start may be inline or a path relative to baseDir.
inline Certificate certificate_from_json(const json& j, const std::string& baseDir = ".") {
    Certificate c;
    if (j.contains("maxDim")) c.maxDim = j.at("maxDim").get<int>();
    const json& st = detail::field(j, "start", "$");
    if (st.is_string()) {
        std::filesystem::path p(st.get<std::string>());
        if (p.is_relative()) p = std::filesystem::path(baseDir) / p;
        c.start = read_mss(p.string());
    } else {
        c.start = mss_from_json(st, "$.start");
    }
    const json& steps = detail::field(j, "steps", "$");
    if (!steps.is_array()) throw validation_error("$.steps: expected an array");
    MSS cur = c.start;
    for (std::size_t k = 0; k < steps.size(); ++k) {
        std::string p = "$.steps[" + std::to_string(k) + "]";
        const json& g = detail::field(steps[k], "generator", p);
        if (!g.is_string()) throw validation_error(p + ".generator: expected a string");
        Generator gen = generator(g.get<std::string>(), c.maxDim);
        SSetMap a = map_from_json(detail::field(steps[k], "attach", p), gen.source().base, cur.base, p + ".attach");
        c.steps.push_back({gen.name, a});
        cur = decorated_pushout(gen, a, cur).P;
    }
    return c;
}

// Random forward certificates: apply random generator instances to a small seed object.
struct ForwardSample {
    Certificate cert;
    DecoratedMap incl;  // start -> result
};

inline std::vector<MSS> seed_objects(int maxDim) {
    std::vector<MSS> s;
    s.push_back(std_shape(0, Flag::flat, Flag::flat, maxDim));
    s.push_back(std_shape(1, Flag::flat, Flag::flat, maxDim));
    s.push_back(std_shape(1, Flag::sharp, Flag::flat, maxDim));
    auto h = horn(2, 1, maxDim);
    s.push_back(flat_mss(h.sub));
    auto b = boundary(2, maxDim);
    s.push_back(flat_mss(b.sub));
    auto h3 = horn(3, 1, maxDim);
    s.push_back(decorate_named(h3.sub, {}, {"012"}));
    s.push_back(std_shape(2, Flag::flat, Flag::sharp, maxDim));
    return s;
}

// Whether attaching g along a changes cur: new simplices, or a target decoration landing on an undecorated simplex.
inline bool attachment_grows(const Generator& g, const SSetMap& a, const MSS& cur) {
    const FinSSet& S = *g.source().base;
    const FinSSet& T = *g.target().base;
    if (S.total() != T.total()) return true;
    SSetMap via = a;
    // source and target share their simplices; only decorations can be new
    for (int e = 0; e < T.count(1); ++e)
        if (g.target().marked[e] && !g.source().marked[e] && !cur.is_marked(via.images[1][e])) return true;
    for (int t = 0; t < T.count(2); ++t) {
        if (g.target().thin[t] && !g.source().thin[t] && !cur.is_thin(via.images[2][t])) return true;
        if (cur.lean && g.target().is_lean(nondeg(2, t)) && !cur.is_lean(via.images[2][t])) return true;
    }
    return false;
}

inline ForwardSample random_forward(std::uint64_t seed, const std::vector<Generator>& gens, int steps, int maxDim) {
    std::mt19937_64 rng(seed);
    auto seeds = seed_objects(maxDim);
    MSS cur = seeds[rng() % seeds.size()];
    Certificate c;
    c.maxDim = maxDim;
    c.start = cur;
    SSetMap total = identity_map(cur.base);
    for (int s = 0; s < steps; ++s) {
        std::vector<int> order(gens.size());
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        bool stepped = false;
        for (int gi : order) {
            const Generator& g = gens[gi];
            if (g.source().base->top() < 0) continue;
            std::vector<SSetMap> options;
            for (auto& a : all_maps(g.source(), cur))
                if (attachment_grows(g, a, cur)) options.push_back(std::move(a));
            if (options.empty()) continue;
            const SSetMap& a = options[rng() % options.size()];
            auto dp = decorated_pushout(g, a, cur);
            c.steps.push_back({g.name, a});
            total = compose_maps(total, dp.po.fromX);
            cur = dp.P;
            stepped = true;
            break;
        }
        if (!stepped) break;
    }
    return {c, DecoratedMap{c.start, cur, total}};
}

// Refusal of a pivot filtration because a hypothesis fails.
struct pivot_refusal : validation_error {
    int clause;
    pivot_refusal(int c, const std::string& what) : validation_error("hypothesis " + std::to_string(c) + " fails: " + what), clause(c) {}
};

namespace detail {

struct SimplexGeometry {
    int n = 0;
    std::unordered_map<unsigned, Simplex> byMask;
    std::vector<std::vector<unsigned>> mask;

    explicit SimplexGeometry(const FinSSet& X) {
        n = X.count(0) - 1;
        mask.resize(X.names.size());
        for (int d = 0; d < static_cast<int>(X.names.size()); ++d)
            for (int i = 0; i < X.count(d); ++i) {
                auto vs = X.vertices(d, i);
                unsigned m = 0;
                for (int v : vs) m |= 1u << v;
                if (__builtin_popcount(m) != d + 1) throw param_error("ambient is not a simplex: repeated vertex in " + X.name(d, i));
                if (byMask.count(m)) throw param_error("ambient is not a simplex: two simplices on one vertex set");
                byMask[m] = nondeg(d, i);
                mask[d].push_back(m);
            }
        for (unsigned m = 1; m < (1u << (n + 1)); ++m)
            if (__builtin_popcount(m) - 1 < static_cast<int>(X.names.size()) && !byMask.count(m))
                throw param_error("ambient is not a simplex: missing face");
    }
};

inline std::string mask_name(unsigned m) {
    std::string s;
    for (int t = 0; m >> t; ++t)
        if (m >> t & 1) s += std::to_string(t);
    return s;
}

}  // namespace detail

struct PivotResult {
    Certificate cert;
    std::vector<std::string> layers;  // simplices attached by the filtration, in order
};

// The filtration of the pivot lemmas: attach missing simplices through the pivot in order of dimension by
// horn pushouts, and add decorations by the decoration-only generators whenever they apply.
inline PivotResult pivot_filtration(const DecoratedMap& z, int s, const std::vector<int>& U, const std::vector<int>& V, bool outer) {
    const MSS& B = z.cod;
    const FinSSet& X = *B.base;
    detail::SimplexGeometry G(X);
    int n = G.n;
    if (X.top() != n) throw param_error("ambient simplex is truncated below its dimension");
    Ambient A(B);
    std::string st = A.image(z);
    auto inZ = [&](unsigned m) { return st[A.simp(G.byMask.at(m))] != 0; };
    auto edgeMarked = [&](int a, int b) { return B.marked[G.byMask.at(1u << a | 1u << b).index] != 0; };
    auto triThin = [&](int a, int b, int c) { return B.thin[G.byMask.at(1u << a | 1u << b | 1u << c).index] != 0; };
    const FinSSet& Z = *z.dom.base;
    for (int e = 0; e < Z.count(1); ++e)
        if (z.dom.marked[e] != B.marked[z.map.images[1][e].index]) throw pivot_refusal(0, "Z does not carry the induced marking");
    for (int t = 0; t < Z.count(2); ++t)
        if (z.dom.thin[t] != B.thin[z.map.images[2][t].index]) throw pivot_refusal(0, "Z does not carry the induced scaling");
    unsigned full = (1u << (n + 1)) - 1;
    unsigned Um = 0, Vm = 0;
    for (int u : U) Um |= 1u << u;
    for (int v : V) Vm |= 1u << v;
    // clause 1
    for (auto& [m, sx] : G.byMask)
        if (inZ(m) && !(m >> s & 1) && !inZ(m | 1u << s)) throw pivot_refusal(1, "the cone on " + detail::mask_name(m) + " is missing");
    // clause 2
    if (U.empty() || V.empty() || (Um & Vm) || ((Um | Vm) >> s & 1)) throw pivot_refusal(2, "U, V must be nonempty, disjoint and avoid the pivot");
    if (outer && (Um != 1u || (Vm & 1u) || (Vm >> n & 1))) throw pivot_refusal(2, "outer pivot needs U = {0} and 0, n outside V");
    if (!outer)
        for (int u : U)
            for (int v : V)
                if (!(u < s && s < v)) throw pivot_refusal(2, "need u < s < v");
    if (!inZ(full & ~Um)) throw pivot_refusal(2, "the face skipping U is not in Z");
    if (!inZ(full & ~Vm)) throw pivot_refusal(2, "the face skipping V is not in Z");
    int vmin = n;
    for (int v : V) vmin = std::min(vmin, v);
    if (!outer) {
        int umin = n, vmax = 0;
        for (int u : U) umin = std::min(umin, u);
        for (int v : V) vmax = std::max(vmax, v);
        for (int i = umin; i < s; ++i)
            for (int j = s + 1; j <= vmax; ++j)
                if (!triThin(i, s, j)) throw pivot_refusal(3, "triangle " + detail::tri(i, s, j) + " is not thin");
        for (int u : U)
            for (int v : V)
                if (edgeMarked(u, v) && !inZ(1u << u | 1u << v) && !(edgeMarked(u, s) && edgeMarked(s, v)))
                    throw pivot_refusal(4, "edge " + detail::edge(u, v) + " is marked but " + detail::edge(u, s) + " or " +
                                               detail::edge(s, v) + " is not");
        for (int t = 0; t < X.count(2); ++t) {
            unsigned m = G.mask[2][t];
            if (!B.thin[t] || inZ(m) || (m >> s & 1)) continue;
            unsigned th = m | 1u << s;
            for (int drop = 0; drop <= n; ++drop) {
                if (!(th >> drop & 1)) continue;
                unsigned f = th & ~(1u << drop);
                if (!B.thin[G.byMask.at(f).index]) throw pivot_refusal(5, "face " + detail::mask_name(f) + " of " + detail::mask_name(th) + " is not thin");
            }
        }
    } else {
        for (int x = vmin; x < n; ++x) {
            if (!triThin(0, x, n)) throw pivot_refusal(3, "triangle " + detail::tri(0, x, n) + " is not thin");
            if (!edgeMarked(x, n)) throw pivot_refusal(4, "edge " + detail::edge(x, n) + " is not marked");
        }
        for (int v = 1; v < n; ++v)
            if (edgeMarked(0, v) && !inZ(1u | 1u << v) && !edgeMarked(0, n)) throw pivot_refusal(5, "edge 0" + std::to_string(v) + " is marked but 0n is not");
        for (int t = 0; t < X.count(2); ++t) {
            unsigned m = G.mask[2][t];
            if (!B.thin[t] || inZ(m) || !(m & 1u) || (m >> n & 1)) continue;
            unsigned th = m | 1u << n;
            for (int drop = 0; drop <= n; ++drop) {
                if (!(th >> drop & 1)) continue;
                unsigned f = th & ~(1u << drop);
                if (!B.thin[G.byMask.at(f).index]) throw pivot_refusal(6, "face " + detail::mask_name(f) + " of " + detail::mask_name(th) + " is not thin");
            }
        }
    }

    int maxDim = X.maxDim;
    std::vector<Generator> gens;
    std::map<std::string, int> gidx;
    auto gen = [&](const std::string& nm) {
        auto it = gidx.find(nm);
        if (it != gidx.end()) return it->second;
        gens.push_back(generator(nm, maxDim));
        return gidx[nm] = static_cast<int>(gens.size()) - 1;
    };
    std::vector<Move> decoMoves;
    for (const std::string nm : outer ? std::vector<std::string>{"OP3"} : std::vector<std::string>{"MS1", "M2"}) {
        if ((nm == "M2" && maxDim < 4) || (nm == "OP3" && maxDim < 3)) continue;
        int gi = gen(nm);
        std::vector<Generator> one{gens[gi]};
        for (auto& mv : all_moves(one, A)) {
            mv.gen = gi;
            decoMoves.push_back(std::move(mv));
        }
    }
    std::vector<Move> path;
    PivotResult R;
    auto saturate = [&] {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& mv : decoMoves)
                if (mv.valid(st)) {
                    mv.apply(st);
                    path.push_back(mv);
                    changed = true;
                }
        }
    };
    while (true) {
        saturate();
        int dim = -1;
        for (int d = 0; d <= n && dim < 0; ++d)
            for (unsigned m : G.mask[d])
                if ((m >> s & 1) && !inZ(m)) {
                    dim = d;
                    break;
                }
        if (dim < 0) break;
        std::vector<unsigned> layer;
        for (unsigned m : G.mask[dim])
            if ((m >> s & 1) && !inZ(m)) layer.push_back(m);
        for (unsigned m : layer) {
            std::vector<int> vs;
            for (int t = 0; t <= n; ++t)
                if (m >> t & 1) vs.push_back(t);
            int pos = static_cast<int>(std::find(vs.begin(), vs.end(), s) - vs.begin());
            std::vector<std::string> cands;
            if (outer) {
                if (dim == 2) cands.push_back("OP2");
                cands.push_back("OP1(" + std::to_string(dim) + ")");
            } else {
                cands.push_back("M1(" + std::to_string(dim) + "," + std::to_string(pos) + ")");
            }
            bool done = false;
            for (const auto& nm : cands) {
                int gi = gen(nm);
                auto b = map_from_vertices(gens[gi].target().base, B.base, vs);
                if (!b || check_decorated_map(DecoratedMap{gens[gi].target(), B, *b})) continue;
                auto mv = make_move(gens[gi], gi, *b, A);
                if (!mv || !mv->valid(st)) continue;
                mv->apply(st);
                path.push_back(std::move(*mv));
                R.layers.push_back(detail::mask_name(m));
                done = true;
                break;
            }
            if (!done) throw std::logic_error("pivot filtration cannot attach " + detail::mask_name(m));
        }
    }
    saturate();
    if (st != A.full()) throw std::logic_error("pivot filtration did not reach the simplex");
    std::vector<const Move*> ptrs;
    for (const auto& mv : path) ptrs.push_back(&mv);
    auto [cert, phi] = emit_certificate(z, gens, ptrs, maxDim);
    if (!exact_identification(replay(cert).result(), phi, B)) throw std::logic_error("pivot certificate does not reproduce the simplex");
    R.cert = std::move(cert);
    return R;
}

inline PivotResult pivot_filtration_inner(const DecoratedMap& z, int s, const std::vector<int>& U, const std::vector<int>& V) {
    return pivot_filtration(z, s, U, V, false);
}

inline PivotResult pivot_filtration_outer(const DecoratedMap& z, const std::vector<int>& V) {
    int n = z.cod.base->count(0) - 1;
    return pivot_filtration(z, n, {0}, V, true);
}

// A sub-object of a decorated simplex given by vertex sets of its maximal simplices, with induced decorations.
inline DecoratedMap induced_subobject(const MSS& B, const std::vector<std::vector<int>>& maximal) {
    detail::SimplexGeometry G(*B.base);
    std::vector<unsigned> gens;
    for (const auto& vs : maximal) {
        unsigned m = 0;
        for (int v : vs) m |= 1u << v;
        gens.push_back(m);
    }
    auto sub = subcomplex_with_map(B.base, [&](int d, int i) {
        unsigned m = G.mask[d][i];
        for (unsigned g : gens)
            if ((m & ~g) == 0) return true;
        return false;
    });
    auto S = sub.incl.dom;
    MSS Zm = pullback_decorations(S, sub.incl, B);
    return DecoratedMap{Zm, B, sub.incl};
}

// Monotone maps from the 4-simplex along which M2 pushes out to MSI(i).
inline std::vector<Mono> msi_pushout_witnesses(int i) {
    Generator m2 = generator("M2", 4);
    Generator msi = generator("MSI(" + std::to_string(i) + ")", 4);
    std::vector<Mono> out;
    for (const auto& th : monotone_maps(4, 3)) {
        auto f = map_from_vertices(m2.source().base, msi.source().base, th);
        if (!f || check_decorated_map(DecoratedMap{m2.source(), msi.source(), *f})) continue;
        auto dp = decorated_pushout(m2, *f, msi.source());
        SSetMap cmp = dp.po.fromX;
        cmp.dom = msi.target().base;
        if (exact_identification(msi.target(), cmp, dp.P)) out.push_back(th);
    }
    return out;
}

}  // namespace mss
