#pragma once

#include "mss/gray.hpp"
#include "mss/report.hpp"

namespace mss {

using Pt = std::pair<int, int>;

// A maximal simplex of [n] x [k], stored as its staircase of lattice points.
struct Path {
    int n = 0, k = 0;
    std::vector<Pt> pts;

    int length() const { return n + k; }
    const Pt& operator[](int i) const { return pts[i]; }
    bool operator==(const Path&) const = default;

    std::string str() const {
        std::string s;
        for (auto [a, b] : pts) s += "(" + std::to_string(a) + "," + std::to_string(b) + ")";
        return s;
    }
};

inline bool is_path(int n, int k, const std::vector<Pt>& pts) {
    if (static_cast<int>(pts.size()) != n + k + 1 || pts.front() != Pt{0, 0} || pts.back() != Pt{n, k}) return false;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        int da = pts[i].first - pts[i - 1].first, db = pts[i].second - pts[i - 1].second;
        if (!((da == 1 && db == 0) || (da == 0 && db == 1))) return false;
    }
    return true;
}

// At the first point where the paths differ, the one further along the first coordinate is bigger.
inline bool path_less(const Path& p, const Path& q) {
    for (std::size_t s = 0; s < p.pts.size(); ++s)
        if (p.pts[s] != q.pts[s]) return p.pts[s].first < q.pts[s].first;
    return false;
}

inline std::vector<Path> enumerate_paths(int n, int k) {
    if (n < 0 || k < 0) throw param_error("path shape must be nonnegative");
    std::vector<Path> out;
    std::vector<Pt> cur{{0, 0}};
    std::function<void()> rec = [&] {
        auto [a, b] = cur.back();
        if (a == n && b == k) {
            out.push_back(Path{n, k, cur});
            return;
        }
        if (a < n) {
            cur.push_back({a + 1, b});
            rec();
            cur.pop_back();
        }
        if (b < k) {
            cur.push_back({a, b + 1});
            rec();
            cur.pop_back();
        }
    };
    rec();
    std::sort(out.begin(), out.end(), path_less);
    return out;
}

// E_gamma on vertices.
inline Pt extend(const Path& g, int i, int j) { return {g[i].first, std::max(g[i].second, j)}; }

inline int dface(int r, int x) { return x < r ? x : x + 1; }
inline int sdeg(int u, int x) { return x <= u ? x : x - 1; }

struct ExtensionMap {
    Path gamma;
    DecoratedMap odot;
    DecoratedMap tensor;
};

// E_gamma as decorated maps (Delta^{n+k},flat,flat) (*) (Delta^k,sharp,sharp) -> (Delta^n,flat,flat) (*) (Delta^k,sharp,sharp)
// for (*) the globular and the Gray product, built on the maxDim-skeleton.
inline ExtensionMap extension_map(const Path& g, int maxDim = 3) {
    int n = g.n, k = g.k;
    if (!is_path(n, k, g.pts)) throw param_error("not a path: " + g.str());
    MSS src = std_shape(n + k, Flag::flat, Flag::flat, maxDim);
    MSS tgt = std_shape(n, Flag::flat, Flag::flat, maxDim);
    MSS fib = std_shape(k, Flag::sharp, Flag::sharp, maxDim);
    std::vector<int> vm;
    for (int i = 0; i <= n + k; ++i)
        for (int j = 0; j <= k; ++j) {
            auto [a, b] = extend(g, i, j);
            vm.push_back(a * (k + 1) + b);
        }
    ExtensionMap e{g, {}, {}};
    for (Variant v : {Variant::odot, Variant::tensor}) {
        MSS A = tensor(src, fib, v, maxDim);
        MSS B = tensor(tgt, fib, v, maxDim);
        auto f = map_from_vertices(A.base, B.base, vm);
        if (!f) throw validation_error("extension map is not simplicial for " + g.str());
        (v == Variant::odot ? e.odot : e.tensor) = DecoratedMap{A, B, *f};
    }
    return e;
}

namespace detail {

inline std::vector<Pt> drop(const std::vector<Pt>& p, int kappa) {
    auto q = p;
    q.erase(q.begin() + kappa);
    return q;
}

// All (gamma', kappa) with gamma' o d_kappa = phi.
inline std::vector<std::pair<Path, int>> face_solutions(int n, int k, const std::vector<Pt>& phi) {
    std::vector<std::pair<Path, int>> r;
    for (const auto& g : enumerate_paths(n, k))
        for (int kap = 0; kap <= n + k; ++kap)
            if (drop(g.pts, kap) == phi) r.push_back({g, kap});
    return r;
}

// All (gamma', kappa) with gamma' o s_kappa = psi.
inline std::vector<std::pair<Path, int>> degeneracy_solutions(int n, int k, const std::vector<Pt>& psi) {
    std::vector<std::pair<Path, int>> r;
    for (const auto& g : enumerate_paths(n, k))
        for (int kap = 0; kap < n + k + 1; ++kap) {
            bool ok = true;
            for (int i = 0; i < static_cast<int>(psi.size()) && ok; ++i) ok = g[sdeg(kap, i)] == psi[i];
            if (ok) r.push_back({g, kap});
        }
    return r;
}

// All paths h in [n]x[k] with f(h(x)) = target(x) for every x.
inline std::vector<Path> path_lifts(int n, int k, const std::vector<Pt>& target, const std::function<Pt(Pt)>& f) {
    std::vector<Path> r;
    if (n < 0 || k < 0) return r;
    for (const auto& h : enumerate_paths(n, k)) {
        bool ok = h.pts.size() == target.size();
        for (std::size_t x = 0; x < target.size() && ok; ++x) ok = f(h.pts[x]) == target[x];
        if (ok) r.push_back(h);
    }
    return r;
}

inline void check_budget(bool ok, const std::string& what, long estimate) {
    if (!ok) throw param_error(what + " exceeds the verification budget (about " + std::to_string(estimate) + " instances)");
}

inline long binom(int a, int b) {
    long r = 1;
    for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
}

}  // namespace detail

// For every gamma in [n]x[k] and phi in [n+k]x[k]: E_gamma E_phi = E_gamma' (s x id), gamma' <= gamma,
// and the composite gamma-after-phi repeats exactly k vertices.
inline Report verify_extension_stability(int n, int k, int jobs = 1) {
    detail::check_budget(n + 2 * k <= 8, "extension stability", detail::binom(n + k, k) * detail::binom(n + 2 * k, k));
    auto G = enumerate_paths(n, k);
    auto F = enumerate_paths(n + k, k);
    return parallel_report("extension-stability", static_cast<int>(G.size()), jobs, [&](int gi) {
        Report r;
        const Path& g = G[gi];
        for (const Path& phi : F) {
            auto wit = [&](const std::string& why) { return json{{"gamma", g.str()}, {"phi", phi.str()}, {"reason", why}}; };
            std::vector<Pt> theta;
            for (int i = 0; i <= n + 2 * k; ++i) theta.push_back(extend(g, phi[i].first, phi[i].second));
            int reps = 0;
            for (int i = 0; i < n + 2 * k; ++i) reps += theta[i] == theta[i + 1];
            if (reps != k) {
                r.fail(wit("composite repeats " + std::to_string(reps) + " vertices"));
                continue;
            }
            Mono s;
            std::vector<Pt> img;
            for (int i = 0; i <= n + 2 * k; ++i) {
                if (i == 0 || theta[i] != theta[i - 1]) img.push_back(theta[i]);
                s.push_back(static_cast<int>(img.size()) - 1);
            }
            if (!is_path(n, k, img)) {
                r.fail(wit("image is not a path"));
                continue;
            }
            Path gp{n, k, img};
            if (path_less(g, gp)) {
                r.fail(wit("gamma' = " + gp.str() + " exceeds gamma"));
                continue;
            }
            bool ok = true;
            for (int i = 0; i <= n + 2 * k && ok; ++i)
                for (int j = 0; j <= k && ok; ++j) {
                    auto [x, y] = extend(phi, i, j);
                    ok = extend(g, x, y) == extend(gp, s[i], j);
                }
            r.check(ok, [&] { return wit("square fails with gamma' = " + gp.str()); });
        }
        return r;
    });
}

// The four commuting squares relating E_gamma to faces and degeneracies in either coordinate.
inline Report verify_postextension(int n, int k, int jobs = 1) {
    detail::check_budget(n + k <= 7, "postextension", detail::binom(n + k, k) * (2 * (n + k) + 4));
    auto G = enumerate_paths(n, k);
    return parallel_report("postextension", static_cast<int>(G.size()), jobs, [&](int gi) {
        Report r;
        const Path& g = G[gi];
        const int L = n + k;
        auto wit = [&](int item, int op, const std::string& why) {
            return json{{"gamma", g.str()}, {"item", item}, {"operator", op}, {"reason", why}};
        };
        // item 1: d_r on the first factor
        for (int rr = 0; rr <= n + 1; ++rr) {
            std::vector<Pt> phi;
            for (auto [a, b] : g.pts) phi.push_back({dface(rr, a), b});
            auto sol = detail::face_solutions(n + 1, k, phi);
            if (sol.size() != 1) {
                r.fail(wit(1, rr, std::to_string(sol.size()) + " lifts"));
                continue;
            }
            auto& [gp, kap] = sol[0];
            bool ok = true;
            for (int i = 0; i <= L && ok; ++i)
                for (int j = 0; j <= k && ok; ++j) {
                    auto [a, b] = extend(g, i, j);
                    ok = Pt{dface(rr, a), b} == extend(gp, dface(kap, i), j);
                }
            r.check(ok, [&] { return wit(1, rr, "square fails"); });
        }
        // item 2: d_s on the second factor
        for (int ss = 0; ss <= k + 1; ++ss) {
            std::vector<Pt> phi;
            for (auto [a, b] : g.pts) phi.push_back({a, dface(ss, b)});
            auto sol = detail::face_solutions(n, k + 1, phi);
            if (sol.size() != 1) {
                r.fail(wit(2, ss, std::to_string(sol.size()) + " lifts"));
                continue;
            }
            auto& [gp, kap] = sol[0];
            bool ok = true;
            for (int i = 0; i <= L && ok; ++i)
                for (int j = 0; j <= k && ok; ++j) {
                    auto [a, b] = extend(g, i, j);
                    ok = Pt{a, dface(ss, b)} == extend(gp, dface(kap, i), dface(ss, j));
                }
            r.check(ok, [&] { return wit(2, ss, "square fails"); });
        }
        // item 3: s_u on the first factor
        for (int u = 0; u < n; ++u) {
            std::vector<Pt> psi;
            for (auto [a, b] : g.pts) psi.push_back({sdeg(u, a), b});
            auto sol = detail::degeneracy_solutions(n - 1, k, psi);
            if (sol.size() != 1) {
                r.fail(wit(3, u, std::to_string(sol.size()) + " lifts"));
                continue;
            }
            auto& [gp, kap] = sol[0];
            bool ok = true;
            for (int i = 0; i <= L && ok; ++i)
                for (int j = 0; j <= k && ok; ++j) {
                    auto [a, b] = extend(g, i, j);
                    ok = Pt{sdeg(u, a), b} == extend(gp, sdeg(kap, i), j);
                }
            r.check(ok, [&] { return wit(3, u, "square fails"); });
        }
        // item 4: s_l on the second factor
        for (int l = 0; l < k; ++l) {
            std::vector<Pt> psi;
            for (auto [a, b] : g.pts) psi.push_back({a, sdeg(l, b)});
            auto sol = detail::degeneracy_solutions(n, k - 1, psi);
            if (sol.size() != 1) {
                r.fail(wit(4, l, std::to_string(sol.size()) + " lifts"));
                continue;
            }
            auto& [gp, kap] = sol[0];
            bool ok = true;
            for (int i = 0; i <= L && ok; ++i)
                for (int j = 0; j <= k && ok; ++j) {
                    auto [a, b] = extend(g, i, j);
                    ok = Pt{a, sdeg(l, b)} == extend(gp, sdeg(kap, i), sdeg(l, j));
                }
            r.check(ok, [&] { return wit(4, l, "square fails"); });
        }
        return r;
    });
}

// Items 1-6 on faces of extensions; instances outside an item's hypotheses are skipped.
inline Report verify_faces_of_extensions(int n, int k, int jobs = 1) {
    detail::check_budget(n + k <= 7, "faces of extensions", detail::binom(n + k, k) * (2 * (n + k) + 6));
    auto G = enumerate_paths(n, k);
    const int last = static_cast<int>(G.size()) - 1;
    const int L = n + k;
    return parallel_report("faces-of-extensions", static_cast<int>(G.size()), jobs, [&](int gi) {
        Report r;
        const Path& g = G[gi];
        auto wit = [&](int item, int idx, const std::string& why) {
            return json{{"gamma", g.str()}, {"item", item}, {"index", idx}, {"reason", why}};
        };
        // 1: the greatest path restricts to the identity on [0..n] x [k]
        if (gi == last) {
            bool ok = true;
            for (int i = 0; i <= n && ok; ++i)
                for (int j = 0; j <= k && ok; ++j) ok = extend(g, i, j) == Pt{i, j};
            r.check(ok, [&] { return wit(1, 0, "section is not the identity"); });
        } else {
            r.skip();
        }
        // 2: a path and its successor agree away from the vertex where they differ
        if (gi < last) {
            const Path& h = G[gi + 1];
            std::vector<int> diff;
            for (int i = 0; i <= L; ++i)
                if (g[i] != h[i]) diff.push_back(i);
            if (diff.size() == 1) {
                int u = diff[0];
                bool ok = true;
                for (int i = 0; i < L && ok; ++i)
                    for (int j = 0; j <= k && ok; ++j) ok = extend(g, dface(u, i), j) == extend(h, dface(u, i), j);
                r.check(ok, [&] { return wit(2, u, "successor " + h.str() + " disagrees"); });
            } else {
                r.skip();
            }
        }
        for (int i = 0; i <= L; ++i) {
            auto [ai, bi] = g[i];
            // 3: dropping a vertex inside a horizontal run
            bool h3 = L >= 1 && ((i == 0 && g[1] == Pt{1, 0}) || (i > 0 && i < L && g[i - 1].second == bi && g[i + 1].second == bi) ||
                                 (i == L && g[L - 1] == Pt{n - 1, k}));
            if (h3) {
                auto sol = detail::path_lifts(n - 1, k, detail::drop(g.pts, i), [&](Pt p) { return Pt{dface(ai, p.first), p.second}; });
                if (sol.size() != 1) {
                    r.fail(wit(3, i, "no unique gamma-hat"));
                } else {
                    const Path& gh = sol[0];
                    bool ok = true;
                    for (int x = 0; x < L && ok; ++x)
                        for (int j = 0; j <= k && ok; ++j) {
                            auto [a, b] = extend(gh, x, j);
                            ok = extend(g, dface(i, x), j) == Pt{dface(ai, a), b};
                        }
                    r.check(ok, [&] { return wit(3, i, "square fails"); });
                }
            } else {
                r.skip();
            }
            // 4: dropping a vertex inside a vertical run
            bool h4 = L >= 1 && ((i == 0 && g[1] == Pt{0, 1}) || (i > 0 && i < L && g[i - 1].first == ai && g[i + 1].first == ai) ||
                                 (i == L && g[L - 1] == Pt{n, k - 1}));
            if (h4) {
                auto sol = detail::path_lifts(n, k - 1, detail::drop(g.pts, i), [&](Pt p) { return Pt{p.first, dface(bi, p.second)}; });
                if (sol.size() != 1) {
                    r.fail(wit(4, i, "no unique gamma-hat"));
                } else {
                    const Path& gh = sol[0];
                    bool ok = true;
                    for (int x = 0; x < L && ok; ++x)
                        for (int j = 0; j < k && ok; ++j) {
                            auto [a, b] = extend(gh, x, j);
                            ok = extend(g, dface(i, x), dface(bi, j)) == Pt{a, dface(bi, b)};
                        }
                    r.check(ok, [&] { return wit(4, i, "square fails"); });
                }
            } else {
                r.skip();
            }
        }
        // 5: the two pentagons through id (.) s_0, when gamma starts vertically
        if (k >= 1 && g[1] == Pt{0, 1}) {
            bool ok = true;
            for (int i = 0; i < L && ok; ++i)
                for (int j = 0; j <= k && ok; ++j) ok = extend(g, i + 1, dface(0, sdeg(0, j))) == extend(g, i + 1, j);
            r.check(ok, [&] { return wit(5, 0, "first pentagon fails"); });
            auto sol = detail::path_lifts(n, k - 1, detail::drop(g.pts, 0), [](Pt p) { return Pt{p.first, dface(0, p.second)}; });
            if (sol.size() != 1) {
                r.fail(wit(5, 1, "no unique gamma-hat"));
            } else {
                const Path& gh = sol[0];
                bool ok2 = true;
                for (int i = 0; i < L && ok2; ++i)
                    for (int j = 0; j <= k && ok2; ++j) {
                        auto [a, b] = extend(gh, i, sdeg(0, j));
                        ok2 = Pt{a, dface(0, b)} == extend(g, i + 1, j);
                    }
                r.check(ok2, [&] { return wit(5, 1, "second pentagon fails"); });
            }
        } else {
            r.skip();
        }
        // 6: the square through s_r, r the last index on the bottom row
        if (k >= 1) {
            int rr = 0;
            for (int i = 0; i <= L; ++i)
                if (g[i].second == 0) rr = i;
            std::vector<Pt> tl;
            for (int s = 0; s < L; ++s) tl.push_back(s <= rr ? Pt{g[s].first, 0} : Pt{g[s + 1].first, g[s + 1].second - 1});
            if (!is_path(n, k - 1, tl)) {
                r.fail(wit(6, rr, "gamma-tilde is not a path"));
            } else {
                Path gt{n, k - 1, tl};
                bool ok = true;
                for (int i = 0; i <= L && ok; ++i)
                    for (int j = 0; j < k && ok; ++j) {
                        auto [a, b] = extend(gt, sdeg(rr, i), j);
                        ok = Pt{a, dface(0, b)} == extend(g, i, dface(0, j));
                    }
                r.check(ok, [&] { return wit(6, rr, "square fails"); });
            }
        } else {
            r.skip();
        }
        return r;
    });
}

// Subsets of [0..N] as increasing lists, nonempty.
inline std::vector<Mono> injections_into(int N) {
    std::vector<Mono> out;
    for (unsigned m = 1; m < (1u << (N + 1)); ++m) {
        Mono f;
        for (int t = 0; t <= N; ++t)
            if (m >> t & 1) f.push_back(t);
        out.push_back(f);
    }
    return out;
}

// The rectangle of the no-boundaries lemma, with tau, s and alpha-hat built as in its proof.
inline Report verify_noboundaries(int n, int k, int jobs = 1) {
    detail::check_budget(n + k <= 5, "noboundaries", detail::binom(n + k, k) * k * (1L << (n + 2 * k + 2)));
    auto G = enumerate_paths(n, k);
    const int L = n + k;
    auto alphas = injections_into(L);
    auto betas = injections_into(k);
    return parallel_report("noboundaries", static_cast<int>(G.size()), jobs, [&](int gi) {
        Report rep;
        const Path& g = G[gi];
        for (int r = 1; r <= k; ++r) {
            int eps = 0;
            while (g[eps].second != r) ++eps;
            int ur = 0;
            while (g[ur].first != g[eps].first) ++ur;
            for (const Mono& al : alphas)
                for (const Mono& be : betas) {
                    auto in = [](const Mono& f, int v) { return std::find(f.begin(), f.end(), v) != f.end(); };
                    int omega = -1;
                    for (int v : al)
                        if (v >= ur && v < eps) omega = v;
                    bool hyp = !in(al, eps) && in(al, 0) && (eps == L || in(al, L)) && omega >= 0 && in(be, 0) && in(be, r);
                    for (int t = r + 1; t <= k && hyp; ++t) hyp = !in(be, t);
                    if (!hyp) {
                        rep.skip();
                        continue;
                    }
                    auto wit = [&](const std::string& why) {
                        return json{{"gamma", g.str()}, {"r", r}, {"alpha", al}, {"beta", be}, {"reason", why}};
                    };
                    const int l = static_cast<int>(al.size()) - 1, m = static_cast<int>(be.size()) - 1;
                    const int vr = static_cast<int>(std::find(al.begin(), al.end(), omega) - al.begin());
                    std::vector<Pt> tau, ttil;
                    Mono iota;
                    for (int i = 0; i <= l + m; ++i) {
                        if (i <= vr) {
                            tau.push_back({i, 0});
                            iota.push_back(al[i]);
                        } else if (i <= vr + m) {
                            tau.push_back({vr, i - vr});
                            iota.push_back(omega + be[i - vr]);
                        } else {
                            tau.push_back({i - m, m});
                            iota.push_back(al[i - m] + r);
                        }
                    }
                    for (int i = 0; i <= n + 2 * k; ++i) {
                        if (i <= omega)
                            ttil.push_back({i, 0});
                        else if (i <= omega + r)
                            ttil.push_back({omega, i - omega});
                        else if (i <= L + r)
                            ttil.push_back({i - r, r});
                        else
                            ttil.push_back({L, i - L});
                    }
                    if (!is_path(l, m, tau) || !is_path(L, k, ttil)) {
                        rep.fail(wit("constructed tau is not a path"));
                        continue;
                    }
                    // theta = E_gamma o tau-tilde must factor through gamma by a surjection nu
                    Mono nu;
                    bool factors = true;
                    for (auto [x, y] : ttil) {
                        Pt p = extend(g, x, y);
                        auto it = std::find(g.pts.begin(), g.pts.end(), p);
                        if (it == g.pts.end()) {
                            factors = false;
                            break;
                        }
                        nu.push_back(static_cast<int>(it - g.pts.begin()));
                    }
                    if (!factors || !is_surjective_onto(nu, L)) {
                        rep.fail(wit("E_gamma o tau-tilde does not factor through gamma"));
                        continue;
                    }
                    auto [s, ahat] = epi_mono(compose(nu, iota));
                    bool ok = in(ahat, eps);
                    for (int v : al) ok = ok && in(ahat, v);
                    for (int i = 0; i <= l + m && ok; ++i)
                        for (int j = 0; j <= m && ok; ++j) {
                            auto [x, y] = extend(Path{l, m, tau}, i, j);
                            ok = extend(g, al[x], be[y]) == extend(g, ahat[s[i]], be[j]);
                        }
                    rep.check(ok, [&] { return wit("rectangle fails"); });
                }
        }
        return rep;
    });
}

}  // namespace mss
