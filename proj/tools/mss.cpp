#include <CLI11.hpp>
#include <iostream>

#include "mss/suite.hpp"

using namespace mss;

namespace {

struct Globals {
    int jobs = 1;
    std::uint64_t seed = 0;
    int maxDim = -1;
    std::string report;
    std::string out;
};

int max_dim_or(const Globals& g, int dflt) { return g.maxDim >= 0 ? g.maxDim : dflt; }

void emit(const Globals& g, const json& j) {
    if (g.out.empty())
        std::cout << j.dump(2) << "\n";
    else
        write_json_file(g.out, j);
}

// Exit status follows the report: 0 when it has no counterexamples, 1 otherwise.
int finish(const Globals& g, const json& rep) {
    if (!g.report.empty()) write_json_file(g.report, rep);
    std::cout << rep.value("suite", std::string()) << ": instances=" << rep["instances"] << " passed=" << rep["passed"]
              << " skipped=" << rep["skipped"] << " counterexamples=" << rep["counterexamples"].size() << "\n";
    return rep["counterexamples"].empty() ? 0 : 1;
}

MSS read_mss_at(const std::string& file, int maxDim) {
    MSS m = read_mss(file);
    if (maxDim >= 0 && m.base->top() > maxDim) throw param_error(file + ": has simplices above --max-dim");
    return m;
}

// The map sending each simplex of A to the simplex of B with the same id.
DecoratedMap inclusion_by_ids(const MSS& A, const MSS& B, const std::string& what) {
    auto ids = simplex_ids(*A.base);
    detail::IdIndex idx(*B.base);
    SSetMap f{A.base, B.base, {}};
    f.images.resize(A.base->names.size());
    for (int d = 0; d < static_cast<int>(ids.size()); ++d)
        for (const auto& id : ids[d]) {
            auto it = idx.at.find(id);
            if (it == idx.at.end() || it->second.first != d) throw validation_error(what + ".simplices." + std::to_string(d) + ": id " + id + " is not in the codomain");
            f.images[d].push_back(nondeg(d, it->second.second));
        }
    if (auto e = check_map(f)) throw validation_error(what + ": ids do not define a simplicial map: " + *e);
    DecoratedMap m{A, B, f};
    if (auto e = check_decorated_map(m)) throw validation_error(what + ": " + *e);
    return m;
}

std::vector<int> parse_vertices(const std::string& s, const std::string& flag) {
    std::vector<int> out;
    std::stringstream ss(s);
    for (std::string t; std::getline(ss, t, ',');) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(t, &used));
            if (used != t.size()) throw std::invalid_argument(t);
        } catch (const std::exception&) {
            throw param_error(flag + ": expected a comma-separated list of vertices, got " + s);
        }
    }
    return out;
}

Flag parse_flag(const std::string& s) {
    if (s == "flat") return Flag::flat;
    if (s == "sharp") return Flag::sharp;
    throw param_error("expected flat or sharp, got " + s);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite marked-scaled simplicial sets: products, mapping objects, orientals, anodyne certificates, coends"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--jobs", g.jobs, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--seed", g.seed, "seed for randomized suites");
    app.add_option("--max-dim", g.maxDim, "truncation dimension")->check(CLI::NonNegativeNumber);
    app.add_option("--report", g.report, "write the JSON report to this file");
    app.add_option("-o,--output", g.out, "output file (stdout if omitted)");
    auto sub = [&](const std::string& name, const std::string& help) {
        auto* s = app.add_subcommand(name, help);
        s->fallthrough();
        return s;
    };
    std::function<int()> action;

    std::string fileA, fileB, variant = "tensor", kind;
    auto* gray = sub("gray", "tensor product of two marked-scaled simplicial sets");
    gray->add_option("A", fileA)->required();
    gray->add_option("B", fileB)->required();
    gray->add_option("--variant", variant, "tensor|boxtensor|odot|boxodot");
    gray->callback([&] {
        action = [&] {
            Variant v = parse_variant(variant);
            MSS A = read_mss(fileA), B = read_mss(fileB);
            int D = max_dim_or(g, std::max(A.base->top(), 0) + std::max(B.base->top(), 0));
            json j = mss_to_json(tensor(A, B, v, D));
            if (v == Variant::boxodot) j["meta"] = json{{"boxodot", "scaling of boxtensor, marking of odot"}};
            emit(g, j);
            return 0;
        };
    });

    bool box = false;
    auto* hom = sub("hom", "mapping object Fun^{gr|opgr|gl|opgl}(X, D)");
    hom->add_option("X", fileA)->required();
    hom->add_option("D", fileB)->required();
    hom->add_option("--variant", kind, "gr|opgr|gl|opgl")->required();
    hom->add_flag("--box", box, "use the boxed products");
    hom->callback([&] {
        action = [&] {
            FunResult F = mapping_object(parse_hom_kind(kind), read_mss(fileA), read_mss(fileB), max_dim_or(g, 2), box);
            emit(g, mss_to_json(F.value));
            return 0;
        };
    });

    int maxIdx = 3;
    auto* bigx = sub("bigx", "colimit of the cells of C with its section and projection");
    bigx->add_option("C", fileA)->required();
    bigx->add_option("--variant", variant, "tensor|odot");
    bigx->add_option("--max-idx", maxIdx)->check(CLI::NonNegativeNumber);
    bigx->callback([&] {
        action = [&] {
            BigX X = big_x(read_mss(fileA), parse_variant(variant), maxIdx, max_dim_or(g, 3));
            json j = mss_to_json(X.value);
            j["s"] = map_images_json(X.s.map);
            j["pi"] = map_images_json(X.pi.map);
            emit(g, j);
            return 0;
        };
    });

    std::string dir, probe = "flat", side = "gl";
    auto* co = sub("coend", "coend of a truncated simplicial object");
    co->add_option("F", dir, "directory with level_<m>.json and action.json")->required();
    co->add_option("--probe", probe, "flat|sharp");
    co->add_option("--side", side, "gl|gr");
    co->callback([&] {
        action = [&] {
            if (side != "gl" && side != "gr") throw param_error("--side: expected gl or gr");
            auto F = read_truncated(dir);
            emit(g, mss_to_json(coend(F, parse_flag(probe), side == "gl" ? CoendSide::gl : CoendSide::gr, max_dim_or(g, F.L))));
            return 0;
        };
    });

    std::string functor;
    int level = 0, assemble = -1;
    auto* lv = sub("level", "levelwise Sq, SqE, Gl, GlE");
    lv->add_option("C", fileA)->required();
    lv->add_option("--functor", functor, "Sq|SqE|Gl|GlE")->required();
    lv->add_option("--n", level)->check(CLI::NonNegativeNumber);
    lv->add_option("--assemble", assemble, "write levels 0..L as a truncated simplicial object into the -o directory");
    lv->callback([&] {
        action = [&] {
            MSS C = read_mss(fileA);
            LevelFunctor fn = parse_level_functor(functor);
            if (assemble >= 0) {
                if (g.out.empty()) throw param_error("--assemble needs -o <directory>");
                write_truncated(levelwise_object(C, fn, assemble, max_dim_or(g, 2)), g.out);
                return 0;
            }
            emit(g, marked_to_json(levelwise(C, fn, level, max_dim_or(g, 2))));
            return 0;
        };
    });

    int N = 0;
    bool plus = false;
    auto* ori = sub("oriental", "the oriental O^n");
    ori->add_option("N", N)->required()->check(CLI::Range(0, 5));
    ori->callback([&] {
        action = [&] {
            emit(g, mss_to_json(oriental(N, max_dim_or(g, 3)).value()));
            return 0;
        };
    });
    auto* dnc = sub("dn", "the poset model D^n");
    dnc->add_option("N", N)->required()->check(CLI::Range(0, 5));
    dnc->add_flag("--plus", plus, "scaling of D^n_+");
    dnc->callback([&] {
        action = [&] {
            int D = max_dim_or(g, 3);
            emit(g, mss_to_json((plus ? dn_plus(N, D) : dn(N, D)).value));
            return 0;
        };
    });
    auto* al = sub("alpha", "the comparison map D^n -> O^n");
    al->add_option("N", N)->required()->check(CLI::Range(0, 5));
    al->add_flag("--plus", plus, "use the D^n_+ scaling on the domain");
    al->callback([&] {
        action = [&] {
            auto a = alpha(N, max_dim_or(g, 3), plus);
            emit(g, map_to_json(a.map, mss_to_json(a.dom), mss_to_json(a.cod)));
            return 0;
        };
    });

    std::string gens = "MS", mapFile;
    int maxSteps = 64;
    auto* ac = sub("anodyne-cert", "search a pushout certificate for an inclusion A -> B");
    ac->add_option("A", fileA)->required();
    ac->add_option("B", fileB)->required();
    ac->add_option("--gens", gens, "generator families, e.g. MS, S, MB, MS+MSI");
    ac->add_option("--max-steps", maxSteps)->check(CLI::PositiveNumber);
    ac->add_option("--map", mapFile, "map file A -> B (default: match simplex ids)");
    ac->callback([&] {
        action = [&] {
            int D = max_dim_or(g, 4);
            MSS A = read_mss_at(fileA, D), B = read_mss_at(fileB, D);
            DecoratedMap f = mapFile.empty() ? inclusion_by_ids(A, B, fileA)
                                             : DecoratedMap{A, B, map_from_json(read_json_file(mapFile), A.base, B.base, mapFile)};
            if (auto e = check_decorated_map(f)) throw validation_error(mapFile + ": " + *e);
            auto c = find_certificate(f, catalog(gens, D), D, {maxSteps, 200000});
            if (!c) {
                std::cout << "no certificate within " << maxSteps << " steps\n";
                return 1;
            }
            emit(g, certificate_to_json(*c, fileA));
            std::cerr << c->steps.size() << " steps\n";
            return 0;
        };
    });

    auto* rp = sub("replay", "replay a certificate and validate every step");
    rp->add_option("certificate", fileA)->required();
    rp->add_option("--target", fileB, "require the result to be isomorphic to this file");
    rp->callback([&] {
        action = [&] {
            auto base = std::filesystem::path(fileA).parent_path().string();
            Certificate c = certificate_from_json(read_json_file(fileA), base.empty() ? "." : base);
            if (auto e = detail::validate_steps(c)) throw validation_error(fileA + ": " + *e);
            MSS result = replay(c).result();
            if (!fileB.empty() && !iso_check_decorated(result, read_mss(fileB))) {
                std::cout << "replay result is not isomorphic to " << fileB << "\n";
                return 1;
            }
            if (!g.out.empty()) write_json_file(g.out, mss_to_json(result));
            std::cout << "replayed " << c.steps.size() << " steps\n";
            return 0;
        };
    });

    std::string pivotKind, uList, vList;
    int pivot = -1;
    auto* pv = sub("pivot", "pivot filtration certificate for Z -> Delta");
    pv->add_option("kind", pivotKind, "inner|outer")->required()->check(CLI::IsMember({"inner", "outer"}));
    pv->add_option("Z", fileA)->required();
    pv->add_option("Delta", fileB)->required();
    pv->add_option("--pivot", pivot, "pivot vertex s (inner)");
    pv->add_option("--u", uList, "comma-separated vertices U (inner)");
    pv->add_option("--v", vList, "comma-separated vertices V")->required();
    pv->callback([&] {
        action = [&] {
            MSS Z = read_mss(fileA), B = read_mss(fileB);
            DecoratedMap z = inclusion_by_ids(Z, B, fileA);
            PivotResult r;
            if (pivotKind == "inner") {
                if (pivot < 0 || uList.empty()) throw param_error("inner pivot needs --pivot and --u");
                r = pivot_filtration_inner(z, pivot, parse_vertices(uList, "--u"), parse_vertices(vList, "--v"));
            } else {
                if (pivot >= 0 || !uList.empty()) throw param_error("outer pivot takes only --v");
                r = pivot_filtration_outer(z, parse_vertices(vList, "--v"));
            }
            json j = certificate_to_json(r.cert, fileA);
            j["layers"] = r.layers;
            emit(g, j);
            return 0;
        };
    });

    std::string which;
    int vn = 1, vk = 1, maxN = 3;
    auto* ve = sub("verify", "run one verifier");
    ve->add_option("name", which, "extension-stability|postextension|faces|noboundaries|alpha-natural|rigid-retraction")
        ->required()
        ->check(CLI::IsMember({"extension-stability", "postextension", "faces", "noboundaries", "alpha-natural", "rigid-retraction"}));
    ve->add_option("--n", vn)->check(CLI::NonNegativeNumber);
    ve->add_option("--k", vk)->check(CLI::NonNegativeNumber);
    ve->add_option("--max-n", maxN)->check(CLI::NonNegativeNumber);
    ve->callback([&] {
        action = [&] {
            Report r;
            if (which == "extension-stability") r = verify_extension_stability(vn, vk, g.jobs);
            else if (which == "postextension") r = verify_postextension(vn, vk, g.jobs);
            else if (which == "faces") r = verify_faces_of_extensions(vn, vk, g.jobs);
            else if (which == "noboundaries") r = verify_noboundaries(vn, vk, g.jobs);
            else if (which == "alpha-natural") r = verify_alpha_natural(maxN, max_dim_or(g, 3), g.jobs);
            else r = verify_rigid_retraction(maxN, g.jobs);
            return finish(g, r.to_json());
        };
    });

    std::string select;
    bool all = false;
    auto* su = sub("suite", "run the verification suites");
    su->add_option("--select", select, "lemmas|coend|gray|adjunction|oriental|anodyne|levelwise|all, '+'-separated");
    su->add_flag("--all", all, "same as --select all");
    su->callback([&] {
        action = [&] {
            if (all == !select.empty()) throw param_error("give exactly one of --select or --all");
            return finish(g, run_suites(all ? "all" : select, SuiteOptions{g.jobs, g.seed}));
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    try {
        return action();
    } catch (const pivot_refusal& e) {
        std::cerr << "refused (hypothesis " << e.clause << "): " << e.what() << "\n";
        return 2;
    } catch (const validation_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const param_error& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    }
}
