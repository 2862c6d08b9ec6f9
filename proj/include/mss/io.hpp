#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mss/decor.hpp"
#include "mss/report.hpp"

namespace mss {

// Ids are simplex names, suffixed with "@d" when a name occurs in several dimensions.
inline std::vector<std::vector<std::string>> simplex_ids(const FinSSet& X) {
    std::map<std::string, std::set<int>> dims;
    for (int d = 0; d < static_cast<int>(X.names.size()); ++d)
        for (const auto& n : X.names[d]) dims[n].insert(d);
    std::vector<std::vector<std::string>> ids(X.names.size());
    for (int d = 0; d < static_cast<int>(X.names.size()); ++d)
        for (const auto& n : X.names[d]) ids[d].push_back(dims[n].size() > 1 ? n + "@" + std::to_string(d) : n);
    return ids;
}

inline json simplex_ref(const std::vector<std::vector<std::string>>& ids, const Simplex& s) {
    return json{{"word", word_of(s.sur)}, {"target", ids[s.dim][s.index]}};
}

inline json sset_to_json(const FinSSet& X) {
    auto ids = simplex_ids(X);
    json simp = json::object(), faces = json::object();
    for (int d = 0; d < static_cast<int>(X.names.size()); ++d) {
        if (X.count(d) == 0) continue;
        simp[std::to_string(d)] = ids[d];
        if (d == 0) continue;
        for (int i = 0; i < X.count(d); ++i) {
            json fs = json::array();
            for (const auto& f : X.faces[d][i]) fs.push_back(simplex_ref(ids, f));
            faces[ids[d][i]] = fs;
        }
    }
    return json{{"maxDim", X.maxDim}, {"simplices", simp}, {"faces", faces}};
}

namespace detail {

inline const json& field(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) throw validation_error(path + ": expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw validation_error(path + "." + key + ": missing");
    return *it;
}

struct IdIndex {
    std::unordered_map<std::string, std::pair<int, int>> at;

    explicit IdIndex(const FinSSet& X) {
        auto ids = simplex_ids(X);
        for (int d = 0; d < static_cast<int>(ids.size()); ++d)
            for (int i = 0; i < static_cast<int>(ids[d].size()); ++i) at[ids[d][i]] = {d, i};
    }

    Simplex resolve(const json& ref, const std::string& path) const {
        const json& t = field(ref, "target", path);
        if (!t.is_string()) throw validation_error(path + ".target: expected a string id");
        auto it = at.find(t.get<std::string>());
        if (it == at.end()) throw validation_error(path + ".target: unknown id " + t.get<std::string>());
        std::vector<int> word;
        if (auto w = ref.find("word"); w != ref.end()) {
            if (!w->is_array()) throw validation_error(path + ".word: expected an array");
            for (const auto& x : *w) {
                if (!x.is_number_integer()) throw validation_error(path + ".word: expected integers");
                word.push_back(x.get<int>());
            }
        }
        auto [d, i] = it->second;
        try {
            return Simplex{d, i, surjection_of_word(word, d)};
        } catch (const validation_error& e) {
            throw validation_error(path + ".word: " + e.what());
        }
    }
};

}  // namespace detail

inline FinSSet sset_from_json(const json& j, const std::string& path = "$") {
    const json& md = detail::field(j, "maxDim", path);
    if (!md.is_number_integer() || md.get<int>() < 0) throw validation_error(path + ".maxDim: expected a nonnegative integer");
    FinSSet X(md.get<int>());
    const json& simp = detail::field(j, "simplices", path);
    if (!simp.is_object()) throw validation_error(path + ".simplices: expected an object");
    const json faces = j.contains("faces") ? j.at("faces") : json::object();
    std::unordered_map<std::string, std::pair<int, int>> seen;
    for (int d = 0; d <= X.maxDim; ++d) {
        std::string key = std::to_string(d);
        if (!simp.contains(key)) continue;
        const json& lst = simp.at(key);
        std::string p = path + ".simplices." + key;
        if (!lst.is_array()) throw validation_error(p + ": expected an array");
        for (std::size_t k = 0; k < lst.size(); ++k) {
            if (!lst[k].is_string()) throw validation_error(p + "[" + std::to_string(k) + "]: expected a string id");
            std::string id = lst[k].get<std::string>();
            if (seen.count(id)) throw validation_error(p + "[" + std::to_string(k) + "]: duplicate id " + id);
            std::vector<Simplex> fs;
            if (d > 0) {
                std::string fp = path + ".faces." + id;
                if (!faces.contains(id)) throw validation_error(fp + ": missing");
                const json& fl = faces.at(id);
                if (!fl.is_array() || static_cast<int>(fl.size()) != d + 1)
                    throw validation_error(fp + ": expected " + std::to_string(d + 1) + " faces");
                for (int f = 0; f <= d; ++f) {
                    std::string ep = fp + "[" + std::to_string(f) + "]";
                    const json& t = detail::field(fl[f], "target", ep);
                    if (!t.is_string() || !seen.count(t.get<std::string>()))
                        throw validation_error(ep + ".target: unknown or later id");
                    auto [td, ti] = seen.at(t.get<std::string>());
                    std::vector<int> word;
                    if (fl[f].contains("word"))
                        for (const auto& x : fl[f].at("word")) word.push_back(x.get<int>());
                    if (td + static_cast<int>(word.size()) != d - 1) throw validation_error(ep + ": face has the wrong dimension");
                    try {
                        fs.push_back(Simplex{td, ti, surjection_of_word(word, td)});
                    } catch (const validation_error& e) {
                        throw validation_error(ep + ".word: " + e.what());
                    }
                }
            }
            std::string nm = id;
            if (auto at = nm.rfind('@'); at != std::string::npos && nm.substr(at + 1) == key) nm = nm.substr(0, at);
            seen[id] = {d, X.add(d, nm, std::move(fs))};
        }
    }
    if (auto e = check_sset(X)) throw validation_error(path + ": " + *e);
    return X;
}

inline json mss_to_json(const MSS& m) {
    json j = sset_to_json(*m.base);
    auto ids = simplex_ids(*m.base);
    json mk = json::array(), th = json::array();
    for (int i : m.marked_ids()) mk.push_back(ids[1][i]);
    for (int i : m.thin_ids()) th.push_back(ids[2][i]);
    j["marked"] = mk;
    j["thin"] = th;
    if (m.lean) {
        json ln = json::array();
        for (int i = 0; i < static_cast<int>(m.lean->size()); ++i)
            if ((*m.lean)[i]) ln.push_back(ids[2][i]);
        j["lean"] = ln;
    }
    return j;
}

inline MSS mss_from_json(const json& j, const std::string& path = "$") {
    auto X = share(sset_from_json(j, path));
    detail::IdIndex idx(*X);
    auto ids_of = [&](const std::string& key, int dim) {
        std::vector<int> out;
        if (!j.contains(key)) return out;
        const json& lst = j.at(key);
        if (!lst.is_array()) throw validation_error(path + "." + key + ": expected an array");
        for (std::size_t k = 0; k < lst.size(); ++k) {
            std::string p = path + "." + key + "[" + std::to_string(k) + "]";
            if (!lst[k].is_string()) throw validation_error(p + ": expected a string id");
            auto it = idx.at.find(lst[k].get<std::string>());
            if (it == idx.at.end() || it->second.first != dim)
                throw validation_error(p + ": not a " + std::to_string(dim) + "-simplex id");
            out.push_back(it->second.second);
        }
        return out;
    };
    std::optional<std::vector<int>> lean;
    if (j.contains("lean")) lean = ids_of("lean", 2);
    auto thin = ids_of("thin", 2);
    if (lean)
        for (int t : thin)
            if (std::find(lean->begin(), lean->end(), t) == lean->end()) lean->push_back(t);
    return decorate(X, ids_of("marked", 1), thin, lean);
}

inline json map_images_json(const SSetMap& f) {
    auto dids = simplex_ids(*f.dom);
    auto cids = simplex_ids(*f.cod);
    json im = json::object();
    for (int d = 0; d < static_cast<int>(f.images.size()); ++d)
        for (int i = 0; i < static_cast<int>(f.images[d].size()); ++i) im[dids[d][i]] = simplex_ref(cids, f.images[d][i]);
    return im;
}

inline json map_to_json(const SSetMap& f, const json& domRef, const json& codRef) {
    return json{{"dom", domRef}, {"cod", codRef}, {"images", map_images_json(f)}};
}

inline SSetMap map_from_json(const json& j, SSetPtr dom, SSetPtr cod, const std::string& path = "$") {
    const json& im = detail::field(j, "images", path);
    if (!im.is_object()) throw validation_error(path + ".images: expected an object");
    detail::IdIndex cidx(*cod);
    auto dids = simplex_ids(*dom);
    SSetMap f{dom, cod, {}};
    f.images.resize(dom->names.size());
    for (int d = 0; d < static_cast<int>(dids.size()); ++d)
        for (const auto& id : dids[d]) {
            std::string p = path + ".images." + id;
            if (!im.contains(id)) throw validation_error(p + ": missing");
            Simplex s = cidx.resolve(im.at(id), p);
            if (s.degree() != d) throw validation_error(p + ": image has the wrong dimension");
            f.images[d].push_back(s);
        }
    if (auto e = check_map(f)) throw validation_error(path + ": " + *e);
    return f;
}

inline json read_json_file(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw validation_error(file + ": cannot open");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw validation_error(file + ": " + e.what());
    }
}

inline void write_json_file(const std::string& file, const json& j) {
    std::ofstream out(file);
    if (!out) throw validation_error(file + ": cannot write");
    out << j.dump(2) << "\n";
}

inline MSS read_mss(const std::string& file) { return mss_from_json(read_json_file(file), file); }

}  // namespace mss
