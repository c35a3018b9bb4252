#include "dp3/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <set>

#include "json.hpp"

namespace dp3 {

using nlohmann::json;

Env TypeSpec::env() const {
    Env e = bound;
    if (!base.is_p2()) e["n"] = base.n;
    return with_s(std::move(e));
}

std::string TypeSpec::median_part() const {
    auto paren = id.find('(');
    if (paren == std::string::npos) return id;
    return id.substr(0, paren);
}

std::string normalize_type_id(const std::string& id) {
    std::string out;
    for (size_t i = 0; i < id.size(); ++i) {
        unsigned char c = id[i];
        if (c == '[' || c == ']' || c == '{' || c == '}' || std::isspace(c)) continue;
        out.push_back(static_cast<char>(c));
    }
    return out;
}

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw CatalogError(where + ": " + what);
}

std::string expr_field(const json& j, const std::string& key, const std::string& dflt,
                       const std::string& where) {
    if (!j.contains(key)) return dflt;
    const auto& v = j.at(key);
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_string()) return v.get<std::string>();
    fail(where, "field '" + key + "' must be an integer or expression string");
}

BaseSurface parse_base(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("kind")) fail(where, "base needs a 'kind'");
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "P2") return BaseSurface::p2();
    if (kind == "F") {
        if (!j.contains("n")) fail(where, "Hirzebruch base needs 'n'");
        return BaseSurface::fn(j.at("n").get<int>());
    }
    fail(where, "unknown base kind '" + kind + "'");
}

CurveKind parse_kind(const json& j, const std::string& where) {
    if (!j.contains("kind")) return CurveKind::Smooth;
    std::string k = j.at("kind").get<std::string>();
    if (k == "smooth") return CurveKind::Smooth;
    if (k == "nodal") return CurveKind::Nodal;
    if (k == "cuspidal") return CurveKind::Cuspidal;
    fail(where, "unknown curve kind '" + k + "'");
}

std::vector<ClusterTemplate> parse_clusters(const json& j, int stage, const std::string& where) {
    std::vector<ClusterTemplate> out;
    if (!j.is_array()) fail(where, "cluster list must be an array");
    for (size_t i = 0; i < j.size(); ++i) {
        const auto& cj = j[i];
        std::string cw = where + "[" + std::to_string(i) + "]";
        ClusterTemplate c;
        c.stage = stage;
        if (cj.contains("id")) c.id = cj.at("id").get<std::string>();
        if (cj.contains("locus"))
            for (auto& l : cj.at("locus")) c.locus.push_back(l.get<std::string>());
        if (cj.contains("avoid"))
            for (auto& l : cj.at("avoid")) c.avoid.push_back(l.get<std::string>());
        c.len = expr_field(cj, "len", "1", cw);
        c.count = expr_field(cj, "count", "1", cw);
        if (cj.contains("branches"))
            for (auto& [key, val] : cj.at("branches").items())
                c.branches[key] = val.is_number_integer() ? std::to_string(val.get<long long>())
                                                          : val.get<std::string>();
        for (auto& [key, val] : cj.items()) {
            if (key != "id" && key != "locus" && key != "avoid" && key != "len" &&
                key != "count" && key != "branches")
                fail(cw, "unknown cluster field '" + key + "'");
        }
        out.push_back(std::move(c));
    }
    return out;
}

}  // namespace

std::vector<TypeSpec> load_catalog_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CatalogError("cannot open catalog file " + path);
    json root;
    try {
        in >> root;
    } catch (const json::exception& e) {
        throw CatalogError(path + ": " + e.what());
    }
    if (!root.is_object() || !root.contains("family") || !root.contains("types"))
        fail(path, "catalog file needs 'family' and 'types'");
    std::string family = root.at("family").get<std::string>();
    if (family != "median" && family != "tet-big" && family != "tet-nonbig" &&
        family != "tet-trivial")
        fail(path, "unknown family '" + family + "'");

    std::vector<TypeSpec> out;
    std::set<std::string> ids;
    for (size_t i = 0; i < root.at("types").size(); ++i) {
        const auto& tj = root.at("types")[i];
        std::string where = path + " types[" + std::to_string(i) + "]";
        TypeSpec t;
        t.family = family;
        if (!tj.contains("id")) fail(where, "missing id");
        t.id = tj.at("id").get<std::string>();
        where = path + " type " + t.id;
        if (!ids.insert(t.id).second) fail(where, "duplicate id " + t.id);
        t.base = parse_base(tj.at("base"), where);
        if (!tj.contains("components") || tj.at("components").empty())
            fail(where, "needs a nonempty component list");
        for (auto& compj : tj.at("components")) {
            ComponentSpec c;
            c.id = compj.at("id").get<std::string>();
            const auto& cls = compj.at("class");
            if (t.base.is_p2()) {
                if (!cls.contains("d")) fail(where, "P2 component class needs 'd'");
                c.cls = DivClass::line(cls.at("d").get<long long>());
            } else {
                if (!cls.contains("a") || !cls.contains("b"))
                    fail(where, "F_n component class needs 'a' and 'b'");
                c.cls = DivClass::on_fn(t.base.n, cls.at("a").get<long long>(),
                                        cls.at("b").get<long long>());
            }
            c.kind = parse_kind(compj, where);
            c.coeff = compj.contains("coeff") ? compj.at("coeff").get<long long>() : 1;
            if (c.coeff < 1 || c.coeff > 2) fail(where, "component coefficient must be 1 or 2");
            t.components.push_back(std::move(c));
        }
        if (family == "median" && tj.contains("clustersX") && !tj.at("clustersX").empty())
            fail(where, "median types have no stage-X clusters");
        if (tj.contains("clustersX"))
            t.clustersX = parse_clusters(tj.at("clustersX"), 1, where + ".clustersX");
        if (tj.contains("clustersZ"))
            t.clustersZ = parse_clusters(tj.at("clustersZ"), 2, where + ".clustersZ");
        if (tj.contains("residual")) {
            for (auto& rj : tj.at("residual")) {
                TangencySpec r;
                auto& curves = rj.at("curves");
                if (!curves.is_array() || curves.size() != 2)
                    fail(where, "residual entry needs exactly two curves");
                r.u = curves[0].get<std::string>();
                r.v = curves[1].get<std::string>();
                r.mult = rj.at("mult").get<int>();
                if (rj.contains("at")) r.at = rj.at("at").get<std::string>();
                t.residual.push_back(std::move(r));
            }
        }
        if (tj.contains("params")) {
            ParamSpec p;
            for (auto& nj : tj.at("params").at("names")) p.names.push_back(nj.get<std::string>());
            for (auto& dj : tj.at("params").at("domain")) {
                std::vector<long long> tuple;
                for (auto& x : dj) tuple.push_back(x.get<long long>());
                if (tuple.size() != p.names.size())
                    fail(where, "parameter tuple arity mismatch");
                p.domain.push_back(std::move(tuple));
            }
            if (p.domain.empty()) fail(where, "empty parameter domain");
            t.params = std::move(p);
        }
        if (!tj.contains("expectedEM")) fail(where, "missing expectedEM");
        t.expected_em = tj.at("expectedEM").get<std::string>();
        // malformed symbol expressions surface at load, over the full domain
        try {
            for (auto& c : expand_parameters(t)) eval_symbol(c.expected_em, c.env());
        } catch (const std::exception& e) {
            fail(where, std::string("bad expectedEM: ") + e.what());
        }
        out.push_back(std::move(t));
    }
    return out;
}

std::string default_catalog_dir() {
    if (const char* env = std::getenv("DELPEZZO3_CATALOG")) return env;
#ifdef DP3_DEFAULT_CATALOG_DIR
    return DP3_DEFAULT_CATALOG_DIR;
#else
    return "data/catalog";
#endif
}

std::vector<TypeSpec> load_catalog_dir(const std::string& dir) {
    std::vector<TypeSpec> all;
    for (const char* name : {"median.json", "tet_big.json", "tet_nonbig.json",
                             "tet_trivial.json"}) {
        auto part = load_catalog_file(dir + "/" + name);
        all.insert(all.end(), part.begin(), part.end());
    }
    return all;
}

namespace {

// replaces a parameter name in a type id when it occurs as a standalone token
std::string substitute_id(std::string id, const std::string& name, long long value) {
    std::string out;
    for (size_t i = 0; i < id.size();) {
        bool boundary_left = i == 0 || !std::isalnum(static_cast<unsigned char>(id[i - 1]));
        if (boundary_left && id.compare(i, name.size(), name) == 0) {
            size_t after = i + name.size();
            bool boundary_right =
                after >= id.size() || !std::isalnum(static_cast<unsigned char>(id[after]));
            if (boundary_right) {
                out += std::to_string(value);
                i = after;
                continue;
            }
        }
        out.push_back(id[i++]);
    }
    return out;
}

}  // namespace

std::vector<TypeSpec> expand_parameters(const TypeSpec& t) {
    if (t.concrete()) return {t};
    std::vector<TypeSpec> out;
    for (auto& tuple : t.params->domain) {
        TypeSpec c = t;
        c.params.reset();
        for (size_t i = 0; i < t.params->names.size(); ++i) {
            c.bound[t.params->names[i]] = tuple[i];
            c.id = substitute_id(c.id, t.params->names[i], tuple[i]);
        }
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<TypeSpec> expand_all(const std::vector<TypeSpec>& catalog) {
    std::vector<TypeSpec> out;
    for (auto& t : catalog) {
        auto e = expand_parameters(t);
        out.insert(out.end(), e.begin(), e.end());
    }
    return out;
}

namespace {

// chain-curve references may carry an expression index, e.g. "G:P:b"
std::string resolve_chain_ref(const std::string& id, const Env& env) {
    if (id.rfind("G:", 0) != 0) return id;
    auto sep = id.rfind(':');
    if (sep <= 1) return id;
    long long j = eval_expr(id.substr(sep + 1), env);
    return id.substr(0, sep + 1) + std::to_string(j);
}

std::vector<ClusterSpec> instantiate_clusters(const TypeSpec& t,
                                              const std::vector<ClusterTemplate>& templates,
                                              const Env& env, const char* auto_prefix) {
    std::vector<ClusterSpec> out;
    int auto_counter = 0;
    for (auto& tpl : templates) {
        long long count = eval_expr(tpl.count, env);
        long long len = eval_expr(tpl.len, env);
        if (count < 0 || len < 0)
            throw CatalogError(t.id + ": negative count/len in cluster template");
        if (count == 0 || len == 0) continue;
        if (count > 1 && !tpl.id.empty())
            throw CatalogError(t.id + ": cluster " + tpl.id + " cannot carry both id and count");

        std::string sing_of;
        for (auto& entry : tpl.locus)
            if (entry.rfind("sing:", 0) == 0) sing_of = entry.substr(5);
        if (!sing_of.empty() && len != 1)
            throw CatalogError(t.id + ": cluster at sing:" + sing_of + " must have length 1");

        for (long long copy = 0; copy < count; ++copy) {
            ClusterSpec c;
            c.stage = tpl.stage;
            c.id = !tpl.id.empty() ? tpl.id
                                   : std::string(auto_prefix) + std::to_string(++auto_counter);
            for (auto& entry : tpl.locus) c.locus.push_back(resolve_chain_ref(entry, env));
            for (auto& entry : tpl.avoid) c.avoid.push_back(resolve_chain_ref(entry, env));
            c.chain.resize(len);
            for (auto& raw_entry : tpl.locus) {
                std::string entry = resolve_chain_ref(raw_entry, env);
                if (entry.rfind("sing:", 0) == 0) {
                    c.chain[0].branch[entry.substr(5)] = 2;
                    continue;
                }
                auto it = tpl.branches.find(raw_entry);
                long long prefix;
                if (it != tpl.branches.end()) {
                    prefix = eval_expr(it->second, env);
                } else if (len == 1) {
                    prefix = 1;
                } else {
                    throw CatalogError(t.id + ": cluster " + c.id + " needs explicit branches for " +
                                       entry);
                }
                if (prefix < 0 || prefix > len)
                    throw CatalogError(t.id + ": branch prefix of " + entry + " out of range");
                for (long long j = 0; j < prefix; ++j) c.chain[j].branch[entry] = 1;
            }
            for (auto& [id, expr] : tpl.branches) {
                std::string resolved = resolve_chain_ref(id, env);
                if (std::find(c.locus.begin(), c.locus.end(), resolved) == c.locus.end())
                    throw CatalogError(t.id + ": branches name " + id + " outside the locus");
            }
            out.push_back(std::move(c));
        }
    }
    return out;
}

}  // namespace

Realization realize(const TypeSpec& t) {
    if (!t.concrete()) throw CatalogError(t.id + ": realize needs a concrete type");
    Env env = t.env();

    std::vector<Curve> curves;
    std::vector<std::pair<std::string, long long>> comps;
    for (auto& c : t.components) {
        curves.push_back({c.id, c.cls, c.kind});
        comps.push_back({c.id, c.coeff});
    }

    auto cx = instantiate_clusters(t, t.clustersX, env, "xf");
    auto cz = instantiate_clusters(t, t.clustersZ, env, "zf");
    std::vector<ClusterSpec> clusters = cx;
    clusters.insert(clusters.end(), cz.begin(), cz.end());

    std::vector<Tangency> tangencies;
    for (auto& r : t.residual) tangencies.push_back({r.u, r.v, r.mult, r.at});

    Tower tower(t.base, curves, clusters, tangencies);

    Realization r{t, std::move(tower), {}, {}, {}, DivClass(), DivClass(), DivClass(), 0, 0};
    r.degX = r.tower.stage_degree(1);
    r.degZ = r.tower.stage_degree(2);

    if (t.is_median()) {
        r.E_bottom = r.tower.weighted_from(comps, 1);
        r.E_Z = r.E_bottom;
        r.L_bottom = (canonical_base(t.base) * -3) - r.E_bottom.cls;
        r.L_Z = r.L_bottom;
    } else {
        r.E_bottom = r.tower.weighted_from(comps, 0);
        r.L_bottom = (canonical_base(t.base) * -3) - r.E_bottom.cls;
        r.E_Z = r.tower.transform_with_s(r.E_bottom, 1, 1);
        r.L_Z = r.L_bottom - r.tower.canonical_rel(1) * 2;
    }
    r.E_M = r.tower.transform_with_s(r.E_Z, 2, 2);
    r.L_M = r.L_Z - r.tower.canonical_rel(2) * 1;
    return r;
}

SingSymbol expected_symbol(const TypeSpec& t) {
    if (!t.concrete()) throw CatalogError(t.id + ": expected_symbol needs a concrete type");
    return eval_symbol(t.expected_em, t.env());
}

}  // namespace dp3
