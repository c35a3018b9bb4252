#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "dp3/catalog.hpp"
#include "dp3/dualgraph.hpp"
#include "dp3/verifier.hpp"

using namespace dp3;

namespace {

struct Options {
    std::string catalog_dir;
    std::string family;
    std::string type_id;
    std::vector<std::string> params;  // "c=3" "d=1" or "c=3,d=1"
    std::string stage = "M";
    std::string format;
    std::string out_path;
    bool expanded = false;
};

Env parse_params(const std::vector<std::string>& items) {
    Env env;
    for (auto& item : items) {
        size_t start = 0;
        while (start < item.size()) {
            size_t end = item.find(',', start);
            if (end == std::string::npos) end = item.size();
            std::string pair = item.substr(start, end - start);
            auto eq = pair.find('=');
            if (eq == std::string::npos)
                throw CatalogError("bad --params entry '" + pair + "' (expected name=value)");
            env[pair.substr(0, eq)] = std::stoll(pair.substr(eq + 1));
            start = end + 1;
        }
    }
    return env;
}

std::vector<TypeSpec> load(const Options& opt) {
    std::string dir = opt.catalog_dir.empty() ? default_catalog_dir() : opt.catalog_dir;
    auto catalog = load_catalog_dir(dir);
    if (!opt.family.empty()) {
        std::erase_if(catalog, [&](const TypeSpec& t) { return t.family != opt.family; });
        if (catalog.empty()) throw CatalogError("unknown family " + opt.family);
    }
    return catalog;
}

std::vector<TypeSpec> select_concrete(const Options& opt) {
    auto catalog = load(opt);
    Env params = parse_params(opt.params);
    std::vector<TypeSpec> expanded;
    for (auto& entry : catalog) {
        // a family id like "[4]_2(c,d)" also answers to the bare "[4]_2"
        std::string full = normalize_type_id(entry.id);
        std::string bare = full.substr(0, full.find_first_of("(<"));
        for (auto& t : expand_parameters(entry)) {
            if (!opt.type_id.empty()) {
                std::string want = normalize_type_id(opt.type_id);
                bool id_match = normalize_type_id(t.id) == want;
                bool family_match = !params.empty() && (bare == want || full == want);
                if (!id_match && !family_match) continue;
            }
            bool params_match = true;
            for (auto& [name, value] : params) {
                auto it = t.bound.find(name);
                if (it == t.bound.end() || it->second != value) params_match = false;
            }
            if (!params_match) continue;
            expanded.push_back(t);
        }
    }
    if (!opt.type_id.empty() && expanded.empty())
        throw CatalogError("unknown type id " + opt.type_id);
    return expanded;
}

void write_out(const Options& opt, const std::string& text) {
    if (opt.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(opt.out_path);
    if (!f) throw std::runtime_error("cannot write " + opt.out_path);
    f << text;
}

int cmd_list(const Options& opt) {
    auto catalog = load(opt);
    if (opt.expanded) {
        for (auto& t : expand_all(catalog)) std::cout << t.id << "\n";
    } else {
        for (auto& t : catalog) std::cout << t.id << "\n";
    }
    return 0;
}

int cmd_count(const Options& opt) {
    auto expanded = expand_all(load(opt));
    std::map<std::string, int> counts;
    for (auto& t : expanded) counts[t.family]++;
    const char* order[] = {"median", "tet-big", "tet-nonbig", "tet-trivial"};
    bool first = true;
    for (auto fam : order) {
        if (!counts.count(fam)) continue;
        std::cout << (first ? "" : ", ") << fam << ": " << counts[fam];
        first = false;
    }
    std::cout << "\n";
    return 0;
}

int cmd_verify(const Options& opt) {
    auto chosen = select_concrete(opt);
    Summary summary = run_all(chosen);
    if (opt.format == "json") {
        std::string out = "[";
        for (size_t i = 0; i < summary.reports.size(); ++i)
            out += (i ? ",\n" : "\n") + report_json(summary.reports[i]);
        out += "\n]\n";
        write_out(opt, out);
    } else {
        write_out(opt, summary_text(summary));
    }
    return summary.all_pass() ? 0 : 1;
}

int cmd_show(const Options& opt) {
    if (opt.type_id.empty()) throw CatalogError("show needs --type");
    auto chosen = select_concrete(opt);
    if (chosen.size() != 1)
        throw CatalogError("show needs a concrete type id (got " +
                           std::to_string(chosen.size()) + " matches)");
    Realization r = realize(chosen.front());
    int level;
    if (opt.stage == "X") {
        if (r.spec.is_median()) throw CatalogError("median types have no stage X");
        level = 0;
    } else if (opt.stage == "Z") {
        level = 1;
    } else if (opt.stage == "M") {
        level = 2;
    } else {
        throw CatalogError("stage must be X, Z or M");
    }
    WeightedDualGraph g =
        level == 0 ? build_dual_graph(r.tower, r.E_bottom, 0) : stage_graph(r, level);
    write_out(opt, opt.format == "json" ? to_json(g) + "\n" : to_dot(g));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact verifier for the classification of log del Pezzo surfaces of index three"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* cmd, bool with_params = true) {
        cmd->add_option("--catalog", opt.catalog_dir, "catalog directory");
        cmd->add_option("--family", opt.family,
                        "median | tet-big | tet-nonbig | tet-trivial");
        if (with_params) {
            cmd->add_option("--type", opt.type_id, "type id (bracket or ascii form)");
            cmd->add_option("--params", opt.params,
                            "parameter values, e.g. --params c=3 d=1");
        }
    };

    auto* list = app.add_subcommand("list", "list type ids");
    add_common(list, false);
    list->add_flag("--expanded", opt.expanded, "expand parameterized families");

    auto* count = app.add_subcommand("count", "per-family expansion counts");
    add_common(count, false);

    auto* verify = app.add_subcommand("verify", "run all checks");
    add_common(verify);
    verify->add_option("--format", opt.format, "text | json");
    verify->add_option("--out", opt.out_path, "output path");

    auto* show = app.add_subcommand("show", "emit a stage dual graph");
    add_common(show);
    show->add_option("--stage", opt.stage, "X | Z | M")->required();
    show->add_option("--format", opt.format, "dot | json");
    show->add_option("--out", opt.out_path, "output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (list->parsed()) return cmd_list(opt);
        if (count->parsed()) return cmd_count(opt);
        if (verify->parsed()) return cmd_verify(opt);
        if (show->parsed()) return cmd_show(opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
