#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <map>

#include "dp3/catalog.hpp"
#include "dp3/verifier.hpp"

using namespace dp3;

namespace {

const TypeSpec& by_id(const std::vector<TypeSpec>& v, const std::string& id) {
    for (auto& t : v)
        if (normalize_type_id(t.id) == normalize_type_id(id)) return t;
    throw std::runtime_error("missing type " + id);
}

}  // namespace

TEST_CASE("shipped catalog loads with all four families") {
    auto catalog = load_catalog_dir(default_catalog_dir());
    std::map<std::string, int> families;
    for (auto& t : catalog) families[t.family]++;
    CHECK(families.size() == 4);
    auto expanded = expand_all(catalog);
    std::map<std::string, int> counts;
    for (auto& t : expanded) counts[t.family]++;
    CHECK(counts["median"] == 77);
    CHECK(counts["tet-big"] == 45);
    CHECK(counts["tet-nonbig"] == 115);
    CHECK(counts["tet-trivial"] == 63);
    // concrete ids are unique across the whole catalog
    std::map<std::string, int> ids;
    for (auto& t : expanded) ids[t.id]++;
    for (auto& [id, n] : ids) CHECK(n == 1);
}

TEST_CASE("schema violations are reported with context") {
    auto tmp = std::string("/tmp/dp3_bad_catalog.json");
    {
        std::ofstream f(tmp);
        f << "{}";
    }
    CHECK_THROWS_AS(load_catalog_file(tmp), CatalogError);
    {
        std::ofstream f(tmp);
        f << R"x({"family":"median","types":[)x"
          << R"x({"id":"dup","base":{"kind":"P2"},"components":[{"id":"l","class":{"d":1}}],"expectedEM":"A_1(1)"},)x"
          << R"x({"id":"dup","base":{"kind":"P2"},"components":[{"id":"l","class":{"d":1}}],"expectedEM":"A_1(1)"}]})x";
    }
    try {
        load_catalog_file(tmp);
        CHECK(false);
    } catch (const CatalogError& e) {
        CHECK(std::string(e.what()).find("dup") != std::string::npos);
    }
    // malformed symbol expressions are rejected at load
    {
        std::ofstream f(tmp);
        f << R"x({"family":"median","types":[{"id":"t","base":{"kind":"P2"},)x"
          << R"x("components":[{"id":"l","class":{"d":1}}],"expectedEM":"B_2(1)"}]})x";
    }
    CHECK_THROWS_AS(load_catalog_file(tmp), CatalogError);
}

TEST_CASE("parameter expansion follows the printed domains") {
    auto catalog = load_catalog_dir(default_catalog_dir());
    auto& t42 = by_id(catalog, "[4]_2(c,d)");
    CHECK(expand_parameters(t42).size() == 6);
    CHECK(expand_parameters(t42).front().id == "[4]_2(0,0)");
    CHECK(expand_parameters(t42).back().id == "[4]_2(5,1)");

    auto& t145 = by_id(catalog, "[1;4,5]_K(c)");
    CHECK(expand_parameters(t145).size() == 7);

    auto& kb = by_id(catalog, "[3]_{KB}<b>");
    auto kbs = expand_parameters(kb);
    CHECK(kbs.size() == 5);
    CHECK(kbs.front().id == "[3]_{KB}<2>");

    auto& plain = by_id(catalog, "[5]_5");
    CHECK(expand_parameters(plain).size() == 1);
}

TEST_CASE("realization of [6;4,12]_0 matches the lattice data") {
    auto catalog = load_catalog_dir(default_catalog_dir());
    Realization r = realize(by_id(catalog, "[6;4,12]_0"));
    // E_Z = 2 sigma_inf + 2 sigma ~ 4 sigma + 12 l, L_Z = 2 sigma + 12 l
    CHECK(r.E_Z.cls == DivClass::on_fn(6, 4, 12));
    CHECK(r.L_Z == DivClass::on_fn(6, 2, 12));
    CHECK(r.degZ == 12);
    CHECK(intersection(r.L_Z, r.E_Z.cls) == 24);
}

TEST_CASE("realization of [1]_0 and [0;2,0] matches the theorem data") {
    auto catalog = load_catalog_dir(default_catalog_dir());
    Realization r = realize(by_id(catalog, "[1]_0"));
    CHECK(r.L_bottom == DivClass::line(8));
    CHECK(r.degX == 4);
    CHECK(r.degZ == 0);

    Realization r2 = realize(by_id(catalog, "[0;2,0]"));
    CHECK(r2.degX == 0);
    CHECK(r2.degZ == 6);
    CHECK(r2.E_bottom.cls == DivClass::on_fn(0, 2, 0));
}

TEST_CASE("expected symbols evaluate over their full domains") {
    auto catalog = load_catalog_dir(default_catalog_dir());
    for (auto& t : expand_all(catalog)) {
        auto symbol = expected_symbol(t);
        CHECK(!symbol.empty());
    }
    auto& t42 = by_id(catalog, "[4]_2(c,d)");
    auto concrete = expand_parameters(t42);
    CHECK(expected_symbol(concrete[0]).str() == "A2(2,2)");   // (0,0)
    CHECK(expected_symbol(concrete[3]).str() == "A5(2,2)");   // (3,1)
    auto& kb = by_id(catalog, "[3]_{KB}<b>");
    CHECK(expected_symbol(expand_parameters(kb)[2]).str() == "D6(1)");  // b = 4
}

TEST_CASE("transform components stay consistent with their classes") {
    // the weighted class equals the sum of component classes on every level
    auto catalog = load_catalog_dir(default_catalog_dir());
    int checked = 0;
    for (auto& t : expand_all(catalog)) {
        if (checked >= 40) break;
        ++checked;
        Realization r = realize(t);
        DivClass sum_z = r.tower.zero_class();
        for (auto& [id, w] : r.E_Z.comps) sum_z = sum_z + r.tower.class_at(id, 1) * w;
        CHECK(sum_z == r.E_Z.cls);
        DivClass sum_m = r.tower.zero_class();
        for (auto& [id, w] : r.E_M.comps) sum_m = sum_m + r.tower.class_at(id, 2) * w;
        CHECK(sum_m == r.E_M.cls);
    }
}

TEST_CASE("type id normalization") {
    CHECK(normalize_type_id("[2]_{1K}") == "2_1K");
    CHECK(normalize_type_id("2_1K") == "2_1K");
    CHECK(normalize_type_id("[3;4,9]_C(3,1)") == "3;4,9_C(3,1)");
    CHECK(normalize_type_id("[3]_{KB}<4>") == "3_KB<4>");
}
