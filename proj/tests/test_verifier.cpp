#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>

#include "dp3/verifier.hpp"
#include "perturb.hpp"

using namespace dp3;

namespace {

TypeSpec concrete(const std::string& id) {
    static auto expanded = expand_all(load_catalog_dir(default_catalog_dir()));
    for (auto& t : expanded)
        if (normalize_type_id(t.id) == normalize_type_id(id)) return t;
    throw std::runtime_error("missing " + id);
}

bool has_failed(const Report& r, const std::string& check_id) {
    for (auto& c : r.checks)
        if (c.id == check_id && !c.pass) return true;
    return false;
}

}  // namespace

TEST_CASE("axioms pass on representative types") {
    for (auto id : {"[4]_0", "[3]_{NA}", "[2]_{1K}", "[0;2,0]", "[3;4,9]_B"}) {
        Report r = verify_type(concrete(id));
        CHECK(r.pass());
        CHECK(r.computed_em == r.expected_em);
    }
}

TEST_CASE("nef figures from the classification") {
    // [4]_0: K_Z+L_Z = 2l, (K_Z+L_Z . L_Z) = 10 > 0
    Realization r = realize(concrete("[4]_0"));
    DivClass kl = canonical_base(r.spec.base) + r.L_bottom;
    CHECK(kl == DivClass::line(2));
    CHECK(intersection(kl, r.L_bottom) == 10);

    // [3]_{NA}: 2K_X+L_X = 0 nef, (K_X+L_X . L_X) = 18 > 2*8
    Realization r2 = realize(concrete("[3]_{NA}"));
    CHECK(canonical_base(r2.spec.base) * 2 + r2.L_bottom == DivClass::line(0));
    CHECK(intersection(canonical_base(r2.spec.base) + r2.L_bottom, r2.L_bottom) == 18);
    CHECK(r2.degX == 8);
}

TEST_CASE("a corrupted degree breaks orthogonality exactly as expected") {
    // [4]_0 with deg Delta_Z = 9 instead of 10: (L_M . C^M) becomes 1
    TypeSpec t = concrete("[4]_0");
    t.clustersZ[0].count = "9";
    Report r = verify_type(t);
    CHECK(!r.pass());
    CHECK(has_failed(r, "C4-orth"));
    Realization real = realize(t);
    CHECK(intersection(real.L_M, real.tower.class_at("C", 2)) == 1);
}

TEST_CASE("local dual graphs over cluster points match the local lemmas") {
    // [2]_{1K}: the chain over the (4,2)-point forms D4(2) with the line
    Realization r = realize(concrete("[2]_{1K}"));
    WeightedDualGraph g = stage_graph(r, 2);
    CHECK(g.vertices.size() == 4);
    CHECK(classify_symbol_sum(g).str() == "D4(2)");

    // [2]_{2A}: both lines and the exceptional curve separate
    Realization r2 = realize(concrete("[2]_{2A}"));
    WeightedDualGraph g2 = stage_graph(r2, 2);
    CHECK(g2.edges.empty());
    CHECK(g2.vertices.size() == 3);

    // [1;2,2]_{0B}: E_Z locally l(2) - G(1) plus separated strict transform
    Realization r3 = realize(concrete("[1;2,2]_{0B}"));
    CHECK(classify_symbol_sum(stage_graph(r3, 2)).str() == "A2(1,2)+A1(1)");
}

TEST_CASE("fault injection flips checks across all four classes") {
    using testing::PerturbKind;
    auto expanded = expand_all(load_catalog_dir(default_catalog_dir()));
    for (PerturbKind kind :
         {PerturbKind::Coefficient, PerturbKind::ChainLength, PerturbKind::BranchBit,
          PerturbKind::ResidualMult}) {
        int applied = 0, flipped = 0;
        for (auto& t : expanded) {
            if (applied >= 25) break;
            auto mutated = testing::perturb(t, kind);
            if (!mutated) continue;
            ++applied;
            Report r = verify_type(*mutated);
            if (!r.pass()) ++flipped;
        }
        INFO(testing::perturb_name(kind));
        CHECK(applied >= 20);
        CHECK(flipped == applied);
    }
}

TEST_CASE("distinctness check sees through relabeling but separates parts") {
    std::vector<TypeSpec> trivial;
    for (auto& t : expand_all(load_catalog_dir(default_catalog_dir())))
        if (t.family == "tet-trivial") trivial.push_back(t);
    auto checks = verify_distinctness(trivial);
    REQUIRE(checks.size() == 2);
    CHECK(checks[0].pass);
    CHECK(checks[1].pass);

    // nodal vs cuspidal single-vertex graphs differ by the marker alone
    auto na = canonical_form(stage_graph(realize(concrete("[3]_{NA}")), 1));
    auto ca = canonical_form(stage_graph(realize(concrete("[3]_{CA}")), 1));
    CHECK(na != ca);
    // weights 1 vs 2 on the untouched line separate the 2G rows
    auto g1 = canonical_form(stage_graph(realize(concrete("[3]_{2G1}")), 1));
    auto g2 = canonical_form(stage_graph(realize(concrete("[3]_{2G2}")), 1));
    CHECK(g1 != g2);
}

TEST_CASE("family-conditional checks fire exactly where they apply") {
    auto has = [](const Report& r, const std::string& cid) {
        for (auto& c : r.checks)
            if (c.id == cid) return true;
        return false;
    };
    struct Row {
        const char* type;
        const char* check;
        bool want;
    };
    // (F6)/(F7) only when K_Z+L_Z is non-big; (B6)-(B8) on the fibration
    // family; (B9)-(B11) by the shape of an anticanonical E_X on P^2
    const Row rows[] = {
        {"[3]_{KA}", "B9", true},      {"[3]_{KB}<3>", "B9", true},
        {"[3]_{AA}", "B9", true},      {"[3]_{3B}", "B10", true},
        {"[3]_{2D}(1,2)", "B11", true}, {"[3]_{2C3}<4>", "B11", true},
        {"[3]_{NA}", "B9", false},     {"[3]_{NA}", "B11", false},
        {"[1;2,2]_U", "B7", true},     {"[0;2,0]", "B7", true},
        {"[3;2,0]", "B8", true},       {"[3;2,0]", "B6", true},
        {"[6;2,0]", "B8", true},       {"[2]_{1K}", "B6", false},
        {"[3;4,9]_C(1,2)", "F6", true}, {"[6;4,12]_0", "F7", true},
        {"[1;4,4]", "F6", true},
        {"[2;3,6]_1(1,2)", "F6", false},  // K_Z+L_Z is big here
        {"[3;3,6]", "F6", false},         // and here
        {"[4]_0", "F6", false},
        {"[0;2,2]_1(2,1)", "B-triv-base", true},
        {"[2;2,4]_1", "B-triv-base", true},
    };
    for (auto& row : rows) {
        Report r = verify_type(concrete(row.type));
        INFO(row.type << " " << row.check);
        CHECK(has(r, row.check) == row.want);
        CHECK(r.pass());
    }
}

TEST_CASE("edge totals equal lattice intersection numbers") {
    auto expanded = expand_all(load_catalog_dir(default_catalog_dir()));
    int checked = 0;
    for (auto& t : expanded) {
        if (checked >= 30) break;
        ++checked;
        Realization r = realize(t);
        for (int level : {1, 2}) {
            WeightedDualGraph g = stage_graph(r, level);
            std::map<std::pair<int, int>, long long> boxes;
            for (auto& e : g.edges) boxes[std::minmax(e.u, e.v)] += e.box;
            for (size_t i = 0; i < g.vertices.size(); ++i) {
                for (size_t j = i + 1; j < g.vertices.size(); ++j) {
                    long long expect =
                        intersection(r.tower.class_at(g.vertices[i].id, level),
                                     r.tower.class_at(g.vertices[j].id, level));
                    long long got = boxes.count({static_cast<int>(i), static_cast<int>(j)})
                                        ? boxes[{static_cast<int>(i), static_cast<int>(j)}]
                                        : 0;
                    CHECK(got == expect);
                }
            }
        }
    }
}

TEST_CASE("reports serialize with stable keys") {
    Report r = verify_type(concrete("[5]_K"));
    std::string json = report_json(r);
    CHECK(json.find("\"type\": \"[5]_K\"") != std::string::npos);
    CHECK(json.find("\"computedEM\": \"D4(2)+A1(1)\"") != std::string::npos);
    CHECK(json.find("\"cite\"") != std::string::npos);
    // key order is fixed: type before family before pass
    CHECK(json.find("\"type\"") < json.find("\"family\""));
    CHECK(json.find("\"family\"") < json.find("\"pass\""));
}

TEST_CASE("run_all is deterministic and ordered by id") {
    auto expanded = expand_all(load_catalog_dir(default_catalog_dir()));
    std::vector<TypeSpec> sample(expanded.begin(), expanded.begin() + 12);
    Summary a = run_all(sample);
    Summary b = run_all(sample);
    REQUIRE(a.reports.size() == b.reports.size());
    for (size_t i = 0; i < a.reports.size(); ++i)
        CHECK(a.reports[i].type_id == b.reports[i].type_id);
    for (size_t i = 1; i < a.reports.size(); ++i)
        CHECK(a.reports[i - 1].type_id < a.reports[i].type_id);
    CHECK(run_all({}).reports.empty());
}
