#include "table2.hpp"

namespace dp3::testing {

namespace {

using G = WeightedDualGraph;

int add(G& g, long long selfint, long long weight, int sing = 0) {
    g.vertices.push_back({"t" + std::to_string(g.vertices.size()), selfint, weight, sing});
    return static_cast<int>(g.vertices.size() - 1);
}

void edge(G& g, int u, int v, long long box = 1) { g.edges.push_back({u, v, box}); }

G chain(const std::vector<std::pair<long long, long long>>& labels) {
    G g;
    for (size_t i = 0; i < labels.size(); ++i) {
        add(g, labels[i].first, labels[i].second);
        if (i > 0) edge(g, static_cast<int>(i - 1), static_cast<int>(i));
    }
    return g;
}

G cycle(int n) {
    G g;
    for (int i = 0; i < n; ++i) add(g, -1, 1);
    for (int i = 0; i < n; ++i) edge(g, i, (i + 1) % n);
    return g;
}

// head -- Gamma_b(-1,2) -- Gamma_{b-1..2}(-2,2) -- tail, with Gamma_1 hanging
// off Gamma_2 (off Gamma_b when b = 2): the chain over a (C,l)-contact point
G contact_chain(long long b, std::pair<long long, long long> head,
                std::pair<long long, long long> tail,
                std::pair<long long, long long> pendant) {
    G g;
    int h = add(g, head.first, head.second);
    int prev = add(g, -1, 2);  // Gamma_b
    edge(g, h, prev);
    for (long long j = b - 1; j >= 2; --j) {
        int v = add(g, -2, 2);
        edge(g, prev, v);
        prev = v;
    }
    int t = add(g, tail.first, tail.second);
    edge(g, prev, t);
    int p = add(g, pendant.first, pendant.second);
    edge(g, prev, p);
    return g;
}

}  // namespace

std::string table2_key(const std::string& family_key, long long b) {
    std::string key = family_key;
    auto pos = key.find("<b>");
    if (pos != std::string::npos) key.replace(pos, 3, "<" + std::to_string(b) + ">");
    return key;
}

std::map<std::string, std::function<G(long long)>> table2_rows() {
    std::map<std::string, std::function<G(long long)>> rows;

    rows["[3]_{NA}"] = [](long long) {
        G g;
        add(g, 1, 1, 1);
        return g;
    };
    rows["[3]_{NB}"] = [](long long) {
        G g;
        add(g, -1, 1);
        add(g, -1, 1);
        edge(g, 0, 1);
        edge(g, 0, 1);
        return g;
    };
    rows["[3]_{CA}"] = [](long long) {
        G g;
        add(g, 1, 1, 2);
        return g;
    };
    rows["[3]_{CB}"] = [](long long) {
        G g;
        add(g, -1, 1);
        add(g, -1, 1);
        edge(g, 0, 1, 2);
        return g;
    };
    rows["[3]_{AA}"] = [](long long) { return cycle(4); };
    rows["[3]_{AB}"] = [](long long) { return cycle(3); };
    rows["[3]_{KA}"] = [](long long) {
        G g;
        int c = add(g, -1, 2);
        edge(g, c, add(g, -1, 1));
        edge(g, c, add(g, -1, 1));
        edge(g, c, add(g, -2, 1));
        return g;
    };
    rows["[3]_{KB}<b>"] = [](long long b) {
        return contact_chain(b, {-2, 1}, {-2, 1}, {-2, 1});
    };
    rows["[3]_{KC}<b>"] = [](long long b) {
        return contact_chain(b, {-1, 1}, {-2, 1}, {-2, 1});
    };
    rows["[3]_{2A}<b>"] = [](long long b) {
        // l2 - Gamma_{P,b} - ... - Gamma_{P,1} - l1 - Gamma_{P1,2} - Gamma_{P1,1}
        std::vector<std::pair<long long, long long>> labels{{-2, 1}, {-1, 2}};
        for (long long j = b - 1; j >= 1; --j) labels.push_back({-2, 2});
        labels.push_back({-2, 2});
        labels.push_back({-1, 2});
        labels.push_back({-2, 1});
        return chain(labels);
    };
    rows["[3]_{2B1}<b>"] = [](long long b) {
        std::vector<std::pair<long long, long long>> labels{{-2, 1}, {-1, 2}};
        for (long long j = b - 1; j >= 1; --j) labels.push_back({-2, 2});
        labels.push_back({-1, 2});
        labels.push_back({-1, 1});
        return chain(labels);
    };
    rows["[3]_{2B2}<1>"] = [](long long) {
        return chain({{-1, 1}, {-1, 2}, {-1, 2}, {-1, 1}});
    };
    rows["[3]_{2B2}<2>"] = [](long long) {
        return chain({{-1, 1}, {-1, 2}, {-2, 2}, {-1, 2}, {-1, 1}});
    };
    rows["[3]_{2C1}<b>"] = [](long long b) {
        std::vector<std::pair<long long, long long>> labels{{-2, 1}, {-1, 2}};
        for (long long j = b - 1; j >= 1; --j) labels.push_back({-2, 2});
        labels.push_back({0, 2});
        return chain(labels);
    };
    rows["[3]_{2C2}<1>"] = [](long long) { return chain({{-1, 1}, {-1, 2}, {0, 2}}); };
    rows["[3]_{2C2}<2>"] = [](long long) {
        return chain({{-1, 1}, {-1, 2}, {-2, 2}, {0, 2}});
    };
    rows["[3]_{2C3}<b>"] = [](long long b) {
        // l1(0,2) - Gamma_1 ... Gamma_{b-2}, the last carrying l2 and Gamma_{b-1}
        G g;
        int prev = add(g, 0, 2);
        for (long long j = 1; j <= b - 2; ++j) {
            int v = add(g, -2, 2);
            edge(g, prev, v);
            prev = v;
        }
        edge(g, prev, add(g, -2, 1));
        edge(g, prev, add(g, -2, 1));
        return g;
    };
    rows["[3]_{2D}"] = [](long long) {
        return chain({{-2, 1}, {-1, 2}, {-1, 2}, {-2, 1}});
    };
    rows["[3]_{2E}"] = [](long long) { return chain({{-2, 1}, {0, 2}, {-2, 1}}); };
    rows["[3]_{2F1}"] = [](long long) { return chain({{-1, 1}, {0, 2}, {-1, 1}}); };
    rows["[3]_{2F2}"] = [](long long) { return chain({{-2, 1}, {0, 2}, {-1, 1}}); };
    rows["[3]_{2G1}"] = [](long long) { return chain({{-1, 1}, {1, 2}}); };
    rows["[3]_{2G2}"] = [](long long) { return chain({{-2, 1}, {1, 2}}); };
    rows["[3]_{3A}"] = [](long long) { return cycle(5); };
    rows["[3]_{3B}"] = [](long long) { return cycle(6); };

    return rows;
}

}  // namespace dp3::testing
