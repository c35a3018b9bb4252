#include "dp3/dualgraph.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace dp3 {

int WeightedDualGraph::find(const std::string& id) const {
    for (size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i].id == id) return static_cast<int>(i);
    return -1;
}

std::vector<std::vector<int>> WeightedDualGraph::components() const {
    int n = static_cast<int>(vertices.size());
    std::vector<int> comp(n, -1);
    std::vector<std::vector<int>> adj(n);
    for (auto& e : edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    std::vector<std::vector<int>> out;
    for (int v = 0; v < n; ++v) {
        if (comp[v] != -1) continue;
        std::vector<int> stack{v}, group;
        comp[v] = static_cast<int>(out.size());
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            group.push_back(u);
            for (int w : adj[u])
                if (comp[w] == -1) {
                    comp[w] = comp[v];
                    stack.push_back(w);
                }
        }
        std::sort(group.begin(), group.end());
        out.push_back(group);
    }
    return out;
}

WeightedDualGraph WeightedDualGraph::induced(const std::vector<int>& verts) const {
    WeightedDualGraph g;
    std::map<int, int> remap;
    for (int v : verts) {
        remap[v] = static_cast<int>(g.vertices.size());
        g.vertices.push_back(vertices[v]);
    }
    for (auto& e : edges) {
        auto iu = remap.find(e.u), iv = remap.find(e.v);
        if (iu != remap.end() && iv != remap.end())
            g.edges.push_back({iu->second, iv->second, e.box});
    }
    return g;
}

WeightedDualGraph build_dual_graph(const Tower& tower, const Tower::Weighted& divisor,
                                   int level) {
    WeightedDualGraph g;
    std::vector<std::string> ids;
    for (auto& [id, coeff] : divisor.comps) {
        if (coeff <= 0) throw GraphError("component " + id + " has nonpositive coefficient");
        WeightedDualGraph::Vertex v;
        v.id = id;
        v.selfint = intersection(tower.class_at(id, level), tower.class_at(id, level));
        v.weight = coeff;
        if (tower.sing_unresolved(id, level))
            v.sing = tower.kind_of(id) == CurveKind::Nodal ? 1 : 2;
        g.vertices.push_back(v);
        ids.push_back(id);
    }
    std::set<std::string> support(ids.begin(), ids.end());
    for (auto& c : tower.contacts(ids, level)) {
        int u = g.find(c.u), v = g.find(c.v);
        g.edges.push_back({u, v, c.mult});
        if (!c.on_chain.empty() && support.count(c.on_chain) && c.on_chain != c.u &&
            c.on_chain != c.v)
            g.triple_points.push_back(c.u + "/" + c.v + " on " + c.on_chain);
    }
    return g;
}

namespace {

// exact canonical labeling by lexicographically minimal connected ordering
struct Canonicalizer {
    const WeightedDualGraph& g;
    int n;
    std::vector<std::vector<std::pair<int, long long>>> adj;  // vertex -> (other, box)
    std::vector<long long> best;
    bool have_best = false;
    std::vector<int> pos;  // vertex -> position or -1

    explicit Canonicalizer(const WeightedDualGraph& graph)
        : g(graph), n(static_cast<int>(graph.vertices.size())), adj(n), pos(n, -1) {
        for (auto& e : g.edges) {
            adj[e.u].push_back({e.v, e.box});
            adj[e.v].push_back({e.u, e.box});
        }
    }

    std::vector<long long> block_for(int v) const {
        std::vector<std::pair<long long, long long>> back;
        for (auto& [w, box] : adj[v])
            if (pos[w] >= 0) back.push_back({pos[w], box});
        std::sort(back.begin(), back.end());
        std::vector<long long> blk{g.vertices[v].selfint, g.vertices[v].weight,
                                   g.vertices[v].sing, static_cast<long long>(back.size())};
        for (auto& [p, box] : back) {
            blk.push_back(p);
            blk.push_back(box);
        }
        return blk;
    }

    void rec(std::vector<long long>& prefix, int depth) {
        if (have_best) {
            // prune: prefix already worse than best
            size_t limit = std::min(prefix.size(), best.size());
            for (size_t i = 0; i < limit; ++i) {
                if (prefix[i] < best[i]) break;
                if (prefix[i] > best[i]) return;
            }
        }
        if (depth == n) {
            if (!have_best || prefix < best) {
                best = prefix;
                have_best = true;
            }
            return;
        }
        std::vector<std::pair<std::vector<long long>, int>> cands;
        for (int v = 0; v < n; ++v) {
            if (pos[v] >= 0) continue;
            if (depth > 0) {
                bool touching = false;
                for (auto& [w, box] : adj[v])
                    if (pos[w] >= 0) touching = true;
                if (!touching) continue;  // connected graphs only
            }
            cands.push_back({block_for(v), v});
        }
        std::sort(cands.begin(), cands.end());
        // explore every candidate tying for the minimal block
        for (auto& [blk, v] : cands) {
            if (blk != cands.front().first) break;
            size_t mark = prefix.size();
            prefix.insert(prefix.end(), blk.begin(), blk.end());
            pos[v] = depth;
            rec(prefix, depth + 1);
            pos[v] = -1;
            prefix.resize(mark);
        }
    }

    std::string run() {
        if (n == 0) return "empty";
        std::vector<long long> prefix;
        rec(prefix, 0);
        std::ostringstream os;
        os << n << ":";
        for (long long t : best) os << t << ",";
        return os.str();
    }
};

}  // namespace

std::string canonical_form(const WeightedDualGraph& g) {
    if (g.vertices.size() > 32) throw GraphError("canonical_form: more than 32 vertices");
    if (g.vertices.empty()) return "empty";
    std::vector<std::string> parts;
    for (auto& comp : g.components()) {
        WeightedDualGraph sub = g.induced(comp);
        Canonicalizer c(sub);
        parts.push_back(c.run());
    }
    std::sort(parts.begin(), parts.end());
    std::string out;
    for (auto& p : parts) {
        if (!out.empty()) out += "|";
        out += p;
    }
    return out;
}

namespace {

// renders the template graph of an atom; throws SymbolError when the atom
// has no consistent self-intersections
WeightedDualGraph render_atom(const SymbolAtom& atom) {
    WeightedDualGraph g;
    auto add_vertex = [&](long long w) {
        WeightedDualGraph::Vertex v;
        v.id = "t" + std::to_string(g.vertices.size());
        v.weight = w;
        g.vertices.push_back(v);
        return static_cast<int>(g.vertices.size() - 1);
    };
    auto add_edge = [&](int u, int v) { g.edges.push_back({u, v, 1}); };

    if (atom.series == 'A') {
        std::vector<int> chain;
        for (int i = 0; i < atom.t; ++i) {
            long long w = 2;
            if (i == 0) w = atom.l;
            if (i == atom.t - 1) w = atom.m;
            if (atom.t == 1) w = atom.m;
            chain.push_back(add_vertex(w));
            if (i > 0) add_edge(chain[i - 1], chain[i]);
        }
    } else {
        // long arm from the far end to the fork, then two weight-1 leaves
        std::vector<int> arm;
        for (int i = 0; i < atom.t - 2; ++i) {
            arm.push_back(add_vertex(i == 0 ? atom.m : 2));
            if (i > 0) add_edge(arm[i - 1], arm[i]);
        }
        int fork = arm.back();
        int leaf1 = add_vertex(1);
        int leaf2 = add_vertex(1);
        add_edge(fork, leaf1);
        add_edge(fork, leaf2);
    }
    // solve self-intersections from the local equation c(3-w) = 6 - sum of
    // neighbor weights
    std::vector<long long> nbrw(g.vertices.size(), 0);
    for (auto& e : g.edges) {
        nbrw[e.u] += g.vertices[e.v].weight;
        nbrw[e.v] += g.vertices[e.u].weight;
    }
    for (size_t i = 0; i < g.vertices.size(); ++i) {
        long long w = g.vertices[i].weight;
        long long num = 6 - nbrw[i];
        long long den = 3 - w;
        if (den <= 0 || num <= 0 || num % den != 0)
            throw SymbolError("atom " + atom.str() + " has no valid dual graph");
        long long c = num / den;
        if (c < 2) throw SymbolError("atom " + atom.str() + " has no valid dual graph");
        g.vertices[i].selfint = -c;
    }
    return g;
}

}  // namespace

std::optional<SymbolAtom> classify_component(const WeightedDualGraph& g, std::string* why) {
    auto reject = [&](const std::string& reason) -> std::optional<SymbolAtom> {
        if (why) *why = reason;
        return std::nullopt;
    };
    int n = static_cast<int>(g.vertices.size());
    if (n == 0) return reject("empty component");
    for (auto& v : g.vertices) {
        if (v.weight != 1 && v.weight != 2) return reject("weight outside {1,2} on " + v.id);
        if (v.sing != 0) return reject("singular component " + v.id);
    }
    std::set<std::pair<int, int>> seen;
    for (auto& e : g.edges) {
        if (e.box != 1) return reject("tangential edge (box > 1)");
        if (e.u == e.v) return reject("self-contact on " + g.vertices[e.u].id);
        auto key = std::minmax(e.u, e.v);
        if (!seen.insert(key).second) return reject("parallel edges");
    }
    if (static_cast<int>(g.edges.size()) != n - 1) return reject("not a tree");
    std::vector<int> degree(n, 0);
    std::vector<long long> nbrw(n, 0);
    for (auto& e : g.edges) {
        degree[e.u]++;
        degree[e.v]++;
        nbrw[e.u] += g.vertices[e.v].weight;
        nbrw[e.v] += g.vertices[e.u].weight;
    }
    int forks = 0, fork = -1;
    for (int v = 0; v < n; ++v) {
        if (degree[v] > 3) return reject("vertex of degree > 3");
        if (degree[v] == 3) {
            ++forks;
            fork = v;
        }
        long long c = -g.vertices[v].selfint;
        long long w = g.vertices[v].weight;
        if (c < 2) return reject("self-intersection above -2 on " + g.vertices[v].id);
        if (c * (3 - w) != 6 - nbrw[v])
            return reject("local degree equation fails at " + g.vertices[v].id);
    }
    if (forks > 1) return reject("more than one fork");

    SymbolAtom atom;
    if (forks == 0) {
        if (n == 1) {
            atom = SymbolAtom::a(1, static_cast<int>(g.vertices[0].weight),
                                 static_cast<int>(g.vertices[0].weight));
        } else {
            std::vector<int> ends;
            for (int v = 0; v < n; ++v)
                if (degree[v] == 1) ends.push_back(v);
            if (ends.size() != 2) return reject("chain without two ends");
            atom = SymbolAtom::a(n, static_cast<int>(g.vertices[ends[0]].weight),
                                 static_cast<int>(g.vertices[ends[1]].weight));
        }
    } else {
        if (n < 4) return reject("fork in a graph with fewer than 4 vertices");
        // walk the three arms from the fork
        std::vector<std::vector<int>> adj(n);
        for (auto& e : g.edges) {
            adj[e.u].push_back(e.v);
            adj[e.v].push_back(e.u);
        }
        std::vector<std::vector<int>> arms;
        for (int start : adj[fork]) {
            std::vector<int> arm{start};
            int prev = fork, cur = start;
            while (degree[cur] == 2) {
                int next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
                prev = cur;
                cur = next;
                arm.push_back(cur);
            }
            if (degree[cur] == 3) return reject("arm ends in another fork");
            arms.push_back(arm);
        }
        auto is_short_leaf = [&](const std::vector<int>& arm) {
            return arm.size() == 1 && g.vertices[arm[0]].weight == 1 &&
                   g.vertices[arm[0]].selfint == -2;
        };
        // two of the arms must be single (-2,1) leaves; the remaining arm's
        // far end carries the symbol weight
        std::vector<int> leaves, rest;
        for (int i = 0; i < 3; ++i)
            (is_short_leaf(arms[i]) ? leaves : rest).push_back(i);
        if (leaves.size() < 2) return reject("fork without two (-2,1) leaves");
        int long_arm = rest.empty() ? leaves.back() : rest.front();
        if (rest.size() > 1) return reject("fork with two long arms");
        int m = static_cast<int>(g.vertices[arms[long_arm].back()].weight);
        atom = SymbolAtom::d(n, m);
    }
    // confirm against the rendered table template
    try {
        if (canonical_form(g) != canonical_form(render_atom(atom)))
            return reject("graph differs from the " + atom.str() + " template");
    } catch (const SymbolError& e) {
        return reject(e.what());
    }
    return atom;
}

SingSymbol classify_symbol_sum(const WeightedDualGraph& g) {
    SingSymbol symbol;
    for (auto& comp : g.components()) {
        std::string why;
        auto atom = classify_component(g.induced(comp), &why);
        if (!atom) throw GraphError("component outside the symbol grammar: " + why);
        symbol.add(*atom);
    }
    return symbol;
}

std::string to_dot(const WeightedDualGraph& g) {
    std::ostringstream os;
    os << "graph dual {\n";
    for (size_t i = 0; i < g.vertices.size(); ++i) {
        auto& v = g.vertices[i];
        os << "  v" << i << " [label=\"" << v.id << "\\n(" << v.selfint << ", " << v.weight
           << ")";
        if (v.sing == 1) os << " nodal";
        if (v.sing == 2) os << " cuspidal";
        os << "\"];\n";
    }
    for (auto& e : g.edges) {
        os << "  v" << e.u << " -- v" << e.v;
        if (e.box > 1) os << " [label=\"" << e.box << "\"]";
        os << ";\n";
    }
    os << "}\n";
    return os.str();
}

std::string to_json(const WeightedDualGraph& g) {
    nlohmann::ordered_json j;
    j["vertices"] = nlohmann::ordered_json::array();
    for (auto& v : g.vertices) {
        nlohmann::ordered_json jv;
        jv["id"] = v.id;
        jv["selfint"] = v.selfint;
        jv["weight"] = v.weight;
        if (v.sing) jv["sing"] = v.sing == 1 ? "nodal" : "cuspidal";
        j["vertices"].push_back(jv);
    }
    j["edges"] = nlohmann::ordered_json::array();
    for (auto& e : g.edges) {
        nlohmann::ordered_json je;
        je["u"] = g.vertices[e.u].id;
        je["v"] = g.vertices[e.v].id;
        je["box"] = e.box;
        j["edges"].push_back(je);
    }
    return j.dump(2);
}

}  // namespace dp3
