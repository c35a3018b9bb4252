#ifndef DP3_DUALGRAPH_HPP
#define DP3_DUALGRAPH_HPP

#include <optional>
#include <string>
#include <vector>

#include "dp3/blowup.hpp"
#include "dp3/symbol.hpp"

namespace dp3 {

struct GraphError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Weighted dual graph of an effective divisor: one vertex per component
// carrying (self-intersection, coefficient), edges are intersection points
// with their local multiplicity as the box value.  sing marks a component
// whose own singular point survives (1 = node, 2 = cusp).
struct WeightedDualGraph {
    struct Vertex {
        std::string id;
        long long selfint = 0;
        long long weight = 1;
        int sing = 0;
    };
    struct Edge {
        int u = 0, v = 0;
        long long box = 1;
    };
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
    // intersection points carrying three components (never simple normal
    // crossing); filled by the builder
    std::vector<std::string> triple_points;

    int find(const std::string& id) const;
    std::vector<std::vector<int>> components() const;  // vertex index groups
    WeightedDualGraph induced(const std::vector<int>& verts) const;
};

// Builds the dual graph of the weighted divisor at the given tower level.
// Edge multiplicities come from the tower's contact bookkeeping; the sum of
// boxes between two vertices always equals their lattice intersection.
WeightedDualGraph build_dual_graph(const Tower& tower, const Tower::Weighted& divisor,
                                   int level);

// Label-invariant canonical string: equal strings iff the graphs are
// isomorphic respecting (selfint, weight, sing) vertex labels and edge box
// multisets.  Exhaustive backtracking, capped at 32 vertices.
std::string canonical_form(const WeightedDualGraph& g);

// Matches one connected graph against the dual-graph grammar of index-three
// log-terminal points: straight chains A_t(l,m) and one-fork trees D_t(m).
// Returns the atom, or nullopt with `why` set when no template matches.
std::optional<SymbolAtom> classify_component(const WeightedDualGraph& g, std::string* why = nullptr);

// Classifies every connected component; throws GraphError naming the first
// component outside the grammar.
SingSymbol classify_symbol_sum(const WeightedDualGraph& g);

std::string to_dot(const WeightedDualGraph& g);
std::string to_json(const WeightedDualGraph& g);

}  // namespace dp3

#endif
