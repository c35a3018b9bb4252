#ifndef DP3_BLOWUP_HPP
#define DP3_BLOWUP_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dp3/lattice.hpp"

namespace dp3 {

struct BlowupError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class CurveKind { Smooth, Nodal, Cuspidal };

// A named curve on the base surface of a tower.
struct Curve {
    std::string id;
    DivClass cls;
    CurveKind kind = CurveKind::Smooth;
};

// One infinitely-near point of a cluster chain.  branch maps a curve id
// (base curve or chain curve "G:<cluster>:<j>") to its multiplicity at the
// point: 0 or 1, with 2 allowed only at the first point of a cluster based
// at the singular point of a nodal/cuspidal curve.
struct ChainPoint {
    std::map<std::string, int> branch;
};

// A (nu1) cluster: a straight chain of infinitely-near points over one base
// point.  stage 1 feeds the first elimination (Delta_X), stage 2 the second
// (Delta_Z).  The base point is named by `locus` (0, 1 or 2 curve ids, or
// the single token "sing:<curve>").  `avoid` is nominal documentation.
struct ClusterSpec {
    std::string id;
    int stage = 2;
    std::vector<std::string> locus;
    std::vector<std::string> avoid;
    std::vector<ChainPoint> chain;

    int length() const { return static_cast<int>(chain.size()); }
};

// A declared non-transverse contact between two curves: local intersection
// multiplicity `mult` at one point.  When `at` names a cluster the point is
// that cluster's base point and the chain absorbs part of the contact.
struct Tangency {
    std::string u, v;
    int mult = 2;
    std::string at;
};

// An ordered sequence of point blowups over P^2 or F_n realizing the
// eliminations of the stage-1 and stage-2 clusters.  Levels: 0 = base
// surface, 1 = after eliminating stage-1 clusters, 2 = after all.
class Tower {
  public:
    Tower(BaseSurface base, std::vector<Curve> curves, std::vector<ClusterSpec> clusters,
          std::vector<Tangency> tangencies);

    const BaseSurface& base() const { return base_; }
    const std::vector<ClusterSpec>& clusters() const { return clusters_; }
    const std::vector<Curve>& curves() const { return curves_; }
    const std::vector<Tangency>& tangencies() const { return tangencies_; }

    // deg Delta of a stage = total chain length over its clusters
    long long stage_degree(int stage) const;
    int blowup_count() const { return next_index_; }

    // deterministic id of the exceptional basis class of a chain point
    std::string e_id(const std::string& cluster_id, int j) const;

    DivClass zero_class() const { return DivClass(base_); }
    DivClass canonical(int level) const;
    DivClass canonical_rel(int stage) const;  // sum of e over the stage's points

    bool is_chain_id(const std::string& id) const;
    // 0 for base curves, the owning cluster's stage for chain curves
    int birth_level(const std::string& id) const;
    // strict transform class of a curve or chain curve on the given level
    DivClass class_at(const std::string& id, int level) const;

    CurveKind kind_of(const std::string& id) const;
    // true when `id` is singular and its singular point is not blown up at
    // or before `level`
    bool sing_unresolved(const std::string& id, int level) const;

    // branch degree of Delta_stage on a curve: sum of branch multiplicities
    long long branch_degree(const std::string& id, int stage) const;
    // branch degree contributed by a single cluster
    long long branch_degree_in(const std::string& id, const ClusterSpec& q) const;

    struct Weighted {
        std::vector<std::pair<std::string, long long>> comps;  // id -> coefficient
        DivClass cls;
    };
    Weighted weighted_from(const std::vector<std::pair<std::string, long long>>& comps,
                           int level) const;

    // Twisted transform E^{Delta,s} across one stage: pullback minus
    // s * K_rel, with the induced coefficient of every chain curve of the
    // stage appended (coeff Gamma_j = sum_{i<=j} mult_i(E) - s*j).  Chain
    // curves with coefficient 0 are dropped; a negative coefficient throws.
    Weighted transform_with_s(const Weighted& d, int stage, int s) const;

    // coefficient-weighted multiplicity of a weighted divisor at a cluster
    // base point (only counts the first chain point)
    long long mult_at(const Weighted& d, const ClusterSpec& q) const;

    // Surviving intersection points between the given components on a level.
    struct Contact {
        std::string u, v;
        long long mult = 1;        // local intersection multiplicity (box)
        std::string on_chain;      // chain curve the point lies on, if any
    };
    // Decomposes every pairwise intersection number into contact points:
    // declared tangencies, singular-point geometry, chain adjacency, chain
    // exits, plus anonymous transverse points.  Throws BlowupError if some
    // pair's bookkeeping goes negative (unaccounted intersection).
    std::vector<Contact> contacts(const std::vector<std::string>& ids, int level) const;

    const ClusterSpec* find_cluster(const std::string& id) const;

  private:
    BaseSurface base_;
    std::vector<Curve> curves_;
    std::vector<ClusterSpec> clusters_;
    std::vector<Tangency> tangencies_;
    std::map<std::string, int> curve_index_;
    std::map<std::string, std::vector<int>> e_of_cluster_;  // cluster id -> e indices
    std::map<std::string, std::string> sing_cluster_;       // curve id -> cluster id at its sing pt
    int next_index_ = 0;

    int branch_at(const std::string& id, const ClusterSpec& q, int i) const;
    void validate() const;
};

// Convenience for tests: eliminate clusters over a base with given curves.
Tower eliminate(BaseSurface base, std::vector<Curve> curves, std::vector<ClusterSpec> clusters,
                std::vector<Tangency> tangencies = {});

std::string chain_id(const std::string& cluster_id, int j);

}  // namespace dp3

#endif
