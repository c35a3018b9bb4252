#include "dp3/blowup.hpp"

#include <algorithm>
#include <set>

namespace dp3 {

std::string chain_id(const std::string& cluster_id, int j) {
    return "G:" + cluster_id + ":" + std::to_string(j);
}

static bool parse_chain_id(const std::string& id, std::string& cluster, int& j) {
    if (id.rfind("G:", 0) != 0) return false;
    auto sep = id.rfind(':');
    if (sep == 1) return false;
    cluster = id.substr(2, sep - 2);
    j = std::stoi(id.substr(sep + 1));
    return true;
}

static std::string sing_target(const std::string& locus_entry) {
    if (locus_entry.rfind("sing:", 0) == 0) return locus_entry.substr(5);
    return {};
}

Tower::Tower(BaseSurface base, std::vector<Curve> curves, std::vector<ClusterSpec> clusters,
             std::vector<Tangency> tangencies)
    : base_(base),
      curves_(std::move(curves)),
      clusters_(std::move(clusters)),
      tangencies_(std::move(tangencies)) {
    for (size_t i = 0; i < curves_.size(); ++i) {
        if (!curve_index_.emplace(curves_[i].id, static_cast<int>(i)).second)
            throw BlowupError("duplicate curve id " + curves_[i].id);
        if (!(curves_[i].cls.base == base_))
            throw BlowupError("curve " + curves_[i].id + " lives on the wrong base");
    }
    // stage 1 clusters first, then stage 2; keep the given order within a stage
    std::stable_sort(clusters_.begin(), clusters_.end(),
                     [](const ClusterSpec& a, const ClusterSpec& b) { return a.stage < b.stage; });
    for (auto& q : clusters_) {
        if (q.id.empty()) throw BlowupError("cluster without id");
        if (q.stage != 1 && q.stage != 2) throw BlowupError("cluster stage must be 1 or 2");
        if (q.chain.empty()) throw BlowupError("cluster " + q.id + " has empty chain");
        auto& e = e_of_cluster_[q.id];
        if (!e.empty()) throw BlowupError("duplicate cluster id " + q.id);
        for (int j = 0; j < q.length(); ++j) e.push_back(next_index_++);
        for (auto& entry : q.locus) {
            auto target = sing_target(entry);
            if (!target.empty()) {
                if (q.locus.size() != 1)
                    throw BlowupError("cluster " + q.id + ": sing locus must stand alone");
                if (!sing_cluster_.emplace(target, q.id).second)
                    throw BlowupError("curve " + target + " has its singular point blown twice");
            }
        }
    }
    validate();
}

void Tower::validate() const {
    for (auto& q : clusters_) {
        std::set<std::string> locus_curves;
        std::string sing_of;
        for (auto& entry : q.locus) {
            auto target = sing_target(entry);
            if (!target.empty()) {
                sing_of = target;
                locus_curves.insert(target);
            } else {
                locus_curves.insert(entry);
            }
        }
        if (locus_curves.size() > 2)
            throw BlowupError("cluster " + q.id + ": more than two curves through one point");
        for (auto& id : locus_curves) {
            std::string cl;
            int j;
            if (parse_chain_id(id, cl, j)) {
                const ClusterSpec* host = find_cluster(cl);
                if (!host) throw BlowupError("cluster " + q.id + ": unknown chain curve " + id);
                if (host->stage >= q.stage)
                    throw BlowupError("cluster " + q.id + ": locus on a chain of the same stage");
                if (j < 1 || j > host->length())
                    throw BlowupError("cluster " + q.id + ": chain index out of range in " + id);
            } else if (!curve_index_.count(id)) {
                throw BlowupError("cluster " + q.id + ": locus references unknown curve " + id);
            }
        }
        // base point uniqueness within a stage: two clusters of one stage may
        // share a two-curve locus only while the curves have intersection
        // points left; that is caught by the contact bookkeeping.  A shared
        // one-curve locus means distinct nominal points, which is fine.
        for (auto& [id, first] : q.chain.front().branch) {
            if (first > 0 && !locus_curves.count(id))
                throw BlowupError("cluster " + q.id + ": curve " + id +
                                  " passes the base point but is not in the locus");
        }
        for (auto& id : locus_curves) {
            auto it = q.chain.front().branch.find(id);
            if (it == q.chain.front().branch.end() || it->second < 1)
                throw BlowupError("cluster " + q.id + ": locus curve " + id +
                                  " needs branch >= 1 at the base point");
        }
        for (int i = 0; i < q.length(); ++i) {
            for (auto& [id, v] : q.chain[i].branch) {
                if (v < 0 || v > 2)
                    throw BlowupError("cluster " + q.id + ": branch value out of range");
                if (v == 2) {
                    if (i != 0 || sing_of != id)
                        throw BlowupError("cluster " + q.id + ": branch 2 is only allowed at the "
                                          "first point over the singular point of " + id);
                    if (kind_of(id) == CurveKind::Smooth)
                        throw BlowupError("cluster " + q.id + ": branch 2 on a smooth curve");
                }
                if (i > 0) {
                    int prev = branch_at(id, q, i - 1);
                    if (prev == 2 && v > 0)
                        throw BlowupError("cluster " + q.id +
                                          ": chain continues after a multiplicity-2 point");
                    if (v > prev)
                        throw BlowupError("cluster " + q.id + ": branch of " + id +
                                          " increases along the chain");
                }
            }
        }
        if (!sing_of.empty()) {
            if (branch_at(sing_of, q, 0) != 2)
                throw BlowupError("cluster " + q.id + ": sing locus needs branch 2");
        }
        // transversality budget at a two-curve base point
        if (locus_curves.size() == 2 && sing_of.empty()) {
            auto it = locus_curves.begin();
            std::string u = *it++;
            std::string v = *it;
            long long lambda = 1;
            for (auto& t : tangencies_)
                if (t.at == q.id && ((t.u == u && t.v == v) || (t.u == v && t.v == u)))
                    lambda = t.mult;
            // a cuspidal curve is tangent to the chain curve over its cusp
            for (auto& [curve, qid] : sing_cluster_) {
                if (kind_of(curve) != CurveKind::Cuspidal) continue;
                std::string gamma = chain_id(qid, 1);
                if ((u == curve && v == gamma) || (u == gamma && v == curve)) lambda = 2;
            }
            long long shared = 0;
            for (int i = 0; i < q.length(); ++i)
                shared += static_cast<long long>(branch_at(u, q, i)) * branch_at(v, q, i);
            if (shared > lambda)
                throw BlowupError("cluster " + q.id + ": curves " + u + "," + v +
                                  " share more chain points than their local contact allows");
        }
    }
    for (auto& t : tangencies_) {
        if (t.mult < 2) throw BlowupError("tangency with multiplicity < 2");
        if (!t.at.empty() && !find_cluster(t.at))
            throw BlowupError("tangency bound to unknown cluster " + t.at);
    }
    // clusters absorb intersections of their locus curves; overdrawing a
    // pair (e.g. two clusters of one stage at the unique crossing of two
    // lines) drives the top-level intersection negative
    std::set<std::pair<std::string, std::string>> locus_pairs;
    for (auto& q : clusters_) {
        std::vector<std::string> curves;
        for (auto& entry : q.locus) {
            auto target = sing_target(entry);
            curves.push_back(target.empty() ? entry : target);
        }
        if (curves.size() == 2)
            locus_pairs.insert(std::minmax(curves[0], curves[1]));
    }
    for (auto& [a, b] : locus_pairs) {
        long long top = intersection(class_at(a, 2), class_at(b, 2));
        if (top < 0)
            throw BlowupError("clusters over-absorb the intersection of " + a + " and " + b +
                              " (two clusters of one stage cannot share a base point)");
    }
}

const ClusterSpec* Tower::find_cluster(const std::string& id) const {
    for (auto& q : clusters_)
        if (q.id == id) return &q;
    return nullptr;
}

long long Tower::stage_degree(int stage) const {
    long long k = 0;
    for (auto& q : clusters_)
        if (q.stage == stage) k += q.length();
    return k;
}

std::string Tower::e_id(const std::string& cluster_id, int j) const {
    return "e:" + cluster_id + ":" + std::to_string(j);
}

DivClass Tower::canonical(int level) const {
    DivClass k = canonical_base(base_);
    for (auto& q : clusters_) {
        if (q.stage > level) continue;
        auto& e = e_of_cluster_.at(q.id);
        for (int idx : e) k.add_exc(idx, 1);
    }
    return k;
}

DivClass Tower::canonical_rel(int stage) const {
    DivClass k(base_);
    for (auto& q : clusters_) {
        if (q.stage != stage) continue;
        for (int idx : e_of_cluster_.at(q.id)) k.add_exc(idx, 1);
    }
    return k;
}

bool Tower::is_chain_id(const std::string& id) const {
    std::string cl;
    int j;
    return parse_chain_id(id, cl, j);
}

int Tower::birth_level(const std::string& id) const {
    std::string cl;
    int j;
    if (!parse_chain_id(id, cl, j)) return 0;
    const ClusterSpec* q = find_cluster(cl);
    if (!q) throw BlowupError("unknown chain curve " + id);
    return q->stage;
}

int Tower::branch_at(const std::string& id, const ClusterSpec& q, int i) const {
    auto it = q.chain[i].branch.find(id);
    return it == q.chain[i].branch.end() ? 0 : it->second;
}

DivClass Tower::class_at(const std::string& id, int level) const {
    std::string cl;
    int j;
    DivClass c(base_);
    if (parse_chain_id(id, cl, j)) {
        const ClusterSpec* q = find_cluster(cl);
        if (!q || q->stage > level)
            throw BlowupError("chain curve " + id + " does not exist at level " +
                              std::to_string(level));
        auto& e = e_of_cluster_.at(q->id);
        if (j < 1 || j > q->length()) throw BlowupError("chain index out of range in " + id);
        c.add_exc(e[j - 1], 1);
        if (j < q->length()) c.add_exc(e[j], -1);
    } else {
        auto it = curve_index_.find(id);
        if (it == curve_index_.end()) throw BlowupError("unknown curve " + id);
        c = curves_[it->second].cls;
    }
    // subtract branch passages through later clusters up to `level`
    for (auto& q : clusters_) {
        if (q.stage > level) continue;
        if (parse_chain_id(id, cl, j)) {
            const ClusterSpec* host = find_cluster(cl);
            if (host->stage >= q.stage) continue;  // chain curve exists only after its stage
        }
        auto& e = e_of_cluster_.at(q.id);
        for (int i = 0; i < q.length(); ++i) {
            int b = branch_at(id, q, i);
            if (b != 0) c.add_exc(e[i], -b);
        }
    }
    return c;
}

CurveKind Tower::kind_of(const std::string& id) const {
    auto it = curve_index_.find(id);
    if (it == curve_index_.end()) return CurveKind::Smooth;
    return curves_[it->second].kind;
}

bool Tower::sing_unresolved(const std::string& id, int level) const {
    if (kind_of(id) == CurveKind::Smooth) return false;
    auto it = sing_cluster_.find(id);
    if (it == sing_cluster_.end()) return true;
    return find_cluster(it->second)->stage > level;
}

long long Tower::branch_degree(const std::string& id, int stage) const {
    long long total = 0;
    for (auto& q : clusters_)
        if (q.stage == stage) total += branch_degree_in(id, q);
    return total;
}

long long Tower::branch_degree_in(const std::string& id, const ClusterSpec& q) const {
    long long t = 0;
    for (int i = 0; i < q.length(); ++i) t += branch_at(id, q, i);
    return t;
}

Tower::Weighted Tower::weighted_from(
    const std::vector<std::pair<std::string, long long>>& comps, int level) const {
    Weighted w;
    w.cls = zero_class();
    for (auto& [id, coeff] : comps) {
        if (coeff == 0) continue;
        w.comps.push_back({id, coeff});
        w.cls = w.cls + class_at(id, level) * coeff;
    }
    return w;
}

Tower::Weighted Tower::transform_with_s(const Weighted& d, int stage, int s) const {
    Weighted out;
    out.comps = d.comps;
    // pullback of the class keeps the same coordinates; subtract s*K_rel
    out.cls = d.cls - canonical_rel(stage) * s;
    for (auto& q : clusters_) {
        if (q.stage != stage) continue;
        long long cum = 0;
        for (int j = 1; j <= q.length(); ++j) {
            long long mult_j = 0;
            for (auto& [id, coeff] : d.comps) mult_j += coeff * branch_at(id, q, j - 1);
            cum += mult_j;
            long long coeff_gamma = cum - static_cast<long long>(s) * j;
            if (coeff_gamma < 0)
                throw BlowupError("negative induced coefficient " + std::to_string(coeff_gamma) +
                                  " on " + chain_id(q.id, j));
            if (coeff_gamma > 0) out.comps.push_back({chain_id(q.id, j), coeff_gamma});
        }
    }
    return out;
}

long long Tower::mult_at(const Weighted& d, const ClusterSpec& q) const {
    long long m = 0;
    for (auto& [id, coeff] : d.comps) m += coeff * branch_at(id, q, 0);
    return m;
}

std::vector<Tower::Contact> Tower::contacts(const std::vector<std::string>& ids,
                                            int level) const {
    struct Key {
        std::string u, v;
        bool operator<(const Key& o) const { return std::tie(u, v) < std::tie(o.u, o.v); }
    };
    auto key = [](std::string a, std::string b) {
        if (b < a) std::swap(a, b);
        return Key{a, b};
    };
    std::set<std::string> in_div(ids.begin(), ids.end());
    std::map<Key, std::vector<Contact>> special;

    auto shared_product = [&](const ClusterSpec& q, const std::string& u, const std::string& v) {
        long long t = 0;
        for (int i = 0; i < q.length(); ++i)
            t += static_cast<long long>(branch_at(u, q, i)) * branch_at(v, q, i);
        return t;
    };
    auto last_shared = [&](const ClusterSpec& q, const std::string& u, const std::string& v) {
        int last = 0;
        for (int i = 0; i < q.length(); ++i)
            if (branch_at(u, q, i) >= 1 && branch_at(v, q, i) >= 1) last = i + 1;
        return last;
    };

    // declared tangencies
    for (auto& t : tangencies_) {
        if (!in_div.count(t.u) || !in_div.count(t.v)) continue;
        long long surviving = t.mult;
        std::string on_chain;
        if (!t.at.empty()) {
            const ClusterSpec* q = find_cluster(t.at);
            if (q->stage <= level) {
                surviving -= shared_product(*q, t.u, t.v);
                if (surviving < 0)
                    throw BlowupError("tangency " + t.u + "/" + t.v +
                                      " over-absorbed by cluster " + t.at);
                int ls = last_shared(*q, t.u, t.v);
                if (surviving > 0 && ls >= 1) on_chain = chain_id(q->id, ls);
            }
        }
        if (surviving > 0)
            special[key(t.u, t.v)].push_back({t.u, t.v, surviving, on_chain});
    }

    // singular-point geometry: contacts between a curve and the first chain
    // curve over its singular point (two transverse branches for a node, one
    // double contact for a cusp)
    for (auto& [curve, qid] : sing_cluster_) {
        const ClusterSpec* q = find_cluster(qid);
        if (q->stage > level) continue;
        std::string gamma = chain_id(qid, 1);
        if (!in_div.count(curve) || !in_div.count(gamma)) continue;
        long long absorbed = 0;
        for (auto& r : clusters_) {
            if (r.stage > level || r.stage <= q->stage) continue;
            absorbed += shared_product(r, curve, gamma);
        }
        if (kind_of(curve) == CurveKind::Nodal) {
            if (absorbed > 2)
                throw BlowupError("nodal branches of " + curve + " over-absorbed");
            for (int i = absorbed; i < 2; ++i)
                special[key(curve, gamma)].push_back({curve, gamma, 1, ""});
        } else {
            long long surviving = 2 - absorbed;
            if (surviving < 0) throw BlowupError("cusp contact of " + curve + " over-absorbed");
            if (surviving > 0)
                special[key(curve, gamma)].push_back({curve, gamma, surviving, ""});
        }
    }

    // chain adjacency and chain exits
    for (auto& q : clusters_) {
        if (q.stage > level) continue;
        int k = q.length();
        for (int j = 1; j < k; ++j) {
            std::string a = chain_id(q.id, j), b = chain_id(q.id, j + 1);
            if (!in_div.count(a) || !in_div.count(b)) continue;
            long long surviving = 1;
            for (auto& r : clusters_) {
                if (r.stage > level || r.stage <= q.stage) continue;
                surviving -= shared_product(r, a, b);
            }
            if (surviving < 0) throw BlowupError("chain corner of " + q.id + " over-absorbed");
            if (surviving > 0) special[key(a, b)].push_back({a, b, surviving, ""});
        }
        // exits: curve leaves the chain at its last branch point
        std::set<std::string> through;
        for (auto& pt : q.chain)
            for (auto& [id, v] : pt.branch)
                if (v >= 1) through.insert(id);
        for (auto& id : through) {
            if (branch_at(id, q, 0) == 2) continue;  // handled by sing geometry
            int exit = 0;
            for (int i = 0; i < k; ++i)
                if (branch_at(id, q, i) >= 1) exit = i + 1;
            std::string gamma = chain_id(q.id, exit);
            if (!in_div.count(id) || !in_div.count(gamma)) continue;
            long long surviving = 1;
            for (auto& r : clusters_) {
                if (r.stage > level || r.stage <= q.stage) continue;
                surviving -= shared_product(r, id, gamma);
            }
            if (surviving < 0)
                throw BlowupError("exit contact " + id + "/" + gamma + " over-absorbed");
            if (surviving > 0) special[key(id, gamma)].push_back({id, gamma, surviving, ""});
        }
    }

    // assemble: specials plus anonymous transverse leftovers
    std::vector<Contact> out;
    for (size_t i = 0; i < ids.size(); ++i) {
        for (size_t jj = i + 1; jj < ids.size(); ++jj) {
            const std::string& u = ids[i];
            const std::string& v = ids[jj];
            if (u == v) continue;
            long long total = intersection(class_at(u, level), class_at(v, level));
            long long in_specials = 0;
            auto it = special.find(key(u, v));
            if (it != special.end()) {
                for (auto& c : it->second) {
                    in_specials += c.mult;
                    out.push_back(c);
                }
            }
            long long anonymous = total - in_specials;
            if (anonymous < 0)
                throw BlowupError("intersection of " + u + " and " + v +
                                  " unaccounted by declared points (" + std::to_string(total) +
                                  " < " + std::to_string(in_specials) + ")");
            for (long long t = 0; t < anonymous; ++t) out.push_back({u, v, 1, ""});
        }
    }
    return out;
}

Tower eliminate(BaseSurface base, std::vector<Curve> curves, std::vector<ClusterSpec> clusters,
                std::vector<Tangency> tangencies) {
    return Tower(std::move(base), std::move(curves), std::move(clusters), std::move(tangencies));
}

}  // namespace dp3
